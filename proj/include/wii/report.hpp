#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "wii/answers.hpp"
#include "wii/checkers.hpp"
#include "wii/config.hpp"
#include "wii/corpus.hpp"
#include "wii/merge.hpp"
#include "wii/snapshot.hpp"

namespace wii {

/// Everything one audit produced for one site.
struct SiteReport {
    std::string tool_version;
    std::string site_url;
    std::string requested_url;
    std::string fetched_at;
    bool snapshot_truncated = false;
    std::string snapshot_digest;
    std::string config_digest;
    nlohmann::json settings;  // assessment_settings() of the audit
    CheckerOutputs checks;
    std::optional<ManualAnswerFile> answers;  // header fields and answers
    SiteAssessment assessment;
};

class ReportInvalid : public std::runtime_error {
public:
    explicit ReportInvalid(const std::string& what) : std::runtime_error("ReportInvalid: " + what) {}
};

/// Runs the checkers on the snapshot, merges the answers and scores.
SiteReport audit_snapshot(const SiteSnapshot& snapshot, const ManualAnswerFile& answers, const AuditConfig& config,
                          const WeightTable& weights);

nlohmann::json to_json(const SiteReport& report);

/// Reads back the assessment part of a report and checks that the stored
/// score and class follow from the stored vector and weights.
SiteAssessment assessment_from_report(const nlohmann::json& report);

/// `url,<12 leaves>,<3 parents>,wii,class`
std::string corpus_csv_header();
std::string corpus_csv_row(const SiteAssessment& a);

/// Report in the given format. CSV is the one-row corpus projection.
std::string render_report(const SiteReport& report, OutputFormat format);

/// Canonical JSON of the five tables.
nlohmann::json tables_to_json(const CorpusStats& stats);

/// File name -> CSV text, one file per table.
std::map<std::string, std::string> render_tables_csv(const CorpusStats& stats);

std::string render_tables_markdown(const CorpusStats& stats);

/// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_field(std::string_view s);

}  // namespace wii
