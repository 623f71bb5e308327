#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "wii/config.hpp"
#include "wii/merge.hpp"

namespace wii {

/// One manifest line: `<snapshot-locator> [<answer-file>]`. Paths are
/// relative to the manifest's directory; `#` starts a comment line.
struct BatchEntry {
    std::string snapshot;  // as written in the manifest
    std::optional<std::string> answers;
    std::filesystem::path snapshot_path;  // resolved
    std::optional<std::filesystem::path> answers_path;
    std::size_t line = 0;
};

class ManifestInvalid : public std::runtime_error {
public:
    ManifestInvalid(std::size_t line, const std::string& why)
        : std::runtime_error("ManifestInvalid: line " + std::to_string(line) + ": " + why) {}
};

std::vector<BatchEntry> parse_batch_manifest(std::string_view text, const std::filesystem::path& base_dir);
std::vector<BatchEntry> load_batch_manifest(const std::filesystem::path& path);

struct BatchSiteResult {
    BatchEntry entry;
    std::string report_name;  // reports/<name>.json
    bool ok = false;
    bool reused = false;
    std::string error;
    std::optional<SiteAssessment> assessment;
};

struct BatchResult {
    std::vector<BatchSiteResult> sites;  // manifest order
    std::size_t failures() const;
};

inline constexpr const char* kCorpusIndexName = "corpus.json";
inline constexpr const char* kCorpusCsvName = "corpus.csv";

/// Audits every entry into `out_dir/reports/`, then writes the corpus index
/// and corpus CSV. Existing reports are reused unless `force`. At most
/// config.jobs sites are audited at once; each report is written atomically.
BatchResult run_batch(const std::vector<BatchEntry>& entries, const std::filesystem::path& out_dir,
                      const AuditConfig& config, bool force,
                      const std::function<void(const BatchSiteResult&)>& progress = {});

class CorpusIndexInvalid : public std::runtime_error {
public:
    explicit CorpusIndexInvalid(const std::string& what) : std::runtime_error("CorpusIndexInvalid: " + what) {}
};

struct LoadedCorpus {
    std::vector<SiteAssessment> sites;
    std::set<std::int64_t> weight_totals;  // distinct centiweight totals used
};

/// Assessments of the successful sites listed in a corpus index, read back
/// from their reports. Throws CorpusIndexInvalid or ReportInvalid.
LoadedCorpus load_corpus(const std::filesystem::path& index_path);

}  // namespace wii
