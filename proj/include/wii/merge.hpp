#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wii/answers.hpp"
#include "wii/checkers.hpp"
#include "wii/criteria.hpp"

namespace wii {

enum class Provenance { Manual, Automated, HeuristicAdvisory, DefaultZero };

std::string_view to_string(Provenance p);
std::optional<Provenance> parse_provenance(std::string_view text);

struct MergePolicy {
    bool accept_heuristics = false;
};

/// Final per-site assessment. `provenance` is indexed like kLeafCriteria.
struct SiteAssessment {
    std::string site_url;
    AssessmentVector vector;
    std::array<Provenance, kLeafCount> provenance{};
    WiiScore wii;
    WiiClass wii_class = WiiClass::NoWI;
    std::vector<std::string> warnings;

    Provenance provenance_of(CriterionId leaf) const;
};

class SiteMismatch : public std::runtime_error {
public:
    SiteMismatch(const std::string& answers_site, const std::string& snapshot_site)
        : std::runtime_error("answer file is for " + answers_site + " but the snapshot is of " + snapshot_site) {}
};

/// The site the automated results were computed from. `aliases` are other
/// URLs that identify the same snapshot (the URL originally requested).
struct SiteIdentity {
    std::string root_url;
    std::vector<std::string> aliases;
};

/// Resolves every leaf by precedence Manual > Automated >
/// HeuristicAdvisory (only when accepted) > DefaultZero, derives parents and
/// scores. An answer file with an empty site_url stands for "no answers" and
/// is not checked against the site. Throws SiteMismatch, and
/// std::invalid_argument for two results on the same criterion.
SiteAssessment merge(const SiteIdentity& site, const std::vector<CheckResult>& automated,
                     const ManualAnswerFile& manual, const MergePolicy& policy, const WeightTable& weights);

/// True when both URLs normalize to the same thing.
bool same_site(std::string_view a, std::string_view b);

}  // namespace wii
