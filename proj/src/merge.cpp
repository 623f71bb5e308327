#include "wii/merge.hpp"

#include <algorithm>

#include "wii/url.hpp"

namespace wii {

namespace {

constexpr std::array<std::string_view, 4> kProvenanceNames = {"manual", "automated", "heuristic-advisory",
                                                              "default-zero"};

std::size_t leaf_slot(CriterionId leaf) {
    auto it = std::find(kLeafCriteria.begin(), kLeafCriteria.end(), leaf);
    if (it == kLeafCriteria.end()) throw std::invalid_argument(std::string(to_string(leaf)) + " is not a leaf");
    return static_cast<std::size_t>(it - kLeafCriteria.begin());
}

}  // namespace

std::string_view to_string(Provenance p) { return kProvenanceNames[static_cast<std::size_t>(p)]; }

std::optional<Provenance> parse_provenance(std::string_view text) {
    for (std::size_t i = 0; i < kProvenanceNames.size(); ++i) {
        if (kProvenanceNames[i] == text) return static_cast<Provenance>(i);
    }
    return std::nullopt;
}

Provenance SiteAssessment::provenance_of(CriterionId leaf) const { return provenance[leaf_slot(leaf)]; }

bool same_site(std::string_view a, std::string_view b) {
    auto na = normalize_url(a);
    auto nb = normalize_url(b);
    return na && nb && *na == *nb;
}

SiteAssessment merge(const SiteIdentity& site, const std::vector<CheckResult>& automated,
                     const ManualAnswerFile& manual, const MergePolicy& policy, const WeightTable& weights) {
    if (!manual.site_url.empty()) {
        bool match = same_site(manual.site_url, site.root_url);
        for (const auto& alias : site.aliases) match = match || same_site(manual.site_url, alias);
        if (!match) throw SiteMismatch(manual.site_url, site.root_url);
    }

    std::array<const CheckResult*, kLeafCount> by_leaf{};
    for (const auto& r : automated) {
        auto slot = leaf_slot(r.criterion);
        if (by_leaf[slot]) {
            throw std::invalid_argument("two automated results for " + std::string(to_string(r.criterion)));
        }
        by_leaf[slot] = &r;
    }

    SiteAssessment out;
    out.site_url = site.root_url;
    AssessmentVector raw;
    for (std::size_t i = 0; i < kLeafCount; ++i) {
        auto leaf = kLeafCriteria[i];
        auto id = std::string(to_string(leaf));
        const auto* answer = manual.find(leaf);
        const auto* result = by_leaf[i];
        bool value = false;
        Provenance prov = Provenance::DefaultZero;
        if (answer) {
            value = answer->value;
            prov = Provenance::Manual;
            if (result && !result->advisory && result->value != value) {
                out.warnings.push_back(id + ": manual answer " + std::to_string(value) +
                                       " overrides automated result " + std::to_string(result->value));
            }
        } else if (result && !result->advisory) {
            value = result->value;
            prov = Provenance::Automated;
        } else if (result && policy.accept_heuristics) {
            value = result->value;
            prov = Provenance::HeuristicAdvisory;
        } else if (result) {
            if (result->value) {
                out.warnings.push_back(id + ": advisory signal not accepted, defaulted to 0");
            }
        } else if (is_manual_only(leaf)) {
            out.warnings.push_back(id + ": no manual answer, defaulted to 0");
        } else {
            out.warnings.push_back(id + ": no automated result, defaulted to 0");
        }
        raw.set(leaf, value);
        out.provenance[i] = prov;
    }
    out.vector = derive_parents(raw);
    out.wii = compute_wii(out.vector, weights);
    out.wii_class = classify(out.vector);
    return out;
}

}  // namespace wii
