#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wii/criteria.hpp"
#include "wii/merge.hpp"

namespace wii {

class EmptyCorpus : public std::runtime_error {
public:
    EmptyCorpus() : std::runtime_error("EmptyCorpus: the corpus has no sites") {}
};

/// A percentage in tenths, e.g. 93 for "9.3".
struct Percent {
    std::int64_t tenths = 0;

    std::string str() const;
    bool operator==(const Percent&) const = default;
};

/// count / n as a percentage rounded half-up to one decimal. n must be > 0.
Percent percent_of(std::size_t count, std::size_t n);

struct CountPercent {
    std::size_t count = 0;
    Percent percent;
    bool operator==(const CountPercent&) const = default;
};

struct CriterionCount {
    CriterionId criterion;
    CountPercent stat;
    bool operator==(const CriterionCount&) const = default;
};

/// One entry per criterion in table order. Throws EmptyCorpus.
std::vector<CriterionCount> criterion_counts(const std::vector<SiteAssessment>& corpus);

enum class CombinationRow {
    Only1,
    Only2,
    Only3,
    Only4,
    Only5,
    Only6,
    Only7,
    ThreeAndFiveOnly,
    AnyWithThreeOrFive,
    AnyExcludingThreeOrFive,
    NoCombination,
};

inline constexpr std::size_t kCombinationRowCount = 11;

std::string_view row_label(CombinationRow row);

/// "WI ready", "With WI" or "No WI".
std::string_view row_result(CombinationRow row);

/// First matching row for a parent-consistent vector.
CombinationRow combination_row(const AssessmentVector& v);

struct CombinationRowStat {
    CombinationRow row;
    CountPercent stat;
    bool operator==(const CombinationRowStat&) const = default;
};

/// All eleven rows in order; percents are 0.0 for an empty corpus.
std::vector<CombinationRowStat> combination_table(const std::vector<SiteAssessment>& corpus);

struct CategoryTotal {
    WiiClass wii_class;
    CountPercent stat;
    bool operator==(const CategoryTotal&) const = default;
};

/// WIAcquired, WIReady, NoWI in that order. Throws EmptyCorpus.
std::vector<CategoryTotal> category_totals(const std::vector<SiteAssessment>& corpus);

/// Breakdown of a category total by kind of combination. Cells that cannot
/// hold a site for that category are nullopt.
struct CategoryBreakdown {
    WiiClass wii_class;
    std::optional<std::size_t> one_criterion_only;
    std::optional<std::size_t> several_without_wi;
    std::optional<std::size_t> wi_with_wi_ready;
    std::optional<std::size_t> several_wi_without_wi_ready;
    CountPercent total;
    bool operator==(const CategoryBreakdown&) const = default;
};

std::vector<CategoryBreakdown> category_breakdown(const std::vector<CombinationRowStat>& rows,
                                                  const std::vector<CategoryTotal>& totals);

struct HistogramBucket {
    std::string label;
    std::int64_t low = 0;   // centivalue, inclusive
    std::int64_t high = 0;  // centivalue, inclusive
    std::size_t count = 0;
    /// Share of WIAcquired sites; only for buckets above 1.00 and only when
    /// the corpus has WIAcquired sites.
    std::optional<Percent> percent_of_wi_sites;
    bool operator==(const HistogramBucket&) const = default;
};

/// Seven fixed buckets, plus a "> 6.00" bucket when some score exceeds 6.00.
std::vector<HistogramBucket> wii_histogram(const std::vector<SiteAssessment>& corpus);

struct TopSite {
    std::string url;
    WiiScore wii;
    WiiClass wii_class;
    bool operator==(const TopSite&) const = default;
};

inline constexpr WiiScore kDefaultTopThreshold{400};

/// Sites scoring strictly above `threshold`, by score descending then URL.
std::vector<TopSite> top_sites(const std::vector<SiteAssessment>& corpus, WiiScore threshold = kDefaultTopThreshold);

struct CorpusStats {
    std::size_t n_sites = 0;
    std::vector<CriterionCount> criteria;
    std::vector<CombinationRowStat> combinations;
    std::vector<CategoryTotal> categories;
    std::vector<CategoryBreakdown> breakdown;
    std::vector<HistogramBucket> histogram;
    std::vector<TopSite> top;
    WiiScore top_threshold = kDefaultTopThreshold;
    std::vector<std::string> warnings;
};

/// All five tables. `weight_total` is the centiweight total of the table the
/// scores were computed with; a total other than 600 adds a warning.
/// Throws EmptyCorpus.
CorpusStats aggregate(const std::vector<SiteAssessment>& corpus, std::int64_t weight_total = 600,
                      WiiScore top_threshold = kDefaultTopThreshold);

}  // namespace wii
