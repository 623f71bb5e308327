#include "wii/corpus.hpp"

#include <algorithm>
#include <array>

namespace wii {

namespace {

constexpr std::array<std::string_view, kCombinationRowCount> kRowLabels = {
    "1 only",
    "2 only",
    "3 only (if any from 2 components satisfied)",
    "4 only",
    "5 only",
    "6 only (if any from 4 components satisfied)",
    "7 only (if any from 2 components satisfied)",
    "3 and 5 combination only",
    "Any combination with (3 or 5)",
    "Any combination excluding (3 or 5)",
    "Sites which has no combination",
};

constexpr std::array<std::string_view, kCombinationRowCount> kRowResults = {
    "WI ready", "WI ready", "With WI", "WI ready", "With WI", "WI ready",
    "WI ready", "With WI",  "With WI", "WI ready", "No WI",
};

struct Bucket {
    std::string_view label;
    std::int64_t low;
    std::int64_t high;
};

constexpr std::array<Bucket, 7> kBuckets = {{
    {"< 0.01", 0, 0},
    {"0.01 - 1.00", 1, 100},
    {"1.01 - 2.00", 101, 200},
    {"2.01 - 3.00", 201, 300},
    {"3.01 - 4.00", 301, 400},
    {"4.01 - 5.00", 401, 500},
    {"5.01-6.00", 501, 600},
}};

std::size_t count_class(const std::vector<SiteAssessment>& corpus, WiiClass c) {
    return static_cast<std::size_t>(
        std::count_if(corpus.begin(), corpus.end(), [c](const SiteAssessment& a) { return a.wii_class == c; }));
}

std::size_t row_sum(const std::vector<CombinationRowStat>& rows, std::initializer_list<CombinationRow> which) {
    std::size_t n = 0;
    for (auto r : which) n += rows.at(static_cast<std::size_t>(r)).stat.count;
    return n;
}

}  // namespace

std::string Percent::str() const {
    return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

Percent percent_of(std::size_t count, std::size_t n) {
    if (n == 0) throw std::invalid_argument("percent_of: n is 0");
    auto c = static_cast<std::uint64_t>(count);
    auto d = static_cast<std::uint64_t>(n);
    return Percent{static_cast<std::int64_t>((2000 * c + d) / (2 * d))};
}

std::vector<CriterionCount> criterion_counts(const std::vector<SiteAssessment>& corpus) {
    if (corpus.empty()) throw EmptyCorpus();
    std::vector<CriterionCount> out;
    for (auto id : kAllCriteria) {
        std::size_t n = 0;
        for (const auto& a : corpus) n += a.vector.value(id);
        out.push_back({id, {n, percent_of(n, corpus.size())}});
    }
    return out;
}

std::string_view row_label(CombinationRow row) { return kRowLabels[static_cast<std::size_t>(row)]; }

std::string_view row_result(CombinationRow row) { return kRowResults[static_cast<std::size_t>(row)]; }

CombinationRow combination_row(const AssessmentVector& v) {
    std::size_t satisfied = 0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < kMainCriteria.size(); ++i) {
        if (v.value(kMainCriteria[i])) {
            ++satisfied;
            last = i;
        }
    }
    if (satisfied == 0) return CombinationRow::NoCombination;
    if (satisfied == 1) return static_cast<CombinationRow>(last);
    bool c3 = v.value(CriterionId::C3);
    bool c5 = v.value(CriterionId::C5);
    if (satisfied == 2 && c3 && c5) return CombinationRow::ThreeAndFiveOnly;
    if (c3 || c5) return CombinationRow::AnyWithThreeOrFive;
    return CombinationRow::AnyExcludingThreeOrFive;
}

std::vector<CombinationRowStat> combination_table(const std::vector<SiteAssessment>& corpus) {
    std::array<std::size_t, kCombinationRowCount> counts{};
    for (const auto& a : corpus) ++counts[static_cast<std::size_t>(combination_row(a.vector))];
    std::vector<CombinationRowStat> out;
    for (std::size_t i = 0; i < kCombinationRowCount; ++i) {
        Percent p = corpus.empty() ? Percent{} : percent_of(counts[i], corpus.size());
        out.push_back({static_cast<CombinationRow>(i), {counts[i], p}});
    }
    return out;
}

std::vector<CategoryTotal> category_totals(const std::vector<SiteAssessment>& corpus) {
    if (corpus.empty()) throw EmptyCorpus();
    std::vector<CategoryTotal> out;
    for (auto c : {WiiClass::WIAcquired, WiiClass::WIReady, WiiClass::NoWI}) {
        auto n = count_class(corpus, c);
        out.push_back({c, {n, percent_of(n, corpus.size())}});
    }
    return out;
}

std::vector<CategoryBreakdown> category_breakdown(const std::vector<CombinationRowStat>& rows,
                                                  const std::vector<CategoryTotal>& totals) {
    using R = CombinationRow;
    auto total_of = [&](WiiClass c) {
        for (const auto& t : totals) {
            if (t.wii_class == c) return t.stat;
        }
        throw std::invalid_argument("category_breakdown: missing class total");
    };
    std::vector<CategoryBreakdown> out;
    out.push_back({WiiClass::WIAcquired, row_sum(rows, {R::Only3, R::Only5}), std::size_t{0},
                   row_sum(rows, {R::AnyWithThreeOrFive}), row_sum(rows, {R::ThreeAndFiveOnly}),
                   total_of(WiiClass::WIAcquired)});
    out.push_back({WiiClass::WIReady, row_sum(rows, {R::Only1, R::Only2, R::Only4, R::Only6, R::Only7}),
                   row_sum(rows, {R::AnyExcludingThreeOrFive}), std::nullopt, std::nullopt,
                   total_of(WiiClass::WIReady)});
    out.push_back({WiiClass::NoWI, std::nullopt, std::nullopt, std::nullopt, std::nullopt, total_of(WiiClass::NoWI)});
    return out;
}

std::vector<HistogramBucket> wii_histogram(const std::vector<SiteAssessment>& corpus) {
    std::vector<HistogramBucket> out;
    for (const auto& b : kBuckets) out.push_back({std::string(b.label), b.low, b.high, 0, std::nullopt});
    std::size_t above = 0;
    for (const auto& a : corpus) {
        auto v = a.wii.centivalue();
        if (v > kBuckets.back().high) {
            ++above;
            continue;
        }
        for (auto& b : out) {
            if (v >= b.low && v <= b.high) {
                ++b.count;
                break;
            }
        }
    }
    if (above) out.push_back({"> 6.00", kBuckets.back().high + 1, INT64_MAX, above, std::nullopt});
    auto wi = count_class(corpus, WiiClass::WIAcquired);
    if (wi) {
        for (auto& b : out) {
            if (b.low > 100) b.percent_of_wi_sites = percent_of(b.count, wi);
        }
    }
    return out;
}

std::vector<TopSite> top_sites(const std::vector<SiteAssessment>& corpus, WiiScore threshold) {
    std::vector<TopSite> out;
    for (const auto& a : corpus) {
        if (a.wii > threshold) out.push_back({a.site_url, a.wii, a.wii_class});
    }
    std::sort(out.begin(), out.end(), [](const TopSite& x, const TopSite& y) {
        if (x.wii != y.wii) return x.wii > y.wii;
        return x.url < y.url;
    });
    return out;
}

CorpusStats aggregate(const std::vector<SiteAssessment>& corpus, std::int64_t weight_total, WiiScore top_threshold) {
    if (corpus.empty()) throw EmptyCorpus();
    CorpusStats s;
    s.n_sites = corpus.size();
    s.criteria = criterion_counts(corpus);
    s.combinations = combination_table(corpus);
    s.categories = category_totals(corpus);
    s.breakdown = category_breakdown(s.combinations, s.categories);
    s.histogram = wii_histogram(corpus);
    s.top = top_sites(corpus, top_threshold);
    s.top_threshold = top_threshold;
    if (weight_total != 600) {
        s.warnings.push_back("weight table totals " + std::to_string(weight_total) +
                             " centiweights, not 600; histogram labels assume a 6.00 ceiling");
    }
    if (s.histogram.size() > kBuckets.size()) {
        s.warnings.push_back(std::to_string(s.histogram.back().count) + " site(s) score above 6.00");
    }
    return s;
}

}  // namespace wii
