#include "wii/criteria.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "wii/text.hpp"

namespace wii {

namespace {

constexpr std::array<std::string_view, kCriterionCount> kNames = {
    "C1", "C2", "C3", "C3_1", "C3_2", "C4", "C5", "C6",
    "C6_1", "C6_2", "C6_3", "C6_4", "C7", "C7_1", "C7_2",
};

std::string join_ids(const std::vector<CriterionId>& ids) {
    std::string out;
    for (auto id : ids) {
        if (!out.empty()) out += ", ";
        out += to_string(id);
    }
    return out;
}

}  // namespace

bool is_parent(CriterionId id) {
    return id == CriterionId::C3 || id == CriterionId::C6 || id == CriterionId::C7;
}

bool is_leaf(CriterionId id) { return !is_parent(id); }

bool is_manual_only(CriterionId id) {
    return std::find(kManualOnlyCriteria.begin(), kManualOnlyCriteria.end(), id) !=
           kManualOnlyCriteria.end();
}

std::vector<CriterionId> children_of(CriterionId id) {
    switch (id) {
        case CriterionId::C3: return {CriterionId::C3_1, CriterionId::C3_2};
        case CriterionId::C6:
            return {CriterionId::C6_1, CriterionId::C6_2, CriterionId::C6_3, CriterionId::C6_4};
        case CriterionId::C7: return {CriterionId::C7_1, CriterionId::C7_2};
        default: return {};
    }
}

std::optional<CriterionId> parent_of(CriterionId id) {
    for (auto p : kParentCriteria) {
        auto kids = children_of(p);
        if (std::find(kids.begin(), kids.end(), id) != kids.end()) return p;
    }
    return std::nullopt;
}

std::string_view to_string(CriterionId id) { return kNames[index_of(id)]; }

std::optional<CriterionId> parse_criterion(std::string_view text) {
    for (std::size_t i = 0; i < kNames.size(); ++i) {
        if (kNames[i] == text) return static_cast<CriterionId>(i);
    }
    return std::nullopt;
}

IncompleteAssessment::IncompleteAssessment(std::vector<CriterionId> missing)
    : std::runtime_error("IncompleteAssessment: missing leaf values: " + join_ids(missing)),
      missing_(std::move(missing)) {}

// ---------------------------------------------------------------------------

AssessmentVector AssessmentVector::zeros() {
    AssessmentVector v;
    for (auto id : kAllCriteria) v.set(id, false);
    return v;
}

AssessmentVector AssessmentVector::from_leaf_mask(std::uint32_t mask) {
    AssessmentVector v;
    for (std::size_t i = 0; i < kLeafCriteria.size(); ++i) {
        v.set(kLeafCriteria[i], (mask >> i) & 1U);
    }
    return v;
}

bool AssessmentVector::value(CriterionId id) const {
    const auto& slot = slots_[index_of(id)];
    if (!slot) {
        throw std::logic_error("criterion " + std::string(to_string(id)) + " has no value");
    }
    return *slot != 0;
}

std::optional<bool> AssessmentVector::get(CriterionId id) const {
    const auto& slot = slots_[index_of(id)];
    if (!slot) return std::nullopt;
    return *slot != 0;
}

bool AssessmentVector::complete() const {
    return std::all_of(slots_.begin(), slots_.end(), [](const auto& s) { return s.has_value(); });
}

bool AssessmentVector::parent_consistent() const {
    if (!complete()) return false;
    for (auto p : kParentCriteria) {
        bool any = false;
        for (auto c : children_of(p)) any = any || value(c);
        if (value(p) != any) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

const WeightTable& WeightTable::default_table() {
    static const WeightTable table = [] {
        WeightTable t;
        t.set(CriterionId::C1, 5);
        t.set(CriterionId::C2, 15);
        t.set(CriterionId::C3, 0);
        t.set(CriterionId::C3_1, 150);
        t.set(CriterionId::C3_2, 100);
        t.set(CriterionId::C4, 3);
        t.set(CriterionId::C5, 250);
        t.set(CriterionId::C6, 0);
        t.set(CriterionId::C6_1, 7);
        t.set(CriterionId::C6_2, 15);
        t.set(CriterionId::C6_3, 25);
        t.set(CriterionId::C6_4, 10);
        t.set(CriterionId::C7, 0);
        t.set(CriterionId::C7_1, 15);
        t.set(CriterionId::C7_2, 5);
        return t;
    }();
    return table;
}

std::int64_t WeightTable::total() const {
    std::int64_t sum = 0;
    for (const auto& e : entries_) sum += e.value_or(0);
    return sum;
}

WeightTable parse_weight_table(std::string_view text) {
    WeightTable table;
    std::size_t line_no = 0;
    bool seen_content = false;
    for (auto raw : split_lines(text)) {
        ++line_no;
        auto line = trim(strip_comment(raw));
        if (line.empty()) continue;
        auto fields = split_ws(line);
        auto where = "line " + std::to_string(line_no) + ": ";
        if (!seen_content && fields.size() == 2 && fields[0] == "wii-weights") {
            seen_content = true;
            if (fields[1] != "1") {
                throw WeightTableInvalid(where + "unsupported weight format version " +
                                         std::string(fields[1]));
            }
            continue;
        }
        seen_content = true;
        if (fields.size() != 2) {
            throw WeightTableInvalid(where + "expected `<criterion-id> <centiweight>`");
        }
        auto id = parse_criterion(fields[0]);
        if (!id) throw WeightTableInvalid(where + "unknown criterion id " + std::string(fields[0]));
        std::int64_t value = 0;
        auto [ptr, ec] =
            std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), value);
        if (ec != std::errc{} || ptr != fields[1].data() + fields[1].size()) {
            throw WeightTableInvalid(where + "centiweight must be an integer, got " +
                                     std::string(fields[1]));
        }
        if (table.entry(*id)) {
            throw WeightTableInvalid(where + "duplicate entry for " + std::string(fields[0]));
        }
        table.set(*id, value);
    }
    return table;
}

WeightTable load_weight_table(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw WeightTableInvalid("cannot open weight table " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_weight_table(ss.str());
}

std::string format_weight_table(const WeightTable& table) {
    std::string out = "wii-weights 1\n";
    for (auto id : kAllCriteria) {
        if (auto e = table.entry(id)) {
            out += std::string(to_string(id)) + " " + std::to_string(*e) + "\n";
        }
    }
    return out;
}

WeightValidation validate_weights(const WeightTable& table) {
    WeightValidation report;
    using Severity = WeightFinding::Severity;
    for (auto id : kLeafCriteria) {
        if (!table.entry(id)) {
            report.valid = false;
            report.findings.push_back(
                {Severity::Error, "missing leaf " + std::string(to_string(id))});
        }
    }
    for (auto id : kAllCriteria) {
        if (auto e = table.entry(id); e && *e < 0) {
            report.valid = false;
            report.findings.push_back({Severity::Error, "negative centiweight for " +
                                                            std::string(to_string(id)) + ": " +
                                                            std::to_string(*e)});
        }
    }
    report.total = table.total();
    if (report.total != kDefaultCeilingCentis) {
        report.findings.push_back({Severity::Warning, "total " + std::to_string(report.total) +
                                                          ", expected " +
                                                          std::to_string(kDefaultCeilingCentis)});
    }
    return report;
}

// ---------------------------------------------------------------------------

std::string WiiScore::str() const {
    auto whole = centis_ / 100;
    auto frac = centis_ % 100;
    std::string out = std::to_string(whole) + ".";
    if (frac < 10) out += "0";
    out += std::to_string(frac);
    return out;
}

WiiScore WiiScore::parse(std::string_view text) {
    auto dot = text.find('.');
    if (dot == std::string_view::npos || dot == 0 || text.size() - dot != 3) {
        throw std::invalid_argument("WII value must have exactly two decimals: " +
                                    std::string(text));
    }
    auto digits = [&](std::string_view s) {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size() || s.front() == '-' ||
            s.front() == '+') {
            throw std::invalid_argument("bad WII value: " + std::string(text));
        }
        return v;
    };
    return WiiScore(digits(text.substr(0, dot)) * 100 + digits(text.substr(dot + 1)));
}

std::string_view to_string(WiiClass c) {
    switch (c) {
        case WiiClass::NoWI: return "No-WI";
        case WiiClass::WIReady: return "WI-ready";
        case WiiClass::WIAcquired: return "WI-acquired";
    }
    return "?";
}

std::optional<WiiClass> parse_wii_class(std::string_view text) {
    for (auto c : {WiiClass::NoWI, WiiClass::WIReady, WiiClass::WIAcquired}) {
        if (to_string(c) == text) return c;
    }
    return std::nullopt;
}

AssessmentVector derive_parents(const AssessmentVector& raw) {
    std::vector<CriterionId> missing;
    for (auto id : kLeafCriteria) {
        if (!raw.has(id)) missing.push_back(id);
    }
    if (!missing.empty()) throw IncompleteAssessment(std::move(missing));

    AssessmentVector out = raw;
    for (auto p : kParentCriteria) {
        bool any = false;
        for (auto c : children_of(p)) any = any || raw.value(c);
        out.set(p, any);
    }
    return out;
}

WiiScore compute_wii(const AssessmentVector& v, const WeightTable& w) {
    if (!v.complete()) throw std::invalid_argument("compute_wii needs a complete vector");
    std::int64_t sum = 0;
    for (auto id : kAllCriteria) {
        if (v.value(id)) sum += w.centiweight(id);
    }
    return WiiScore(sum);
}

WiiClass classify(const AssessmentVector& v) {
    if (!v.complete()) throw std::invalid_argument("classify needs a complete vector");
    if (v.value(CriterionId::C3) || v.value(CriterionId::C5)) return WiiClass::WIAcquired;
    for (auto id : kAllCriteria) {
        if (v.value(id)) return WiiClass::WIReady;
    }
    return WiiClass::NoWI;
}

}  // namespace wii
