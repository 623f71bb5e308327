#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wii {

/// The fifteen rows of the criteria table. C3, C6 and C7 are parents; the
/// rest are leaves.
enum class CriterionId : std::uint8_t {
    C1,
    C2,
    C3,
    C3_1,
    C3_2,
    C4,
    C5,
    C6,
    C6_1,
    C6_2,
    C6_3,
    C6_4,
    C7,
    C7_1,
    C7_2,
};

inline constexpr std::size_t kCriterionCount = 15;
inline constexpr std::size_t kLeafCount = 12;

/// All criteria in table order.
inline constexpr std::array<CriterionId, kCriterionCount> kAllCriteria = {
    CriterionId::C1,   CriterionId::C2,   CriterionId::C3,   CriterionId::C3_1, CriterionId::C3_2,
    CriterionId::C4,   CriterionId::C5,   CriterionId::C6,   CriterionId::C6_1, CriterionId::C6_2,
    CriterionId::C6_3, CriterionId::C6_4, CriterionId::C7,   CriterionId::C7_1, CriterionId::C7_2,
};

inline constexpr std::array<CriterionId, kLeafCount> kLeafCriteria = {
    CriterionId::C1,   CriterionId::C2,   CriterionId::C3_1, CriterionId::C3_2,
    CriterionId::C4,   CriterionId::C5,   CriterionId::C6_1, CriterionId::C6_2,
    CriterionId::C6_3, CriterionId::C6_4, CriterionId::C7_1, CriterionId::C7_2,
};

inline constexpr std::array<CriterionId, 3> kParentCriteria = {
    CriterionId::C3, CriterionId::C6, CriterionId::C7};

/// The seven main criteria (top-level rows) used by the combination taxonomy.
inline constexpr std::array<CriterionId, 7> kMainCriteria = {
    CriterionId::C1, CriterionId::C2, CriterionId::C3, CriterionId::C4,
    CriterionId::C5, CriterionId::C6, CriterionId::C7};

/// Leaves that only a human assessor can answer.
inline constexpr std::array<CriterionId, 5> kManualOnlyCriteria = {
    CriterionId::C1, CriterionId::C3_1, CriterionId::C3_2, CriterionId::C4, CriterionId::C5};

constexpr std::size_t index_of(CriterionId id) { return static_cast<std::size_t>(id); }

bool is_leaf(CriterionId id);
bool is_parent(CriterionId id);
bool is_manual_only(CriterionId id);

/// Children of a parent criterion; empty for leaves.
std::vector<CriterionId> children_of(CriterionId id);

/// Parent of a leaf that has one (C3_1 -> C3), otherwise nullopt.
std::optional<CriterionId> parent_of(CriterionId id);

/// Textual id as used in weight and answer files: "C1", "C3_1", ...
std::string_view to_string(CriterionId id);
std::optional<CriterionId> parse_criterion(std::string_view text);

/// Thrown by derive_parents when leaf values are missing.
class IncompleteAssessment : public std::runtime_error {
public:
    explicit IncompleteAssessment(std::vector<CriterionId> missing);
    const std::vector<CriterionId>& missing() const noexcept { return missing_; }

private:
    std::vector<CriterionId> missing_;
};

/// Per-criterion binary values. Slots may be unset until derive_parents()
/// completes the vector.
class AssessmentVector {
public:
    AssessmentVector() = default;

    /// Vector with every one of the 15 slots set to 0.
    static AssessmentVector zeros();

    /// Vector built from a 12-bit mask over kLeafCriteria (bit i = leaf i),
    /// parents left unset.
    static AssessmentVector from_leaf_mask(std::uint32_t mask);

    void set(CriterionId id, bool value) { slots_[index_of(id)] = value ? 1 : 0; }
    void clear(CriterionId id) { slots_[index_of(id)].reset(); }
    bool has(CriterionId id) const { return slots_[index_of(id)].has_value(); }

    /// Value of a slot; throws std::logic_error when unset.
    bool value(CriterionId id) const;
    std::optional<bool> get(CriterionId id) const;

    /// True when all 15 slots are set.
    bool complete() const;

    /// True when complete and every parent equals the OR of its children.
    bool parent_consistent() const;

    bool operator==(const AssessmentVector&) const = default;

private:
    std::array<std::optional<std::uint8_t>, kCriterionCount> slots_{};
};

/// Weights in hundredths of an index point.
class WeightTable {
public:
    WeightTable() = default;

    /// The built-in table: leaves weighted, parents at 0, total 600.
    static const WeightTable& default_table();

    void set(CriterionId id, std::int64_t centiweight) { entries_[index_of(id)] = centiweight; }
    void erase(CriterionId id) { entries_[index_of(id)].reset(); }
    std::optional<std::int64_t> entry(CriterionId id) const { return entries_[index_of(id)]; }

    /// Entry or 0 when absent.
    std::int64_t centiweight(CriterionId id) const { return entries_[index_of(id)].value_or(0); }

    std::int64_t total() const;

    bool operator==(const WeightTable&) const = default;

private:
    std::array<std::optional<std::int64_t>, kCriterionCount> entries_{};
};

/// Parses the plain-text weight format: `<criterion-id> <centiweight>` per
/// line, `#` starts a comment, blank lines ignored. An optional first
/// directive `wii-weights 1` pins the format version.
/// Throws WeightTableInvalid with a line number on bad input.
WeightTable parse_weight_table(std::string_view text);
WeightTable load_weight_table(const std::string& path);
std::string format_weight_table(const WeightTable& table);

class WeightTableInvalid : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct WeightFinding {
    enum class Severity { Error, Warning };
    Severity severity;
    std::string message;
};

struct WeightValidation {
    bool valid = true;
    std::int64_t total = 0;
    std::vector<WeightFinding> findings;
};

inline constexpr std::int64_t kDefaultCeilingCentis = 600;

/// Structured findings for a weight table; never throws.
WeightValidation validate_weights(const WeightTable& table);

/// A non-negative index value in hundredths.
class WiiScore {
public:
    constexpr WiiScore() = default;
    constexpr explicit WiiScore(std::int64_t centivalue) : centis_(centivalue) {}

    constexpr std::int64_t centivalue() const { return centis_; }

    /// Fixed-point display with exactly two decimals, e.g. "1.65".
    std::string str() const;

    /// Inverse of str(); throws std::invalid_argument for anything else.
    static WiiScore parse(std::string_view text);

    constexpr auto operator<=>(const WiiScore&) const = default;

private:
    std::int64_t centis_ = 0;
};

/// Ordered NoWI < WIReady < WIAcquired.
enum class WiiClass : std::uint8_t { NoWI = 0, WIReady = 1, WIAcquired = 2 };

/// "No-WI", "WI-ready", "WI-acquired".
std::string_view to_string(WiiClass c);
std::optional<WiiClass> parse_wii_class(std::string_view text);

/// Completes parents as the OR of their children. Leaves are untouched;
/// stale parent values are overwritten. Throws IncompleteAssessment when any
/// leaf is unset.
AssessmentVector derive_parents(const AssessmentVector& raw);

/// Sum over all 15 criteria of value x centiweight. Integer arithmetic only.
/// Throws std::invalid_argument if `v` is not complete.
WiiScore compute_wii(const AssessmentVector& v, const WeightTable& w);

/// Presence-based: acquired iff C3 or C5, none iff every value is 0.
WiiClass classify(const AssessmentVector& v);

}  // namespace wii
