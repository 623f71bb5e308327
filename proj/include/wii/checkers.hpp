#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wii/criteria.hpp"
#include "wii/snapshot.hpp"

namespace wii {

enum class EvidenceKind { Header, UrlPattern, Cookie, Doctype, MarkupFeature, Document, TestFailure };

std::string_view to_string(EvidenceKind kind);
std::optional<EvidenceKind> parse_evidence_kind(std::string_view text);

/// Why a checker decided what it did. `byte_offset` indexes the body of
/// `resource_url`; `header_name` names a response header of it.
struct Evidence {
    EvidenceKind kind = EvidenceKind::MarkupFeature;
    std::string resource_url;
    std::string detail;
    std::optional<std::size_t> byte_offset;
    std::optional<std::string> header_name;

    bool operator==(const Evidence&) const = default;
};

struct CheckResult {
    CriterionId criterion = CriterionId::C2;
    bool value = false;
    std::vector<Evidence> evidence;
    bool advisory = false;

    bool operator==(const CheckResult&) const = default;
};

// --- C2 ---------------------------------------------------------------------

CheckResult detect_technologies(const SiteSnapshot& snapshot);

// --- C6_1 -------------------------------------------------------------------

enum class MobileOkTest {
    NoFrames,
    ImagesSpecifySize,
    PageSizeLimit,
    ExternalResources,
    CharacterEncoding,
    AutoRefresh,
    PopUps,
};

inline constexpr std::array<MobileOkTest, 7> kAllMobileOkTests = {
    MobileOkTest::NoFrames,          MobileOkTest::ImagesSpecifySize, MobileOkTest::PageSizeLimit,
    MobileOkTest::ExternalResources, MobileOkTest::CharacterEncoding, MobileOkTest::AutoRefresh,
    MobileOkTest::PopUps,
};

/// NO_FRAMES, IMAGES_SPECIFY_SIZE, ...
std::string_view to_string(MobileOkTest test);
std::optional<MobileOkTest> parse_mobile_ok_test(std::string_view text);

struct MobileOkConfig {
    std::set<MobileOkTest> enabled{kAllMobileOkTests.begin(), kAllMobileOkTests.end()};
    std::size_t max_markup_bytes = 10240;
    std::size_t max_total_bytes = 20480;
    std::size_t max_external_resources = 20;

    bool operator==(const MobileOkConfig&) const = default;
};

struct MobileOkTestResult {
    MobileOkTest test;
    bool passed = true;
    std::vector<Evidence> failures;
};

struct MobileOkOutcome {
    CheckResult result;
    std::vector<MobileOkTestResult> tests;  // enabled tests, in kAllMobileOkTests order
};

MobileOkOutcome check_mobile_ok(const SiteSnapshot& snapshot, const MobileOkConfig& config = {});

// --- C6_2 -------------------------------------------------------------------

struct OutlineNode {
    int level = 1;
    std::string text;
    std::size_t offset = 0;
    std::vector<OutlineNode> children;
};

struct SemanticSummary {
    std::optional<std::string> title;
    std::optional<std::string> language;
    std::vector<OutlineNode> outline;
    std::vector<std::pair<std::string, std::string>> metadata;
};

struct SemanticOutcome {
    SemanticSummary summary;
    CheckResult result;
};

SemanticOutcome extract_semantics(const SiteSnapshot& snapshot);

// --- C6_3 -------------------------------------------------------------------

CheckResult validate_rdf(const SiteSnapshot& snapshot);

// --- C6_4 -------------------------------------------------------------------

enum class FeedFormat { Unknown, Rss2, Atom };

struct FeedViolation {
    std::string message;
    std::size_t offset = 0;
};

struct FeedVerdict {
    FeedFormat format = FeedFormat::Unknown;
    bool valid = false;
    std::size_t entries = 0;  // items or entries
    std::vector<FeedViolation> violations;
};

/// Structural validation of one feed document.
FeedVerdict validate_feed_document(std::string_view bytes);

CheckResult validate_feeds(const SiteSnapshot& snapshot);

// --- C7_1 / C7_2 ------------------------------------------------------------

/// Both results are advisory.
std::pair<CheckResult, CheckResult> detect_storage(const SiteSnapshot& snapshot);

// --- all --------------------------------------------------------------------

struct CheckerOutputs {
    std::vector<CheckResult> results;  // C2, C6_1, C6_2, C6_3, C6_4, C7_1, C7_2
    std::vector<MobileOkTestResult> mobile_ok_tests;
    SemanticSummary semantics;

    const CheckResult* find(CriterionId id) const;
};

CheckerOutputs run_all_checkers(const SiteSnapshot& snapshot, const MobileOkConfig& mobile_ok = {});

}  // namespace wii
