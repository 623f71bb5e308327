#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "site_builder.hpp"
#include "wii/checkers.hpp"
#include "wii/text.hpp"

namespace wii::testing {

/// One row of tests/fixtures/checkers/expected.tsv.
struct FixtureCase {
    std::string kind;  // rss, atom, rdf or a mobileOK test name
    std::string file;
    std::string verdict;
    std::string locus;   // "-" when no byte offset is expected
    std::string detail;  // "-" when not checked
};

struct FixtureOutcome {
    bool ok = false;
    std::string why;
};

inline std::vector<FixtureCase> load_fixture_cases(const std::filesystem::path& dir) {
    std::vector<FixtureCase> out;
    auto text = read_file(dir / "expected.tsv");
    for (auto line : split_lines(text)) {
        if (line.empty() || line[0] == '#') continue;
        auto f = split(line, '\t');
        if (f.size() != 5) throw std::runtime_error("bad fixture row: " + std::string(line));
        out.push_back({std::string(f[0]), std::string(f[1]), std::string(f[2]), std::string(f[3]),
                       std::string(f[4])});
    }
    return out;
}

namespace fixture_detail {

inline bool points_at(const Evidence& e, std::string_view body, std::string_view prefix) {
    return e.byte_offset && *e.byte_offset <= body.size() && body.substr(*e.byte_offset).substr(0, prefix.size()) == prefix;
}

inline bool mentions(const Evidence& e, std::string_view needle) {
    return needle == "-" || e.detail.find(needle) != std::string::npos;
}

/// Checks value and evidence of a document-validator result against the row.
inline FixtureOutcome judge_document(const FixtureCase& c, const CheckResult& r, const std::string& url,
                                     std::string_view body) {
    bool want_valid = c.verdict == "valid";
    if (r.value != want_valid) return {false, "value " + std::to_string(r.value)};
    for (const auto& e : r.evidence) {
        if (e.resource_url != url || !mentions(e, c.detail)) continue;
        if (c.locus != "-" && !points_at(e, body, c.locus)) continue;
        return {true, {}};
    }
    std::string seen;
    for (const auto& e : r.evidence) {
        seen += " [" + e.detail + " @" + (e.byte_offset ? std::to_string(*e.byte_offset) : "-") + "]";
    }
    return {false, "no evidence matching detail/locus; got" + seen};
}

}  // namespace fixture_detail

/// Wraps the fixture in a small site, runs the relevant checker and compares
/// against the expectations in the row.
inline FixtureOutcome run_fixture_case(const std::filesystem::path& dir, const FixtureCase& c) {
    using namespace fixture_detail;
    auto body = read_file(dir / c.file);
    const std::string root = "http://www.example.gov.lk/";

    if (c.kind == "rss" || c.kind == "atom") {
        auto type = c.kind == "rss" ? "application/rss+xml" : "application/atom+xml";
        auto url = root + "feed.xml";
        auto html = std::string("<html><head><title>t</title><link rel=\"alternate\" type=\"") + type +
                    "\" href=\"/feed.xml\"></head></html>";
        auto snap = SiteBuilder(root, html).add(url, DiscoveredVia::FeedLink, type, body).build();
        auto verdict = validate_feed_document(body);
        if (verdict.valid != (c.verdict == "valid")) return {false, "validate_feed_document disagrees"};
        auto want = c.kind == "rss" ? FeedFormat::Rss2 : FeedFormat::Atom;
        if (verdict.format != want && verdict.format != FeedFormat::Unknown) return {false, "wrong format"};
        return judge_document(c, validate_feeds(snap), url, body);
    }
    if (c.kind == "rdf") {
        auto url = root + "meta.rdf";
        auto html = std::string("<html><head><title>t</title>"
                                "<link rel=\"meta\" type=\"application/rdf+xml\" href=\"/meta.rdf\"></head></html>");
        auto snap =
            SiteBuilder(root, html).add(url, DiscoveredVia::AlternateLink, "application/rdf+xml", body).build();
        return judge_document(c, validate_rdf(snap), url, body);
    }

    auto test = parse_mobile_ok_test(c.kind);
    if (!test) return {false, "unknown fixture kind " + c.kind};
    auto snap = SiteBuilder(root, body, "text/html").build();
    auto outcome = check_mobile_ok(snap, MobileOkConfig{});
    const MobileOkTestResult* mine = nullptr;
    for (const auto& t : outcome.tests) {
        if (t.test == *test) {
            mine = &t;
        } else if (!t.passed) {
            return {false, "unrelated test " + std::string(to_string(t.test)) + " failed"};
        }
    }
    if (!mine) return {false, "test not reported"};
    if (c.verdict == "pass") {
        if (!mine->passed || !outcome.result.value) return {false, "expected pass"};
        return {true, {}};
    }
    if (mine->passed || outcome.result.value) return {false, "expected failure"};
    for (const auto& e : mine->failures) {
        if (e.kind != EvidenceKind::TestFailure || !mentions(e, c.detail)) continue;
        if (c.locus == "-" ? e.byte_offset.has_value() : !points_at(e, body, c.locus)) continue;
        return {true, {}};
    }
    return {false, "no failure evidence matching detail/locus"};
}

}  // namespace wii::testing
