#include <set>

#include "checker_util.hpp"
#include "wii/checkers.hpp"
#include "wii/text.hpp"

namespace wii {

using detail::make_evidence;

namespace {

bool opens_new_window(std::string_view target) {
    auto t = trim(target);
    return !t.empty() && !iequals(t, "_self") && !iequals(t, "_parent") && !iequals(t, "_top");
}

}  // namespace

MobileOkOutcome check_mobile_ok(const SiteSnapshot& snapshot, const MobileOkConfig& config) {
    MobileOkOutcome out;
    out.result.criterion = CriterionId::C6_1;

    auto page = detail::html_root(snapshot);
    if (!page) {
        const auto& root = snapshot.root();
        out.result.evidence.push_back(make_evidence(EvidenceKind::Document, root, "not an HTML page"));
        return out;
    }
    const auto& rec = *page->record;
    auto body = page->body;
    auto tokens = tokenize_html(body);

    std::vector<MobileOkTestResult> results;
    for (auto test : kAllMobileOkTests) results.push_back({test, true, {}});
    auto fail = [&](MobileOkTest test, std::string detail, std::optional<std::size_t> offset = std::nullopt,
                    std::optional<std::string> header = std::nullopt) {
        auto& r = results[static_cast<std::size_t>(test)];
        r.passed = false;
        r.failures.push_back(make_evidence(EvidenceKind::TestFailure, rec,
                                           std::string(to_string(test)) + ": " + std::move(detail), offset,
                                           std::move(header)));
    };

    // distinct embedded resources referenced by the root
    std::vector<std::string> embedded;
    std::set<std::string> seen;
    for (const auto& link : extract_links(body, rec.url)) {
        if (link.via == DiscoveredVia::EmbeddedResource && seen.insert(link.url).second) {
            embedded.push_back(link.url);
        }
    }

    for (const auto& t : tokens) {
        if (t.kind != HtmlToken::Kind::StartTag) continue;
        if (t.name == "frame" || t.name == "frameset" || t.name == "iframe") {
            fail(MobileOkTest::NoFrames, "<" + t.name + "> element", t.offset);
        }
        if (t.name == "img" && (!t.attr("width") || !t.attr("height"))) {
            fail(MobileOkTest::ImagesSpecifySize, "<img> without width and height", t.offset);
        }
        if (t.name == "meta") {
            auto equiv = t.attr("http-equiv");
            if (equiv && iequals(trim(equiv->value), "refresh")) {
                fail(MobileOkTest::AutoRefresh, "meta refresh", t.offset);
            }
        }
        if (auto target = t.attr("target"); target && opens_new_window(target->value)) {
            fail(MobileOkTest::PopUps, "target=\"" + target->value + "\" opens a new window", target->offset);
        }
    }
    for (const auto& h : rec.headers) {
        if (iequals(h.name, "Refresh")) fail(MobileOkTest::AutoRefresh, "Refresh header", std::nullopt, h.name);
    }

    auto markup = body.size();
    std::size_t total = markup;
    for (const auto& url : embedded) {
        if (const auto* r = snapshot.find(url); r && r->ok()) total += snapshot.body(*r).size();
    }
    if (markup > config.max_markup_bytes) {
        fail(MobileOkTest::PageSizeLimit, "markup is " + std::to_string(markup) + " bytes, limit " +
                                              std::to_string(config.max_markup_bytes));
    }
    if (total > config.max_total_bytes) {
        fail(MobileOkTest::PageSizeLimit, "markup plus embedded resources is " + std::to_string(total) +
                                              " bytes, limit " + std::to_string(config.max_total_bytes));
    }
    if (embedded.size() > config.max_external_resources) {
        fail(MobileOkTest::ExternalResources, std::to_string(embedded.size()) + " embedded resources, limit " +
                                                  std::to_string(config.max_external_resources));
    }

    auto cs = detail::declared_charset(rec, body);
    if (!cs) {
        fail(MobileOkTest::CharacterEncoding, "no character encoding declared");
    } else if (cs->charset != "utf-8") {
        fail(MobileOkTest::CharacterEncoding, "declared encoding is " + cs->charset + " (" + cs->source + ")",
             cs->offset, cs->source == "http-header" ? std::optional<std::string>("Content-Type") : std::nullopt);
    }

    out.result.value = true;
    for (auto& r : results) {
        if (!config.enabled.count(r.test)) continue;
        if (!r.passed) {
            out.result.value = false;
            for (const auto& e : r.failures) out.result.evidence.push_back(e);
        }
        out.tests.push_back(std::move(r));
    }
    if (out.result.value) {
        out.result.evidence.push_back(make_evidence(EvidenceKind::Document, rec,
                                                    "passed " + std::to_string(out.tests.size()) +
                                                        " enabled mobileOK tests"));
    }
    return out;
}

}  // namespace wii
