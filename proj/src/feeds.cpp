#include <set>

#include "checker_util.hpp"
#include "wii/checkers.hpp"
#include "wii/rdf.hpp"
#include "wii/text.hpp"
#include "wii/url.hpp"
#include "wii/xml.hpp"

namespace wii {

using detail::make_evidence;

namespace {

constexpr std::string_view kAtomNamespace = "http://www.w3.org/2005/Atom";

void check_rss(const XmlElement& root, FeedVerdict& v) {
    v.format = FeedFormat::Rss2;
    if (!root.attr("version")) v.violations.push_back({"<rss> has no version attribute", root.offset});
    auto channels = root.children_named("", "channel");
    if (channels.empty()) {
        v.violations.push_back({"<rss> has no <channel>", root.offset});
        return;
    }
    if (channels.size() > 1) {
        v.violations.push_back({"<rss> has " + std::to_string(channels.size()) + " <channel> elements",
                                channels[1]->offset});
    }
    const auto& channel = *channels.front();
    for (auto required : {"title", "link", "description"}) {
        if (!channel.first_child("", required)) {
            v.violations.push_back({"<channel> missing <" + std::string(required) + ">", channel.offset});
        }
    }
    auto items = channel.children_named("", "item");
    v.entries = items.size();
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (!items[i]->first_child("", "title") && !items[i]->first_child("", "description")) {
            v.violations.push_back({"item #" + std::to_string(i + 1) + " has neither <title> nor <description>",
                                    items[i]->offset});
        }
    }
}

void check_atom(const XmlElement& root, FeedVerdict& v) {
    v.format = FeedFormat::Atom;
    for (auto required : {"id", "title", "updated"}) {
        if (!root.first_child(kAtomNamespace, required)) {
            v.violations.push_back({"<feed> missing <" + std::string(required) + ">", root.offset});
        }
    }
    auto entries = root.children_named(kAtomNamespace, "entry");
    v.entries = entries.size();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& entry = *entries[i];
        std::string label = "entry #" + std::to_string(i + 1);
        if (auto id = entry.first_child(kAtomNamespace, "id")) label += " (" + std::string(trim(id->text)) + ")";
        for (auto required : {"id", "title", "updated"}) {
            if (!entry.first_child(kAtomNamespace, required)) {
                v.violations.push_back({label + " missing <" + std::string(required) + ">", entry.offset});
            }
        }
    }
}

std::string_view format_name(FeedFormat f) {
    switch (f) {
        case FeedFormat::Rss2: return "RSS 2.0";
        case FeedFormat::Atom: return "Atom";
        default: return "unknown";
    }
}

/// URLs that some HTML page in the snapshot names as an RDF alternate.
std::set<std::string> rdf_link_targets(const SiteSnapshot& snapshot) {
    std::set<std::string> out;
    for (const auto& page : detail::html_pages(snapshot)) {
        for (const auto& link : extract_links(page.body, page.record->url)) {
            if (link.tag == "link" && link.type == "application/rdf+xml") out.insert(link.url);
        }
    }
    return out;
}

std::set<std::string> feed_link_targets(const SiteSnapshot& snapshot) {
    std::set<std::string> out;
    for (const auto& page : detail::html_pages(snapshot)) {
        for (const auto& link : extract_links(page.body, page.record->url)) {
            if (link.via == DiscoveredVia::FeedLink) out.insert(link.url);
        }
    }
    return out;
}

std::string count_noun(std::size_t n, std::string_view noun) {
    std::string out = std::to_string(n) + " ";
    if (n == 1) return out + std::string(noun);
    if (noun == "entry") return out + "entries";
    return out + std::string(noun) + "s";
}

}  // namespace

FeedVerdict validate_feed_document(std::string_view bytes) {
    FeedVerdict v;
    auto parsed = parse_xml(bytes);
    if (parsed.error) {
        v.violations.push_back({"XML not well-formed: " + parsed.error->message + " (line " +
                                    std::to_string(parsed.error->line) + ")",
                                parsed.error->offset});
        return v;
    }
    const auto& root = parsed.document->root;
    if (root.is("", "rss")) {
        check_rss(root, v);
    } else if (root.local == "feed") {
        if (root.ns != kAtomNamespace) {
            v.format = FeedFormat::Atom;
            v.violations.push_back({"<feed> is not in the Atom namespace", root.offset});
        } else {
            check_atom(root, v);
        }
    } else {
        v.violations.push_back({"root element <" + root.qname() + "> is neither RSS 2.0 nor Atom", root.offset});
    }
    v.valid = v.violations.empty();
    return v;
}

CheckResult validate_feeds(const SiteSnapshot& snapshot) {
    CheckResult out;
    out.criterion = CriterionId::C6_4;
    auto linked = feed_link_targets(snapshot);
    std::vector<Evidence> problems;
    std::vector<Evidence> passes;
    for (const auto& r : snapshot.resources) {
        if (r.discovered_via == DiscoveredVia::Root) continue;
        bool candidate = r.discovered_via == DiscoveredVia::FeedLink || is_feed_media_type(r.media_type) ||
                         linked.count(r.url);
        if (!candidate) continue;
        if (!r.ok()) {
            problems.push_back(make_evidence(EvidenceKind::Document, r,
                                             r.status ? "feed fetch returned HTTP " + std::to_string(r.status)
                                                      : "feed fetch failed: " + r.error.value_or("no response")));
            continue;
        }
        auto verdict = validate_feed_document(snapshot.body(r));
        if (verdict.valid) {
            passes.push_back(make_evidence(EvidenceKind::Document, r,
                                           "valid " + std::string(format_name(verdict.format)) + " feed with " +
                                               count_noun(verdict.entries, verdict.format == FeedFormat::Atom
                                                                               ? "entry"
                                                                               : "item")));
        } else {
            for (const auto& viol : verdict.violations) {
                problems.push_back(make_evidence(EvidenceKind::Document, r, viol.message, viol.offset));
            }
        }
    }
    out.value = !passes.empty();
    out.evidence = out.value ? std::move(passes) : std::move(problems);
    return out;
}

CheckResult validate_rdf(const SiteSnapshot& snapshot) {
    CheckResult out;
    out.criterion = CriterionId::C6_3;
    auto linked = rdf_link_targets(snapshot);
    std::vector<Evidence> passes;
    std::vector<Evidence> problems;
    for (const auto& r : snapshot.resources) {
        bool candidate = essence(r.media_type) == "application/rdf+xml" || iends_with(url_path(r.url), ".rdf") ||
                         linked.count(r.url);
        if (!candidate || !r.ok()) continue;
        auto body = snapshot.body(r);
        auto parsed = parse_xml(body);
        if (parsed.error) {
            problems.push_back(make_evidence(EvidenceKind::Document, r,
                                             "XML parse error: " + parsed.error->message + " (line " +
                                                 std::to_string(parsed.error->line) + ")",
                                             parsed.error->offset));
            continue;
        }
        try {
            auto triples = parse_rdf_xml(parsed.document->root, body, r.url);
            if (triples.empty()) {
                problems.push_back(make_evidence(EvidenceKind::Document, r, "RDF/XML document with 0 triples",
                                                 parsed.document->root.offset));
            } else {
                passes.push_back(make_evidence(EvidenceKind::Document, r,
                                               std::to_string(triples.size()) +
                                                   (triples.size() == 1 ? " triple" : " triples"),
                                               parsed.document->root.offset));
            }
        } catch (const RdfSyntaxError& e) {
            problems.push_back(make_evidence(EvidenceKind::Document, r, std::string("RDF/XML error: ") + e.what(),
                                             e.offset()));
        }
    }
    out.value = !passes.empty();
    out.evidence = out.value ? std::move(passes) : std::move(problems);
    return out;
}

}  // namespace wii
