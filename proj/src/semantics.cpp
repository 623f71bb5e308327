#include "checker_util.hpp"
#include "wii/checkers.hpp"
#include "wii/text.hpp"

namespace wii {

using detail::make_evidence;

namespace {

std::string collapse_ws(std::string_view s) {
    std::string out;
    bool space = false;
    for (char c : s) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f') {
            space = !out.empty();
            continue;
        }
        if (space) out += ' ';
        space = false;
        out += c;
    }
    return out;
}

int heading_level(std::string_view tag) {
    if (tag.size() == 2 && tag[0] == 'h' && tag[1] >= '1' && tag[1] <= '6') return tag[1] - '0';
    return 0;
}

struct FlatHeading {
    int level;
    std::string text;
    std::size_t offset;
};

void insert_heading(std::vector<OutlineNode>& roots, FlatHeading h) {
    auto* siblings = &roots;
    while (!siblings->empty() && siblings->back().level < h.level) siblings = &siblings->back().children;
    siblings->push_back({h.level, std::move(h.text), h.offset, {}});
}

}  // namespace

SemanticOutcome extract_semantics(const SiteSnapshot& snapshot) {
    SemanticOutcome out;
    out.result.criterion = CriterionId::C6_2;
    auto page = detail::html_root(snapshot);
    if (!page) {
        out.result.evidence.push_back(make_evidence(EvidenceKind::Document, snapshot.root(), "not an HTML page"));
        return out;
    }
    const auto& rec = *page->record;
    auto body = page->body;

    auto cs = detail::declared_charset(rec, body);
    if (!cs || cs->charset == "utf-8" || cs->charset == "utf8") {
        if (auto bad = find_invalid_utf8(body)) {
            out.result.evidence.push_back(make_evidence(EvidenceKind::Document, rec,
                                                        "decode failure: invalid UTF-8 sequence", *bad));
            return out;
        }
    }

    auto tokens = tokenize_html(body);
    auto& summary = out.summary;
    std::vector<Evidence> features;

    std::optional<FlatHeading> open_heading;
    std::optional<std::size_t> title_at;
    std::string title_text;
    bool in_title = false;
    std::vector<FlatHeading> headings;

    for (const auto& t : tokens) {
        using K = HtmlToken::Kind;
        if (t.kind == K::StartTag) {
            if (t.name == "title" && !title_at) {
                title_at = t.offset;
                in_title = true;
            }
            if ((t.name == "html") && !summary.language) {
                if (auto lang = t.attr("lang"); lang && !trim(lang->value).empty()) {
                    summary.language = std::string(trim(lang->value));
                } else if (auto xl = t.attr("xml:lang"); xl && !trim(xl->value).empty()) {
                    summary.language = std::string(trim(xl->value));
                }
            }
            if (auto level = heading_level(t.name)) {
                if (open_heading) headings.push_back(std::move(*open_heading));
                open_heading = FlatHeading{level, {}, t.offset};
            }
            if (t.name == "meta") {
                auto name = t.attr("name");
                auto content = t.attr("content");
                auto content_value = content ? std::string(trim(content->value)) : std::string{};
                if (name) {
                    auto n = to_lower(trim(name->value));
                    bool wanted = n == "description" || n == "keywords" || istarts_with(n, "dc.") ||
                                  istarts_with(n, "dcterms.");
                    if (wanted && !content_value.empty()) {
                        summary.metadata.emplace_back(std::string(trim(name->value)), content_value);
                        features.push_back(make_evidence(EvidenceKind::MarkupFeature, rec,
                                                         "meta " + std::string(trim(name->value)), t.offset));
                    }
                }
                if (auto equiv = t.attr("http-equiv");
                    equiv && iequals(trim(equiv->value), "content-language") && !summary.language &&
                    !content_value.empty()) {
                    summary.language = content_value;
                }
            }
            if (auto prop = t.attr("property"); prop && !trim(prop->value).empty()) {
                auto content = t.attr("content");
                summary.metadata.emplace_back(std::string(trim(prop->value)),
                                              content ? std::string(trim(content->value)) : std::string{});
                features.push_back(make_evidence(EvidenceKind::MarkupFeature, rec,
                                                 "RDFa property " + std::string(trim(prop->value)), prop->offset));
            }
            if (auto prop = t.attr("itemprop"); prop && !trim(prop->value).empty()) {
                auto content = t.attr("content");
                summary.metadata.emplace_back(std::string(trim(prop->value)),
                                              content ? std::string(trim(content->value)) : std::string{});
                features.push_back(make_evidence(EvidenceKind::MarkupFeature, rec,
                                                 "microdata itemprop " + std::string(trim(prop->value)),
                                                 prop->offset));
            }
        } else if (t.kind == K::EndTag) {
            if (t.name == "title") in_title = false;
            if (heading_level(t.name) && open_heading) {
                headings.push_back(std::move(*open_heading));
                open_heading.reset();
            }
        } else if (t.kind == K::Text) {
            if (in_title) title_text += t.text;
            if (open_heading) open_heading->text += t.text;
        }
    }
    if (open_heading) headings.push_back(std::move(*open_heading));

    if (title_at) {
        auto title = collapse_ws(title_text);
        if (!title.empty()) {
            summary.title = title;
            features.insert(features.begin(),
                            make_evidence(EvidenceKind::MarkupFeature, rec, "title \"" + title + "\"", *title_at));
        }
    }
    for (auto& h : headings) {
        h.text = collapse_ws(h.text);
        features.push_back(make_evidence(EvidenceKind::MarkupFeature, rec,
                                         "h" + std::to_string(h.level) + " \"" + h.text + "\"", h.offset));
        insert_heading(summary.outline, std::move(h));
    }

    out.result.value = summary.title.has_value() && (!summary.outline.empty() || !summary.metadata.empty());
    out.result.evidence = std::move(features);
    return out;
}

}  // namespace wii
