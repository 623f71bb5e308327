#include "wii/html.hpp"

#include <array>
#include <utility>

#include "wii/text.hpp"
#include "wii/url.hpp"

namespace wii {

namespace {

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f'; }

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = 0xFFFD;
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

constexpr std::array<std::pair<std::string_view, std::uint32_t>, 10> kNamedEntities = {{
    {"amp", '&'},
    {"lt", '<'},
    {"gt", '>'},
    {"quot", '"'},
    {"apos", '\''},
    {"nbsp", 0xA0},
    {"copy", 0xA9},
    {"reg", 0xAE},
    {"mdash", 0x2014},
    {"ndash", 0x2013},
}};

bool is_raw_text_element(std::string_view name) {
    return name == "script" || name == "style" || name == "textarea" || name == "title" ||
           name == "xmp";
}

class Tokenizer {
public:
    explicit Tokenizer(std::string_view src) : s_(src) {}

    std::vector<HtmlToken> run() {
        while (pos_ < s_.size()) {
            if (s_[pos_] == '<' && try_markup()) continue;
            text_until_markup();
        }
        return std::move(out_);
    }

private:
    bool try_markup() {
        auto rest = s_.substr(pos_);
        if (rest.substr(0, 4) == "<!--") {
            auto end = s_.find("-->", pos_ + 4);
            auto stop = end == std::string_view::npos ? s_.size() : end + 3;
            HtmlToken t;
            t.kind = HtmlToken::Kind::Comment;
            t.offset = pos_;
            t.length = stop - pos_;
            t.text = std::string(s_.substr(pos_ + 4, (end == std::string_view::npos ? s_.size() : end) - pos_ - 4));
            out_.push_back(std::move(t));
            pos_ = stop;
            return true;
        }
        if (rest.size() >= 2 && (rest[1] == '!' || rest[1] == '?')) {
            auto end = s_.find('>', pos_);
            auto stop = end == std::string_view::npos ? s_.size() : end + 1;
            HtmlToken t;
            t.offset = pos_;
            t.length = stop - pos_;
            auto inner = s_.substr(pos_ + 2, stop - pos_ - 2 - (end == std::string_view::npos ? 0 : 1));
            if (istarts_with(rest, "<!doctype")) {
                t.kind = HtmlToken::Kind::Doctype;
                t.text = std::string(trim(inner.substr(7)));
            } else {
                t.kind = HtmlToken::Kind::Comment;
                t.text = std::string(inner);
            }
            out_.push_back(std::move(t));
            pos_ = stop;
            return true;
        }
        if (rest.size() >= 3 && rest[1] == '/' && is_alpha(rest[2])) {
            auto start = pos_;
            std::size_t i = pos_ + 2;
            auto name_start = i;
            while (i < s_.size() && !is_space(s_[i]) && s_[i] != '>' && s_[i] != '/') ++i;
            HtmlToken t;
            t.kind = HtmlToken::Kind::EndTag;
            t.name = to_lower(s_.substr(name_start, i - name_start));
            auto end = s_.find('>', i);
            pos_ = end == std::string_view::npos ? s_.size() : end + 1;
            t.offset = start;
            t.length = pos_ - start;
            out_.push_back(std::move(t));
            return true;
        }
        if (rest.size() >= 2 && is_alpha(rest[1])) {
            start_tag();
            return true;
        }
        return false;
    }

    void start_tag() {
        HtmlToken t;
        t.kind = HtmlToken::Kind::StartTag;
        t.offset = pos_;
        std::size_t i = pos_ + 1;
        auto name_start = i;
        while (i < s_.size() && !is_space(s_[i]) && s_[i] != '>' && s_[i] != '/') ++i;
        t.name = to_lower(s_.substr(name_start, i - name_start));
        while (i < s_.size()) {
            while (i < s_.size() && is_space(s_[i])) ++i;
            if (i >= s_.size()) break;
            if (s_[i] == '>') {
                ++i;
                break;
            }
            if (s_[i] == '/') {
                if (i + 1 < s_.size() && s_[i + 1] == '>') {
                    t.self_closing = true;
                    i += 2;
                    break;
                }
                ++i;
                continue;
            }
            HtmlAttr a;
            a.offset = i;
            auto an = i;
            while (i < s_.size() && !is_space(s_[i]) && s_[i] != '=' && s_[i] != '>' &&
                   !(s_[i] == '/' && i + 1 < s_.size() && s_[i + 1] == '>')) {
                ++i;
            }
            if (i == an) {  // stray '=' or similar
                ++i;
                continue;
            }
            a.name = to_lower(s_.substr(an, i - an));
            auto j = i;
            while (j < s_.size() && is_space(s_[j])) ++j;
            if (j < s_.size() && s_[j] == '=') {
                ++j;
                while (j < s_.size() && is_space(s_[j])) ++j;
                if (j < s_.size() && (s_[j] == '"' || s_[j] == '\'')) {
                    auto q = s_[j];
                    auto close = s_.find(q, j + 1);
                    auto vend = close == std::string_view::npos ? s_.size() : close;
                    a.value = decode_entities(s_.substr(j + 1, vend - j - 1));
                    i = close == std::string_view::npos ? s_.size() : close + 1;
                } else {
                    auto vs = j;
                    while (j < s_.size() && !is_space(s_[j]) && s_[j] != '>') ++j;
                    a.value = decode_entities(s_.substr(vs, j - vs));
                    i = j;
                }
            }
            bool dup = false;
            for (const auto& existing : t.attrs) dup = dup || existing.name == a.name;
            if (!dup) t.attrs.push_back(std::move(a));
        }
        pos_ = i;
        t.length = pos_ - t.offset;
        auto name = t.name;
        bool raw = is_raw_text_element(name) && !t.self_closing;
        out_.push_back(std::move(t));
        if (raw) raw_text(name);
    }

    void raw_text(const std::string& name) {
        auto close = std::string("</") + name;
        std::size_t end = pos_;
        while (true) {
            end = s_.find("</", end);
            if (end == std::string_view::npos) {
                end = s_.size();
                break;
            }
            if (istarts_with(s_.substr(end), close)) {
                auto after = end + close.size();
                if (after >= s_.size() || is_space(s_[after]) || s_[after] == '>' || s_[after] == '/') break;
            }
            end += 2;
        }
        if (end > pos_) {
            HtmlToken t;
            t.kind = HtmlToken::Kind::Text;
            t.offset = pos_;
            t.length = end - pos_;
            auto raw = s_.substr(pos_, end - pos_);
            t.text = (name == "title" || name == "textarea") ? decode_entities(raw) : std::string(raw);
            out_.push_back(std::move(t));
        }
        pos_ = end;
    }

    void text_until_markup() {
        auto start = pos_;
        std::size_t i = pos_ + 1;
        while (i < s_.size()) {
            if (s_[i] == '<' && i + 1 < s_.size() &&
                (is_alpha(s_[i + 1]) || s_[i + 1] == '/' || s_[i + 1] == '!' || s_[i + 1] == '?')) {
                break;
            }
            ++i;
        }
        HtmlToken t;
        t.kind = HtmlToken::Kind::Text;
        t.offset = start;
        t.length = i - start;
        t.text = decode_entities(s_.substr(start, i - start));
        out_.push_back(std::move(t));
        pos_ = i;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    std::vector<HtmlToken> out_;
};

}  // namespace

const HtmlAttr* HtmlToken::attr(std::string_view n) const {
    for (const auto& a : attrs) {
        if (a.name == n) return &a;
    }
    return nullptr;
}

std::vector<HtmlToken> tokenize_html(std::string_view html) { return Tokenizer(html).run(); }

std::string decode_entities(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] != '&') {
            out += text[i++];
            continue;
        }
        auto semi = text.find(';', i + 1);
        if (semi == std::string_view::npos || semi - i > 10) {
            out += text[i++];
            continue;
        }
        auto ref = text.substr(i + 1, semi - i - 1);
        bool done = false;
        if (!ref.empty() && ref[0] == '#') {
            std::uint32_t cp = 0;
            bool hex = ref.size() > 1 && (ref[1] == 'x' || ref[1] == 'X');
            auto digits = ref.substr(hex ? 2 : 1);
            bool ok = !digits.empty();
            for (char c : digits) {
                int d = -1;
                if (c >= '0' && c <= '9') d = c - '0';
                else if (hex && c >= 'a' && c <= 'f') d = c - 'a' + 10;
                else if (hex && c >= 'A' && c <= 'F') d = c - 'A' + 10;
                if (d < 0 || cp > 0x10FFFF) {
                    ok = false;
                    break;
                }
                cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(d);
            }
            if (ok) {
                append_utf8(out, cp);
                done = true;
            }
        } else {
            for (const auto& [name, cp] : kNamedEntities) {
                if (ref == name) {
                    append_utf8(out, cp);
                    done = true;
                    break;
                }
            }
        }
        if (done) {
            i = semi + 1;
        } else {
            out += text[i++];
        }
    }
    return out;
}

std::string essence(std::string_view media_type) {
    auto semi = media_type.find(';');
    return to_lower(trim(media_type.substr(0, semi)));
}

std::optional<std::string> charset_param(std::string_view content_type) {
    auto parts = split(content_type, ';');
    for (std::size_t i = 1; i < parts.size(); ++i) {
        auto p = trim(parts[i]);
        if (istarts_with(p, "charset=")) {
            auto v = trim(p.substr(8));
            if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'')) v = v.substr(1, v.size() - 2);
            return to_lower(v);
        }
    }
    return std::nullopt;
}

bool is_html_resource(const ResourceRecord& record, std::string_view body) {
    auto type = essence(record.media_type);
    if (type == "text/html" || type == "application/xhtml+xml") return true;
    if (!type.empty()) return false;
    auto head = trim(body.substr(0, 512));
    return istarts_with(head, "<!doctype html") || istarts_with(head, "<html");
}

bool is_feed_media_type(std::string_view media_type) {
    auto t = essence(media_type);
    return t == "application/rss+xml" || t == "application/atom+xml";
}

bool looks_like_feed_url(std::string_view url) {
    auto path = to_lower(url_path(url));
    if (iends_with(path, ".rss") || iends_with(path, ".atom") || iends_with(path, ".xml")) return true;
    for (auto seg : split(path, '/')) {
        if (seg == "feed" || seg == "rss" || seg == "atom" || seg == "feeds") return true;
    }
    return false;
}

std::vector<LinkRef> extract_links(std::string_view html, std::string_view page_url) {
    auto tokens = tokenize_html(html);
    std::string base(page_url);
    for (const auto& t : tokens) {
        if (t.is_start("base")) {
            if (auto href = t.attr("href")) {
                if (auto r = resolve_url(page_url, href->value)) base = *r;
            }
            break;
        }
    }
    std::vector<LinkRef> links;
    auto push = [&](const HtmlToken& t, const HtmlAttr* a, DiscoveredVia via, std::string rel = {},
                    std::string type = {}) {
        if (!a || trim(a->value).empty()) return;
        auto resolved = resolve_url(base, a->value);
        if (!resolved) return;
        links.push_back({*resolved, via, t.name, std::move(rel), std::move(type), a->offset});
    };
    for (const auto& t : tokens) {
        if (t.kind != HtmlToken::Kind::StartTag) continue;
        const auto& n = t.name;
        if (n == "a" || n == "area") {
            auto href = t.attr("href");
            if (!href) continue;
            auto resolved = resolve_url(base, href->value);
            if (!resolved) continue;
            push(t, href, looks_like_feed_url(*resolved) ? DiscoveredVia::FeedLink : DiscoveredVia::Hyperlink);
        } else if (n == "link") {
            auto rel_attr = t.attr("rel");
            auto rel = rel_attr ? to_lower(rel_attr->value) : std::string{};
            auto type = t.attr("type") ? essence(t.attr("type")->value) : std::string{};
            auto rels = split_ws(rel);
            auto has_rel = [&](std::string_view r) {
                for (auto x : rels) {
                    if (x == r) return true;
                }
                return false;
            };
            if (has_rel("alternate") && is_feed_media_type(type)) {
                push(t, t.attr("href"), DiscoveredVia::FeedLink, rel, type);
            } else if (has_rel("alternate") || (has_rel("meta") && type == "application/rdf+xml")) {
                push(t, t.attr("href"), DiscoveredVia::AlternateLink, rel, type);
            } else if (has_rel("stylesheet") || has_rel("icon")) {
                push(t, t.attr("href"), DiscoveredVia::EmbeddedResource, rel, type);
            }
        } else if (n == "img" || n == "script" || n == "iframe" || n == "frame" || n == "embed" ||
                   n == "audio" || n == "video" || n == "source") {
            push(t, t.attr("src"), DiscoveredVia::EmbeddedResource);
        } else if (n == "object") {
            push(t, t.attr("data"), DiscoveredVia::EmbeddedResource);
        } else if (n == "input") {
            auto type = t.attr("type");
            if (type && iequals(type->value, "image")) push(t, t.attr("src"), DiscoveredVia::EmbeddedResource);
        }
    }
    return links;
}

}  // namespace wii
