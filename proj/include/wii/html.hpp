#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wii/snapshot.hpp"

namespace wii {

struct HtmlAttr {
    std::string name;   // lower-cased
    std::string value;  // entities decoded
    std::size_t offset = 0;  // byte offset of the attribute name
};

struct HtmlToken {
    enum class Kind { StartTag, EndTag, Text, Comment, Doctype };

    Kind kind = Kind::Text;
    std::string name;  // lower-cased tag name (tags only)
    std::vector<HtmlAttr> attrs;
    bool self_closing = false;
    std::size_t offset = 0;  // byte offset of '<' or first text byte
    std::size_t length = 0;
    std::string text;  // decoded text, comment body, or doctype body

    const HtmlAttr* attr(std::string_view name) const;
    bool is_start(std::string_view tag) const { return kind == Kind::StartTag && name == tag; }
    bool is_end(std::string_view tag) const { return kind == Kind::EndTag && name == tag; }
};

/// Tolerant tokenizer: never fails, every byte lands in some token.
/// script/style/textarea/title contents are raw text.
std::vector<HtmlToken> tokenize_html(std::string_view html);

/// Decodes the common named references and all numeric ones.
std::string decode_entities(std::string_view text);

/// True for text/html and application/xhtml+xml, or when the media type is
/// missing and the body starts like HTML.
bool is_html_resource(const ResourceRecord& record, std::string_view body);

/// A reference found in markup, already resolved to an absolute URL.
struct LinkRef {
    std::string url;
    DiscoveredVia via = DiscoveredVia::Hyperlink;
    std::string tag;
    std::string rel;   // lower-cased, for <link>
    std::string type;  // lower-cased declared type, for <link>
    std::size_t offset = 0;
};

/// http(s) references of a page in document order. `<base href>` applies.
std::vector<LinkRef> extract_links(std::string_view html, std::string_view page_url);

/// Anchor target that looks like a feed (.rss, .atom, .xml, or a feed/rss
/// path segment).
bool looks_like_feed_url(std::string_view url);

bool is_feed_media_type(std::string_view media_type);

/// Media type without parameters, lower-cased.
std::string essence(std::string_view media_type);

/// `charset` parameter of a Content-Type value, lower-cased.
std::optional<std::string> charset_param(std::string_view content_type);

}  // namespace wii
