#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wii/checkers.hpp"
#include "wii/html.hpp"

namespace wii::detail {

struct HtmlPage {
    const ResourceRecord* record;
    std::string_view body;
};

/// Successfully fetched HTML resources, snapshot order.
std::vector<HtmlPage> html_pages(const SiteSnapshot& snapshot);

/// Root page if it is HTML.
std::optional<HtmlPage> html_root(const SiteSnapshot& snapshot);

/// Set-Cookie cookie name, trimmed.
std::string cookie_name(std::string_view set_cookie);

bool is_session_cookie(std::string_view name);

struct DeclaredCharset {
    std::string charset;  // lower-cased
    std::string source;   // "http-header", "meta", "bom"
    std::optional<std::size_t> offset;  // for meta declarations
};

/// Effective declared encoding: BOM, then HTTP header, then <meta>.
std::optional<DeclaredCharset> declared_charset(const ResourceRecord& record, std::string_view body);

Evidence make_evidence(EvidenceKind kind, const ResourceRecord& record, std::string detail,
                       std::optional<std::size_t> offset = std::nullopt,
                       std::optional<std::string> header = std::nullopt);

}  // namespace wii::detail
