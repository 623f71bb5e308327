#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace wii {

/// A parsed absolute or relative URL reference (RFC 3986 components).
struct Url {
    std::string scheme;     // lower-cased, empty for relative refs
    std::string host;       // lower-cased
    std::string port;       // empty when absent or default for the scheme
    std::string userinfo;
    std::string path;
    std::optional<std::string> query;
    std::optional<std::string> fragment;
    bool has_authority = false;

    bool absolute() const { return !scheme.empty(); }

    /// host[:port]
    std::string authority() const;

    /// Serialized form, fragment included if present.
    std::string str() const;
};

std::optional<Url> parse_url(std::string_view text);

/// Resolves `ref` against an absolute `base`. The fragment is dropped, dot
/// segments removed, and an empty path on a hierarchical URL becomes "/".
/// Returns nullopt for unparseable input or non-http(s) results.
std::optional<std::string> resolve_url(std::string_view base, std::string_view ref);

/// Normalized absolute http(s) URL without fragment, or nullopt.
std::optional<std::string> normalize_url(std::string_view text);

/// Lower-cased host[:port] of an absolute URL, empty if unparseable.
std::string host_key(std::string_view url);

/// Path component of an absolute URL ("/" when empty).
std::string url_path(std::string_view url);

}  // namespace wii
