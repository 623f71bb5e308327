#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wii {

enum class DiscoveredVia { Root, Hyperlink, FeedLink, AlternateLink, EmbeddedResource };

std::string_view to_string(DiscoveredVia via);
std::optional<DiscoveredVia> parse_discovered_via(std::string_view text);

struct Header {
    std::string name;
    std::string value;
    bool operator==(const Header&) const = default;
};

/// One fetched (or failed) resource. Status 0 means no HTTP response was
/// received; `error` then carries the cause.
struct ResourceRecord {
    std::string url;
    int status = 0;
    std::string media_type;
    std::vector<Header> headers;
    std::string body_digest;
    std::string body_ref;
    DiscoveredVia discovered_via = DiscoveredVia::Hyperlink;
    std::optional<std::string> error;
    bool body_truncated = false;

    /// First header with this name, compared case-insensitively.
    std::optional<std::string> header(std::string_view name) const;
    std::vector<std::string> headers_named(std::string_view name) const;

    bool ok() const { return status >= 200 && status < 300; }

    bool operator==(const ResourceRecord&) const = default;
};

struct RedirectHop {
    std::string from;
    int status = 0;
    std::string to;
    bool operator==(const RedirectHop&) const = default;
};

/// An offline archive of one site. Bodies are keyed by digest.
class SiteSnapshot {
public:
    std::string root_url;       // final URL after redirects
    std::string requested_url;  // URL the fetch started from
    std::vector<RedirectHop> redirects;
    std::string fetched_at;     // RFC 3339 UTC
    bool truncated = false;
    std::vector<ResourceRecord> resources;
    std::string manifest_digest;

    /// Appends a record, storing `body` and filling digest and body_ref.
    ResourceRecord& add(ResourceRecord record, std::string body);

    const ResourceRecord& root() const;
    const ResourceRecord* find(std::string_view url) const;
    std::string_view body(const ResourceRecord& record) const;
    const std::map<std::string, std::string>& bodies() const { return bodies_; }

    /// Recomputes manifest_digest from the current contents.
    void seal();

    bool operator==(const SiteSnapshot&) const = default;

private:
    std::map<std::string, std::string> bodies_;
};

class SnapshotError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Locator has no manifest.
class SnapshotMissing : public SnapshotError {
public:
    explicit SnapshotMissing(const std::string& locator)
        : SnapshotError("SnapshotMissing: no snapshot manifest at " + locator) {}
};

/// A digest or structural check failed while loading.
class SnapshotCorrupt : public SnapshotError {
public:
    SnapshotCorrupt(const std::string& resource, const std::string& why)
        : SnapshotError("SnapshotCorrupt: " + resource + ": " + why), resource_(resource) {}
    const std::string& resource() const noexcept { return resource_; }

private:
    std::string resource_;
};

inline constexpr std::string_view kManifestMagic = "wii-snapshot 1";
inline constexpr std::string_view kArchiveExtension = ".wiisnap";

/// Manifest text: magic line, `@key<TAB>value` metadata lines, then one
/// `url<TAB>status<TAB>media_type<TAB>body_digest<TAB>discovered_via`
/// record per resource.
std::string render_manifest(const SiteSnapshot& snapshot);

/// Header sidecar text for one resource: `name: value` lines in receipt order.
std::string render_headers(const ResourceRecord& record);

/// Writes a directory snapshot, or a single-file archive when the locator
/// ends in `.wiisnap`.
void store_snapshot(const SiteSnapshot& snapshot, const std::filesystem::path& locator);

/// Loads and verifies every digest. Throws SnapshotMissing / SnapshotCorrupt.
SiteSnapshot load_snapshot(const std::filesystem::path& locator);

}  // namespace wii
