#include "wii/snapshot.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>

#include "wii/digest.hpp"
#include "wii/text.hpp"

namespace wii {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kManifestFile = "manifest.txt";
constexpr std::string_view kManifestDigestFile = "manifest.sha256";
constexpr std::string_view kArchiveMagic = "wii-snapshot-archive 1";

std::string sanitize_field(std::string_view s) {
    std::string out(s);
    for (auto& c : out) {
        if (c == '\t' || c == '\n' || c == '\r') c = ' ';
    }
    return out;
}

std::string header_file_name(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "headers/%04zu.txt", index);
    return buf;
}

int parse_int(std::string_view s, const std::string& what) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw SnapshotCorrupt("manifest", "bad " + what + " field '" + std::string(s) + "'");
    }
    return v;
}

bool is_hex_digest(std::string_view s) {
    return s.size() == 64 && std::all_of(s.begin(), s.end(), [](char c) {
               return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
           });
}

/// Every file of a snapshot, keyed by relative path.
std::map<std::string, std::string> snapshot_files(const SiteSnapshot& s) {
    std::map<std::string, std::string> files;
    auto manifest = render_manifest(s);
    files.emplace(std::string(kManifestDigestFile), sha256_hex(manifest) + "\n");
    files.emplace(std::string(kManifestFile), std::move(manifest));
    for (std::size_t i = 0; i < s.resources.size(); ++i) {
        files.emplace(header_file_name(i), render_headers(s.resources[i]));
    }
    for (const auto& [digest, body] : s.bodies()) files.emplace("bodies/" + digest, body);
    return files;
}

using FileReader = std::function<std::optional<std::string>(const std::string&)>;

std::vector<Header> parse_headers(std::string_view text, const std::string& url) {
    std::vector<Header> headers;
    for (auto line : split_lines(text)) {
        if (line.empty()) continue;
        auto colon = line.find(':');
        if (colon == std::string_view::npos || colon == 0) {
            throw SnapshotCorrupt(url, "malformed header sidecar line");
        }
        auto value = line.substr(colon + 1);
        if (!value.empty() && value.front() == ' ') value.remove_prefix(1);
        headers.push_back({std::string(line.substr(0, colon)), std::string(value)});
    }
    return headers;
}

SiteSnapshot load_from(const FileReader& read, const std::string& locator) {
    auto manifest = read(std::string(kManifestFile));
    if (!manifest) throw SnapshotMissing(locator);

    SiteSnapshot snap;
    auto lines = split_lines(*manifest);
    if (lines.empty() || lines.front() != kManifestMagic) {
        throw SnapshotCorrupt("manifest", "missing '" + std::string(kManifestMagic) + "' header");
    }
    std::map<std::size_t, std::string> errors;
    std::vector<std::size_t> truncated_bodies;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto line = lines[i];
        if (line.empty()) continue;
        auto fields = split(line, '\t');
        if (line.front() == '@') {
            auto key = fields[0].substr(1);
            auto need = [&](std::size_t n) {
                if (fields.size() != n + 1) {
                    throw SnapshotCorrupt("manifest", "bad @" + std::string(key) + " line");
                }
            };
            if (key == "root-url") {
                need(1);
                snap.root_url = fields[1];
            } else if (key == "requested-url") {
                need(1);
                snap.requested_url = fields[1];
            } else if (key == "fetched-at") {
                need(1);
                snap.fetched_at = fields[1];
            } else if (key == "truncated") {
                need(1);
                snap.truncated = fields[1] == "1";
            } else if (key == "redirect") {
                need(3);
                snap.redirects.push_back(
                    {std::string(fields[1]), parse_int(fields[2], "redirect status"),
                     std::string(fields[3])});
            } else if (key == "error") {
                need(2);
                errors[static_cast<std::size_t>(parse_int(fields[1], "error index"))] = fields[2];
            } else if (key == "body-truncated") {
                need(1);
                truncated_bodies.push_back(
                    static_cast<std::size_t>(parse_int(fields[1], "body-truncated index")));
            } else {
                throw SnapshotCorrupt("manifest", "unknown directive @" + std::string(key));
            }
            continue;
        }
        if (fields.size() != 5) {
            throw SnapshotCorrupt("manifest", "record on line " + std::to_string(i + 1) +
                                                  " does not have 5 fields");
        }
        ResourceRecord r;
        r.url = fields[0];
        r.status = parse_int(fields[1], "status");
        r.media_type = fields[2] == "-" ? "" : std::string(fields[2]);
        r.body_digest = fields[3];
        auto via = parse_discovered_via(fields[4]);
        if (!via) throw SnapshotCorrupt(r.url, "unknown discovered_via '" + std::string(fields[4]) + "'");
        r.discovered_via = *via;
        if (!is_hex_digest(r.body_digest)) throw SnapshotCorrupt(r.url, "malformed body digest");
        r.body_ref = "bodies/" + r.body_digest;

        auto index = snap.resources.size();
        auto headers = read(header_file_name(index));
        if (!headers) throw SnapshotCorrupt(r.url, "missing header sidecar");
        r.headers = parse_headers(*headers, r.url);

        auto body = read(r.body_ref);
        if (!body) throw SnapshotCorrupt(r.url, "missing body file " + r.body_ref);
        if (sha256_hex(*body) != r.body_digest) throw SnapshotCorrupt(r.url, "body digest mismatch");
        snap.add(r, std::move(*body));
    }
    for (auto& [index, cause] : errors) {
        if (index >= snap.resources.size()) throw SnapshotCorrupt("manifest", "@error index out of range");
        snap.resources[index].error = cause;
    }
    for (auto index : truncated_bodies) {
        if (index >= snap.resources.size()) {
            throw SnapshotCorrupt("manifest", "@body-truncated index out of range");
        }
        snap.resources[index].body_truncated = true;
    }

    auto roots = std::count_if(snap.resources.begin(), snap.resources.end(), [](const auto& r) {
        return r.discovered_via == DiscoveredVia::Root;
    });
    if (roots != 1) throw SnapshotCorrupt("manifest", "expected exactly one root resource");
    if (snap.root().url != snap.root_url) {
        throw SnapshotCorrupt("manifest", "root resource URL differs from @root-url");
    }

    snap.seal();
    if (snap.manifest_digest != sha256_hex(*manifest)) {
        throw SnapshotCorrupt("manifest", "manifest is not in canonical form");
    }
    if (auto recorded = read(std::string(kManifestDigestFile))) {
        if (trim(*recorded) != snap.manifest_digest) {
            throw SnapshotCorrupt("manifest", "manifest digest mismatch");
        }
    }
    return snap;
}

std::map<std::string, std::string> read_archive(const fs::path& path) {
    auto data = read_file(path);
    std::map<std::string, std::string> files;
    std::string_view rest = data;
    auto next_line = [&]() -> std::string_view {
        auto nl = rest.find('\n');
        if (nl == std::string_view::npos) throw SnapshotCorrupt("archive", "truncated archive");
        auto line = rest.substr(0, nl);
        rest.remove_prefix(nl + 1);
        return line;
    };
    if (next_line() != kArchiveMagic) throw SnapshotCorrupt("archive", "not a snapshot archive");
    while (!rest.empty()) {
        auto header = next_line();
        auto tab = header.rfind('\t');
        if (tab == std::string_view::npos) throw SnapshotCorrupt("archive", "bad entry header");
        std::size_t size = 0;
        auto sz = header.substr(tab + 1);
        auto [ptr, ec] = std::from_chars(sz.data(), sz.data() + sz.size(), size);
        if (ec != std::errc{} || ptr != sz.data() + sz.size() || size + 1 > rest.size()) {
            throw SnapshotCorrupt("archive", "bad entry size");
        }
        files.emplace(std::string(header.substr(0, tab)), std::string(rest.substr(0, size)));
        rest.remove_prefix(size + 1);
    }
    return files;
}

}  // namespace

std::string_view to_string(DiscoveredVia via) {
    switch (via) {
        case DiscoveredVia::Root: return "root";
        case DiscoveredVia::Hyperlink: return "hyperlink";
        case DiscoveredVia::FeedLink: return "feed-link";
        case DiscoveredVia::AlternateLink: return "alternate-link";
        case DiscoveredVia::EmbeddedResource: return "embedded-resource";
    }
    return "?";
}

std::optional<DiscoveredVia> parse_discovered_via(std::string_view text) {
    for (auto v : {DiscoveredVia::Root, DiscoveredVia::Hyperlink, DiscoveredVia::FeedLink,
                   DiscoveredVia::AlternateLink, DiscoveredVia::EmbeddedResource}) {
        if (to_string(v) == text) return v;
    }
    return std::nullopt;
}

std::optional<std::string> ResourceRecord::header(std::string_view name) const {
    for (const auto& h : headers) {
        if (iequals(h.name, name)) return h.value;
    }
    return std::nullopt;
}

std::vector<std::string> ResourceRecord::headers_named(std::string_view name) const {
    std::vector<std::string> out;
    for (const auto& h : headers) {
        if (iequals(h.name, name)) out.push_back(h.value);
    }
    return out;
}

ResourceRecord& SiteSnapshot::add(ResourceRecord record, std::string body) {
    record.body_digest = sha256_hex(body);
    record.body_ref = "bodies/" + record.body_digest;
    bodies_.try_emplace(record.body_digest, std::move(body));
    resources.push_back(std::move(record));
    return resources.back();
}

const ResourceRecord& SiteSnapshot::root() const {
    for (const auto& r : resources) {
        if (r.discovered_via == DiscoveredVia::Root) return r;
    }
    throw SnapshotCorrupt("manifest", "snapshot has no root resource");
}

const ResourceRecord* SiteSnapshot::find(std::string_view url) const {
    for (const auto& r : resources) {
        if (r.url == url) return &r;
    }
    return nullptr;
}

std::string_view SiteSnapshot::body(const ResourceRecord& record) const {
    auto it = bodies_.find(record.body_digest);
    return it == bodies_.end() ? std::string_view{} : std::string_view(it->second);
}

void SiteSnapshot::seal() { manifest_digest = sha256_hex(render_manifest(*this)); }

std::string render_manifest(const SiteSnapshot& s) {
    std::string out(kManifestMagic);
    out += '\n';
    auto meta = [&](std::string_view key, std::initializer_list<std::string> values) {
        out += '@';
        out += key;
        for (const auto& v : values) {
            out += '\t';
            out += sanitize_field(v);
        }
        out += '\n';
    };
    meta("root-url", {s.root_url});
    if (!s.requested_url.empty()) meta("requested-url", {s.requested_url});
    for (const auto& hop : s.redirects) meta("redirect", {hop.from, std::to_string(hop.status), hop.to});
    if (!s.fetched_at.empty()) meta("fetched-at", {s.fetched_at});
    meta("truncated", {s.truncated ? "1" : "0"});
    for (std::size_t i = 0; i < s.resources.size(); ++i) {
        const auto& r = s.resources[i];
        if (r.error) meta("error", {std::to_string(i), *r.error});
        if (r.body_truncated) meta("body-truncated", {std::to_string(i)});
    }
    for (const auto& r : s.resources) {
        out += sanitize_field(r.url);
        out += '\t';
        out += std::to_string(r.status);
        out += '\t';
        out += r.media_type.empty() ? "-" : sanitize_field(r.media_type);
        out += '\t';
        out += r.body_digest;
        out += '\t';
        out += to_string(r.discovered_via);
        out += '\n';
    }
    return out;
}

std::string render_headers(const ResourceRecord& record) {
    std::string out;
    for (const auto& h : record.headers) {
        out += sanitize_field(h.name) + ": " + sanitize_field(h.value) + "\n";
    }
    return out;
}

void store_snapshot(const SiteSnapshot& snapshot, const fs::path& locator) {
    auto files = snapshot_files(snapshot);
    if (locator.extension() == kArchiveExtension) {
        std::string data(kArchiveMagic);
        data += '\n';
        for (const auto& [name, bytes] : files) {
            data += name + "\t" + std::to_string(bytes.size()) + "\n";
            data += bytes;
            data += '\n';
        }
        if (locator.has_parent_path()) fs::create_directories(locator.parent_path());
        write_file_atomic(locator, data);
        return;
    }
    fs::create_directories(locator / "bodies");
    fs::create_directories(locator / "headers");
    // manifest last, so a half-written directory never loads
    for (const auto& [name, bytes] : files) {
        if (name == kManifestFile) continue;
        write_file_atomic(locator / name, bytes);
    }
    write_file_atomic(locator / kManifestFile, files.at(std::string(kManifestFile)));
}

SiteSnapshot load_snapshot(const fs::path& locator) {
    if (fs::is_regular_file(locator)) {
        auto files = read_archive(locator);
        return load_from(
            [&](const std::string& name) -> std::optional<std::string> {
                auto it = files.find(name);
                if (it == files.end()) return std::nullopt;
                return it->second;
            },
            locator.string());
    }
    if (!fs::is_directory(locator)) throw SnapshotMissing(locator.string());
    return load_from(
        [&](const std::string& name) -> std::optional<std::string> {
            auto p = locator / name;
            if (!fs::is_regular_file(p)) return std::nullopt;
            return read_file(p);
        },
        locator.string());
}

}  // namespace wii
