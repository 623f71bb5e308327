#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wii/snapshot.hpp"

namespace wii {

struct FetchOptions {
    std::size_t max_resources = 50;
    int max_depth = 2;
    std::size_t max_body_bytes = 5 * 1024 * 1024;
    int delay_ms = 1000;  // between consecutive requests to one host
    int request_timeout_ms = 30000;
    int total_timeout_ms = 600000;
    int max_redirects = 5;
    bool respect_robots = true;
    std::string user_agent;  // empty means "wii-audit/<version>"

    bool operator==(const FetchOptions&) const = default;
};

std::string default_user_agent();

struct HttpResponse {
    int status = 0;
    std::vector<Header> headers;  // receipt order, exact casing
    std::string body;
    bool body_truncated = false;

    std::optional<std::string> header(std::string_view name) const;
};

/// DNS, connect, TLS or timeout failure; no HTTP response was received.
class TransportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One GET without following redirects.
class HttpTransport {
public:
    virtual ~HttpTransport() = default;
    virtual HttpResponse get(const std::string& url, const std::string& user_agent, std::size_t max_body_bytes,
                             int timeout_ms) = 0;
};

/// libcurl-backed transport.
std::unique_ptr<HttpTransport> make_http_transport();

/// The root could not be fetched.
class SnapshotFailed : public std::runtime_error {
public:
    SnapshotFailed(const std::string& url, const std::string& cause)
        : std::runtime_error("SnapshotFailed: " + url + ": " + cause), cause_(cause) {}
    const std::string& cause() const noexcept { return cause_; }

private:
    std::string cause_;
};

/// Rules of one robots.txt group relevant to a user agent.
class RobotsRules {
public:
    /// Picks the group naming `agent_token` (case-insensitive prefix of the
    /// product token), else the `*` group.
    static RobotsRules parse(std::string_view robots_txt, std::string_view agent_token);
    static RobotsRules allow_all() { return {}; }

    /// Longest matching Allow/Disallow prefix wins; ties go to Allow.
    /// Supports `*` wildcards and a trailing `$`.
    bool allowed(std::string_view path_and_query) const;

private:
    struct Rule {
        bool allow;
        std::string pattern;
    };
    std::vector<Rule> rules_;
};

struct FetchHooks {
    /// Called instead of sleeping; tests use it to observe politeness.
    std::function<void(int ms)> sleep;
    /// Called with (host, url) just before each request.
    std::function<void(const std::string&, const std::string&)> on_request;
};

/// Breadth-first capture of the root page, same-host pages to max_depth,
/// feed and alternate links found on any captured page, and the embedded
/// resources of the root page. Resources outside the root's host are not
/// fetched. Single-threaded, so at most one request is in flight.
/// Throws SnapshotFailed when the root cannot be fetched.
SiteSnapshot fetch_site(const std::string& url, const FetchOptions& options, HttpTransport& transport,
                        const FetchHooks& hooks = {});

}  // namespace wii
