#include "wii/fetch.hpp"

#include <chrono>
#include <ctime>
#include <map>
#include <set>
#include <thread>

#include "wii/html.hpp"
#include "wii/text.hpp"
#include "wii/url.hpp"
#include "wii/version.hpp"

namespace wii {

namespace {

using Clock = std::chrono::steady_clock;

class RedirectLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OutOfTime : public std::runtime_error {
public:
    OutOfTime() : std::runtime_error("total timeout exceeded") {}
};

bool is_redirect(int status) {
    return status == 301 || status == 302 || status == 303 || status == 307 || status == 308;
}

bool pattern_matches(std::string_view pattern, std::string_view path) {
    bool anchored = !pattern.empty() && pattern.back() == '$';
    if (anchored) pattern.remove_suffix(1);
    // Backtracking glob over `*`.
    std::size_t p = 0, s = 0, star = std::string_view::npos, mark = 0;
    while (s < path.size()) {
        if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = s;
        } else if (p < pattern.size() && pattern[p] == path[s]) {
            ++p;
            ++s;
        } else if (p == pattern.size() && !anchored) {
            return true;
        } else if (star != std::string_view::npos) {
            p = star + 1;
            s = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') ++p;
    return p == pattern.size();
}

std::string utc_now_rfc3339() {
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string path_and_query(std::string_view url) {
    auto u = parse_url(url);
    if (!u) return "/";
    std::string out = u->path.empty() ? "/" : u->path;
    if (u->query) out += "?" + *u->query;
    return out;
}

struct Followed {
    std::string url;  // final
    HttpResponse response;
    std::vector<RedirectHop> hops;
};

class Session {
public:
    Session(const FetchOptions& options, HttpTransport& transport, const FetchHooks& hooks)
        : options_(options),
          transport_(transport),
          hooks_(hooks),
          agent_(options.user_agent.empty() ? default_user_agent() : options.user_agent),
          deadline_(Clock::now() + std::chrono::milliseconds(options.total_timeout_ms)) {}

    bool out_of_time() const { return Clock::now() >= deadline_; }

    bool allowed(const std::string& url) {
        if (!options_.respect_robots) return true;
        auto host = host_key(url);
        auto it = robots_.find(host);
        if (it == robots_.end()) {
            auto u = parse_url(url);
            auto robots_url = u->scheme + "://" + u->authority() + "/robots.txt";
            RobotsRules rules = RobotsRules::allow_all();
            try {
                auto r = request(robots_url);
                if (r.status >= 200 && r.status < 300) rules = RobotsRules::parse(r.body, kToolName);
            } catch (const TransportError&) {
            }
            it = robots_.emplace(host, std::move(rules)).first;
        }
        return it->second.allowed(path_and_query(url));
    }

    Followed follow(const std::string& url) {
        Followed f{url, {}, {}};
        for (;;) {
            f.response = request(f.url);
            if (!is_redirect(f.response.status)) return f;
            auto location = f.response.header("Location");
            if (!location) return f;
            auto next = resolve_url(f.url, trim(*location));
            if (!next) return f;
            f.hops.push_back({f.url, f.response.status, *next});
            if (static_cast<int>(f.hops.size()) > options_.max_redirects) {
                throw RedirectLimit("more than " + std::to_string(options_.max_redirects) + " redirects");
            }
            if (!allowed(*next)) throw RedirectLimit("redirect target " + *next + " disallowed by robots.txt");
            f.url = *next;
        }
    }

private:
    HttpResponse request(const std::string& url) {
        auto host = host_key(url);
        if (auto it = last_.find(host); it != last_.end()) {
            auto ready = it->second + std::chrono::milliseconds(options_.delay_ms);
            auto wait = std::chrono::ceil<std::chrono::milliseconds>(ready - Clock::now()).count();
            if (wait > 0) {
                if (hooks_.sleep) {
                    hooks_.sleep(static_cast<int>(wait));
                } else {
                    std::this_thread::sleep_for(std::chrono::milliseconds(wait));
                }
            }
        }
        auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(deadline_ - Clock::now()).count();
        if (remaining <= 0) throw OutOfTime();
        int timeout = static_cast<int>(std::min<long long>(options_.request_timeout_ms, remaining));
        if (hooks_.on_request) hooks_.on_request(host, url);
        try {
            auto r = transport_.get(url, agent_, options_.max_body_bytes, timeout);
            last_[host] = Clock::now();
            return r;
        } catch (...) {
            last_[host] = Clock::now();
            throw;
        }
    }

    const FetchOptions& options_;
    HttpTransport& transport_;
    const FetchHooks& hooks_;
    std::string agent_;
    Clock::time_point deadline_;
    std::map<std::string, Clock::time_point> last_;
    std::map<std::string, RobotsRules> robots_;
};

ResourceRecord record_for(std::string url, DiscoveredVia via, const HttpResponse& r) {
    ResourceRecord rec;
    rec.url = std::move(url);
    rec.status = r.status;
    rec.media_type = r.header("Content-Type").value_or("");
    rec.headers = r.headers;
    rec.discovered_via = via;
    rec.body_truncated = r.body_truncated;
    return rec;
}

ResourceRecord failed_record(std::string url, DiscoveredVia via, std::string cause) {
    ResourceRecord rec;
    rec.url = std::move(url);
    rec.discovered_via = via;
    rec.error = std::move(cause);
    return rec;
}

struct Page {
    std::string base;  // final URL, for resolving links
    std::string body;
    int depth;
    bool is_root;
};

}  // namespace

std::string default_user_agent() { return std::string(kToolName) + "/" + std::string(kToolVersion); }

std::optional<std::string> HttpResponse::header(std::string_view name) const {
    for (const auto& h : headers) {
        if (iequals(h.name, name)) return h.value;
    }
    return std::nullopt;
}

RobotsRules RobotsRules::parse(std::string_view robots_txt, std::string_view agent_token) {
    struct Group {
        std::vector<std::string> agents;
        std::vector<Rule> rules;
    };
    std::vector<Group> groups;
    bool last_was_agent = false;
    for (auto raw : split_lines(robots_txt)) {
        auto line = trim(strip_comment(raw));
        auto colon = line.find(':');
        if (colon == std::string_view::npos) continue;
        auto key = to_lower(trim(line.substr(0, colon)));
        auto value = std::string(trim(line.substr(colon + 1)));
        if (key == "user-agent") {
            if (!last_was_agent) groups.emplace_back();
            groups.back().agents.push_back(to_lower(value));
            last_was_agent = true;
        } else if (key == "allow" || key == "disallow") {
            last_was_agent = false;
            if (groups.empty() || value.empty()) continue;
            groups.back().rules.push_back({key == "allow", value});
        } else {
            last_was_agent = false;
        }
    }
    auto token = to_lower(agent_token);
    RobotsRules out;
    const Group* star = nullptr;
    for (const auto& g : groups) {
        for (const auto& a : g.agents) {
            if (a == token) {
                out.rules_ = g.rules;
                return out;
            }
            if (a == "*" && !star) star = &g;
        }
    }
    if (star) out.rules_ = star->rules;
    return out;
}

bool RobotsRules::allowed(std::string_view path) const {
    const Rule* best = nullptr;
    for (const auto& r : rules_) {
        if (!pattern_matches(r.pattern, path)) continue;
        if (!best || r.pattern.size() > best->pattern.size() ||
            (r.pattern.size() == best->pattern.size() && r.allow)) {
            best = &r;
        }
    }
    return !best || best->allow;
}

SiteSnapshot fetch_site(const std::string& url, const FetchOptions& options, HttpTransport& transport,
                        const FetchHooks& hooks) {
    auto start = normalize_url(url);
    if (!start) throw SnapshotFailed(url, "not an absolute http(s) URL");
    Session session(options, transport, hooks);

    SiteSnapshot snap;
    snap.requested_url = *start;
    snap.fetched_at = utc_now_rfc3339();

    Followed root;
    try {
        if (!session.allowed(*start)) {
            throw SnapshotFailed(*start, "disallowed by robots.txt (robots can be ignored explicitly)");
        }
        root = session.follow(*start);
    } catch (const TransportError& e) {
        throw SnapshotFailed(*start, e.what());
    } catch (const RedirectLimit& e) {
        throw SnapshotFailed(*start, e.what());
    } catch (const OutOfTime& e) {
        throw SnapshotFailed(*start, e.what());
    }
    if (root.response.status < 200 || root.response.status >= 300) {
        throw SnapshotFailed(*start, "HTTP " + std::to_string(root.response.status));
    }
    snap.root_url = root.url;
    snap.redirects = root.hops;
    auto root_record = record_for(root.url, DiscoveredVia::Root, root.response);
    bool root_html = is_html_resource(root_record, root.response.body);
    snap.add(std::move(root_record), root.response.body);

    const auto site_host = host_key(root.url);
    std::set<std::string> seen{*start, root.url};
    std::vector<Page> level;
    if (root_html) level.push_back({root.url, root.response.body, 0, true});

    while (!level.empty() && !snap.truncated) {
        std::map<std::string, std::pair<DiscoveredVia, int>> candidates;
        for (const auto& page : level) {
            for (const auto& link : extract_links(page.body, page.base)) {
                if (seen.count(link.url) || host_key(link.url) != site_host) continue;
                bool wanted = false;
                switch (link.via) {
                    case DiscoveredVia::Hyperlink: wanted = page.depth < options.max_depth; break;
                    case DiscoveredVia::EmbeddedResource: wanted = page.is_root; break;
                    case DiscoveredVia::FeedLink:
                    case DiscoveredVia::AlternateLink: wanted = true; break;
                    case DiscoveredVia::Root: break;
                }
                if (wanted) candidates.emplace(link.url, std::make_pair(link.via, page.depth + 1));
            }
        }
        std::vector<Page> next;
        for (const auto& [candidate, info] : candidates) {
            auto [via, depth] = info;
            if (snap.resources.size() >= options.max_resources || session.out_of_time()) {
                snap.truncated = true;
                break;
            }
            seen.insert(candidate);
            try {
                if (!session.allowed(candidate)) continue;
                auto got = session.follow(candidate);
                auto rec = record_for(candidate, via, got.response);
                bool expand = via == DiscoveredVia::Hyperlink && rec.ok() && host_key(got.url) == site_host &&
                              is_html_resource(rec, got.response.body);
                if (expand) next.push_back({got.url, got.response.body, depth, false});
                snap.add(std::move(rec), std::move(got.response.body));
            } catch (const TransportError& e) {
                snap.add(failed_record(candidate, via, e.what()), "");
            } catch (const RedirectLimit& e) {
                snap.add(failed_record(candidate, via, e.what()), "");
            } catch (const OutOfTime&) {
                snap.truncated = true;
                break;
            }
        }
        level = std::move(next);
    }
    snap.seal();
    return snap;
}

}  // namespace wii
