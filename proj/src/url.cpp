#include "wii/url.hpp"

#include <vector>

#include "wii/text.hpp"

namespace wii {

namespace {

bool is_scheme_char(char c, bool first) {
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) return true;
    if (first) return false;
    return (c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.';
}

std::string default_port(std::string_view scheme) {
    if (scheme == "http") return "80";
    if (scheme == "https") return "443";
    return {};
}

std::string remove_dot_segments(std::string_view path) {
    std::vector<std::string_view> out;
    bool absolute = !path.empty() && path.front() == '/';
    auto segs = split(absolute ? path.substr(1) : path, '/');
    bool trailing = false;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        auto s = segs[i];
        bool last = i + 1 == segs.size();
        if (s == ".") {
            trailing = last;
            continue;
        }
        if (s == "..") {
            if (!out.empty()) out.pop_back();
            trailing = last;
            continue;
        }
        out.push_back(s);
        trailing = false;
    }
    std::string result = absolute ? "/" : "";
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i) result += '/';
        result += out[i];
    }
    if (trailing && !result.empty() && result.back() != '/') result += '/';
    return result;
}

std::string merge_paths(const Url& base, std::string_view ref_path) {
    if (base.has_authority && base.path.empty()) return "/" + std::string(ref_path);
    auto slash = base.path.rfind('/');
    if (slash == std::string::npos) return std::string(ref_path);
    return base.path.substr(0, slash + 1) + std::string(ref_path);
}

}  // namespace

std::string Url::authority() const {
    std::string out = host;
    if (!port.empty()) out += ":" + port;
    return out;
}

std::string Url::str() const {
    std::string out;
    if (!scheme.empty()) out += scheme + ":";
    if (has_authority) {
        out += "//";
        if (!userinfo.empty()) out += userinfo + "@";
        out += authority();
    }
    out += path;
    if (query) out += "?" + *query;
    if (fragment) out += "#" + *fragment;
    return out;
}

std::optional<Url> parse_url(std::string_view text) {
    text = trim(text);
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') return std::nullopt;
    }
    Url u;
    std::string_view rest = text;

    if (auto hash = rest.find('#'); hash != std::string_view::npos) {
        u.fragment = std::string(rest.substr(hash + 1));
        rest = rest.substr(0, hash);
    }
    if (auto q = rest.find('?'); q != std::string_view::npos) {
        u.query = std::string(rest.substr(q + 1));
        rest = rest.substr(0, q);
    }
    // scheme
    if (auto colon = rest.find(':'); colon != std::string_view::npos && colon > 0) {
        bool ok = true;
        for (std::size_t i = 0; i < colon; ++i) ok = ok && is_scheme_char(rest[i], i == 0);
        auto slash = rest.find('/');
        if (ok && (slash == std::string_view::npos || slash > colon)) {
            u.scheme = to_lower(rest.substr(0, colon));
            rest = rest.substr(colon + 1);
        }
    }
    if (rest.substr(0, 2) == "//") {
        u.has_authority = true;
        rest = rest.substr(2);
        auto end = rest.find('/');
        auto auth = rest.substr(0, end);
        rest = end == std::string_view::npos ? std::string_view{} : rest.substr(end);
        if (auto at = auth.rfind('@'); at != std::string_view::npos) {
            u.userinfo = std::string(auth.substr(0, at));
            auth = auth.substr(at + 1);
        }
        std::string_view host = auth;
        if (!auth.empty() && auth.front() == '[') {
            auto close = auth.find(']');
            if (close == std::string_view::npos) return std::nullopt;
            host = auth.substr(0, close + 1);
            auto after = auth.substr(close + 1);
            if (!after.empty()) {
                if (after.front() != ':') return std::nullopt;
                u.port = std::string(after.substr(1));
            }
        } else if (auto colon = auth.rfind(':'); colon != std::string_view::npos) {
            host = auth.substr(0, colon);
            u.port = std::string(auth.substr(colon + 1));
        }
        for (char c : u.port) {
            if (c < '0' || c > '9') return std::nullopt;
        }
        u.host = to_lower(host);
        if (u.port == default_port(u.scheme)) u.port.clear();
    }
    u.path = std::string(rest);
    return u;
}

std::optional<std::string> resolve_url(std::string_view base_text, std::string_view ref_text) {
    auto base = parse_url(base_text);
    auto ref = parse_url(ref_text);
    if (!base || !ref || !base->absolute()) return std::nullopt;

    Url t;
    if (ref->absolute()) {
        t = *ref;
        t.path = remove_dot_segments(ref->path);
    } else {
        t.scheme = base->scheme;
        if (ref->has_authority) {
            t.has_authority = true;
            t.host = ref->host;
            t.port = ref->port == default_port(t.scheme) ? "" : ref->port;
            t.userinfo = ref->userinfo;
            t.path = remove_dot_segments(ref->path);
            t.query = ref->query;
        } else {
            t.has_authority = base->has_authority;
            t.host = base->host;
            t.port = base->port;
            t.userinfo = base->userinfo;
            if (ref->path.empty()) {
                t.path = base->path;
                t.query = ref->query ? ref->query : base->query;
            } else {
                t.path = ref->path.front() == '/' ? remove_dot_segments(ref->path)
                                                  : remove_dot_segments(merge_paths(*base, ref->path));
                t.query = ref->query;
            }
        }
    }
    if (t.scheme != "http" && t.scheme != "https") return std::nullopt;
    if (!t.has_authority || t.host.empty()) return std::nullopt;
    if (t.path.empty()) t.path = "/";
    t.fragment.reset();
    return t.str();
}

std::optional<std::string> normalize_url(std::string_view text) {
    return resolve_url(text, text);
}

std::string host_key(std::string_view url) {
    auto u = parse_url(url);
    return u ? u->authority() : std::string{};
}

std::string url_path(std::string_view url) {
    auto u = parse_url(url);
    if (!u || u->path.empty()) return "/";
    return u->path;
}

}  // namespace wii
