#include "wii/checkers.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "checker_util.hpp"
#include "wii/text.hpp"
#include "wii/url.hpp"

namespace wii {

namespace detail {

std::vector<HtmlPage> html_pages(const SiteSnapshot& snapshot) {
    std::vector<HtmlPage> pages;
    for (const auto& r : snapshot.resources) {
        if (!r.ok()) continue;
        auto body = snapshot.body(r);
        if (is_html_resource(r, body)) pages.push_back({&r, body});
    }
    return pages;
}

std::optional<HtmlPage> html_root(const SiteSnapshot& snapshot) {
    const auto& root = snapshot.root();
    auto body = snapshot.body(root);
    if (!is_html_resource(root, body)) return std::nullopt;
    return HtmlPage{&root, body};
}

std::string cookie_name(std::string_view set_cookie) {
    auto eq = set_cookie.find('=');
    return std::string(trim(set_cookie.substr(0, eq)));
}

bool is_session_cookie(std::string_view name) {
    return iequals(name, "PHPSESSID") || iequals(name, "ASP.NET_SessionId") || iequals(name, "JSESSIONID");
}

std::optional<DeclaredCharset> declared_charset(const ResourceRecord& record, std::string_view body) {
    if (body.substr(0, 3) == "\xEF\xBB\xBF") return DeclaredCharset{"utf-8", "bom", 0};
    if (auto ct = record.header("Content-Type")) {
        if (auto cs = charset_param(*ct)) return DeclaredCharset{*cs, "http-header", std::nullopt};
    }
    for (const auto& t : tokenize_html(body)) {
        if (!t.is_start("meta")) continue;
        if (auto cs = t.attr("charset")) {
            return DeclaredCharset{to_lower(trim(cs->value)), "meta", t.offset};
        }
        auto equiv = t.attr("http-equiv");
        auto content = t.attr("content");
        if (equiv && content && iequals(trim(equiv->value), "content-type")) {
            if (auto cs = charset_param(content->value)) return DeclaredCharset{*cs, "meta", t.offset};
        }
    }
    return std::nullopt;
}

Evidence make_evidence(EvidenceKind kind, const ResourceRecord& record, std::string detail,
                       std::optional<std::size_t> offset, std::optional<std::string> header) {
    return Evidence{kind, record.url, std::move(detail), offset, std::move(header)};
}

}  // namespace detail

using detail::make_evidence;

namespace {

constexpr std::array<std::string_view, 7> kEvidenceKindNames = {
    "header", "url-pattern", "cookie", "doctype", "markup-feature", "document", "test-failure"};

constexpr std::array<std::string_view, 7> kMobileOkNames = {
    "NO_FRAMES", "IMAGES_SPECIFY_SIZE", "PAGE_SIZE_LIMIT", "EXTERNAL_RESOURCES",
    "CHARACTER_ENCODING", "AUTO_REFRESH", "POP_UPS"};

// Platform names that mark a server-side dynamic stack.
constexpr std::array<std::string_view, 18> kDynamicPlatforms = {
    "php",    "asp.net", "asp",       "jsp",       "servlet", "tomcat",  "jboss",  "coldfusion", "express",
    "django", "rails",   "mod_perl",  "websphere", "weblogic", "jetty",  "glassfish", "node.js", "perl"};

constexpr std::array<std::string_view, 4> kDynamicExtensions = {".php", ".asp", ".aspx", ".jsp"};

bool is_word_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

/// Case-insensitive whole-word search.
bool contains_word(std::string_view haystack, std::string_view word) {
    auto lower = to_lower(haystack);
    std::size_t pos = 0;
    while ((pos = lower.find(word, pos)) != std::string::npos) {
        bool left = pos == 0 || !is_word_char(lower[pos - 1]);
        auto end = pos + word.size();
        bool right = end >= lower.size() || !is_word_char(lower[end]);
        if (left && right) return true;
        ++pos;
    }
    return false;
}

std::optional<std::string_view> dynamic_extension(std::string_view url) {
    auto path = url_path(url);
    for (auto ext : kDynamicExtensions) {
        if (iends_with(path, ext)) return ext;
    }
    return std::nullopt;
}

bool is_xml_document(const ResourceRecord& r) {
    auto type = essence(r.media_type);
    if (type == "application/xhtml+xml") return false;
    if (type == "application/xml" || type == "text/xml") return true;
    if (type.size() > 4 && type.substr(type.size() - 4) == "+xml") return true;
    auto path = url_path(r.url);
    return type.empty() && (iends_with(path, ".xml") || iends_with(path, ".rdf"));
}

bool is_dynamic_endpoint(std::string_view url) {
    static constexpr std::array<std::string_view, 9> kExt = {".php", ".asp", ".aspx", ".jsp", ".cgi",
                                                            ".pl",  ".py",  ".do",   ".cfm"};
    auto u = parse_url(url);
    if (!u) return false;
    if (u->query && !u->query->empty()) return true;
    for (auto ext : kExt) {
        if (iends_with(u->path, ext)) return true;
    }
    return false;
}

constexpr std::array<std::string_view, 6> kTextDocumentExtensions = {".txt", ".doc", ".docx",
                                                                     ".odt", ".rtf", ".wpd"};

}  // namespace

std::string_view to_string(EvidenceKind kind) { return kEvidenceKindNames[static_cast<std::size_t>(kind)]; }

std::optional<EvidenceKind> parse_evidence_kind(std::string_view text) {
    for (std::size_t i = 0; i < kEvidenceKindNames.size(); ++i) {
        if (kEvidenceKindNames[i] == text) return static_cast<EvidenceKind>(i);
    }
    return std::nullopt;
}

std::string_view to_string(MobileOkTest test) { return kMobileOkNames[static_cast<std::size_t>(test)]; }

std::optional<MobileOkTest> parse_mobile_ok_test(std::string_view text) {
    for (std::size_t i = 0; i < kMobileOkNames.size(); ++i) {
        if (kMobileOkNames[i] == text) return static_cast<MobileOkTest>(i);
    }
    return std::nullopt;
}

CheckResult detect_technologies(const SiteSnapshot& snapshot) {
    CheckResult out;
    out.criterion = CriterionId::C2;
    for (const auto& r : snapshot.resources) {
        for (const auto& h : r.headers) {
            if (iequals(h.name, "Server") || iequals(h.name, "X-Powered-By")) {
                for (auto platform : kDynamicPlatforms) {
                    if (contains_word(h.value, platform)) {
                        out.evidence.push_back(make_evidence(EvidenceKind::Header, r,
                                                             h.name + ": " + h.value + " names " +
                                                                 std::string(platform),
                                                             std::nullopt, h.name));
                        break;
                    }
                }
            } else if (iequals(h.name, "Set-Cookie")) {
                auto name = detail::cookie_name(h.value);
                if (detail::is_session_cookie(name)) {
                    out.evidence.push_back(make_evidence(EvidenceKind::Cookie, r, "session cookie " + name,
                                                         std::nullopt, h.name));
                }
            }
        }
        if (auto ext = dynamic_extension(r.url)) {
            out.evidence.push_back(
                make_evidence(EvidenceKind::UrlPattern, r, "URL path ends in " + std::string(*ext)));
        }
    }
    for (const auto& page : detail::html_pages(snapshot)) {
        for (const auto& t : tokenize_html(page.body)) {
            if (t.kind == HtmlToken::Kind::Doctype) {
                if (iequals(trim(t.text), "html")) {
                    out.evidence.push_back(
                        make_evidence(EvidenceKind::Doctype, *page.record, "HTML5 doctype", t.offset));
                }
                break;
            }
            if (t.kind == HtmlToken::Kind::StartTag) break;
        }
    }
    out.value = !out.evidence.empty();
    return out;
}

std::pair<CheckResult, CheckResult> detect_storage(const SiteSnapshot& snapshot) {
    CheckResult standard{CriterionId::C7_1, false, {}, true};
    CheckResult nonstandard{CriterionId::C7_2, false, {}, true};

    for (const auto& r : snapshot.resources) {
        if (r.ok() && is_xml_document(r)) {
            standard.evidence.push_back(make_evidence(EvidenceKind::Document, r,
                                                      "serves XML document (" +
                                                          (r.media_type.empty() ? std::string("by extension")
                                                                                : essence(r.media_type)) +
                                                          ")"));
        }
        for (const auto& h : r.headers) {
            if (!iequals(h.name, "Set-Cookie")) continue;
            auto name = detail::cookie_name(h.value);
            if (detail::is_session_cookie(name)) {
                standard.evidence.push_back(make_evidence(EvidenceKind::Cookie, r,
                                                          "server-side session state via cookie " + name,
                                                          std::nullopt, h.name));
            }
        }
    }
    for (const auto& page : detail::html_pages(snapshot)) {
        for (const auto& t : tokenize_html(page.body)) {
            if (t.is_start("form")) {
                auto method = t.attr("method");
                if (!method || !iequals(trim(method->value), "post")) continue;
                auto action = t.attr("action");
                auto target = resolve_url(page.record->url, action ? action->value : "");
                if (target && is_dynamic_endpoint(*target)) {
                    standard.evidence.push_back(make_evidence(EvidenceKind::MarkupFeature, *page.record,
                                                              "form posts to dynamic endpoint " + *target,
                                                              t.offset));
                }
            } else if (t.is_start("a") || t.is_start("area")) {
                auto href = t.attr("href");
                if (!href) continue;
                auto value = trim(href->value);
                if (istarts_with(value, "mailto:")) {
                    nonstandard.evidence.push_back(make_evidence(EvidenceKind::MarkupFeature, *page.record,
                                                                 "mailto link " + std::string(value),
                                                                 href->offset));
                    continue;
                }
                auto target = resolve_url(page.record->url, value);
                if (!target) continue;
                auto path = url_path(*target);
                for (auto ext : kTextDocumentExtensions) {
                    if (iends_with(path, ext)) {
                        nonstandard.evidence.push_back(make_evidence(EvidenceKind::MarkupFeature, *page.record,
                                                                     "link to text document " + *target,
                                                                     href->offset));
                        break;
                    }
                }
            }
        }
    }
    standard.value = !standard.evidence.empty();
    nonstandard.value = !nonstandard.evidence.empty();
    return {std::move(standard), std::move(nonstandard)};
}

const CheckResult* CheckerOutputs::find(CriterionId id) const {
    for (const auto& r : results) {
        if (r.criterion == id) return &r;
    }
    return nullptr;
}

CheckerOutputs run_all_checkers(const SiteSnapshot& snapshot, const MobileOkConfig& mobile_ok) {
    CheckerOutputs out;
    out.results.push_back(detect_technologies(snapshot));
    auto mobile = check_mobile_ok(snapshot, mobile_ok);
    out.results.push_back(std::move(mobile.result));
    out.mobile_ok_tests = std::move(mobile.tests);
    auto sem = extract_semantics(snapshot);
    out.results.push_back(std::move(sem.result));
    out.semantics = std::move(sem.summary);
    out.results.push_back(validate_rdf(snapshot));
    out.results.push_back(validate_feeds(snapshot));
    auto [standard, nonstandard] = detect_storage(snapshot);
    out.results.push_back(std::move(standard));
    out.results.push_back(std::move(nonstandard));
    return out;
}

}  // namespace wii
