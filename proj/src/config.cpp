#include "wii/config.hpp"

#include <array>

#include "wii/digest.hpp"
#include "wii/text.hpp"

namespace wii {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 3> kFormatNames = {"json", "csv", "markdown"};

void reject_unknown(const json& obj, std::initializer_list<std::string_view> known, const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (auto k : known) ok = ok || key == k;
        if (!ok) throw ConfigInvalid("unknown key " + where + key);
    }
}

template <typename T>
T positive(const json& obj, const char* key, T fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() <= 0) {
        throw ConfigInvalid(where + key + " must be a positive integer");
    }
    return static_cast<T>(v.get<long long>());
}

template <typename T>
T non_negative(const json& obj, const char* key, T fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ConfigInvalid(where + key + " must be a non-negative integer");
    }
    return static_cast<T>(v.get<long long>());
}

bool boolean(const json& obj, const char* key, bool fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_boolean()) throw ConfigInvalid(where + key + " must be true or false");
    return obj.at(key).get<bool>();
}

}  // namespace

std::string_view to_string(OutputFormat f) { return kFormatNames[static_cast<std::size_t>(f)]; }

std::optional<OutputFormat> parse_output_format(std::string_view text) {
    for (std::size_t i = 0; i < kFormatNames.size(); ++i) {
        if (kFormatNames[i] == text) return static_cast<OutputFormat>(i);
    }
    return std::nullopt;
}

AuditConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigInvalid(std::string("not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigInvalid("top level must be an object");
    reject_unknown(doc, {"weights", "fetch", "mobile_ok", "accept_heuristics", "format", "jobs"}, "");

    AuditConfig cfg;
    if (doc.contains("weights") && !doc["weights"].is_null()) {
        if (!doc["weights"].is_string()) throw ConfigInvalid("weights must be a path string");
        std::filesystem::path p = doc["weights"].get<std::string>();
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        if (!std::filesystem::is_regular_file(p)) throw ConfigInvalid("weights file not found: " + p.string());
        cfg.weight_table_path = p;
    }
    cfg.accept_heuristics = boolean(doc, "accept_heuristics", false, "");
    if (doc.contains("format")) {
        auto f = doc["format"].is_string() ? parse_output_format(doc["format"].get<std::string>()) : std::nullopt;
        if (!f) throw ConfigInvalid("format must be json, csv or markdown");
        cfg.format = *f;
    }
    cfg.jobs = positive(doc, "jobs", 1, "");

    if (doc.contains("fetch")) {
        const auto& f = doc["fetch"];
        if (!f.is_object()) throw ConfigInvalid("fetch must be an object");
        reject_unknown(f,
                       {"max_resources", "max_depth", "max_body_bytes", "delay_ms", "request_timeout_ms",
                        "total_timeout_ms", "max_redirects", "respect_robots", "user_agent"},
                       "fetch.");
        auto& o = cfg.fetch;
        o.max_resources = positive(f, "max_resources", o.max_resources, "fetch.");
        o.max_depth = non_negative(f, "max_depth", o.max_depth, "fetch.");
        o.max_body_bytes = positive(f, "max_body_bytes", o.max_body_bytes, "fetch.");
        o.delay_ms = non_negative(f, "delay_ms", o.delay_ms, "fetch.");
        o.request_timeout_ms = positive(f, "request_timeout_ms", o.request_timeout_ms, "fetch.");
        o.total_timeout_ms = positive(f, "total_timeout_ms", o.total_timeout_ms, "fetch.");
        o.max_redirects = non_negative(f, "max_redirects", o.max_redirects, "fetch.");
        o.respect_robots = boolean(f, "respect_robots", o.respect_robots, "fetch.");
        if (f.contains("user_agent")) {
            if (!f["user_agent"].is_string()) throw ConfigInvalid("fetch.user_agent must be a string");
            o.user_agent = f["user_agent"].get<std::string>();
        }
    }
    if (doc.contains("mobile_ok")) {
        const auto& m = doc["mobile_ok"];
        if (!m.is_object()) throw ConfigInvalid("mobile_ok must be an object");
        reject_unknown(m, {"tests", "max_markup_bytes", "max_total_bytes", "max_external_resources"}, "mobile_ok.");
        auto& o = cfg.mobile_ok;
        if (m.contains("tests")) {
            if (!m["tests"].is_array()) throw ConfigInvalid("mobile_ok.tests must be an array");
            o.enabled.clear();
            for (const auto& t : m["tests"]) {
                auto test = t.is_string() ? parse_mobile_ok_test(t.get<std::string>()) : std::nullopt;
                if (!test) throw ConfigInvalid("unknown mobileOK test " + t.dump());
                o.enabled.insert(*test);
            }
        }
        o.max_markup_bytes = positive(m, "max_markup_bytes", o.max_markup_bytes, "mobile_ok.");
        o.max_total_bytes = positive(m, "max_total_bytes", o.max_total_bytes, "mobile_ok.");
        o.max_external_resources = positive(m, "max_external_resources", o.max_external_resources, "mobile_ok.");
    }
    return cfg;
}

AuditConfig load_config(const std::filesystem::path& path) {
    if (!std::filesystem::is_regular_file(path)) throw ConfigInvalid("config file not found: " + path.string());
    return parse_config(read_file(path), path.parent_path());
}

json config_to_json(const AuditConfig& c) {
    json tests = json::array();
    for (auto t : kAllMobileOkTests) {
        if (c.mobile_ok.enabled.count(t)) tests.push_back(std::string(to_string(t)));
    }
    return json{
        {"weights", c.weight_table_path ? json(c.weight_table_path->string()) : json(nullptr)},
        {"accept_heuristics", c.accept_heuristics},
        {"format", std::string(to_string(c.format))},
        {"jobs", c.jobs},
        {"fetch",
         {{"max_resources", c.fetch.max_resources},
          {"max_depth", c.fetch.max_depth},
          {"max_body_bytes", c.fetch.max_body_bytes},
          {"delay_ms", c.fetch.delay_ms},
          {"request_timeout_ms", c.fetch.request_timeout_ms},
          {"total_timeout_ms", c.fetch.total_timeout_ms},
          {"max_redirects", c.fetch.max_redirects},
          {"respect_robots", c.fetch.respect_robots},
          {"user_agent", c.fetch.user_agent}}},
        {"mobile_ok",
         {{"tests", tests},
          {"max_markup_bytes", c.mobile_ok.max_markup_bytes},
          {"max_total_bytes", c.mobile_ok.max_total_bytes},
          {"max_external_resources", c.mobile_ok.max_external_resources}}},
    };
}

WeightTable resolve_weights(const AuditConfig& config) {
    if (!config.weight_table_path) return WeightTable::default_table();
    auto table = load_weight_table(config.weight_table_path->string());
    auto v = validate_weights(table);
    if (!v.valid) {
        std::string why = config.weight_table_path->string() + ":";
        for (const auto& f : v.findings) {
            if (f.severity == WeightFinding::Severity::Error) why += " " + f.message + ";";
        }
        why.pop_back();
        throw WeightTableInvalid(why);
    }
    return table;
}

json assessment_settings(const AuditConfig& config, const WeightTable& weights) {
    json w = json::object();
    for (auto id : kAllCriteria) {
        if (auto e = weights.entry(id)) w[std::string(to_string(id))] = *e;
    }
    auto full = config_to_json(config);
    return json{{"weights", w},
                {"accept_heuristics", config.accept_heuristics},
                {"mobile_ok", full["mobile_ok"]}};
}

std::string config_digest(const AuditConfig& config, const WeightTable& weights) {
    return sha256_hex(canonical_dump(assessment_settings(config, weights)));
}

std::string canonical_dump(const json& j) {
    return j.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

}  // namespace wii
