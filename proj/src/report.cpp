#include "wii/report.hpp"

#include "wii/version.hpp"

namespace wii {

using nlohmann::json;

namespace {

json evidence_json(const Evidence& e) {
    json j{{"kind", std::string(to_string(e.kind))}, {"resource_url", e.resource_url}, {"detail", e.detail}};
    j["byte_offset"] = e.byte_offset ? json(*e.byte_offset) : json(nullptr);
    j["header_name"] = e.header_name ? json(*e.header_name) : json(nullptr);
    return j;
}

json evidence_list(const std::vector<Evidence>& list) {
    json out = json::array();
    for (const auto& e : list) out.push_back(evidence_json(e));
    return out;
}

json outline_json(const std::vector<OutlineNode>& nodes) {
    json out = json::array();
    for (const auto& n : nodes) {
        out.push_back({{"level", n.level}, {"text", n.text}, {"offset", n.offset}, {"children", outline_json(n.children)}});
    }
    return out;
}

json opt_string(const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); }

json opt_count(const std::optional<std::size_t>& n) { return n ? json(*n) : json(nullptr); }

std::string category_name(WiiClass c) {
    switch (c) {
        case WiiClass::WIAcquired: return "WI";
        case WiiClass::WIReady: return "WI ready";
        default: return "No WI";
    }
}

std::string cell(const std::optional<std::size_t>& n) { return n ? std::to_string(*n) : "N/A"; }

/// Criterion heading as printed in the tables: "3.1" for C3_1.
std::string criterion_number(CriterionId id) {
    std::string s(to_string(id));
    s.erase(0, 1);
    for (auto& c : s) {
        if (c == '_') c = '.';
    }
    return s;
}

}  // namespace

SiteReport audit_snapshot(const SiteSnapshot& snapshot, const ManualAnswerFile& answers, const AuditConfig& config,
                          const WeightTable& weights) {
    SiteReport r;
    r.tool_version = std::string(kToolVersion);
    r.site_url = snapshot.root_url;
    r.requested_url = snapshot.requested_url;
    r.fetched_at = snapshot.fetched_at;
    r.snapshot_truncated = snapshot.truncated;
    r.snapshot_digest = snapshot.manifest_digest;
    r.settings = assessment_settings(config, weights);
    r.config_digest = config_digest(config, weights);
    r.checks = run_all_checkers(snapshot, config.mobile_ok);
    if (!answers.site_url.empty()) r.answers = answers;
    SiteIdentity site{snapshot.root_url, {snapshot.requested_url}};
    r.assessment = merge(site, r.checks.results, answers, MergePolicy{config.accept_heuristics}, weights);
    return r;
}

json to_json(const SiteReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks.results) {
        checks.push_back({{"criterion", std::string(to_string(c.criterion))},
                          {"value", c.value ? 1 : 0},
                          {"advisory", c.advisory},
                          {"evidence", evidence_list(c.evidence)}});
    }
    json tests = json::array();
    for (const auto& t : r.checks.mobile_ok_tests) {
        tests.push_back({{"test", std::string(to_string(t.test))}, {"passed", t.passed}, {"failures", evidence_list(t.failures)}});
    }
    json metadata = json::array();
    for (const auto& [k, v] : r.checks.semantics.metadata) metadata.push_back({k, v});

    json answers = nullptr;
    if (r.answers) {
        json list = json::array();
        for (const auto& a : r.answers->answers) {
            list.push_back({{"criterion", std::string(to_string(a.criterion))}, {"value", a.value}, {"evidence", a.evidence}});
        }
        answers = {{"site", r.answers->site_url},
                   {"assessor", r.answers->assessor},
                   {"date", r.answers->assessed_on},
                   {"answers", list}};
    }

    const auto& a = r.assessment;
    json vector = json::object();
    for (auto id : kAllCriteria) vector[std::string(to_string(id))] = a.vector.value(id) ? 1 : 0;
    json provenance = json::object();
    for (std::size_t i = 0; i < kLeafCount; ++i) {
        provenance[std::string(to_string(kLeafCriteria[i]))] = std::string(to_string(a.provenance[i]));
    }

    return json{
        {"tool", {{"name", std::string(kToolName)}, {"version", r.tool_version}}},
        {"site_url", r.site_url},
        {"snapshot",
         {{"requested_url", r.requested_url},
          {"fetched_at", r.fetched_at},
          {"truncated", r.snapshot_truncated},
          {"manifest_digest", r.snapshot_digest}}},
        {"config_digest", r.config_digest},
        {"settings", r.settings},
        {"checks", checks},
        {"mobile_ok_tests", tests},
        {"semantics",
         {{"title", opt_string(r.checks.semantics.title)},
          {"language", opt_string(r.checks.semantics.language)},
          {"outline", outline_json(r.checks.semantics.outline)},
          {"metadata", metadata}}},
        {"answers", answers},
        {"assessment",
         {{"site_url", a.site_url},
          {"vector", vector},
          {"provenance", provenance},
          {"wii", a.wii.str()},
          {"class", std::string(to_string(a.wii_class))},
          {"warnings", a.warnings}}},
    };
}

SiteAssessment assessment_from_report(const json& report) {
    try {
        const auto& a = report.at("assessment");
        SiteAssessment out;
        out.site_url = a.at("site_url").get<std::string>();
        AssessmentVector raw;
        for (auto leaf : kLeafCriteria) {
            auto v = a.at("vector").at(std::string(to_string(leaf))).get<int>();
            if (v != 0 && v != 1) throw ReportInvalid(std::string(to_string(leaf)) + " is not 0 or 1");
            raw.set(leaf, v == 1);
        }
        out.vector = derive_parents(raw);
        for (auto parent : kParentCriteria) {
            if (a.at("vector").at(std::string(to_string(parent))).get<int>() != out.vector.value(parent)) {
                throw ReportInvalid(std::string(to_string(parent)) + " disagrees with its sub-criteria");
            }
        }
        for (std::size_t i = 0; i < kLeafCount; ++i) {
            auto p = parse_provenance(a.at("provenance").at(std::string(to_string(kLeafCriteria[i]))).get<std::string>());
            if (!p) throw ReportInvalid("unknown provenance");
            out.provenance[i] = *p;
        }
        WeightTable weights;
        for (const auto& [k, v] : report.at("settings").at("weights").items()) {
            auto id = parse_criterion(k);
            if (!id) throw ReportInvalid("unknown criterion in weights: " + k);
            weights.set(*id, v.get<std::int64_t>());
        }
        out.wii = WiiScore::parse(a.at("wii").get<std::string>());
        auto cls = parse_wii_class(a.at("class").get<std::string>());
        if (!cls) throw ReportInvalid("unknown class");
        out.wii_class = *cls;
        if (compute_wii(out.vector, weights) != out.wii) throw ReportInvalid("stored WII does not match the vector");
        if (classify(out.vector) != out.wii_class) throw ReportInvalid("stored class does not match the vector");
        out.warnings = a.at("warnings").get<std::vector<std::string>>();
        return out;
    } catch (const json::exception& e) {
        throw ReportInvalid(e.what());
    } catch (const std::invalid_argument& e) {
        throw ReportInvalid(e.what());
    }
}

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string corpus_csv_header() {
    std::string out = "url";
    for (auto id : kLeafCriteria) out += "," + std::string(to_string(id));
    for (auto id : kParentCriteria) out += "," + std::string(to_string(id));
    return out + ",wii,class\n";
}

std::string corpus_csv_row(const SiteAssessment& a) {
    std::string out = csv_field(a.site_url);
    for (auto id : kLeafCriteria) out += a.vector.value(id) ? ",1" : ",0";
    for (auto id : kParentCriteria) out += a.vector.value(id) ? ",1" : ",0";
    return out + "," + a.wii.str() + "," + std::string(to_string(a.wii_class)) + "\n";
}

std::string render_report(const SiteReport& r, OutputFormat format) {
    if (format == OutputFormat::Json) return canonical_dump(to_json(r));
    if (format == OutputFormat::Csv) return corpus_csv_header() + corpus_csv_row(r.assessment);

    const auto& a = r.assessment;
    std::string md = "# WII audit: " + r.site_url + "\n\n";
    md += "- WII: **" + a.wii.str() + "**\n";
    md += "- Class: **" + std::string(to_string(a.wii_class)) + "**\n";
    md += "- Snapshot: `" + r.snapshot_digest + "`" + (r.snapshot_truncated ? " (truncated)" : "") + "\n";
    md += "- Config: `" + r.config_digest + "`\n";
    md += "- Tool: " + std::string(kToolName) + " " + r.tool_version + "\n\n";
    md += "| Criterion | Value | Provenance |\n|---|---|---|\n";
    for (auto id : kAllCriteria) {
        std::string prov = "derived";
        for (std::size_t i = 0; i < kLeafCount; ++i) {
            if (kLeafCriteria[i] == id) prov = std::string(to_string(a.provenance[i]));
        }
        md += "| " + criterion_number(id) + " | " + (a.vector.value(id) ? "1" : "0") + " | " + prov + " |\n";
    }
    md += "\n## Evidence\n\n";
    for (const auto& c : r.checks.results) {
        md += "### " + criterion_number(c.criterion) + (c.advisory ? " (advisory)" : "") + ": " +
              (c.value ? "1" : "0") + "\n\n";
        if (c.evidence.empty()) md += "- no evidence\n";
        for (const auto& e : c.evidence) {
            md += "- " + std::string(to_string(e.kind)) + " `" + e.resource_url + "`";
            if (e.byte_offset) md += " @" + std::to_string(*e.byte_offset);
            if (e.header_name) md += " [" + *e.header_name + "]";
            md += ": " + e.detail + "\n";
        }
        md += "\n";
    }
    if (!a.warnings.empty()) {
        md += "## Warnings\n\n";
        for (const auto& w : a.warnings) md += "- " + w + "\n";
    }
    return md;
}

json tables_to_json(const CorpusStats& s) {
    json t2 = json::array();
    for (const auto& c : s.criteria) {
        t2.push_back({{"criterion", std::string(to_string(c.criterion))},
                      {"count", c.stat.count},
                      {"percent", c.stat.percent.str()}});
    }
    json t3 = json::array();
    for (const auto& r : s.combinations) {
        t3.push_back({{"row", static_cast<int>(r.row) + 1},
                      {"criteria_present", std::string(row_label(r.row))},
                      {"result", std::string(row_result(r.row))},
                      {"count", r.stat.count},
                      {"percent", r.stat.percent.str()}});
    }
    json t4 = json::array();
    for (const auto& b : s.breakdown) {
        t4.push_back({{"category", category_name(b.wii_class)},
                      {"class", std::string(to_string(b.wii_class))},
                      {"one_criterion_only", opt_count(b.one_criterion_only)},
                      {"several_without_wi", opt_count(b.several_without_wi)},
                      {"wi_with_wi_ready", opt_count(b.wi_with_wi_ready)},
                      {"several_wi_without_wi_ready", opt_count(b.several_wi_without_wi_ready)},
                      {"total", b.total.count},
                      {"percent", b.total.percent.str()}});
    }
    json t5 = json::array();
    for (const auto& b : s.histogram) {
        t5.push_back({{"wii_range", b.label},
                      {"count", b.count},
                      {"percent_of_wi_sites", b.percent_of_wi_sites ? json(b.percent_of_wi_sites->str()) : json(nullptr)}});
    }
    json t6 = json::array();
    for (const auto& site : s.top) {
        t6.push_back({{"url", site.url}, {"wii", site.wii.str()}, {"class", std::string(to_string(site.wii_class))}});
    }
    return json{{"n_sites", s.n_sites},
                {"criteria", t2},
                {"combinations", t3},
                {"categories", t4},
                {"histogram", t5},
                {"top_sites", {{"threshold", s.top_threshold.str()}, {"sites", t6}}},
                {"warnings", s.warnings}};
}

std::map<std::string, std::string> render_tables_csv(const CorpusStats& s) {
    std::map<std::string, std::string> files;
    std::string t2 = "criterion,count,percent\n";
    for (const auto& c : s.criteria) {
        t2 += std::string(to_string(c.criterion)) + "," + std::to_string(c.stat.count) + "," + c.stat.percent.str() + "\n";
    }
    files["criteria.csv"] = t2;

    std::string t3 = "row,criteria_present,result,count,percent\n";
    for (const auto& r : s.combinations) {
        t3 += std::to_string(static_cast<int>(r.row) + 1) + "," + csv_field(row_label(r.row)) + "," +
              csv_field(row_result(r.row)) + "," + std::to_string(r.stat.count) + "," + r.stat.percent.str() + "\n";
    }
    files["combinations.csv"] = t3;

    std::string t4 =
        "category,one_criterion_only,several_without_wi,wi_with_wi_ready,several_wi_without_wi_ready,total,percent\n";
    for (const auto& b : s.breakdown) {
        t4 += csv_field(category_name(b.wii_class)) + "," + cell(b.one_criterion_only) + "," +
              cell(b.several_without_wi) + "," + cell(b.wi_with_wi_ready) + "," + cell(b.several_wi_without_wi_ready) +
              "," + std::to_string(b.total.count) + "," + b.total.percent.str() + "\n";
    }
    files["categories.csv"] = t4;

    std::string t5 = "wii_range,count,percent_of_wi_sites\n";
    for (const auto& b : s.histogram) {
        t5 += csv_field(b.label) + "," + std::to_string(b.count) + "," +
              (b.percent_of_wi_sites ? b.percent_of_wi_sites->str() : "") + "\n";
    }
    files["histogram.csv"] = t5;

    std::string t6 = "url,wii,class\n";
    for (const auto& site : s.top) {
        t6 += csv_field(site.url) + "," + site.wii.str() + "," + std::string(to_string(site.wii_class)) + "\n";
    }
    files["top_sites.csv"] = t6;
    return files;
}

std::string render_tables_markdown(const CorpusStats& s) {
    std::string md = "# WII corpus tables (" + std::to_string(s.n_sites) + " sites)\n\n";

    md += "## Number of web sites that satisfy each criterion\n\n| Criteria |";
    for (const auto& c : s.criteria) md += " " + criterion_number(c.criterion) + " |";
    md += "\n|---|";
    for (std::size_t i = 0; i < s.criteria.size(); ++i) md += "---:|";
    md += "\n| No. of sites |";
    for (const auto& c : s.criteria) md += " " + std::to_string(c.stat.count) + " |";
    md += "\n| Percentage of sites |";
    for (const auto& c : s.criteria) md += " " + c.stat.percent.str() + " |";
    md += "\n\n";

    md += "## Number of web sites that satisfy each combination of criteria\n\n";
    md += "| | Criteria present | Result | No. of websites | No. of websites % |\n|---:|---|---|---:|---:|\n";
    for (const auto& r : s.combinations) {
        md += "| " + std::to_string(static_cast<int>(r.row) + 1) + " | " + std::string(row_label(r.row)) + " | " +
              std::string(row_result(r.row)) + " | " + std::to_string(r.stat.count) + " | " + r.stat.percent.str() +
              " |\n";
    }
    md += "| | Total | | " + std::to_string(s.n_sites) + " | 100.0 |\n\n";

    md += "## Total number of web sites that satisfied each category of WII\n\n";
    md += "| | With one criteria only | More than one criteria without WI criteria | WI criteria with WI ready "
          "criteria | More than one criteria of WI but with no WI ready criteria | Total | WI sites % |\n";
    md += "|---|---:|---:|---:|---:|---:|---:|\n";
    for (const auto& b : s.breakdown) {
        md += "| " + category_name(b.wii_class) + " | " + cell(b.one_criterion_only) + " | " +
              cell(b.several_without_wi) + " | " + cell(b.wi_with_wi_ready) + " | " +
              cell(b.several_wi_without_wi_ready) + " | " + std::to_string(b.total.count) + " | " +
              b.total.percent.str() + " |\n";
    }
    md += "| Total | | | | | " + std::to_string(s.n_sites) + " | 100.0 |\n\n";

    md += "## Total number of web sites against WII values\n\n| WII value |";
    for (const auto& b : s.histogram) md += " " + b.label + " |";
    md += "\n|---|";
    for (std::size_t i = 0; i < s.histogram.size(); ++i) md += "---:|";
    md += "\n| No. of sites |";
    for (const auto& b : s.histogram) md += " " + std::to_string(b.count) + " |";
    md += "\n| % sites against total WI sites |";
    for (const auto& b : s.histogram) md += " " + (b.percent_of_wi_sites ? b.percent_of_wi_sites->str() : "") + " |";
    md += "\n\n";

    md += "## Web sites beyond WII " + s.top_threshold.str() + "\n\n";
    if (s.top.empty()) {
        md += "None.\n";
    } else {
        md += "| Web site | WII | Class |\n|---|---:|---|\n";
        for (const auto& site : s.top) {
            md += "| " + site.url + " | " + site.wii.str() + " | " + std::string(to_string(site.wii_class)) + " |\n";
        }
    }
    if (!s.warnings.empty()) {
        md += "\n## Warnings\n\n";
        for (const auto& w : s.warnings) md += "- " + w + "\n";
    }
    return md;
}

}  // namespace wii
