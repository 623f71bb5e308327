#include <doctest.h>

#include <filesystem>
#include <random>

#include "../support/site_builder.hpp"
#include "wii/batch.hpp"
#include "wii/config.hpp"
#include "wii/report.hpp"
#include "wii/text.hpp"

using namespace wii;
using wii::testing::SiteBuilder;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("wii-test-" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

SiteSnapshot php_site() {
    return SiteBuilder("http://www.example.gov.lk/", "<html><body><p>Welcome</p></body></html>", "text/html",
                       {{"X-Powered-By", "PHP/5.4"}})
        .build();
}

ManualAnswerFile c5_answers() {
    return parse_answers(
        "site http://www.example.gov.lk/\n"
        "assessor inspector-07\n"
        "date 2015-04-02\n"
        "answer C5 1 \"virtual assistant\"\n");
}

}  // namespace

TEST_CASE("parse_config") {
    SUBCASE("empty document gives the defaults") {
        auto c = parse_config("{}");
        CHECK_FALSE(c.weight_table_path);
        CHECK(c.fetch == FetchOptions{});
        CHECK(c.mobile_ok == MobileOkConfig{});
        CHECK_FALSE(c.accept_heuristics);
        CHECK(c.format == OutputFormat::Json);
        CHECK(c.jobs == 1);
    }
    SUBCASE("values are read") {
        auto c = parse_config(R"({"accept_heuristics": true, "format": "markdown", "jobs": 4,
            "fetch": {"max_resources": 10, "max_depth": 0, "respect_robots": false},
            "mobile_ok": {"tests": ["NO_FRAMES", "POP_UPS"], "max_markup_bytes": 20000}})");
        CHECK(c.accept_heuristics);
        CHECK(c.format == OutputFormat::Markdown);
        CHECK(c.jobs == 4);
        CHECK(c.fetch.max_resources == 10);
        CHECK(c.fetch.max_depth == 0);
        CHECK_FALSE(c.fetch.respect_robots);
        CHECK(c.mobile_ok.enabled == std::set<MobileOkTest>{MobileOkTest::NoFrames, MobileOkTest::PopUps});
        CHECK(c.mobile_ok.max_markup_bytes == 20000);
    }
    SUBCASE("round trip through config_to_json") {
        auto c = parse_config(R"({"jobs": 3, "fetch": {"delay_ms": 0}})");
        auto again = parse_config(config_to_json(c).dump());
        CHECK(config_to_json(again) == config_to_json(c));
    }
    SUBCASE("rejections") {
        CHECK_THROWS_WITH_AS(parse_config(R"({"colour": 1})"), doctest::Contains("colour"), ConfigInvalid);
        CHECK_THROWS_WITH_AS(parse_config(R"({"fetch": {"speed": 1}})"), doctest::Contains("fetch.speed"),
                             ConfigInvalid);
        CHECK_THROWS_AS(parse_config(R"({"jobs": 0})"), ConfigInvalid);
        CHECK_THROWS_AS(parse_config(R"({"mobile_ok": {"max_total_bytes": -5}})"), ConfigInvalid);
        CHECK_THROWS_AS(parse_config(R"({"format": "yaml"})"), ConfigInvalid);
        CHECK_THROWS_AS(parse_config(R"({"mobile_ok": {"tests": ["NO_SUCH_TEST"]}})"), ConfigInvalid);
        CHECK_THROWS_WITH_AS(parse_config(R"({"weights": "missing.txt"})", "/nonexistent"),
                             doctest::Contains("missing.txt"), ConfigInvalid);
        CHECK_THROWS_AS(parse_config("[1, 2"), ConfigInvalid);
    }
    SUBCASE("relative weight path resolves against the config directory") {
        TempDir tmp;
        write_file_atomic(tmp.path / "w.txt", format_weight_table(WeightTable::default_table()));
        write_file_atomic(tmp.path / "c.json", R"({"weights": "w.txt"})");
        auto c = load_config(tmp.path / "c.json");
        REQUIRE(c.weight_table_path);
        CHECK(fs::equivalent(*c.weight_table_path, tmp.path / "w.txt"));
        CHECK(resolve_weights(c) == WeightTable::default_table());

        write_file_atomic(tmp.path / "w.txt", "C1 5\n");
        CHECK_THROWS_AS(resolve_weights(c), WeightTableInvalid);
    }
}

TEST_CASE("config_digest") {
    const auto& w = WeightTable::default_table();
    AuditConfig a;
    auto base = config_digest(a, w);
    CHECK(base.size() == 64);
    CHECK(config_digest(a, w) == base);

    AuditConfig b;
    b.format = OutputFormat::Csv;
    b.jobs = 8;
    b.fetch.delay_ms = 0;
    CHECK(config_digest(b, w) == base);

    AuditConfig c;
    c.accept_heuristics = true;
    CHECK(config_digest(c, w) != base);

    AuditConfig d;
    d.mobile_ok.enabled.erase(MobileOkTest::PopUps);
    CHECK(config_digest(d, w) != base);

    auto w2 = w;
    w2.set(CriterionId::C4, 4);
    CHECK(config_digest(a, w2) != base);
}

TEST_CASE("canonical_dump") {
    auto j = json::parse(R"({"b": 1, "a": {"d": [1, 2], "c": "x"}})");
    CHECK(canonical_dump(j) == "{\n  \"a\": {\n    \"c\": \"x\",\n    \"d\": [\n      1,\n      2\n    ]\n  },\n  \"b\": 1\n}\n");
    CHECK(canonical_dump(json(std::string("bad \xff byte"))) == "\"bad \xEF\xBF\xBD byte\"\n");
}

TEST_CASE("audit_snapshot and the JSON report") {
    AuditConfig cfg;
    const auto& w = WeightTable::default_table();
    auto snap = php_site();

    auto plain = audit_snapshot(snap, {}, cfg, w);
    CHECK(plain.assessment.wii.str() == "0.15");
    CHECK(plain.assessment.wii_class == WiiClass::WIReady);
    CHECK(plain.site_url == "http://www.example.gov.lk/");
    CHECK(plain.snapshot_digest == snap.manifest_digest);
    CHECK(plain.config_digest == config_digest(cfg, w));
    CHECK_FALSE(plain.answers);

    auto report = audit_snapshot(snap, c5_answers(), cfg, w);
    CHECK(report.assessment.wii.str() == "2.65");
    CHECK(report.assessment.wii_class == WiiClass::WIAcquired);
    REQUIRE(report.answers);
    CHECK(report.answers->assessor == "inspector-07");

    auto j = to_json(report);
    for (auto key : {"tool", "site_url", "snapshot", "config_digest", "settings", "checks", "answers", "assessment"}) {
        CHECK_MESSAGE(j.contains(key), key);
    }
    CHECK(j["assessment"]["wii"] == "2.65");
    CHECK(j["assessment"]["class"] == "WI-acquired");
    CHECK(j["assessment"]["vector"]["C5"] == 1);
    CHECK(j["assessment"]["provenance"]["C5"] == "manual");
    CHECK(j["assessment"]["provenance"]["C2"] == "automated");
    CHECK(j.at("snapshot").at("manifest_digest") == snap.manifest_digest);

    SUBCASE("report is deterministic") {
        CHECK(render_report(audit_snapshot(snap, c5_answers(), cfg, w), OutputFormat::Json) ==
              render_report(report, OutputFormat::Json));
    }
    SUBCASE("assessment round-trips") {
        auto back = assessment_from_report(j);
        CHECK(back.site_url == report.assessment.site_url);
        CHECK(back.vector == report.assessment.vector);
        CHECK(back.wii == report.assessment.wii);
        CHECK(back.wii_class == report.assessment.wii_class);
        CHECK(back.provenance == report.assessment.provenance);
        CHECK(back.warnings == report.assessment.warnings);
    }
    SUBCASE("tampered reports are refused") {
        auto t = j;
        t["assessment"]["wii"] = "6.00";
        CHECK_THROWS_WITH_AS(assessment_from_report(t), doctest::Contains("stored WII"), ReportInvalid);
        t = j;
        t["assessment"]["class"] = "No-WI";
        CHECK_THROWS_AS(assessment_from_report(t), ReportInvalid);
        t = j;
        t["assessment"]["vector"]["C3"] = 1;
        CHECK_THROWS_WITH_AS(assessment_from_report(t), doctest::Contains("C3"), ReportInvalid);
        t = j;
        t["assessment"]["vector"]["C1"] = 2;
        CHECK_THROWS_AS(assessment_from_report(t), ReportInvalid);
        t = j;
        t["settings"]["weights"]["C5"] = 100;
        CHECK_THROWS_AS(assessment_from_report(t), ReportInvalid);
        t = j;
        t.erase("assessment");
        CHECK_THROWS_AS(assessment_from_report(t), ReportInvalid);
    }
    SUBCASE("recomputable from snapshot and settings") {
        auto again = audit_snapshot(snap, *report.answers, cfg, w);
        CHECK(to_json(again) == j);
    }
}

TEST_CASE("report projections") {
    AuditConfig cfg;
    auto report = audit_snapshot(php_site(), c5_answers(), cfg, WeightTable::default_table());

    CHECK(corpus_csv_header() ==
          "url,C1,C2,C3_1,C3_2,C4,C5,C6_1,C6_2,C6_3,C6_4,C7_1,C7_2,C3,C6,C7,wii,class\n");
    CHECK(corpus_csv_row(report.assessment) ==
          "http://www.example.gov.lk/,0,1,0,0,0,1,0,0,0,0,0,0,0,0,0,2.65,WI-acquired\n");
    CHECK(render_report(report, OutputFormat::Csv) == corpus_csv_header() + corpus_csv_row(report.assessment));

    auto md = render_report(report, OutputFormat::Markdown);
    CHECK(md.find("2.65") != std::string::npos);
    CHECK(md.find("WI-acquired") != std::string::npos);
    CHECK(md.find("| 5 | 1 | manual |") != std::string::npos);

    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("two\nlines") == "\"two\nlines\"");
}

TEST_CASE("batch manifest") {
    auto entries = parse_batch_manifest("# sites\n\nsnaps/a answers/a.txt\n  /abs/b  \n", "/base");
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].snapshot == "snaps/a");
    CHECK(entries[0].snapshot_path == fs::path("/base/snaps/a"));
    CHECK(entries[0].answers_path == fs::path("/base/answers/a.txt"));
    CHECK(entries[0].line == 3);
    CHECK(entries[1].snapshot_path == fs::path("/abs/b"));
    CHECK_FALSE(entries[1].answers);
    CHECK_THROWS_WITH_AS(parse_batch_manifest("a b c\n", "/"), doctest::Contains("line 1"), ManifestInvalid);
    CHECK_THROWS_AS(load_batch_manifest("/nonexistent/manifest.txt"), ManifestInvalid);
}

TEST_CASE("run_batch") {
    TempDir tmp;
    auto snap = php_site();
    store_snapshot(snap, tmp.path / "in" / "alpha");
    store_snapshot(snap, tmp.path / "in" / "beta.wiisnap");
    store_snapshot(snap, tmp.path / "in" / "gamma");
    write_file_atomic(tmp.path / "in" / "beta.txt", format_answers(c5_answers()));
    // corrupt one body of gamma
    for (const auto& e : fs::directory_iterator(tmp.path / "in" / "gamma" / "bodies")) {
        write_file_atomic(e.path(), "tampered");
    }
    write_file_atomic(tmp.path / "in" / "sites.txt", "alpha\nbeta.wiisnap beta.txt\ngamma\nalpha\n");
    auto entries = load_batch_manifest(tmp.path / "in" / "sites.txt");
    auto out = tmp.path / "out";

    AuditConfig cfg;
    cfg.jobs = 3;
    std::vector<std::string> seen;
    auto first = run_batch(entries, out, cfg, false, [&](const BatchSiteResult& r) { seen.push_back(r.report_name); });
    REQUIRE(first.sites.size() == 4);
    CHECK(seen.size() == 4);
    CHECK(first.failures() == 1);
    CHECK(first.sites[0].report_name == "reports/alpha.json");
    CHECK(first.sites[1].report_name == "reports/beta.json");
    CHECK(first.sites[3].report_name == "reports/alpha-2.json");
    CHECK(first.sites[1].assessment->wii.str() == "2.65");
    CHECK_FALSE(first.sites[2].ok);
    CHECK(first.sites[2].error.find("SnapshotCorrupt") == 0);
    CHECK(fs::exists(out / "reports" / "alpha.json"));
    CHECK_FALSE(fs::exists(out / "reports" / "gamma.json"));

    auto index = json::parse(read_file(out / "corpus.json"));
    CHECK(index["failures"] == 1);
    CHECK(index["sites"].size() == 4);
    CHECK(index["sites"][2]["status"] == "failed");
    CHECK(index["config_digest"] == config_digest(cfg, WeightTable::default_table()));
    auto csv = read_file(out / "corpus.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);

    SUBCASE("rerun reuses existing reports") {
        auto before = fs::last_write_time(out / "reports" / "alpha.json");
        auto second = run_batch(entries, out, cfg, false);
        CHECK(second.sites[0].reused);
        CHECK(second.sites[1].reused);
        CHECK_FALSE(second.sites[2].ok);
        CHECK(fs::last_write_time(out / "reports" / "alpha.json") == before);
        CHECK(read_file(out / "corpus.json") == index.dump(2) + "\n");

        auto forced = run_batch(entries, out, cfg, true);
        CHECK_FALSE(forced.sites[0].reused);
    }
    SUBCASE("load_corpus reads the successful sites") {
        auto corpus = load_corpus(out / "corpus.json");
        REQUIRE(corpus.sites.size() == 3);
        CHECK(corpus.sites[1].wii.str() == "2.65");
        CHECK(corpus.weight_totals == std::set<std::int64_t>{600});
        auto stats = aggregate(corpus.sites);
        CHECK(stats.n_sites == 3);
    }
    SUBCASE("load_corpus refuses a damaged corpus") {
        fs::remove(out / "reports" / "beta.json");
        CHECK_THROWS_AS(load_corpus(out / "corpus.json"), CorpusIndexInvalid);
        CHECK_THROWS_AS(load_corpus(tmp.path / "nothing.json"), CorpusIndexInvalid);
    }
}
