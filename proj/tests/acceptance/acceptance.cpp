// Acceptance checks 1 to 9. Prints one PASS/FAIL line per criterion and
// exits nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <string>

#include "../support/corpus_oracle.hpp"
#include "../support/fixture_matrix.hpp"
#include "wii/batch.hpp"
#include "wii/config.hpp"
#include "wii/corpus.hpp"
#include "wii/criteria.hpp"
#include "wii/digest.hpp"
#include "wii/report.hpp"
#include "wii/snapshot.hpp"
#include "wii/text.hpp"

using namespace wii;
using namespace wii::testing;
namespace fs = std::filesystem;
using C = CriterionId;

namespace {

const fs::path kFixtures = WII_TEST_FIXTURES;

/// Empty string means the criterion holds; otherwise the reason it does not.
using Check = std::function<std::string()>;

std::vector<SiteAssessment> repeat(std::uint32_t mask, std::size_t n, const std::string& prefix) {
    std::vector<SiteAssessment> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(assessment_from_mask(prefix + std::to_string(i), mask));
    return out;
}

void append(std::vector<SiteAssessment>& to, std::vector<SiteAssessment> more) {
    for (auto& a : more) to.push_back(std::move(a));
}

std::int64_t brute_force_wii(std::uint32_t mask) {
    // Printed leaf weights in hundredths, summed term by term.
    const std::int64_t printed[12] = {5, 15, 150, 100, 3, 250, 7, 15, 25, 10, 15, 5};
    std::int64_t s = 0;
    for (int i = 0; i < 12; ++i) {
        if (mask & (1u << i)) s += printed[i];
    }
    return s;
}

// --- 1 ------------------------------------------------------------------------

std::string weight_closure() {
    const auto& w = WeightTable::default_table();
    if (w.total() != 600) return "default total is " + std::to_string(w.total());
    if (compute_wii(derive_parents(AssessmentVector::from_leaf_mask(0xFFF)), w).str() != "6.00") return "all-ones != 6.00";
    std::int64_t max_ready = -1;
    for (std::uint32_t m = 0; m < 4096; ++m) {
        auto v = derive_parents(AssessmentVector::from_leaf_mask(m));
        if (classify(v) == WiiClass::WIReady) max_ready = std::max(max_ready, compute_wii(v, w).centivalue());
    }
    if (max_ready != 100) return "max WI-ready score is " + std::to_string(max_ready) + " centiweights";
    return {};
}

// --- 2 ------------------------------------------------------------------------

std::string scoring_oracle() {
    const auto& w = WeightTable::default_table();
    for (std::uint32_t m = 0; m < 4096; ++m) {
        auto v = derive_parents(AssessmentVector::from_leaf_mask(m));
        if (compute_wii(v, w).centivalue() != brute_force_wii(m)) return "score differs for mask " + std::to_string(m);
        // presence rules: 3 or 5 present -> acquired; nothing -> none; else ready
        bool c3 = m & (leaf_bit(C::C3_1) | leaf_bit(C::C3_2));
        bool c5 = m & leaf_bit(C::C5);
        auto want = (c3 || c5) ? WiiClass::WIAcquired : m == 0 ? WiiClass::NoWI : WiiClass::WIReady;
        if (classify(v) != want) return "class differs for mask " + std::to_string(m);
    }
    return {};
}

// --- 3 ------------------------------------------------------------------------

std::string category_totals_fixture() {
    std::vector<SiteAssessment> corpus = repeat(mask_of({C::C5}), 61, "wi");
    append(corpus, repeat(mask_of({C::C2}), 569, "ready"));
    append(corpus, repeat(0, 26, "none"));
    auto totals = category_totals(corpus);
    std::vector<std::string> got;
    for (const auto& t : totals) got.push_back(t.stat.percent.str());
    if (got != std::vector<std::string>{"9.3", "86.7", "4.0"}) {
        return "percents " + got.at(0) + " / " + got.at(1) + " / " + got.at(2);
    }
    if (totals[0].stat.count != 61 || totals[1].stat.count != 569 || totals[2].stat.count != 26) return "counts";
    return {};
}

// --- 4 ------------------------------------------------------------------------

std::string histogram_fixture() {
    std::vector<SiteAssessment> corpus = repeat(0, 26, "n");
    append(corpus, repeat(mask_of({C::C2}), 569, "r"));                    // 0.15
    append(corpus, repeat(mask_of({C::C3_2, C::C2}), 46, "b1"));           // 1.15
    append(corpus, repeat(mask_of({C::C5}), 10, "b2"));                    // 2.50
    append(corpus, repeat(mask_of({C::C5, C::C3_2}), 1, "b3"));            // 3.50
    append(corpus, repeat(mask_of({C::C5, C::C3_1, C::C2}), 4, "b4"));     // 4.15
    auto h = wii_histogram(corpus);
    if (h.size() != 7) return "bucket count " + std::to_string(h.size());
    const std::size_t want_counts[7] = {26, 569, 46, 10, 1, 4, 0};
    const char* want_pct[7] = {nullptr, nullptr, "75.4", "16.4", "1.6", "6.6", "0.0"};
    for (std::size_t i = 0; i < 7; ++i) {
        if (h[i].count != want_counts[i]) return "bucket " + h[i].label + " count " + std::to_string(h[i].count);
        if (want_pct[i] == nullptr) {
            if (h[i].percent_of_wi_sites) return "bucket " + h[i].label + " has a percent";
        } else if (!h[i].percent_of_wi_sites || h[i].percent_of_wi_sites->str() != want_pct[i]) {
            return "bucket " + h[i].label + " percent";
        }
    }

    // boundary: 1.00 and 1.01 in adjacent buckets
    auto w = WeightTable::default_table();
    w.set(C::C3_2, 101);
    auto at100 = assessment_from_mask("a", mask_of({C::C3_2}));
    auto at101 = assessment_from_mask("b", mask_of({C::C3_2}), w);
    if (at100.wii.str() != "1.00" || at101.wii.str() != "1.01") return "boundary fixture scores";
    auto hb = wii_histogram({at100, at101});
    if (hb[1].label != "0.01 - 1.00" || hb[1].count != 1 || hb[2].label != "1.01 - 2.00" || hb[2].count != 1) {
        return "1.00 / 1.01 boundary";
    }
    return {};
}

// --- 5 ------------------------------------------------------------------------

std::string mapping_identity(const std::vector<CombinationRowStat>& rows, const std::vector<CategoryBreakdown>& b) {
    auto row = [&](int r) { return rows.at(static_cast<std::size_t>(r - 1)).stat.count; };
    const auto& wi = b.at(0);
    const auto& ready = b.at(1);
    const auto& none = b.at(2);
    if (wi.one_criterion_only != row(3) + row(5)) return "WI one-criterion";
    if (wi.several_without_wi != std::size_t{0}) return "WI several-without-WI";
    if (wi.wi_with_wi_ready != row(9)) return "WI with ready";
    if (wi.several_wi_without_wi_ready != row(8)) return "WI without ready";
    if (wi.total.count != row(3) + row(5) + row(8) + row(9)) return "WI total";
    if (ready.one_criterion_only != row(1) + row(2) + row(4) + row(6) + row(7)) return "ready one-criterion";
    if (ready.several_without_wi != row(10)) return "ready several";
    if (ready.wi_with_wi_ready || ready.several_wi_without_wi_ready) return "ready N/A cells";
    if (ready.total.count != row(1) + row(2) + row(4) + row(6) + row(7) + row(10)) return "ready total";
    if (none.one_criterion_only || none.several_without_wi || none.wi_with_wi_ready || none.several_wi_without_wi_ready) {
        return "no-WI N/A cells";
    }
    if (none.total.count != row(11)) return "no-WI total";
    return {};
}

std::string partition_property() {
    std::mt19937 rng(20150410);
    std::uniform_int_distribution<std::size_t> size(1, 200);
    std::uniform_int_distribution<std::uint32_t> mask(0, 4095);
    std::bernoulli_distribution sparse(0.3);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<SiteAssessment> corpus;
        auto n = size(rng);
        bool thin = sparse(rng);  // mostly single-criterion sites, to populate every row
        for (std::size_t i = 0; i < n; ++i) {
            std::uint32_t m = mask(rng);
            if (thin) m &= mask(rng) & mask(rng) & mask(rng);
            corpus.push_back(assessment_from_mask("s" + std::to_string(i), m));
        }
        auto rows = combination_table(corpus);
        std::size_t sum = 0;
        for (const auto& r : rows) sum += r.stat.count;
        if (rows.size() != 11 || sum != n) return "rows do not partition trial " + std::to_string(trial);
        for (const auto& a : corpus) {
            if (static_cast<int>(combination_row(a.vector)) != naive_row(a.vector)) return "row assignment differs";
        }
        auto why = mapping_identity(rows, category_breakdown(rows, category_totals(corpus)));
        if (!why.empty()) return why + " in trial " + std::to_string(trial);
    }
    return {};
}

// --- 6 ------------------------------------------------------------------------

std::string checker_fixtures() {
    auto dir = kFixtures / "checkers";
    auto cases = load_fixture_cases(dir);
    std::map<std::string, std::map<std::string, int>> tally;
    for (const auto& c : cases) {
        auto outcome = run_fixture_case(dir, c);
        if (!outcome.ok) return c.kind + "/" + c.file + ": " + outcome.why;
        ++tally[c.kind][c.verdict];
    }
    for (auto kind : {"rss", "atom", "rdf"}) {
        if (tally[kind]["valid"] < 3 || tally[kind]["invalid"] < 3) return std::string("too few fixtures for ") + kind;
    }
    for (auto test : kAllMobileOkTests) {
        auto name = std::string(to_string(test));
        if (tally[name]["pass"] < 1 || tally[name]["fail"] < 1) return "no pass/fail pair for " + name;
    }
    return {};
}

// --- 7 ------------------------------------------------------------------------

struct ScratchDir {
    fs::path path;
    explicit ScratchDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("wii-acceptance-" + tag + "-" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~ScratchDir() { fs::remove_all(path); }
};

std::string offline_demo_corpus() {
    auto demo = kFixtures / "demo_corpus";
    ScratchDir out("demo");
    AuditConfig cfg;
    cfg.jobs = 4;
    auto batch = run_batch(load_batch_manifest(demo / "sites.txt"), out.path, cfg, false);
    if (batch.sites.size() != 12 || batch.failures() != 0) return "batch did not audit 12 sites";
    auto corpus = load_corpus(out.path / kCorpusIndexName);
    auto stats = aggregate(corpus.sites);

    if (canonical_dump(tables_to_json(stats)) != read_file(demo / "golden" / "tables.json")) {
        return "tables.json differs from the golden copy";
    }
    if (render_tables_markdown(stats) != read_file(demo / "golden" / "tables.md")) return "tables.md differs";
    for (const auto& [name, text] : render_tables_csv(stats)) {
        if (text != read_file(demo / "golden" / name)) return name + " differs";
    }
    if (read_file(out.path / kCorpusCsvName) != read_file(demo / "golden" / "corpus.csv")) return "corpus.csv differs";

    auto recount = compare_with_naive(corpus.sites, stats);
    if (!recount.empty()) return "naive recount disagrees on " + recount;
    std::size_t rows = 0, cats = 0, bins = 0;
    for (const auto& r : stats.combinations) rows += r.stat.count;
    for (const auto& c : stats.categories) cats += c.stat.count;
    for (const auto& h : stats.histogram) bins += h.count;
    if (rows != 12 || cats != 12 || bins != 12) return "partition sums are not 12";
    return {};
}

// --- 8 ------------------------------------------------------------------------

SiteSnapshot integrity_snapshot() {
    SiteBuilder b("http://www.example.gov.lk/", "<html><title>Home</title><a href=\"/a.html\">a</a></html>");
    b.add("http://www.example.gov.lk/a.html", DiscoveredVia::Hyperlink, "text/html", "<p>page a</p>");
    b.add("http://www.example.gov.lk/logo.png", DiscoveredVia::EmbeddedResource, "image/png",
          std::string("\x89PNG\r\n\x1a\n\0\0\0\rIHDR", 16));
    auto s = b.build();
    s.fetched_at = "2015-04-10T09:00:00Z";
    s.seal();
    return s;
}

std::string expect_corrupt(const fs::path& locator) {
    try {
        load_snapshot(locator);
    } catch (const SnapshotCorrupt&) {
        return {};
    } catch (const std::exception& e) {
        return std::string("wrong error: ") + e.what();
    }
    return "flipped byte in " + locator.string() + " went unnoticed";
}

std::string snapshot_integrity() {
    auto snap = integrity_snapshot();
    ScratchDir tmp("snap");
    for (auto name : {"site", "site.wiisnap"}) {
        auto loc = tmp.path / name;
        store_snapshot(snap, loc);
        auto back = load_snapshot(loc);
        if (!(back == snap)) return std::string("round trip changed the snapshot (") + name + ")";
        for (const auto& r : back.resources) {
            if (sha256_hex(back.body(r)) != r.body_digest) return "digest mismatch after load";
        }
    }

    // one flipped bit in one body, directory form
    auto dir = tmp.path / "site";
    for (const auto& e : fs::directory_iterator(dir / "bodies")) {
        auto copy = tmp.path / "flipped";
        fs::remove_all(copy);
        fs::copy(dir, copy, fs::copy_options::recursive);
        auto target = copy / "bodies" / e.path().filename();
        auto bytes = read_file(target);
        if (bytes.empty()) continue;
        bytes[bytes.size() / 2] ^= 0x01;
        write_file_atomic(target, bytes);
        if (auto why = expect_corrupt(copy); !why.empty()) return why;
    }

    // archive form: flip a byte inside each stored body
    auto archive = read_file(tmp.path / "site.wiisnap");
    for (const auto& [digest, body] : snap.bodies()) {
        if (body.empty()) continue;
        auto at = archive.find(body);
        if (at == std::string::npos) return "body not found in archive";
        auto flipped = archive;
        flipped[at + body.size() / 2] ^= 0x01;
        auto loc = tmp.path / "flipped.wiisnap";
        write_file_atomic(loc, flipped);
        if (auto why = expect_corrupt(loc); !why.empty()) return why;
    }
    return {};
}

// --- 9 ------------------------------------------------------------------------

std::string monotonicity() {
    const auto& w = WeightTable::default_table();
    std::mt19937 rng(42);
    std::uniform_int_distribution<std::uint32_t> mask(0, 4095);
    std::uniform_int_distribution<std::size_t> leaf(0, kLeafCount - 1);
    int flips = 0;
    for (int i = 0; i < 10000; ++i) {
        auto m = mask(rng);
        auto l = leaf(rng);
        auto before = compute_wii(derive_parents(AssessmentVector::from_leaf_mask(m)), w);
        auto after = compute_wii(derive_parents(AssessmentVector::from_leaf_mask(m | (1u << l))), w);
        if (after.centivalue() < before.centivalue()) {
            return "flipping " + std::string(to_string(kLeafCriteria[l])) + " on mask " + std::to_string(m) +
                   " lowered the score";
        }
        flips += !(m & (1u << l));
    }
    if (flips < 4000) return "too few 0->1 flips sampled";
    return {};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_seconds;
        Check run;
    };
    const std::vector<Criterion> criteria = {
        {1, "weight-table closure", 1, weight_closure},
        {2, "exhaustive scoring oracle", 1, scoring_oracle},
        {3, "category totals fixture", 1, category_totals_fixture},
        {4, "histogram fixture", 1, histogram_fixture},
        {5, "combination partition property", 10, partition_property},
        {6, "checker fixture suite", 5, checker_fixtures},
        {7, "offline demo corpus", 10, offline_demo_corpus},
        {8, "snapshot integrity", 1, snapshot_integrity},
        {9, "monotonicity property", 5, monotonicity},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string why;
        try {
            why = c.run();
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (why.empty() && secs > c.limit_seconds) why = "over the time limit";
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.3fs / %.0fs", secs, c.limit_seconds);
        std::cout << (why.empty() ? "PASS" : "FAIL") << "  " << c.id << "  " << c.name << "  (" << timing << ")";
        if (!why.empty()) std::cout << "  " << why;
        std::cout << "\n";
        failed += !why.empty();
    }
    return failed == 0 ? 0 : 1;
}
