// wii-audit: snapshot, audit, batch and aggregate websites for the
// Web-Intelligence Index.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "wii/answers.hpp"
#include "wii/batch.hpp"
#include "wii/config.hpp"
#include "wii/corpus.hpp"
#include "wii/criteria.hpp"
#include "wii/fetch.hpp"
#include "wii/report.hpp"
#include "wii/snapshot.hpp"
#include "wii/text.hpp"
#include "wii/version.hpp"

namespace fs = std::filesystem;
using namespace wii;

namespace {

struct GlobalOptions {
    std::string config_path;
    std::string format;
    std::string weights_path;
    bool accept_heuristics = false;
    bool force = false;
};

AuditConfig effective_config(const GlobalOptions& g) {
    AuditConfig cfg;
    std::string path = g.config_path;
    if (path.empty()) {
        if (const char* env = std::getenv(kConfigEnvVar); env && *env) path = env;
    }
    if (!path.empty()) cfg = load_config(path);
    if (!g.weights_path.empty()) {
        if (!fs::is_regular_file(g.weights_path)) throw ConfigInvalid("weights file not found: " + g.weights_path);
        cfg.weight_table_path = g.weights_path;
    }
    if (!g.format.empty()) {
        auto f = parse_output_format(g.format);
        if (!f) throw ConfigInvalid("format must be json, csv or markdown");
        cfg.format = *f;
    }
    if (g.accept_heuristics) cfg.accept_heuristics = true;
    return cfg;
}

int cmd_fetch(const GlobalOptions& g, const std::string& url, const std::string& out, std::optional<std::size_t> max_resources,
              std::optional<int> max_depth, std::optional<int> delay_ms, bool ignore_robots) {
    auto cfg = effective_config(g);
    if (max_resources) cfg.fetch.max_resources = *max_resources;
    if (max_depth) cfg.fetch.max_depth = *max_depth;
    if (delay_ms) cfg.fetch.delay_ms = *delay_ms;
    if (ignore_robots) cfg.fetch.respect_robots = false;
    if (fs::exists(out) && !g.force && !(fs::is_directory(out) && fs::is_empty(out))) {
        std::cerr << "error: " << out << " exists (use --force to overwrite)\n";
        return 1;
    }
    auto transport = make_http_transport();
    auto snapshot = fetch_site(url, cfg.fetch, *transport);
    if (g.force && fs::exists(out)) fs::remove_all(out);
    store_snapshot(snapshot, out);
    std::cout << "stored " << snapshot.resources.size() << " resource(s) from " << snapshot.root_url << " in " << out
              << (snapshot.truncated ? " (truncated)" : "") << "\n";
    return 0;
}

int cmd_audit(const GlobalOptions& g, const std::string& snapshot_path, const std::string& answers_path,
              const std::string& out) {
    auto cfg = effective_config(g);
    auto weights = resolve_weights(cfg);
    auto snapshot = load_snapshot(snapshot_path);
    ManualAnswerFile answers;
    if (!answers_path.empty()) answers = load_answers(answers_path);
    auto report = audit_snapshot(snapshot, answers, cfg, weights);
    auto text = render_report(report, cfg.format);
    if (out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
    } else {
        write_file_atomic(out, text);
    }
    std::cout << "WII " << report.assessment.wii.str() << "  class " << to_string(report.assessment.wii_class) << "\n";
    return 0;
}

int cmd_batch(const GlobalOptions& g, const std::string& manifest, const std::string& out, std::optional<int> jobs) {
    auto cfg = effective_config(g);
    if (jobs) {
        if (*jobs < 1) throw ConfigInvalid("jobs must be positive");
        cfg.jobs = *jobs;
    }
    auto entries = load_batch_manifest(manifest);
    auto result = run_batch(entries, out, cfg, g.force, [](const BatchSiteResult& r) {
        if (r.ok) {
            std::cerr << (r.reused ? "kept    " : "audited ") << r.entry.snapshot << " -> " << r.report_name << "  WII "
                      << r.assessment->wii.str() << "\n";
        } else {
            std::cerr << "FAILED  " << r.entry.snapshot << ": " << r.error << "\n";
        }
    });
    auto failed = result.failures();
    std::cout << result.sites.size() << " site(s): " << result.sites.size() - failed << " ok, " << failed
              << " failed; index " << (fs::path(out) / kCorpusIndexName).string() << "\n";
    return !result.sites.empty() && failed == result.sites.size() ? 1 : 0;
}

int cmd_aggregate(const GlobalOptions& g, const std::string& index, const std::string& out,
                  const std::string& threshold) {
    auto cfg = effective_config(g);
    auto corpus = load_corpus(index);
    std::int64_t total = corpus.weight_totals.empty() ? 600 : *corpus.weight_totals.rbegin();
    auto stats = aggregate(corpus.sites, total, WiiScore::parse(threshold));
    if (corpus.weight_totals.size() > 1) {
        stats.warnings.push_back("reports were scored with " + std::to_string(corpus.weight_totals.size()) +
                                 " different weight tables");
    }
    for (const auto& w : stats.warnings) std::cerr << "warning: " << w << "\n";

    switch (cfg.format) {
        case OutputFormat::Json: {
            auto text = canonical_dump(tables_to_json(stats));
            if (out.empty()) {
                std::cout << text;
            } else {
                fs::create_directories(out);
                write_file_atomic(fs::path(out) / "tables.json", text);
            }
            break;
        }
        case OutputFormat::Markdown: {
            auto text = render_tables_markdown(stats);
            if (out.empty()) {
                std::cout << text;
            } else {
                fs::create_directories(out);
                write_file_atomic(fs::path(out) / "tables.md", text);
            }
            break;
        }
        case OutputFormat::Csv: {
            auto files = render_tables_csv(stats);
            if (out.empty()) {
                for (const auto& [name, text] : files) std::cout << "# " << name << "\n" << text << "\n";
            } else {
                fs::create_directories(out);
                for (const auto& [name, text] : files) write_file_atomic(fs::path(out) / name, text);
            }
            break;
        }
    }
    return 0;
}

int cmd_weights_validate(const std::string& path) {
    auto table = load_weight_table(path);
    auto v = validate_weights(table);
    for (const auto& f : v.findings) {
        std::cout << (f.severity == WeightFinding::Severity::Error ? "error: " : "warning: ") << f.message << "\n";
    }
    std::cout << "total " << v.total << " centiweights (" << WiiScore(v.total).str() << ")  "
              << (v.valid ? "valid" : "invalid") << "\n";
    return v.valid ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Web-Intelligence Index auditing toolkit", std::string(kToolName)};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--config", g.config_path,
                   std::string("JSON config file (default: $") + kConfigEnvVar + ")");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "markdown"}));
    app.add_option("--weights", g.weights_path, "Weight table file");
    app.add_flag("--accept-heuristics", g.accept_heuristics, "Count advisory C7 signals without manual confirmation");
    app.add_flag("--force", g.force, "Overwrite existing output / recompute existing reports");

    std::string url, out, snapshot, answers, manifest, index, weights_file, threshold = "4.00";
    std::optional<std::size_t> max_resources;
    std::optional<int> max_depth, delay_ms, jobs;
    bool ignore_robots = false;

    auto* fetch = app.add_subcommand("fetch", "Capture a site into a snapshot");
    fetch->add_option("url", url, "Absolute http(s) URL")->required();
    fetch->add_option("out", out, "Snapshot directory, or a file ending in .wiisnap")->required();
    fetch->add_option("--max-resources", max_resources, "Resource limit (default 50)");
    fetch->add_option("--max-depth", max_depth, "Hyperlink depth (default 2)");
    fetch->add_option("--delay-ms", delay_ms, "Per-host delay between requests (default 1000)");
    fetch->add_flag("--ignore-robots", ignore_robots, "Do not honour robots.txt");

    auto* audit = app.add_subcommand("audit", "Audit one snapshot");
    audit->add_option("snapshot", snapshot, "Snapshot locator")->required();
    audit->add_option("answers", answers, "Assessor answer file");
    audit->add_option("--out", out, "Write the report here instead of standard output");

    auto* batch = app.add_subcommand("batch", "Audit every site listed in a manifest");
    batch->add_option("manifest", manifest, "Lines of `<snapshot> [<answers>]`")->required();
    batch->add_option("--out", out, "Output directory")->required();
    batch->add_option("--jobs", jobs, "Sites audited in parallel");

    auto* agg = app.add_subcommand("aggregate", "Compute the corpus tables");
    agg->add_option("index", index, "corpus.json written by batch")->required();
    agg->add_option("--out", out, "Output directory (default: standard output)");
    agg->add_option("--threshold", threshold, "Listing threshold for top sites");

    auto* weights = app.add_subcommand("weights", "Weight table utilities");
    weights->require_subcommand(1);
    auto* validate = weights->add_subcommand("validate", "Check a weight table");
    validate->add_option("file", weights_file, "Weight table file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*fetch) return cmd_fetch(g, url, out, max_resources, max_depth, delay_ms, ignore_robots);
        if (*audit) return cmd_audit(g, snapshot, answers, out);
        if (*batch) return cmd_batch(g, manifest, out, jobs);
        if (*agg) return cmd_aggregate(g, index, out, threshold);
        if (*validate) return cmd_weights_validate(weights_file);
    } catch (const AnswerFileInvalid& e) {
        std::cerr << "error: AnswerFileInvalid: " << e.what() << "\n";
    } catch (const WeightTableInvalid& e) {
        std::cerr << "error: WeightTableInvalid: " << e.what() << "\n";
    } catch (const SiteMismatch& e) {
        std::cerr << "error: SiteMismatch: " << e.what() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return 1;
}
