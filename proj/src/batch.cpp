#include "wii/batch.hpp"

#include <atomic>
#include <map>
#include <mutex>
#include <thread>

#include "wii/answers.hpp"
#include "wii/report.hpp"
#include "wii/snapshot.hpp"
#include "wii/text.hpp"
#include "wii/version.hpp"

namespace wii {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string report_stem(const fs::path& snapshot) {
    auto p = snapshot;
    if (!p.has_filename()) p = p.parent_path();  // trailing slash
    auto stem = p.extension() == kArchiveExtension ? p.stem().string() : p.filename().string();
    return stem.empty() ? "site" : stem;
}

std::vector<std::string> unique_names(const std::vector<BatchEntry>& entries) {
    std::map<std::string, int> used;
    std::vector<std::string> out;
    for (const auto& e : entries) {
        auto stem = report_stem(e.snapshot_path);
        auto n = ++used[stem];
        out.push_back(n == 1 ? stem : stem + "-" + std::to_string(n));
    }
    return out;
}

std::optional<SiteAssessment> try_reuse(const fs::path& report_path) {
    if (!fs::is_regular_file(report_path)) return std::nullopt;
    try {
        return assessment_from_report(json::parse(read_file(report_path)));
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void audit_one(BatchSiteResult& r, const fs::path& report_path, const AuditConfig& config,
               const WeightTable& weights, bool force) {
    if (!force) {
        if (auto reused = try_reuse(report_path)) {
            r.ok = true;
            r.reused = true;
            r.assessment = std::move(reused);
            return;
        }
    }
    try {
        auto snapshot = load_snapshot(r.entry.snapshot_path);
        ManualAnswerFile answers;
        if (r.entry.answers_path) answers = load_answers(*r.entry.answers_path);
        auto report = audit_snapshot(snapshot, answers, config, weights);
        write_file_atomic(report_path, render_report(report, OutputFormat::Json));
        r.ok = true;
        r.assessment = report.assessment;
    } catch (const std::exception& e) {
        r.ok = false;
        r.error = e.what();
    }
}

}  // namespace

std::size_t BatchResult::failures() const {
    std::size_t n = 0;
    for (const auto& s : sites) n += !s.ok;
    return n;
}

std::vector<BatchEntry> parse_batch_manifest(std::string_view text, const fs::path& base_dir) {
    std::vector<BatchEntry> out;
    std::size_t line_no = 0;
    for (auto raw : split_lines(text)) {
        ++line_no;
        auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        auto fields = split_ws(line);
        if (fields.size() > 2) throw ManifestInvalid(line_no, "expected `<snapshot> [<answers>]`");
        BatchEntry e;
        e.line = line_no;
        e.snapshot = std::string(fields[0]);
        e.snapshot_path = fs::path(e.snapshot).is_absolute() ? fs::path(e.snapshot) : base_dir / e.snapshot;
        if (fields.size() == 2) {
            e.answers = std::string(fields[1]);
            e.answers_path = fs::path(*e.answers).is_absolute() ? fs::path(*e.answers) : base_dir / *e.answers;
        }
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<BatchEntry> load_batch_manifest(const fs::path& path) {
    if (!fs::is_regular_file(path)) throw ManifestInvalid(0, "no manifest at " + path.string());
    return parse_batch_manifest(read_file(path), path.parent_path());
}

BatchResult run_batch(const std::vector<BatchEntry>& entries, const fs::path& out_dir, const AuditConfig& config,
                      bool force, const std::function<void(const BatchSiteResult&)>& progress) {
    auto weights = resolve_weights(config);
    fs::create_directories(out_dir / "reports");
    auto names = unique_names(entries);

    BatchResult result;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        BatchSiteResult r;
        r.entry = entries[i];
        r.report_name = "reports/" + names[i] + ".json";
        result.sites.push_back(std::move(r));
    }

    std::atomic<std::size_t> next{0};
    std::mutex progress_mutex;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < result.sites.size();) {
            auto& r = result.sites[i];
            audit_one(r, out_dir / r.report_name, config, weights, force);
            if (progress) {
                std::lock_guard lock(progress_mutex);
                progress(r);
            }
        }
    };
    auto jobs = static_cast<std::size_t>(std::max(1, config.jobs));
    jobs = std::min(jobs, std::max<std::size_t>(1, result.sites.size()));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    json sites = json::array();
    std::string csv = corpus_csv_header();
    for (const auto& r : result.sites) {
        json s{{"snapshot", r.entry.snapshot},
               {"answers", r.entry.answers ? json(*r.entry.answers) : json(nullptr)},
               {"status", r.ok ? "ok" : "failed"}};
        if (r.ok) {
            s["report"] = r.report_name;
            s["site_url"] = r.assessment->site_url;
            s["wii"] = r.assessment->wii.str();
            s["class"] = std::string(to_string(r.assessment->wii_class));
            csv += corpus_csv_row(*r.assessment);
        } else {
            s["error"] = r.error;
        }
        sites.push_back(std::move(s));
    }
    json index{{"tool", {{"name", std::string(kToolName)}, {"version", std::string(kToolVersion)}}},
               {"config_digest", config_digest(config, weights)},
               {"sites", sites},
               {"failures", result.failures()}};
    write_file_atomic(out_dir / kCorpusIndexName, canonical_dump(index));
    write_file_atomic(out_dir / kCorpusCsvName, csv);
    return result;
}

LoadedCorpus load_corpus(const fs::path& index_path) {
    if (!fs::is_regular_file(index_path)) throw CorpusIndexInvalid("no corpus index at " + index_path.string());
    json index;
    try {
        index = json::parse(read_file(index_path));
    } catch (const json::exception& e) {
        throw CorpusIndexInvalid(e.what());
    }
    if (!index.is_object() || !index.contains("sites") || !index["sites"].is_array()) {
        throw CorpusIndexInvalid("missing sites array");
    }
    LoadedCorpus out;
    for (const auto& s : index["sites"]) {
        if (s.value("status", "") != "ok") continue;
        if (!s.contains("report") || !s["report"].is_string()) throw CorpusIndexInvalid("site without report path");
        auto path = index_path.parent_path() / s["report"].get<std::string>();
        if (!fs::is_regular_file(path)) throw CorpusIndexInvalid("missing report " + path.string());
        json report;
        try {
            report = json::parse(read_file(path));
        } catch (const json::exception& e) {
            throw ReportInvalid(path.string() + ": " + e.what());
        }
        out.sites.push_back(assessment_from_report(report));
        std::int64_t total = 0;
        for (const auto& [_, w] : report["settings"]["weights"].items()) total += w.get<std::int64_t>();
        out.weight_totals.insert(total);
    }
    return out;
}

}  // namespace wii
