// wii-pack: builds a snapshot from hand-written files, for fixtures and demos.
//
// The source directory holds a `site.txt` description and the body files it
// names:
//
//   requested https://www.example.gov.lk/
//   root https://www.example.gov.lk/          (optional)
//   fetched_at 2015-04-10T09:00:00Z
//   redirect <from> <status> <to>             (any number)
//   resource <url> <status> <discovered-via> <body-file|->
//   header <Name>: <value>                    (applies to the last resource)
//
// Media type is taken from the resource's Content-Type header.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "wii/snapshot.hpp"
#include "wii/text.hpp"

namespace fs = std::filesystem;
using namespace wii;

namespace {

struct PackError : std::runtime_error {
    PackError(std::size_t line, const std::string& why)
        : std::runtime_error("site.txt line " + std::to_string(line) + ": " + why) {}
};

struct Pending {
    ResourceRecord record;
    std::string body;
};

SiteSnapshot pack(const fs::path& dir) {
    auto text = read_file(dir / "site.txt");
    SiteSnapshot snap;
    std::vector<Pending> resources;
    std::size_t line_no = 0;
    for (auto raw : split_lines(text)) {
        ++line_no;
        auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        auto sp = line.find(' ');
        auto key = line.substr(0, sp);
        auto rest = sp == std::string_view::npos ? std::string_view{} : trim(line.substr(sp + 1));
        auto fields = split_ws(rest);
        if (key == "requested" && fields.size() == 1) {
            snap.requested_url = std::string(fields[0]);
        } else if (key == "root" && fields.size() == 1) {
            snap.root_url = std::string(fields[0]);
        } else if (key == "fetched_at" && fields.size() == 1) {
            snap.fetched_at = std::string(fields[0]);
        } else if (key == "truncated") {
            snap.truncated = true;
        } else if (key == "redirect" && fields.size() == 3) {
            snap.redirects.push_back({std::string(fields[0]), std::stoi(std::string(fields[1])), std::string(fields[2])});
        } else if (key == "resource" && fields.size() == 4) {
            Pending p;
            p.record.url = std::string(fields[0]);
            p.record.status = std::stoi(std::string(fields[1]));
            auto via = parse_discovered_via(fields[2]);
            if (!via) throw PackError(line_no, "unknown discovered-via " + std::string(fields[2]));
            p.record.discovered_via = *via;
            if (fields[3] != "-") {
                auto path = dir / std::string(fields[3]);
                if (!fs::is_regular_file(path)) throw PackError(line_no, "no body file " + path.string());
                p.body = read_file(path);
            }
            resources.push_back(std::move(p));
        } else if (key == "header") {
            if (resources.empty()) throw PackError(line_no, "header before any resource");
            auto colon = rest.find(':');
            if (colon == std::string_view::npos) throw PackError(line_no, "expected `header Name: value`");
            Header h{std::string(trim(rest.substr(0, colon))), std::string(trim(rest.substr(colon + 1)))};
            auto& rec = resources.back().record;
            if (iequals(h.name, "Content-Type")) rec.media_type = h.value;
            rec.headers.push_back(std::move(h));
        } else {
            throw PackError(line_no, "cannot parse `" + std::string(line) + "`");
        }
    }
    if (snap.requested_url.empty()) throw PackError(line_no, "missing `requested`");
    if (snap.root_url.empty()) snap.root_url = snap.requested_url;
    if (resources.empty()) throw PackError(line_no, "no resources");
    for (auto& p : resources) snap.add(std::move(p.record), std::move(p.body));
    snap.seal();
    return snap;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Build a snapshot from a site.txt description", "wii-pack"};
    std::string src, out;
    bool force = false;
    app.add_option("source", src, "Directory containing site.txt")->required()->check(CLI::ExistingDirectory);
    app.add_option("out", out, "Snapshot directory, or a file ending in .wiisnap")->required();
    app.add_flag("--force", force, "Replace an existing snapshot");
    CLI11_PARSE(app, argc, argv);
    try {
        auto snap = pack(src);
        if (fs::exists(out)) {
            if (!force) throw std::runtime_error(out + " exists (use --force to overwrite)");
            fs::remove_all(out);
        }
        store_snapshot(snap, out);
        std::cout << out << ": " << snap.resources.size() << " resource(s)\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
