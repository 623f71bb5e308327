#include "wii/answers.hpp"

#include <cctype>

#include "wii/text.hpp"
#include "wii/url.hpp"

namespace wii {

namespace {

bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    for (unsigned char c : s) {
        if (!std::isalnum(c) && c != '.' && c != '_' && c != '-' && c != '@') return false;
    }
    return true;
}

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

bool is_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    int y = std::stoi(std::string(s.substr(0, 4)));
    int m = std::stoi(std::string(s.substr(5, 2)));
    int d = std::stoi(std::string(s.substr(8, 2)));
    static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m < 1 || m > 12 || d < 1) return false;
    int limit = kDays[m - 1] + (m == 2 && is_leap(y) ? 1 : 0);
    return d <= limit;
}

/// Splits off the first blank-delimited word.
std::pair<std::string_view, std::string_view> take_word(std::string_view s) {
    s = trim(s);
    auto end = s.find_first_of(" \t");
    if (end == std::string_view::npos) return {s, {}};
    return {s.substr(0, end), trim(s.substr(end))};
}

std::string parse_quoted(std::string_view s, std::size_t line) {
    if (s.empty() || s.front() != '"') throw AnswerFileInvalid(line, "evidence", "evidence must be a quoted string");
    std::string out;
    std::size_t i = 1;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c == '\\') {
            if (i + 1 >= s.size() || (s[i + 1] != '"' && s[i + 1] != '\\')) {
                throw AnswerFileInvalid(line, "evidence", "unknown escape in evidence");
            }
            out += s[++i];
        } else if (c == '"') {
            break;
        } else {
            out += c;
        }
    }
    if (i >= s.size()) throw AnswerFileInvalid(line, "evidence", "unterminated evidence string");
    if (!trim(s.substr(i + 1)).empty()) throw AnswerFileInvalid(line, "evidence", "text after evidence string");
    return out;
}

std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

const ManualAnswer* ManualAnswerFile::find(CriterionId id) const {
    for (const auto& a : answers) {
        if (a.criterion == id) return &a;
    }
    return nullptr;
}

AnswerFileInvalid::AnswerFileInvalid(std::size_t line, std::string field, std::string reason)
    : std::runtime_error("line " + std::to_string(line) + ", " + field + ": " + reason),
      line_(line),
      field_(std::move(field)),
      reason_(std::move(reason)) {}

ManualAnswerFile parse_answers(std::string_view text) {
    if (!is_valid_utf8(text)) {
        auto bad = *find_invalid_utf8(text);
        std::size_t line = 1;
        for (std::size_t i = 0; i < bad; ++i) line += text[i] == '\n';
        throw AnswerFileInvalid(line, "encoding", "not valid UTF-8");
    }
    ManualAnswerFile out;
    bool have_site = false, have_assessor = false, have_date = false;
    std::size_t line_no = 0;
    for (auto raw : split_lines(text)) {
        ++line_no;
        auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        auto [keyword, rest] = take_word(line);

        auto header = [&, rest = rest](bool& seen, std::string_view field) {
            if (seen) throw AnswerFileInvalid(line_no, std::string(field), "duplicate " + std::string(field));
            if (!out.answers.empty()) {
                throw AnswerFileInvalid(line_no, std::string(field), std::string(field) + " must precede answers");
            }
            if (rest.empty()) throw AnswerFileInvalid(line_no, std::string(field), "missing value");
            seen = true;
        };

        if (keyword == "site") {
            header(have_site, "site");
            auto u = parse_url(rest);
            if (!u || !u->absolute() || (u->scheme != "http" && u->scheme != "https") || u->host.empty() ||
                rest.find_first_of(" \t") != std::string_view::npos) {
                throw AnswerFileInvalid(line_no, "site", "site must be an absolute http(s) URL");
            }
            out.site_url = std::string(rest);
        } else if (keyword == "assessor") {
            header(have_assessor, "assessor");
            if (!is_identifier(rest)) {
                throw AnswerFileInvalid(line_no, "assessor", "assessor must be an identifier [A-Za-z0-9._@-]+");
            }
            out.assessor = std::string(rest);
        } else if (keyword == "date") {
            header(have_date, "date");
            if (!is_date(rest)) throw AnswerFileInvalid(line_no, "date", "date must be a valid YYYY-MM-DD");
            out.assessed_on = std::string(rest);
        } else if (keyword == "answer") {
            if (!have_site || !have_assessor || !have_date) {
                throw AnswerFileInvalid(line_no, "answer", "site, assessor and date must precede answers");
            }
            auto [id_text, after_id] = take_word(rest);
            auto [value_text, evidence_text] = take_word(after_id);
            auto id = parse_criterion(id_text);
            if (!id) throw AnswerFileInvalid(line_no, "criterion", "unknown criterion " + std::string(id_text));
            if (!is_leaf(*id)) {
                throw AnswerFileInvalid(line_no, "criterion",
                                        std::string(id_text) + " is a parent; answer its sub-criteria");
            }
            if (value_text != "0" && value_text != "1") {
                throw AnswerFileInvalid(line_no, "value", "value must be 0 or 1");
            }
            auto evidence = parse_quoted(evidence_text, line_no);
            if (out.find(*id)) throw AnswerFileInvalid(line_no, "criterion", "duplicate criterion");
            out.answers.push_back({*id, static_cast<std::uint8_t>(value_text == "1"), std::move(evidence)});
        } else {
            throw AnswerFileInvalid(line_no, "statement", "unknown statement " + std::string(keyword));
        }
    }
    if (!have_site) throw AnswerFileInvalid(line_no, "site", "missing site");
    if (!have_assessor) throw AnswerFileInvalid(line_no, "assessor", "missing assessor");
    if (!have_date) throw AnswerFileInvalid(line_no, "date", "missing date");
    return out;
}

ManualAnswerFile load_answers(const std::filesystem::path& path) { return parse_answers(read_file(path)); }

std::string format_answers(const ManualAnswerFile& file) {
    std::string out = "site " + file.site_url + "\nassessor " + file.assessor + "\ndate " + file.assessed_on + "\n";
    for (const auto& a : file.answers) {
        out += "answer " + std::string(to_string(a.criterion)) + " " + (a.value ? "1" : "0") + " " +
               quote(a.evidence) + "\n";
    }
    return out;
}

}  // namespace wii
