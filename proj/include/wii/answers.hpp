#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wii/criteria.hpp"

namespace wii {

struct ManualAnswer {
    CriterionId criterion = CriterionId::C1;
    std::uint8_t value = 0;
    std::string evidence;
};

/// An assessor's answers for one site. Only leaves appear, each at most once.
struct ManualAnswerFile {
    std::string site_url;
    std::string assessor;
    std::string assessed_on;  // YYYY-MM-DD
    std::vector<ManualAnswer> answers;

    const ManualAnswer* find(CriterionId id) const;
    bool empty() const { return answers.empty(); }
};

/// what() reads "line N, <field>: <reason>".
class AnswerFileInvalid : public std::runtime_error {
public:
    AnswerFileInvalid(std::size_t line, std::string field, std::string reason);
    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t line_;
    std::string field_;
    std::string reason_;
};

/// Grammar (one statement per line, `#` starts a comment line):
///
///     site <absolute http(s) URL>
///     assessor <identifier>
///     date <YYYY-MM-DD>
///     answer <leaf id> <0|1> "<evidence>"
///
/// The three header statements are required, appear once each and precede
/// every answer. Evidence is a double-quoted string; `\"` and `\\` escape.
ManualAnswerFile parse_answers(std::string_view text);

ManualAnswerFile load_answers(const std::filesystem::path& path);

/// Inverse of parse_answers.
std::string format_answers(const ManualAnswerFile& file);

}  // namespace wii
