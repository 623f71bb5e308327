#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wii {

/// Splits on LF, dropping a trailing CR from each line. A final empty line
/// after the last LF is not returned.
std::vector<std::string_view> split_lines(std::string_view text);

/// Splits on runs of ASCII blanks (space, tab).
std::vector<std::string_view> split_ws(std::string_view text);

std::vector<std::string_view> split(std::string_view text, char sep);

std::string_view trim(std::string_view s);

/// Removes everything from the first `#` on.
std::string_view strip_comment(std::string_view s);

std::string to_lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b);
bool istarts_with(std::string_view s, std::string_view prefix);
bool iends_with(std::string_view s, std::string_view suffix);
bool icontains(std::string_view haystack, std::string_view needle);

bool is_valid_utf8(std::string_view bytes);

/// Offset of the first byte that starts an invalid UTF-8 sequence.
std::optional<std::size_t> find_invalid_utf8(std::string_view bytes);

std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temp file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

}  // namespace wii
