#pragma once

#include <string_view>

namespace wii {

inline constexpr std::string_view kToolName = "wii-audit";
inline constexpr std::string_view kToolVersion = "0.1.0";

}  // namespace wii
