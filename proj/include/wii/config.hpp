#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "wii/checkers.hpp"
#include "wii/criteria.hpp"
#include "wii/fetch.hpp"

namespace wii {

enum class OutputFormat { Json, Csv, Markdown };

std::string_view to_string(OutputFormat f);
std::optional<OutputFormat> parse_output_format(std::string_view text);

struct AuditConfig {
    std::optional<std::filesystem::path> weight_table_path;  // absent = built-in table
    FetchOptions fetch;
    MobileOkConfig mobile_ok;
    bool accept_heuristics = false;
    OutputFormat format = OutputFormat::Json;
    int jobs = 1;
};

class ConfigInvalid : public std::runtime_error {
public:
    explicit ConfigInvalid(const std::string& what) : std::runtime_error("ConfigInvalid: " + what) {}
};

inline constexpr const char* kConfigEnvVar = "WII_AUDIT_CONFIG";

/// Parses a JSON config document. Relative paths resolve against
/// `base_dir`. Unknown keys, non-positive thresholds and missing files are
/// rejected with ConfigInvalid.
AuditConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir = {});
AuditConfig load_config(const std::filesystem::path& path);

/// Full config as JSON, the inverse of parse_config.
nlohmann::json config_to_json(const AuditConfig& config);

/// Weight table named by the config, or the built-in one. A named table
/// with validation errors throws WeightTableInvalid.
WeightTable resolve_weights(const AuditConfig& config);

/// The settings that influence an assessment (weights, mobileOK settings,
/// heuristics policy) in canonical JSON form.
nlohmann::json assessment_settings(const AuditConfig& config, const WeightTable& weights);

/// SHA-256 of the canonical dump of assessment_settings.
std::string config_digest(const AuditConfig& config, const WeightTable& weights);

/// Canonical JSON text: sorted keys, two-space indent, trailing newline,
/// invalid UTF-8 replaced.
std::string canonical_dump(const nlohmann::json& j);

}  // namespace wii
