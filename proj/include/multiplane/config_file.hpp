#pragma once

// JSON configuration files: curves, singular points with clusters or a line
// arrangement, and an optional covering. Errors carry the file name and the
// JSON pointer of the offending entry.

#include "multiplane/covering.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace multiplane {

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& where, const std::string& what);
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

struct ConfigFile {
    std::shared_ptr<const Configuration> config;
    std::optional<CoveringSpec> covering;
};

/// Accepts a configuration document, or a report that embeds one under "input".
ConfigFile parse_config(const nlohmann::json& doc, const std::string& source = "<json>");
ConfigFile load_config(const std::string& path);

nlohmann::json config_to_json(const Configuration& config);
/// Configuration plus the "covering" entry.
nlohmann::json covering_to_json(const CoveringSpec& spec);

nlohmann::json fraction_to_json(const Fraction& f);
Fraction fraction_from_json(const nlohmann::json& j, const std::string& where);

}  // namespace multiplane
