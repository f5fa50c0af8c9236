#pragma once

#include <string>

#include "wncs/simulator.hpp"

namespace wncs {

// Flat `key = value` config file ('#' starts a comment). Every key is
// optional; an empty file yields the defaults baked into SimConfig.
// Unknown keys and out-of-range values raise ConfigError with an itemized
// message. Key list and semantics are documented in the README.
SimConfig parse_config(const std::string& path);
SimConfig parse_config_text(const std::string& text,
                            const std::string& origin);

// The resolved configuration rendered back as `key = value` lines (the
// run-manifest format; parse_config_text(render) round-trips).
std::string render_config(const SimConfig& config);

}  // namespace wncs
