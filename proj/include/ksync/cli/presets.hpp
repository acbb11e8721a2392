#pragma once

#include <string>
#include <vector>

#include "ksync/cli/config.hpp"

namespace ksync::cli {

/// Names of the built-in experiment presets, in listing order.
[[nodiscard]] std::vector<std::string> preset_names();

/// Fully resolved configuration of a named preset. Throws ConfigError with
/// the list of valid names for an unknown preset.
[[nodiscard]] RunConfig make_preset(const std::string& name);

/// Human-readable table of all presets with their parameter provenance.
[[nodiscard]] std::string preset_listing();

}  // namespace ksync::cli
