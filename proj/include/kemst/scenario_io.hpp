#pragma once

#include <map>
#include <string>
#include <vector>

#include "kemst/trajectory.hpp"

namespace kemst {

inline constexpr int kScenarioFormatVersion = 1;

// Names accepted by make_generated, in CLI order.
const std::vector<std::string>& generator_names();

// Builds a scenario from a generator name and numeric parameters. Missing
// parameters take the generator defaults; unknown names or parameters throw
// ParameterError.
KineticScenario make_generated(const std::string& name, const std::map<std::string, double>& params);

// JSON text with format_version, label, n, d, T, k, K, morph_mode, markers,
// the generator (if any) and kind-tagged per-point trajectories.
std::string scenario_to_json(const KineticScenario& sc);

// Accepts either explicit "points" or a "generator" object; explicit k, K,
// morph_mode, label and markers override generator values. Throws
// ParameterError on malformed input or an unsupported format_version.
KineticScenario scenario_from_json(const std::string& text);

KineticScenario load_scenario(const std::string& path);
void save_scenario(const KineticScenario& sc, const std::string& path);

}  // namespace kemst
