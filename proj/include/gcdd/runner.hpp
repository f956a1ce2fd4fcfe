#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gcdd/config.hpp"
#include "gcdd/dynamics.hpp"
#include "gcdd/gates.hpp"

namespace gcdd {

// Everything a mode produces, assembled in memory before any file is touched
// so failures leave no partial outputs and determinism can be tested on the
// rendered bytes.
struct Outputs {
    std::vector<std::pair<std::string, std::string>> files;  // name -> contents
    std::string stdout_text;
    int exit_code = 0;
};

Outputs execute(const RunConfig& cfg);

// Writes all files into dir (created if needed); removes everything it wrote
// if any write fails.
void write_outputs(const Outputs& outputs, const std::string& dir);

// 12-significant-digit scientific notation used by every CSV emitter.
std::string format_sci(double v);

NamedGate gate_from_config(const RunConfig& cfg);
QuditFrame frame_from_config(const RunConfig& cfg, int n);
Scenario scenario_from_config(const RunConfig& cfg, std::optional<int> n);
SimulationGrid resolve_grid(const RunConfig& cfg, const std::vector<int>& n_values);

std::string render_manifest(const RunConfig& cfg, std::optional<SimulationGrid> grid);

}  // namespace gcdd
