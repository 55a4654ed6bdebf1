#pragma once

#include "vortexsim/adiabatic.hpp"
#include "vortexsim/mode_engine.hpp"
#include "vortexsim/observables.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace vsim {

inline constexpr const char* kVersion = "vortexsim 0.1.0";

struct OutputSpec {
    int samples_per_period = 40;  // per oscillation period 2 pi / M0
    int min_samples_pulse = 400;  // across one t_p
    bool dump_modes = false;
};

struct SweepSpec {
    std::string axis; // "l_x" or "t_p"; empty means no sweep
    std::vector<double> values;
};

struct Scenario {
    SimulationParams sim;
    PulseProfile pulse;
    OutputSpec outputs;
    EvolveOptions evolve;
    SweepSpec sweep;
    std::uint64_t config_hash = 0; // FNV-1a of the canonical config text
};

std::uint64_t fnv1a64(const std::string& s);

// Parses the single-document JSON config (sections sim/pulse/outputs/evolve/
// sweep).  Errors carry the offending key or byte position.
Scenario scenario_from_json_text(const std::string& text);
Scenario load_scenario(const std::string& path);

// Evolves the ensemble across the uniform sampling grid, collects the time
// series, the transported number with Richardson check, and the oracle
// diagnostics.
RunResult run_simulate(const Scenario& sc);

// Clones of the scenario along the sweep axis.  "l_x" scales l_y (and the
// M-dip offset reference stays with the pulse); "t_p" rebuilds the pulse.
std::vector<std::pair<double, Scenario>> expand_sweep(const Scenario& sc);

void write_run_csv(const RunResult& r, const std::string& path);
void write_run_json(const Scenario& sc, const RunResult& r, const std::string& path);
void write_sweep_csv(const std::vector<std::pair<double, RunResult>>& rows,
                     const std::string& axis, const std::string& path);

// Self-check suites ("lattice-sum", "materials", "fermion", "saddle", "all");
// prints one line per check, returns the number of failures.
int run_verify(const std::string& suite, std::ostream& os);

} // namespace vsim
