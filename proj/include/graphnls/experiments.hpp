#pragma once
#include <optional>

#include "graphnls/config.hpp"
#include "graphnls/modulation.hpp"

namespace graphnls {

// Outcome of one PDE instability run.
struct InstabilityResult {
    std::optional<double> crossing_time; // first distance_to_orbit > epsilon
    std::optional<double> exit_time;     // first decomposition failure
    ModulationSeries series;
    Trajectory trajectory;
};

// Builds Psi_0 = e^{i seed_phase} (Phi + delta * D) with D the configured
// unit-H1 combination of kernel modes, runs the evolution, and tracks the
// modulation decomposition.
InstabilityResult run_instability(const ExperimentConfig& cfg, double epsilon, double delta);

// worker cap from GRAPHNLS_THREADS (default: hardware concurrency)
int worker_count(int jobs);

// CLI entry points; each writes CSV outputs plus manifest.txt under cfg.out
// and returns a process exit code.
int cmd_spectrum(const ExperimentConfig& cfg);
int cmd_reduced(const ExperimentConfig& cfg);
int cmd_instability(const ExperimentConfig& cfg);
int cmd_compare(const ExperimentConfig& cfg);
int cmd_sweep(const ExperimentConfig& cfg);

} // namespace graphnls
