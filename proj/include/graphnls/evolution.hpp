#pragma once
#include <optional>
#include <vector>

#include "graphnls/field.hpp"
#include "graphnls/graph_ops.hpp"
#include "graphnls/stationary.hpp"

namespace graphnls {

struct EvolutionConfig {
    double p = 1.0;
    double dt = 5e-3;
    double t_end = 10.0;
    double solver_tol = 1e-12;
    int max_fixed_point_iters = 100;
    int stride = 10;              // observable and snapshot decimation
    bool store_snapshots = true;
    bool linear_only = false;     // test hook: drop the nonlinearity
    double supercritical_time_cap = 10.0; // hard cap applied when p >= 2

    void validate() const {
        if (!(dt > 0.0 && dt <= 0.1)) throw DomainError("EvolutionConfig: 0 < dt <= 0.1 required");
        if (!(solver_tol < 1e-8)) throw DomainError("EvolutionConfig: solver_tol < 1e-8 required");
        if (!(t_end > 0.0)) throw DomainError("EvolutionConfig: t_end > 0 required");
        if (max_fixed_point_iters < 1) throw DomainError("EvolutionConfig: max_fixed_point_iters >= 1");
        if (stride < 1) throw DomainError("EvolutionConfig: stride >= 1");
    }
};

// One Crank-Nicolson step with the mass-conserving midpoint nonlinearity
//   (i/dt)(Y - X) = (1/2)(-Delta)(Y + X) - (p+1) (|Y|^{2p} + |X|^{2p})/2 * (Y + X)/2.
// The linear solve uses the star structure: one tridiagonal sweep per edge
// plus a scalar vertex closure. The implicit system is fixed-point iterated
// to solver_tol.
class NlsStepper {
public:
    NlsStepper(const StarGraphGrid& grid, const EvolutionConfig& cfg);

    GraphField step(const GraphField& psi) const;

    const EvolutionConfig& config() const { return cfg_; }

private:
    StarGraphGrid grid_;
    EvolutionConfig cfg_;
    cplx diag_;               // i/dt - 1/h^2
    cplx off_;                // 1/(2 h^2)
    std::vector<cplx> cprime_; // Thomas elimination coefficients (shared by all edges)
    std::vector<cplx> inv_den_;
    std::vector<cplx> q_;      // T^{-1} of the vertex coupling column
    cplx closure_den_;

    void solve_edges(const GraphField& rhs_interior, cplx rhs_vertex, GraphField& out) const;
};

struct Trajectory {
    double p = 1.0;
    double dt = 0.0;
    std::vector<double> times;
    std::vector<double> energy;      // discrete E (conserved by the scheme for p = 1)
    std::vector<double> mass;        // discrete Q
    std::vector<double> dist_orbit;  // distance_to_orbit against the reference state
    std::vector<double> snapshot_times;
    std::vector<GraphField> snapshots;
    bool step_failed = false;
    std::optional<double> failure_time;
};

// discrete energy used by the observables: <(-Delta)psi, psi> - int |psi|^{2p+2}
double discrete_energy(const GraphField& psi, double p);

// Runs the stepper, recording observables (and snapshots when configured)
// every cfg.stride steps. A step failure stops the run, keeps the partial
// trajectory, and marks step_failed. p >= 2 gets a stderr warning and the
// hard time cap.
Trajectory run(const GraphField& psi0, const EvolutionConfig& cfg,
               const RealField* orbit_reference = nullptr);

std::string observables_to_csv(const Trajectory& tr);

} // namespace graphnls
