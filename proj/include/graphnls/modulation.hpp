#pragma once
#include <optional>
#include <string>
#include <vector>

#include "graphnls/evolution.hpp"
#include "graphnls/reduced.hpp"
#include "graphnls/spectral.hpp"

namespace graphnls {

// Psi = e^{i theta} [ Phi_omega + U + i W ] with
// <U, Phi_omega> = <W, d_omega Phi_omega> = 0.
struct ModulationFrame {
    double theta;
    double omega;
    RealField u;
    RealField w;
    double res_primary; // max of the two constraint residuals
};

// Newton iteration on G(theta, omega; Psi) = 0 with the analytic Jacobian
// built from the closed-form d_omega Phi_omega and d^2_omega Phi_omega.
// Throws DecompositionError when Newton does not converge in 30 iterations
// (the trajectory left the tubular neighborhood).
ModulationFrame decompose_primary(const GraphField& psi, double p, double theta_guess,
                                  double omega_guess);

struct SecondaryDecomposition {
    std::vector<double> c;
    std::vector<double> b;
    RealField u_perp;
    RealField w_perp;
    double res_secondary;
};

// c_j = <U, W^(j)>/<U^(j), W^(j)>, b_j = <W, U^(j)>/<W^(j), U^(j)>, remainders
// by subtraction. The basis must be built at the frame's omega.
SecondaryDecomposition decompose_secondary(const RealField& u, const RealField& w,
                                           const NeutralModeBasis& basis);

struct ModulationSample {
    double t;
    double theta;
    double omega;
    std::vector<double> c;
    std::vector<double> b;
    double norm_u;      // H1 norms
    double norm_w;
    double norm_u_perp;
    double norm_w_perp;
    double res_primary;
    double res_secondary;
    double delta_lhs; // Delta(t) from the frame fields
    double delta_rhs; // Delta_0 + (omega - 1) [Q(Psi_0) - Q(Phi)]
};

struct ModulationSeries {
    double p;
    int num_edges;
    std::vector<ModulationSample> samples;
    std::optional<double> exit_time; // first decomposition failure
    double delta0 = 0.0;
    double q_offset = 0.0;           // Q(Psi_0) - Q(Phi)
    double delta_h1_initial = 0.0;   // || Psi_0 - Phi ||_{H1} (= ||U_0 + i W_0||)
};

// Runs both decompositions at every stored snapshot, warm-starting Newton
// from the previous frame. Stops cleanly at the first failure.
ModulationSeries track(const Trajectory& traj, double p, double theta0 = 0.0, double omega0 = 1.0);

std::string modulation_to_csv(const ModulationSeries& s);

struct EnergyBudgetReport {
    double max_identity_mismatch; // sup_t |delta_lhs - delta_rhs|
    double max_remainder_ratio;   // sup_t of the remainder-bound ratio
};

// Checks the conserved-quantity bookkeeping along a tracked series and the
// remainder bound combination (|omega-1|^2 + ||U_perp + i W_perp||_{H1}^2)
// against delta^2 + |H0(c,b)| + ||c|| ||b||^2 + ||b||^3.
EnergyBudgetReport energy_budget(const ModulationSeries& series, const ReducedSystem& sys);

struct ParameterRateReport {
    double sup_theta_rate;  // sup |theta_dot - omega| / (||U||^2 + ||W||^2)
    double sup_omega_rate;  // sup |omega_dot| / (||U|| ||W||)
    double sup_theta_mismatch; // sup |theta_dot - omega|
    double sup_omega_dot;      // sup |omega_dot|
};

// Finite-differences theta(t), omega(t) on a uniformly sampled series.
// Throws DomainError for series shorter than 10 samples.
ParameterRateReport parameter_rate_check(const ModulationSeries& series);

// e^{i theta} [ Phi_omega + U + i W ] on the grid of u
GraphField assemble_frame(double p, double theta, double omega, const RealField& u,
                          const RealField& w);

} // namespace graphnls
