#pragma once
#include "graphnls/field.hpp"
#include "graphnls/graph_ops.hpp"

namespace graphnls {

// Closed-form half-soliton profile machinery. All edges carry the same
// profile phi_omega(x) = omega^{1/2p} sech^{1/p}(p sqrt(omega) x), glued at
// the common maximum.
struct SolitonProfile {
    double p;
    double omega;

    double operator()(double x) const;   // phi_omega(x)
    double dx(double x) const;           // d/dx phi_omega
    double domega(double x) const;       // d/domega phi_omega
    double d2omega(double x) const;      // d^2/domega^2 phi_omega
};

struct StationaryState {
    double p;
    double omega;
    RealField field;
};

StationaryState half_soliton(double p, double omega, const StarGraphGrid& grid);

// max-norm of -Delta Phi + omega Phi - (p+1) Phi^{2p+1} over vertex and
// interior nodes
double stationary_residual(const StationaryState& s);

struct MassEnergy {
    double Q;
    double E;
};

// Q and E by quadrature; the derivative in E is sampled from the closed form.
MassEnergy mass_energy(const StationaryState& s);

// d/domega ||Phi_omega||^2 = N (1/p - 1/2) omega^{1/p - 3/2} int phi^2,
// with the integral evaluated by quadrature on [0, L].
double mass_derivative(double p, double omega, int num_edges, const StarGraphGrid& grid);

// Newton-refines the sampled profile into the exact critical point of the
// discrete action (stationary residual at roundoff instead of O(h^2)). The
// state is edge-symmetric, so this reduces to one tridiagonal Newton per
// iteration. Used where an O(h^2) offset of the base point would pollute
// small-amplitude expansions.
RealField discrete_half_soliton(double p, double omega, const StarGraphGrid& grid);

// int_0^L of fun by composite trapezoid on a dedicated 1D grid
double trapezoid_halfline(const std::function<double(double)>& fun, double length, int points);

} // namespace graphnls
