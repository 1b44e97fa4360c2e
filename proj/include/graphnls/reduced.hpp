#pragma once
#include <string>
#include <vector>

#include "graphnls/action.hpp"

namespace graphnls {

struct ReducedState {
    std::vector<double> gamma;
    std::vector<double> beta;
    double t = 0.0;
};

// (N-1)-degree-of-freedom truncated system
//   gamma_j' = beta_j,
//   m_j beta_j' = p(p+1)(2p+1) sum_{k,n} T[k][n][j] gamma_k gamma_n,
// generated by H0 = sum m_j beta_j^2 + M0(gamma) with m_j = <W^(j), U^(j)>.
class ReducedSystem {
public:
    ReducedSystem(double p, int num_edges, std::vector<double> masses, CubicTensor tensor);

    // masses from the neutral-mode pairings on the given grid
    static ReducedSystem build(double p, int num_edges, const StarGraphGrid& grid);

    int dim() const { return num_edges_ - 1; }
    double p() const { return p_; }
    int num_edges() const { return num_edges_; }
    const std::vector<double>& masses() const { return masses_; }
    const CubicTensor& tensor() const { return tensor_; }

    void rhs(const ReducedState& s, std::vector<double>& dgamma, std::vector<double>& dbeta) const;
    void acceleration(const std::vector<double>& gamma, std::vector<double>& acc) const;
    double hamiltonian(const ReducedState& s) const;

private:
    double p_;
    int num_edges_;
    std::vector<double> masses_;
    CubicTensor tensor_;
};

struct ReducedSample {
    double t;
    std::vector<double> gamma;
    std::vector<double> beta;
    double h0;
};

struct ReducedTrajectory {
    std::vector<ReducedSample> samples;
    bool diverged = false; // ||gamma|| exceeded 10, integration stopped early
};

// velocity-Verlet trajectory, one sample per step
ReducedTrajectory integrate_reduced(const ReducedState& s0, const ReducedSystem& sys, double dt,
                                    double t_end, int record_stride = 1);

std::string reduced_to_csv(const ReducedTrajectory& tr, int dim);

struct EscapeOptions {
    double dt = 1e-3;
    double delta_scale = 1.0; // gamma_{N-1}(0) = delta_scale * epsilon
    bool repelling = true;    // pick the sign with an immediately growing force
};

// Integrates the scalar invariant reduction (only the last mode excited) and
// returns the first time ||gamma|| > epsilon. Throws SolverError on timeout
// at t = 100 epsilon^{-1/2}.
double escape_time(const ReducedSystem& sys, double epsilon, const EscapeOptions& opts = {});

} // namespace graphnls
