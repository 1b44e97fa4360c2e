#pragma once
#include <string>
#include <vector>

#include "graphnls/spectral.hpp"

namespace graphnls {

// T[i][j][k] = <Phi^{2p-1} U^(i) U^(j), U^(k)>, i,j,k = 1..N-1. The integral
// factorizes: T = S_ijk * I_p with S_ijk = sum_m (e_i)_m (e_j)_m (e_k)_m and
// I_p = int_0^inf phi^{2p-1} (phi')^3 dx = -p / (2(p+1)(2p+1)).
class CubicTensor {
public:
    CubicTensor(double p, int num_edges, double i_p, std::vector<double> entries)
        : p_(p), num_edges_(num_edges), i_p_(i_p), entries_(std::move(entries)) {}

    double p() const { return p_; }
    int num_edges() const { return num_edges_; }
    int dim() const { return num_edges_ - 1; }
    double radial_integral() const { return i_p_; }

    // one-based mode indices
    double operator()(int i, int j, int k) const {
        const int d = dim();
        return entries_[static_cast<std::size_t>((i - 1) * d * d + (j - 1) * d + (k - 1))];
    }

private:
    double p_;
    int num_edges_;
    double i_p_;
    std::vector<double> entries_;
};

// Assembles the tensor by quadrature (dedicated fine 1D rule for I_p), then
// validates the diagonal against p j(j^2-1) / (2(p+1)(2p+1)) and the separable
// structure against direct field-grid inner products, both within 1e-8.
CubicTensor cubic_tensor(double p, int num_edges);

std::string tensor_to_csv(const CubicTensor& t);

// M0(c) = -(2/3) p(p+1)(2p+1) sum c_i c_j c_k T[i][j][k]
double m0(const std::vector<double>& c, const CubicTensor& tensor);

// Discrete action Lambda(u) = <(-Delta) u, u> + Q(u) - int |u|^{2p+2}; the
// gradient of this functional is exactly the discrete stationary operator.
double action_lambda(const RealField& u, double p);

struct TransverseMinimum {
    RealField u_perp;
    double M;            // Lambda(Phi + sum c_j U^(j) + U_perp) - Lambda(Phi)
    int newton_iters;
};

// Constrained minimization machinery around one half-soliton Phi.
class ActionLandscape {
public:
    ActionLandscape(double p, int num_edges, const StarGraphGrid& grid);

    const CubicTensor& tensor() const { return tensor_; }
    const NeutralModeBasis& basis() const { return basis_; }
    const RealField& phi() const { return phi_; }

    double m0_of(const std::vector<double>& c) const { return m0(c, tensor_); }

    // Newton iteration on the Euler-Lagrange system projected onto
    // L^2_c cap [X_c]^perp; requires ||c|| <= 0.1 and p >= 1/2.
    TransverseMinimum transverse_minimizer(const std::vector<double>& c, double tol = 1e-11) const;

    // Small coefficient vectors along the last kernel mode with M > 0 / M < 0.
    std::pair<std::vector<double>, std::vector<double>> saddle_witness(double t = 0.02) const;

    // L^2 projection onto the complement of span{Phi, U^(1..N-1)}
    void project_out_constraints(RealField& v) const;

private:
    double p_;
    int num_edges_;
    StarGraphGrid grid_;
    RealField phi_;
    NeutralModeBasis basis_;
    CubicTensor tensor_;
    double phi_norm_sq_;
    std::vector<double> mode_norm_sq_;
    double lambda_phi_;
};

} // namespace graphnls
