#pragma once
#include <optional>
#include <string>
#include <vector>

#include "graphnls/field.hpp"
#include "graphnls/graph_ops.hpp"
#include "graphnls/stationary.hpp"

namespace graphnls {

// -u'' + u - (2p+1)(p+1) sech^2(px) u = lambda u on (0, infinity), integrated
// backward from x_max with the decaying normalization u(x) e^{sqrt(1-lambda) x} -> 1.
struct ShootingSolution {
    double lambda;
    double u0;
    double du0;
    double x_max;
    double step;
    std::vector<double> profile; // u at x = 0, step, 2*step, ..., x_max
    int nodes;                   // sign changes of u on (0, x_max)

    double sample(double x) const; // linear interpolation of the profile
};

// rounds the design rule max(30, 40/sqrt(1-lambda)) up to a multiple of 5
double shooting_x_max(double lambda);

ShootingSolution solve_decaying(double p, double lambda, double x_max, double step = 2e-3);

enum class EigKind { EvenType, OddType }; // u'(0) = 0 / u(0) = 0

struct EigenvalueRecord {
    double lambda;
    EigKind kind;
    int multiplicity;
    int nodes;
};

struct PointSpectrum {
    double p;
    int num_edges;
    std::vector<EigenvalueRecord> eigenvalues; // sorted by lambda
};

struct SpectrumOptions {
    int scan_points = 2000;
    double step = 2e-3;
    double bisect_tol = 1e-10;
    double lambda_upper = 1.0 - 1e-4;
};

// Scans lambda over [1 - (p+1)(2p+1), lambda_upper], brackets sign changes of
// u(0) and u'(0) separately, and bisects. Multiplicity N-1 for OddType roots,
// 1 for EvenType, per the vertex-condition determinant N u(0)^{N-1} u'(0).
PointSpectrum find_point_spectrum(double p, int num_edges, const SpectrumOptions& opts = {});

std::string spectrum_to_csv(const PointSpectrum& s);

// Vectors e_j = (1,..,1,-j,0,..,0), kernel modes U^(j) = phi' e_j, generalized
// modes W^(j) = -(x/2) Phi e_j, continued in omega so that L_-(omega) W = U.
struct NeutralModeBasis {
    double p;
    double omega;
    std::vector<std::vector<double>> vectors; // e_j, j = 1..N-1, each length N
    std::vector<RealField> modes;             // U^(j)
    std::vector<RealField> generalized;       // W^(j)
    std::vector<double> pairings;             // <U^(j), W^(j)>
};

NeutralModeBasis neutral_basis(double p, int num_edges, double omega, const StarGraphGrid& grid);

enum class LinOp { Plus, Minus };

// L_{+/-}(omega) v = -Delta v + omega v - kappa Phi_omega^{2p} v,
// kappa = (2p+1)(p+1) for Plus and (p+1) for Minus.
RealField apply_linearized(LinOp which, const RealField& v, double p, double omega);

// trapezoid of (Dv)^2 + omega v^2 - kappa Phi_omega^{2p} v^2
double quadratic_form(LinOp which, const RealField& v, double p, double omega);

struct MinusForms {
    double direct;
    double factorized; // sum_j int Phi_omega^2 |D(v_j / Phi_omega)|^2
};

MinusForms quadratic_form_minus(const RealField& v, double p, double omega);

} // namespace graphnls
