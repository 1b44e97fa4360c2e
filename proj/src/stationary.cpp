#include "graphnls/stationary.hpp"

#include <cmath>

#include "tridiag.hpp"

namespace graphnls {

namespace {

// stable sech for y >= 0
inline double sech(double y) {
    const double e = std::exp(-std::abs(y));
    return 2.0 * e / (1.0 + e * e);
}

} // namespace

double SolitonProfile::operator()(double x) const {
    const double z = std::sqrt(omega) * x;
    return std::pow(omega, 1.0 / (2.0 * p)) * std::pow(sech(p * z), 1.0 / p);
}

double SolitonProfile::dx(double x) const {
    const double z = std::sqrt(omega) * x;
    const double phi = std::pow(sech(p * z), 1.0 / p);
    return -std::pow(omega, 1.0 / (2.0 * p) + 0.5) * phi * std::tanh(p * z);
}

double SolitonProfile::domega(double x) const {
    const double a = 1.0 / (2.0 * p);
    const double z = std::sqrt(omega) * x;
    const double phi = std::pow(sech(p * z), 1.0 / p);
    const double dphi = -phi * std::tanh(p * z);
    return std::pow(omega, a - 1.0) * (a * phi + 0.5 * z * dphi);
}

double SolitonProfile::d2omega(double x) const {
    const double a = 1.0 / (2.0 * p);
    const double z = std::sqrt(omega) * x;
    const double phi = std::pow(sech(p * z), 1.0 / p);
    const double dphi = -phi * std::tanh(p * z);
    const double ddphi = phi - (p + 1.0) * std::pow(phi, 2.0 * p + 1.0);
    return std::pow(omega, a - 2.0) *
           (a * (a - 1.0) * phi + (a - 0.25) * z * dphi + 0.25 * z * z * ddphi);
}

StationaryState half_soliton(double p, double omega, const StarGraphGrid& grid) {
    if (!(p > 0.0)) throw DomainError("half_soliton: p > 0 required");
    if (!(omega > 0.0)) throw DomainError("half_soliton: omega > 0 required");
    SolitonProfile prof{p, omega};
    RealField f = RealField::sample_profile(
        grid, [&](double x) { return prof(x); },
        std::vector<double>(static_cast<std::size_t>(grid.num_edges()), 1.0));
    return {p, omega, std::move(f)};
}

double stationary_residual(const StationaryState& s) {
    const RealField& f = s.field;
    RealField lap = apply_hamiltonian(f);
    const double p = s.p;
    const double om = s.omega;
    auto nonlin = [&](double u) { return om * u - (p + 1.0) * std::pow(std::abs(u), 2.0 * p) * u; };
    double r = std::abs(lap.vertex() + nonlin(f.vertex()));
    auto lv = lap.raw();
    auto fv = f.raw();
    for (std::size_t i = 0; i < fv.size(); ++i)
        r = std::max(r, std::abs(lv[i] + nonlin(fv[i])));
    return r;
}

MassEnergy mass_energy(const StationaryState& s) {
    const auto& gr = s.field.grid();
    const double h = gr.h();
    const int M = gr.points_per_edge();
    SolitonProfile prof{s.p, s.omega};
    // gradient term with the closed-form derivative (no difference noise)
    double grad = 0.5 * prof.dx(0.0) * prof.dx(0.0);
    for (int k = 1; k < M; ++k) {
        const double d = prof.dx(gr.x(k));
        grad += d * d;
    }
    const double dL = prof.dx(gr.edge_length());
    grad += 0.5 * dL * dL;
    grad *= h * gr.num_edges();
    const double Q = l2_inner(s.field, s.field);
    const double E = grad - lp_integral(s.field, 2.0 * s.p + 2.0);
    return {Q, E};
}

double mass_derivative(double p, double omega, int num_edges, const StarGraphGrid& grid) {
    if (!(p > 0.0)) throw DomainError("mass_derivative: p > 0 required");
    if (!(omega > 0.0)) throw DomainError("mass_derivative: omega > 0 required");
    const double integral = trapezoid_halfline(
        [&](double z) { return std::pow(sech(p * z), 2.0 / p); }, grid.edge_length(),
        grid.points_per_edge());
    return num_edges * (1.0 / p - 0.5) * std::pow(omega, 1.0 / p - 1.5) * integral;
}

RealField discrete_half_soliton(double p, double omega, const StarGraphGrid& grid) {
    RealField f = half_soliton(p, omega, grid).field;
    const int M = grid.points_per_edge();
    const double inv_h2 = 1.0 / (grid.h() * grid.h());
    // edge-symmetric reduction: unknowns u_0..u_{M-1}, u_M = 0, vertex stencil
    // (2/h^2)(u_0 - u_1)
    std::vector<double> u(static_cast<std::size_t>(M));
    u[0] = f.vertex();
    auto e0 = f.edge(0);
    for (int k = 1; k < M; ++k) u[static_cast<std::size_t>(k)] = e0[static_cast<std::size_t>(k - 1)];

    std::vector<double> res(u.size()), diag(u.size()), sub(u.size()), sup(u.size()), du(u.size());
    auto residual = [&](const std::vector<double>& v, std::vector<double>& r) {
        r[0] = 2.0 * inv_h2 * (v[0] - v[1]) + omega * v[0] -
               (p + 1.0) * std::pow(std::abs(v[0]), 2.0 * p) * v[0];
        for (int k = 1; k < M; ++k) {
            const double right = k + 1 < M ? v[static_cast<std::size_t>(k + 1)] : 0.0;
            r[static_cast<std::size_t>(k)] =
                -(v[static_cast<std::size_t>(k - 1)] - 2.0 * v[static_cast<std::size_t>(k)] + right) * inv_h2 +
                omega * v[static_cast<std::size_t>(k)] -
                (p + 1.0) * std::pow(std::abs(v[static_cast<std::size_t>(k)]), 2.0 * p) * v[static_cast<std::size_t>(k)];
        }
    };
    for (int it = 0; it < 50; ++it) {
        residual(u, res);
        double rmax = 0.0;
        for (double r : res) rmax = std::max(rmax, std::abs(r));
        if (rmax < 1e-13) break;
        const double kappa = (p + 1.0) * (2.0 * p + 1.0);
        diag[0] = 2.0 * inv_h2 + omega - kappa * std::pow(std::abs(u[0]), 2.0 * p);
        sup[0] = -2.0 * inv_h2;
        for (int k = 1; k < M; ++k) {
            diag[static_cast<std::size_t>(k)] =
                2.0 * inv_h2 + omega - kappa * std::pow(std::abs(u[static_cast<std::size_t>(k)]), 2.0 * p);
            sub[static_cast<std::size_t>(k)] = -inv_h2;
            sup[static_cast<std::size_t>(k)] = -inv_h2;
        }
        du = detail::pivoted_tridiagonal_solve(sub, diag, sup, res);
        for (std::size_t k = 0; k < u.size(); ++k) u[k] -= du[k];
    }
    residual(u, res);
    double rmax = 0.0;
    for (double r : res) rmax = std::max(rmax, std::abs(r));
    if (rmax > 1e-10) throw SolverError("discrete_half_soliton: Newton refinement stalled");

    RealField out(grid);
    out.vertex() = u[0];
    for (int j = 0; j < grid.num_edges(); ++j) {
        auto e = out.edge(j);
        for (int k = 1; k < M; ++k) e[static_cast<std::size_t>(k - 1)] = u[static_cast<std::size_t>(k)];
    }
    return out;
}

double trapezoid_halfline(const std::function<double(double)>& fun, double length, int points) {
    const double h = length / points;
    double s = 0.5 * (fun(0.0) + fun(length));
    for (int k = 1; k < points; ++k) s += fun(k * h);
    return h * s;
}

} // namespace graphnls
