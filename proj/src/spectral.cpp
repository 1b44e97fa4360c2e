#include "graphnls/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace graphnls {

namespace {

inline double sech(double y) {
    const double e = std::exp(-std::abs(y));
    return 2.0 * e / (1.0 + e * e);
}

// Potential of the shooting equation, V(x) = (2p+1)(p+1) sech^2(px),
// tabulated on the half-step grid x_i = i * step / 2 and grown on demand.
struct PotentialTable {
    double p;
    double step;
    std::vector<double> v; // index i -> V(i * step / 2)

    void ensure(double x_max) {
        const std::size_t need = static_cast<std::size_t>(std::llround(2.0 * x_max / step)) + 1;
        const double kappa = (2.0 * p + 1.0) * (p + 1.0);
        while (v.size() < need) {
            const double x = 0.5 * step * static_cast<double>(v.size());
            const double s = sech(p * x);
            v.push_back(kappa * s * s);
        }
    }
};

struct ShotEndpoint {
    double u0;
    double du0;
};

// Backward RK4 from x_max to 0. The decaying solution grows toward the vertex,
// so this direction is numerically stable. If profile_out is given, u is
// recorded at every whole step (index 0 at x = 0).
ShotEndpoint integrate_backward(const PotentialTable& table, double lambda, double x_max,
                                double step, std::vector<double>* profile_out) {
    const int n = static_cast<int>(std::llround(x_max / step));
    const double kappa = std::sqrt(1.0 - lambda);
    double u = std::exp(-kappa * x_max);
    double w = -kappa * u;
    if (profile_out != nullptr) {
        profile_out->assign(static_cast<std::size_t>(n) + 1, 0.0);
        (*profile_out)[static_cast<std::size_t>(n)] = u;
    }
    const double dt = -step;
    const double one_m_lambda = 1.0 - lambda;
    for (int j = n; j > 0; --j) {
        const double v0 = table.v[static_cast<std::size_t>(2 * j)];
        const double vh = table.v[static_cast<std::size_t>(2 * j - 1)];
        const double v1 = table.v[static_cast<std::size_t>(2 * j - 2)];
        const double k1u = w;
        const double k1w = (one_m_lambda - v0) * u;
        const double u2 = u + 0.5 * dt * k1u;
        const double w2 = w + 0.5 * dt * k1w;
        const double k2u = w2;
        const double k2w = (one_m_lambda - vh) * u2;
        const double u3 = u + 0.5 * dt * k2u;
        const double w3 = w + 0.5 * dt * k2w;
        const double k3u = w3;
        const double k3w = (one_m_lambda - vh) * u3;
        const double u4 = u + dt * k3u;
        const double w4 = w + dt * k3w;
        const double k4u = w4;
        const double k4w = (one_m_lambda - v1) * u4;
        u += dt / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        w += dt / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
        if (profile_out != nullptr) (*profile_out)[static_cast<std::size_t>(j - 1)] = u;
    }
    return {u, w};
}

int count_nodes(const std::vector<double>& profile) {
    int nodes = 0;
    for (std::size_t i = 1; i + 1 < profile.size(); ++i)
        if (profile[i] != 0.0 && profile[i + 1] != 0.0 && profile[i] * profile[i + 1] < 0.0)
            ++nodes;
    return nodes;
}

} // namespace

double shooting_x_max(double lambda) {
    const double kappa = std::sqrt(1.0 - lambda);
    const double raw = std::max(30.0, 40.0 / kappa);
    return 5.0 * std::ceil(raw / 5.0);
}

double ShootingSolution::sample(double x) const {
    if (x <= 0.0) return profile.front();
    if (x >= x_max) return profile.back();
    const double t = x / step;
    const std::size_t i = static_cast<std::size_t>(t);
    const double frac = t - static_cast<double>(i);
    return profile[i] * (1.0 - frac) + profile[i + 1] * frac;
}

ShootingSolution solve_decaying(double p, double lambda, double x_max, double step) {
    if (!(p > 0.0)) throw DomainError("solve_decaying: p > 0 required");
    if (!(lambda < 1.0 - 1e-6)) throw DomainError("solve_decaying: lambda < 1 required (no decaying solution)");
    PotentialTable table{p, step, {}};
    table.ensure(x_max);
    ShootingSolution sol;
    sol.lambda = lambda;
    sol.x_max = x_max;
    sol.step = step;
    const auto end = integrate_backward(table, lambda, x_max, step, &sol.profile);
    sol.u0 = end.u0;
    sol.du0 = end.du0;
    sol.nodes = count_nodes(sol.profile);
    return sol;
}

PointSpectrum find_point_spectrum(double p, int num_edges, const SpectrumOptions& opts) {
    if (!(p > 0.0 && p <= 2.0)) throw DomainError("find_point_spectrum: p in (0, 2] required");
    if (num_edges < 3) throw DomainError("find_point_spectrum: N >= 3 required");

    const double lambda_min = 1.0 - (p + 1.0) * (2.0 * p + 1.0);
    const double lambda_max = opts.lambda_upper;
    const int n = opts.scan_points;
    PotentialTable table{p, opts.step, {}};
    table.ensure(shooting_x_max(lambda_max));

    auto shoot = [&](double lambda) {
        return integrate_backward(table, lambda, shooting_x_max(lambda), opts.step, nullptr);
    };

    struct Root {
        double lambda;
        EigKind kind;
    };
    std::vector<Root> roots;

    auto bisect = [&](double a, double b, EigKind kind) {
        auto f = [&](double lam) {
            const auto e = shoot(lam);
            return kind == EigKind::OddType ? e.u0 : e.du0;
        };
        double fa = f(a);
        while (b - a > opts.bisect_tol) {
            const double m = 0.5 * (a + b);
            const double fm = f(m);
            if (fm == 0.0) return m;
            if ((fa < 0.0) == (fm < 0.0)) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        return 0.5 * (a + b);
    };

    double prev_lambda = lambda_min;
    auto prev = shoot(prev_lambda);
    for (int i = 1; i < n; ++i) {
        const double lam = lambda_min + (lambda_max - lambda_min) * i / (n - 1);
        const auto cur = shoot(lam);
        if (prev.u0 == 0.0 || prev.u0 * cur.u0 < 0.0)
            roots.push_back({bisect(prev_lambda, lam, EigKind::OddType), EigKind::OddType});
        if (prev.du0 == 0.0 || prev.du0 * cur.du0 < 0.0)
            roots.push_back({bisect(prev_lambda, lam, EigKind::EvenType), EigKind::EvenType});
        prev_lambda = lam;
        prev = cur;
    }

    PointSpectrum spec;
    spec.p = p;
    spec.num_edges = num_edges;
    bool kernel_found = false;
    for (const auto& r : roots) {
        const auto sol = solve_decaying(p, r.lambda, shooting_x_max(r.lambda), opts.step);
        if (std::abs(sol.u0) < 1e-12 && std::abs(sol.du0) < 1e-12)
            throw InconsistencyError("find_point_spectrum: u(0) and u'(0) vanish together at lambda = " +
                                     std::to_string(r.lambda));
        if (r.kind == EigKind::OddType && std::abs(r.lambda) <= 1e-6) kernel_found = true;
        spec.eigenvalues.push_back({r.lambda, r.kind,
                                    r.kind == EigKind::OddType ? num_edges - 1 : 1, sol.nodes});
    }
    if (!kernel_found)
        throw SolverError("find_point_spectrum: expected kernel root lambda = 0 was not bracketed");
    std::sort(spec.eigenvalues.begin(), spec.eigenvalues.end(),
              [](const EigenvalueRecord& a, const EigenvalueRecord& b) { return a.lambda < b.lambda; });
    return spec;
}

std::string spectrum_to_csv(const PointSpectrum& s) {
    std::ostringstream os;
    os << "lambda,kind,multiplicity\n";
    os.precision(12);
    for (const auto& e : s.eigenvalues)
        os << e.lambda << ',' << (e.kind == EigKind::EvenType ? "Even" : "Odd") << ','
           << e.multiplicity << '\n';
    return os.str();
}

NeutralModeBasis neutral_basis(double p, int num_edges, double omega, const StarGraphGrid& grid) {
    if (!(p > 0.0)) throw DomainError("neutral_basis: p > 0 required");
    if (!(omega > 0.0)) throw DomainError("neutral_basis: omega > 0 required");
    if (grid.num_edges() != num_edges) throw DimensionError("neutral_basis: grid edge count mismatch");
    NeutralModeBasis basis;
    basis.p = p;
    basis.omega = omega;
    SolitonProfile prof{p, omega};
    for (int j = 1; j < num_edges; ++j) {
        std::vector<double> e(static_cast<std::size_t>(num_edges), 0.0);
        for (int m = 0; m < j; ++m) e[static_cast<std::size_t>(m)] = 1.0;
        e[static_cast<std::size_t>(j)] = -static_cast<double>(j);
        RealField mode = RealField::sample_profile(grid, [&](double x) { return prof.dx(x); }, e);
        RealField gen =
            RealField::sample_profile(grid, [&](double x) { return -0.5 * x * prof(x); }, e);
        basis.pairings.push_back(l2_inner(mode, gen));
        basis.vectors.push_back(std::move(e));
        basis.modes.push_back(std::move(mode));
        basis.generalized.push_back(std::move(gen));
    }
    return basis;
}

RealField apply_linearized(LinOp which, const RealField& v, double p, double omega) {
    const double kappa = which == LinOp::Plus ? (2.0 * p + 1.0) * (p + 1.0) : (p + 1.0);
    const auto& gr = v.grid();
    RealField out = apply_hamiltonian(v);
    const double sq = std::sqrt(omega);
    // Phi_omega^{2p}(x) = omega sech^2(p sqrt(omega) x)
    auto pot = [&](double x) {
        const double s = sech(p * sq * x);
        return omega * s * s;
    };
    out.vertex() += (omega - kappa * pot(0.0)) * v.vertex();
    for (int j = 0; j < gr.num_edges(); ++j) {
        auto src = v.edge(j);
        auto dst = out.edge(j);
        for (std::size_t k = 0; k < src.size(); ++k) {
            const double x = gr.x(static_cast<int>(k) + 1);
            dst[k] += (omega - kappa * pot(x)) * src[k];
        }
    }
    return out;
}

double quadratic_form(LinOp which, const RealField& v, double p, double omega) {
    const double kappa = which == LinOp::Plus ? (2.0 * p + 1.0) * (p + 1.0) : (p + 1.0);
    const auto& gr = v.grid();
    const double h = gr.h();
    const double sq = std::sqrt(omega);
    // vertex term: weight h/2 per edge, Phi_omega^{2p}(0) = omega
    double pot_sum = (1.0 - kappa) * omega * v.vertex() * v.vertex() * gr.num_edges() * 0.5;
    for (int j = 0; j < gr.num_edges(); ++j) {
        auto u = v.edge(j);
        for (std::size_t k = 0; k < u.size(); ++k) {
            const double x = gr.x(static_cast<int>(k) + 1);
            const double s = sech(p * sq * x);
            pot_sum += (omega - kappa * omega * s * s) * u[k] * u[k];
        }
    }
    return d_inner(v, v) + h * pot_sum;
}

MinusForms quadratic_form_minus(const RealField& v, double p, double omega) {
    MinusForms out;
    out.direct = quadratic_form(LinOp::Minus, v, p, omega);
    const auto& gr = v.grid();
    const int M = gr.points_per_edge();
    const double h = gr.h();
    const double inv2h = 1.0 / (2.0 * h);
    SolitonProfile prof{p, omega};
    std::vector<double> phi(static_cast<std::size_t>(M) + 1);
    for (int k = 0; k <= M; ++k) phi[static_cast<std::size_t>(k)] = prof(gr.x(k));
    std::vector<double> r(static_cast<std::size_t>(M) + 1), d(static_cast<std::size_t>(M) + 1);
    double total = 0.0;
    for (int j = 0; j < gr.num_edges(); ++j) {
        auto u = v.edge(j);
        r[0] = v.vertex() / phi[0];
        for (int k = 1; k < M; ++k) r[static_cast<std::size_t>(k)] = u[static_cast<std::size_t>(k - 1)] / phi[static_cast<std::size_t>(k)];
        r[static_cast<std::size_t>(M)] = 0.0;
        d[0] = (-3.0 * r[0] + 4.0 * r[1] - r[2]) * inv2h;
        for (int k = 1; k < M; ++k)
            d[static_cast<std::size_t>(k)] = (r[static_cast<std::size_t>(k + 1)] - r[static_cast<std::size_t>(k - 1)]) * inv2h;
        d[static_cast<std::size_t>(M)] = (3.0 * r[static_cast<std::size_t>(M)] - 4.0 * r[static_cast<std::size_t>(M - 1)] + r[static_cast<std::size_t>(M - 2)]) * inv2h;
        double s = 0.5 * (phi[0] * phi[0] * d[0] * d[0] +
                          phi[static_cast<std::size_t>(M)] * phi[static_cast<std::size_t>(M)] * d[static_cast<std::size_t>(M)] * d[static_cast<std::size_t>(M)]);
        for (int k = 1; k < M; ++k)
            s += phi[static_cast<std::size_t>(k)] * phi[static_cast<std::size_t>(k)] * d[static_cast<std::size_t>(k)] * d[static_cast<std::size_t>(k)];
        total += h * s;
    }
    out.factorized = total;
    return out;
}

} // namespace graphnls
