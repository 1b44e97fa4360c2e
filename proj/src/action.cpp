#include "graphnls/action.hpp"

#include <cmath>
#include <sstream>

namespace graphnls {

namespace {

inline double sech(double y) {
    const double e = std::exp(-std::abs(y));
    return 2.0 * e / (1.0 + e * e);
}

std::vector<std::vector<double>> kernel_vectors(int num_edges) {
    std::vector<std::vector<double>> e;
    for (int j = 1; j < num_edges; ++j) {
        std::vector<double> v(static_cast<std::size_t>(num_edges), 0.0);
        for (int m = 0; m < j; ++m) v[static_cast<std::size_t>(m)] = 1.0;
        v[static_cast<std::size_t>(j)] = -static_cast<double>(j);
        e.push_back(std::move(v));
    }
    return e;
}

} // namespace

CubicTensor cubic_tensor(double p, int num_edges) {
    if (!(p >= 0.5)) throw DomainError("cubic_tensor: p >= 1/2 required for the cubic expansion");
    if (num_edges < 3) throw DomainError("cubic_tensor: N >= 3 required");

    // radial integral int_0^inf phi^{2p-1} (phi')^3 on a fine rule
    const double length = 30.0;
    const int points = 24000;
    const double i_p = trapezoid_halfline(
        [&](double x) {
            const double phi = std::pow(sech(p * x), 1.0 / p);
            const double dphi = -phi * std::tanh(p * x);
            return std::pow(phi, 2.0 * p - 1.0) * dphi * dphi * dphi;
        },
        length, points);
    const double i_closed = -p / (2.0 * (p + 1.0) * (2.0 * p + 1.0));
    if (std::abs(i_p - i_closed) > 1e-10)
        throw InconsistencyError("cubic_tensor: radial integral disagrees with closed form");

    const auto e = kernel_vectors(num_edges);
    const int d = num_edges - 1;
    std::vector<double> entries(static_cast<std::size_t>(d) * d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                double s = 0.0;
                for (int m = 0; m < num_edges; ++m)
                    s += e[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)] *
                         e[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)] *
                         e[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)];
                entries[static_cast<std::size_t>(i * d * d + j * d + k)] = s * i_p;
            }
    CubicTensor t(p, num_edges, i_p, std::move(entries));

    // diagonal closed form
    for (int j = 2; j <= d; ++j) {
        const double want = p * j * (j * j - 1.0) / (2.0 * (p + 1.0) * (2.0 * p + 1.0));
        if (std::abs(t(j, j, j) - want) > 1e-8)
            throw InconsistencyError("cubic_tensor: diagonal entry disagrees with closed form");
    }
    // separable structure vs direct field-grid quadrature
    {
        StarGraphGrid vgrid(num_edges, 30.0, 6000);
        auto basis = neutral_basis(p, num_edges, 1.0, vgrid);
        SolitonProfile prof{p, 1.0};
        RealField weight = RealField::sample_profile(
            vgrid, [&](double x) { return std::pow(prof(x), 2.0 * p - 1.0); },
            std::vector<double>(static_cast<std::size_t>(num_edges), 1.0));
        for (int i = 1; i <= d; ++i)
            for (int j = i; j <= d; ++j)
                for (int k = j; k <= d; ++k) {
                    RealField prod(vgrid);
                    prod.vertex() = weight.vertex() * basis.modes[static_cast<std::size_t>(i - 1)].vertex() *
                                    basis.modes[static_cast<std::size_t>(j - 1)].vertex();
                    for (int m = 0; m < num_edges; ++m) {
                        auto w = weight.edge(m);
                        auto a = basis.modes[static_cast<std::size_t>(i - 1)].edge(m);
                        auto b = basis.modes[static_cast<std::size_t>(j - 1)].edge(m);
                        auto dst = prod.edge(m);
                        for (std::size_t q = 0; q < dst.size(); ++q) dst[q] = w[q] * a[q] * b[q];
                    }
                    const double direct = l2_inner(prod, basis.modes[static_cast<std::size_t>(k - 1)]);
                    if (std::abs(direct - t(i, j, k)) > 1e-8)
                        throw InconsistencyError("cubic_tensor: separable structure check failed");
                }
    }
    return t;
}

std::string tensor_to_csv(const CubicTensor& t) {
    std::ostringstream os;
    os << "i,j,k,value\n";
    os.precision(15);
    for (int i = 1; i <= t.dim(); ++i)
        for (int j = 1; j <= t.dim(); ++j)
            for (int k = 1; k <= t.dim(); ++k)
                os << i << ',' << j << ',' << k << ',' << t(i, j, k) << '\n';
    return os.str();
}

double m0(const std::vector<double>& c, const CubicTensor& tensor) {
    const int d = tensor.dim();
    if (static_cast<int>(c.size()) != d) throw DimensionError("m0: coefficient size mismatch");
    double s = 0.0;
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j)
            for (int k = 1; k <= d; ++k)
                s += c[static_cast<std::size_t>(i - 1)] * c[static_cast<std::size_t>(j - 1)] *
                     c[static_cast<std::size_t>(k - 1)] * tensor(i, j, k);
    const double p = tensor.p();
    return -(2.0 / 3.0) * p * (p + 1.0) * (2.0 * p + 1.0) * s;
}

double action_lambda(const RealField& u, double p) {
    return dirichlet_energy(u) + l2_inner(u, u) - lp_integral(u, 2.0 * p + 2.0);
}

// The base point is the exact critical point of the discrete action, not the
// sampled profile: the O(h^2) offset between the two would otherwise leave a
// residual floor in U_perp and M(c) that swamps the small-|c| expansions.
ActionLandscape::ActionLandscape(double p, int num_edges, const StarGraphGrid& grid)
    : p_(p), num_edges_(num_edges), grid_(grid),
      phi_(discrete_half_soliton(p, 1.0, grid)),
      basis_(neutral_basis(p, num_edges, 1.0, grid)),
      tensor_(cubic_tensor(p, num_edges)) {
    phi_norm_sq_ = l2_inner(phi_, phi_);
    for (const auto& m : basis_.modes) mode_norm_sq_.push_back(l2_inner(m, m));
    lambda_phi_ = action_lambda(phi_, p_);
}

void ActionLandscape::project_out_constraints(RealField& v) const {
    // Phi and the U^(j) are mutually L2-orthogonal, so plain removal suffices
    v.axpy(-l2_inner(phi_, v) / phi_norm_sq_, phi_);
    for (std::size_t j = 0; j < basis_.modes.size(); ++j)
        v.axpy(-l2_inner(basis_.modes[j], v) / mode_norm_sq_[j], basis_.modes[j]);
}

namespace {

// gradient of Lambda / 2 at u: -Delta u + u - (p+1)|u|^{2p} u
RealField half_gradient(const RealField& u, double p) {
    RealField g = apply_hamiltonian(u);
    auto add_nl = [&](double x) { return x - (p + 1.0) * std::pow(std::abs(x), 2.0 * p) * x; };
    g.vertex() += add_nl(u.vertex());
    auto gd = g.raw();
    auto ud = u.raw();
    for (std::size_t i = 0; i < ud.size(); ++i) gd[i] += add_nl(ud[i]);
    return g;
}

// linearized operator at u: w -> -Delta w + w - (p+1)(2p+1)|u|^{2p} w
RealField linearized_at(const RealField& u, const RealField& w, double p) {
    RealField g = apply_hamiltonian(w);
    const double kappa = (p + 1.0) * (2.0 * p + 1.0);
    g.vertex() += (1.0 - kappa * std::pow(std::abs(u.vertex()), 2.0 * p)) * w.vertex();
    auto gd = g.raw();
    auto ud = u.raw();
    auto wd = w.raw();
    for (std::size_t i = 0; i < wd.size(); ++i)
        gd[i] += (1.0 - kappa * std::pow(std::abs(ud[i]), 2.0 * p)) * wd[i];
    return g;
}

} // namespace

TransverseMinimum ActionLandscape::transverse_minimizer(const std::vector<double>& c, double tol) const {
    if (static_cast<int>(c.size()) != num_edges_ - 1)
        throw DimensionError("transverse_minimizer: coefficient size mismatch");
    double cnorm = 0.0;
    for (double x : c) cnorm += x * x;
    cnorm = std::sqrt(cnorm);
    if (cnorm > 0.1) throw DomainError("transverse_minimizer: ||c|| <= 0.1 required (small-data regime)");

    RealField base = phi_;
    for (std::size_t j = 0; j < basis_.modes.size(); ++j)
        base.axpy(c[j], basis_.modes[j]);

    RealField u_perp(grid_);
    auto residual = [&](const RealField& up) {
        RealField u = base;
        u += up;
        RealField r = half_gradient(u, p_);
        project_out_constraints(r);
        return r;
    };

    RealField r = residual(u_perp);
    double rnorm = l2_norm(r);
    int iters = 0;
    while (rnorm > tol) {
        if (++iters > 50) throw SolverError("transverse_minimizer: Newton did not converge in 50 iterations");
        RealField u = base;
        u += u_perp;
        // CG on the projected linearized operator
        RealField delta(grid_);
        RealField cg_r = r; // solving J delta = -r, start delta = 0 -> residual = -(-r)?? use b = -r
        cg_r *= -1.0;
        RealField cg_p = cg_r;
        double rs = l2_inner(cg_r, cg_r);
        const double cg_tol = std::max(1e-13, 1e-4 * rnorm);
        for (int it = 0; it < 4000 && std::sqrt(rs) > cg_tol; ++it) {
            RealField ap = linearized_at(u, cg_p, p_);
            project_out_constraints(ap);
            const double alpha = rs / l2_inner(cg_p, ap);
            delta.axpy(alpha, cg_p);
            cg_r.axpy(-alpha, ap);
            const double rs_new = l2_inner(cg_r, cg_r);
            cg_p *= rs_new / rs;
            cg_p += cg_r;
            rs = rs_new;
        }
        // damped update
        double step = 1.0;
        for (int back = 0; back < 8; ++back) {
            RealField trial = u_perp;
            trial.axpy(step, delta);
            RealField rt = residual(trial);
            const double rtn = l2_norm(rt);
            if (rtn < rnorm || back == 7) {
                u_perp = std::move(trial);
                r = std::move(rt);
                rnorm = rtn;
                break;
            }
            step *= 0.5;
        }
    }

    RealField u = base;
    u += u_perp;
    TransverseMinimum out{std::move(u_perp), action_lambda(u, p_) - lambda_phi_, iters};
    return out;
}

std::pair<std::vector<double>, std::vector<double>> ActionLandscape::saddle_witness(double t) const {
    const int d = num_edges_ - 1;
    std::vector<double> plus(static_cast<std::size_t>(d), 0.0), minus = plus;
    // diagonal tensor entry of the last mode is positive for j >= 2, so
    // M0(t e_last) = -(2/3) p(p+1)(2p+1) T_ddd t^3 < 0 for t > 0
    plus[static_cast<std::size_t>(d - 1)] = -t;
    minus[static_cast<std::size_t>(d - 1)] = t;
    const double m_plus = transverse_minimizer(plus).M;
    const double m_minus = transverse_minimizer(minus).M;
    if (!(m_plus > 0.0 && m_minus < 0.0))
        throw InconsistencyError("saddle_witness: sign pattern of M(c) not realized");
    return {plus, minus};
}

} // namespace graphnls
