#include "graphnls/evolution.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace graphnls {

NlsStepper::NlsStepper(const StarGraphGrid& grid, const EvolutionConfig& cfg)
    : grid_(grid), cfg_(cfg) {
    cfg_.validate();
    const double h2 = grid.h() * grid.h();
    const std::size_t m = grid.interior_size();
    diag_ = cplx(0.0, 1.0 / cfg_.dt) - 1.0 / h2;
    off_ = 1.0 / (2.0 * h2);
    cprime_.resize(m);
    inv_den_.resize(m);
    cplx den = diag_;
    inv_den_[0] = 1.0 / den;
    cprime_[0] = off_ * inv_den_[0];
    for (std::size_t k = 1; k < m; ++k) {
        den = diag_ - off_ * cprime_[k - 1];
        inv_den_[k] = 1.0 / den;
        cprime_[k] = off_ * inv_den_[k];
    }
    // q = T^{-1} ((1/(2h^2)) e_1)
    q_.assign(m, cplx(0.0));
    q_[0] = off_ * inv_den_[0];
    for (std::size_t k = 1; k < m; ++k) q_[k] = (0.0 - off_ * q_[k - 1]) * inv_den_[k];
    for (std::size_t k = m - 1; k-- > 0;) q_[k] -= cprime_[k] * q_[k + 1];
    // vertex closure: (i/dt - 1/h^2) v + (1/h^2) mean_j u_{j,1} = r_v with
    // u_{j,1} = (T^{-1} r_j)_1 - v q_1
    closure_den_ = diag_ - q_[0] * (1.0 / h2);
}

void NlsStepper::solve_edges(const GraphField& rhs, cplx rhs_vertex, GraphField& out) const {
    const int N = grid_.num_edges();
    const std::size_t m = grid_.interior_size();
    const double h2 = grid_.h() * grid_.h();
    // forward sweeps: out holds T^{-1} rhs per edge
    cplx mean_first(0.0);
    for (int j = 0; j < N; ++j) {
        auto r = rhs.edge(j);
        auto u = out.edge(j);
        u[0] = r[0] * inv_den_[0];
        for (std::size_t k = 1; k < m; ++k) u[k] = (r[k] - off_ * u[k - 1]) * inv_den_[k];
        for (std::size_t k = m - 1; k-- > 0;) u[k] -= cprime_[k] * u[k + 1];
        mean_first += u[0];
    }
    mean_first *= 1.0 / static_cast<double>(N);
    const cplx v = (rhs_vertex - mean_first * (1.0 / h2)) / closure_den_;
    out.vertex() = v;
    for (int j = 0; j < N; ++j) {
        auto u = out.edge(j);
        kern::caxpy(-v, q_.data(), u.data(), m);
    }
}

GraphField NlsStepper::step(const GraphField& psi) const {
    const int N = grid_.num_edges();
    const std::size_t m = grid_.interior_size();
    const double p = cfg_.p; // |.|^{2p} evaluated as (|.|^2)^p

    // constant part of the right-hand side: (i/dt) psi + (1/2)(-Delta) psi
    GraphField lap = apply_hamiltonian(psi);
    GraphField rhs_lin(grid_);
    const cplx idt(0.0, 1.0 / cfg_.dt);
    {
        auto l = lap.raw();
        auto s = psi.raw();
        auto r = rhs_lin.raw();
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = idt * s[i] + 0.5 * l[i];
        rhs_lin.vertex() = idt * psi.vertex() + 0.5 * lap.vertex();
    }

    std::vector<double> a2p_old(m * static_cast<std::size_t>(N));
    {
        auto s = psi.raw();
        kern::abs_sq(s.data(), a2p_old.data(), s.size());
        if (p != 1.0)
            for (auto& x : a2p_old) x = std::pow(x, p);
    }
    double a2p_old_v = std::norm(psi.vertex());
    if (p != 1.0) a2p_old_v = std::pow(a2p_old_v, p);

    GraphField next = psi;
    GraphField rhs(grid_);
    GraphField candidate(grid_);
    std::vector<double> a2p_new(m * static_cast<std::size_t>(N));

    for (int it = 0; it < cfg_.max_fixed_point_iters; ++it) {
        if (cfg_.linear_only) {
            rhs = rhs_lin;
        } else {
            auto s = next.raw();
            kern::abs_sq(s.data(), a2p_new.data(), s.size());
            if (p != 1.0)
                for (auto& x : a2p_new) x = std::pow(x, p);
            auto r = rhs.raw();
            auto rl = rhs_lin.raw();
            auto old = psi.raw();
            const double fac = -(p + 1.0) * 0.25; // (p+1) * (mean of |.|^{2p}) * midpoint
            for (std::size_t i = 0; i < r.size(); ++i)
                r[i] = rl[i] + fac * (a2p_new[i] + a2p_old[i]) * (s[i] + old[i]);
            double a2p_new_v = std::norm(next.vertex());
            if (p != 1.0) a2p_new_v = std::pow(a2p_new_v, p);
            rhs.vertex() = rhs_lin.vertex() +
                           fac * (a2p_new_v + a2p_old_v) * (next.vertex() + psi.vertex());
        }
        solve_edges(rhs, rhs.vertex(), candidate);
        // L2 distance between successive iterates
        double diff2 = std::norm(candidate.vertex() - next.vertex()) * grid_.num_edges() * 0.5;
        {
            auto a = candidate.raw();
            auto b = next.raw();
            double s = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
            diff2 += s;
        }
        diff2 *= grid_.h();
        std::swap(next, candidate);
        if (cfg_.linear_only || std::sqrt(diff2) <= cfg_.solver_tol) return next;
    }
    throw SolverError("NlsStepper::step: fixed-point iteration did not reach solver_tol; reduce dt");
}

double discrete_energy(const GraphField& psi, double p) {
    return dirichlet_energy(psi) - lp_integral(psi, 2.0 * p + 2.0);
}

Trajectory run(const GraphField& psi0, const EvolutionConfig& cfg_in, const RealField* orbit_reference) {
    EvolutionConfig cfg = cfg_in;
    cfg.validate();
    if (cfg.p >= 2.0) {
        std::fprintf(stderr,
                     "graphnls: warning: p = %.3f is in the critical/supercritical regime; "
                     "capping t_end at %.3f\n",
                     cfg.p, cfg.supercritical_time_cap);
        cfg.t_end = std::min(cfg.t_end, cfg.supercritical_time_cap);
    }
    const StarGraphGrid& grid = psi0.grid();
    RealField phi_ref = orbit_reference != nullptr ? *orbit_reference
                                                   : half_soliton(cfg.p < 2.0 ? cfg.p : 1.0, 1.0, grid).field;
    NlsStepper stepper(grid, cfg);

    Trajectory tr;
    tr.p = cfg.p;
    tr.dt = cfg.dt;
    const long nsteps = std::lround(std::ceil(cfg.t_end / cfg.dt - 1e-12));
    auto record = [&](double t, const GraphField& psi) {
        tr.times.push_back(t);
        tr.energy.push_back(discrete_energy(psi, cfg.p));
        tr.mass.push_back(l2_inner(psi, psi).real());
        tr.dist_orbit.push_back(distance_to_orbit(psi, phi_ref));
        if (cfg.store_snapshots) {
            tr.snapshot_times.push_back(t);
            tr.snapshots.push_back(psi);
        }
    };
    GraphField psi = psi0;
    record(0.0, psi);
    for (long n = 0; n < nsteps; ++n) {
        try {
            psi = stepper.step(psi);
        } catch (const SolverError&) {
            tr.step_failed = true;
            tr.failure_time = n * cfg.dt;
            break;
        }
        if ((n + 1) % cfg.stride == 0 || n + 1 == nsteps) record((n + 1) * cfg.dt, psi);
    }
    return tr;
}

std::string observables_to_csv(const Trajectory& tr) {
    std::ostringstream os;
    os << "t,E,Q,dist_orbit\n";
    os.precision(15);
    for (std::size_t i = 0; i < tr.times.size(); ++i)
        os << tr.times[i] << ',' << tr.energy[i] << ',' << tr.mass[i] << ',' << tr.dist_orbit[i]
           << '\n';
    return os.str();
}

} // namespace graphnls
