#include "graphnls/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "graphnls/csv.hpp"

namespace graphnls {

namespace {

using clock_type = std::chrono::steady_clock;

std::string manifest_text(const ExperimentConfig& cfg, double elapsed_s) {
    std::ostringstream os;
    os << "# graphnls run manifest (not part of the deterministic outputs)\n";
    os << "version = 1.0.0\n";
    os << "kernel_backend = " << kern::backend_name() << '\n';
    os << "elapsed_seconds = " << elapsed_s << '\n';
    os << "# config echo\n" << cfg.echo();
    return os.str();
}

struct Timer {
    clock_type::time_point t0 = clock_type::now();
    double seconds() const { return std::chrono::duration<double>(clock_type::now() - t0).count(); }
};

std::vector<double> direction_or_default(const ExperimentConfig& cfg) {
    if (!cfg.direction.empty()) return cfg.direction;
    std::vector<double> d(static_cast<std::size_t>(cfg.N - 1), 0.0);
    d.back() = 1.0; // the provably unstable scalar reduction uses the last mode
    return d;
}

double vec_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// first time the series of (t, value) crosses above the threshold
std::optional<double> first_crossing(const std::vector<double>& t, const std::vector<double>& v,
                                     double threshold) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] > threshold) return t[i];
    return std::nullopt;
}

std::string snapshot_csv(const GraphField& f) {
    std::ostringstream os;
    os << "edge,x,re,im\n";
    os.precision(15);
    const auto& gr = f.grid();
    for (int j = 0; j < gr.num_edges(); ++j) {
        for (int k = 0; k <= gr.points_per_edge(); ++k) {
            const cplx z = f.value(j, k);
            os << j + 1 << ',' << gr.x(k) << ',' << z.real() << ',' << z.imag() << '\n';
        }
    }
    return os.str();
}

} // namespace

namespace {

// instability-type experiments live in the subcritical normal-form regime
void require_instability_regime(const ExperimentConfig& cfg) {
    if (!(cfg.p >= 0.5 && cfg.p < 2.0))
        throw DomainError("instability experiments require p in [1/2, 2)");
}

} // namespace

int worker_count(int jobs) {
    int cap = static_cast<int>(std::thread::hardware_concurrency());
    if (cap < 1) cap = 1;
    if (const char* env = std::getenv("GRAPHNLS_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) cap = v;
    }
    return std::min(cap, std::max(1, jobs));
}

InstabilityResult run_instability(const ExperimentConfig& cfg, double epsilon, double delta) {
    StarGraphGrid grid(cfg.N, cfg.L, cfg.M);
    RealField phi = half_soliton(cfg.p, 1.0, grid).field;
    NeutralModeBasis basis = neutral_basis(cfg.p, cfg.N, 1.0, grid);

    std::vector<double> dir = direction_or_default(cfg);
    RealField d(grid);
    for (std::size_t j = 0; j < basis.modes.size(); ++j)
        if (dir[j] != 0.0) d.axpy(dir[j], basis.modes[j]);
    const double dn = h1_norm(d);
    if (!(dn > 0.0)) throw DomainError("instability: direction produced a zero perturbation");
    d *= 1.0 / dn;
    // pre-projection per the initial-data constraints; the kernel modes are
    // already orthogonal to Phi, so this only strips roundoff
    d.axpy(-l2_inner(phi, d) / l2_inner(phi, phi), phi);

    RealField u0 = phi;
    u0.axpy(delta, d);
    GraphField psi0 = to_complex(u0);
    if (cfg.seed_phase != 0.0) psi0 *= std::polar(1.0, cfg.seed_phase);

    EvolutionConfig ecfg;
    ecfg.p = cfg.p;
    ecfg.dt = cfg.dt;
    ecfg.t_end = cfg.t_end;
    ecfg.solver_tol = cfg.solver_tol;
    ecfg.max_fixed_point_iters = cfg.max_fixed_point_iters;
    ecfg.stride = cfg.stride;
    ecfg.store_snapshots = true;

    InstabilityResult res;
    res.trajectory = run(psi0, ecfg, &phi);
    res.series = track(res.trajectory, cfg.p, cfg.seed_phase, 1.0);
    res.crossing_time = first_crossing(res.trajectory.times, res.trajectory.dist_orbit, epsilon);
    res.exit_time = res.series.exit_time;
    return res;
}

int cmd_spectrum(const ExperimentConfig& cfg) {
    Timer timer;
    cfg.validate();
    ensure_dir(cfg.out);
    PointSpectrum spec = find_point_spectrum(cfg.p, cfg.N);
    write_file(cfg.out + "/spectrum.csv", spectrum_to_csv(spec));
    std::ostringstream sum;
    sum.precision(10);
    sum << "point spectrum of L+ on the star graph, p = " << cfg.p << ", N = " << cfg.N << "\n";
    for (const auto& e : spec.eigenvalues)
        sum << "  lambda = " << e.lambda << "  ("
            << (e.kind == EigKind::EvenType ? "even, u'(0) = 0" : "odd, u(0) = 0")
            << ", multiplicity " << e.multiplicity << ", " << e.nodes << " interior nodes)\n";
    write_file(cfg.out + "/summary.txt", sum.str());
    write_file(cfg.out + "/manifest.txt", manifest_text(cfg, timer.seconds()));
    return 0;
}

int cmd_reduced(const ExperimentConfig& cfg) {
    Timer timer;
    cfg.validate();
    require_instability_regime(cfg);
    ensure_dir(cfg.out);
    StarGraphGrid grid(cfg.N, cfg.L, cfg.M);
    ReducedSystem sys = ReducedSystem::build(cfg.p, cfg.N, grid);

    std::vector<double> dir = direction_or_default(cfg);
    const double dn = vec_norm(dir);
    ReducedState s0;
    s0.gamma.assign(static_cast<std::size_t>(cfg.N - 1), 0.0);
    s0.beta.assign(static_cast<std::size_t>(cfg.N - 1), 0.0);
    for (std::size_t j = 0; j < s0.gamma.size(); ++j)
        s0.gamma[j] = cfg.delta_scale * cfg.epsilon * dir[j] / dn;

    const int stride = std::max(1, static_cast<int>(std::lround(cfg.dt * cfg.stride / cfg.dt_reduced)));
    ReducedTrajectory tr = integrate_reduced(s0, sys, cfg.dt_reduced, cfg.t_end, stride);
    write_file(cfg.out + "/reduced.csv", reduced_to_csv(tr, cfg.N - 1));
    write_file(cfg.out + "/tensor.csv", tensor_to_csv(sys.tensor()));

    std::ostringstream sum;
    sum.precision(10);
    std::optional<double> t0;
    for (const auto& s : tr.samples)
        if (vec_norm(s.gamma) > cfg.epsilon) {
            t0 = s.t;
            break;
        }
    sum << "reduced run: p = " << cfg.p << ", N = " << cfg.N << ", epsilon = " << cfg.epsilon
        << ", ||gamma(0)|| = " << cfg.delta_scale * cfg.epsilon << "\n";
    if (t0) sum << "escape time (||gamma|| > epsilon): " << *t0 << "\n";
    else sum << "no escape by t_end = " << cfg.t_end << "\n";
    double h_drift = 0.0;
    for (const auto& s : tr.samples) h_drift = std::max(h_drift, std::abs(s.h0 - tr.samples[0].h0));
    sum << "max |H0(t) - H0(0)| = " << h_drift << "\n";
    write_file(cfg.out + "/summary.txt", sum.str());
    write_file(cfg.out + "/manifest.txt", manifest_text(cfg, timer.seconds()));
    return 0;
}

int cmd_instability(const ExperimentConfig& cfg) {
    Timer timer;
    cfg.validate();
    require_instability_regime(cfg);
    ensure_dir(cfg.out);
    const double delta = cfg.delta(cfg.epsilon);
    InstabilityResult res = run_instability(cfg, cfg.epsilon, delta);

    write_file(cfg.out + "/observables.csv", observables_to_csv(res.trajectory));
    write_file(cfg.out + "/modulation.csv", modulation_to_csv(res.series));
    for (double ts : cfg.snapshot_times) {
        // nearest stored snapshot
        std::size_t best = 0;
        for (std::size_t i = 0; i < res.trajectory.snapshot_times.size(); ++i)
            if (std::abs(res.trajectory.snapshot_times[i] - ts) <
                std::abs(res.trajectory.snapshot_times[best] - ts))
                best = i;
        std::ostringstream name;
        name << cfg.out << "/snapshot_t" << res.trajectory.snapshot_times[best] << ".csv";
        write_file(name.str(), snapshot_csv(res.trajectory.snapshots[best]));
    }

    std::ostringstream rep;
    rep.precision(10);
    rep << "instability run: p = " << cfg.p << ", N = " << cfg.N << ", epsilon = " << cfg.epsilon
        << ", delta = " << delta << "\n";
    if (res.crossing_time)
        rep << "distance_to_orbit crossed epsilon at t0 = " << *res.crossing_time << "\n";
    else
        rep << "no escape by t_end = " << cfg.t_end << "\n";
    if (res.exit_time) rep << "decomposition exit at t = " << *res.exit_time << "\n";
    if (res.trajectory.step_failed)
        rep << "step failure at t = " << *res.trajectory.failure_time << " (partial outputs kept)\n";
    write_file(cfg.out + "/report.txt", rep.str());
    write_file(cfg.out + "/manifest.txt", manifest_text(cfg, timer.seconds()));

    if (res.trajectory.step_failed) return 2;
    if (cfg.assert_escape && !res.crossing_time) return 1;
    return 0;
}

int cmd_compare(const ExperimentConfig& cfg) {
    Timer timer;
    cfg.validate();
    require_instability_regime(cfg);
    ensure_dir(cfg.out);
    const double delta = cfg.delta(cfg.epsilon);
    InstabilityResult res = run_instability(cfg, cfg.epsilon, delta);
    if (res.series.samples.empty()) {
        write_file(cfg.out + "/report.txt", "modulation tracking failed at t = 0\n");
        return 2;
    }

    StarGraphGrid grid(cfg.N, cfg.L, cfg.M);
    ReducedSystem sys = ReducedSystem::build(cfg.p, cfg.N, grid);
    ReducedState s0{res.series.samples[0].c, res.series.samples[0].b, 0.0};
    const double sample_dt = cfg.dt * cfg.stride;
    const int k = std::max(1, static_cast<int>(std::lround(sample_dt / cfg.dt_reduced)));
    ReducedTrajectory rtr = integrate_reduced(s0, sys, sample_dt / k, cfg.t_end, k);

    // windows: stop at PDE crossing/exit and at reduced escape
    double window = cfg.t_end;
    if (res.crossing_time) window = std::min(window, *res.crossing_time);
    if (res.exit_time) window = std::min(window, *res.exit_time);
    for (const auto& s : rtr.samples)
        if (vec_norm(s.gamma) > cfg.epsilon) {
            window = std::min(window, s.t);
            break;
        }

    std::ostringstream os;
    const int d = cfg.N - 1;
    os << 't';
    for (int j = 1; j <= d; ++j) os << ",c_" << j;
    for (int j = 1; j <= d; ++j) os << ",gamma_" << j;
    for (int j = 1; j <= d; ++j) os << ",b_" << j;
    for (int j = 1; j <= d; ++j) os << ",beta_" << j;
    os << ",diff_c,diff_b\n";
    os.precision(15);
    double sup_c = 0.0, sup_b = 0.0;
    const std::size_t n = std::min(res.series.samples.size(), rtr.samples.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto& ms = res.series.samples[i];
        const auto& rs = rtr.samples[i];
        if (ms.t > window + 1e-12) break;
        double dc = 0.0, db = 0.0;
        for (int j = 0; j < d; ++j) {
            dc += (ms.c[static_cast<std::size_t>(j)] - rs.gamma[static_cast<std::size_t>(j)]) *
                  (ms.c[static_cast<std::size_t>(j)] - rs.gamma[static_cast<std::size_t>(j)]);
            db += (ms.b[static_cast<std::size_t>(j)] - rs.beta[static_cast<std::size_t>(j)]) *
                  (ms.b[static_cast<std::size_t>(j)] - rs.beta[static_cast<std::size_t>(j)]);
        }
        dc = std::sqrt(dc);
        db = std::sqrt(db);
        sup_c = std::max(sup_c, dc);
        sup_b = std::max(sup_b, db);
        os << ms.t;
        for (double v : ms.c) os << ',' << v;
        for (double v : rs.gamma) os << ',' << v;
        for (double v : ms.b) os << ',' << v;
        for (double v : rs.beta) os << ',' << v;
        os << ',' << dc << ',' << db << '\n';
    }
    write_file(cfg.out + "/compare.csv", os.str());

    std::ostringstream rep;
    rep.precision(10);
    rep << "matched-initial-data comparison, p = " << cfg.p << ", N = " << cfg.N
        << ", epsilon = " << cfg.epsilon << ", delta = " << delta << "\n";
    rep << "window = [0, " << window << "]\n";
    rep << "sup ||c - gamma|| = " << sup_c << "\n";
    rep << "sup ||b - beta||  = " << sup_b << "\n";
    write_file(cfg.out + "/report.txt", rep.str());
    write_file(cfg.out + "/manifest.txt", manifest_text(cfg, timer.seconds()));
    return 0;
}

int cmd_sweep(const ExperimentConfig& cfg) {
    Timer timer;
    cfg.validate();
    require_instability_regime(cfg);
    if (cfg.eps_list.size() < 3) throw DomainError("sweep: at least 3 epsilon values required");
    ensure_dir(cfg.out);

    struct SweepRow {
        double eps;
        std::optional<double> t0_reduced;
        std::optional<double> t0_pde;
    };
    std::vector<SweepRow> rows(cfg.eps_list.size());

    StarGraphGrid grid(cfg.N, cfg.L, cfg.M);
    ReducedSystem sys = ReducedSystem::build(cfg.p, cfg.N, grid);

    const int workers = worker_count(static_cast<int>(cfg.eps_list.size()));
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cfg.eps_list.size()) return;
            const double eps = cfg.eps_list[i];
            rows[i].eps = eps;
            try {
                EscapeOptions eopts;
                eopts.dt = cfg.dt_reduced;
                eopts.delta_scale = cfg.delta_scale;
                rows[i].t0_reduced = escape_time(sys, eps, eopts);
            } catch (const SolverError&) {
                rows[i].t0_reduced = std::nullopt; // censored
            }
            ExperimentConfig sub = cfg;
            sub.epsilon = eps;
            InstabilityResult res = run_instability(sub, eps, cfg.delta(eps));
            rows[i].t0_pde = res.crossing_time;
        }
    };
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();

    std::ostringstream red, pde;
    red << "eps,t0,censored\n";
    pde << "eps,t0,censored\n";
    red.precision(15);
    pde.precision(15);
    std::vector<double> lx_r, ly_r, lx_p, ly_p;
    for (const auto& r : rows) {
        red << r.eps << ',' << (r.t0_reduced ? *r.t0_reduced : 0.0) << ',' << (r.t0_reduced ? 0 : 1)
            << '\n';
        pde << r.eps << ',' << (r.t0_pde ? *r.t0_pde : 0.0) << ',' << (r.t0_pde ? 0 : 1) << '\n';
        if (r.t0_reduced) {
            lx_r.push_back(std::log(r.eps));
            ly_r.push_back(std::log(*r.t0_reduced));
        }
        if (r.t0_pde) {
            lx_p.push_back(std::log(r.eps));
            ly_p.push_back(std::log(*r.t0_pde));
        }
    }
    write_file(cfg.out + "/sweep_reduced.csv", red.str());
    write_file(cfg.out + "/sweep_pde.csv", pde.str());

    std::ostringstream rep;
    rep.precision(10);
    bool slopes_ok = true;
    rep << "escape-time scaling fits (log t0 vs log eps)\n";
    if (lx_r.size() >= 2) {
        const double s = fit_slope(lx_r, ly_r);
        rep << "reduced slope = " << s << " (" << lx_r.size() << " points)\n";
        if (cfg.assert_slope && std::abs(s - cfg.slope_target) > cfg.slope_tol) slopes_ok = false;
    } else {
        rep << "reduced slope: insufficient uncensored points\n";
        slopes_ok = slopes_ok && !cfg.assert_slope;
    }
    if (lx_p.size() >= 2) {
        const double s = fit_slope(lx_p, ly_p);
        rep << "pde slope = " << s << " (" << lx_p.size() << " points)\n";
        if (cfg.assert_slope && std::abs(s - cfg.slope_target) > cfg.slope_tol) slopes_ok = false;
    } else {
        rep << "pde slope: insufficient uncensored points\n";
        slopes_ok = slopes_ok && !cfg.assert_slope;
    }
    write_file(cfg.out + "/fit_report.txt", rep.str());
    write_file(cfg.out + "/manifest.txt", manifest_text(cfg, timer.seconds()));
    return slopes_ok ? 0 : 1;
}

} // namespace graphnls
