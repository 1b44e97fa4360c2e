#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "graphnls/experiments.hpp"
#include "test_support.hpp"

using namespace graphnls;

namespace {

Trajectory synthetic_orbit(const RealField& phi, double t_end, double dt_sample) {
    Trajectory tr;
    tr.p = 1.0;
    tr.dt = dt_sample;
    const int n = static_cast<int>(std::lround(t_end / dt_sample));
    for (int i = 0; i <= n; ++i) {
        const double t = i * dt_sample;
        GraphField f = to_complex(phi);
        f *= std::polar(1.0, t);
        tr.times.push_back(t);
        tr.energy.push_back(discrete_energy(f, 1.0));
        tr.mass.push_back(l2_inner(f, f).real());
        tr.dist_orbit.push_back(0.0);
        tr.snapshot_times.push_back(t);
        tr.snapshots.push_back(std::move(f));
    }
    return tr;
}

} // namespace

TEST_CASE("primary decomposition of an exact modulated state") {
    StarGraphGrid grid(3, 30.0, 600);
    auto st = half_soliton(1.0, 1.05, grid);
    GraphField psi = to_complex(st.field);
    psi *= std::polar(1.0, 0.1);
    auto frame = decompose_primary(psi, 1.0, 0.0, 1.0);
    CHECK(frame.theta == doctest::Approx(0.1).epsilon(1e-10));
    CHECK(frame.omega == doctest::Approx(1.05).epsilon(1e-10));
    CHECK(h1_norm(frame.u) <= 1e-10);
    CHECK(h1_norm(frame.w) <= 1e-10);
}

TEST_CASE("primary decomposition of a kernel-direction perturbation") {
    StarGraphGrid grid(3, 30.0, 600);
    auto st = half_soliton(1.0, 1.0, grid);
    auto nb = neutral_basis(1.0, 3, 1.0, grid);
    RealField re = st.field;
    re.axpy(0.01, nb.modes[0]);
    GraphField psi = to_complex(re);
    auto frame = decompose_primary(psi, 1.0, 0.0, 1.0);
    CHECK(std::abs(frame.theta) <= 1e-10);
    CHECK(frame.omega == doctest::Approx(1.0).epsilon(1e-10));
    RealField diff = frame.u;
    diff.axpy(-0.01, nb.modes[0]);
    CHECK(h1_norm(diff) <= 1e-10);
    CHECK(h1_norm(frame.w) <= 1e-10);
}

TEST_CASE("round trip and gauge equivariance on random perturbations") {
    StarGraphGrid grid(3, 30.0, 600);
    auto st = half_soliton(1.0, 1.0, grid);
    std::mt19937 rng(19);
    for (int i = 0; i < 5; ++i) {
        GraphField psi = to_complex(st.field);
        GraphField pert = graphnls::test::random_smooth_complex(grid, rng);
        pert *= 0.02 / h1_norm(pert);
        psi += pert;
        auto frame = decompose_primary(psi, 1.0, 0.0, 1.0);
        CHECK(frame.res_primary <= 1e-10);
        GraphField re = assemble_frame(1.0, frame.theta, frame.omega, frame.u, frame.w);
        re -= psi;
        CHECK(h1_norm(re) <= 1e-12 * (1.0 + h1_norm(psi)));

        const double alpha = 0.77;
        GraphField rot = psi;
        rot *= std::polar(1.0, alpha);
        auto frame2 = decompose_primary(rot, 1.0, alpha, 1.0);
        CHECK(frame2.theta == doctest::Approx(frame.theta + alpha).epsilon(1e-10));
        CHECK(frame2.omega == doctest::Approx(frame.omega).epsilon(1e-10));
        RealField du = frame2.u;
        du -= frame.u;
        CHECK(h1_norm(du) <= 1e-10);
    }
}

TEST_CASE("secondary decomposition projects onto the dual pairs") {
    StarGraphGrid grid(3, 30.0, 600);
    auto nb = neutral_basis(1.0, 3, 1.0, grid);
    RealField u(grid);
    u.axpy(0.03, nb.modes[1]);
    RealField w(grid);
    auto sec = decompose_secondary(u, w, nb);
    CHECK(std::abs(sec.c[0]) <= 1e-14);
    CHECK(sec.c[1] == doctest::Approx(0.03).epsilon(1e-12));
    CHECK(std::abs(sec.b[0]) <= 1e-14);
    CHECK(std::abs(sec.b[1]) <= 1e-14);
    CHECK(h1_norm(sec.u_perp) <= 1e-12);

    RealField w2(grid);
    w2.axpy(0.02, nb.generalized[0]);
    auto sec2 = decompose_secondary(RealField(grid), w2, nb);
    CHECK(sec2.b[0] == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(std::abs(sec2.b[1]) <= 1e-14);
    CHECK(h1_norm(sec2.w_perp) <= 1e-12);

    // Phi-direction contamination stays in the remainder
    auto st = half_soliton(1.0, 1.0, grid);
    RealField u3(grid);
    u3.axpy(0.01, st.field);
    auto sec3 = decompose_secondary(u3, RealField(grid), nb);
    CHECK(std::abs(sec3.c[0]) <= 1e-14);
    CHECK(std::abs(sec3.c[1]) <= 1e-14);
    RealField diff = sec3.u_perp;
    diff.axpy(-0.01, st.field);
    CHECK(h1_norm(diff) <= 1e-12);
    CHECK(sec3.res_secondary <= 1e-10);
}

TEST_CASE("track on the exact stationary orbit") {
    StarGraphGrid grid(3, 30.0, 600);
    auto st = half_soliton(1.0, 1.0, grid);
    auto tr = synthetic_orbit(st.field, 5.0, 0.05);
    auto series = track(tr, 1.0);
    REQUIRE(!series.exit_time.has_value());
    for (const auto& s : series.samples) {
        CHECK(std::abs(s.omega - 1.0) <= 1e-8);
        for (double c : s.c) CHECK(std::abs(c) <= 1e-8);
        for (double b : s.b) CHECK(std::abs(b) <= 1e-8);
        CHECK(s.norm_u_perp <= 1e-8);
        CHECK(std::abs(s.delta_lhs) <= 1e-8);
    }
    // theta is tracked continuously: theta(t) = t
    const auto& last = series.samples.back();
    CHECK(last.theta == doctest::Approx(5.0).epsilon(1e-9));
    auto rate = parameter_rate_check(series);
    CHECK(rate.sup_theta_mismatch <= 1e-6);
    CHECK(rate.sup_omega_dot <= 1e-8);
}

TEST_CASE("track through the PDE on the discrete stationary state") {
    StarGraphGrid grid(3, 30.0, 1200);
    RealField phi_h = discrete_half_soliton(1.0, 1.0, grid);
    EvolutionConfig cfg;
    cfg.p = 1.0;
    cfg.dt = 0.005;
    cfg.t_end = 5.0;
    cfg.stride = 20;
    auto tr = run(to_complex(phi_h), cfg);
    auto series = track(tr, 1.0);
    REQUIRE(!series.exit_time.has_value());
    const double om0 = series.samples[0].omega;
    CHECK(std::abs(om0 - 1.0) <= 5e-4); // sampled-family offset is O(h^2)
    for (const auto& s : series.samples) {
        for (double c : s.c) CHECK(std::abs(c) <= 1e-12); // exact edge symmetry
        CHECK(std::abs(s.omega - om0) <= 1e-10);
    }
}

TEST_CASE("track on an unstable run: growth and energy identity") {
    ExperimentConfig cfg;
    cfg.p = 1.0;
    cfg.N = 3;
    cfg.M = 600;
    cfg.t_end = 30.0;
    cfg.stride = 10;
    cfg.epsilon = 0.05;
    auto res = run_instability(cfg, 0.05, std::pow(0.05, 1.5));
    REQUIRE(res.series.samples.size() > 100);
    // ||c|| exceeds eps/2 before t = 30 and grows monotonically after transients
    bool crossed = false;
    double prev = 0.0;
    int decreases = 0;
    for (const auto& s : res.series.samples) {
        double cn = 0.0;
        for (double c : s.c) cn += c * c;
        cn = std::sqrt(cn);
        if (s.t > 1.0 && cn < prev) ++decreases;
        prev = cn;
        if (cn > 0.025 && s.t < 30.0) crossed = true;
    }
    CHECK(crossed);
    CHECK(decreases == 0);

    StarGraphGrid grid(3, 30.0, 600);
    auto sys = ReducedSystem::build(1.0, 3, grid);
    auto budget = energy_budget(res.series, sys);
    CHECK(budget.max_identity_mismatch <= 1e-6);
    CHECK(budget.max_remainder_ratio <= 10.0);
}

TEST_CASE("remainder ratio stays bounded across epsilon") {
    StarGraphGrid grid(3, 30.0, 600);
    auto sys = ReducedSystem::build(1.0, 3, grid);
    for (double eps : {0.025, 0.05, 0.1}) {
        ExperimentConfig cfg;
        cfg.p = 1.0;
        cfg.N = 3;
        cfg.M = 600;
        cfg.t_end = 40.0;
        cfg.stride = 20;
        cfg.epsilon = eps;
        auto res = run_instability(cfg, eps, std::pow(eps, 1.5));
        auto budget = energy_budget(res.series, sys);
        CHECK(budget.max_remainder_ratio <= 10.0);
        CHECK(budget.max_identity_mismatch <= 1e-6);
    }
}

TEST_CASE("parameter rates scale quadratically with the perturbation") {
    StarGraphGrid grid(3, 30.0, 1200);
    RealField phi_h = discrete_half_soliton(1.0, 1.0, grid);
    RealField phi = half_soliton(1.0, 1.0, grid).field;
    auto nb = neutral_basis(1.0, 3, 1.0, grid);
    RealField ud = nb.modes[1];
    ud *= 1.0 / h1_norm(ud);
    RealField wd = nb.generalized[1];
    wd *= 1.0 / h1_norm(wd);
    std::vector<double> sup_th, sup_om, rate_th, rate_om;
    for (double del : {0.08, 0.04, 0.02}) {
        RealField re = phi_h;
        re.axpy(del / std::sqrt(2.0), ud);
        RealField im(grid);
        im.axpy(del / std::sqrt(2.0), wd);
        EvolutionConfig cfg;
        cfg.p = 1.0;
        cfg.dt = 0.005;
        cfg.t_end = 1.5;
        cfg.stride = 1;
        auto tr = run(to_complex(re, im), cfg, &phi);
        auto series = track(tr, 1.0);
        auto pr = parameter_rate_check(series);
        sup_th.push_back(pr.sup_theta_mismatch);
        sup_om.push_back(pr.sup_omega_dot);
        rate_th.push_back(pr.sup_theta_rate);
        rate_om.push_back(pr.sup_omega_rate);
    }
    for (int i = 0; i < 2; ++i) {
        CHECK(sup_th[i] / sup_th[i + 1] >= 2.5);
        CHECK(sup_th[i] / sup_th[i + 1] <= 7.0);
        CHECK(sup_om[i] / sup_om[i + 1] >= 2.5);
        CHECK(sup_om[i] / sup_om[i + 1] <= 7.0);
    }
    // the normalized rates stay bounded across the 4x amplitude range
    for (double r : rate_th) CHECK(r <= 5.0);
    for (double r : rate_om) CHECK(r <= 5.0);
}

TEST_CASE("short series is rejected") {
    ModulationSeries s;
    s.p = 1.0;
    s.num_edges = 3;
    s.samples.resize(5);
    CHECK_THROWS_AS((void)parameter_rate_check(s), DomainError);
}

TEST_CASE("series csv schema") {
    StarGraphGrid grid(3, 30.0, 600);
    auto st = half_soliton(1.0, 1.0, grid);
    auto tr = synthetic_orbit(st.field, 1.0, 0.1);
    auto series = track(tr, 1.0);
    const std::string csv = modulation_to_csv(series);
    CHECK(csv.find("t,theta,omega,c_1,c_2,b_1,b_2,norm_Uperp,norm_Wperp,res_primary,"
                   "res_secondary,Delta_lhs,Delta_rhs") == 0);
}
