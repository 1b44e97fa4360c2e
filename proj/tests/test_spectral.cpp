#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "graphnls/spectral.hpp"
#include "test_support.hpp"

using namespace graphnls;
using graphnls::test::max_abs;
using graphnls::test::random_smooth_field;

TEST_CASE("decaying solutions at the known p = 1 eigenvalues") {
    auto s0 = solve_decaying(1.0, 0.0, shooting_x_max(0.0));
    CHECK(std::abs(s0.u0) <= 1e-8);   // odd eigenfunction (1/2) tanh sech
    CHECK(s0.du0 == doctest::Approx(0.5).epsilon(1e-7));

    auto s3 = solve_decaying(1.0, -3.0, shooting_x_max(-3.0));
    CHECK(std::abs(s3.du0) <= 1e-8);  // even eigenfunction (1/4) sech^2
    CHECK(s3.u0 == doctest::Approx(0.25).epsilon(1e-7));
}

TEST_CASE("closed-form profile at lambda = 0.5") {
    const double lam = 0.5, kap = std::sqrt(1.0 - lam);
    auto s = solve_decaying(1.0, lam, shooting_x_max(lam));
    for (double x = 0.0; x <= 12.0; x += 0.31) {
        const double sech = 1.0 / std::cosh(x);
        const double exact = std::exp(-kap * x) *
                             (3.0 - lam + 3.0 * kap * std::tanh(x) - 3.0 * sech * sech) /
                             (3.0 - lam + 3.0 * kap);
        CHECK(std::abs(s.sample(x) - exact) <= 1e-7);
    }
}

TEST_CASE("no decaying solution at or above the continuum edge") {
    CHECK_THROWS_AS(solve_decaying(1.0, 1.0, 40.0), DomainError);
    CHECK_THROWS_AS(solve_decaying(1.0, 1.5, 40.0), DomainError);
}

TEST_CASE("point spectrum for p = 1") {
    auto spec = find_point_spectrum(1.0, 3);
    REQUIRE(spec.eigenvalues.size() == 2);
    CHECK(std::abs(spec.eigenvalues[0].lambda + 3.0) <= 1e-6);
    CHECK(spec.eigenvalues[0].kind == EigKind::EvenType);
    CHECK(spec.eigenvalues[0].multiplicity == 1);
    CHECK(std::abs(spec.eigenvalues[1].lambda) <= 1e-6);
    CHECK(spec.eigenvalues[1].kind == EigKind::OddType);
    CHECK(spec.eigenvalues[1].multiplicity == 2);

    auto spec5 = find_point_spectrum(1.0, 5);
    REQUIRE(spec5.eigenvalues.size() == 2);
    CHECK(spec5.eigenvalues[0].multiplicity == 1);
    CHECK(spec5.eigenvalues[1].multiplicity == 4);
}

TEST_CASE("sturm structure for p in {0.5, 1, 1.5}") {
    for (double p : {0.5, 1.0, 1.5}) {
        auto spec = find_point_spectrum(p, 3);
        int negative_even = 0;
        bool kernel = false;
        for (const auto& e : spec.eigenvalues) {
            CHECK(e.lambda < 1.0);
            if (e.lambda < -1e-6) {
                CHECK(e.kind == EigKind::EvenType);
                ++negative_even;
            } else if (std::abs(e.lambda) <= 1e-6) {
                CHECK(e.kind == EigKind::OddType);
                kernel = true;
            } else {
                CHECK(e.lambda >= 0.05); // bounded away from zero
            }
        }
        CHECK(negative_even == 1);
        CHECK(kernel);
    }
}

TEST_CASE("kernel mode is the soliton derivative (residual oracle)") {
    // phi'(x) = -sech^{1/p}(px) tanh(px) solves the shooting equation at
    // lambda = 0; check the discrete ODE residual at second order
    const double p = 0.5;
    for (double h : {0.01, 0.005}) {
        double worst = 0.0;
        for (double x = h; x <= 20.0; x += h) {
            auto phi_d = [&](double y) {
                return -std::pow(1.0 / std::cosh(p * y), 1.0 / p) * std::tanh(p * y);
            };
            const double upp = (phi_d(x - h) - 2.0 * phi_d(x) + phi_d(x + h)) / (h * h);
            const double pot = (2.0 * p + 1.0) * (p + 1.0) / std::cosh(p * x) / std::cosh(p * x);
            worst = std::max(worst, std::abs(-upp + phi_d(x) - pot * phi_d(x)));
        }
        CHECK(worst <= 2.0 * h * h); // |residual| <= C h^2
    }
}

TEST_CASE("neutral basis vectors and pairings") {
    StarGraphGrid grid(3, 30.0, 600);
    auto nb = neutral_basis(1.0, 3, 1.0, grid);
    REQUIRE(nb.vectors.size() == 2);
    CHECK(nb.vectors[0] == std::vector<double>{1.0, -1.0, 0.0});
    CHECK(nb.vectors[1] == std::vector<double>{1.0, 1.0, -2.0});
    // ||e_j||^2 = j (j+1)
    for (std::size_t j = 0; j < nb.vectors.size(); ++j) {
        double n2 = 0.0;
        for (double v : nb.vectors[j]) n2 += v * v;
        CHECK(n2 == doctest::Approx((j + 1.0) * (j + 2.0)));
    }
    // <U^(j), W^(j)> = (1/4) ||phi||^2 ||e_j||^2
    CHECK(nb.pairings[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(nb.pairings[1] == doctest::Approx(1.5).epsilon(1e-6));
    // symplectic orthogonality and the mass constraint
    auto phi = half_soliton(1.0, 1.0, grid);
    CHECK(std::abs(l2_inner(nb.modes[0], nb.generalized[1])) <= 1e-12);
    CHECK(std::abs(l2_inner(nb.modes[1], nb.generalized[0])) <= 1e-12);
    CHECK(std::abs(l2_inner(nb.modes[0], nb.modes[1])) <= 1e-12);
    CHECK(std::abs(l2_inner(nb.modes[0], phi.field)) <= 1e-12);
    CHECK(std::abs(l2_inner(nb.modes[1], phi.field)) <= 1e-12);
}

TEST_CASE("generalized modes solve L- W = U at second order") {
    for (double omega : {1.0, 1.3}) {
        double r_coarse = 0.0, r_fine = 0.0;
        for (int M : {600, 1200}) {
            StarGraphGrid grid(3, 30.0, M);
            auto nb = neutral_basis(1.0, 3, omega, grid);
            RealField r = apply_linearized(LinOp::Minus, nb.generalized[0], 1.0, omega);
            r -= nb.modes[0];
            (M == 600 ? r_coarse : r_fine) = max_abs(r);
        }
        CHECK(r_coarse <= 2.5e-3); // constant grows with omega
        CHECK(r_coarse / r_fine == doctest::Approx(4.0).epsilon(0.15));
    }
}

TEST_CASE("quadratic forms on the kernel directions") {
    // factorized L- form annihilates Phi exactly
    StarGraphGrid grid(3, 30.0, 600);
    auto phi = half_soliton(1.0, 1.0, grid);
    auto mf = quadratic_form_minus(phi.field, 1.0, 1.0);
    CHECK(std::abs(mf.factorized) <= 1e-12);

    // direct forms need a fine grid to push the O(h^2) floor below tolerance
    StarGraphGrid fine(3, 30.0, 300000);
    auto phif = half_soliton(1.0, 1.0, fine);
    CHECK(std::abs(quadratic_form(LinOp::Minus, phif.field, 1.0, 1.0)) <= 1e-8);

    StarGraphGrid fine2(3, 30.0, 60000);
    auto nb = neutral_basis(1.0, 3, 1.0, fine2);
    CHECK(std::abs(quadratic_form(LinOp::Plus, nb.modes[0], 1.0, 1.0)) <= 1e-6);
    CHECK(std::abs(quadratic_form(LinOp::Plus, nb.modes[1], 1.0, 1.0)) <=
          1e-6 * l2_inner(nb.modes[1], nb.modes[1]));
}

TEST_CASE("L+ is indefinite on the full space") {
    StarGraphGrid grid(3, 30.0, 600);
    auto phi = half_soliton(1.0, 1.0, grid);
    // <L+ Phi, Phi> = 3 (1/3 + 1 - 4) = -8
    CHECK(quadratic_form(LinOp::Plus, phi.field, 1.0, 1.0) == doctest::Approx(-8.0).epsilon(1e-3));
    CHECK(quadratic_form(LinOp::Plus, phi.field, 1.0, 1.0) < 0.0);
}

TEST_CASE("direct and factorized L- forms agree on random smooth fields") {
    StarGraphGrid fine(3, 30.0, 1000000);
    std::mt19937 rng(23);
    for (int i = 0; i < 5; ++i) {
        RealField v = random_smooth_field(fine, rng);
        auto mf = quadratic_form_minus(v, 1.0, 1.0);
        CHECK(std::abs(mf.direct - mf.factorized) <= 1e-8);
    }
}

TEST_CASE("coercivity on the constrained subspaces") {
    StarGraphGrid grid(3, 30.0, 600);
    auto phi = half_soliton(1.0, 1.0, grid);
    auto nb = neutral_basis(1.0, 3, 1.0, grid);
    SolitonProfile prof{1.0, 1.0};
    RealField dphi = RealField::sample_profile(grid, [&](double x) { return prof.domega(x); },
                                               {1.0, 1.0, 1.0});
    std::mt19937 rng(31);
    const double q_phi = l2_inner(phi.field, phi.field);
    const double q_dphi = l2_inner(dphi, dphi);
    for (int i = 0; i < 50; ++i) {
        RealField v = random_smooth_field(grid, rng);
        // project onto L^2_c cap [X_c]^perp
        RealField u = v;
        u.axpy(-l2_inner(phi.field, u) / q_phi, phi.field);
        for (std::size_t j = 0; j < nb.modes.size(); ++j)
            u.axpy(-l2_inner(nb.modes[j], u) / l2_inner(nb.modes[j], nb.modes[j]), nb.modes[j]);
        CHECK(quadratic_form(LinOp::Plus, u, 1.0, 1.0) >= 0.01 * h1_inner(u, u));
        // project onto (L^2_c)^* for the L- bound
        RealField w = v;
        w.axpy(-l2_inner(dphi, w) / q_dphi, dphi);
        CHECK(quadratic_form(LinOp::Minus, w, 1.0, 1.0) >= 0.01 * h1_inner(w, w));
    }
}

TEST_CASE("spectrum csv export") {
    auto spec = find_point_spectrum(1.0, 3, {400, 5e-3, 1e-10, 0.9999});
    const std::string csv = spectrum_to_csv(spec);
    CHECK(csv.find("lambda,kind,multiplicity") == 0);
    CHECK(csv.find("Even,1") != std::string::npos);
    CHECK(csv.find("Odd,2") != std::string::npos);
}
