#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "graphnls/stationary.hpp"
#include "test_support.hpp"

using namespace graphnls;

namespace {
const StarGraphGrid kGrid(3, 30.0, 600); // h = 0.05
}

TEST_CASE("half-soliton profile values") {
    auto s = half_soliton(1.0, 1.0, kGrid);
    CHECK(s.field.vertex() == doctest::Approx(1.0).epsilon(1e-14));
    // sech(1), x = 1.0 is node k = 20
    CHECK(s.field.value(0, 20) == doctest::Approx(0.6480542737).epsilon(1e-9));

    auto s4 = half_soliton(1.0, 4.0, kGrid);
    CHECK(s4.field.vertex() == doctest::Approx(2.0).epsilon(1e-14));
    for (int k : {10, 40, 100})
        CHECK(s4.field.value(1, k) ==
              doctest::Approx(2.0 / std::cosh(2.0 * kGrid.x(k))).epsilon(1e-12));
}

TEST_CASE("scaling consistency at coincident nodes") {
    auto s1 = half_soliton(1.0, 1.0, kGrid);
    auto s4 = half_soliton(1.0, 4.0, kGrid);
    // Phi_4(x_k) = 4^{1/2} Phi_1(2 x_k) = 2 Phi_1(x_{2k})
    for (int k = 1; k < 250; k += 7)
        CHECK(s4.field.value(0, k) == doctest::Approx(2.0 * s1.field.value(0, 2 * k)).epsilon(1e-12));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(half_soliton(-1.0, 1.0, kGrid), DomainError);
    CHECK_THROWS_AS(half_soliton(1.0, 0.0, kGrid), DomainError);
    CHECK_THROWS_AS(mass_derivative(0.0, 1.0, 3, kGrid), DomainError);
}

TEST_CASE("stationary residual is second-order small") {
    auto s = half_soliton(1.0, 1.0, kGrid);
    const double r1 = stationary_residual(s);
    // the constant is h^2 |phi''''(0)| / 12 = h^2 * 5/12, slightly above 1e-3 at h = 0.05
    CHECK(r1 <= 1.1e-3);
    StarGraphGrid fine(3, 30.0, 1200);
    const double r2 = stationary_residual(half_soliton(1.0, 1.0, fine));
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.075)); // 4 +- 0.3

    auto s2 = half_soliton(1.0, 2.0, kGrid);
    const double q1 = stationary_residual(s2);
    const double q2 = stationary_residual(half_soliton(1.0, 2.0, fine));
    CHECK(q1 / q2 == doctest::Approx(4.0).epsilon(0.075));
}

TEST_CASE("residual of the zero field vanishes") {
    StationaryState z{1.0, 1.0, RealField(kGrid)};
    CHECK(stationary_residual(z) == 0.0);
}

TEST_CASE("discrete stationary refinement reaches roundoff") {
    RealField f = discrete_half_soliton(1.0, 1.0, kGrid);
    StationaryState s{1.0, 1.0, f};
    CHECK(stationary_residual(s) <= 1e-10);
    // stays O(h^2)-close to the sampled profile
    RealField diff = f;
    diff -= half_soliton(1.0, 1.0, kGrid).field;
    CHECK(graphnls::test::max_abs(diff) <= 5e-4);
}

TEST_CASE("mass and energy of the half-soliton") {
    auto s = half_soliton(1.0, 1.0, kGrid);
    auto me = mass_energy(s);
    CHECK(me.Q == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(me.E == doctest::Approx(-1.0).epsilon(1e-5));

    StationaryState z{1.0, 1.0, RealField(kGrid)};
    CHECK(mass_energy(z).Q == 0.0);
}

TEST_CASE("mass scaling law Q(Phi_omega) = omega^{1/p - 1/2} Q(Phi)") {
    for (double p : {0.5, 1.0, 1.5}) {
        const double q1 = mass_energy(half_soliton(p, 1.0, kGrid)).Q;
        const double qw = mass_energy(half_soliton(p, 1.7, kGrid)).Q;
        CHECK(qw == doctest::Approx(std::pow(1.7, 1.0 / p - 0.5) * q1).epsilon(1e-9));
    }
}

TEST_CASE("mass derivative closed formula") {
    CHECK(mass_derivative(1.0, 1.0, 3, kGrid) == doctest::Approx(1.5).epsilon(1e-6));
    CHECK(mass_derivative(2.0, 1.0, 3, kGrid) == 0.0);
    for (double p : {0.5, 1.0, 1.5, 1.9})
        CHECK(mass_derivative(p, 1.0, 3, kGrid) > 0.0);
}

TEST_CASE("mass derivative matches the centered finite difference") {
    const double delta = 1e-4;
    for (double p : {0.7, 1.0, 1.4}) {
        const double qp = mass_energy(half_soliton(p, 1.0 + delta, kGrid)).Q;
        const double qm = mass_energy(half_soliton(p, 1.0 - delta, kGrid)).Q;
        const double fd = (qp - qm) / (2.0 * delta);
        CHECK(mass_derivative(p, 1.0, 3, kGrid) == doctest::Approx(fd).epsilon(1e-6));
    }
}
