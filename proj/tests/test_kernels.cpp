#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "graphnls/kernels.hpp"

using namespace graphnls;

namespace {

std::vector<double> random_vec(std::size_t n, std::mt19937& rng) {
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    std::vector<double> v(n);
    for (auto& x : v) x = uni(rng);
    return v;
}

std::vector<kern::cplx> random_cvec(std::size_t n, std::mt19937& rng) {
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    std::vector<kern::cplx> v(n);
    for (auto& x : v) x = {uni(rng), uni(rng)};
    return v;
}

const std::vector<std::size_t> kSizes = {0, 1, 2, 3, 4, 5, 7, 8, 9, 16, 17, 100, 1001};

} // namespace

#ifdef GRAPHNLS_HAVE_AVX2

TEST_CASE("avx2 lane matches the scalar reference") {
    if (!kern::avx2_available()) {
        MESSAGE("avx2 not available on this host; skipping equivalence");
        return;
    }
    std::mt19937 rng(7);
    for (std::size_t n : kSizes) {
        auto a = random_vec(n, rng);
        auto b = random_vec(n, rng);
        auto za = random_cvec(n, rng);
        auto zb = random_cvec(n, rng);
        const double scale = 1.0 + static_cast<double>(n);
        CHECK(kern::avx2::dot(a.data(), b.data(), n) ==
              doctest::Approx(kern::scalar::dot(a.data(), b.data(), n)).epsilon(1e-13));
        CHECK(kern::avx2::sum_sq(a.data(), n) ==
              doctest::Approx(kern::scalar::sum_sq(a.data(), n)).epsilon(1e-13));
        const auto c1 = kern::avx2::cdot(za.data(), zb.data(), n);
        const auto c2 = kern::scalar::cdot(za.data(), zb.data(), n);
        CHECK(std::abs(c1 - c2) <= 1e-12 * scale);
        CHECK(kern::avx2::csum_sq(za.data(), n) ==
              doctest::Approx(kern::scalar::csum_sq(za.data(), n)).epsilon(1e-13));
        CHECK(kern::avx2::diff_sq_sum(a.data(), n) ==
              doctest::Approx(kern::scalar::diff_sq_sum(a.data(), n)).epsilon(1e-12));
        CHECK(kern::avx2::cdiff_sq_sum(za.data(), n) ==
              doctest::Approx(kern::scalar::cdiff_sq_sum(za.data(), n)).epsilon(1e-12));

        auto y1 = b;
        auto y2 = b;
        kern::avx2::axpy(0.37, a.data(), y1.data(), n);
        kern::scalar::axpy(0.37, a.data(), y2.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-14));

        auto zy1 = zb;
        auto zy2 = zb;
        const kern::cplx alpha{0.3, -1.1};
        kern::avx2::caxpy(alpha, za.data(), zy1.data(), n);
        kern::scalar::caxpy(alpha, za.data(), zy2.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(zy1[i] - zy2[i]) <= 1e-14);

        std::vector<double> o1(n), o2(n);
        kern::avx2::abs_sq(za.data(), o1.data(), n);
        kern::scalar::abs_sq(za.data(), o2.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(o1[i] == doctest::Approx(o2[i]).epsilon(1e-14));
    }
}

#endif // GRAPHNLS_HAVE_AVX2

TEST_CASE("kernel algebra sanity") {
    std::mt19937 rng(11);
    auto z = random_cvec(103, rng);
    const auto d = kern::cdot(z.data(), z.data(), z.size());
    CHECK(d.imag() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(d.real() == doctest::Approx(kern::csum_sq(z.data(), z.size())).epsilon(1e-14));

    auto w = random_cvec(103, rng);
    const auto ab = kern::cdot(z.data(), w.data(), z.size());
    const auto ba = kern::cdot(w.data(), z.data(), z.size());
    CHECK(std::abs(ab - std::conj(ba)) <= 1e-13);

    std::vector<double> c(57, 3.25);
    CHECK(kern::diff_sq_sum(c.data(), c.size()) == 0.0);
}

TEST_CASE("backend selection reports a valid lane") {
    const auto name = kern::backend_name();
    CHECK((name == "avx2" || name == "scalar"));
    kern::force_backend(kern::Backend::Scalar);
    CHECK(kern::backend_name() == "scalar");
    kern::force_backend(kern::avx2_available() ? kern::Backend::Avx2 : kern::Backend::Scalar);
}
