#include "graphnls/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace graphnls::kern {

namespace scalar {

double dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sum_sq(const double* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
    return s;
}

cplx cdot(const cplx* a, const cplx* b, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

double csum_sq(const cplx* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void abs_sq(const cplx* z, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = z[i].real() * z[i].real() + z[i].imag() * z[i].imag();
}

double diff_sq_sum(const double* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double d = a[i + 1] - a[i];
        s += d * d;
    }
    return s;
}

double cdiff_sq_sum(const cplx* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double dr = a[i + 1].real() - a[i].real();
        const double di = a[i + 1].imag() - a[i].imag();
        s += dr * dr + di * di;
    }
    return s;
}

} // namespace scalar

namespace {

struct Dispatch {
    double (*dot)(const double*, const double*, std::size_t);
    double (*sum_sq)(const double*, std::size_t);
    cplx (*cdot)(const cplx*, const cplx*, std::size_t);
    double (*csum_sq)(const cplx*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    void (*caxpy)(cplx, const cplx*, cplx*, std::size_t);
    void (*abs_sq)(const cplx*, double*, std::size_t);
    double (*diff_sq_sum)(const double*, std::size_t);
    double (*cdiff_sq_sum)(const cplx*, std::size_t);
};

constexpr Dispatch kScalar = {
    scalar::dot, scalar::sum_sq, scalar::cdot, scalar::csum_sq,
    scalar::axpy, scalar::caxpy, scalar::abs_sq,
    scalar::diff_sq_sum, scalar::cdiff_sq_sum,
};

#ifdef GRAPHNLS_HAVE_AVX2
constexpr Dispatch kAvx2 = {
    avx2::dot, avx2::sum_sq, avx2::cdot, avx2::csum_sq,
    avx2::axpy, avx2::caxpy, avx2::abs_sq,
    avx2::diff_sq_sum, avx2::cdiff_sq_sum,
};
#endif

Backend pick_backend() {
    const char* env = std::getenv("GRAPHNLS_SIMD");
    if (env != nullptr) {
        if (std::strcmp(env, "scalar") == 0) return Backend::Scalar;
        if (std::strcmp(env, "avx2") == 0 && avx2_available()) return Backend::Avx2;
    }
    return avx2_available() ? Backend::Avx2 : Backend::Scalar;
}

Backend g_backend = pick_backend();

const Dispatch& table() {
#ifdef GRAPHNLS_HAVE_AVX2
    if (g_backend == Backend::Avx2) return kAvx2;
#endif
    return kScalar;
}

} // namespace

bool avx2_available() {
#ifdef GRAPHNLS_HAVE_AVX2
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend active_backend() { return g_backend; }

void force_backend(Backend b) {
    if (b == Backend::Avx2 && !avx2_available()) b = Backend::Scalar;
    g_backend = b;
}

std::string backend_name() {
    return g_backend == Backend::Avx2 ? "avx2" : "scalar";
}

double dot(const double* a, const double* b, std::size_t n) { return table().dot(a, b, n); }
double sum_sq(const double* a, std::size_t n) { return table().sum_sq(a, n); }
cplx cdot(const cplx* a, const cplx* b, std::size_t n) { return table().cdot(a, b, n); }
double csum_sq(const cplx* a, std::size_t n) { return table().csum_sq(a, n); }
void axpy(double alpha, const double* x, double* y, std::size_t n) { table().axpy(alpha, x, y, n); }
void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) { table().caxpy(alpha, x, y, n); }
void abs_sq(const cplx* z, double* out, std::size_t n) { table().abs_sq(z, out, n); }
double diff_sq_sum(const double* a, std::size_t n) { return table().diff_sq_sum(a, n); }
double cdiff_sq_sum(const cplx* a, std::size_t n) { return table().cdiff_sq_sum(a, n); }

} // namespace graphnls::kern
