#pragma once
#include <complex>
#include <cstddef>
#include <string>

// Array kernels behind the field arithmetic. Every kernel has a scalar
// reference implementation and, on x86-64, an AVX2+FMA variant. The active
// lane is picked once at startup from cpuid, overridable with the
// GRAPHNLS_SIMD environment variable (scalar | avx2 | auto) or force_backend().
// The two lanes are equivalence-tested against each other in test_kernels.

namespace graphnls::kern {

using cplx = std::complex<double>;

enum class Backend { Scalar, Avx2 };

Backend active_backend();
void force_backend(Backend b);
bool avx2_available();
std::string backend_name();

// sum_i a[i] * b[i]
double dot(const double* a, const double* b, std::size_t n);
// sum_i a[i]^2
double sum_sq(const double* a, std::size_t n);
// sum_i conj(a[i]) * b[i]
cplx cdot(const cplx* a, const cplx* b, std::size_t n);
// sum_i |a[i]|^2
double csum_sq(const cplx* a, std::size_t n);
// y[i] += alpha * x[i]
void axpy(double alpha, const double* x, double* y, std::size_t n);
void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
// out[i] = |z[i]|^2
void abs_sq(const cplx* z, double* out, std::size_t n);
// sum_i (a[i+1] - a[i])^2 over i = 0..n-2
double diff_sq_sum(const double* a, std::size_t n);
double cdiff_sq_sum(const cplx* a, std::size_t n);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double sum_sq(const double* a, std::size_t n);
cplx cdot(const cplx* a, const cplx* b, std::size_t n);
double csum_sq(const cplx* a, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
void abs_sq(const cplx* z, double* out, std::size_t n);
double diff_sq_sum(const double* a, std::size_t n);
double cdiff_sq_sum(const cplx* a, std::size_t n);
} // namespace scalar

#ifdef GRAPHNLS_HAVE_AVX2
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double sum_sq(const double* a, std::size_t n);
cplx cdot(const cplx* a, const cplx* b, std::size_t n);
double csum_sq(const cplx* a, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
void abs_sq(const cplx* z, double* out, std::size_t n);
double diff_sq_sum(const double* a, std::size_t n);
double cdiff_sq_sum(const cplx* a, std::size_t n);
} // namespace avx2
#endif

} // namespace graphnls::kern
