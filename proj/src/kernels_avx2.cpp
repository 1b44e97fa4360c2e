#include "graphnls/kernels.hpp"

#include <immintrin.h>

// AVX2+FMA lane. std::complex<double> is array-compatible with double[2]
// (interleaved re, im), so one 256-bit register carries two complex values.

namespace graphnls::kern::avx2 {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d swapped = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

} // namespace

double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sum_sq(const double* a, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(a + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * a[i];
    return s;
}

cplx cdot(const cplx* a, const cplx* b, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    const __m256d sign = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0); // flips lanes 1 and 3
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        acc_re = _mm256_fmadd_pd(va, vb, acc_re);
        const __m256d vb_swap = _mm256_permute_pd(vb, 0b0101); // [im, re] pairs
        const __m256d prod = _mm256_mul_pd(va, vb_swap);       // [ar*bi, ai*br]
        acc_im = _mm256_add_pd(acc_im, _mm256_xor_pd(prod, sign));
    }
    double re = hsum(acc_re);
    double im = hsum(acc_im);
    for (; i < n; ++i) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

double csum_sq(const cplx* a, std::size_t n) {
    return sum_sq(reinterpret_cast<const double*>(a), 2 * n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const double* px = reinterpret_cast<const double*>(x);
    double* py = reinterpret_cast<double*>(y);
    const __m256d var = _mm256_set1_pd(alpha.real());
    const __m256d vai = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = _mm256_loadu_pd(px + 2 * i);
        const __m256d vx_swap = _mm256_permute_pd(vx, 0b0101);
        // addsub: even lanes subtract, odd lanes add -> (xr*ar - xi*ai, xi*ar + xr*ai)
        const __m256d prod = _mm256_addsub_pd(_mm256_mul_pd(vx, var), _mm256_mul_pd(vx_swap, vai));
        _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(_mm256_loadu_pd(py + 2 * i), prod));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void abs_sq(const cplx* z, double* out, std::size_t n) {
    const double* pz = reinterpret_cast<const double*>(z);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v1 = _mm256_loadu_pd(pz + 2 * i);     // z[i], z[i+1]
        const __m256d v2 = _mm256_loadu_pd(pz + 2 * i + 4); // z[i+2], z[i+3]
        const __m256d t1 = _mm256_mul_pd(v1, v1);
        const __m256d t2 = _mm256_mul_pd(v2, v2);
        // hadd yields [|z0|^2, |z2|^2, |z1|^2, |z3|^2]; permute restores order
        const __m256d h = _mm256_hadd_pd(t1, t2);
        _mm256_storeu_pd(out + i, _mm256_permute4x64_pd(h, _MM_SHUFFLE(3, 1, 2, 0)));
    }
    for (; i < n; ++i)
        out[i] = z[i].real() * z[i].real() + z[i].imag() * z[i].imag();
}

double diff_sq_sum(const double* a, std::size_t n) {
    if (n < 2) return 0.0;
    const std::size_t m = n - 1;
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i + 1), _mm256_loadu_pd(a + i));
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double s = hsum(acc);
    for (; i < m; ++i) {
        const double d = a[i + 1] - a[i];
        s += d * d;
    }
    return s;
}

double cdiff_sq_sum(const cplx* a, std::size_t n) {
    if (n < 2) return 0.0;
    const double* pa = reinterpret_cast<const double*>(a);
    const std::size_t m = 2 * (n - 1);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(pa + i + 2), _mm256_loadu_pd(pa + i));
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double s = hsum(acc);
    for (; i < m; i += 2) {
        const double dr = pa[i + 2] - pa[i];
        const double di = pa[i + 3] - pa[i + 1];
        s += dr * dr + di * di;
    }
    return s;
}

} // namespace graphnls::kern::avx2
