#include "hjwave/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#define HJWAVE_AVX2 __attribute__((target("avx2,fma")))

namespace hjwave::kernels::detail {
namespace {

HJWAVE_AVX2 inline double hsum(__m256d v)
{
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Two complex numbers per register: [re0, im0, re1, im1].
HJWAVE_AVX2 cplx cdot_avx2(const cplx* a, const cplx* b, std::size_t n)
{
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    __m256d re0 = _mm256_setzero_pd(), re1 = _mm256_setzero_pd();
    __m256d im0 = _mm256_setzero_pd(), im1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a0 = _mm256_loadu_pd(pa + 2 * i);
        const __m256d b0 = _mm256_loadu_pd(pb + 2 * i);
        const __m256d a1 = _mm256_loadu_pd(pa + 2 * i + 4);
        const __m256d b1 = _mm256_loadu_pd(pb + 2 * i + 4);
        re0 = _mm256_fmadd_pd(a0, b0, re0);
        re1 = _mm256_fmadd_pd(a1, b1, re1);
        // [bi, br] swapped within each complex lane
        im0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0b0101), im0);
        im1 = _mm256_fmadd_pd(a1, _mm256_permute_pd(b1, 0b0101), im1);
    }
    const __m256d re = _mm256_add_pd(re0, re1);
    const __m256d im = _mm256_add_pd(im0, im1);
    // im lanes hold [ar*bi, ai*br, ...]; imaginary part is even minus odd.
    const __m256d sign = _mm256_set_pd(-1.0, 1.0, -1.0, 1.0);
    double sr = hsum(re);
    double si = hsum(_mm256_mul_pd(im, sign));
    for (; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        sr += ar * br + ai * bi;
        si += ar * bi - ai * br;
    }
    return {sr, si};
}

HJWAVE_AVX2 double norm2_avx2(const cplx* a, std::size_t n)
{
    const double* pa = reinterpret_cast<const double*>(a);
    __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a0 = _mm256_loadu_pd(pa + 2 * i);
        const __m256d a1 = _mm256_loadu_pd(pa + 2 * i + 4);
        s0 = _mm256_fmadd_pd(a0, a0, s0);
        s1 = _mm256_fmadd_pd(a1, a1, s1);
    }
    double s = hsum(_mm256_add_pd(s0, s1));
    for (; i < n; ++i) s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    return s;
}

HJWAVE_AVX2 void axpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n)
{
    const double* px = reinterpret_cast<const double*>(x);
    double* py = reinterpret_cast<double*>(y);
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(px + 2 * i);
        const __m256d xs = _mm256_permute_pd(xv, 0b0101);
        // [ar*xr - ai*xi, ar*xi + ai*xr]
        const __m256d prod = _mm256_addsub_pd(_mm256_mul_pd(ar, xv), _mm256_mul_pd(ai, xs));
        _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(_mm256_loadu_pd(py + 2 * i), prod));
    }
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = {y[i].real() + alpha.real() * xr - alpha.imag() * xi,
                y[i].imag() + alpha.real() * xi + alpha.imag() * xr};
    }
}

HJWAVE_AVX2 void stencil3_avx2(const cplx* in, const double* diag, double off, cplx* out, std::size_t n)
{
    if (n < 3) return;
    const double* pin = reinterpret_cast<const double*>(in);
    double* pout = reinterpret_cast<double*>(out);
    const __m256d offv = _mm256_set1_pd(off);
    std::size_t i = 1;
    for (; i + 2 < n; i += 2) {
        const __m256d left = _mm256_loadu_pd(pin + 2 * (i - 1));
        const __m256d mid = _mm256_loadu_pd(pin + 2 * i);
        const __m256d right = _mm256_loadu_pd(pin + 2 * (i + 1));
        const __m128d d2 = _mm_loadu_pd(diag + i);
        const __m256d d = _mm256_permute4x64_pd(_mm256_castpd128_pd256(d2), 0x50);
        const __m256d r = _mm256_fmadd_pd(offv, _mm256_add_pd(left, right), _mm256_mul_pd(d, mid));
        _mm256_storeu_pd(pout + 2 * i, r);
    }
    for (; i + 1 < n; ++i) {
        out[i] = {off * (in[i - 1].real() + in[i + 1].real()) + diag[i] * in[i].real(),
                  off * (in[i - 1].imag() + in[i + 1].imag()) + diag[i] * in[i].imag()};
    }
}

} // namespace

const KernelTable avx2_table{cdot_avx2, norm2_avx2, axpy_avx2, stencil3_avx2};

} // namespace hjwave::kernels::detail

#endif
