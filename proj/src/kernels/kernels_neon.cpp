#include "hjwave/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace hjwave::kernels::detail {
namespace {

// One complex number per register: [re, im].
cplx cdot_neon(const cplx* a, const cplx* b, std::size_t n)
{
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    float64x2_t re = vdupq_n_f64(0.0);
    float64x2_t im = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t av = vld1q_f64(pa + 2 * i);
        const float64x2_t bv = vld1q_f64(pb + 2 * i);
        re = vfmaq_f64(re, av, bv);
        im = vfmaq_f64(im, av, vextq_f64(bv, bv, 1));
    }
    return {vaddvq_f64(re), vgetq_lane_f64(im, 0) - vgetq_lane_f64(im, 1)};
}

double norm2_neon(const cplx* a, std::size_t n)
{
    const double* pa = reinterpret_cast<const double*>(a);
    float64x2_t s = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t av = vld1q_f64(pa + 2 * i);
        s = vfmaq_f64(s, av, av);
    }
    return vaddvq_f64(s);
}

void axpy_neon(cplx alpha, const cplx* x, cplx* y, std::size_t n)
{
    const double* px = reinterpret_cast<const double*>(x);
    double* py = reinterpret_cast<double*>(y);
    const float64x2_t ar = vdupq_n_f64(alpha.real());
    const double sgn[2] = {-alpha.imag(), alpha.imag()};
    const float64x2_t ai = vld1q_f64(sgn);
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t xv = vld1q_f64(px + 2 * i);
        float64x2_t yv = vld1q_f64(py + 2 * i);
        yv = vfmaq_f64(yv, ar, xv);
        yv = vfmaq_f64(yv, ai, vextq_f64(xv, xv, 1));
        vst1q_f64(py + 2 * i, yv);
    }
}

void stencil3_neon(const cplx* in, const double* diag, double off, cplx* out, std::size_t n)
{
    if (n < 3) return;
    const double* pin = reinterpret_cast<const double*>(in);
    double* pout = reinterpret_cast<double*>(out);
    const float64x2_t offv = vdupq_n_f64(off);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const float64x2_t sum = vaddq_f64(vld1q_f64(pin + 2 * (i - 1)), vld1q_f64(pin + 2 * (i + 1)));
        const float64x2_t mid = vmulq_n_f64(vld1q_f64(pin + 2 * i), diag[i]);
        vst1q_f64(pout + 2 * i, vfmaq_f64(mid, offv, sum));
    }
}

} // namespace

const KernelTable neon_table{cdot_neon, norm2_neon, axpy_neon, stencil3_neon};

} // namespace hjwave::kernels::detail

#endif
