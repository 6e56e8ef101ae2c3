#include "hjwave/kernels.hpp"

namespace hjwave::kernels::detail {
namespace {

cplx cdot_scalar(const cplx* a, const cplx* b, std::size_t n)
{
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

double norm2_scalar(const cplx* a, std::size_t n)
{
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    return s;
}

void axpy_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t n)
{
    const double ar = alpha.real(), ai = alpha.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = {y[i].real() + ar * xr - ai * xi, y[i].imag() + ar * xi + ai * xr};
    }
}

void stencil3_scalar(const cplx* in, const double* diag, double off, cplx* out, std::size_t n)
{
    if (n < 3) return;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        out[i] = {off * (in[i - 1].real() + in[i + 1].real()) + diag[i] * in[i].real(),
                  off * (in[i - 1].imag() + in[i + 1].imag()) + diag[i] * in[i].imag()};
    }
}

} // namespace

const KernelTable scalar_table{cdot_scalar, norm2_scalar, axpy_scalar, stencil3_scalar};

} // namespace hjwave::kernels::detail
