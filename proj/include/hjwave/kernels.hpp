#pragma once

// Data-parallel inner loops shared by the solvers.
//
// Every kernel has a scalar reference implementation; SIMD variants (AVX2+FMA
// on x86-64, NEON on AArch64) are selected once at runtime from the CPU
// features. Setting HJWAVE_KERNELS=scalar|avx2|neon in the environment forces
// a backend. Complex arrays are std::complex<double>, i.e. interleaved re/im.

#include <complex>
#include <cstddef>
#include <span>

namespace hjwave::kernels {

using cplx = std::complex<double>;

enum class Backend { scalar, avx2, neon };

const char* to_string(Backend b);

struct KernelTable {
    /// sum_i conj(a_i) * b_i
    cplx (*cdot)(const cplx* a, const cplx* b, std::size_t n);
    /// sum_i |a_i|^2
    double (*norm2)(const cplx* a, std::size_t n);
    /// y_i += alpha * x_i
    void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
    /// out_i = off * (in_{i-1} + in_{i+1}) + diag_i * in_i  for 1 <= i <= n-2
    void (*stencil3)(const cplx* in, const double* diag, double off, cplx* out, std::size_t n);
};

/// True when the backend was compiled in and the running CPU supports it.
bool available(Backend b);

/// Kernel table of a specific backend; throws DomainError when unavailable.
const KernelTable& table(Backend b);

/// Backend currently used by the library.
Backend active_backend();

/// Overrides the runtime selection (tests and benchmarks).
void set_active_backend(Backend b);

const KernelTable& active();

inline cplx cdot(std::span<const cplx> a, std::span<const cplx> b)
{
    return active().cdot(a.data(), b.data(), a.size());
}

inline double norm2(std::span<const cplx> a) { return active().norm2(a.data(), a.size()); }

inline void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y)
{
    active().axpy(alpha, x.data(), y.data(), x.size());
}

inline void stencil3(std::span<const cplx> in, std::span<const double> diag, double off, std::span<cplx> out)
{
    active().stencil3(in.data(), diag.data(), off, out.data(), in.size());
}

namespace detail {
extern const KernelTable scalar_table;
#if defined(__x86_64__) || defined(_M_X64)
extern const KernelTable avx2_table;
#endif
#if defined(__aarch64__)
extern const KernelTable neon_table;
#endif
} // namespace detail

} // namespace hjwave::kernels
