#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "hjwave/error.hpp"
#include "hjwave/field.hpp"

namespace hjwave {
namespace {

// FFTW's planner is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

std::vector<cplx> spectral_derivative(const ComplexField& f, int order)
{
    const Grid1D& grid = f.grid();
    const int n = static_cast<int>(grid.size());
    std::vector<cplx> buf(f.values().begin(), f.values().end());
    auto* data = reinterpret_cast<fftw_complex*>(buf.data());

    fftw_plan fwd, bwd;
    {
        std::lock_guard lock(planner_mutex());
        fwd = fftw_plan_dft_1d(n, data, data, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_1d(n, data, data, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(fwd);
    const double base = 2.0 * std::numbers::pi / grid.length();
    for (int j = 0; j < n; ++j) {
        const int m = j <= n / 2 ? j : j - n;
        const double k = base * m;
        cplx factor = order == 1 ? cplx{0.0, k} : cplx{-k * k, 0.0};
        // The Nyquist mode has no odd-derivative partner.
        if (order == 1 && n % 2 == 0 && j == n / 2) factor = 0.0;
        buf[j] *= factor / static_cast<double>(n);
    }
    fftw_execute(bwd);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }
    return buf;
}

std::vector<cplx> central_derivative(const ComplexField& f, int order)
{
    const Grid1D& grid = f.grid();
    const std::size_t n = grid.size();
    const double h = grid.spacing();
    auto v = f.values();
    std::vector<cplx> out(n);
    auto at = [&](std::ptrdiff_t i) -> cplx {
        const auto nn = static_cast<std::ptrdiff_t>(n);
        return v[static_cast<std::size_t>(((i % nn) + nn) % nn)];
    };
    if (grid.periodic()) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto k = static_cast<std::ptrdiff_t>(i);
            out[i] = order == 1 ? (at(k + 1) - at(k - 1)) / (2.0 * h)
                                : (at(k + 1) - 2.0 * at(k) + at(k - 1)) / (h * h);
        }
        return out;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        out[i] = order == 1 ? (v[i + 1] - v[i - 1]) / (2.0 * h) : (v[i + 1] - 2.0 * v[i] + v[i - 1]) / (h * h);
    }
    // one-sided second-order closures
    if (order == 1) {
        out[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
        out[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
    } else {
        out[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / (h * h);
        out[n - 1] = (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) / (h * h);
    }
    return out;
}

} // namespace

ComplexField derivative(const ComplexField& f, int order, DerivativeScheme scheme)
{
    if (order != 1 && order != 2) throw DomainError("derivative order must be 1 or 2");
    if (scheme == DerivativeScheme::spectral) {
        if (!f.grid().periodic()) throw DomainError("spectral derivative requires a periodic grid");
        return ComplexField(f.grid(), spectral_derivative(f, order), f.time());
    }
    return ComplexField(f.grid(), central_derivative(f, order), f.time());
}

} // namespace hjwave
