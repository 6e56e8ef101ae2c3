#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hjwave/grid.hpp"

namespace hjwave {

using cplx = std::complex<double>;

/// Complex samples of a function on a Grid1D, optionally stamped with a time.
///
/// Immutable after construction; every entry is finite.
class ComplexField {
public:
    ComplexField(Grid1D grid, std::vector<cplx> values, std::optional<double> time = std::nullopt);

    static ComplexField zeros(const Grid1D& grid);
    static ComplexField sample(const Grid1D& grid, const std::function<cplx(double)>& f,
                               std::optional<double> time = std::nullopt);

    const Grid1D& grid() const noexcept { return grid_; }
    std::span<const cplx> values() const noexcept { return values_; }
    const cplx& operator[](std::size_t i) const noexcept { return values_[i]; }
    std::size_t size() const noexcept { return values_.size(); }
    std::optional<double> time() const noexcept { return time_; }

    ComplexField with_time(std::optional<double> t) const;
    ComplexField scaled(cplx factor) const;
    ComplexField conjugated() const;

    /// max |f(x)| over the grid.
    double max_abs() const noexcept;

private:
    Grid1D grid_;
    std::vector<cplx> values_;
    std::optional<double> time_;
};

ComplexField operator+(const ComplexField& a, const ComplexField& b);
ComplexField operator-(const ComplexField& a, const ComplexField& b);
ComplexField operator*(cplx s, const ComplexField& f);

/// Linear combination sum_k coeffs[k] * fields[k]; all fields must share a grid.
ComplexField linear_combination(std::span<const cplx> coeffs, std::span<const ComplexField> fields);

/// Values on a grid together with a validity mask (nodes where the quantity is undefined).
template <class T>
struct MaskedArray {
    std::vector<T> values;
    std::vector<bool> valid;

    std::size_t count_valid() const noexcept
    {
        std::size_t n = 0;
        for (bool v : valid) n += v ? 1 : 0;
        return n;
    }

    /// Largest |value| over valid nodes (0 when nothing is valid).
    double max_abs() const noexcept
    {
        double m = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i)
            if (valid[i]) m = std::max(m, static_cast<double>(std::abs(values[i])));
        return m;
    }
};

using RealMasked = MaskedArray<double>;
using ComplexMasked = MaskedArray<cplx>;

void require_same_grid(const ComplexField& a, const ComplexField& b);

/// Trapezoidal approximation of the integral of conj(f) g.
cplx inner_product(const ComplexField& f, const ComplexField& g);

/// Trapezoidal approximation of the integral of |f|^2.
double norm_squared(const ComplexField& f);
double norm(const ComplexField& f);

/// Trapezoidal integral of real samples on a grid.
double integrate(const Grid1D& grid, std::span<const double> values);
cplx integrate(const Grid1D& grid, std::span<const cplx> values);

/// Rescales f to unit norm; throws NumericalError for a zero field.
ComplexField normalize(const ComplexField& f);

enum class DerivativeScheme { central_fd, spectral };

/// First or second derivative.
///
/// central_fd is second order everywhere; on Dirichlet grids the end nodes use
/// one-sided second-order stencils. spectral requires a periodic grid.
ComplexField derivative(const ComplexField& f, int order, DerivativeScheme scheme);

/// Derivative scheme used by residual and field evaluations: spectral on
/// periodic grids, central differences otherwise.
inline DerivativeScheme natural_scheme(const Grid1D& grid)
{
    return grid.periodic() ? DerivativeScheme::spectral : DerivativeScheme::central_fd;
}

/// Nodes where |f| >= floor_ratio * max|f|.
std::vector<bool> amplitude_mask(const ComplexField& f, double floor_ratio);

/// Shrinks a mask so that every valid node is an interior node whose two
/// neighbours are also valid (central stencils stay inside the valid region).
std::vector<bool> stencil_interior(const Grid1D& grid, std::vector<bool> mask);

/// arg(values[i]) made continuous along the grid: starting at the first valid
/// node, multiples of 2 pi are added so consecutive valid nodes differ by at
/// most pi. Invalid nodes get 0 and do not break the sweep.
std::vector<double> unwrapped_arg(std::span<const cplx> values, const std::vector<bool>& valid);

/// Default amplitude floor for logarithms and field ratios.
inline constexpr double default_amplitude_floor = 1e-8;

} // namespace hjwave
