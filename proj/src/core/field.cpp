#include "hjwave/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hjwave/error.hpp"
#include "hjwave/kernels.hpp"

namespace hjwave {

ComplexField::ComplexField(Grid1D grid, std::vector<cplx> values, std::optional<double> time)
    : grid_(grid), values_(std::move(values)), time_(time)
{
    if (values_.size() != grid_.size())
        throw DomainError("field has " + std::to_string(values_.size()) + " values for a grid of " +
                          std::to_string(grid_.size()) + " points");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i].real()) || !std::isfinite(values_[i].imag()))
            throw NumericalError("non-finite field value at node " + std::to_string(i));
    }
    if (time_ && !std::isfinite(*time_)) throw NumericalError("non-finite field time");
}

ComplexField ComplexField::zeros(const Grid1D& grid)
{
    return ComplexField(grid, std::vector<cplx>(grid.size()));
}

ComplexField ComplexField::sample(const Grid1D& grid, const std::function<cplx(double)>& f,
                                  std::optional<double> time)
{
    std::vector<cplx> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.x(i));
    return ComplexField(grid, std::move(v), time);
}

ComplexField ComplexField::with_time(std::optional<double> t) const
{
    ComplexField out = *this;
    out.time_ = t;
    return out;
}

ComplexField ComplexField::scaled(cplx factor) const
{
    std::vector<cplx> v(values_);
    for (auto& z : v) z *= factor;
    return ComplexField(grid_, std::move(v), time_);
}

ComplexField ComplexField::conjugated() const
{
    std::vector<cplx> v(values_);
    for (auto& z : v) z = std::conj(z);
    return ComplexField(grid_, std::move(v), time_);
}

double ComplexField::max_abs() const noexcept
{
    double m = 0.0;
    for (const auto& z : values_) m = std::max(m, std::abs(z));
    return m;
}

void require_same_grid(const ComplexField& a, const ComplexField& b)
{
    if (!(a.grid() == b.grid())) throw GridMismatchError("fields live on different grids");
}

ComplexField operator+(const ComplexField& a, const ComplexField& b)
{
    require_same_grid(a, b);
    std::vector<cplx> v(a.values().begin(), a.values().end());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += b[i];
    return ComplexField(a.grid(), std::move(v), a.time());
}

ComplexField operator-(const ComplexField& a, const ComplexField& b)
{
    require_same_grid(a, b);
    std::vector<cplx> v(a.values().begin(), a.values().end());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= b[i];
    return ComplexField(a.grid(), std::move(v), a.time());
}

ComplexField operator*(cplx s, const ComplexField& f) { return f.scaled(s); }

ComplexField linear_combination(std::span<const cplx> coeffs, std::span<const ComplexField> fields)
{
    if (coeffs.size() != fields.size() || fields.empty())
        throw DomainError("linear_combination needs one coefficient per field");
    std::vector<cplx> v(fields[0].size());
    for (std::size_t k = 0; k < fields.size(); ++k) {
        require_same_grid(fields[0], fields[k]);
        kernels::axpy(coeffs[k], fields[k].values(), v);
    }
    return ComplexField(fields[0].grid(), std::move(v), fields[0].time());
}

cplx inner_product(const ComplexField& f, const ComplexField& g)
{
    require_same_grid(f, g);
    const Grid1D& grid = f.grid();
    cplx s = kernels::cdot(f.values(), g.values());
    if (!grid.periodic()) {
        const std::size_t n = grid.size();
        s -= 0.5 * (std::conj(f[0]) * g[0] + std::conj(f[n - 1]) * g[n - 1]);
    }
    return s * grid.spacing();
}

double norm_squared(const ComplexField& f)
{
    const Grid1D& grid = f.grid();
    double s = kernels::norm2(f.values());
    if (!grid.periodic()) s -= 0.5 * (std::norm(f[0]) + std::norm(f[f.size() - 1]));
    return s * grid.spacing();
}

double norm(const ComplexField& f) { return std::sqrt(norm_squared(f)); }

template <class T>
static T integrate_impl(const Grid1D& grid, std::span<const T> values)
{
    if (values.size() != grid.size()) throw DomainError("sample count does not match grid");
    T s{};
    for (std::size_t i = 0; i < values.size(); ++i) s += grid.weight(i) * values[i];
    return s;
}

double integrate(const Grid1D& grid, std::span<const double> values) { return integrate_impl(grid, values); }
cplx integrate(const Grid1D& grid, std::span<const cplx> values) { return integrate_impl(grid, values); }

ComplexField normalize(const ComplexField& f)
{
    const double n = norm(f);
    if (!(n > 0.0)) throw NumericalError("cannot normalize a zero field");
    return f.scaled(1.0 / n);
}

std::vector<bool> amplitude_mask(const ComplexField& f, double floor_ratio)
{
    const double threshold = floor_ratio * f.max_abs();
    std::vector<bool> mask(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) mask[i] = std::abs(f[i]) >= threshold && std::abs(f[i]) > 0.0;
    return mask;
}

std::vector<bool> stencil_interior(const Grid1D& grid, std::vector<bool> mask)
{
    const std::size_t n = grid.size();
    std::vector<bool> out(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (!mask[i]) continue;
        if (grid.periodic()) {
            out[i] = mask[(i + n - 1) % n] && mask[(i + 1) % n];
        } else if (i > 0 && i + 1 < n) {
            out[i] = mask[i - 1] && mask[i + 1];
        }
    }
    return out;
}

std::vector<double> unwrapped_arg(std::span<const cplx> values, const std::vector<bool>& valid)
{
    std::vector<double> out(values.size(), 0.0);
    bool started = false;
    double prev = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!valid[i]) continue;
        double a = std::arg(values[i]);
        if (started) {
            const double two_pi = 2.0 * std::numbers::pi;
            a += two_pi * std::round((prev - a) / two_pi);
        }
        out[i] = a;
        prev = a;
        started = true;
    }
    return out;
}

} // namespace hjwave
