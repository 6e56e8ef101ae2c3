#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "hjwave/error.hpp"
#include "hjwave/kernels.hpp"
#include "hjwave/operators.hpp"

namespace hjwave::operators {

namespace {

constexpr double orthonormality_tolerance = 1e-8;
constexpr double degeneracy_threshold = 1e-6;

// Full Gram check for small bases; norms plus near neighbours for large ones.
double spot_defect(const Basis& b)
{
    if (b.size() <= 256) return b.orthonormality_defect();
    double worst = 0.0;
    const auto f = b.functions();
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = i; j < std::min(f.size(), i + 3); ++j)
            worst = std::max(worst, std::abs(inner_product(f[i], f[j]) - (i == j ? 1.0 : 0.0)));
    return worst;
}

} // namespace

double ExpansionCoefficients::parseval() const
{
    double s = 0.0;
    for (const cplx& c : values) s += std::norm(c);
    return s;
}

void assign_levels(ExpansionCoefficients& c)
{
    const std::size_t n = c.labels.size();
    c.level.assign(n, 0);
    c.level_values.clear();
    if (n == 0) return;
    const auto [lo, hi] = std::minmax_element(c.labels.begin(), c.labels.end());
    const double tol = degeneracy_threshold * (*hi - *lo);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return c.labels[a] < c.labels[b]; });
    double anchor = c.labels[order[0]];
    c.level_values.push_back(anchor);
    for (std::size_t k = 0; k < n; ++k) {
        const double v = c.labels[order[k]];
        if (v - anchor > tol) {
            anchor = v;
            c.level_values.push_back(v);
        }
        c.level[order[k]] = c.level_values.size() - 1;
    }
}

ExpansionCoefficients expand(const ComplexField& state, const Basis& basis)
{
    require_same_grid(state, basis.functions().front());
    if (!basis.delta_normalized()) {
        const double defect = spot_defect(basis);
        if (defect > orthonormality_tolerance)
            throw DomainError("expansion basis is not orthonormal (defect " + std::to_string(defect) + ")");
    }
    ExpansionCoefficients c;
    c.labels.assign(basis.labels().begin(), basis.labels().end());
    c.values.reserve(basis.size());
    for (const ComplexField& b : basis.functions()) c.values.push_back(inner_product(b, state));
    assign_levels(c);
    return c;
}

ExpansionCoefficients expand(const ComplexField& state, const quantum::SpectralDecomposition& basis)
{
    return expand(state, Basis::from_spectrum(basis));
}

ComplexField reconstruct(const ExpansionCoefficients& c, const Basis& basis)
{
    if (c.values.size() > basis.size()) throw DomainError("more coefficients than basis functions");
    const Grid1D& grid = basis.grid();
    std::vector<cplx> v(grid.size());
    for (std::size_t i = 0; i < c.values.size(); ++i) {
        const double w = basis.delta_normalized() ? grid.weight(i) : 1.0;
        kernels::axpy(c.values[i] * w, basis.functions()[i].values(), v);
    }
    return ComplexField(grid, std::move(v));
}

ComplexField completeness_kernel(const Basis& basis, std::size_t count, double x_prime)
{
    if (count == 0 || count > basis.size()) throw DomainError("kernel size must be in [1, basis size]");
    const Grid1D& grid = basis.grid();
    const std::size_t j = grid.node_index(x_prime);
    std::vector<cplx> v(grid.size());
    for (std::size_t i = 0; i < count; ++i) {
        const ComplexField& b = basis.functions()[i];
        kernels::axpy(std::conj(b[j]), b.values(), v);
    }
    return ComplexField(grid, std::move(v));
}

ComplexField kernel_reproduction(const Basis& basis, std::size_t count, const ComplexField& f)
{
    const Basis head = basis.truncated(count);
    ExpansionCoefficients c;
    for (const ComplexField& b : head.functions()) c.values.push_back(inner_product(b, f));
    return reconstruct(c, head);
}

double reproduction_error(const Basis& basis, std::size_t count, const ComplexField& f)
{
    const double n = norm(f);
    if (!(n > 0.0)) throw DomainError("reproduction error of a zero field");
    return norm(f - kernel_reproduction(basis, count, f)) / n;
}

ExpansionCoefficients continuum_momentum_density(const ComplexField& state, const Grid1D& p_grid, double hbar)
{
    if (!(hbar > 0.0)) throw DomainError("hbar must be positive");
    const Grid1D& grid = state.grid();
    const double edge = std::max(std::abs(state[0]), std::abs(state[state.size() - 1]));
    if (edge > 1e-10 * state.max_abs())
        throw DomainError("state does not decay at the grid edges (|psi| = " + std::to_string(edge) +
                          "); momentum density would alias");
    const double norm_factor = 1.0 / std::sqrt(2.0 * std::numbers::pi * hbar);
    ExpansionCoefficients c;
    c.labels = p_grid.coordinates();
    c.values.resize(p_grid.size());
    for (std::size_t k = 0; k < p_grid.size(); ++k) {
        const double p = p_grid.x(k);
        cplx s{};
        for (std::size_t i = 0; i < grid.size(); ++i)
            s += grid.weight(i) * state[i] * std::polar(1.0, -p * grid.x(i) / hbar);
        c.values[k] = norm_factor * s;
    }
    assign_levels(c);
    return c;
}

} // namespace hjwave::operators
