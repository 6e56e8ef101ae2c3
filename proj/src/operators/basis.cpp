#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hjwave/error.hpp"
#include "hjwave/kernels.hpp"
#include "hjwave/operators.hpp"

namespace hjwave::operators {

std::vector<ComplexField> gram_schmidt(std::span<const ComplexField> fields)
{
    std::vector<ComplexField> out;
    out.reserve(fields.size());
    for (std::size_t k = 0; k < fields.size(); ++k) {
        if (k > 0) require_same_grid(fields[0], fields[k]);
        const double original = norm(fields[k]);
        if (!(original > 0.0)) throw DomainError("gram_schmidt: input " + std::to_string(k) + " is zero");
        std::vector<cplx> v(fields[k].values().begin(), fields[k].values().end());
        for (int pass = 0; pass < 2; ++pass) {
            for (const ComplexField& q : out) {
                const cplx c = inner_product(q, ComplexField(q.grid(), v));
                kernels::axpy(-c, q.values(), v);
            }
        }
        ComplexField r(fields[k].grid(), std::move(v), fields[k].time());
        const double left = norm(r);
        if (left < 1e-10 * original)
            throw DomainError("gram_schmidt: input " + std::to_string(k) +
                              " is linearly dependent on the preceding inputs");
        out.push_back(r.scaled(1.0 / left));
    }
    return out;
}

Basis::Basis(std::vector<double> labels, std::vector<ComplexField> functions, bool delta_normalized)
    : labels_(std::move(labels)), functions_(std::move(functions)), delta_(delta_normalized)
{
    if (functions_.empty()) throw DomainError("basis must not be empty");
    if (labels_.size() != functions_.size()) throw DomainError("basis needs one label per function");
    for (const auto& f : functions_) require_same_grid(functions_.front(), f);
}

Basis Basis::from_spectrum(const quantum::SpectralDecomposition& s)
{
    return Basis({s.eigenvalues().begin(), s.eigenvalues().end()},
                 {s.eigenfunctions().begin(), s.eigenfunctions().end()});
}

Basis Basis::momentum_box(const Grid1D& grid, std::size_t count, double hbar)
{
    if (count == 0 || count > grid.size())
        throw DomainError("momentum basis size must be in [1, n_points]");
    std::vector<double> labels;
    std::vector<ComplexField> fns;
    for (std::size_t k = 0; k < count; ++k) {
        const long m = (k % 2 == 1) ? static_cast<long>(k + 1) / 2 : -static_cast<long>(k / 2);
        labels.push_back(box_momentum(m, grid, hbar));
        fns.push_back(momentum_eigenfunction_box(m, grid, hbar));
    }
    return Basis(std::move(labels), std::move(fns));
}

Basis Basis::position(const Grid1D& grid)
{
    std::vector<double> labels;
    std::vector<ComplexField> fns;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        labels.push_back(grid.x(j));
        fns.push_back(position_eigenfunction(grid.x(j), grid));
    }
    return Basis(std::move(labels), std::move(fns), true);
}

Basis Basis::truncated(std::size_t count) const
{
    if (count == 0 || count > size()) throw DomainError("truncation size must be in [1, basis size]");
    return Basis({labels_.begin(), labels_.begin() + static_cast<long>(count)},
                 {functions_.begin(), functions_.begin() + static_cast<long>(count)}, delta_);
}

double Basis::orthonormality_defect() const
{
    double worst = 0.0;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i; j < size(); ++j)
            worst = std::max(worst, std::abs(inner_product(functions_[i], functions_[j]) - (i == j ? 1.0 : 0.0)));
    return worst;
}

double box_momentum(long index, const Grid1D& grid, double hbar)
{
    return 2.0 * std::numbers::pi * hbar * static_cast<double>(index) / grid.length();
}

ComplexField momentum_eigenfunction_box(long index, const Grid1D& grid, double hbar)
{
    if (!grid.periodic()) throw DomainError("box momentum eigenfunctions need a periodic grid");
    if (!(hbar > 0.0)) throw DomainError("hbar must be positive");
    const double p = box_momentum(index, grid, hbar);
    const double amp = 1.0 / std::sqrt(grid.length());
    return ComplexField::sample(grid, [&](double x) { return std::polar(amp, p * x / hbar); });
}

ComplexField position_eigenfunction(double x_prime, const Grid1D& grid)
{
    const std::size_t j = grid.node_index(x_prime);
    std::vector<cplx> v(grid.size());
    v[j] = 1.0 / grid.weight(j);
    return ComplexField(grid, std::move(v));
}

} // namespace hjwave::operators
