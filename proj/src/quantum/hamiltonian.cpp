#include <cmath>
#include <string>

#include "hjwave/error.hpp"
#include "hjwave/kernels.hpp"
#include "hjwave/quantum.hpp"

namespace hjwave::quantum {

Hamiltonian::Hamiltonian(const Grid1D& grid, std::vector<double> potential, double hbar, double mass)
    : grid_(grid), potential_(std::move(potential)), hbar_(hbar), mass_(mass), off_(0.0)
{
    if (potential_.size() != grid.size()) throw DomainError("potential needs one sample per node");
    if (!(hbar > 0.0) || !(mass > 0.0)) throw DomainError("hbar and mass must be positive");
    for (double v : potential_)
        if (!std::isfinite(v)) throw NumericalError("non-finite potential sample");
    const double dx = grid.spacing();
    off_ = -hbar * hbar / (2.0 * mass * dx * dx);
    diag_.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) diag_[i] = -2.0 * off_ + potential_[i];
}

Hamiltonian Hamiltonian::build(const PotentialSpec& v, const Grid1D& grid, double hbar, double mass)
{
    return Hamiltonian(grid, v.sample(grid), hbar, mass);
}

std::size_t Hamiltonian::dimension() const noexcept
{
    return grid_.periodic() ? grid_.size() : grid_.size() - 2;
}

ComplexField Hamiltonian::apply(const ComplexField& psi) const
{
    if (!(psi.grid() == grid_)) throw GridMismatchError("state and Hamiltonian live on different grids");
    const std::size_t n = grid_.size();
    std::vector<cplx> in(psi.values().begin(), psi.values().end());
    std::vector<cplx> out(n);
    if (!grid_.periodic()) {
        in[0] = 0.0;
        in[n - 1] = 0.0;
    }
    kernels::stencil3(in, diag_, off_, out);
    if (grid_.periodic()) {
        out[0] = off_ * (in[n - 1] + in[1]) + diag_[0] * in[0];
        out[n - 1] = off_ * (in[n - 2] + in[0]) + diag_[n - 1] * in[n - 1];
    }
    return ComplexField(grid_, std::move(out), psi.time());
}

std::vector<double> Hamiltonian::dense() const
{
    const std::size_t d = dimension();
    const std::size_t s = first_unknown();
    std::vector<double> m(d * d, 0.0);
    for (std::size_t r = 0; r < d; ++r) {
        m[r * d + r] = diag_[r + s];
        if (r + 1 < d) {
            m[r * d + r + 1] = off_;
            m[(r + 1) * d + r] = off_;
        }
    }
    if (grid_.periodic()) {
        m[d - 1] += off_;
        m[(d - 1) * d] += off_;
    }
    return m;
}

} // namespace hjwave::quantum
