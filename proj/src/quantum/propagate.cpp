#include <cmath>

#include "hjwave/error.hpp"
#include "hjwave/kernels.hpp"
#include "hjwave/quantum.hpp"

namespace hjwave::quantum {

namespace {

TridiagonalSolver build_solver(const Hamiltonian& h, double dt)
{
    const std::size_t d = h.dimension();
    const std::size_t s = h.first_unknown();
    const cplx factor(0.0, dt / (2.0 * h.hbar()));
    const cplx off = factor * h.off_diagonal();
    std::vector<cplx> diag(d);
    for (std::size_t r = 0; r < d; ++r) diag[r] = 1.0 + factor * h.diagonal()[r + s];
    std::vector<cplx> side(d - 1, off);
    if (h.grid().periodic()) return TridiagonalSolver(side, std::move(diag), side, off, off);
    return TridiagonalSolver(side, std::move(diag), side);
}

} // namespace

CrankNicolson::CrankNicolson(const Hamiltonian& h, double dt) : h_(h), dt_(dt), solver_(build_solver(h, dt))
{
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("time step must be positive");
}

ComplexField CrankNicolson::step(const ComplexField& psi) const
{
    const ComplexField hpsi = h_.apply(psi);
    std::vector<cplx> rhs(psi.values().begin(), psi.values().end());
    kernels::axpy(cplx(0.0, -dt_ / (2.0 * h_.hbar())), hpsi.values(), rhs);
    const std::size_t s = h_.first_unknown();
    std::span<cplx> unknowns(rhs.data() + s, h_.dimension());
    solver_.solve(unknowns);
    if (!h_.grid().periodic()) {
        rhs.front() = 0.0;
        rhs.back() = 0.0;
    }
    for (const cplx& v : rhs)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw NumericalError("Crank-Nicolson step produced a non-finite value");
    std::optional<double> t;
    if (psi.time()) t = *psi.time() + dt_;
    return ComplexField(psi.grid(), std::move(rhs), t);
}

ComplexField CrankNicolson::advance(const ComplexField& psi, std::size_t n_steps) const
{
    ComplexField out = psi;
    for (std::size_t k = 0; k < n_steps; ++k) out = step(out);
    return out;
}

ComplexField propagate(const ComplexField& psi0, const PotentialSpec& v, double hbar, double mass, double dt,
                       std::size_t n_steps)
{
    if (std::abs(norm(psi0) - 1.0) > 1e-6) throw DomainError("initial state must be normalized");
    const CrankNicolson cn(Hamiltonian::build(v, psi0.grid(), hbar, mass), dt);
    return cn.advance(psi0, n_steps);
}

PropagationSample diagnostics(const ComplexField& psi, const Hamiltonian& h, double t)
{
    const Grid1D& grid = psi.grid();
    const double n2 = norm_squared(psi);
    if (!(n2 > 0.0)) throw NumericalError("diagnostics of a zero state");
    std::vector<double> xd(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) xd[i] = grid.x(i) * std::norm(psi[i]);
    const ComplexField dpsi = derivative(psi, 1, natural_scheme(grid));
    const cplx p = cplx(0.0, -h.hbar()) * inner_product(psi, dpsi);
    const cplx e = inner_product(psi, h.apply(psi));
    return {t, std::sqrt(n2), integrate(grid, xd) / n2, p.real() / n2, e.real() / n2};
}

std::vector<PropagationSample> propagate_recorded(const ComplexField& psi0, const CrankNicolson& cn,
                                                  std::size_t n_steps, std::size_t every,
                                                  ComplexField* final_state)
{
    if (every == 0) throw DomainError("recording interval must be positive");
    const double t0 = psi0.time().value_or(0.0);
    std::vector<PropagationSample> out;
    out.push_back(diagnostics(psi0, cn.hamiltonian(), t0));
    ComplexField psi = psi0;
    for (std::size_t k = 1; k <= n_steps; ++k) {
        psi = cn.step(psi);
        if (k % every == 0 || k == n_steps)
            out.push_back(diagnostics(psi, cn.hamiltonian(), t0 + static_cast<double>(k) * cn.dt()));
    }
    if (final_state) *final_state = psi;
    return out;
}

} // namespace hjwave::quantum
