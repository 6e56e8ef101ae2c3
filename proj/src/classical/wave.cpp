#include <algorithm>
#include <cmath>

#include "hjwave/classical.hpp"
#include "hjwave/error.hpp"

namespace hjwave::classical {

std::vector<bool> allowed_mask(const ActionFunction& s, const Grid1D& grid)
{
    std::vector<bool> m(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) m[i] = s.allowed(grid.x(i));
    return m;
}

ComplexField classical_wavefunction(const ActionFunction& s, const Grid1D& grid, double t, double hbar)
{
    if (!(hbar > 0.0)) throw DomainError("hbar must be positive");
    std::vector<cplx> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double q = grid.x(i);
        if (s.allowed(q)) v[i] = std::polar(1.0, s.principal(q, t) / hbar);
    }
    return ComplexField(grid, std::move(v), t);
}

ComplexField classical_time_derivative(const ActionFunction& s, const Grid1D& grid, double t, double hbar)
{
    return classical_wavefunction(s, grid, t, hbar).scaled(cplx{0.0, -s.energy() / hbar});
}

namespace {

std::vector<bool> evaluation_mask(const ComplexField& x)
{
    return stencil_interior(x.grid(), amplitude_mask(x, default_amplitude_floor));
}

void check_inputs(const ComplexField& x, std::span<const double> potential, double hbar, double mass)
{
    if (potential.size() != x.size()) throw DomainError("potential needs one sample per node");
    if (!(hbar > 0.0) || !(mass > 0.0)) throw DomainError("hbar and mass must be positive");
}

} // namespace

ComplexMasked classical_wave_residual_signed(const ComplexField& x, std::span<const double> potential, double hbar,
                                             double mass, const ComplexField& dx_dt)
{
    check_inputs(x, potential, hbar, mass);
    require_same_grid(x, dx_dt);
    const auto mask = evaluation_mask(x);
    const ComplexField d1 = derivative(x, 1, natural_scheme(x.grid()));
    const double kin = hbar * hbar / (2.0 * mass);
    ComplexMasked r{std::vector<cplx>(x.size()), mask};
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!mask[i]) continue;
        r.values[i] = -kin * d1[i] * d1[i] / x[i] + potential[i] * x[i] - cplx{0.0, hbar} * dx_dt[i];
    }
    return r;
}

RealMasked classical_wave_residual(const ComplexField& x, std::span<const double> potential, double hbar,
                                   double mass, const ComplexField& dx_dt)
{
    const auto signed_r = classical_wave_residual_signed(x, potential, hbar, mass, dx_dt);
    RealMasked r{std::vector<double>(x.size(), 0.0), signed_r.valid};
    for (std::size_t i = 0; i < x.size(); ++i)
        if (r.valid[i]) r.values[i] = std::abs(signed_r.values[i]);
    return r;
}

ComplexMasked classical_energy_field(const ComplexField& x, std::span<const double> potential, double hbar,
                                     double mass)
{
    check_inputs(x, potential, hbar, mass);
    const auto mask = evaluation_mask(x);
    if (std::none_of(mask.begin(), mask.end(), [](bool b) { return b; }))
        throw NumericalError("classical energy field is undefined at every node");
    const ComplexField d1 = derivative(x, 1, natural_scheme(x.grid()));
    const double kin = hbar * hbar / (2.0 * mass);
    ComplexMasked e{std::vector<cplx>(x.size()), mask};
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!mask[i]) continue;
        const cplx ratio = d1[i] / x[i];
        e.values[i] = -kin * ratio * ratio + potential[i];
    }
    return e;
}

} // namespace hjwave::classical
