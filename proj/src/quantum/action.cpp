#include <algorithm>
#include <cmath>

#include "hjwave/classical.hpp"
#include "hjwave/error.hpp"
#include "hjwave/quantum.hpp"

namespace hjwave::quantum {

namespace {

void check_inputs(const ComplexField& psi, std::span<const double> potential, double hbar, double mass)
{
    if (potential.size() != psi.size()) throw DomainError("potential needs one sample per node");
    if (!(hbar > 0.0) || !(mass > 0.0)) throw DomainError("hbar and mass must be positive");
}

// Central differences of a masked array, only where both neighbours are valid.
// Never wraps: an unwrapped phase is not periodic.
struct Differences {
    std::vector<cplx> d1, d2;
    std::vector<bool> valid;
};

Differences central_differences(const ComplexMasked& a, double dx)
{
    const std::size_t n = a.values.size();
    Differences out{std::vector<cplx>(n), std::vector<cplx>(n), std::vector<bool>(n, false)};
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(a.valid[i - 1] && a.valid[i] && a.valid[i + 1])) continue;
        out.d1[i] = (a.values[i + 1] - a.values[i - 1]) / (2.0 * dx);
        out.d2[i] = (a.values[i + 1] - 2.0 * a.values[i] + a.values[i - 1]) / (dx * dx);
        out.valid[i] = true;
    }
    return out;
}

} // namespace

ComplexMasked quantum_action(const ComplexField& psi, double hbar)
{
    if (!(hbar > 0.0)) throw DomainError("hbar must be positive");
    const auto mask = amplitude_mask(psi, default_amplitude_floor);
    const auto phase = unwrapped_arg(psi.values(), mask);
    ComplexMasked s{std::vector<cplx>(psi.size()), mask};
    for (std::size_t i = 0; i < psi.size(); ++i)
        if (mask[i]) s.values[i] = cplx{hbar * phase[i], -hbar * std::log(std::abs(psi[i]))};
    return s;
}

ComplexMasked quantum_correction_term(const ComplexField& psi, double hbar, double mass)
{
    if (!(mass > 0.0)) throw DomainError("mass must be positive");
    const auto d = central_differences(quantum_action(psi, hbar), psi.grid().spacing());
    ComplexMasked out{std::vector<cplx>(psi.size()), d.valid};
    const cplx factor{0.0, hbar / (2.0 * mass)};
    for (std::size_t i = 0; i < psi.size(); ++i)
        if (d.valid[i]) out.values[i] = factor * d.d2[i];
    return out;
}

RealMasked quantum_hj_residual(const ComplexField& psi, std::span<const double> potential, double hbar,
                               double mass, const ComplexField& dpsi_dt)
{
    check_inputs(psi, potential, hbar, mass);
    require_same_grid(psi, dpsi_dt);
    const auto d = central_differences(quantum_action(psi, hbar), psi.grid().spacing());
    RealMasked r{std::vector<double>(psi.size(), 0.0), d.valid};
    const cplx i_hbar{0.0, hbar};
    for (std::size_t i = 0; i < psi.size(); ++i) {
        if (!d.valid[i]) continue;
        const cplx ds_dt = -i_hbar * dpsi_dt[i] / psi[i];
        const cplx lhs = d.d1[i] * d.d1[i] / (2.0 * mass) + potential[i] + ds_dt;
        r.values[i] = std::abs(lhs - i_hbar / (2.0 * mass) * d.d2[i]);
    }
    return r;
}

ComplexMasked schrodinger_residual_signed(const ComplexField& psi, std::span<const double> potential, double hbar,
                                          double mass, const ComplexField& dpsi_dt)
{
    check_inputs(psi, potential, hbar, mass);
    require_same_grid(psi, dpsi_dt);
    const auto mask = stencil_interior(psi.grid(), std::vector<bool>(psi.size(), true));
    const ComplexField d2 = derivative(psi, 2, natural_scheme(psi.grid()));
    const double kin = hbar * hbar / (2.0 * mass);
    ComplexMasked r{std::vector<cplx>(psi.size()), mask};
    for (std::size_t i = 0; i < psi.size(); ++i)
        if (mask[i]) r.values[i] = -kin * d2[i] + potential[i] * psi[i] - cplx{0.0, hbar} * dpsi_dt[i];
    return r;
}

LinearizationLedger linearization_demo(const ComplexField& x, std::span<const double> potential, double hbar,
                                       double mass, const ComplexField& dx_dt)
{
    LinearizationLedger out;
    out.classical = classical::classical_wave_residual_signed(x, potential, hbar, mass, dx_dt);
    out.quantum = schrodinger_residual_signed(x, potential, hbar, mass, dx_dt);

    const ComplexField d1 = derivative(x, 1, natural_scheme(x.grid()));
    // end nodes carry one-sided derivatives, so the ratio is only trusted where the central stencil fits
    ComplexMasked ratio{std::vector<cplx>(x.size()),
                        stencil_interior(x.grid(), amplitude_mask(x, default_amplitude_floor))};
    for (std::size_t i = 0; i < x.size(); ++i)
        if (ratio.valid[i]) ratio.values[i] = d1[i] / x[i];
    const auto d = central_differences(ratio, x.grid().spacing());

    const double kin = hbar * hbar / (2.0 * mass);
    out.correction = {std::vector<cplx>(x.size()), std::vector<bool>(x.size(), false)};
    for (std::size_t i = 0; i < x.size(); ++i) {
        const bool ok = d.valid[i] && out.classical.valid[i] && out.quantum.valid[i];
        out.correction.valid[i] = ok;
        out.classical.valid[i] = ok;
        out.quantum.valid[i] = ok;
        if (!ok) continue;
        out.correction.values[i] = -kin * x[i] * d.d1[i];
        out.mismatch = std::max(
            out.mismatch, std::abs(out.quantum.values[i] - out.classical.values[i] - out.correction.values[i]));
        out.max_correction = std::max(out.max_correction, std::abs(out.correction.values[i]));
    }
    if (out.correction.count_valid() == 0) throw NumericalError("linearization ledger has no valid node");
    return out;
}

} // namespace hjwave::quantum
