#pragma once

#include <array>
#include <optional>
#include <vector>

#include "hjwave/field.hpp"
#include "hjwave/tridiagonal.hpp"

namespace hjwave::pauli {

using Matrix2 = std::array<std::array<cplx, 2>, 2>;

/// σ_1, σ_2, σ_3 for k = 1, 2, 3.
const Matrix2& sigma(int k);

/// Two-component wave function (Ψ+, Ψ-) on one grid.
class SpinorField {
public:
    SpinorField(ComplexField plus, ComplexField minus);

    const ComplexField& plus() const noexcept { return plus_; }
    const ComplexField& minus() const noexcept { return minus_; }
    const Grid1D& grid() const noexcept { return plus_.grid(); }
    std::optional<double> time() const noexcept { return plus_.time(); }

    /// ∫ |Ψ+|² + |Ψ-|² dx
    double norm_squared() const;

private:
    ComplexField plus_, minus_;
};

/// Electromagnetic environment of the Pauli equation.
///
/// Empty sample vectors mean "zero" (potentials) or "uniform" (magnetic field).
struct EMFieldConfig {
    std::vector<double> vector_potential; // A_x at the nodes
    std::vector<double> scalar_potential; // φ at the nodes
    std::array<double, 3> b_uniform{0.0, 0.0, 0.0};
    std::vector<std::array<double, 3>> b_samples;
    double mu_s = 0.0;
    double charge = 1.0;
    std::optional<double> g_factor;

    /// μ_s = g e ħ / (4 m c), the moment of a spin-½ particle.
    static double magnetic_moment(double g, double charge, double hbar, double mass, double c);

    /// Finite samples of the right length; μ_s consistent with g when g is set.
    void validate(const Grid1D& grid, double hbar, double mass, double c) const;
};

/// Time stepper for
/// iħ ∂Ψ/∂t = [((-iħ∂ - eA/c)²/2m + eφ) 1 + μ_s σ·B] Ψ.
///
/// Strang splitting: half a spin rotation (exact 2x2 exponential per node),
/// a Crank-Nicolson step of the spatial part (Peierls-phase hopping for A),
/// and another half rotation. The spin block and spatial part commute when B
/// is uniform, so the splitting is then exact.
class PauliPropagator {
public:
    PauliPropagator(const Grid1D& grid, EMFieldConfig fields, double hbar, double mass, double c, double dt);

    double dt() const noexcept { return dt_; }
    SpinorField step(const SpinorField& s) const;
    SpinorField advance(const SpinorField& s, std::size_t n_steps) const;

    /// Spatial Hamiltonian applied to one component.
    ComplexField apply_spatial(const ComplexField& f) const;

private:
    void rotate_spins(std::vector<cplx>& plus, std::vector<cplx>& minus) const;

    Grid1D grid_;
    EMFieldConfig fields_;
    double hbar_, mass_, c_, dt_;
    std::vector<double> diag_;
    std::vector<cplx> hop_; // H(i, i+1); the last entry is the periodic wrap
    std::vector<Matrix2> half_rotation_;
    std::optional<TridiagonalSolver> solver_;
};

/// One step; builds a propagator each call (use PauliPropagator in loops).
SpinorField pauli_step(const SpinorField& s, const EMFieldConfig& fields, double hbar, double mass, double c,
                       double dt);

struct SpinExpectation {
    double sx, sy, sz;
};

/// (<σ1>, <σ2>, <σ3>) of a normalized spinor.
SpinExpectation spin_expectations(const SpinorField& s);

} // namespace hjwave::pauli
