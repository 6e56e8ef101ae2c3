#pragma once

#include <span>
#include <vector>

#include "hjwave/field.hpp"

namespace hjwave::classical {

/// Closed-form principal function of the 1-D harmonic oscillator,
/// S = -E t + (E/ω) arcsin(sqrt(mω²/2E) q) + (q/2) sqrt(2mE - m²ω²q²) + C.
/// Throws DomainError beyond the turning points ±sqrt(2E/(mω²)).
double ho_action(double q, double t, double energy, double mass, double omega, double constant = 0.0);

/// Hamilton principal function S(q,t) = -E t + W(q) of a conservative 1-D system.
///
/// Everything is evaluated on the positive-momentum branch, p = +dW/dq.
class ActionFunction {
public:
    enum class Kind { free_particle, harmonic_oscillator, from_samples };

    /// S = p q - (p²/2m) t
    static ActionFunction free_particle(double momentum, double mass);
    static ActionFunction harmonic_oscillator(double energy, double mass, double omega, double constant = 0.0);
    /// W sampled on a grid (finite differences for its derivatives); V = E - W'^2/2m.
    static ActionFunction from_samples(const Grid1D& grid, std::vector<double> characteristic, double energy,
                                       double mass);

    Kind kind() const noexcept { return kind_; }
    double energy() const noexcept { return energy_; }
    double mass() const noexcept { return mass_; }
    double omega() const noexcept { return omega_; }
    double constant() const noexcept { return constant_; }

    /// Turning-point distance sqrt(2E/(mω²)) for the oscillator, +inf otherwise.
    double amplitude() const noexcept;
    double turning_tolerance() const noexcept;

    bool allowed(double q) const noexcept;
    double characteristic(double q) const;       // W(q)
    double principal(double q, double t) const;  // S(q,t)
    double momentum(double q) const;             // dW/dq
    double potential(double q) const;            // V(q)
    double force(double q) const;                // -dV/dq

private:
    ActionFunction() = default;
    double sampled_slope(double q) const;

    Kind kind_ = Kind::free_particle;
    double energy_ = 0.0;
    double mass_ = 1.0;
    double omega_ = 0.0;
    double constant_ = 0.0;
    double momentum_ = 0.0;
    // from_samples
    double x0_ = 0.0, dx_ = 1.0;
    std::vector<double> w_, dw_, v_, dv_;
};

/// X = exp(i S / hbar) at time t; nodes outside the classically allowed region are 0.
ComplexField classical_wavefunction(const ActionFunction& s, const Grid1D& grid, double t, double hbar);

/// Analytic ∂X/∂t = -(i E / hbar) X.
ComplexField classical_time_derivative(const ActionFunction& s, const Grid1D& grid, double t, double hbar);

/// Defined nodes of a classical wave on a grid (allowed region).
std::vector<bool> allowed_mask(const ActionFunction& s, const Grid1D& grid);

/// -(ħ²/2m)(X')²/X + V X - iħ ∂X/∂t at stencil-interior nodes above the amplitude floor.
ComplexMasked classical_wave_residual_signed(const ComplexField& x, std::span<const double> potential, double hbar,
                                             double mass, const ComplexField& dx_dt);

/// Pointwise modulus of classical_wave_residual_signed.
RealMasked classical_wave_residual(const ComplexField& x, std::span<const double> potential, double hbar,
                                   double mass, const ComplexField& dx_dt);

/// E(x) = -(ħ²/2m)(X')²/X² + V, constant on eigenstates of the classical wave equation.
ComplexMasked classical_energy_field(const ComplexField& x, std::span<const double> potential, double hbar,
                                     double mass);

struct Trajectory {
    std::vector<double> times;
    std::vector<double> positions;
    std::vector<double> momenta;
    std::vector<double> turning_times; // where p changed sign
    double energy = 0.0;
    double mass = 1.0;
    double phase = 0.0;     // ε in A sin(ωt + ε) (oscillator only)
    double amplitude = 0.0; // A (oscillator only)

    std::size_t size() const noexcept { return times.size(); }
    /// ½ m q̇² + V(q) at sample i, with V from the generating action.
    double energy_at(std::size_t i, const ActionFunction& s) const;
};

/// Integrates m dq/dt = ∂S/∂q with classical RK4.
///
/// The momentum is carried along with q (ṗ = -V'(q), the derivative of ∂S/∂q
/// along the motion) and every step is projected back onto the shell
/// p = ±∂S/∂q; the sign flips when the carried momentum passes through zero at
/// a turning point. `branch` is the sign of the initial momentum. Throws
/// DomainError when q0 is not strictly inside the allowed region and
/// NumericalError when a step leaves the allowed region by more than the
/// turning tolerance.
Trajectory integrate_trajectory(const ActionFunction& s, double q0, double t0, double t1, double dt,
                                int branch = +1);

/// Times at which q(t) crosses `level` upwards (cubic Hermite interpolation between samples).
std::vector<double> upward_crossings(const Trajectory& traj, double level = 0.0);

} // namespace hjwave::classical
