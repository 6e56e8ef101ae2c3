#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hjwave/classical.hpp"
#include "hjwave/error.hpp"

namespace hjwave::classical {

double ho_action(double q, double t, double energy, double mass, double omega, double constant)
{
    if (!(energy > 0.0) || !(mass > 0.0) || !(omega > 0.0))
        throw DomainError("oscillator action needs E, m, omega > 0");
    const double amp = std::sqrt(2.0 * energy / (mass * omega * omega));
    if (std::abs(q) > amp * (1.0 + 1e-12))
        throw DomainError("q=" + std::to_string(q) + " lies beyond the turning point " + std::to_string(amp));
    const double s = std::clamp(q / amp, -1.0, 1.0);
    const double radicand = std::max(0.0, 2.0 * mass * energy - mass * mass * omega * omega * q * q);
    return -energy * t + (energy / omega) * std::asin(s) + 0.5 * q * std::sqrt(radicand) + constant;
}

ActionFunction ActionFunction::free_particle(double momentum, double mass)
{
    if (!(mass > 0.0) || !std::isfinite(momentum)) throw DomainError("free particle needs finite p and m > 0");
    ActionFunction a;
    a.kind_ = Kind::free_particle;
    a.mass_ = mass;
    a.momentum_ = momentum;
    a.energy_ = momentum * momentum / (2.0 * mass);
    return a;
}

ActionFunction ActionFunction::harmonic_oscillator(double energy, double mass, double omega, double constant)
{
    if (!(energy > 0.0) || !(mass > 0.0) || !(omega > 0.0))
        throw DomainError("oscillator action needs E, m, omega > 0");
    ActionFunction a;
    a.kind_ = Kind::harmonic_oscillator;
    a.energy_ = energy;
    a.mass_ = mass;
    a.omega_ = omega;
    a.constant_ = constant;
    return a;
}

ActionFunction ActionFunction::from_samples(const Grid1D& grid, std::vector<double> characteristic, double energy,
                                            double mass)
{
    if (characteristic.size() != grid.size()) throw DomainError("W needs one sample per grid node");
    if (!(mass > 0.0)) throw DomainError("mass must be positive");
    if (grid.periodic()) throw DomainError("sampled actions need a dirichlet grid");
    ActionFunction a;
    a.kind_ = Kind::from_samples;
    a.energy_ = energy;
    a.mass_ = mass;
    a.x0_ = grid.x_min();
    a.dx_ = grid.spacing();
    a.w_ = std::move(characteristic);
    const std::size_t n = a.w_.size();
    auto fd = [&](const std::vector<double>& f) {
        std::vector<double> d(n);
        for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * a.dx_);
        d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * a.dx_);
        d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * a.dx_);
        return d;
    };
    a.dw_ = fd(a.w_);
    a.v_.resize(n);
    for (std::size_t i = 0; i < n; ++i) a.v_[i] = energy - a.dw_[i] * a.dw_[i] / (2.0 * mass);
    a.dv_ = fd(a.v_);
    return a;
}

double ActionFunction::amplitude() const noexcept
{
    if (kind_ == Kind::harmonic_oscillator) return std::sqrt(2.0 * energy_ / (mass_ * omega_ * omega_));
    return std::numeric_limits<double>::infinity();
}

double ActionFunction::turning_tolerance() const noexcept
{
    return kind_ == Kind::harmonic_oscillator ? 1e-9 * amplitude() : 0.0;
}

bool ActionFunction::allowed(double q) const noexcept
{
    switch (kind_) {
    case Kind::free_particle: return std::isfinite(q);
    case Kind::harmonic_oscillator: return std::abs(q) <= amplitude() - turning_tolerance();
    case Kind::from_samples:
        return q >= x0_ && q <= x0_ + dx_ * static_cast<double>(w_.size() - 1);
    }
    return false;
}

namespace {

double interpolate(const std::vector<double>& f, double x0, double dx, double q)
{
    const double s = std::clamp((q - x0) / dx, 0.0, static_cast<double>(f.size() - 1));
    const auto i = std::min(static_cast<std::size_t>(s), f.size() - 2);
    const double t = s - static_cast<double>(i);
    return (1.0 - t) * f[i] + t * f[i + 1];
}

} // namespace

double ActionFunction::characteristic(double q) const
{
    switch (kind_) {
    case Kind::free_particle: return momentum_ * q;
    case Kind::harmonic_oscillator: return ho_action(q, 0.0, energy_, mass_, omega_, 0.0);
    case Kind::from_samples: return interpolate(w_, x0_, dx_, q);
    }
    return 0.0;
}

double ActionFunction::principal(double q, double t) const
{
    if (kind_ == Kind::harmonic_oscillator) return ho_action(q, t, energy_, mass_, omega_, constant_);
    return -energy_ * t + characteristic(q) + constant_;
}

double ActionFunction::momentum(double q) const
{
    switch (kind_) {
    case Kind::free_particle: return momentum_;
    case Kind::harmonic_oscillator:
        return std::sqrt(std::max(0.0, 2.0 * mass_ * energy_ - mass_ * mass_ * omega_ * omega_ * q * q));
    case Kind::from_samples: return sampled_slope(q);
    }
    return 0.0;
}

double ActionFunction::sampled_slope(double q) const { return interpolate(dw_, x0_, dx_, q); }

double ActionFunction::potential(double q) const
{
    switch (kind_) {
    case Kind::free_particle: return 0.0;
    case Kind::harmonic_oscillator: return 0.5 * mass_ * omega_ * omega_ * q * q;
    case Kind::from_samples: return interpolate(v_, x0_, dx_, q);
    }
    return 0.0;
}

double ActionFunction::force(double q) const
{
    switch (kind_) {
    case Kind::free_particle: return 0.0;
    case Kind::harmonic_oscillator: return -mass_ * omega_ * omega_ * q;
    case Kind::from_samples: return -interpolate(dv_, x0_, dx_, q);
    }
    return 0.0;
}

} // namespace hjwave::classical
