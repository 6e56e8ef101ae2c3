#pragma once

#include <span>
#include <string>
#include <vector>

#include "hjwave/field.hpp"

namespace hjwave::optics {

/// Refractive index n(x).
class RefractiveProfile {
public:
    enum class Kind { constant, linear, tabulated };

    static RefractiveProfile constant(double n0);
    /// n(x) = n0 + gradient * x
    static RefractiveProfile linear(double n0, double gradient);
    /// Samples on a grid, linearly interpolated between nodes.
    static RefractiveProfile tabulated(const Grid1D& grid, std::vector<double> samples);

    Kind kind() const noexcept { return kind_; }
    double operator()(double x) const;
    /// dn/dx (analytic for constant/linear, interpolant slope for tabulated)
    double slope(double x) const;

    std::vector<double> sample(const Grid1D& grid) const;
    double max_on(const Grid1D& grid) const;

    /// n >= 1 - 1e-12 and finite at every node; throws DomainError otherwise.
    void validate_on(const Grid1D& grid) const;

private:
    RefractiveProfile() = default;

    Kind kind_ = Kind::constant;
    double n0_ = 1.0;
    double gradient_ = 0.0;
    double x0_ = 0.0;
    double dx_ = 1.0;
    std::vector<double> samples_;
};

/// Optical path function on a grid; complex when extracted from a wave.
struct EikonalSolution {
    Grid1D grid;
    double lambda_bar = 0.0; // 0 for the geometrical-optics (ray) solution
    std::vector<cplx> path;

    EikonalSolution scaled_sum(double a, const EikonalSolution& other, double b) const;
};

/// Positive-root solution of (dΛ/dx)^2 = n^2 with Λ(x_min) = 0, by cumulative trapezoid.
EikonalSolution eikonal_integrate(const RefractiveProfile& n, const Grid1D& grid);

struct HelmholtzInitialData {
    cplx u{1.0, 0.0};
    cplx du{0.0, 0.0};
};

/// Solves u'' = -(n^2 / lambda_bar^2) u as an initial-value march from x_min (classical RK4).
ComplexField helmholtz_solve(const RefractiveProfile& n, double lambda_bar, const Grid1D& grid,
                             HelmholtzInitialData initial);

/// Λ = -i lambda_bar log(u / u(x_min)) with the phase unwrapped from x_min.
/// Real part is lambda_bar * arg u, imaginary part -lambda_bar log|u / u(x_min)|.
EikonalSolution phase_from_wave(const ComplexField& u, double lambda_bar);

/// |Λ'^2 - n^2| at interior nodes.
RealMasked eikonal_residual(const EikonalSolution& path, const RefractiveProfile& n);

/// |Λ'^2 - n^2 - i lambda_bar Λ''| at interior nodes.
RealMasked em_eikonal_residual(const EikonalSolution& path, const RefractiveProfile& n, double lambda_bar);

/// Residual of the time-dependent electromagnetic eikonal equation for ξ(x,t)
/// sampled at t-dt, t, t+dt:
/// |ξ_x^2 - (n/c)^2 ξ_t^2 - i lambda_bar (ξ_xx - (n/c)^2 ξ_tt)| at interior nodes.
RealMasked timedep_em_eikonal_residual(std::span<const cplx> xi_prev, std::span<const cplx> xi_now,
                                       std::span<const cplx> xi_next, double dt, const Grid1D& grid,
                                       const RefractiveProfile& n, double c, double lambda_bar);

/// Time factor f(t) = exp(sign * i c t / lambda_bar), sign = +1 or -1.
cplx time_factor(double t, double c, double lambda_bar, int sign);

/// max over t in [t0, t1] of |f'' + (c/lambda_bar)^2 f| / (c/lambda_bar)^2, with f''
/// from a five-point stencil of spacing dt.
double time_factor_residual(double c, double lambda_bar, int sign, double t0, double t1, double dt);

struct LimitRow {
    double lambda_bar;
    double max_phase_error;
};

/// Helmholtz-vs-eikonal comparison over decreasing lambda_bar values.
///
/// Each Helmholtz solve starts from the local plane wave u = 1, u' = i n(x_min)/lambda_bar;
/// the reported error is max |Λ_wave - Λ_eikonal| over interior nodes. Throws
/// DomainError when the grid has fewer than 16 points per local wavelength
/// 2 pi lambda_bar / n_max at the smallest lambda_bar.
std::vector<LimitRow> eikonal_limit_study(const RefractiveProfile& n, const Grid1D& grid,
                                          std::span<const double> lambda_bars);

/// Least-squares slope of log(error) against log(lambda_bar).
double convergence_order(std::span<const LimitRow> rows);

inline constexpr double min_points_per_wavelength = 16.0;

} // namespace hjwave::optics
