#include "hjwave/optics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hjwave/error.hpp"

namespace hjwave::optics {

RefractiveProfile RefractiveProfile::constant(double n0)
{
    RefractiveProfile p;
    p.kind_ = Kind::constant;
    p.n0_ = n0;
    return p;
}

RefractiveProfile RefractiveProfile::linear(double n0, double gradient)
{
    RefractiveProfile p;
    p.kind_ = Kind::linear;
    p.n0_ = n0;
    p.gradient_ = gradient;
    return p;
}

RefractiveProfile RefractiveProfile::tabulated(const Grid1D& grid, std::vector<double> samples)
{
    if (samples.size() != grid.size()) throw DomainError("tabulated profile needs one sample per node");
    if (grid.periodic()) throw DomainError("tabulated profile needs a dirichlet (endpoint-inclusive) grid");
    RefractiveProfile p;
    p.kind_ = Kind::tabulated;
    p.x0_ = grid.x_min();
    p.dx_ = grid.spacing();
    p.samples_ = std::move(samples);
    return p;
}

double RefractiveProfile::operator()(double x) const
{
    switch (kind_) {
    case Kind::constant: return n0_;
    case Kind::linear: return n0_ + gradient_ * x;
    case Kind::tabulated: {
        const double s = std::clamp((x - x0_) / dx_, 0.0, static_cast<double>(samples_.size() - 1));
        const auto i = std::min(static_cast<std::size_t>(s), samples_.size() - 2);
        const double t = s - static_cast<double>(i);
        return (1.0 - t) * samples_[i] + t * samples_[i + 1];
    }
    }
    return n0_;
}

double RefractiveProfile::slope(double x) const
{
    switch (kind_) {
    case Kind::constant: return 0.0;
    case Kind::linear: return gradient_;
    case Kind::tabulated: {
        const double s = std::clamp((x - x0_) / dx_, 0.0, static_cast<double>(samples_.size() - 1));
        const auto i = std::min(static_cast<std::size_t>(s), samples_.size() - 2);
        return (samples_[i + 1] - samples_[i]) / dx_;
    }
    }
    return 0.0;
}

std::vector<double> RefractiveProfile::sample(const Grid1D& grid) const
{
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*this)(grid.x(i));
    return out;
}

double RefractiveProfile::max_on(const Grid1D& grid) const
{
    const auto s = sample(grid);
    return *std::max_element(s.begin(), s.end());
}

void RefractiveProfile::validate_on(const Grid1D& grid) const
{
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = (*this)(grid.x(i));
        if (!std::isfinite(v) || v < 1.0 - 1e-12)
            throw DomainError("refractive index " + std::to_string(v) + " at x=" + std::to_string(grid.x(i)) +
                              " is not a physical medium (n >= 1)");
    }
}

EikonalSolution EikonalSolution::scaled_sum(double a, const EikonalSolution& other, double b) const
{
    if (!(grid == other.grid)) throw GridMismatchError("eikonal solutions live on different grids");
    EikonalSolution out{grid, lambda_bar, path};
    for (std::size_t i = 0; i < path.size(); ++i) out.path[i] = a * path[i] + b * other.path[i];
    return out;
}

EikonalSolution eikonal_integrate(const RefractiveProfile& n, const Grid1D& grid)
{
    n.validate_on(grid);
    const auto ns = n.sample(grid);
    EikonalSolution sol{grid, 0.0, std::vector<cplx>(grid.size())};
    double acc = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        acc += 0.5 * grid.spacing() * (ns[i - 1] + ns[i]);
        sol.path[i] = acc;
    }
    return sol;
}

ComplexField helmholtz_solve(const RefractiveProfile& n, double lambda_bar, const Grid1D& grid,
                             HelmholtzInitialData initial)
{
    if (!(lambda_bar > 0.0)) throw DomainError("lambda_bar must be positive");
    n.validate_on(grid);
    const double h = grid.spacing();
    const double inv_l2 = 1.0 / (lambda_bar * lambda_bar);
    auto k2 = [&](double x) {
        const double v = n(x);
        return v * v * inv_l2;
    };
    std::vector<cplx> u(grid.size());
    cplx y = initial.u;
    cplx dy = initial.du;
    u[0] = y;
    // first-order system (u, u')' = (u', -k^2 u)
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double x = grid.x(i);
        const double km = k2(x + 0.5 * h);
        const cplx a1 = dy, b1 = -k2(x) * y;
        const cplx a2 = dy + 0.5 * h * b1, b2 = -km * (y + 0.5 * h * a1);
        const cplx a3 = dy + 0.5 * h * b2, b3 = -km * (y + 0.5 * h * a2);
        const cplx a4 = dy + h * b3, b4 = -k2(x + h) * (y + h * a3);
        y += h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
        dy += h / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
        u[i + 1] = y;
    }
    return ComplexField(grid, std::move(u));
}

EikonalSolution phase_from_wave(const ComplexField& u, double lambda_bar)
{
    if (!(lambda_bar > 0.0)) throw DomainError("lambda_bar must be positive");
    const std::size_t n = u.size();
    const cplx ref = u[0];
    if (ref == cplx{}) throw NumericalError("wave amplitude vanishes at x_min");
    std::vector<cplx> ratio(n);
    std::vector<bool> valid(n, true);
    for (std::size_t i = 0; i < n; ++i) {
        ratio[i] = u[i] / ref;
        if (std::abs(ratio[i]) == 0.0)
            throw NumericalError("log of zero amplitude at node " + std::to_string(i));
    }
    const auto phase = unwrapped_arg(ratio, valid);
    EikonalSolution sol{u.grid(), lambda_bar, std::vector<cplx>(n)};
    for (std::size_t i = 0; i < n; ++i)
        sol.path[i] = cplx{lambda_bar * phase[i], -lambda_bar * std::log(std::abs(ratio[i]))};
    return sol;
}

namespace {

RealMasked residual_impl(const EikonalSolution& s, const RefractiveProfile& n, double lambda_bar)
{
    const Grid1D& g = s.grid;
    const std::size_t m = g.size();
    const double h = g.spacing();
    RealMasked r{std::vector<double>(m, 0.0), std::vector<bool>(m, false)};
    for (std::size_t i = 1; i + 1 < m; ++i) {
        const cplx d1 = (s.path[i + 1] - s.path[i - 1]) / (2.0 * h);
        const cplx d2 = (s.path[i + 1] - 2.0 * s.path[i] + s.path[i - 1]) / (h * h);
        const double nx = n(g.x(i));
        r.values[i] = std::abs(d1 * d1 - nx * nx - cplx{0.0, lambda_bar} * d2);
        r.valid[i] = true;
    }
    return r;
}

} // namespace

RealMasked eikonal_residual(const EikonalSolution& path, const RefractiveProfile& n)
{
    return residual_impl(path, n, 0.0);
}

RealMasked em_eikonal_residual(const EikonalSolution& path, const RefractiveProfile& n, double lambda_bar)
{
    if (!(lambda_bar >= 0.0)) throw DomainError("lambda_bar must be non-negative");
    return residual_impl(path, n, lambda_bar);
}

RealMasked timedep_em_eikonal_residual(std::span<const cplx> xi_prev, std::span<const cplx> xi_now,
                                       std::span<const cplx> xi_next, double dt, const Grid1D& grid,
                                       const RefractiveProfile& n, double c, double lambda_bar)
{
    const std::size_t m = grid.size();
    if (xi_prev.size() != m || xi_now.size() != m || xi_next.size() != m)
        throw DomainError("time slices must match the grid");
    if (!(dt > 0.0) || !(c > 0.0)) throw DomainError("dt and c must be positive");
    const double h = grid.spacing();
    RealMasked r{std::vector<double>(m, 0.0), std::vector<bool>(m, false)};
    for (std::size_t i = 1; i + 1 < m; ++i) {
        const cplx dx1 = (xi_now[i + 1] - xi_now[i - 1]) / (2.0 * h);
        const cplx dx2 = (xi_now[i + 1] - 2.0 * xi_now[i] + xi_now[i - 1]) / (h * h);
        const cplx dt1 = (xi_next[i] - xi_prev[i]) / (2.0 * dt);
        const cplx dt2 = (xi_next[i] - 2.0 * xi_now[i] + xi_prev[i]) / (dt * dt);
        const double nc2 = std::pow(n(grid.x(i)) / c, 2);
        r.values[i] = std::abs(dx1 * dx1 - nc2 * dt1 * dt1 - cplx{0.0, lambda_bar} * (dx2 - nc2 * dt2));
        r.valid[i] = true;
    }
    return r;
}

cplx time_factor(double t, double c, double lambda_bar, int sign)
{
    return std::polar(1.0, static_cast<double>(sign) * c * t / lambda_bar);
}

double time_factor_residual(double c, double lambda_bar, int sign, double t0, double t1, double dt)
{
    if (!(lambda_bar > 0.0) || !(c > 0.0) || !(dt > 0.0) || !(t1 > t0)) throw DomainError("invalid time window");
    const double w2 = (c / lambda_bar) * (c / lambda_bar);
    double worst = 0.0;
    const auto steps = static_cast<std::size_t>(std::ceil((t1 - t0) / dt));
    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = t0 + static_cast<double>(k) * dt;
        auto f = [&](double s) { return time_factor(t + s * dt, c, lambda_bar, sign); };
        const cplx d2 = (-f(-2) + 16.0 * f(-1) - 30.0 * f(0) + 16.0 * f(1) - f(2)) / (12.0 * dt * dt);
        worst = std::max(worst, std::abs(d2 + w2 * f(0)) / w2);
    }
    return worst;
}

std::vector<LimitRow> eikonal_limit_study(const RefractiveProfile& n, const Grid1D& grid,
                                          std::span<const double> lambda_bars)
{
    if (lambda_bars.empty()) throw DomainError("limit study needs at least one lambda_bar");
    for (std::size_t i = 0; i < lambda_bars.size(); ++i) {
        if (!(lambda_bars[i] > 0.0)) throw DomainError("lambda_bar values must be positive");
        if (i > 0 && !(lambda_bars[i] < lambda_bars[i - 1]))
            throw DomainError("lambda_bar values must be strictly decreasing");
    }
    n.validate_on(grid);
    const double smallest = lambda_bars.back();
    const double ppw = 2.0 * std::numbers::pi * smallest / n.max_on(grid) / grid.spacing();
    if (ppw < min_points_per_wavelength)
        throw DomainError("grid too coarse: " + std::to_string(ppw) + " points per wavelength at lambda_bar=" +
                          std::to_string(smallest) + " (need 16)");

    const EikonalSolution ray = eikonal_integrate(n, grid);
    std::vector<LimitRow> rows;
    rows.reserve(lambda_bars.size());
    for (double lb : lambda_bars) {
        const ComplexField u =
            helmholtz_solve(n, lb, grid, {cplx{1.0, 0.0}, cplx{0.0, n(grid.x_min()) / lb}});
        const EikonalSolution wave = phase_from_wave(u, lb);
        double err = 0.0;
        for (std::size_t i = 1; i + 1 < grid.size(); ++i) err = std::max(err, std::abs(wave.path[i] - ray.path[i]));
        rows.push_back({lb, err});
    }
    return rows;
}

double convergence_order(std::span<const LimitRow> rows)
{
    if (rows.size() < 2) throw DomainError("need at least two rows to measure an order");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : rows) {
        if (!(r.max_phase_error > 0.0)) throw NumericalError("cannot take log of a zero error");
        const double x = std::log(r.lambda_bar), y = std::log(r.max_phase_error);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double k = static_cast<double>(rows.size());
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

} // namespace hjwave::optics
