#pragma once

// Independent oracles shared by the unit and acceptance tests.

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace hjwave::test {

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(std::span<const double> x, std::span<const double> y)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Composite Simpson rule on [a, b] with 2m panels.
template <class F>
double simpson(F&& f, double a, double b, int m = 2000)
{
    const double h = (b - a) / (2 * m);
    double s = f(a) + f(b);
    for (int k = 1; k < 2 * m; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
    return s * h / 3.0;
}

/// Harmonic oscillator eigenfunction (m = ω = ħ = 1 scaled by the arguments),
/// by the three-term Hermite recurrence.
inline double oscillator_state(int n, double x, double mass = 1.0, double omega = 1.0, double hbar = 1.0)
{
    const double a = std::sqrt(mass * omega / hbar);
    const double xi = a * x;
    double h0 = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * xi * xi); // normalized ψ0 in ξ
    if (n == 0) return std::sqrt(a) * h0;
    double h1 = std::sqrt(2.0) * xi * h0;
    for (int k = 1; k < n; ++k) {
        const double h2 = std::sqrt(2.0 / (k + 1)) * xi * h1 - std::sqrt(static_cast<double>(k) / (k + 1)) * h0;
        h0 = h1;
        h1 = h2;
    }
    return std::sqrt(a) * h1;
}

/// Frequency of a sampled signal from its upward zero crossings about the mean (linear interpolation).
inline double crossing_frequency(std::span<const double> t, std::span<const double> y)
{
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(y.size());
    std::vector<double> cross;
    for (std::size_t i = 1; i < y.size(); ++i) {
        const double a = y[i - 1] - mean, b = y[i] - mean;
        if (a < 0.0 && b >= 0.0) cross.push_back(t[i - 1] + (t[i] - t[i - 1]) * (-a) / (b - a));
    }
    if (cross.size() < 2) return 0.0;
    const double period = (cross.back() - cross.front()) / static_cast<double>(cross.size() - 1);
    return 2.0 * std::numbers::pi / period;
}

} // namespace hjwave::test
