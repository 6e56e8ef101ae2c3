#include <algorithm>
#include <cmath>
#include <numbers>

#include "hjwave/error.hpp"
#include "hjwave/operators.hpp"

namespace hjwave::operators {

ComplexField trial_function(const Grid1D& grid, Rng& rng)
{
    constexpr int max_modes = 10;
    const double length = grid.length();
    const int modes = 2 + static_cast<int>(rng.uniform() * (max_modes - 1)); // 2..10
    std::vector<cplx> coeff(modes);
    for (auto& c : coeff) c = {rng.normal(), rng.normal()};
    std::vector<cplx> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double s = (grid.x(i) - grid.x_min()) / length;
        cplx sum{};
        for (int k = 0; k < modes; ++k) {
            if (grid.periodic()) {
                const int m = (k % 2 == 0) ? k / 2 : -(k + 1) / 2; // 0, -1, 1, -2, ...
                sum += coeff[k] * std::polar(1.0, 2.0 * std::numbers::pi * m * s);
            } else {
                sum += coeff[k] * std::sin(std::numbers::pi * (k + 1) * s);
            }
        }
        v[i] = sum;
    }
    if (!grid.periodic()) v.front() = v.back() = 0.0;
    return ComplexField(grid, std::move(v));
}

HermiticityReport hermiticity_check(const LinearOperatorSpec& op, std::size_t trials, std::uint64_t seed)
{
    if (trials == 0) throw DomainError("hermiticity check needs at least one trial");
    Rng rng(seed);
    std::vector<ComplexField> f, g, lf, lg;
    HermiticityReport report;
    report.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
        f.push_back(trial_function(op.grid(), rng));
        g.push_back(trial_function(op.grid(), rng));
        lf.push_back(op.apply(f.back()));
        lg.push_back(op.apply(g.back()));
        report.norm_estimate = std::max({report.norm_estimate, norm(lf.back()) / norm(f.back()),
                                         norm(lg.back()) / norm(g.back())});
    }
    if (!(report.norm_estimate > 0.0)) return report;
    for (std::size_t t = 0; t < trials; ++t) {
        const cplx d = inner_product(f[t], lg[t]) - inner_product(lf[t], g[t]);
        report.max_residual =
            std::max(report.max_residual, std::abs(d) / (norm(f[t]) * norm(g[t]) * report.norm_estimate));
    }
    return report;
}

} // namespace hjwave::operators
