#include <cmath>
#include <string>

#include "hjwave/classical.hpp"
#include "hjwave/error.hpp"

namespace hjwave::classical {
namespace {

struct PhasePoint {
    double q;
    double p;
};

PhasePoint rk4_step(const ActionFunction& s, PhasePoint y, double dt)
{
    const double m = s.mass();
    auto rhs = [&](PhasePoint z) { return PhasePoint{z.p / m, s.force(z.q)}; };
    const PhasePoint k1 = rhs(y);
    const PhasePoint k2 = rhs({y.q + 0.5 * dt * k1.q, y.p + 0.5 * dt * k1.p});
    const PhasePoint k3 = rhs({y.q + 0.5 * dt * k2.q, y.p + 0.5 * dt * k2.p});
    const PhasePoint k4 = rhs({y.q + dt * k3.q, y.p + dt * k3.p});
    return {y.q + dt / 6.0 * (k1.q + 2.0 * k2.q + 2.0 * k3.q + k4.q),
            y.p + dt / 6.0 * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p)};
}

// Gradient projection onto p²/2m + V(q) = E. Near turning points the
// correction goes mostly into q, elsewhere into p.
PhasePoint project_to_shell(const ActionFunction& s, PhasePoint y)
{
    const double m = s.mass();
    for (int it = 0; it < 3; ++it) {
        const double h = y.p * y.p / (2.0 * m) + s.potential(y.q);
        const double gq = -s.force(y.q);
        const double gp = y.p / m;
        const double g2 = gq * gq + gp * gp;
        if (g2 == 0.0) break;
        const double delta = (s.energy() - h) / g2;
        y.q += delta * gq;
        y.p += delta * gp;
    }
    return y;
}

} // namespace

double Trajectory::energy_at(std::size_t i, const ActionFunction& s) const
{
    const double v = momenta[i] / mass;
    return 0.5 * mass * v * v + s.potential(positions[i]);
}

Trajectory integrate_trajectory(const ActionFunction& s, double q0, double t0, double t1, double dt, int branch)
{
    if (!(dt > 0.0) || !(t1 > t0)) throw DomainError("trajectory needs dt > 0 and t1 > t0");
    if (branch != 1 && branch != -1) throw DomainError("branch must be +1 or -1");
    const double tol = s.turning_tolerance();
    if (!s.allowed(q0) || (s.kind() == ActionFunction::Kind::harmonic_oscillator && std::abs(q0) >= s.amplitude() - tol))
        throw DomainError("q0=" + std::to_string(q0) + " is not strictly inside the allowed region");

    const auto steps = static_cast<std::size_t>(std::ceil((t1 - t0) / dt - 1e-12));
    const double h = (t1 - t0) / static_cast<double>(steps);

    Trajectory traj;
    traj.energy = s.energy();
    traj.mass = s.mass();
    traj.times.reserve(steps + 1);
    traj.positions.reserve(steps + 1);
    traj.momenta.reserve(steps + 1);
    if (s.kind() == ActionFunction::Kind::harmonic_oscillator) {
        const double a = s.amplitude();
        const double sn = q0 / a;
        traj.amplitude = a;
        traj.phase = std::atan2(sn, branch * std::sqrt(1.0 - sn * sn)) - s.omega() * t0;
    }

    PhasePoint y{q0, branch * s.momentum(q0)};
    traj.times.push_back(t0);
    traj.positions.push_back(y.q);
    traj.momenta.push_back(y.p);
    const double limit = s.amplitude() + tol;
    for (std::size_t k = 1; k <= steps; ++k) {
        const double t_prev = t0 + static_cast<double>(k - 1) * h;
        PhasePoint next = rk4_step(s, y, h);
        if (s.kind() != ActionFunction::Kind::free_particle) next = project_to_shell(s, next);
        if (!std::isfinite(next.q) || !std::isfinite(next.p))
            throw NumericalError("trajectory became non-finite at t=" + std::to_string(t_prev + h));
        if (std::abs(next.q) > limit)
            throw NumericalError("step at t=" + std::to_string(t_prev) +
                                 " crossed the turning point without a branch flip");
        if ((y.p > 0.0 && next.p <= 0.0) || (y.p < 0.0 && next.p >= 0.0))
            traj.turning_times.push_back(t_prev + h * y.p / (y.p - next.p));
        y = next;
        traj.times.push_back(t0 + static_cast<double>(k) * h);
        traj.positions.push_back(y.q);
        traj.momenta.push_back(y.p);
    }
    return traj;
}

std::vector<double> upward_crossings(const Trajectory& traj, double level)
{
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
        const double a = traj.positions[i] - level;
        const double b = traj.positions[i + 1] - level;
        if (!(a < 0.0 && b >= 0.0)) continue;
        const double h = traj.times[i + 1] - traj.times[i];
        const double va = traj.momenta[i] / traj.mass * h;
        const double vb = traj.momenta[i + 1] / traj.mass * h;
        // cubic Hermite on s in [0, 1]
        auto f = [&](double s) {
            const double s2 = s * s, s3 = s2 * s;
            return (2 * s3 - 3 * s2 + 1) * a + (s3 - 2 * s2 + s) * va + (-2 * s3 + 3 * s2) * b + (s3 - s2) * vb;
        };
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            (f(mid) < 0.0 ? lo : hi) = mid;
        }
        out.push_back(traj.times[i] + 0.5 * (lo + hi) * h);
    }
    return out;
}

} // namespace hjwave::classical
