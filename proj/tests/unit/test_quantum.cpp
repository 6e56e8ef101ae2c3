#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"

#include "hjwave/classical.hpp"
#include "hjwave/error.hpp"
#include "hjwave/quantum.hpp"
#include "support.hpp"

using namespace hjwave;
using namespace hjwave::quantum;
using std::numbers::pi;

namespace {

const Grid1D& oscillator_grid()
{
    static const Grid1D g(-12.0, 12.0, 2048, Boundary::dirichlet);
    return g;
}

const SpectralDecomposition& oscillator_spectrum()
{
    static const SpectralDecomposition s =
        eigensolve(Hamiltonian::build(PotentialSpec::harmonic(1.0), oscillator_grid(), 1.0, 1.0), 10);
    return s;
}

int sign_changes(const ComplexField& f)
{
    // ignore the tails where the eigenvector is pure rounding noise
    const double floor = 1e-6 * f.max_abs();
    int changes = 0;
    double last = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double v = f[i].real();
        if (std::abs(v) < floor) continue;
        if (last != 0.0 && (v > 0) != (last > 0)) ++changes;
        last = v;
    }
    return changes;
}

double max_valid(const RealMasked& r, double xlim = 1e300, const Grid1D* g = nullptr)
{
    double m = 0.0;
    for (std::size_t i = 0; i < r.values.size(); ++i)
        if (r.valid[i] && (!g || std::abs(g->x(i)) <= xlim)) m = std::max(m, r.values[i]);
    return m;
}

double max_valid(const ComplexMasked& r)
{
    double m = 0.0;
    for (std::size_t i = 0; i < r.values.size(); ++i)
        if (r.valid[i]) m = std::max(m, std::abs(r.values[i]));
    return m;
}

} // namespace

TEST_CASE("free Hamiltonian follows the discrete dispersion on a ring")
{
    const double L = 2 * pi, hbar = 0.7, m = 1.3;
    const Grid1D g(0.0, L, 64, Boundary::periodic);
    const Hamiltonian h(g, std::vector<double>(g.size(), 0.0), hbar, m);
    const double dx = g.spacing();
    for (int k : {1, 5, -9, 20}) {
        const auto f = ComplexField::sample(g, [&](double x) { return std::polar(1.0, k * x); });
        const auto hf = h.apply(f);
        const double eig = hbar * hbar / (2 * m) * 2.0 * (1.0 - std::cos(k * dx)) / (dx * dx);
        for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(hf[i] - eig * f[i]) < 1e-10 * (1 + eig));
    }
}

TEST_CASE("Hamiltonian matrix is exactly symmetric")
{
    for (Boundary b : {Boundary::dirichlet, Boundary::periodic}) {
        const Grid1D g(-3.0, 3.0, 40, b);
        const auto h = Hamiltonian::build(PotentialSpec::harmonic(1.3), g, 1.0, 1.0);
        const auto d = h.dense();
        const std::size_t n = h.dimension();
        REQUIRE(d.size() == n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) CHECK(d[i * n + j] == d[j * n + i]);
        CHECK(n == (b == Boundary::periodic ? g.size() : g.size() - 2));
    }
}

TEST_CASE("Hamiltonian keeps Dirichlet walls at zero")
{
    const Grid1D g(0.0, 1.0, 32, Boundary::dirichlet);
    const Hamiltonian h(g, std::vector<double>(g.size(), 0.0), 1.0, 1.0);
    const auto f = ComplexField::sample(g, [](double) { return cplx{1.0, 0.0}; });
    const auto hf = h.apply(f);
    CHECK(hf[0] == cplx{0.0, 0.0});
    CHECK(hf[31] == cplx{0.0, 0.0});
    // neighbours of the walls see a zero there
    CHECK(hf[1].real() == doctest::Approx(-h.off_diagonal()));
}

TEST_CASE("constant potential shifts the spectrum")
{
    const Grid1D g(0.0, 1.0, 512, Boundary::dirichlet);
    const double c = 3.25;
    const auto a = eigensolve(Hamiltonian(g, std::vector<double>(g.size(), 0.0), 1.0, 1.0), 8);
    const auto b = eigensolve(Hamiltonian(g, std::vector<double>(g.size(), c), 1.0, 1.0), 8);
    for (std::size_t i = 0; i < 8; ++i)
        CHECK(std::abs(b.eigenvalues()[i] - a.eigenvalues()[i] - c) < 1e-9 * (1 + a.eigenvalues()[i]));
}

TEST_CASE("particle in a box spectrum")
{
    const double L = 2.0, hbar = 1.0, m = 1.0;
    const Grid1D g(0.0, L, 2048, Boundary::dirichlet);
    const auto s = eigensolve(Hamiltonian::build(PotentialSpec::zero(), g, hbar, m), 5);
    for (int n = 1; n <= 5; ++n) {
        const double exact = n * n * pi * pi * hbar * hbar / (2 * m * L * L);
        CHECK(std::abs(s.eigenvalues()[n - 1] - exact) / exact < 1e-3);
    }
}

TEST_CASE("oscillator spectrum on a wide box")
{
    const auto& s = oscillator_spectrum();
    REQUIRE(s.size() == 10);
    for (int n = 0; n < 10; ++n) CHECK(std::abs(s.eigenvalues()[n] - (n + 0.5)) / (n + 0.5) < 1e-3);
}

TEST_CASE("oscillator eigenfunctions match Hermite functions")
{
    const auto& s = oscillator_spectrum();
    const auto& g = oscillator_grid();
    for (int n = 0; n < 4; ++n) {
        const auto& f = s.eigenfunctions()[n];
        // odd states have two equal peaks, so fix the sign by overlap
        double dot = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) dot += f[i].real() * test::oscillator_state(n, g.x(i));
        const double sgn = dot > 0 ? 1.0 : -1.0;
        double err = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs(sgn * f[i].real() - test::oscillator_state(n, g.x(i))));
        CHECK(err < 1e-4);
    }
}

TEST_CASE("eigenfunctions are orthonormal, real and solve the eigenproblem")
{
    const auto& s = oscillator_spectrum();
    CHECK(s.orthonormality_defect() < 1e-8);
    const auto h = Hamiltonian::build(PotentialSpec::harmonic(1.0), oscillator_grid(), 1.0, 1.0);
    for (std::size_t k = 0; k < s.size(); ++k) {
        const auto& f = s.eigenfunctions()[k];
        CHECK(std::abs(norm(f) - 1.0) < 1e-10);
        for (std::size_t i = 0; i < f.size(); ++i) CHECK(f[i].imag() == 0.0);
        const auto r = h.apply(f) - cplx{s.eigenvalues()[k], 0.0} * f;
        CHECK(norm(r) < 1e-8 * norm(f));
        if (k > 0) CHECK(s.eigenvalues()[k] > s.eigenvalues()[k - 1]);
    }
}

TEST_CASE("the n-th eigenfunction has n interior nodes")
{
    const auto& s = oscillator_spectrum();
    CHECK(sign_changes(s.eigenfunctions()[0]) == 0);
    for (int n = 1; n < 10; ++n) CHECK(sign_changes(s.eigenfunctions()[n]) == n);
    const Grid1D g(0.0, 1.0, 256, Boundary::dirichlet);
    const auto box = eigensolve(Hamiltonian::build(PotentialSpec::zero(), g, 1.0, 1.0), 3);
    CHECK(sign_changes(box.eigenfunctions()[0]) == 0);
}

TEST_CASE("periodic spectrum comes in degenerate pairs")
{
    const Grid1D g(0.0, 2 * pi, 128, Boundary::periodic);
    const auto s = eigensolve(Hamiltonian::build(PotentialSpec::zero(), g, 1.0, 1.0), 5);
    CHECK(std::abs(s.eigenvalues()[0]) < 1e-10);
    CHECK(std::abs(s.eigenvalues()[1] - s.eigenvalues()[2]) < 1e-10);
    CHECK(std::abs(s.eigenvalues()[3] - s.eigenvalues()[4]) < 1e-10);
    CHECK(s.orthonormality_defect() < 1e-10);
}

TEST_CASE("eigensolve resolution guard")
{
    const Grid1D g(0.0, 1.0, 64, Boundary::dirichlet);
    const auto h = Hamiltonian::build(PotentialSpec::zero(), g, 1.0, 1.0);
    CHECK_NOTHROW((void)eigensolve(h, 16));
    CHECK_THROWS_AS((void)eigensolve(h, 17), DomainError);
    CHECK_THROWS_AS((void)eigensolve(h, 0), DomainError);
    CHECK(eigensolve_all(h).size() == 62);
}

TEST_CASE("spectral decomposition validates its input")
{
    const Grid1D g(0.0, 1.0, 32, Boundary::dirichlet);
    const auto f = ComplexField::zeros(g);
    CHECK_THROWS_AS(SpectralDecomposition({2.0, 1.0}, {f, f}), DomainError);
    CHECK_THROWS_AS(SpectralDecomposition({1.0}, {f, f}), DomainError);
    CHECK_THROWS_AS(PotentialSpec::harmonic(0.0), DomainError);
    CHECK_THROWS_AS(PotentialSpec::tabulated(g, std::vector<double>(3)), DomainError);
}

TEST_CASE("eigenstate only picks up its phase under propagation")
{
    const auto& s = oscillator_spectrum();
    const auto h = Hamiltonian::build(PotentialSpec::harmonic(1.0), oscillator_grid(), 1.0, 1.0);
    const double period = 2 * pi;
    const std::size_t steps = 1000;
    const CrankNicolson cn(h, period / steps);
    for (int n : {0, 3}) {
        const auto& psi0 = s.eigenfunctions()[n];
        const auto psi = cn.advance(psi0, steps);
        CHECK(std::abs(std::abs(inner_product(psi0, psi)) - 1.0) < 5e-6);
    }
    // ground-state phase -E0 t, compared on the circle
    const auto& psi0 = s.eigenfunctions()[0];
    const cplx overlap = inner_product(psi0, cn.advance(psi0, steps));
    const double diff = std::arg(overlap * std::polar(1.0, s.eigenvalues()[0] * period));
    CHECK(std::abs(diff) < 1e-4);
}

TEST_CASE("two-level superposition oscillates at the Bohr frequency")
{
    const auto& s = oscillator_spectrum();
    const auto h = Hamiltonian::build(PotentialSpec::harmonic(1.0), oscillator_grid(), 1.0, 1.0);
    const auto psi0 = cplx{1 / std::sqrt(2.0), 0.0} * (s.eigenfunctions()[0] + s.eigenfunctions()[1]);
    const CrankNicolson cn(h, 0.01);
    const auto rec = propagate_recorded(psi0, cn, 4000, 1);
    std::vector<double> t, x;
    for (const auto& r : rec) {
        t.push_back(r.t);
        x.push_back(r.x_mean);
    }
    CHECK(std::abs(test::crossing_frequency(t, x) - 1.0) < 1e-3);
    // amplitude of <x> is sqrt(2)·<0|x|1> = 1/sqrt(2)
    CHECK(*std::max_element(x.begin(), x.end()) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-3));
}

TEST_CASE("Crank-Nicolson conserves the norm")
{
    const Grid1D g(-12.0, 12.0, 512, Boundary::dirichlet);
    const auto psi0 = normalize(ComplexField::sample(g, [](double x) { return std::exp(-(x - 1.0) * (x - 1.0)) * std::polar(1.0, 0.8 * x); }));
    const auto h = Hamiltonian::build(PotentialSpec::harmonic(1.0), g, 1.0, 1.0);
    const CrankNicolson cn(h, 0.005);
    auto psi = psi0;
    double worst_step = 0.0;
    double prev = norm(psi);
    for (int k = 0; k < 10000; ++k) {
        psi = cn.step(psi);
        const double now = norm(psi);
        worst_step = std::max(worst_step, std::abs(now - prev));
        prev = now;
    }
    CHECK(worst_step < 1e-10);
    CHECK(std::abs(norm(psi) - 1.0) < 1e-8);
}

TEST_CASE("periodic Crank-Nicolson conserves the norm and momentum of a plane wave")
{
    const Grid1D g(0.0, 2 * pi, 128, Boundary::periodic);
    const auto psi0 = normalize(ComplexField::sample(g, [](double x) { return std::polar(1.0, 3.0 * x); }));
    const auto psi = propagate(psi0, PotentialSpec::zero(), 1.0, 1.0, 0.01, 500);
    CHECK(std::abs(norm(psi) - 1.0) < 1e-10);
    const auto d = diagnostics(psi, Hamiltonian::build(PotentialSpec::zero(), g, 1.0, 1.0), 5.0);
    CHECK(d.p_mean == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("propagate wants a normalized state")
{
    const Grid1D g(0.0, 1.0, 64, Boundary::dirichlet);
    const auto psi = ComplexField::sample(g, [](double x) { return cplx{std::sin(pi * x), 0.0}; });
    CHECK_THROWS_AS((void)propagate(psi, PotentialSpec::zero(), 1.0, 1.0, 1e-3, 1), DomainError);
    CHECK_THROWS_AS(CrankNicolson(Hamiltonian::build(PotentialSpec::zero(), g, 1.0, 1.0), 0.0), DomainError);
}

TEST_CASE("recorded propagation includes both ends")
{
    const Grid1D g(-5.0, 5.0, 128, Boundary::dirichlet);
    const auto h = Hamiltonian::build(PotentialSpec::harmonic(1.0), g, 1.0, 1.0);
    const auto psi0 = eigensolve(h, 1).eigenfunctions()[0];
    const CrankNicolson cn(h, 0.1);
    ComplexField last = psi0;
    const auto rec = propagate_recorded(psi0, cn, 10, 4, &last);
    REQUIRE(rec.size() == 4);
    CHECK(rec[0].t == 0.0);
    CHECK(rec[1].t == doctest::Approx(0.4));
    CHECK(rec[3].t == doctest::Approx(1.0));
    for (const auto& r : rec) CHECK(r.e_mean == doctest::Approx(rec[0].e_mean).epsilon(1e-12));
    CHECK(std::abs(norm(last) - 1.0) < 1e-12);
}

TEST_CASE("action of a plane wave is linear and real")
{
    const double hbar = 0.5, k = 4.0, p = hbar * k;
    const Grid1D g(0.0, 2 * pi, 256, Boundary::periodic);
    const auto psi = ComplexField::sample(g, [&](double x) { return std::polar(1.0, p * x / hbar); });
    const auto s = quantum_action(psi, hbar);
    for (std::size_t i = 0; i < g.size(); ++i) {
        REQUIRE(s.valid[i]);
        CHECK(std::abs(s.values[i] - p * g.x(i)) < 1e-12);
    }
}

TEST_CASE("action of a Gaussian is imaginary and quadratic")
{
    const double hbar = 0.8, sigma = 0.7;
    const Grid1D g(-3.0, 3.0, 301, Boundary::dirichlet);
    const auto psi = ComplexField::sample(g, [&](double x) { return cplx{std::exp(-x * x / (2 * sigma * sigma)), 0.0}; });
    const auto s = quantum_action(psi, hbar);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.x(i);
        CHECK(std::abs(s.values[i] - cplx{0.0, hbar * x * x / (2 * sigma * sigma)}) < 1e-12);
    }
}

TEST_CASE("exponentiating the action recovers the state")
{
    const double hbar = 0.3;
    const Grid1D g(-4.0, 4.0, 401, Boundary::dirichlet);
    const auto psi = ComplexField::sample(g, [&](double x) { return 0.4 * std::exp(-x * x / 2) * std::polar(1.0, 7.0 * x + x * x); });
    const auto s = quantum_action(psi, hbar);
    for (std::size_t i = 0; i < g.size(); ++i)
        if (s.valid[i]) CHECK(std::abs(std::exp(cplx{0.0, 1.0} * s.values[i] / hbar) - psi[i]) < 1e-12);
}

TEST_CASE("amplitude floor masks the action")
{
    const Grid1D g(-12.0, 12.0, 241, Boundary::dirichlet);
    const auto psi = ComplexField::sample(g, [](double x) { return cplx{std::exp(-x * x / 2), 0.0}; });
    const auto s = quantum_action(psi, 1.0);
    CHECK(s.valid[120]);
    CHECK_FALSE(s.valid[0]);
    CHECK_FALSE(s.valid[240]);
}

TEST_CASE("quantum HJ residual vanishes for a free plane wave")
{
    const double hbar = 1.0, m = 1.0, k = 2.0, E = hbar * hbar * k * k / (2 * m);
    const Grid1D g(0.0, 2 * pi, 256, Boundary::periodic);
    const auto psi = ComplexField::sample(g, [&](double x) { return std::polar(1.0, k * x); });
    const auto dpsi = cplx{0.0, -E / hbar} * psi;
    const auto r = quantum_hj_residual(psi, std::vector<double>(g.size(), 0.0), hbar, m, dpsi);
    CHECK(max_valid(r) < 1e-10);
}

TEST_CASE("quantum HJ residual of a propagated ground state")
{
    // Ŝ is differenced directly, the propagator differences ψ, so the residual is
    // their O(Δx²) disagreement; measured on |x| <= 3 under refinement.
    std::vector<double> hs, res;
    for (std::size_t n : {2048u, 4096u, 8192u, 16384u}) {
        const Grid1D g(-12.0, 12.0, n, Boundary::dirichlet);
        const auto h = Hamiltonian::build(PotentialSpec::harmonic(1.0), g, 1.0, 1.0);
        const double dt = 1e-3;
        const CrankNicolson cn(h, dt);
        const auto before = cn.advance(eigensolve(h, 1).eigenfunctions()[0], 100);
        const auto now = cn.step(before);
        const auto after = cn.step(now);
        const auto dpsi = cplx{1.0 / (2 * dt), 0.0} * (after - before);
        const auto r = quantum_hj_residual(now, PotentialSpec::harmonic(1.0).sample(g), 1.0, 1.0, dpsi);
        CHECK(r.count_valid() > n / 2);
        hs.push_back(g.spacing());
        res.push_back(max_valid(r, 3.0, &g));
    }
    CHECK(test::loglog_slope(hs, res) == doctest::Approx(2.0).epsilon(0.1));
    CHECK(res.back() < 1e-4);
}

TEST_CASE("quantum correction scales linearly with the action unit")
{
    const Grid1D g(-0.5, 0.5, 2048, Boundary::dirichlet);
    const auto s = classical::ActionFunction::harmonic_oscillator(0.5, 1.0, 1.0);
    std::vector<double> hb, mag;
    for (double hbar : {0.1, 0.2, 0.5, 1.0}) {
        const auto x = classical::classical_wavefunction(s, g, 0.0, hbar);
        hb.push_back(hbar);
        mag.push_back(max_valid(quantum_correction_term(x, hbar, 1.0)));
    }
    CHECK(std::abs(test::loglog_slope(hb, mag) - 1.0) < 0.1);
}

TEST_CASE("classical wave: correction term closes the two residuals")
{
    const double hbar = 1.0, m = 1.0;
    const Grid1D g(-0.5, 0.5, 2048, Boundary::dirichlet);
    const auto s = classical::ActionFunction::harmonic_oscillator(0.5, m, 1.0);
    const auto x = classical::classical_wavefunction(s, g, 0.0, hbar);
    const auto dx = classical::classical_time_derivative(s, g, 0.0, hbar);
    const auto v = PotentialSpec::harmonic(1.0).sample(g);
    const auto led = linearization_demo(x, v, hbar, m, dx);
    CHECK(max_valid(led.classical) < 1e-6);
    CHECK(led.mismatch < 1e-6 * led.max_correction);
    // the classical field solves its own equation, so the Schrödinger residual is the correction
    CHECK(max_valid(led.quantum) == doctest::Approx(led.max_correction).epsilon(1e-3));
    // correction = -(ħ²/2m) X (X'/X)' = -(iħ/2m) W'' X with W'' = -q / sqrt(1 - q²)
    for (std::size_t i = 0; i < g.size(); i += 97)
        if (led.correction.valid[i]) {
            const double q = g.x(i);
            const cplx expect = cplx{0.0, -hbar / (2 * m)} * (-q / std::sqrt(1 - q * q)) * x[i];
            CHECK(std::abs(led.correction.values[i] - expect) < 1e-5);
        }
}

TEST_CASE("ground state: zero-point energy shows up in the classical residual")
{
    const auto& g = oscillator_grid();
    const auto& psi = oscillator_spectrum().eigenfunctions()[0];
    const double e0 = oscillator_spectrum().eigenvalues()[0];
    const auto dpsi = cplx{0.0, -e0} * psi;
    const auto v = PotentialSpec::harmonic(1.0).sample(g);
    const auto led = linearization_demo(psi, v, 1.0, 1.0, dpsi);
    double q_max = 0.0, min_amp = 1e300, c_max = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!led.quantum.valid[i] || std::abs(g.x(i)) > 1.0) continue;
        q_max = std::max(q_max, std::abs(led.quantum.values[i]));
        c_max = std::max(c_max, std::abs(led.classical.values[i]));
        min_amp = std::min(min_amp, std::abs(psi[i]));
        // -(ħ²/2m) ψ'²/ψ + Vψ - Eψ = -(ħω/2) ψ for the Gaussian
        CHECK(std::abs(led.classical.values[i] + 0.5 * psi[i]) < 1e-4);
    }
    CHECK(q_max < 1e-10);
    CHECK(c_max > 0.5 * min_amp);
    CHECK(led.mismatch < 1e-4 * led.max_correction);
}

TEST_CASE("plane wave: both residuals vanish")
{
    const double hbar = 1.0, m = 1.0, k = 3.0, E = k * k / 2;
    const Grid1D g(0.0, 2 * pi, 256, Boundary::periodic);
    const auto x = ComplexField::sample(g, [&](double q) { return std::polar(1.0, k * q); });
    const auto led = linearization_demo(x, std::vector<double>(g.size(), 0.0), hbar, m, cplx{0.0, -E} * x);
    CHECK(max_valid(led.classical) < 1e-9);
    CHECK(max_valid(led.quantum) < 1e-9);
}

TEST_CASE("superposed eigenstates still solve the discrete equation")
{
    const auto& g = oscillator_grid();
    const auto& s = oscillator_spectrum();
    const auto v = PotentialSpec::harmonic(1.0).sample(g);
    const double t = 0.37;
    auto term = [&](int n, cplx c) {
        const cplx ph = c * std::polar(1.0, -s.eigenvalues()[n] * t);
        return std::pair{ph * s.eigenfunctions()[n], cplx{0.0, -s.eigenvalues()[n]} * ph * s.eigenfunctions()[n]};
    };
    const auto [p1, d1] = term(2, {0.6, 0.0});
    const auto [p2, d2] = term(5, {0.0, 0.8});
    const double r1 = max_valid(schrodinger_residual_signed(p1, v, 1.0, 1.0, d1));
    const double r2 = max_valid(schrodinger_residual_signed(p2, v, 1.0, 1.0, d2));
    const double r12 = max_valid(schrodinger_residual_signed(p1 + p2, v, 1.0, 1.0, d1 + d2));
    CHECK(r12 <= 2.0 * (r1 + r2));
    CHECK(r12 < 1e-10);
}
