#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"

#include "hjwave/classical.hpp"
#include "hjwave/error.hpp"
#include "hjwave/measurement.hpp"
#include "hjwave/quantum.hpp"
#include "support.hpp"

using namespace hjwave;
using namespace hjwave::measurement;
using operators::Basis;
using operators::LinearOperatorSpec;
using std::numbers::pi;

namespace {

struct Oscillator {
    Grid1D grid{-12.0, 12.0, 1024, Boundary::dirichlet};
    quantum::Hamiltonian h = quantum::Hamiltonian::build(quantum::PotentialSpec::harmonic(1.0), grid, 1.0, 1.0);
    quantum::SpectralDecomposition s = quantum::eigensolve(h, 8);
};

const Oscillator& osc()
{
    static const Oscillator o;
    return o;
}

ComplexField random_state(const Grid1D& g, Rng& rng)
{
    // smooth, nowhere-vanishing packet so the field mask stays empty
    const double x0 = rng.uniform(-1.0, 1.0), p0 = rng.uniform(-2.0, 2.0), w = rng.uniform(0.7, 1.3);
    return normalize(ComplexField::sample(g, [&](double x) {
        const double d = (x - x0) / w;
        return std::exp(-0.5 * d * d) * std::polar(1.0, p0 * x + 0.1 * x * x);
    }));
}

} // namespace

TEST_CASE("Born density of a box plane wave is uniform")
{
    const double L = 4.0;
    const Grid1D g(0.0, L, 128, Boundary::periodic);
    const auto rho = born_density(operators::momentum_eigenfunction_box(3, g, 1.0));
    for (double r : rho) CHECK(r == doctest::Approx(1.0 / L).epsilon(1e-13));
    CHECK(std::abs(integrate(g, rho) - 1.0) < 1e-8);
}

TEST_CASE("Born density of the oscillator ground state")
{
    const auto& o = osc();
    const auto rho = born_density(o.s.eigenfunctions()[0]);
    CHECK(std::abs(integrate(o.grid, rho) - 1.0) < 1e-8);
    const std::size_t mid = o.grid.size() / 2;
    const double x = o.grid.x(mid);
    const double exact = std::sqrt(1.0 / pi) * std::exp(-x * x);
    CHECK(std::abs(rho[mid] - exact) / exact < 1e-4);
}

TEST_CASE("momentum field of a plane wave is its momentum")
{
    const double hbar = 0.5;
    const Grid1D g(0.0, 2 * pi, 64, Boundary::periodic);
    const auto psi = operators::momentum_eigenfunction_box(4, g, hbar);
    const auto f = observable_field(psi, LinearOperatorSpec::momentum(g, hbar));
    const double p = operators::box_momentum(4, g, hbar);
    for (std::size_t i = 0; i < g.size(); ++i) {
        REQUIRE(f.valid[i]);
        CHECK(std::abs(f.values[i] - p) < 1e-8);
    }
    const auto fe = expectation_field(psi, f);
    CHECK(fe.status == FieldExpectation::Status::ok);
    CHECK(std::abs(fe.value - p) < 1e-12);
    CHECK(std::abs(expectation_operator(psi, LinearOperatorSpec::momentum(g, hbar)) - p) < 1e-12);
}

TEST_CASE("energy field of an eigenstate is its eigenvalue")
{
    const auto& o = osc();
    for (int n : {0, 3, 6}) {
        const auto f = observable_field(o.s.eigenfunctions()[n], LinearOperatorSpec::hamiltonian(o.h));
        std::size_t count = 0;
        for (std::size_t i = 0; i < f.values.size(); ++i)
            if (f.valid[i]) {
                ++count;
                CHECK(std::abs(f.values[i] - o.s.eigenvalues()[n]) < 1e-6);
            }
        CHECK(count > 100);
    }
}

TEST_CASE("momentum field of a standing wave is imaginary")
{
    const double hbar = 1.0, k = 3.0;
    const Grid1D g(0.0, 2 * pi, 256, Boundary::periodic);
    const auto psi = normalize(ComplexField::sample(g, [&](double x) { return cplx{std::sin(k * x), 0.0}; }));
    const auto f = observable_field(psi, LinearOperatorSpec::momentum(g, hbar));
    std::size_t masked = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!f.valid[i]) {
            ++masked;
            continue;
        }
        CHECK(std::abs(f.values[i].real()) < 1e-10);
        const double x = g.x(i);
        const double expect = -hbar * k * std::cos(k * x) / std::sin(k * x);
        CHECK(std::abs(f.values[i].imag() - expect) < 1e-8 * (1 + std::abs(expect)));
    }
    CHECK(masked > 0); // nodes of sin(kx) fall on grid points
    // field route integrates -iħk cot(kx) sin²(kx) to zero, as does the operator route
    const auto fe = expectation_field(psi, f);
    CHECK(std::abs(fe.value) < 1e-10);
    CHECK(std::abs(expectation_operator(psi, LinearOperatorSpec::momentum(g, hbar))) < 1e-10);
}

TEST_CASE("fully masked field is an error")
{
    const Grid1D g(0.0, 1.0, 32, Boundary::dirichlet);
    CHECK_THROWS_AS((void)observable_field(ComplexField::zeros(g), LinearOperatorSpec::position(g)), NumericalError);
}

TEST_CASE("operator expectations")
{
    const auto& o = osc();
    const auto p = LinearOperatorSpec::momentum(o.grid, 1.0);
    const auto H = LinearOperatorSpec::hamiltonian(o.h);
    for (int n = 0; n < 5; ++n) {
        const auto& psi = o.s.eigenfunctions()[n];
        CHECK(std::abs(expectation_operator(psi, p)) < 1e-12);
        const cplx e = expectation_operator(psi, H);
        CHECK(std::abs(e.real() - o.s.eigenvalues()[n]) < 1e-8);
        CHECK(std::abs(e.imag()) < 1e-10);
    }
    const Grid1D g(0.0, 1.0, 32, Boundary::dirichlet);
    CHECK_THROWS_AS((void)expectation_operator(ComplexField::sample(g, [](double) { return cplx{2.0, 0.0}; }), LinearOperatorSpec::position(g)),
                    DomainError);
}

TEST_CASE("position expectation of a two-level superposition")
{
    const auto& o = osc();
    const auto X = LinearOperatorSpec::position(o.grid);
    const double amp = std::sqrt(1.0 / 2.0); // sqrt(ħ/2mω)
    const auto& s = o.s;
    // eigenvector signs are a convention; take the sign of the matrix element from the data
    const double sgn = inner_product(s.eigenfunctions()[0], X.apply(s.eigenfunctions()[1])).real() > 0 ? 1.0 : -1.0;
    for (double t : {0.0, 0.5, 1.3, 2.9}) {
        const auto psi = cplx{1 / std::sqrt(2.0), 0.0} *
                         (std::polar(1.0, -s.eigenvalues()[0] * t) * s.eigenfunctions()[0] +
                          std::polar(1.0, -s.eigenvalues()[1] * t) * s.eigenfunctions()[1]);
        const cplx x = expectation_operator(psi, X);
        const double phase = (s.eigenvalues()[1] - s.eigenvalues()[0]) * t;
        CHECK(std::abs(x.real() - sgn * amp * std::cos(phase)) < 1e-3 * amp);
        CHECK(std::abs(x.imag()) < 1e-12);
    }
}

TEST_CASE("field and operator expectations agree")
{
    const auto& o = osc();
    Rng rng(2024);
    const LinearOperatorSpec ops[] = {LinearOperatorSpec::position(o.grid), LinearOperatorSpec::momentum(o.grid, 1.0),
                                      LinearOperatorSpec::hamiltonian(o.h)};
    for (int trial = 0; trial < 8; ++trial) {
        const auto psi = random_state(o.grid, rng);
        for (const auto& op : ops) {
            const auto f = observable_field(psi, op);
            const auto fe = expectation_field(psi, f);
            const cplx direct = expectation_operator(psi, op);
            if (fe.masked_probability < 1e-10) {
                CHECK(fe.status == FieldExpectation::Status::ok);
                CHECK(std::abs(fe.value - direct) <= 1e-8 * std::max(1.0, std::abs(direct)));
            }
        }
    }
}

TEST_CASE("ground-state energy both ways is the zero-point energy")
{
    const auto& o = osc();
    const auto& psi = o.s.eigenfunctions()[0];
    const auto H = LinearOperatorSpec::hamiltonian(o.h);
    const auto fe = expectation_field(psi, observable_field(psi, H));
    CHECK(std::abs(fe.value - o.s.eigenvalues()[0]) < 1e-8);
    CHECK(std::abs(expectation_operator(psi, H) - o.s.eigenvalues()[0]) < 1e-8);
    CHECK(std::abs(o.s.eigenvalues()[0] - 0.5) < 1e-4);
}

TEST_CASE("heavy mask is reported")
{
    const Grid1D g(0.0, 2 * pi, 64, Boundary::periodic);
    const auto psi = normalize(ComplexField::sample(g, [](double x) { return cplx{std::sin(x), 0.0}; }));
    // an absurd floor masks most nodes
    const auto f = observable_field(psi, LinearOperatorSpec::position(g), 0.9);
    const auto fe = expectation_field(psi, f);
    CHECK(fe.status == FieldExpectation::Status::heavy_mask);
    CHECK(fe.masked_probability > heavy_mask_probability);
}

TEST_CASE("eigenstate has a single certain outcome")
{
    const auto& o = osc();
    const auto t = eigenvalue_probabilities(o.s.eigenfunctions()[2], o.s);
    for (std::size_t i = 0; i < t.outcomes.size(); ++i)
        CHECK(t.probabilities[i] == doctest::Approx(t.outcomes[i] == o.s.eigenvalues()[2] ? 1.0 : 0.0).epsilon(1e-10));
    const auto b = Basis::from_spectrum(o.s);
    const auto r = measure_and_collapse(o.s.eigenfunctions()[2], b, 17);
    CHECK(r.outcome == o.s.eigenvalues()[2]);
    CHECK(std::abs(std::abs(inner_product(r.state, o.s.eigenfunctions()[2])) - 1.0) < 1e-12);
}

TEST_CASE("two-level probabilities")
{
    const auto& o = osc();
    const auto psi = cplx{std::sqrt(0.3), 0.0} * o.s.eigenfunctions()[0] + cplx{std::sqrt(0.7), 0.0} * o.s.eigenfunctions()[2];
    const auto t = eigenvalue_probabilities(psi, o.s);
    double sum = 0.0;
    for (std::size_t i = 0; i < t.outcomes.size(); ++i) {
        sum += t.probabilities[i];
        if (t.outcomes[i] == o.s.eigenvalues()[0]) CHECK(std::abs(t.probabilities[i] - 0.3) < 1e-10);
        else if (t.outcomes[i] == o.s.eigenvalues()[2]) CHECK(std::abs(t.probabilities[i] - 0.7) < 1e-10);
        else CHECK(t.probabilities[i] < 1e-20);
    }
    CHECK(std::abs(sum - 1.0) < 1e-8);
}

TEST_CASE("probabilities reject unnormalized and out-of-span states")
{
    const auto& o = osc();
    const auto twice = cplx{2.0, 0.0} * o.s.eigenfunctions()[0];
    CHECK_THROWS_AS((void)eigenvalue_probabilities(twice, o.s), DomainError);
    // the 8 lowest levels cannot hold a high excitation
    const auto far = normalize(ComplexField::sample(o.grid, [](double x) { return cplx{std::exp(-(x - 5) * (x - 5)), 0.0}; }));
    CHECK_THROWS_AS((void)eigenvalue_probabilities(far, o.s), NumericalError);
}

TEST_CASE("degenerate level sums both coefficients")
{
    // momentum ±p on a ring share kinetic energy: label the basis by energy
    const double hbar = 1.0;
    const Grid1D g(0.0, 2 * pi, 64, Boundary::periodic);
    std::vector<double> labels;
    std::vector<ComplexField> fns;
    for (long k : {0L, 1L, -1L, 2L, -2L}) {
        labels.push_back(0.5 * std::pow(operators::box_momentum(k, g, hbar), 2));
        fns.push_back(operators::momentum_eigenfunction_box(k, g, hbar));
    }
    const Basis b(labels, fns);
    const cplx c1{0.6, 0.0}, cm1{0.0, 0.48}, c0{0.64, 0.0};
    const auto psi = c0 * fns[0] + c1 * fns[1] + cm1 * fns[2];
    const auto t = eigenvalue_probabilities(psi, b);
    REQUIRE(t.outcomes.size() == 3);
    CHECK(t.degeneracy[1] == 2);
    CHECK(t.probabilities[1] == doctest::Approx(std::norm(c1) + std::norm(cm1)).epsilon(1e-12));
    CHECK(t.probabilities[0] == doctest::Approx(std::norm(c0)).epsilon(1e-12));

    // collapse onto the degenerate level keeps both components
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto r = measure_and_collapse(psi, b, seed);
        if (r.level != 1) continue;
        const cplx a = inner_product(fns[1], r.state), bm = inner_product(fns[2], r.state);
        const double n2 = std::norm(c1) + std::norm(cm1);
        CHECK(std::abs(a - c1 / std::sqrt(n2) * (a / std::abs(a)) / (c1 / std::abs(c1))) < 1e-12);
        CHECK(std::abs(std::abs(bm) - std::abs(cm1) / std::sqrt(n2)) < 1e-12);
        CHECK(std::abs(norm(r.state) - 1.0) < 1e-12);
        const auto again = measure_and_collapse(r.state, b, seed + 1000);
        CHECK(again.level == r.level);
    }
}

TEST_CASE("Born frequencies stay within the binomial band")
{
    const auto& o = osc();
    const auto psi = cplx{std::sqrt(0.3), 0.0} * o.s.eigenfunctions()[0] + cplx{std::sqrt(0.7), 0.0} * o.s.eigenfunctions()[2];
    const auto b = Basis::from_spectrum(o.s).truncated(3);
    const auto t = eigenvalue_probabilities(psi, b);
    const std::size_t n = 100000;
    const auto counts = sample_counts(t, n, 12345);
    REQUIRE(counts.size() == t.outcomes.size());
    const double sigma = std::sqrt(n * 0.3 * 0.7);
    CHECK(std::abs(static_cast<double>(counts[0]) - 0.3 * n) < 3 * sigma);
    CHECK(counts[1] == 0);
    CHECK(counts[0] + counts[2] == n);
    CHECK(sample_counts(t, n, 12345) == counts);
}

TEST_CASE("immediate re-measurement repeats the outcome")
{
    const auto& o = osc();
    const auto psi = cplx{std::sqrt(0.3), 0.0} * o.s.eigenfunctions()[0] + cplx{std::sqrt(0.7), 0.0} * o.s.eigenfunctions()[2];
    const auto b = Basis::from_spectrum(o.s).truncated(3);
    Rng rng(99);
    std::size_t agree = 0, zeros = 0;
    const std::size_t trials = 100000;
    for (std::size_t k = 0; k < trials; ++k) {
        const auto first = measure_and_collapse(psi, b, rng);
        const auto second = measure_and_collapse(first.state, b, rng);
        if (second.outcome == first.outcome) ++agree;
        if (first.level == 0) ++zeros;
    }
    CHECK(agree == trials);
    CHECK(std::abs(static_cast<double>(zeros) - 0.3 * trials) < 3 * std::sqrt(trials * 0.21));
}

TEST_CASE("continuous momentum density of a Gaussian")
{
    const double hbar = 1.0, sigma = 1.1;
    const Grid1D g(-20.0, 20.0, 1024, Boundary::dirichlet);
    const Grid1D pg(-6.0, 6.0, 601, Boundary::dirichlet);
    auto gaussian = [&](double p0) {
        return ComplexField::sample(g, [&](double x) {
            return std::exp(-x * x / (2 * sigma * sigma)) / std::pow(pi * sigma * sigma, 0.25) * std::polar(1.0, p0 * x / hbar);
        });
    };
    const auto t = continuous_probability_density(gaussian(0.0), pg, hbar);
    REQUIRE(t.outcomes.size() == pg.size());
    CHECK(std::abs(integrate(pg, t.probabilities) - 1.0) < 1e-6);
    std::vector<double> m1(pg.size()), m2(pg.size());
    for (std::size_t i = 0; i < pg.size(); ++i) {
        m1[i] = pg.x(i) * t.probabilities[i];
        m2[i] = pg.x(i) * pg.x(i) * t.probabilities[i];
    }
    CHECK(std::abs(integrate(pg, m1)) < 1e-10);
    const double var = hbar * hbar / (2 * sigma * sigma);
    CHECK(integrate(pg, m2) == doctest::Approx(var).epsilon(1e-3));

    // boost by p0 = 10 grid steps of p
    const double p0 = 10 * pg.spacing();
    const auto tb = continuous_probability_density(gaussian(p0), pg, hbar);
    for (std::size_t i = 10; i < pg.size(); ++i) CHECK(std::abs(tb.probabilities[i] - t.probabilities[i - 10]) < 1e-10);
}

TEST_CASE("norm is conserved under propagation")
{
    const auto& o = osc();
    Rng rng(4);
    const auto psi0 = random_state(o.grid, rng);
    const quantum::CrankNicolson cn(o.h, 0.01);
    auto psi = psi0;
    for (int k = 0; k < 200; ++k) {
        psi = cn.step(psi);
        if (k % 50 == 0) CHECK(std::abs(integrate(o.grid, born_density(psi)) - 1.0) < 1e-8);
    }
}

TEST_CASE("classical oscillator wave is not a Hamiltonian eigenfunction")
{
    const Grid1D g(-0.5, 0.5, 2048, Boundary::dirichlet);
    const auto x = normalize(classical::classical_wavefunction(classical::ActionFunction::harmonic_oscillator(0.5, 1.0, 1.0), g, 0.0, 1.0));
    const auto h = quantum::Hamiltonian::build(quantum::PotentialSpec::harmonic(1.0), g, 1.0, 1.0);
    const auto hx = h.apply(x);
    const cplx e = inner_product(x, hx);
    const auto r = hx - e * x;
    // X does not vanish at the walls; leave the two wall-adjacent nodes out
    std::vector<double> r2(g.size(), 0.0);
    for (std::size_t i = 2; i + 2 < g.size(); ++i) r2[i] = std::norm(r[i]);
    CHECK(std::sqrt(integrate(g, r2)) / norm(x) > 0.1);
}
