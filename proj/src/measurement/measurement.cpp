#include <algorithm>
#include <cmath>
#include <string>

#include "hjwave/error.hpp"
#include "hjwave/kernels.hpp"
#include "hjwave/measurement.hpp"

namespace hjwave::measurement {

namespace {

constexpr double normalization_tolerance = 1e-8;

void require_normalized(const ComplexField& psi, double tol)
{
    const double n2 = norm_squared(psi);
    if (std::abs(n2 - 1.0) > tol)
        throw DomainError("state must be normalized (norm^2 = " + std::to_string(n2) + ")");
}

} // namespace

std::vector<double> born_density(const ComplexField& psi)
{
    std::vector<double> p(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) p[i] = std::norm(psi[i]);
    return p;
}

ObservableField observable_field(const ComplexField& psi, const operators::LinearOperatorSpec& op,
                                 double floor_ratio)
{
    const ComplexField a_psi = op.apply(psi);
    ObservableField field{psi.grid(), std::vector<cplx>(psi.size()), amplitude_mask(psi, floor_ratio), op.name()};
    for (std::size_t i = 0; i < psi.size(); ++i)
        if (field.valid[i]) field.values[i] = a_psi[i] / psi[i];
    if (std::none_of(field.valid.begin(), field.valid.end(), [](bool b) { return b; }))
        throw NumericalError("observable field is masked at every node");
    return field;
}

cplx expectation_operator(const ComplexField& psi, const operators::LinearOperatorSpec& op)
{
    require_normalized(psi, 1e-6);
    return inner_product(psi, op.apply(psi));
}

FieldExpectation expectation_field(const ComplexField& psi, const ObservableField& field)
{
    if (!(psi.grid() == field.grid)) throw GridMismatchError("field and state live on different grids");
    require_normalized(psi, 1e-6);
    const Grid1D& grid = psi.grid();
    cplx value{};
    double masked = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const double rho = grid.weight(i) * std::norm(psi[i]);
        if (field.valid[i])
            value += field.values[i] * rho;
        else
            masked += rho;
    }
    return {value, masked,
            masked > heavy_mask_probability ? FieldExpectation::Status::heavy_mask : FieldExpectation::Status::ok};
}

ProbabilityTable eigenvalue_probabilities(const ComplexField& psi, const operators::Basis& basis)
{
    require_normalized(psi, normalization_tolerance);
    const auto c = operators::expand(psi, basis);
    ProbabilityTable t;
    t.outcomes = c.level_values;
    t.probabilities.assign(t.outcomes.size(), 0.0);
    t.degeneracy.assign(t.outcomes.size(), 0);
    t.time = psi.time();
    for (std::size_t i = 0; i < c.values.size(); ++i) {
        t.probabilities[c.level[i]] += std::norm(c.values[i]);
        ++t.degeneracy[c.level[i]];
    }
    double total = 0.0;
    for (double p : t.probabilities) total += p;
    if (std::abs(total - 1.0) > normalization_tolerance)
        throw NumericalError("eigenvalue probabilities sum to " + std::to_string(total) +
                             "; the state is not in the span of the basis");
    return t;
}

ProbabilityTable eigenvalue_probabilities(const ComplexField& psi, const quantum::SpectralDecomposition& basis)
{
    return eigenvalue_probabilities(psi, operators::Basis::from_spectrum(basis));
}

std::size_t sample_outcome(const ProbabilityTable& table, Rng& rng)
{
    double total = 0.0;
    for (double p : table.probabilities) total += p;
    const double u = rng.uniform() * total;
    double acc = 0.0;
    for (std::size_t k = 0; k < table.probabilities.size(); ++k) {
        acc += table.probabilities[k];
        if (u < acc) return k;
    }
    // u landed in the rounding gap at the top: last outcome with nonzero weight
    for (std::size_t k = table.probabilities.size(); k-- > 0;)
        if (table.probabilities[k] > 0.0) return k;
    throw NumericalError("probability table has no positive entry");
}

MeasurementResult measure_and_collapse(const ComplexField& psi, const operators::Basis& basis, Rng& rng)
{
    require_normalized(psi, normalization_tolerance);
    const auto c = operators::expand(psi, basis);
    ProbabilityTable t;
    t.outcomes = c.level_values;
    t.probabilities.assign(t.outcomes.size(), 0.0);
    for (std::size_t i = 0; i < c.values.size(); ++i) t.probabilities[c.level[i]] += std::norm(c.values[i]);
    const std::size_t level = sample_outcome(t, rng);

    std::vector<cplx> v(psi.size());
    for (std::size_t i = 0; i < c.values.size(); ++i)
        if (c.level[i] == level) kernels::axpy(c.values[i], basis.functions()[i].values(), v);
    const ComplexField projected(psi.grid(), std::move(v), psi.time());
    return {t.outcomes[level], level, normalize(projected)};
}

MeasurementResult measure_and_collapse(const ComplexField& psi, const operators::Basis& basis, std::uint64_t seed)
{
    Rng rng(seed);
    return measure_and_collapse(psi, basis, rng);
}

std::vector<std::size_t> sample_counts(const ProbabilityTable& table, std::size_t n_trials, std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<std::size_t> counts(table.probabilities.size(), 0);
    for (std::size_t k = 0; k < n_trials; ++k) ++counts[sample_outcome(table, rng)];
    return counts;
}

ProbabilityTable continuous_probability_density(const ComplexField& psi, const Grid1D& p_grid, double hbar)
{
    const auto c = operators::continuum_momentum_density(psi, p_grid, hbar);
    ProbabilityTable t;
    t.outcomes = c.labels;
    t.probabilities.resize(c.values.size());
    t.degeneracy.assign(c.values.size(), 1);
    t.time = psi.time();
    for (std::size_t k = 0; k < c.values.size(); ++k) t.probabilities[k] = std::norm(c.values[k]);
    return t;
}

} // namespace hjwave::measurement
