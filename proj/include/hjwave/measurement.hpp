#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hjwave/field.hpp"
#include "hjwave/operators.hpp"
#include "hjwave/random.hpp"

namespace hjwave::measurement {

/// |ψ(x)|² at every node.
std::vector<double> born_density(const ComplexField& psi);

/// A(x) = (A_op ψ)(x) / ψ(x), undefined where |ψ| is below the amplitude floor.
struct ObservableField {
    Grid1D grid;
    std::vector<cplx> values;
    std::vector<bool> valid;
    std::string observable;
};

ObservableField observable_field(const ComplexField& psi, const operators::LinearOperatorSpec& op,
                                 double floor_ratio = default_amplitude_floor);

/// ∫ ψ* (A_op ψ) dx. Requires a normalized state.
cplx expectation_operator(const ComplexField& psi, const operators::LinearOperatorSpec& op);

struct FieldExpectation {
    enum class Status { ok, heavy_mask };
    cplx value;               // ∫ A(x) |ψ|² dx over valid nodes
    double masked_probability; // ∫ |ψ|² dx over masked nodes
    Status status;
};

/// Probability carried by masked nodes above which expectation_field warns.
inline constexpr double heavy_mask_probability = 1e-6;

FieldExpectation expectation_field(const ComplexField& psi, const ObservableField& field);

/// Eigenvalue probabilities grouped by degenerate level.
struct ProbabilityTable {
    std::vector<double> outcomes;
    std::vector<double> probabilities;
    std::vector<std::size_t> degeneracy;
    std::optional<double> time;
};

/// Requires |ψ| = 1 within 1e-8; throws NumericalError when the probabilities
/// do not sum to 1 within 1e-8 (state outside the span of the basis).
ProbabilityTable eigenvalue_probabilities(const ComplexField& psi, const operators::Basis& basis);
ProbabilityTable eigenvalue_probabilities(const ComplexField& psi, const quantum::SpectralDecomposition& basis);

/// Index of the outcome selected by one uniform deviate.
std::size_t sample_outcome(const ProbabilityTable& table, Rng& rng);

struct MeasurementResult {
    double outcome;
    std::size_t level;
    ComplexField state; // normalized projection onto the outcome's eigenspace
};

MeasurementResult measure_and_collapse(const ComplexField& psi, const operators::Basis& basis, Rng& rng);
MeasurementResult measure_and_collapse(const ComplexField& psi, const operators::Basis& basis, std::uint64_t seed);

/// Outcome counts of n_trials independent measurements of the same state.
std::vector<std::size_t> sample_counts(const ProbabilityTable& table, std::size_t n_trials, std::uint64_t seed);

/// ρ(p) = |c(p)|² on p_grid (probability per unit momentum).
ProbabilityTable continuous_probability_density(const ComplexField& psi, const Grid1D& p_grid, double hbar);

} // namespace hjwave::measurement
