#pragma once

#include <string>

#include "hjwave/cli/config.hpp"
#include "hjwave/cli/output.hpp"
#include "hjwave/field.hpp"

namespace hjwave::cli {

struct ExperimentResult {
    Table table;   // CSV rendering
    FlatJson json; // JSON rendering
    std::string metric_name;
    double metric = 0.0;
};

/// Builds a state on the configured grid from a text spec:
///   eigen:K                  K-th eigenstate of the configured Hamiltonian
///   superposition:w0,w1,...  sum_k sqrt(w_k) ψ_k (weights normalized)
///   gaussian:x0,sigma,p0     normalized Gaussian packet with mean momentum p0
///   plane:M                  box momentum eigenfunction (periodic grids)
///   standing:M               sin(2π M (x - x_min)/L), normalized
///   classical:E              classical oscillator wave exp(iS/ħ) at t = 0, normalized
ComplexField make_state(const std::string& spec, const ExperimentConfig& cfg);

ExperimentResult run_experiment(const ExperimentConfig& cfg);

} // namespace hjwave::cli
