#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "hjwave/grid.hpp"
#include "hjwave/quantum.hpp"

namespace hjwave::cli {

using Json = nlohmann::json;

enum class OutputFormat { csv, json };

struct GridBlock {
    double x_min = 0.0;
    double x_max = 1.0;
    std::size_t n_points = 2048;
    Boundary boundary = Boundary::dirichlet;

    Grid1D make() const { return Grid1D(x_min, x_max, n_points, boundary); }
};

/// zero | box | harmonic | expression
struct PotentialBlock {
    std::string kind = "zero";
    double width = 1.0;
    double depth = 0.0;
    double center = 0.0;
    std::optional<double> omega; // harmonic; defaults to constants.omega
    std::string expression;      // kind == expression

    quantum::PotentialSpec make(const Grid1D& grid, const PhysicalConstants& k) const;
};

struct OutputBlock {
    std::string path;
    OutputFormat format = OutputFormat::csv;
};

enum class ParamType { number, integer, text, number_list };

/// One subcommand parameter; the command-line flag is the key with '_' replaced by '-'.
struct ParamSpec {
    const char* key;
    ParamType type;
    const char* default_json; // JSON text, "null" when there is no default
    const char* help;
};

struct ExperimentConfig {
    std::string subcommand;
    GridBlock grid;
    PhysicalConstants constants;
    PotentialBlock potential;
    OutputBlock output;
    std::uint64_t seed = 0;
    Json params = Json::object(); // complete: every key of the subcommand's schema

    bool has(std::string_view key) const;
    double number(std::string_view key) const;
    std::size_t integer(std::string_view key) const;
    std::string text(std::string_view key) const;
    std::vector<double> numbers(std::string_view key) const;
};

std::span<const std::string_view> subcommands();
std::span<const ParamSpec> param_specs(std::string_view subcommand);

/// Subcommand defaults for the grid, potential and parameter blocks.
Json default_document(std::string_view subcommand);

/// Strict parse: unknown keys, wrong types and invalid values raise ConfigError.
/// Missing entries are taken from default_document(subcommand).
ExperimentConfig parse_config(const Json& doc);

/// Reads and parses a JSON document from a file (ConfigError on failure).
Json load_document(const std::string& path);

} // namespace hjwave::cli
