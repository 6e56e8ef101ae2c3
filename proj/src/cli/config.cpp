#include "hjwave/cli/config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <set>

#include "hjwave/cli/expression.hpp"
#include "hjwave/error.hpp"

namespace hjwave::cli {

namespace {

constexpr std::array<std::string_view, 8> subcommand_names{
    "optics-limit", "classical", "eigensolve", "propagate", "expand", "fields", "measure", "pauli"};

constexpr ParamSpec optics_params[] = {
    {"n", ParamType::text, R"("1+0.1*x")", "refractive index n(x) as an expression"},
    {"lambda_bars", ParamType::number_list, "[0.1,0.05,0.025,0.0125]", "strictly decreasing reduced wavelengths"},
};
constexpr ParamSpec classical_params[] = {
    {"mode", ParamType::text, R"("trajectory")", "trajectory | residual"},
    {"energy", ParamType::number, "0.5", "oscillator energy E"},
    {"q0", ParamType::number, "0.0", "initial position (trajectory)"},
    {"branch", ParamType::integer, "1", "1 for p > 0 at start, 0 for p < 0 (trajectory)"},
    {"t_end", ParamType::number, "6.283185307179586", "final time (trajectory)"},
    {"dt", ParamType::number, "0.001", "time step (trajectory)"},
    {"time", ParamType::number, "0.0", "evaluation time (residual)"},
};
constexpr ParamSpec eigensolve_params[] = {
    {"levels", ParamType::integer, "10", "number of lowest eigenpairs"},
};
constexpr ParamSpec propagate_params[] = {
    {"state", ParamType::text, R"("eigen:0")", "initial state"},
    {"dt", ParamType::number, "null", "time step (default 0.001*2*pi/omega)"},
    {"steps", ParamType::integer, "1000", "number of Crank-Nicolson steps"},
    {"every", ParamType::integer, "10", "record diagnostics every this many steps"},
};
constexpr ParamSpec expand_params[] = {
    {"state", ParamType::text, R"("eigen:0")", "state to expand"},
    {"basis", ParamType::text, R"("energy")", "energy | momentum"},
    {"size", ParamType::integer, "10", "number of basis functions"},
    {"mode", ParamType::text, R"("coefficients")", "coefficients | kernel"},
    {"node", ParamType::number, "0.0", "x' of the completeness kernel (kernel mode)"},
};
constexpr ParamSpec fields_params[] = {
    {"state", ParamType::text, R"("eigen:0")", "state"},
    {"observable", ParamType::text, R"("energy")", "energy | momentum | position"},
};
constexpr ParamSpec measure_params[] = {
    {"state", ParamType::text, R"("superposition:0.3,0.7")", "state to measure"},
    {"trials", ParamType::integer, "100000", "number of independent measurements"},
};
constexpr ParamSpec pauli_params[] = {
    {"b", ParamType::number_list, "[0,0,1]", "uniform magnetic field (Bx,By,Bz)"},
    {"mu_s", ParamType::number, "null", "magnetic moment (default g e hbar/(4 m c))"},
    {"g", ParamType::number, "2.0", "Lande g-factor"},
    {"charge", ParamType::number, "1.0", "charge e"},
    {"initial", ParamType::text, R"("x")", "initial spin: plus | minus | x"},
    {"dt", ParamType::number, "0.001", "time step"},
    {"steps", ParamType::integer, "6284", "number of steps"},
    {"every", ParamType::integer, "10", "record every this many steps"},
};

struct Defaults {
    std::string_view name;
    std::span<const ParamSpec> params;
    const char* grid;
    const char* potential;
};

const Defaults defaults_table[] = {
    {"optics-limit", optics_params, R"({"x_min":0,"x_max":1,"n_points":8193,"boundary":"dirichlet"})",
     R"({"kind":"zero"})"},
    {"classical", classical_params, R"({"x_min":-0.5,"x_max":0.5,"n_points":2048,"boundary":"dirichlet"})",
     R"({"kind":"harmonic"})"},
    {"eigensolve", eigensolve_params, R"({"x_min":-12,"x_max":12,"n_points":2048,"boundary":"dirichlet"})",
     R"({"kind":"harmonic"})"},
    {"propagate", propagate_params, R"({"x_min":-12,"x_max":12,"n_points":2048,"boundary":"dirichlet"})",
     R"({"kind":"harmonic"})"},
    {"expand", expand_params, R"({"x_min":-12,"x_max":12,"n_points":512,"boundary":"periodic"})",
     R"({"kind":"harmonic"})"},
    {"fields", fields_params, R"({"x_min":-12,"x_max":12,"n_points":2048,"boundary":"dirichlet"})",
     R"({"kind":"harmonic"})"},
    {"measure", measure_params, R"({"x_min":-12,"x_max":12,"n_points":512,"boundary":"dirichlet"})",
     R"({"kind":"harmonic"})"},
    {"pauli", pauli_params, R"({"x_min":0,"x_max":6.283185307179586,"n_points":64,"boundary":"periodic"})",
     R"({"kind":"zero"})"},
};

const Defaults& defaults_for(std::string_view sub)
{
    for (const auto& d : defaults_table)
        if (d.name == sub) return d;
    throw ConfigError("unknown subcommand '" + std::string(sub) + "'");
}

void reject_unknown(const Json& obj, const std::string& where, std::initializer_list<std::string_view> allowed)
{
    if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
    for (const auto& [key, _] : obj.items())
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ConfigError("unknown key '" + where + "." + key + "'");
}

double get_number(const Json& obj, const char* key, const std::string& where)
{
    const Json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(where + "." + key + " must be finite");
    return d;
}

std::string get_text(const Json& obj, const char* key, const std::string& where)
{
    const Json& v = obj.at(key);
    if (!v.is_string()) throw ConfigError(where + "." + key + " must be a string");
    return v.get<std::string>();
}

std::uint64_t get_unsigned(const Json& v, const std::string& what)
{
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
    throw ConfigError(what + " must be a non-negative integer");
}

// Overlays `over` onto `base` one block deep.
Json merged(Json base, const Json& over, const std::string& where)
{
    if (over.is_null()) return base;
    if (!over.is_object()) throw ConfigError(where + " must be a JSON object");
    for (const auto& [k, v] : over.items()) base[k] = v;
    return base;
}

void check_param(const ParamSpec& spec, const Json& v)
{
    const std::string what = std::string("params.") + spec.key;
    if (v.is_null()) return;
    switch (spec.type) {
    case ParamType::number:
        if (!v.is_number() || !std::isfinite(v.get<double>())) throw ConfigError(what + " must be a finite number");
        break;
    case ParamType::integer: get_unsigned(v, what); break;
    case ParamType::text:
        if (!v.is_string()) throw ConfigError(what + " must be a string");
        break;
    case ParamType::number_list:
        if (!v.is_array() || v.empty()) throw ConfigError(what + " must be a non-empty array of numbers");
        for (const auto& e : v)
            if (!e.is_number() || !std::isfinite(e.get<double>()))
                throw ConfigError(what + " must contain finite numbers only");
        break;
    }
}

} // namespace

quantum::PotentialSpec PotentialBlock::make(const Grid1D& grid, const PhysicalConstants& k) const
{
    if (kind == "zero") return quantum::PotentialSpec::zero();
    if (kind == "box") return quantum::PotentialSpec::box(width, depth, center);
    if (kind == "harmonic") return quantum::PotentialSpec::harmonic(omega.value_or(k.omega), k.mass, center);
    if (kind == "expression") {
        const Expression e = Expression::parse(expression);
        std::vector<double> v(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) v[i] = e(grid.x(i));
        return quantum::PotentialSpec::tabulated(grid, std::move(v));
    }
    throw ConfigError("potential.kind must be zero, box, harmonic or expression (got '" + kind + "')");
}

bool ExperimentConfig::has(std::string_view key) const
{
    const auto it = params.find(std::string(key));
    return it != params.end() && !it->is_null();
}

double ExperimentConfig::number(std::string_view key) const
{
    if (!has(key)) throw ConfigError("params." + std::string(key) + " is required");
    return params.at(std::string(key)).get<double>();
}

std::size_t ExperimentConfig::integer(std::string_view key) const
{
    if (!has(key)) throw ConfigError("params." + std::string(key) + " is required");
    return params.at(std::string(key)).get<std::size_t>();
}

std::string ExperimentConfig::text(std::string_view key) const
{
    if (!has(key)) throw ConfigError("params." + std::string(key) + " is required");
    return params.at(std::string(key)).get<std::string>();
}

std::vector<double> ExperimentConfig::numbers(std::string_view key) const
{
    if (!has(key)) throw ConfigError("params." + std::string(key) + " is required");
    return params.at(std::string(key)).get<std::vector<double>>();
}

std::span<const std::string_view> subcommands() { return subcommand_names; }

std::span<const ParamSpec> param_specs(std::string_view subcommand) { return defaults_for(subcommand).params; }

Json default_document(std::string_view subcommand)
{
    const Defaults& d = defaults_for(subcommand);
    Json params = Json::object();
    for (const ParamSpec& p : d.params) params[p.key] = Json::parse(p.default_json);
    return Json{{"subcommand", std::string(subcommand)},
                {"grid", Json::parse(d.grid)},
                {"constants", Json{{"hbar", 1.0}, {"mass", 1.0}, {"c", 1.0}, {"omega", 1.0}}},
                {"potential", Json::parse(d.potential)},
                {"output", Json{{"path", ""}, {"format", "csv"}}},
                {"seed", std::uint64_t{0}},
                {"params", params}};
}

ExperimentConfig parse_config(const Json& doc)
{
    reject_unknown(doc, "config", {"subcommand", "grid", "constants", "potential", "output", "seed", "params"});
    if (!doc.contains("subcommand")) throw ConfigError("config.subcommand is required");
    ExperimentConfig cfg;
    cfg.subcommand = get_text(doc, "subcommand", "config");
    const Json def = default_document(cfg.subcommand);
    auto block = [&](const char* name) { return merged(def.at(name), doc.value(name, Json()), name); };

    const Json grid = block("grid");
    reject_unknown(grid, "grid", {"x_min", "x_max", "n_points", "boundary"});
    cfg.grid.x_min = get_number(grid, "x_min", "grid");
    cfg.grid.x_max = get_number(grid, "x_max", "grid");
    cfg.grid.n_points = get_unsigned(grid.at("n_points"), "grid.n_points");
    const std::string boundary = get_text(grid, "boundary", "grid");
    if (boundary != "dirichlet" && boundary != "periodic")
        throw ConfigError("grid.boundary must be dirichlet or periodic (got '" + boundary + "')");
    cfg.grid.boundary = boundary_from_string(boundary.c_str());
    try {
        (void)cfg.grid.make();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("grid: ") + e.what());
    }

    const Json k = block("constants");
    reject_unknown(k, "constants", {"hbar", "mass", "c", "omega"});
    cfg.constants = {get_number(k, "hbar", "constants"), get_number(k, "mass", "constants"),
                     get_number(k, "c", "constants"), get_number(k, "omega", "constants")};
    try {
        cfg.constants.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("constants: ") + e.what());
    }

    const Json pot = block("potential");
    reject_unknown(pot, "potential", {"kind", "width", "depth", "center", "omega", "expression"});
    cfg.potential.kind = get_text(pot, "kind", "potential");
    if (pot.contains("width")) cfg.potential.width = get_number(pot, "width", "potential");
    if (pot.contains("depth")) cfg.potential.depth = get_number(pot, "depth", "potential");
    if (pot.contains("center")) cfg.potential.center = get_number(pot, "center", "potential");
    if (pot.contains("omega")) cfg.potential.omega = get_number(pot, "omega", "potential");
    if (pot.contains("expression")) cfg.potential.expression = get_text(pot, "expression", "potential");
    if (cfg.potential.kind == "expression") {
        if (cfg.potential.expression.empty()) throw ConfigError("potential.expression is required for kind expression");
        (void)Expression::parse(cfg.potential.expression);
    } else if (cfg.potential.kind != "zero" && cfg.potential.kind != "box" && cfg.potential.kind != "harmonic") {
        throw ConfigError("potential.kind must be zero, box, harmonic or expression (got '" + cfg.potential.kind +
                          "')");
    }

    const Json out = block("output");
    reject_unknown(out, "output", {"path", "format"});
    cfg.output.path = get_text(out, "path", "output");
    const std::string format = get_text(out, "format", "output");
    if (format == "csv") cfg.output.format = OutputFormat::csv;
    else if (format == "json") cfg.output.format = OutputFormat::json;
    else throw ConfigError("output.format must be csv or json (got '" + format + "')");

    cfg.seed = get_unsigned(doc.value("seed", def.at("seed")), "seed");

    const Json params = block("params");
    const auto specs = param_specs(cfg.subcommand);
    for (const auto& [key, value] : params.items()) {
        const auto it = std::find_if(specs.begin(), specs.end(), [&](const ParamSpec& s) { return key == s.key; });
        if (it == specs.end()) throw ConfigError("unknown key 'params." + key + "' for " + cfg.subcommand);
        check_param(*it, value);
    }
    cfg.params = params;
    return cfg;
}

Json load_document(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
}

} // namespace hjwave::cli
