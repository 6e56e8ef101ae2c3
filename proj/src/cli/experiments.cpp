#include "hjwave/cli/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "hjwave/classical.hpp"
#include "hjwave/cli/expression.hpp"
#include "hjwave/error.hpp"
#include "hjwave/measurement.hpp"
#include "hjwave/operators.hpp"
#include "hjwave/optics.hpp"
#include "hjwave/pauli.hpp"
#include "hjwave/quantum.hpp"

namespace hjwave::cli {

namespace {

std::vector<double> parse_numbers(std::string_view text, const std::string& what)
{
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(',', start), text.size());
        const std::string_view item = text.substr(start, end - start);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size() || !std::isfinite(v))
            throw ConfigError(what + ": '" + std::string(item) + "' is not a number");
        out.push_back(v);
        start = end + 1;
    }
    return out;
}

long as_index(double v, const std::string& what)
{
    if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(what + " must be an integer");
    return static_cast<long>(v);
}

quantum::Hamiltonian hamiltonian_of(const ExperimentConfig& cfg, const Grid1D& grid)
{
    return quantum::Hamiltonian::build(cfg.potential.make(grid, cfg.constants), grid, cfg.constants.hbar,
                                       cfg.constants.mass);
}

ExperimentResult optics_limit(const ExperimentConfig& cfg)
{
    const Grid1D grid = cfg.grid.make();
    const Expression expr = Expression::parse(cfg.text("n"));
    std::vector<double> samples(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) samples[i] = expr(grid.x(i));
    const auto n = optics::RefractiveProfile::tabulated(grid, std::move(samples));
    const auto lambda_bars = cfg.numbers("lambda_bars");
    const auto rows = optics::eikonal_limit_study(n, grid, lambda_bars);

    ExperimentResult r;
    r.table.columns = {"lambda_bar", "max_phase_error"};
    for (const auto& row : rows) r.table.add({row.lambda_bar, row.max_phase_error});
    r.json.text("experiment", "optics-limit");
    r.json.text("n", cfg.text("n"));
    r.json.table(r.table);
    r.metric_name = "max_phase_error_last";
    r.metric = rows.back().max_phase_error;
    if (rows.size() >= 2 && std::all_of(rows.begin(), rows.end(), [](auto& x) { return x.max_phase_error > 0; })) {
        r.metric_name = "order";
        r.metric = optics::convergence_order(rows);
        r.json.number("order", r.metric);
    }
    return r;
}

ExperimentResult classical_run(const ExperimentConfig& cfg)
{
    const auto& k = cfg.constants;
    const auto s = classical::ActionFunction::harmonic_oscillator(cfg.number("energy"), k.mass, k.omega);
    const std::string mode = cfg.text("mode");
    ExperimentResult r;
    r.json.text("experiment", "classical");
    r.json.text("mode", mode);
    if (mode == "trajectory") {
        const std::size_t branch = cfg.integer("branch");
        if (branch > 1) throw ConfigError("params.branch must be 0 or 1");
        const auto traj = classical::integrate_trajectory(s, cfg.number("q0"), 0.0, cfg.number("t_end"),
                                                          cfg.number("dt"), branch == 1 ? +1 : -1);
        r.table.columns = {"t", "q", "p", "energy"};
        double worst = 0.0;
        for (std::size_t i = 0; i < traj.size(); ++i) {
            r.table.add({traj.times[i], traj.positions[i], traj.momenta[i], traj.energy_at(i, s)});
            const double exact = traj.amplitude * std::sin(k.omega * traj.times[i] + traj.phase);
            worst = std::max(worst, std::abs(traj.positions[i] - exact) / traj.amplitude);
        }
        r.json.number("amplitude", traj.amplitude);
        r.json.number("phase", traj.phase);
        r.json.table(r.table);
        r.metric_name = "max_relative_error";
        r.metric = worst;
        return r;
    }
    if (mode == "residual") {
        const Grid1D grid = cfg.grid.make();
        const double t = cfg.number("time");
        const auto x = classical::classical_wavefunction(s, grid, t, k.hbar);
        const auto dxdt = classical::classical_time_derivative(s, grid, t, k.hbar);
        const auto v = quantum::PotentialSpec::harmonic(k.omega, k.mass).sample(grid);
        const auto res = classical::classical_wave_residual(x, v, k.hbar, k.mass, dxdt);
        r.table.columns = {"x", "residual_abs"};
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (res.valid[i]) r.table.add({grid.x(i), res.values[i]});
        r.json.table(r.table);
        r.metric_name = "max_residual";
        r.metric = res.max_abs();
        return r;
    }
    throw ConfigError("params.mode must be trajectory or residual (got '" + mode + "')");
}

ExperimentResult eigensolve_run(const ExperimentConfig& cfg)
{
    const Grid1D grid = cfg.grid.make();
    const auto sd = quantum::eigensolve(hamiltonian_of(cfg, grid), cfg.integer("levels"));
    ExperimentResult r;
    r.table.columns = {"n", "E_n"};
    r.table.integral = {true, false};
    for (std::size_t i = 0; i < sd.size(); ++i) r.table.add({static_cast<double>(i), sd.eigenvalues()[i]});
    r.json.text("experiment", "eigensolve");
    r.json.table(r.table);
    r.json.number("orthonormality_defect", sd.orthonormality_defect());
    r.metric_name = "E_0";
    r.metric = sd.eigenvalues()[0];
    return r;
}

ExperimentResult propagate_run(const ExperimentConfig& cfg)
{
    const Grid1D grid = cfg.grid.make();
    const double dt = cfg.has("dt") ? cfg.number("dt") : 0.001 * 2.0 * std::numbers::pi / cfg.constants.omega;
    const quantum::CrankNicolson cn(hamiltonian_of(cfg, grid), dt);
    const ComplexField psi0 = make_state(cfg.text("state"), cfg).with_time(0.0);
    const auto samples = quantum::propagate_recorded(psi0, cn, cfg.integer("steps"), cfg.integer("every"));
    ExperimentResult r;
    r.table.columns = {"t", "norm", "x_mean", "p_mean", "E_mean"};
    double drift = 0.0;
    for (const auto& s : samples) {
        r.table.add({s.t, s.norm, s.x_mean, s.p_mean, s.e_mean});
        drift = std::max(drift, std::abs(s.norm - 1.0));
    }
    r.json.text("experiment", "propagate");
    r.json.number("dt", dt);
    r.json.table(r.table);
    r.metric_name = "max_norm_drift";
    r.metric = drift;
    return r;
}

operators::Basis basis_of(const ExperimentConfig& cfg, const Grid1D& grid, std::size_t size)
{
    const std::string kind = cfg.text("basis");
    if (kind == "energy") return operators::Basis::from_spectrum(quantum::eigensolve(hamiltonian_of(cfg, grid), size));
    if (kind == "momentum") return operators::Basis::momentum_box(grid, size, cfg.constants.hbar);
    throw ConfigError("params.basis must be energy or momentum (got '" + kind + "')");
}

ExperimentResult expand_run(const ExperimentConfig& cfg)
{
    const Grid1D grid = cfg.grid.make();
    const ComplexField state = make_state(cfg.text("state"), cfg);
    const auto basis = basis_of(cfg, grid, cfg.integer("size"));
    const std::string mode = cfg.text("mode");
    ExperimentResult r;
    r.json.text("experiment", "expand");
    r.json.text("mode", mode);
    if (mode == "coefficients") {
        const auto c = operators::expand(state, basis);
        r.table.columns = {"label", "re_c", "im_c", "abs2_c"};
        for (std::size_t i = 0; i < c.values.size(); ++i)
            r.table.add({c.labels[i], c.values[i].real(), c.values[i].imag(), std::norm(c.values[i])});
        r.json.table(r.table);
        r.metric_name = "parseval_sum";
        r.metric = c.parseval();
        r.json.number(r.metric_name, r.metric);
        return r;
    }
    if (mode == "kernel") {
        const auto k = operators::completeness_kernel(basis, basis.size(), cfg.number("node"));
        r.table.columns = {"x", "re_K", "im_K"};
        for (std::size_t i = 0; i < grid.size(); ++i) r.table.add({grid.x(i), k[i].real(), k[i].imag()});
        r.json.table(r.table);
        r.metric_name = "reproduction_error";
        r.metric = operators::reproduction_error(basis, basis.size(), state);
        r.json.number(r.metric_name, r.metric);
        return r;
    }
    throw ConfigError("params.mode must be coefficients or kernel (got '" + mode + "')");
}

ExperimentResult fields_run(const ExperimentConfig& cfg)
{
    const Grid1D grid = cfg.grid.make();
    const ComplexField psi = make_state(cfg.text("state"), cfg);
    const std::string name = cfg.text("observable");
    const auto op = name == "energy"     ? operators::LinearOperatorSpec::hamiltonian(hamiltonian_of(cfg, grid))
                    : name == "momentum" ? operators::LinearOperatorSpec::momentum(grid, cfg.constants.hbar)
                    : name == "position"
                        ? operators::LinearOperatorSpec::position(grid)
                        : throw ConfigError("params.observable must be energy, momentum or position (got '" +
                                            name + "')");
    const auto field = measurement::observable_field(psi, op);
    const cplx via_operator = measurement::expectation_operator(psi, op);
    const auto via_field = measurement::expectation_field(psi, field);

    ExperimentResult r;
    r.table.columns = {"x", "re_field", "im_field", "valid"};
    r.table.integral = {false, false, false, true};
    for (std::size_t i = 0; i < grid.size(); ++i)
        r.table.add({grid.x(i), field.values[i].real(), field.values[i].imag(), field.valid[i] ? 1.0 : 0.0});
    const double diff = std::abs(via_operator - via_field.value);
    const double scale = std::max({std::abs(via_operator), std::abs(via_field.value), norm(op.apply(psi))});
    r.json.text("experiment", "fields");
    r.json.text("observable", name);
    r.json.number("re_expectation_operator", via_operator.real());
    r.json.number("im_expectation_operator", via_operator.imag());
    r.json.number("re_expectation_field", via_field.value.real());
    r.json.number("im_expectation_field", via_field.value.imag());
    r.json.number("masked_probability", via_field.masked_probability);
    r.json.table(r.table);
    r.metric_name = "relative_difference";
    r.metric = scale > 0.0 ? diff / scale : diff;
    return r;
}

ExperimentResult measure_run(const ExperimentConfig& cfg)
{
    const Grid1D grid = cfg.grid.make();
    const std::string spec = cfg.text("state");
    const ComplexField psi = make_state(spec, cfg);
    std::size_t levels = 1;
    if (spec.rfind("superposition:", 0) == 0) levels = parse_numbers(spec.substr(14), "state weights").size();
    else if (spec.rfind("eigen:", 0) == 0) levels = static_cast<std::size_t>(as_index(parse_numbers(spec.substr(6), "state")[0], "eigen index")) + 1;
    else throw ConfigError("measure needs an eigen: or superposition: state");
    const auto basis = operators::Basis::from_spectrum(quantum::eigensolve(hamiltonian_of(cfg, grid), levels));
    const auto table = measurement::eigenvalue_probabilities(psi, basis);

    const std::size_t trials = cfg.integer("trials");
    if (trials == 0) throw ConfigError("params.trials must be positive");
    Rng rng(cfg.seed);
    std::vector<std::uint64_t> counts(table.outcomes.size(), 0);
    std::uint64_t repeats = 0;
    for (std::size_t k = 0; k < trials; ++k) {
        const auto first = measurement::measure_and_collapse(psi, basis, rng);
        const auto second = measurement::measure_and_collapse(first.state, basis, rng);
        ++counts[first.level];
        repeats += second.level == first.level ? 1 : 0;
    }

    ExperimentResult r;
    r.table.columns = {"eigenvalue", "probability", "degeneracy"};
    r.table.integral = {false, false, true};
    std::vector<std::pair<std::string, std::uint64_t>> named;
    for (std::size_t i = 0; i < table.outcomes.size(); ++i) {
        r.table.add({table.outcomes[i], table.probabilities[i], static_cast<double>(table.degeneracy[i])});
        named.emplace_back(format_number(table.outcomes[i]), counts[i]);
    }
    r.json.integer("seed", static_cast<std::int64_t>(cfg.seed));
    r.json.integer("n_trials", static_cast<std::int64_t>(trials));
    r.json.counts("counts", named);
    r.json.numbers("outcomes", table.outcomes);
    r.json.numbers("probabilities", table.probabilities);
    r.json.integer("repeat_agreement", static_cast<std::int64_t>(repeats));
    r.metric_name = "frequency_0";
    r.metric = static_cast<double>(counts[0]) / static_cast<double>(trials);
    return r;
}

ExperimentResult pauli_run(const ExperimentConfig& cfg)
{
    const Grid1D grid = cfg.grid.make();
    const auto& k = cfg.constants;
    const auto b = cfg.numbers("b");
    if (b.size() != 3) throw ConfigError("params.b must have three components");
    pauli::EMFieldConfig fields;
    fields.b_uniform = {b[0], b[1], b[2]};
    fields.charge = cfg.number("charge");
    if (cfg.has("mu_s")) {
        fields.mu_s = cfg.number("mu_s");
    } else {
        fields.g_factor = cfg.number("g");
        fields.mu_s = pauli::EMFieldConfig::magnetic_moment(*fields.g_factor, fields.charge, k.hbar, k.mass, k.c);
    }
    fields.scalar_potential = cfg.potential.make(grid, k).sample(grid);

    const auto ground = quantum::eigensolve(hamiltonian_of(cfg, grid), 1).eigenfunctions()[0];
    const std::string initial = cfg.text("initial");
    cplx up = 1.0, down = 0.0;
    if (initial == "minus") std::swap(up, down);
    else if (initial == "x") up = down = 1.0 / std::sqrt(2.0);
    else if (initial != "plus") throw ConfigError("params.initial must be plus, minus or x (got '" + initial + "')");
    pauli::SpinorField s(ground.scaled(up).with_time(0.0), ground.scaled(down).with_time(0.0));

    const pauli::PauliPropagator prop(grid, fields, k.hbar, k.mass, k.c, cfg.number("dt"));
    const std::size_t steps = cfg.integer("steps"), every = cfg.integer("every");
    if (every == 0) throw ConfigError("params.every must be positive");
    ExperimentResult r;
    r.table.columns = {"t", "sx", "sy", "sz", "norm", "pop_plus", "pop_minus"};
    double drift = 0.0;
    auto record = [&](const pauli::SpinorField& st, double t) {
        const auto e = pauli::spin_expectations(st);
        const double n2 = st.norm_squared();
        r.table.add({t, e.sx, e.sy, e.sz, std::sqrt(n2), norm_squared(st.plus()), norm_squared(st.minus())});
        drift = std::max(drift, std::abs(std::sqrt(n2) - 1.0));
    };
    record(s, 0.0);
    for (std::size_t i = 1; i <= steps; ++i) {
        s = prop.step(s);
        if (i % every == 0 || i == steps) record(s, static_cast<double>(i) * prop.dt());
    }
    r.json.text("experiment", "pauli");
    r.json.number("mu_s", fields.mu_s);
    r.json.table(r.table);
    r.metric_name = "max_norm_drift";
    r.metric = drift;
    return r;
}

} // namespace

ComplexField make_state(const std::string& spec, const ExperimentConfig& cfg)
{
    const Grid1D grid = cfg.grid.make();
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw ConfigError("state spec '" + spec + "' needs the form kind:args");
    const std::string kind = spec.substr(0, colon);
    const auto args = parse_numbers(std::string_view(spec).substr(colon + 1), "state '" + spec + "'");
    const double hbar = cfg.constants.hbar;

    if (kind == "eigen" || kind == "superposition") {
        std::vector<double> weights;
        if (kind == "eigen") {
            const long idx = as_index(args.at(0), "eigen index");
            if (idx < 0 || args.size() != 1) throw ConfigError("eigen: takes one non-negative index");
            weights.assign(static_cast<std::size_t>(idx) + 1, 0.0);
            weights.back() = 1.0;
        } else {
            weights = args;
        }
        double total = 0.0;
        for (double w : weights) {
            if (w < 0.0) throw ConfigError("superposition weights must be non-negative");
            total += w;
        }
        if (!(total > 0.0)) throw ConfigError("superposition weights must not all be zero");
        const auto sd = quantum::eigensolve(hamiltonian_of(cfg, grid), weights.size());
        std::vector<cplx> coeffs;
        for (double w : weights) coeffs.emplace_back(std::sqrt(w / total));
        return normalize(linear_combination(coeffs, sd.eigenfunctions()));
    }
    if (kind == "gaussian") {
        if (args.size() != 3 || !(args[1] > 0.0)) throw ConfigError("gaussian: takes x0,sigma,p0 with sigma > 0");
        const double x0 = args[0], sigma = args[1], p0 = args[2];
        auto f = ComplexField::sample(grid, [&](double x) {
            const double u = (x - x0) / sigma;
            return std::polar(std::exp(-0.5 * u * u), p0 * x / hbar);
        });
        if (!grid.periodic()) {
            std::vector<cplx> v(f.values().begin(), f.values().end());
            v.front() = v.back() = 0.0;
            f = ComplexField(grid, std::move(v));
        }
        return normalize(f);
    }
    if (kind == "plane") {
        if (args.size() != 1) throw ConfigError("plane: takes one integer index");
        return operators::momentum_eigenfunction_box(as_index(args[0], "plane index"), grid, hbar);
    }
    if (kind == "standing") {
        if (args.size() != 1) throw ConfigError("standing: takes one integer index");
        const long m = as_index(args[0], "standing index");
        return normalize(ComplexField::sample(grid, [&](double x) {
            return cplx{std::sin(2.0 * std::numbers::pi * m * (x - grid.x_min()) / grid.length()), 0.0};
        }));
    }
    if (kind == "classical") {
        if (args.size() != 1) throw ConfigError("classical: takes the energy E");
        const auto s = classical::ActionFunction::harmonic_oscillator(args[0], cfg.constants.mass, cfg.constants.omega);
        return normalize(classical::classical_wavefunction(s, grid, 0.0, hbar));
    }
    throw ConfigError("unknown state kind '" + kind + "'");
}

ExperimentResult run_experiment(const ExperimentConfig& cfg)
{
    const std::string& s = cfg.subcommand;
    if (s == "optics-limit") return optics_limit(cfg);
    if (s == "classical") return classical_run(cfg);
    if (s == "eigensolve") return eigensolve_run(cfg);
    if (s == "propagate") return propagate_run(cfg);
    if (s == "expand") return expand_run(cfg);
    if (s == "fields") return fields_run(cfg);
    if (s == "measure") return measure_run(cfg);
    if (s == "pauli") return pauli_run(cfg);
    throw ConfigError("unknown subcommand '" + s + "'");
}

} // namespace hjwave::cli
