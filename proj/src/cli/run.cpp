#include "hjwave/cli/run.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>

#include "CLI11.hpp"

#include "hjwave/cli/config.hpp"
#include "hjwave/cli/experiments.hpp"
#include "hjwave/error.hpp"

namespace hjwave::cli {

namespace {

struct FlagTarget {
    std::string flag;      // without leading dashes
    std::string block;     // "" for top level, otherwise grid/constants/potential/output/params
    std::string key;
    ParamType type;
    std::string help;
};

const std::vector<FlagTarget>& common_flags()
{
    static const std::vector<FlagTarget> flags{
        {"x-min", "grid", "x_min", ParamType::number, "left end of the grid"},
        {"x-max", "grid", "x_max", ParamType::number, "right end of the grid"},
        {"n-points", "grid", "n_points", ParamType::integer, "number of grid points"},
        {"boundary", "grid", "boundary", ParamType::text, "dirichlet | periodic"},
        {"hbar", "constants", "hbar", ParamType::number, "reduced Planck constant"},
        {"mass", "constants", "mass", ParamType::number, "particle mass"},
        {"c", "constants", "c", ParamType::number, "speed of light"},
        {"omega", "constants", "omega", ParamType::number, "angular frequency"},
        {"potential", "potential", "kind", ParamType::text, "zero | box | harmonic | expression"},
        {"potential-expression", "potential", "expression", ParamType::text, "V(x) for kind expression"},
        {"width", "potential", "width", ParamType::number, "box width"},
        {"depth", "potential", "depth", ParamType::number, "box depth outside the well"},
        {"center", "potential", "center", ParamType::number, "box or oscillator center"},
        {"potential-omega", "potential", "omega", ParamType::number, "oscillator frequency (default: omega)"},
        {"out", "output", "path", ParamType::text, "output file (stdout when omitted)"},
        {"format", "output", "format", ParamType::text, "csv | json (default from the --out extension)"},
        {"seed", "", "seed", ParamType::integer, "random seed"},
    };
    return flags;
}

Json convert(const FlagTarget& t, const std::string& value)
{
    auto number = [&](std::string_view s) {
        double v = 0.0;
        const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc{} || p != s.data() + s.size())
            throw ConfigError("--" + t.flag + ": '" + std::string(s) + "' is not a number");
        return v;
    };
    switch (t.type) {
    case ParamType::number: return number(value);
    case ParamType::integer: {
        std::uint64_t v = 0;
        const auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
        if (value.empty() || ec != std::errc{} || p != value.data() + value.size())
            throw ConfigError("--" + t.flag + ": '" + value + "' is not a non-negative integer");
        return v;
    }
    case ParamType::text: return value;
    case ParamType::number_list: {
        Json arr = Json::array();
        std::size_t start = 0;
        while (start <= value.size()) {
            const std::size_t end = std::min(value.find(',', start), value.size());
            arr.push_back(number(std::string_view(value).substr(start, end - start)));
            start = end + 1;
        }
        return arr;
    }
    }
    return value;
}

bool ends_with(const std::string& s, const std::string& suffix)
{
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int execute(const Json& doc, std::ostream& out)
{
    const auto start = std::chrono::steady_clock::now();
    const ExperimentConfig cfg = parse_config(doc);
    const ExperimentResult result = run_experiment(cfg);

    auto write = [&](std::ostream& os) {
        if (cfg.output.format == OutputFormat::json)
            result.json.write(os);
        else
            result.table.write_csv(os);
    };
    if (cfg.output.path.empty()) {
        write(out);
    } else {
        std::ofstream file(cfg.output.path, std::ios::binary | std::ios::trunc);
        if (!file) throw ConfigError("cannot open output file '" + cfg.output.path + "'");
        write(file);
        if (!file.flush()) throw ConfigError("failed writing '" + cfg.output.path + "'");
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char line[256];
    std::snprintf(line, sizeof line, "%s: wall_time=%.3fs %s=%.6g", cfg.subcommand.c_str(), wall,
                  result.metric_name.c_str(), result.metric);
    out << line << '\n';
    return exit_ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Experiments from geometrical optics and Hamilton-Jacobi mechanics to the Schroedinger and Pauli "
                 "equations",
                 "hjwave"};
    app.require_subcommand(1);

    std::string config_path;
    std::map<std::string, std::map<std::string, std::string>> values; // subcommand -> flag -> value
    std::vector<std::pair<std::string, std::vector<FlagTarget>>> tables;
    for (const std::string_view name : subcommands()) {
        const std::string sub(name);
        CLI::App* cmd = app.add_subcommand(sub, "run the " + sub + " experiment");
        cmd->add_option("--config", config_path, "JSON experiment config (flags override it)");
        std::vector<FlagTarget> targets = common_flags();
        for (const ParamSpec& p : param_specs(sub)) {
            std::string flag = p.key;
            std::replace(flag.begin(), flag.end(), '_', '-');
            targets.push_back({flag, "params", p.key, p.type, p.help});
        }
        for (const FlagTarget& t : targets) cmd->add_option("--" + t.flag, values[sub][t.flag], t.help);
        tables.emplace_back(sub, std::move(targets));
    }

    std::vector<std::string> argv_store{"hjwave"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n";
        const auto chosen = app.get_subcommands();
        err << (chosen.empty() ? app.help() : chosen.front()->help());
        return exit_config_error;
    }

    try {
        const CLI::App* cmd = app.get_subcommands().front();
        const std::string sub = cmd->get_name();
        Json doc = config_path.empty() ? Json::object() : load_document(config_path);
        if (!doc.is_object()) throw ConfigError("config file must hold a JSON object");
        if (doc.contains("subcommand") && doc.at("subcommand") != sub)
            throw ConfigError("config file is for '" + doc.at("subcommand").dump() + "', not '" + sub + "'");
        doc["subcommand"] = sub;
        const auto& targets = std::find_if(tables.begin(), tables.end(), [&](auto& p) { return p.first == sub; })->second;
        for (const FlagTarget& t : targets) {
            if (cmd->count("--" + t.flag) == 0) continue;
            const Json v = convert(t, values[sub][t.flag]);
            if (t.block.empty()) {
                doc[t.key] = v;
            } else {
                if (doc.contains(t.block) && !doc.at(t.block).is_object())
                    throw ConfigError(t.block + " must be a JSON object");
                doc[t.block][t.key] = v;
            }
        }
        if (cmd->count("--potential-expression") && !cmd->count("--potential"))
            doc["potential"]["kind"] = "expression";
        const bool format_given = doc.contains("output") && doc.at("output").contains("format");
        if (!format_given && doc.contains("output") && doc.at("output").contains("path") &&
            doc.at("output").at("path").is_string() && ends_with(doc.at("output").at("path").get<std::string>(), ".json"))
            doc["output"]["format"] = "json";
        return execute(doc, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const DomainError& e) {
        err << "invalid parameters: " << e.what() << '\n';
        return exit_config_error;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_numerical_error;
    } catch (const Json::exception& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_numerical_error;
    }
}

int run(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

} // namespace hjwave::cli
