#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sbrdm/errors.hpp"
#include "sbrdm/model.hpp"
#include "sbrdm/numerics/quadrature.hpp"
#include "sbrdm/oracles/pimc.hpp"

namespace sbrdm::cli {

inline constexpr const char* version = "0.1.0";

enum class Command { Rdm, SweepGamma, SweepTemp, Sensitivity, Purity, Pimc, Ed, Compare };

inline const std::vector<std::pair<std::string, Command>>& command_names()
{
    static const std::vector<std::pair<std::string, Command>> names{
        {"rdm", Command::Rdm},           {"sweep-gamma", Command::SweepGamma}, {"sweep-temp", Command::SweepTemp},
        {"sensitivity", Command::Sensitivity}, {"purity", Command::Purity}, {"pimc", Command::Pimc},
        {"ed", Command::Ed},             {"compare", Command::Compare}};
    return names;
}

inline std::string to_string(Command c)
{
    for (const auto& [name, cmd] : command_names()) {
        if (cmd == c) {
            return name;
        }
    }
    return "?";
}

struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    std::size_t points = 1;
    bool log = false;

    std::vector<double> values() const
    {
        std::vector<double> v(points);
        for (std::size_t i = 0; i < points; ++i) {
            const double f = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
            v[i] = log ? std::exp(std::log(start) + f * (std::log(stop) - std::log(start)))
                       : start + f * (stop - start);
        }
        if (points > 1) {
            v.front() = start;
            v.back() = stop;
        }
        return v;
    }
};

// "start:stop:points"
inline GridSpec parse_grid(const std::string& text, bool log)
{
    GridSpec g;
    g.log = log;
    std::stringstream ss(text);
    std::string a;
    std::string b;
    std::string n;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, n) ) {
        throw ConfigError("--grid: expected start:stop:points, got '" + text + "'");
    }
    try {
        std::size_t used = 0;
        g.start = std::stod(a, &used);
        if (used != a.size()) throw std::invalid_argument(a);
        g.stop = std::stod(b, &used);
        if (used != b.size()) throw std::invalid_argument(b);
        const long p = std::stol(n, &used);
        if (used != n.size() || p < 1) throw std::invalid_argument(n);
        g.points = static_cast<std::size_t>(p);
    } catch (const std::exception&) {
        throw ConfigError("--grid: expected start:stop:points with points >= 1, got '" + text + "'");
    }
    if (!std::isfinite(g.start) || !std::isfinite(g.stop)) {
        throw ConfigError("--grid: bounds must be finite");
    }
    if (log && !(g.start > 0.0 && g.stop > 0.0)) {
        throw ConfigError("--grid: log spacing needs positive bounds");
    }
    return g;
}

// "omega:g"
inline BathMode parse_mode(const std::string& text)
{
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) throw std::invalid_argument(text);
        std::size_t used = 0;
        const std::string w = text.substr(0, colon);
        const std::string g = text.substr(colon + 1);
        BathMode m{std::stod(w, &used), 0.0};
        if (used != w.size()) throw std::invalid_argument(w);
        m.g = std::stod(g, &used);
        if (used != g.size()) throw std::invalid_argument(g);
        if (!(m.omega > 0.0) || !std::isfinite(m.g)) throw std::invalid_argument(text);
        return m;
    } catch (const std::exception&) {
        throw ConfigError("--mode: expected omega:g with omega > 0, got '" + text + "'");
    }
}

struct RunConfig {
    Command command = Command::Rdm;
    ModelParams model;
    std::optional<GridSpec> grid;
    numerics::QuadratureSpec quad;
    oracles::PimcConfig pimc;
    std::vector<BathMode> modes;     // explicit modes for ed / pimc
    std::size_t discretize = 0;      // >0: replace the continuous bath by this many modes
    std::size_t n_max = 20;
    std::size_t max_dimension = 20000;
    std::string output = "-";
    std::size_t workers = 0;
    std::vector<std::string> preamble;  // resolved configuration, one "key = value" per entry

    std::vector<double> grid_values() const { return grid ? grid->values() : std::vector<double>{}; }
};

struct ParseOutcome {
    std::optional<RunConfig> config;
    int exit_code = 0;    // meaningful when config is empty
    std::string message;  // help text or error
};

namespace detail {

inline std::string format_grid(const GridSpec& g)
{
    std::ostringstream os;
    os.precision(17);
    os << g.start << ':' << g.stop << ':' << g.points;
    return os.str();
}

inline GridSpec default_grid(Command c)
{
    switch (c) {
    case Command::SweepGamma: return {0.01, 0.3, 30, true};
    case Command::SweepTemp: return {0.4, 4.0, 37, false};
    case Command::Sensitivity: return {0.2, 5.0, 49, false};
    case Command::Purity: return {1e-3, 5.0, 60, true};
    default: return {};
    }
}

inline bool needs_beta(Command c)
{
    return c == Command::Rdm || c == Command::SweepGamma || c == Command::Pimc || c == Command::Ed ||
           c == Command::Compare;
}

}  // namespace detail

// Flags override values from --config; unknown keys in either place are errors.
inline ParseOutcome parse_config(std::vector<std::string> args)
{
    RunConfig cfg;
    std::string command;
    double epsilon = cfg.model.system.epsilon;
    double delta = cfg.model.system.delta;
    double gamma_ = 0.1;
    double omega_c = cfg.model.bath.omega_c;
    std::string kind = "superohmic";
    std::optional<double> beta;
    std::optional<std::string> grid;
    std::string spacing;
    std::vector<std::string> mode_text;

    CLI::App app{"Equilibrium reduced density matrix of the spin-boson model", "sbrdm"};
    app.set_config("--config", "", "read options from a key = value file");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.set_version_flag("--version", std::string("sbrdm ") + version);

    std::vector<std::string> names;
    for (const auto& [name, cmd] : command_names()) {
        names.push_back(name);
    }
    app.add_option("command", command, "what to compute")->required()->check(CLI::IsMember(names));
    app.add_option("--epsilon", epsilon, "level splitting")->capture_default_str();
    app.add_option("--delta", delta, "tunneling (energy unit)")->capture_default_str();
    app.add_option("--gamma", gamma_, "coupling strength")->capture_default_str();
    app.add_option("--omega-c", omega_c, "bath cutoff frequency")->capture_default_str();
    app.add_option("--kind", kind, "spectral density family")
        ->check(CLI::IsMember({"superohmic", "ohmic"}, CLI::ignore_case))
        ->capture_default_str();
    app.add_option("--beta", beta, "inverse temperature");
    app.add_option("--grid", grid, "sweep grid start:stop:points");
    app.add_option("--spacing", spacing, "grid spacing")->check(CLI::IsMember({"lin", "log"}));
    app.add_option("--rel-tol", cfg.quad.rel_tol, "quadrature relative tolerance")->capture_default_str();
    app.add_option("--abs-tol", cfg.quad.abs_tol, "quadrature absolute tolerance")->capture_default_str();
    app.add_option("--max-subdivisions", cfg.quad.max_subdivisions, "quadrature interval budget")
        ->capture_default_str();
    app.add_option("--slices", cfg.pimc.slices, "PIMC Trotter number")->capture_default_str();
    app.add_option("--sweeps", cfg.pimc.sweeps, "PIMC sweeps per chain")->capture_default_str();
    app.add_option("--burn-in", cfg.pimc.burn_in, "PIMC burn-in sweeps")->capture_default_str();
    app.add_option("--thinning", cfg.pimc.thinning, "PIMC measurement interval")->capture_default_str();
    app.add_option("--chains", cfg.pimc.chains, "PIMC independent chains")->capture_default_str();
    app.add_option("--seed", cfg.pimc.seed, "PIMC seed")->capture_default_str();
    app.add_option("--max-beta-delta", cfg.pimc.max_beta_delta, "PIMC low-temperature bound")->capture_default_str();
    app.add_option("--dump", cfg.pimc.dump_path, "PIMC raw chain dump file");
    app.add_option("--mode", mode_text, "explicit bath mode omega:g (repeatable)");
    app.add_option("--modes", cfg.discretize, "discretize the bath into this many modes")->capture_default_str();
    app.add_option("--n-max", cfg.n_max, "ED Fock cutoff per mode")->capture_default_str();
    app.add_option("--max-dimension", cfg.max_dimension, "ED dimension cap")->capture_default_str();
    app.add_option("--output,-o", cfg.output, "CSV output file, - for stdout")->capture_default_str();
    app.add_option("--workers", cfg.workers, "worker threads, 0 for SBRDM_WORKERS or all cores")
        ->capture_default_str();

    ParseOutcome out;
    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const bool info = e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success);
        out.exit_code = info ? 0 : 2;
        if (info) {
            out.message = e.get_name() == "CallForVersion" ? e.what() : app.help();
        } else {
            out.message = e.what();
        }
        return out;
    }

    try {
        cfg.command = std::find_if(command_names().begin(), command_names().end(),
                                   [&](const auto& p) { return p.first == command; })->second;
        cfg.model.system = {epsilon, delta};
        std::string k = kind;
        std::transform(k.begin(), k.end(), k.begin(), [](unsigned char ch) { return std::tolower(ch); });
        cfg.model.bath = {k == "ohmic" ? SpectralKind::Ohmic : SpectralKind::SuperOhmic, gamma_, omega_c};
        if (beta) {
            cfg.model.thermo.beta = *beta;
        } else if (cfg.command == Command::Purity) {
            cfg.model.thermo.beta = 50.0;
        } else if (detail::needs_beta(cfg.command)) {
            throw ConfigError("--beta is required for " + command);
        }
        const bool sweeping = cfg.command == Command::SweepGamma || cfg.command == Command::SweepTemp ||
                              cfg.command == Command::Sensitivity || cfg.command == Command::Purity;
        if (grid) {
            const bool log = spacing.empty() ? detail::default_grid(cfg.command).log : spacing == "log";
            cfg.grid = parse_grid(*grid, log);
        } else if (sweeping) {
            cfg.grid = detail::default_grid(cfg.command);
            if (!spacing.empty()) {
                cfg.grid->log = spacing == "log";
            }
        }
        for (const auto& m : mode_text) {
            cfg.modes.push_back(parse_mode(m));
        }
        if (!cfg.modes.empty() && cfg.discretize > 0) {
            throw ConfigError("--mode and --modes are mutually exclusive");
        }
        if (cfg.command == Command::Ed && cfg.modes.empty() && cfg.discretize == 0) {
            throw ConfigError("ed needs --mode omega:g or --modes N");
        }

        cfg.model.system.validate();
        cfg.model.bath.validate();
        if (cfg.command != Command::SweepTemp && cfg.command != Command::Sensitivity) {
            cfg.model.thermo.validate();
        }
        cfg.quad.validate();
        cfg.pimc.validate();
        if (cfg.grid) {
            for (double v : cfg.grid->values()) {
                const bool temperature_grid = cfg.command == Command::SweepTemp || cfg.command == Command::Sensitivity;
                if (temperature_grid ? !(v > 0.0) : !(v >= 0.0)) {
                    throw ConfigError("--grid: values must be " + std::string(temperature_grid ? "> 0" : ">= 0"));
                }
            }
        }
        if (cfg.workers == 0) {
            cfg.workers = default_workers();
        }
        cfg.pimc.workers = cfg.workers;
    } catch (const std::exception& e) {
        out.exit_code = 2;
        out.message = e.what();
        return out;
    }

    std::stringstream resolved(app.config_to_str(true, false));
    for (std::string line; std::getline(resolved, line);) {
        if (line.empty()) {
            continue;
        }
        // defaults filled in above are not known to the option parser
        if (line.rfind("beta=", 0) == 0 && !beta && cfg.command == Command::Purity) {
            line = "beta=50";
        } else if (line.rfind("grid=", 0) == 0 && !grid && cfg.grid) {
            line = "grid=\"" + detail::format_grid(*cfg.grid) + "\"";
        } else if (line.rfind("spacing=", 0) == 0 && spacing.empty() && cfg.grid) {
            line = cfg.grid->log ? "spacing=\"log\"" : "spacing=\"lin\"";
        }
        cfg.preamble.push_back(line);
    }
    out.config = std::move(cfg);
    return out;
}

inline ParseOutcome parse_config(int argc, const char* const* argv)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return parse_config(std::move(args));
}

}  // namespace sbrdm::cli
