#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "sbrdm/analysis.hpp"
#include "sbrdm/cli/config.hpp"
#include "sbrdm/errors.hpp"
#include "sbrdm/oracles/bath_discretization.hpp"
#include "sbrdm/oracles/exact_diag.hpp"
#include "sbrdm/oracles/pimc.hpp"
#include "sbrdm/parallel.hpp"
#include "sbrdm/polaron.hpp"

namespace sbrdm::cli {

inline std::string fmt(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string fmt(std::size_t v) { return std::to_string(v); }

// Free text goes last in a row; commas and newlines would break the column count.
inline std::string field(std::string s)
{
    for (auto& c : s) {
        if (c == ',' || c == '\n' || c == '\r') {
            c = c == ',' ? ';' : ' ';
        }
    }
    return s;
}

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path)
        : path_(path)
    {
        if (path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) {
                throw ConfigError("cannot open output file " + path);
            }
        }
    }

    std::ostream& os() { return file_ ? *file_ : std::cout; }
    const std::string& path() const { return path_; }
    bool to_file() const { return file_ != nullptr; }

    void comment(const std::string& line) { os() << "# " << line << '\n'; }

    void row(const std::vector<std::string>& cells)
    {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            os() << (i ? "," : "") << cells[i];
        }
        os() << '\n';
        os().flush();
    }

private:
    std::string path_;
    std::unique_ptr<std::ofstream> file_;
};

namespace detail {

struct Failures {
    std::vector<std::string> messages;
    void add(const std::string& where, const std::string& what) { messages.push_back(where + ": " + what); }
};

inline std::vector<std::string> sweep_cells(double swept, const SweepRow& r)
{
    return {fmt(swept), fmt(r.theta_S), fmt(r.theta_SB), fmt(r.rho11), fmt(r.rho22), fmt(r.rho12),
            fmt(r.lambda2), std::string(to_string(r.provenance)), field(r.note)};
}

// Evaluates body(i) for the grid in blocks of `workers` points so rows reach the file as they finish,
// always in grid order.
template <typename Body, typename Emit>
void blocked(std::size_t n, std::size_t workers, Body&& body, Emit&& emit)
{
    const std::size_t block = std::max<std::size_t>(1, workers);
    for (std::size_t start = 0; start < n; start += block) {
        const std::size_t count = std::min(block, n - start);
        parallel_for(count, workers, [&](std::size_t i) { body(start + i); });
        for (std::size_t i = 0; i < count; ++i) {
            emit(start + i);
        }
    }
}

inline void run_sweep(const RunConfig& cfg, CsvWriter& out, Failures& failures)
{
    const bool over_temperature = cfg.command == Command::SweepTemp;
    const auto grid = cfg.grid_values();
    out.row({over_temperature ? "T" : "gamma", "theta_S", "theta_SB", "rho11", "rho22", "re_rho12", "lambda2",
             "provenance", "note"});
    std::vector<SweepRow> rows(grid.size());
    blocked(
        grid.size(), cfg.workers,
        [&](std::size_t i) {
            ModelParams p = cfg.model;
            if (over_temperature) {
                p.thermo = Thermo::from_temperature(grid[i]);
            } else {
                p.bath.gamma = grid[i];
            }
            rows[i] = analytic_row(p, cfg.quad);
        },
        [&](std::size_t i) {
            out.row(sweep_cells(grid[i], rows[i]));
            if (rows[i].failed) {
                failures.add((over_temperature ? "T=" : "gamma=") + fmt(grid[i]), rows[i].note);
            }
        });
}

inline void run_rdm(const RunConfig& cfg, CsvWriter& out)
{
    const RDM rdm = assemble_rdm(cfg.model, cfg.quad);
    const SweepRow r = row_from_rdm(rdm, cfg.model);
    out.row({"gamma", "beta", "theta_S", "theta_SB", "rho11", "rho22", "re_rho12", "im_rho12", "lambda2",
             "provenance", "nonpositive", "validity_warning", "note"});
    out.row({fmt(cfg.model.bath.gamma), fmt(cfg.model.thermo.beta), fmt(r.theta_S), fmt(r.theta_SB), fmt(r.rho11),
             fmt(r.rho22), fmt(r.rho12), fmt(rdm.offdiag_imag), fmt(r.lambda2), std::string(to_string(r.provenance)),
             rdm.nonpositive ? "1" : "0", rdm.validity_warning ? "1" : "0", field(r.note)});
}

inline void run_sensitivity(const RunConfig& cfg, CsvWriter& out, Failures& failures)
{
    const auto grid = cfg.grid_values();
    out.row({"T", "dtheta_dT", "dtheta_dT_half", "halving_change", "note"});
    std::vector<Sensitivity> res(grid.size());
    std::vector<std::string> notes(grid.size());
    blocked(
        grid.size(), cfg.workers,
        [&](std::size_t i) {
            try {
                res[i] = sensitivity(cfg.model, grid[i], 0.0, cfg.quad);
            } catch (const std::exception& e) {
                const double nan = std::numeric_limits<double>::quiet_NaN();
                res[i] = {grid[i], nan, nan, nan, nan};
                notes[i] = e.what();
            }
        },
        [&](std::size_t i) {
            out.row({fmt(grid[i]), fmt(res[i].dtheta_dT), fmt(res[i].dtheta_dT_half), fmt(res[i].halving_change),
                     field(notes[i])});
            if (!notes[i].empty()) {
                failures.add("T=" + fmt(grid[i]), notes[i]);
            }
        });
}

inline void run_purity(const RunConfig& cfg, CsvWriter& out, Failures& failures)
{
    const auto grid = cfg.grid_values();
    out.row({"gamma", "lambda2", "rho11", "rho22", "re_rho12", "provenance", "note"});
    std::vector<SweepRow> rows(grid.size());
    blocked(
        grid.size(), cfg.workers,
        [&](std::size_t i) {
            ModelParams p = cfg.model;
            p.bath.gamma = grid[i];
            rows[i] = analytic_row(p, cfg.quad);
        },
        [&](std::size_t i) {
            const auto& r = rows[i];
            out.row({fmt(grid[i]), fmt(r.lambda2), fmt(r.rho11), fmt(r.rho22), fmt(r.rho12),
                     std::string(to_string(r.provenance)), field(r.failed ? r.note : std::string())});
            if (r.failed) {
                failures.add("gamma=" + fmt(grid[i]), r.note);
            }
        });
}

inline oracles::BathSource bath_source(const RunConfig& cfg, const BathParams& bath)
{
    if (!cfg.modes.empty()) {
        return cfg.modes;
    }
    if (cfg.discretize > 0) {
        return oracles::discretize_bath(bath, cfg.discretize);
    }
    return oracles::BathSource(bath, cfg.quad);
}

// Standard error of an angle from the spread of the per-chain RDMs.
inline std::pair<double, double> angle_errors(const oracles::OracleEstimate& est, const SystemParams& sys)
{
    std::vector<double> s;
    std::vector<double> sb;
    for (const auto& m : est.chain_means) {
        try {
            const AngleReport a = angles(RDM{m}, sys);
            s.push_back(a.theta_S);
            sb.push_back(a.theta_SB);
        } catch (const DegenerateBasis&) {
        }
    }
    auto se = [](const std::vector<double>& v) {
        if (v.size() < 2) {
            return std::numeric_limits<double>::quiet_NaN();
        }
        double m = 0.0;
        for (double x : v) m += x;
        m /= static_cast<double>(v.size());
        double ss = 0.0;
        for (double x : v) ss += (x - m) * (x - m);
        return std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
    };
    return {se(s), se(sb)};
}

inline void run_pimc(const RunConfig& cfg, CsvWriter& out, Failures& failures)
{
    std::vector<double> gammas = cfg.grid ? cfg.grid_values() : std::vector<double>{cfg.model.bath.gamma};
    if (cfg.grid && (!cfg.modes.empty())) {
        throw ConfigError("pimc: --grid sweeps gamma and cannot be combined with --mode");
    }
    out.row({"gamma", "theta_S", "theta_SB", "rho11", "rho22", "re_rho12", "lambda2", "provenance", "stderr_rho11",
             "stderr_rho22", "stderr_rho12", "stderr_theta_S", "stderr_theta_SB", "acceptance", "autocorr_time",
             "chain_chi2", "slices", "note"});
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        ModelParams p = cfg.model;
        p.bath.gamma = gammas[i];
        oracles::PimcConfig pc = cfg.pimc;
        if (!pc.dump_path.empty() && gammas.size() > 1) {
            pc.dump_path += "." + std::to_string(i);
        }
        try {
            const auto est = oracles::pimc_rdm(p.system, bath_source(cfg, p.bath), p.thermo, pc);
            const SweepRow r = row_from_rdm(est.rdm_mean, p);
            const auto [es, esb] = angle_errors(est, p.system);
            out.row({fmt(gammas[i]), fmt(r.theta_S), fmt(r.theta_SB), fmt(r.rho11), fmt(r.rho22), fmt(r.rho12),
                     fmt(r.lambda2), std::string(to_string(r.provenance)), fmt(est.std_error.rho11),
                     fmt(est.std_error.rho22), fmt(est.std_error.rho12), fmt(es), fmt(esb), fmt(est.acceptance_rate),
                     fmt(est.autocorr_time), fmt(est.chain_chi2), fmt(est.slices), field(r.note)});
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            const std::string nan = "nan";
            std::vector<std::string> cells(17, nan);
            cells[0] = fmt(gammas[i]);
            cells[7] = std::string(to_string(Provenance::PIMC));
            cells.push_back(field(e.what()));
            out.row(cells);
            failures.add("gamma=" + fmt(gammas[i]), e.what());
        }
    }
}

inline void run_ed(const RunConfig& cfg, CsvWriter& out)
{
    const std::vector<BathMode> modes =
        cfg.modes.empty() ? oracles::discretize_bath(cfg.model.bath, cfg.discretize) : cfg.modes;
    const auto res = oracles::ed_solve(cfg.model.system, modes, cfg.model.thermo,
                                       oracles::EdConfig{cfg.n_max, cfg.max_dimension});
    const SweepRow r = row_from_rdm(res.rdm, cfg.model);
    std::vector<std::string> header{"theta_S", "theta_SB", "rho11",     "rho22",         "re_rho12",
                                    "lambda2", "provenance", "dimension", "cutoff_warning"};
    std::vector<std::string> cells{fmt(r.theta_S), fmt(r.theta_SB), fmt(r.rho11), fmt(r.rho22), fmt(r.rho12),
                                   fmt(r.lambda2), std::string(to_string(r.provenance)), fmt(res.dimension),
                                   res.cutoff_warning ? "1" : "0"};
    for (std::size_t k = 0; k < modes.size(); ++k) {
        header.push_back("n_" + std::to_string(k + 1));
        cells.push_back(fmt(res.occupations[k]));
    }
    header.push_back("note");
    cells.push_back(field(r.note));
    out.row(header);
    out.row(cells);
    if (res.cutoff_warning) {
        std::cerr << "warning: Fock cutoff n_max = " << cfg.n_max
                  << " holds more than 1e-8 thermal weight; raise --n-max\n";
    }
}

// Reference (analytic, or ED when explicit modes are given) against PIMC at one point.
inline void run_compare(const RunConfig& cfg, CsvWriter& out)
{
    const bool discrete = !cfg.modes.empty() || cfg.discretize > 0;
    RDM ref;
    if (discrete) {
        const std::vector<BathMode> modes =
            cfg.modes.empty() ? oracles::discretize_bath(cfg.model.bath, cfg.discretize) : cfg.modes;
        ref = oracles::ed_solve(cfg.model.system, modes, cfg.model.thermo,
                                oracles::EdConfig{cfg.n_max, cfg.max_dimension})
                  .rdm;
    } else {
        ref = assemble_rdm(cfg.model, cfg.quad);
    }
    const auto est = oracles::pimc_rdm(cfg.model.system, bath_source(cfg, cfg.model.bath), cfg.model.thermo, cfg.pimc);
    const SweepRow a = row_from_rdm(ref, cfg.model);
    const SweepRow b = row_from_rdm(est.rdm_mean, cfg.model);
    const auto [es, esb] = angle_errors(est, cfg.model.system);

    out.row({"quantity", "reference", "reference_provenance", "pimc", "stderr", "abs_diff", "z", "within_3sigma"});
    auto line = [&](const std::string& name, double x, double y, double se) {
        const double d = std::abs(x - y);
        out.row({name, fmt(x), std::string(to_string(ref.provenance)), fmt(y), fmt(se), fmt(d), fmt(d / se),
                 d < 3.0 * se ? "1" : "0"});
    };
    line("rho11", a.rho11, b.rho11, est.std_error.rho11);
    line("rho22", a.rho22, b.rho22, est.std_error.rho22);
    line("re_rho12", a.rho12, b.rho12, est.std_error.rho12);
    line("theta_S", a.theta_S, b.theta_S, es);
    line("theta_SB", a.theta_SB, b.theta_SB, esb);
}

inline void write_sidecar(const CsvWriter& out, const std::vector<std::string>& messages)
{
    if (!out.to_file()) {
        return;
    }
    std::ofstream err(out.path() + ".err");
    for (const auto& m : messages) {
        err << m << '\n';
    }
}

}  // namespace detail

// 0: success, 1: computational error (partial CSV kept, messages in <output>.err), 2: configuration error.
inline int run(const RunConfig& cfg)
{
    std::unique_ptr<CsvWriter> out;
    try {
        out = std::make_unique<CsvWriter>(cfg.output);
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
    out->comment(std::string("sbrdm ") + version);
    out->comment("command = " + to_string(cfg.command));
    for (const auto& line : cfg.preamble) {
        out->comment(line);
    }

    detail::Failures failures;
    try {
        switch (cfg.command) {
        case Command::Rdm: detail::run_rdm(cfg, *out); break;
        case Command::SweepGamma:
        case Command::SweepTemp: detail::run_sweep(cfg, *out, failures); break;
        case Command::Sensitivity: detail::run_sensitivity(cfg, *out, failures); break;
        case Command::Purity: detail::run_purity(cfg, *out, failures); break;
        case Command::Pimc: detail::run_pimc(cfg, *out, failures); break;
        case Command::Ed: detail::run_ed(cfg, *out); break;
        case Command::Compare: detail::run_compare(cfg, *out); break;
        }
    } catch (const ConfigError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        failures.add(to_string(cfg.command), e.what());
    }
    if (failures.messages.empty()) {
        return 0;
    }
    for (const auto& m : failures.messages) {
        std::cerr << "error: " << m << '\n';
    }
    detail::write_sidecar(*out, failures.messages);
    return 1;
}

inline int main_entry(std::vector<std::string> args)
{
    ParseOutcome parsed = parse_config(std::move(args));
    if (!parsed.config) {
        (parsed.exit_code == 0 ? std::cout : std::cerr) << parsed.message << '\n';
        return parsed.exit_code;
    }
    return run(*parsed.config);
}

}  // namespace sbrdm::cli
