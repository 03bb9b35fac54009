#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "sbrdm/errors.hpp"
#include "sbrdm/model.hpp"
#include "sbrdm/oracles/influence.hpp"
#include "sbrdm/parallel.hpp"
#include "sbrdm/polaron.hpp"

// Imaginary-time path-integral Monte Carlo for the spin-boson RDM.
//
// The bath is integrated out exactly. A spin path s_0 .. s_P (s_j = +-1 on the
// imaginary-time grid tau_j = j beta / P) has weight
//
//   W = prod_j <s_{j+1}| e^{-dtau H_S} |s_j>  *  exp( 1/2 sum_{j != k} s_j s_k eta_jk )
//
// where eta_jk is the kernel L integrated over the cells of sites j and k (end
// cells are half width). Endpoints are free, so the chain visits all four
// (s_P, s_0) sectors and <a| rho |b> follows from sector frequencies.
//
// Off-diagonal Trotter factors are negative, but the kink parity is fixed by
// the endpoint sector, so every path in a sector carries the same sign:
// + for (a, a), - for (a, -a). Sampling |W| is therefore exact.
namespace sbrdm::oracles {

struct PimcConfig {
    std::size_t slices = 64;        // Trotter number P (raised automatically to respect max_trotter_step)
    std::size_t sweeps = 100000;    // sweeps per chain, including burn-in
    std::size_t burn_in = 10000;
    std::size_t thinning = 1;
    std::uint64_t seed = 20130101;
    std::size_t chains = 8;
    std::size_t workers = 0;        // 0: default_workers()
    double max_trotter_step = 0.05; // beta * Delta / P
    double max_beta_delta = 20.0;   // refuse colder runs
    double min_acceptance = 0.01;
    double max_chain_chi2 = 5.0;    // reduced chi^2 of chain means against their batch errors
    std::string dump_path;          // raw sector/log-weight stream; empty disables

    void validate() const
    {
        if (slices < 16) {
            throw ConfigError("PimcConfig: slices must be >= 16");
        }
        if (sweeps <= burn_in) {
            throw ConfigError("PimcConfig: sweeps must exceed burn_in");
        }
        if (thinning == 0) {
            throw ConfigError("PimcConfig: thinning must be >= 1");
        }
        if (chains < 2) {
            throw ConfigError("PimcConfig: at least two chains are needed for error bars");
        }
        if (!(max_trotter_step > 0.0)) {
            throw ConfigError("PimcConfig: max_trotter_step must be > 0");
        }
    }
};

struct ElementErrors {
    double rho11 = 0.0;
    double rho22 = 0.0;
    double rho12 = 0.0;
};

struct OracleEstimate {
    RDM rdm_mean;
    ElementErrors std_error;
    double acceptance_rate = 0.0;
    double autocorr_time = 0.0;  // integrated autocorrelation time of the (+,+) sector indicator, in sweeps
    double chain_chi2 = 0.0;     // reduced chi^2 of per-chain estimates
    std::size_t slices = 0;
    std::size_t measurements = 0;  // per chain
    std::vector<HermMat2> chain_means;
};

namespace detail {

inline int spin_index(int s) { return s > 0 ? 0 : 1; }

struct PimcTables {
    std::size_t sites = 0;              // P + 1
    std::vector<double> eta;            // sites x sites, zero diagonal
    std::vector<double> row_prefix;     // sites x (sites + 1): sum_{l < b} eta_jl
    std::vector<double> block_prefix;   // (sites + 1)^2: sum_{j < a, l < b} eta_jl
    std::array<std::array<double, 2>, 2> log_t{};  // log |<s'| e^{-dtau H_S} |s>|, [s'][s]

    double eta_at(std::size_t j, std::size_t k) const { return eta[j * sites + k]; }
    double row_sum(std::size_t j, std::size_t lo, std::size_t hi) const  // l in [lo, hi]
    {
        const std::size_t w = sites + 1;
        return row_prefix[j * w + hi + 1] - row_prefix[j * w + lo];
    }
    double block_sum(std::size_t lo, std::size_t hi) const  // j, l in [lo, hi]
    {
        const std::size_t w = sites + 1;
        return block_prefix[(hi + 1) * w + hi + 1] - block_prefix[lo * w + hi + 1] - block_prefix[(hi + 1) * w + lo] +
               block_prefix[lo * w + lo];
    }
};

inline PimcTables build_tables(const SystemParams& sys, const BathSource& bath, const Thermo& thermo,
                               std::size_t slices)
{
    PimcTables t;
    const std::size_t P = slices;
    t.sites = P + 1;
    const double h = thermo.beta / static_cast<double>(P);

    // F on the half-cell grid: all cell-edge separations are multiples of h/2
    std::vector<double> f(2 * P + 1);
    for (std::size_t m = 0; m <= 2 * P; ++m) {
        const double tau = std::min(thermo.beta, 0.5 * h * static_cast<double>(m));
        f[m] = bath.antiderivative(tau, thermo);
    }
    auto lower = [P](std::size_t j) { return j == 0 ? std::size_t{0} : 2 * j - 1; };
    auto upper = [P](std::size_t j) { return j == P ? 2 * P : 2 * j + 1; };

    t.eta.assign(t.sites * t.sites, 0.0);
    for (std::size_t j = 0; j < t.sites; ++j) {
        for (std::size_t k = j + 1; k < t.sites; ++k) {
            // int_{cell k} int_{cell j} L(tau - tau'), cell k later than cell j
            const double v = f[upper(k) - lower(j)] - f[lower(k) - lower(j)] - f[upper(k) - upper(j)] +
                             f[lower(k) - upper(j)];
            t.eta[j * t.sites + k] = v;
            t.eta[k * t.sites + j] = v;
        }
    }

    const std::size_t w = t.sites + 1;
    t.row_prefix.assign(t.sites * w, 0.0);
    for (std::size_t j = 0; j < t.sites; ++j) {
        for (std::size_t l = 0; l < t.sites; ++l) {
            t.row_prefix[j * w + l + 1] = t.row_prefix[j * w + l] + t.eta_at(j, l);
        }
    }
    t.block_prefix.assign(w * w, 0.0);
    for (std::size_t a = 1; a < w; ++a) {
        for (std::size_t b = 1; b < w; ++b) {
            t.block_prefix[a * w + b] = t.block_prefix[(a - 1) * w + b] + t.block_prefix[a * w + b - 1] -
                                        t.block_prefix[(a - 1) * w + b - 1] + t.eta_at(a - 1, b - 1);
        }
    }

    const double eta0 = std::hypot(sys.epsilon, sys.delta);
    const double x = 0.5 * h * eta0;
    const double ch = std::cosh(x);
    const double sh = std::sinh(x);
    t.log_t[0][0] = std::log(ch - sys.epsilon / eta0 * sh);
    t.log_t[1][1] = std::log(ch + sys.epsilon / eta0 * sh);
    t.log_t[0][1] = std::log(sys.delta / eta0 * sh);
    t.log_t[1][0] = t.log_t[0][1];
    return t;
}

struct ChainResult {
    std::array<std::uint64_t, 4> counts{};  // sectors (+,+), (+,-), (-,+), (-,-) as (s_P, s_0)
    std::vector<std::uint8_t> sectors;      // measurement series
    std::vector<double> log_weights;        // only filled when dumping
    std::uint64_t attempted = 0;
    std::uint64_t accepted = 0;
};

class PimcChain {
public:
    PimcChain(const PimcTables& tables, std::uint64_t seed, std::uint64_t stream)
        : t_(tables)
        , P_(tables.sites - 1)
        , spins_(tables.sites, 1)
        , field_(tables.sites, 0.0)
    {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        rng_.seed(seq);
        npairs_ = static_cast<double>(P_) * static_cast<double>(P_ - 1) / 2.0;
        refresh();
    }

    void sweep()
    {
        for (std::size_t n = 0; n <= P_; ++n) {
            attempt();
        }
    }

    int sector() const { return 2 * spin_index(spins_[P_]) + spin_index(spins_[0]); }
    double log_weight() const { return log_w_; }
    std::uint64_t attempted() const { return attempted_; }
    std::uint64_t accepted() const { return accepted_; }

    // Recompute the field and log-weight from scratch.
    void refresh()
    {
        for (std::size_t j = 0; j <= P_; ++j) {
            double hj = 0.0;
            for (std::size_t l = 0; l <= P_; ++l) {
                hj += t_.eta_at(j, l) * spins_[l];
            }
            field_[j] = hj;
        }
        double lw = 0.0;
        for (std::size_t b = 0; b < P_; ++b) {
            lw += t_.log_t[spin_index(spins_[b + 1])][spin_index(spins_[b])];
        }
        for (std::size_t j = 0; j <= P_; ++j) {
            lw += 0.5 * spins_[j] * field_[j];
        }
        log_w_ = lw;
        rebuild_kinks();
    }

private:
    double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
    std::size_t below(std::size_t n)
    {
        return static_cast<std::size_t>((static_cast<unsigned __int128>(rng_()) * n) >> 64);
    }

    void rebuild_kinks()
    {
        kinks_.clear();
        for (std::size_t b = 0; b < P_; ++b) {
            if (spins_[b] != spins_[b + 1]) {
                kinks_.push_back(b);
            }
        }
    }

    // Log-weight change from flipping sites [i, k], which all carry the same spin.
    double segment_delta(std::size_t i, std::size_t k) const
    {
        const int c = spins_[i];
        const int ci = spin_index(c);
        const int ni = 1 - ci;
        double d = 0.0;
        if (i > 0) {
            const int si = spin_index(spins_[i - 1]);
            d += t_.log_t[ni][si] - t_.log_t[ci][si];
        }
        if (k < P_) {
            const int sk = spin_index(spins_[k + 1]);
            d += t_.log_t[sk][ni] - t_.log_t[sk][ci];
        }
        d += static_cast<double>(k - i) * (t_.log_t[ni][ni] - t_.log_t[ci][ci]);
        double field_sum = 0.0;
        for (std::size_t j = i; j <= k; ++j) {
            field_sum += field_[j];
        }
        d += -2.0 * c * field_sum + 2.0 * t_.block_sum(i, k);
        return d;
    }

    void apply_segment(std::size_t i, std::size_t k, double delta)
    {
        const int c = spins_[i];
        for (std::size_t j = 0; j <= P_; ++j) {
            field_[j] -= 2.0 * c * t_.row_sum(j, i, k);
        }
        for (std::size_t j = i; j <= k; ++j) {
            spins_[j] = -c;
        }
        log_w_ += delta;
        rebuild_kinks();
    }

    void try_segment(std::size_t i, std::size_t k, double log_hastings)
    {
        const double delta = segment_delta(i, k);
        const double log_acc = delta + log_hastings;
        if (log_acc >= 0.0 || uniform() < std::exp(log_acc)) {
            apply_segment(i, k, delta);
            ++accepted_;
        }
    }

    void attempt()
    {
        ++attempted_;
        const double r = uniform();
        if (r < 0.2) {
            const std::size_t j = below(P_ + 1);
            try_segment(j, j, 0.0);
        } else if (r < 0.5) {
            slide_kink();
        } else if (r < 0.8) {
            if (uniform() < 0.5) {
                insert_pair();
            } else {
                remove_pair();
            }
        } else if (r < 0.95) {
            end_move();
        } else {
            global_flip();
        }
    }

    // Move one kink uniformly within the interval bounded by its neighbours.
    void slide_kink()
    {
        const std::size_t m = kinks_.size();
        if (m == 0) {
            return;
        }
        const std::size_t idx = below(m);
        const long b = static_cast<long>(kinks_[idx]);
        const long lo = idx > 0 ? static_cast<long>(kinks_[idx - 1]) : -1;
        const long hi = idx + 1 < m ? static_cast<long>(kinks_[idx + 1]) : static_cast<long>(P_);
        const long choices = hi - lo - 2;
        if (choices <= 0) {
            return;
        }
        long nb = lo + 1 + static_cast<long>(below(static_cast<std::size_t>(choices)));
        if (nb >= b) {
            ++nb;
        }
        if (nb > b) {
            try_segment(static_cast<std::size_t>(b + 1), static_cast<std::size_t>(nb), 0.0);
        } else {
            try_segment(static_cast<std::size_t>(nb + 1), static_cast<std::size_t>(b), 0.0);
        }
    }

    bool kink_free(std::size_t lo, std::size_t hi) const  // no kink on bonds [lo, hi]
    {
        auto it = std::lower_bound(kinks_.begin(), kinks_.end(), lo);
        return it == kinks_.end() || *it > hi;
    }

    void insert_pair()
    {
        std::size_t b1 = below(P_);
        std::size_t b2 = below(P_ - 1);
        if (b2 >= b1) {
            ++b2;
        }
        if (b1 > b2) {
            std::swap(b1, b2);
        }
        if (!kink_free(b1, b2)) {
            return;
        }
        const double log_h = std::log(npairs_) - std::log(static_cast<double>(kinks_.size() + 1));
        try_segment(b1 + 1, b2, log_h);
    }

    void remove_pair()
    {
        const std::size_t m = kinks_.size();
        if (m < 2) {
            return;
        }
        const std::size_t idx = below(m - 1);
        const double log_h = std::log(static_cast<double>(m - 1)) - std::log(npairs_);
        try_segment(kinks_[idx] + 1, kinks_[idx + 1], log_h);
    }

    // Create or remove the outermost kink by flipping the spins between it and one end of the path.
    void end_move()
    {
        const bool left = uniform() < 0.5;
        const bool insert = uniform() < 0.5;
        const double log_p = std::log(static_cast<double>(P_));
        if (insert) {
            const std::size_t b = below(P_);
            if (left) {
                if (!kink_free(0, b)) {
                    return;
                }
                try_segment(0, b, log_p);
            } else {
                if (!kink_free(b, P_ - 1)) {
                    return;
                }
                try_segment(b + 1, P_, log_p);
            }
        } else {
            if (kinks_.empty()) {
                return;
            }
            if (left) {
                try_segment(0, kinks_.front(), -log_p);
            } else {
                try_segment(kinks_.back() + 1, P_, -log_p);
            }
        }
    }

    void global_flip()
    {
        double d = 0.0;
        for (std::size_t b = 0; b < P_; ++b) {
            if (spins_[b] == spins_[b + 1]) {
                const int ci = spin_index(spins_[b]);
                d += t_.log_t[1 - ci][1 - ci] - t_.log_t[ci][ci];
            }
        }
        if (d >= 0.0 || uniform() < std::exp(d)) {
            for (auto& s : spins_) {
                s = -s;
            }
            for (auto& h : field_) {
                h = -h;
            }
            log_w_ += d;
            ++accepted_;
        }
    }

    const PimcTables& t_;
    std::size_t P_;
    std::vector<int> spins_;
    std::vector<double> field_;  // field_[j] = sum_l eta_jl s_l
    std::vector<std::size_t> kinks_;
    double log_w_ = 0.0;
    double npairs_ = 1.0;
    std::mt19937_64 rng_;
    std::uint64_t attempted_ = 0;
    std::uint64_t accepted_ = 0;
};

inline ChainResult run_chain(const PimcTables& tables, const PimcConfig& cfg, std::size_t chain_index)
{
    PimcChain chain(tables, cfg.seed, 0x9E3779B97F4A7C15ULL * (chain_index + 1));
    ChainResult out;
    const bool dump = !cfg.dump_path.empty();
    out.sectors.reserve((cfg.sweeps - cfg.burn_in) / cfg.thinning + 1);
    for (std::size_t sweep = 0; sweep < cfg.sweeps; ++sweep) {
        chain.sweep();
        if (sweep % 256 == 255) {
            chain.refresh();
        }
        if (sweep < cfg.burn_in || (sweep - cfg.burn_in) % cfg.thinning != 0) {
            continue;
        }
        const int s = chain.sector();
        ++out.counts[static_cast<std::size_t>(s)];
        out.sectors.push_back(static_cast<std::uint8_t>(s));
        if (dump) {
            out.log_weights.push_back(chain.log_weight());
        }
    }
    out.attempted = chain.attempted();
    out.accepted = chain.accepted();
    return out;
}

struct SectorEstimate {
    double rho11 = 0.0;
    double rho12 = 0.0;
    bool valid = false;
};

template <typename It>
SectorEstimate estimate_from(It first, It last)
{
    std::array<double, 4> n{};
    for (auto it = first; it != last; ++it) {
        n[*it] += 1.0;
    }
    SectorEstimate e;
    const double diag = n[0] + n[3];
    if (diag > 0.0) {
        e.rho11 = n[0] / diag;
        e.rho12 = -(n[1] + n[2]) / (2.0 * diag);
        e.valid = true;
    }
    return e;
}

inline void write_dump(const std::string& path, const std::vector<ChainResult>& chains)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot open PIMC dump file " + path);
    }
    const char magic[8] = {'S', 'B', 'R', 'D', 'M', 'P', 'I', 'M'};
    out.write(magic, sizeof magic);
    const std::uint32_t version = 1;
    const auto n_chains = static_cast<std::uint32_t>(chains.size());
    out.write(reinterpret_cast<const char*>(&version), sizeof version);
    out.write(reinterpret_cast<const char*>(&n_chains), sizeof n_chains);
    for (const auto& c : chains) {
        const auto n = static_cast<std::uint64_t>(c.sectors.size());
        out.write(reinterpret_cast<const char*>(&n), sizeof n);
        for (std::size_t i = 0; i < c.sectors.size(); ++i) {
            out.write(reinterpret_cast<const char*>(&c.sectors[i]), 1);
            out.write(reinterpret_cast<const char*>(&c.log_weights[i]), sizeof(double));
        }
    }
}

}  // namespace detail

inline std::size_t effective_slices(const SystemParams& sys, const Thermo& thermo, const PimcConfig& cfg)
{
    const auto needed = static_cast<std::size_t>(std::ceil(thermo.beta * sys.delta / cfg.max_trotter_step));
    return std::max(cfg.slices, needed);
}

inline OracleEstimate pimc_rdm(const SystemParams& sys, const BathSource& bath, const Thermo& thermo,
                               const PimcConfig& cfg)
{
    sys.validate();
    thermo.validate();
    cfg.validate();
    if (thermo.beta * sys.delta > cfg.max_beta_delta) {
        throw DomainError("pimc_rdm: beta*Delta = " + std::to_string(thermo.beta * sys.delta) +
                          " exceeds the configured bound " + std::to_string(cfg.max_beta_delta) +
                          "; path-integral sampling is only reliable when the bath temperature is not too low");
    }
    const std::size_t P = effective_slices(sys, thermo, cfg);
    const detail::PimcTables tables = detail::build_tables(sys, bath, thermo, P);

    std::vector<detail::ChainResult> chains(cfg.chains);
    parallel_for(cfg.chains, cfg.workers, [&](std::size_t i) { chains[i] = detail::run_chain(tables, cfg, i); });

    OracleEstimate est;
    est.slices = P;
    est.measurements = chains.front().sectors.size();

    std::uint64_t attempted = 0;
    std::uint64_t accepted = 0;
    std::vector<double> r11;
    std::vector<double> r12;
    std::vector<double> var11;
    std::vector<double> var12;
    double tau_sum = 0.0;
    const std::size_t n_batches = 16;
    for (const auto& c : chains) {
        attempted += c.attempted;
        accepted += c.accepted;
        const auto whole = detail::estimate_from(c.sectors.begin(), c.sectors.end());
        if (!whole.valid) {
            throw QualityError("a chain never visited a diagonal sector");
        }
        r11.push_back(whole.rho11);
        r12.push_back(whole.rho12);
        est.chain_means.push_back({whole.rho11, 1.0 - whole.rho11, cplx(whole.rho12, 0.0)});

        // batch means for the within-chain error and the autocorrelation time
        const std::size_t len = c.sectors.size() / n_batches;
        std::vector<double> b11;
        std::vector<double> b12;
        std::vector<double> bpp;
        for (std::size_t b = 0; b < n_batches && len > 0; ++b) {
            const auto first = c.sectors.begin() + static_cast<long>(b * len);
            const auto e = detail::estimate_from(first, first + static_cast<long>(len));
            if (e.valid) {
                b11.push_back(e.rho11);
                b12.push_back(e.rho12);
            }
            bpp.push_back(static_cast<double>(std::count(first, first + static_cast<long>(len), 0)) /
                          static_cast<double>(len));
        }
        auto batch_var = [](const std::vector<double>& v) {
            if (v.size() < 2) {
                return 0.0;
            }
            double m = 0.0;
            for (double x : v) m += x;
            m /= static_cast<double>(v.size());
            double s = 0.0;
            for (double x : v) s += (x - m) * (x - m);
            return s / static_cast<double>(v.size() - 1);
        };
        var11.push_back(b11.size() > 1 ? batch_var(b11) / static_cast<double>(b11.size()) : 0.0);
        var12.push_back(b12.size() > 1 ? batch_var(b12) / static_cast<double>(b12.size()) : 0.0);
        const double p = static_cast<double>(c.counts[0]) / static_cast<double>(c.sectors.size());
        const double var_x = p * (1.0 - p);
        if (var_x > 0.0 && len > 0) {
            tau_sum += static_cast<double>(len) * batch_var(bpp) / (2.0 * var_x);
        }
    }
    est.acceptance_rate = static_cast<double>(accepted) / static_cast<double>(std::max<std::uint64_t>(attempted, 1));
    est.autocorr_time = tau_sum / static_cast<double>(chains.size());

    // jackknife over the batches of every chain; steadier than the spread of a handful of chain means
    std::vector<std::array<double, 4>> blocks;
    for (const auto& c : chains) {
        const std::size_t len = c.sectors.size() / n_batches;
        for (std::size_t b = 0; b < n_batches && len > 0; ++b) {
            std::array<double, 4> n{};
            for (std::size_t k = b * len; k < (b + 1) * len; ++k) {
                n[c.sectors[k]] += 1.0;
            }
            blocks.push_back(n);
        }
    }
    std::array<double, 4> total{};
    for (const auto& n : blocks) {
        for (std::size_t k = 0; k < 4; ++k) total[k] += n[k];
    }
    auto ratio11 = [](const std::array<double, 4>& n) { return n[0] / (n[0] + n[3]); };
    auto ratio12 = [](const std::array<double, 4>& n) { return -(n[1] + n[2]) / (2.0 * (n[0] + n[3])); };
    const double m11 = ratio11(total);
    const double m12 = ratio12(total);
    double s11 = 0.0;
    double s12 = 0.0;
    for (const auto& n : blocks) {
        std::array<double, 4> rest = total;
        for (std::size_t k = 0; k < 4; ++k) rest[k] -= n[k];
        s11 += (ratio11(rest) - m11) * (ratio11(rest) - m11);
        s12 += (ratio12(rest) - m12) * (ratio12(rest) - m12);
    }
    const double nb = static_cast<double>(blocks.size());
    const double e11 = std::max(std::sqrt((nb - 1.0) / nb * s11), 1e-15);
    const double e12 = std::max(std::sqrt((nb - 1.0) / nb * s12), 1e-15);

    auto reduced_chi2 = [](const std::vector<double>& x, const std::vector<double>& var, double mean) {
        double chi2 = 0.0;
        std::size_t used = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (var[i] > 1e-30) {
                chi2 += (x[i] - mean) * (x[i] - mean) / var[i];
                ++used;
            }
        }
        return used > 1 ? chi2 / static_cast<double>(used - 1) : 0.0;
    };
    est.chain_chi2 = std::max(reduced_chi2(r11, var11, m11), reduced_chi2(r12, var12, m12));

    est.rdm_mean.matrix = {m11, 1.0 - m11, cplx(m12, 0.0)};
    est.rdm_mean.provenance = Provenance::PIMC;
    est.rdm_mean.nonpositive = numerics::eig2(est.rdm_mean.matrix).lambda_minus < 0.0;
    est.std_error = {e11, e11, e12};

    if (!cfg.dump_path.empty()) {
        detail::write_dump(cfg.dump_path, chains);
    }
    if (est.acceptance_rate < cfg.min_acceptance) {
        throw QualityError("acceptance rate " + std::to_string(est.acceptance_rate) + " below " +
                           std::to_string(cfg.min_acceptance));
    }
    if (est.chain_chi2 > cfg.max_chain_chi2) {
        throw QualityError("chain estimates do not overlap (reduced chi^2 = " + std::to_string(est.chain_chi2) +
                           ")");
    }
    return est;
}

inline OracleEstimate pimc_rdm(const ModelParams& params, const PimcConfig& cfg)
{
    params.validate();
    return pimc_rdm(params.system, BathSource(params.bath), params.thermo, cfg);
}

}  // namespace sbrdm::oracles
