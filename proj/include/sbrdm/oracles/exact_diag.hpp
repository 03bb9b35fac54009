#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sbrdm/errors.hpp"
#include "sbrdm/model.hpp"
#include "sbrdm/polaron.hpp"

// Exact diagonalization of the bare Hamiltonian with a few truncated modes.
namespace sbrdm::oracles {

struct EdConfig {
    std::size_t n_max = 20;              // highest Fock level kept per mode
    std::size_t max_dimension = 20000;
    double cutoff_threshold = 1e-8;      // warn when the top level holds more thermal weight
};

struct EdResult {
    RDM rdm;
    std::vector<double> occupations;      // <b_k^dag b_k>
    std::vector<double> top_level_weight; // thermal weight of level n_max, per mode
    bool cutoff_warning = false;
    std::size_t dimension = 0;
};

inline EdResult ed_solve(const SystemParams& sys, const std::vector<BathMode>& modes, const Thermo& thermo,
                         const EdConfig& cfg = {})
{
    sys.validate();
    thermo.validate();
    for (const auto& m : modes) {
        if (!(m.omega > 0.0) || !std::isfinite(m.g)) {
            throw DomainError("ed_solve: modes need omega > 0 and finite g");
        }
    }
    const std::size_t levels = cfg.n_max + 1;
    double bath_dim = 1.0;
    for (std::size_t k = 0; k < modes.size(); ++k) {
        bath_dim *= static_cast<double>(levels);
    }
    if (2.0 * bath_dim > static_cast<double>(cfg.max_dimension)) {
        throw ConfigError("ed_solve: Hilbert space dimension " + std::to_string(2.0 * bath_dim) +
                          " exceeds the cap " + std::to_string(cfg.max_dimension));
    }
    const auto B = static_cast<Eigen::Index>(bath_dim);
    const Eigen::Index dim = 2 * B;

    // mixed-radix occupation table, mode 0 fastest
    std::vector<std::vector<int>> occ(static_cast<std::size_t>(B), std::vector<int>(modes.size()));
    for (Eigen::Index b = 0; b < B; ++b) {
        auto r = static_cast<std::size_t>(b);
        for (std::size_t k = 0; k < modes.size(); ++k) {
            occ[static_cast<std::size_t>(b)][k] = static_cast<int>(r % levels);
            r /= levels;
        }
    }
    std::vector<Eigen::Index> stride(modes.size(), 1);
    for (std::size_t k = 1; k < modes.size(); ++k) {
        stride[k] = stride[k - 1] * static_cast<Eigen::Index>(levels);
    }

    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
    for (int spin = 0; spin < 2; ++spin) {
        const double sz = spin == 0 ? 1.0 : -1.0;
        for (Eigen::Index b = 0; b < B; ++b) {
            const Eigen::Index i = spin * B + b;
            double e = 0.5 * sz * sys.epsilon;
            const auto& n = occ[static_cast<std::size_t>(b)];
            for (std::size_t k = 0; k < modes.size(); ++k) {
                e += modes[k].omega * n[k];
                if (n[k] < static_cast<int>(cfg.n_max)) {
                    const Eigen::Index j = i + stride[k];
                    const double v = sz * modes[k].g * std::sqrt(static_cast<double>(n[k] + 1));
                    H(i, j) = v;
                    H(j, i) = v;
                }
            }
            H(i, i) = e;
        }
    }
    for (Eigen::Index b = 0; b < B; ++b) {
        H(b, B + b) = 0.5 * sys.delta;
        H(B + b, b) = 0.5 * sys.delta;
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    if (es.info() != Eigen::Success) {
        throw ConvergenceError("ed_solve: eigensolver failed", 0.0, 0.0);
    }
    const Eigen::VectorXd& E = es.eigenvalues();
    const Eigen::MatrixXd& V = es.eigenvectors();
    Eigen::VectorXd p = (-thermo.beta * (E.array() - E(0))).exp();
    p /= p.sum();

    // thermal weight of each basis state
    Eigen::VectorXd basis_weight = V.array().square().matrix() * p;
    double r11 = 0.0;
    double r12 = 0.0;
    for (Eigen::Index b = 0; b < B; ++b) {
        r11 += basis_weight(b);
    }
    // rho_12 = sum_i p_i sum_b V(up b, i) V(down b, i)
    Eigen::VectorXd overlap = (V.topRows(B).array() * V.bottomRows(B).array()).colwise().sum().transpose();
    r12 = overlap.dot(p);

    EdResult res;
    res.dimension = static_cast<std::size_t>(dim);
    res.occupations.assign(modes.size(), 0.0);
    res.top_level_weight.assign(modes.size(), 0.0);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const auto& n = occ[static_cast<std::size_t>(i % B)];
        for (std::size_t k = 0; k < modes.size(); ++k) {
            res.occupations[k] += basis_weight(i) * n[k];
            if (n[k] == static_cast<int>(cfg.n_max)) {
                res.top_level_weight[k] += basis_weight(i);
            }
        }
    }
    for (double w : res.top_level_weight) {
        if (w > cfg.cutoff_threshold) {
            res.cutoff_warning = true;
        }
    }
    res.rdm.matrix = {r11, 1.0 - r11, cplx(r12, 0.0)};
    res.rdm.provenance = Provenance::ED;
    res.rdm.nonpositive = numerics::eig2(res.rdm.matrix).lambda_minus < 0.0;
    res.rdm.validity_warning = res.cutoff_warning;
    return res;
}

inline RDM ed_rdm(const SystemParams& sys, const std::vector<BathMode>& modes, const Thermo& thermo,
                  std::size_t n_max = 20)
{
    return ed_solve(sys, modes, thermo, EdConfig{n_max}).rdm;
}

}  // namespace sbrdm::oracles
