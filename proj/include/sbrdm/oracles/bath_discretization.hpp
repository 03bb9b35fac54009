#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "sbrdm/errors.hpp"
#include "sbrdm/model.hpp"
#include "sbrdm/numerics/quadrature.hpp"

namespace sbrdm::oracles {

// Discrete modes with J(w) ~ pi sum_k g_k^2 delta(w - w_k): Gauss-Legendre
// nodes on u in (0, 1) mapped by w = omega_c u / (1 - u), g_k^2 = w_k J(w_k) / pi
// where w_k is the mapped quadrature weight.
inline std::vector<BathMode> discretize_bath(const BathParams& bath, std::size_t n)
{
    bath.validate();
    if (n == 0) {
        throw DomainError("discretize_bath: need at least one mode");
    }
    const auto rule = numerics::gauss_legendre(n);
    std::vector<BathMode> modes;
    modes.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double u = 0.5 * (rule.nodes[k] + 1.0);
        const double wu = 0.5 * rule.weights[k];
        const double one_minus = 1.0 - u;
        const double omega = bath.omega_c * u / one_minus;
        const double weight = wu * bath.omega_c / (one_minus * one_minus);
        const double g2 = weight * spectral_density(omega, bath) / std::numbers::pi;
        modes.push_back({omega, std::sqrt(g2)});
    }
    return modes;
}

}  // namespace sbrdm::oracles
