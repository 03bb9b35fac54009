#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "sbrdm/errors.hpp"
#include "sbrdm/model.hpp"
#include "sbrdm/numerics/quadrature.hpp"

// Imaginary-time bath kernel seen by a sigma_z path after the bath is traced out:
//   L(tau) = <X(tau) X(0)>_B,  X = sum_k g_k (b_k^dag + b_k)
//          = (1/pi) int_0^inf dw J(w) cosh[w (beta/2 - tau)] / sinh(beta w / 2)
namespace sbrdm::oracles {

namespace detail {

inline void check_tau(double tau, double beta, const char* op)
{
    if (!(tau >= 0.0 && tau <= beta)) {
        throw DomainError(std::string(op) + ": tau must lie in [0, beta]");
    }
}

// sinh(p w) sinh(q w) / sinh((p + q) w), p, q >= 0, w > 0
inline double sinh_ratio(double p, double q, double w)
{
    return 0.5 * std::expm1(-2.0 * p * w) * std::expm1(-2.0 * q * w) / (-std::expm1(-2.0 * (p + q) * w));
}

}  // namespace detail

inline double influence_kernel(double tau, const BathParams& bath, const Thermo& thermo,
                               const numerics::QuadratureSpec& spec = {})
{
    bath.validate();
    thermo.validate();
    detail::check_tau(tau, thermo.beta, "influence_kernel");
    if (bath.gamma == 0.0) {
        return 0.0;
    }
    const double a = 0.5 * thermo.beta - tau;
    const double b = 0.5 * thermo.beta;
    auto integrand = [&](double w) {
        if (w <= 0.0) {
            return 0.0;
        }
        return spectral_density(w, bath) * sbrdm::detail::cosh_over_sinh(a, b, w);
    };
    return numerics::integrate_semi_infinite(integrand, spec, bath.omega_c).value / std::numbers::pi;
}

inline double influence_kernel(double tau, const std::vector<BathMode>& modes, const Thermo& thermo)
{
    thermo.validate();
    detail::check_tau(tau, thermo.beta, "influence_kernel");
    double sum = 0.0;
    for (const auto& m : modes) {
        sum += m.g * m.g * sbrdm::detail::cosh_over_sinh(0.5 * thermo.beta - tau, 0.5 * thermo.beta, m.omega);
    }
    return sum;
}

// Second antiderivative of L with F(0) = 0 and F'' = L:
//   F(tau) = -(2/pi) int dw J(w)/w^2 sinh[(beta - tau) w/2] sinh(tau w/2) / sinh(beta w/2).
// Finite for both spectral families (F = (phi(tau) - phi(0)) / 4 when phi exists).
inline double influence_antiderivative(double tau, const BathParams& bath, const Thermo& thermo,
                                       const numerics::QuadratureSpec& spec = {})
{
    bath.validate();
    thermo.validate();
    detail::check_tau(tau, thermo.beta, "influence_antiderivative");
    if (bath.gamma == 0.0 || tau == 0.0) {
        return 0.0;
    }
    const double p = 0.5 * (thermo.beta - tau);
    const double q = 0.5 * tau;
    auto integrand = [&](double w) {
        if (w <= 0.0) {
            return 0.0;
        }
        return spectral_density(w, bath) / (w * w) * detail::sinh_ratio(p, q, w);
    };
    return -2.0 / std::numbers::pi * numerics::integrate_semi_infinite(integrand, spec, bath.omega_c).value;
}

inline double influence_antiderivative(double tau, const std::vector<BathMode>& modes, const Thermo& thermo)
{
    thermo.validate();
    detail::check_tau(tau, thermo.beta, "influence_antiderivative");
    double sum = 0.0;
    for (const auto& m : modes) {
        sum += m.g * m.g / (m.omega * m.omega) * detail::sinh_ratio(0.5 * (thermo.beta - tau), 0.5 * tau, m.omega);
    }
    return -2.0 * sum;
}

// Either a continuous spectral density or an explicit set of modes.
class BathSource {
public:
    BathSource(const BathParams& bath, const numerics::QuadratureSpec& spec = {})  // NOLINT(google-explicit-constructor)
        : source_(bath), spec_(spec) {}
    BathSource(std::vector<BathMode> modes)  // NOLINT(google-explicit-constructor)
        : source_(std::move(modes)) {}

    double kernel(double tau, const Thermo& thermo) const
    {
        if (const auto* bath = std::get_if<BathParams>(&source_)) {
            return influence_kernel(tau, *bath, thermo, spec_);
        }
        return influence_kernel(tau, std::get<std::vector<BathMode>>(source_), thermo);
    }

    double antiderivative(double tau, const Thermo& thermo) const
    {
        if (const auto* bath = std::get_if<BathParams>(&source_)) {
            return influence_antiderivative(tau, *bath, thermo, spec_);
        }
        return influence_antiderivative(tau, std::get<std::vector<BathMode>>(source_), thermo);
    }

private:
    std::variant<BathParams, std::vector<BathMode>> source_;
    numerics::QuadratureSpec spec_;
};

}  // namespace sbrdm::oracles
