#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "sbrdm/errors.hpp"
#include "sbrdm/numerics/quadrature.hpp"
#include "sbrdm/numerics/special_functions.hpp"

// Units: hbar = k_B = 1 and energies are quoted in units of the bare tunneling Delta.
namespace sbrdm {

// H_S = (epsilon/2) sigma_z + (delta/2) sigma_x
struct SystemParams {
    double epsilon = 0.5;
    double delta = 1.0;

    void validate() const
    {
        if (!std::isfinite(epsilon)) {
            throw DomainError("SystemParams: epsilon must be finite");
        }
        if (!(delta > 0.0) || !std::isfinite(delta)) {
            throw DomainError("SystemParams: delta must be finite and > 0");
        }
    }
};

enum class SpectralKind { SuperOhmic, Ohmic };

inline std::string_view to_string(SpectralKind kind)
{
    return kind == SpectralKind::SuperOhmic ? "superohmic" : "ohmic";
}

// J(w) = gamma * w^3 * exp(-w/omega_c)  (SuperOhmic)
// J(w) = gamma * w   * exp(-w/omega_c)  (Ohmic)
struct BathParams {
    SpectralKind kind = SpectralKind::SuperOhmic;
    double gamma = 0.0;
    double omega_c = 5.0;

    void validate() const
    {
        if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
            throw DomainError("BathParams: gamma must be finite and >= 0");
        }
        if (!(omega_c > 0.0) || !std::isfinite(omega_c)) {
            throw DomainError("BathParams: omega_c must be finite and > 0");
        }
    }
};

struct Thermo {
    double beta = 1.0;

    double temperature() const { return 1.0 / beta; }
    static Thermo from_temperature(double t) { return {1.0 / t}; }

    void validate() const
    {
        if (!(beta > 0.0) || !std::isfinite(beta)) {
            throw DomainError("Thermo: beta must be finite and > 0");
        }
    }
};

// One harmonic mode of a discretized bath, H_B term omega * b^dag b,
// coupling g * sigma_z (b^dag + b).
struct BathMode {
    double omega = 1.0;
    double g = 0.0;
};

struct ModelParams {
    SystemParams system;
    BathParams bath;
    Thermo thermo;

    void validate() const
    {
        system.validate();
        bath.validate();
        thermo.validate();
    }
};

inline double spectral_density(double omega, const BathParams& bath)
{
    if (!(omega >= 0.0)) {
        throw DomainError("spectral_density: omega must be >= 0");
    }
    const double cutoff = std::exp(-omega / bath.omega_c);
    switch (bath.kind) {
    case SpectralKind::SuperOhmic:
        return bath.gamma * omega * omega * omega * cutoff;
    case SpectralKind::Ohmic:
        return bath.gamma * omega * cutoff;
    }
    return 0.0;
}

namespace detail {

inline void require_super_ohmic(const BathParams& bath, std::string_view op)
{
    if (bath.kind == SpectralKind::Ohmic) {
        throw DivergentRenormalization(std::string(op) +
                                       ": the renormalization integral int J(w)/w^2 coth(beta w/2) dw diverges "
                                       "at w -> 0 for an Ohmic bath; use the PIMC oracle instead");
    }
}

// J(w)/w^2 for the SuperOhmic family.
inline double j_over_w2(double w, const BathParams& bath)
{
    return bath.gamma * w * std::exp(-w / bath.omega_c);
}

// cosh(a w) / sinh(b w) for |a| <= b, w > 0.
inline double cosh_over_sinh(double a, double b, double w)
{
    const double aa = std::abs(a);
    return std::exp((aa - b) * w) * (1.0 + std::exp(-2.0 * aa * w)) / (-std::expm1(-2.0 * b * w));
}

}  // namespace detail

// ln R = -(2 gamma / (pi beta^2)) * (2 psi'(1/(beta omega_c)) - omega_c^2 beta^2)
inline double log_renormalization(const BathParams& bath, const Thermo& thermo)
{
    bath.validate();
    thermo.validate();
    detail::require_super_ohmic(bath, "renormalization_R");
    if (bath.gamma == 0.0) {
        return 0.0;
    }
    const double beta = thermo.beta;
    const double x = 1.0 / (beta * bath.omega_c);
    const double bracket = 2.0 * numerics::trigamma(x) - bath.omega_c * bath.omega_c * beta * beta;
    return -(2.0 * bath.gamma / (std::numbers::pi * beta * beta)) * bracket;
}

// Tunneling renormalization R = Delta_R / Delta, in (0, 1].
inline double renormalization_R(const BathParams& bath, const Thermo& thermo)
{
    return std::exp(log_renormalization(bath, thermo));
}

// phi(tau) = 4 int_0^inf (dw/pi) J(w)/w^2 cosh[(beta/2 - tau) w] / sinh(beta w/2)
inline double phi(double tau, const BathParams& bath, const Thermo& thermo,
                  const numerics::QuadratureSpec& spec = {})
{
    bath.validate();
    thermo.validate();
    detail::require_super_ohmic(bath, "phi");
    const double beta = thermo.beta;
    if (!(tau >= 0.0 && tau <= beta)) {
        throw DomainError("phi: tau must lie in [0, beta]");
    }
    if (bath.gamma == 0.0) {
        return 0.0;
    }
    const double a = 0.5 * beta - tau;
    const double b = 0.5 * beta;
    auto integrand = [&](double w) {
        if (w <= 0.0) {
            return 0.0;
        }
        return detail::j_over_w2(w, bath) * detail::cosh_over_sinh(a, b, w);
    };
    const auto res = numerics::integrate_semi_infinite(integrand, spec, bath.omega_c);
    return 4.0 / std::numbers::pi * res.value;
}

// kappa = 4 int_0^inf (dw/pi) J(w)/w = (8 gamma / pi) omega_c^3
inline double kappa(const BathParams& bath)
{
    bath.validate();
    if (bath.kind != SpectralKind::SuperOhmic) {
        throw UnsupportedBath("kappa: the high-temperature expansion is only available for the SuperOhmic bath");
    }
    return 8.0 * bath.gamma / std::numbers::pi * bath.omega_c * bath.omega_c * bath.omega_c;
}

}  // namespace sbrdm
