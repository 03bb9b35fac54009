#pragma once

#include <cmath>

#include "sbrdm/errors.hpp"

namespace sbrdm::numerics {

// Trigamma function psi'(x) for x > 0. The argument is shifted up with
// psi'(x) = psi'(x + 1) + 1/x^2 until x >= 8, where the asymptotic
// Bernoulli series is accurate to better than 1e-14 relative.
inline double trigamma(double x)
{
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("trigamma: argument must be finite and > 0");
    }
    double shift = 0.0;
    while (x < 8.0) {
        shift += 1.0 / (x * x);
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // B_{2k} / x^{2k+1}, k = 1..7
    double series =
        inv2 * (1.0 / 6.0 +
        inv2 * (-1.0 / 30.0 +
        inv2 * (1.0 / 42.0 +
        inv2 * (-1.0 / 30.0 +
        inv2 * (5.0 / 66.0 +
        inv2 * (-691.0 / 2730.0 +
        inv2 * (7.0 / 6.0)))))));
    return shift + inv + 0.5 * inv2 + inv * series;
}

// e^x * (e^z - 1) / z, continuous through z = 0 and free of intermediate
// overflow as long as max(x, x + z) is representable.
inline double exp_times_exprel(double x, double z)
{
    if (z == 0.0) {
        return std::exp(x);
    }
    if (std::abs(z) < 1.0) {
        return std::exp(x) * std::expm1(z) / z;
    }
    return (std::exp(x + z) - std::exp(x)) / z;
}

// tanh(x) / x with the removable singularity filled in.
inline double tanhc(double x)
{
    if (std::abs(x) < 1e-8) {
        return 1.0 - x * x / 3.0;
    }
    return std::tanh(x) / x;
}

// sech(a) * cosh(b) for |b| <= a, evaluated without overflow for large a.
inline double sech_cosh(double a, double b)
{
    const double ab = std::abs(b);
    return (std::exp(ab - a) + std::exp(-ab - a)) / (1.0 + std::exp(-2.0 * a));
}

// sech(a) * sinh(b) for |b| <= a.
inline double sech_sinh(double a, double b)
{
    const double ab = std::abs(b);
    const double v = (std::exp(ab - a) - std::exp(-ab - a)) / (1.0 + std::exp(-2.0 * a));
    return b < 0.0 ? -v : v;
}

}  // namespace sbrdm::numerics
