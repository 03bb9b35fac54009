#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "sbrdm/errors.hpp"
#include "sbrdm/model.hpp"

using namespace sbrdm;

namespace {

BathParams super(double gamma, double omega_c = 5.0) { return {SpectralKind::SuperOhmic, gamma, omega_c}; }

// Independent Kronrod quadrature of -(2/pi) int J/w^2 coth(beta w/2) dw.
double log_r_oracle(double gamma, double beta, double omega_c)
{
    auto f = [&](double w) {
        if (w == 0.0) {
            return gamma * 2.0 / beta;
        }
        return gamma * w * std::exp(-w / omega_c) / std::tanh(0.5 * beta * w);
    };
    const double inf = std::numeric_limits<double>::infinity();
    const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, inf, 15, 1e-14);
    return -2.0 / std::numbers::pi * v;
}

}  // namespace

TEST(SpectralDensity, Examples)
{
    EXPECT_EQ(spectral_density(0.0, super(0.3)), 0.0);
    EXPECT_EQ(spectral_density(0.0, {SpectralKind::Ohmic, 1.5, 5.0}), 0.0);
    EXPECT_NEAR(spectral_density(5.0, {SpectralKind::Ohmic, 1.5, 5.0}), 7.5 * std::exp(-1.0), 1e-14);
    // stationary point of w^3 e^{-w/wc} at 3 wc
    const auto b = super(0.1, 5.0);
    const double peak = spectral_density(15.0, b);
    EXPECT_GT(peak, spectral_density(15.0 - 1e-3, b));
    EXPECT_GT(peak, spectral_density(15.0 + 1e-3, b));
    EXPECT_THROW(spectral_density(-1.0, b), DomainError);
    for (double w = 0.0; w < 100.0; w += 0.37) {
        EXPECT_GE(spectral_density(w, b), 0.0);
    }
}

TEST(Params, Validation)
{
    EXPECT_THROW((SystemParams{0.5, 0.0}.validate()), DomainError);
    EXPECT_THROW((BathParams{SpectralKind::SuperOhmic, -0.1, 5.0}.validate()), DomainError);
    EXPECT_THROW((BathParams{SpectralKind::SuperOhmic, 0.1, 0.0}.validate()), DomainError);
    EXPECT_THROW((Thermo{0.0}.validate()), DomainError);
    EXPECT_NO_THROW((SystemParams{-0.5, 1.0}.validate()));
    EXPECT_DOUBLE_EQ(Thermo::from_temperature(4.0).beta, 0.25);
}

TEST(Renormalization, ZeroCouplingIsOne) { EXPECT_EQ(renormalization_R(super(0.0), Thermo{1.0}), 1.0); }

TEST(Renormalization, ClosedFormMatchesQuadrature)
{
    const double closed = log_renormalization(super(0.1), Thermo{1.0});
    EXPECT_NEAR(closed / log_r_oracle(0.1, 1.0, 5.0), 1.0, 1e-8);
    for (double beta : {0.05, 0.3, 2.0, 10.0, 50.0}) {
        EXPECT_NEAR(log_renormalization(super(0.2, 3.0), Thermo{beta}) / log_r_oracle(0.2, beta, 3.0), 1.0, 1e-8)
            << "beta=" << beta;
    }
}

TEST(Renormalization, BoundsAndMonotonicity)
{
    double prev = 1.0;
    for (double g = 0.0; g <= 1.0; g += 0.05) {
        const double r = renormalization_R(super(g), Thermo{1.0});
        EXPECT_GT(r, 0.0);
        EXPECT_LE(r, 1.0);
        EXPECT_LE(r, prev);
        prev = r;
    }
    prev = 1.0;
    for (double t = 0.05; t <= 20.0; t *= 1.3) {
        const double r = renormalization_R(super(0.1), Thermo::from_temperature(t));
        EXPECT_LE(r, prev);
        prev = r;
    }
    // exponential decay with T
    EXPECT_LT(renormalization_R(super(0.1), Thermo{1e-3}), 1e-100);
}

TEST(Renormalization, OhmicDiverges)
{
    const BathParams ohm{SpectralKind::Ohmic, 1.5, 5.0};
    EXPECT_THROW(renormalization_R(ohm, Thermo{1.0}), DivergentRenormalization);
    EXPECT_THROW(phi(0.1, ohm, Thermo{1.0}), DivergentRenormalization);
    // also at zero coupling: the analytic path never accepts the Ohmic family
    EXPECT_THROW(renormalization_R({SpectralKind::Ohmic, 0.0, 5.0}, Thermo{1.0}), DivergentRenormalization);
}

TEST(Phi, SymmetryAndEndpoint)
{
    const auto b = super(0.1);
    const Thermo th{1.0};
    EXPECT_NEAR(phi(0.3, b, th), phi(0.7, b, th), 1e-9);
    for (double tau = 0.0; tau <= 1.0; tau += 0.05) {
        EXPECT_NEAR(phi(tau, b, th), phi(1.0 - tau, b, th), 1e-9);
        EXPECT_GE(phi(tau, b, th), 0.0);
    }
    EXPECT_NEAR(phi(0.0, b, th) + 2.0 * log_renormalization(b, th), 0.0, 1e-8);
    const Thermo cold{50.0};
    EXPECT_NEAR(phi(0.0, super(0.3), cold) + 2.0 * log_renormalization(super(0.3), cold), 0.0, 1e-8);
}

TEST(Phi, DecreasingTowardMidpoint)
{
    const auto b = super(0.1);
    const Thermo th{1.0};
    EXPECT_GT(phi(0.0, b, th), phi(0.25, b, th));
    EXPECT_GT(phi(0.25, b, th), phi(0.5, b, th));
}

TEST(Phi, DomainErrors)
{
    EXPECT_THROW(phi(-0.1, super(0.1), Thermo{1.0}), DomainError);
    EXPECT_THROW(phi(1.1, super(0.1), Thermo{1.0}), DomainError);
}

TEST(Kappa, ClosedFormAndLinearity)
{
    EXPECT_EQ(kappa(super(0.0)), 0.0);
    EXPECT_NEAR(kappa(super(0.1)), 100.0 / std::numbers::pi, 1e-12);
    auto f = [](double w) { return 0.1 * w * w * std::exp(-w / 5.0); };
    const double q = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        f, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-14);
    EXPECT_NEAR(kappa(super(0.1)) / (4.0 / std::numbers::pi * q), 1.0, 1e-10);
    EXPECT_NEAR(kappa(super(0.2)), 2.0 * kappa(super(0.1)), 1e-12);
    EXPECT_THROW(kappa({SpectralKind::Ohmic, 0.1, 5.0}), UnsupportedBath);
}
