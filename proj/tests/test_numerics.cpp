#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/special_functions/trigamma.hpp>
#include <gtest/gtest.h>

#include "sbrdm/errors.hpp"
#include "sbrdm/numerics/mat2.hpp"
#include "sbrdm/numerics/quadrature.hpp"
#include "sbrdm/numerics/special_functions.hpp"

using namespace sbrdm;
using namespace sbrdm::numerics;

TEST(Trigamma, Recurrence)
{
    const double x = 2.5;
    EXPECT_NEAR(trigamma(x) - trigamma(x + 1.0), 1.0 / (x * x), 1e-13);
}

TEST(Trigamma, ValueAtOneFromPartialSums)
{
    // sum 1/n^2 with the tail bounded by the integral remainder 1/N - 1/(2N^2) + 1/(6N^3)
    const int n_terms = 100000;
    double s = 0.0;
    for (int n = n_terms; n >= 1; --n) {
        s += 1.0 / (static_cast<double>(n) * n);
    }
    const double N = n_terms;
    s += 1.0 / N - 0.5 / (N * N) + 1.0 / (6.0 * N * N * N);
    EXPECT_NEAR(trigamma(1.0), s, 1e-12);
    EXPECT_NEAR(trigamma(1.0), std::numbers::pi * std::numbers::pi / 6.0, 1e-12);
}

TEST(Trigamma, AsymptoticAtHundred)
{
    const double x = 100.0;
    const double asym = 1.0 / x + 1.0 / (2.0 * x * x) + 1.0 / (6.0 * x * x * x) - 1.0 / (30.0 * std::pow(x, 5));
    EXPECT_NEAR(trigamma(x) / asym, 1.0, 1e-10);
}

TEST(Trigamma, MatchesBoostOnRandomPoints)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> logx(std::log(1e-3), std::log(1e3));
    for (int i = 0; i < 200; ++i) {
        const double x = std::exp(logx(rng));
        const double ref = boost::math::trigamma(x);
        EXPECT_NEAR(trigamma(x) / ref, 1.0, 1e-12) << "x=" << x;
    }
}

TEST(Trigamma, RejectsNonPositive)
{
    EXPECT_THROW(trigamma(0.0), DomainError);
    EXPECT_THROW(trigamma(-1.5), DomainError);
}

TEST(SpecialFunctions, StableHyperbolicRatios)
{
    EXPECT_NEAR(sech_cosh(1.0, 0.3), std::cosh(0.3) / std::cosh(1.0), 1e-15);
    EXPECT_NEAR(sech_sinh(1.0, -0.3), std::sinh(-0.3) / std::cosh(1.0), 1e-15);
    EXPECT_NEAR(sech_cosh(800.0, 800.0), 1.0, 1e-15);
    EXPECT_NEAR(sech_sinh(800.0, 799.0), std::exp(-1.0), 1e-15);
    EXPECT_NEAR(tanhc(0.0), 1.0, 0.0);
    EXPECT_NEAR(tanhc(0.5), std::tanh(0.5) / 0.5, 1e-15);
    EXPECT_NEAR(exp_times_exprel(2.0, 1e-9), std::exp(2.0), 1e-8);
    EXPECT_NEAR(exp_times_exprel(-700.0, 1400.0), (std::exp(700.0) - std::exp(-700.0)) / 1400.0,
                1e-12 * std::exp(700.0) / 1400.0);
}

TEST(Quadrature, SemiInfiniteExamples)
{
    EXPECT_NEAR(integrate_semi_infinite([](double w) { return std::exp(-w); }).value, 1.0, 1e-10);
    const auto r = integrate_semi_infinite([](double w) { return w * w * w * std::exp(-w / 5.0); }, {}, 5.0);
    EXPECT_NEAR(r.value / 3750.0, 1.0, 1e-10);
    EXPECT_GE(r.error, 0.0);
    // Re int w e^{-(1-i)w} = Re 1/(1-i)^2 = 0
    EXPECT_NEAR(integrate_semi_infinite([](double w) { return w * std::exp(-w) * std::cos(w); }).value, 0.0,
                1e-12);
}

TEST(Quadrature, FiniteComplexAndEndpointRoundoff)
{
    const auto r = integrate_finite([](double x) { return std::complex<double>(std::cos(x), std::sin(x)); }, 0.0,
                                    std::numbers::pi);
    EXPECT_NEAR(r.value.real(), 0.0, 1e-13);
    EXPECT_NEAR(r.value.imag(), 2.0, 1e-12);
    EXPECT_NEAR(integrate_finite([](double x) { return std::sqrt(x); }, 0.0, 1.0).value, 2.0 / 3.0, 1e-10);
}

TEST(Quadrature, ConvergenceErrorCarriesPartialEstimate)
{
    QuadratureSpec tight;
    tight.max_subdivisions = 3;
    tight.rel_tol = 1e-14;
    try {
        (void)integrate_finite([](double x) { return std::sin(1.0 / (x + 1e-3)); }, 0.0, 1.0, tight);
        FAIL() << "expected ConvergenceError";
    } catch (const ConvergenceError& e) {
        EXPECT_TRUE(std::isfinite(e.partial_estimate()));
        EXPECT_GT(e.error_estimate(), 0.0);
    }
}

TEST(Quadrature, DeterministicGivenInputs)
{
    auto f = [](double w) { return w * std::exp(-w) / (1.0 + w * w); };
    EXPECT_EQ(integrate_semi_infinite(f).value, integrate_semi_infinite(f).value);
}

TEST(Quadrature, GaussLegendrePolynomialExactness)
{
    const auto rule = gauss_legendre(10);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        s += rule.weights[i] * std::pow(rule.nodes[i], 18);
    }
    EXPECT_NEAR(s, 2.0 / 19.0, 1e-14);
}

TEST(Quadrature, TriangleExamples)
{
    EXPECT_NEAR(integrate_triangle([](double, double) { return 1.0; }, 1.0).value, 0.5, 1e-14);
    EXPECT_NEAR(integrate_triangle([](double t, double tp) { return t * tp; }, 1.0).value, 0.125, 1e-14);
    // int_0^1 int_0^t e^{t - t'} = int_0^1 (e^t - 1) = e - 2
    const auto r = integrate_triangle([](double t, double tp) { return std::exp(t - tp); }, 1.0);
    EXPECT_NEAR(r.value, std::numbers::e - 2.0, 1e-13);
    EXPECT_LT(r.error, 1e-10);
}

TEST(Eig2, Examples)
{
    const auto z = eig2(HermMat2{1.0, -1.0, 0.0});
    EXPECT_DOUBLE_EQ(z.lambda_minus, -1.0);
    EXPECT_DOUBLE_EQ(z.lambda_plus, 1.0);
    ASSERT_TRUE(z.axis);
    EXPECT_NEAR((*z.axis)[2], 1.0, 1e-15);

    EXPECT_TRUE(eig2(HermMat2{0.5, 0.5, 0.0}).degenerate());

    const double eps = 0.5;
    const double delta = 1.0;
    const auto h = eig2(HermMat2{0.5 * eps, -0.5 * eps, cplx(0.5 * delta, 0.0)});
    const double e = 0.5 * std::hypot(eps, delta);
    EXPECT_NEAR(h.lambda_minus, -e, 1e-15);
    EXPECT_NEAR(h.lambda_plus, e, 1e-15);
    const double n = std::hypot(eps, delta);
    EXPECT_NEAR((*h.axis)[0], delta / n, 1e-15);
    EXPECT_NEAR((*h.axis)[1], 0.0, 1e-15);
    EXPECT_NEAR((*h.axis)[2], eps / n, 1e-15);
}

TEST(Eig2, ReconstructionFromProjectors)
{
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 100; ++trial) {
        const HermMat2 m{g(rng), g(rng), cplx(g(rng), g(rng))};
        const auto e = eig2(m);
        ASSERT_TRUE(e.axis);
        const auto& n = *e.axis;
        // P+ = (I + n.sigma)/2, P- = (I - n.sigma)/2
        const Mat2 ns = pauli::x() * n[0] + pauli::y() * n[1] + pauli::z() * n[2];
        const Mat2 rec = (Mat2::identity() + ns) * (0.5 * e.lambda_plus) + (Mat2::identity() - ns) * (0.5 * e.lambda_minus);
        EXPECT_LT(quad_norm(rec - m.full()), 1e-12);
    }
}

TEST(Eig2, DegeneracyThresholdIsRelative)
{
    EXPECT_TRUE(eig2(HermMat2{1e6, 1e6 + 1e-7, 0.0}).degenerate());
    EXPECT_FALSE(eig2(HermMat2{1.0, 1.0 + 1e-9, 0.0}).degenerate());
    EXPECT_TRUE(eig2(HermMat2{1.0, 1.0 + 1e-9, 0.0}, 1e-6).degenerate());
}
