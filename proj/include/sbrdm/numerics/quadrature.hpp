#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <queue>
#include <type_traits>
#include <utility>
#include <vector>

#include "sbrdm/errors.hpp"

namespace sbrdm::numerics {

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    std::size_t max_subdivisions = 4000;

    void validate() const
    {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
            throw DomainError("QuadratureSpec: tolerances must be > 0");
        }
        if (max_subdivisions == 0) {
            throw DomainError("QuadratureSpec: max_subdivisions must be >= 1");
        }
    }
};

template <typename V>
struct QuadResult {
    V value{};
    double error = 0.0;
    std::size_t evaluations = 0;
};

inline double quad_norm(double v) { return std::abs(v); }
inline double quad_norm(const std::complex<double>& v) { return std::abs(v); }

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule, nodes on [0, 1] of the half interval.
inline constexpr std::array<double, 8> kronrod_x = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_w = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gauss_w = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename V>
struct Interval {
    double a;
    double b;
    V value;
    double error;
    bool operator<(const Interval& other) const { return error < other.error; }
};

template <typename V, typename F>
Interval<V> gauss_kronrod_15(F& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const V fc = f(center);
    V kronrod = fc * kronrod_w[7];
    V gauss = fc * gauss_w[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kronrod_x[j];
        const V f1 = f(center - dx);
        const V f2 = f(center + dx);
        kronrod = kronrod + (f1 + f2) * kronrod_w[j];
        if (j % 2 == 1) {
            gauss = gauss + (f1 + f2) * gauss_w[j / 2];
        }
    }
    kronrod = kronrod * half;
    gauss = gauss * half;
    return {a, b, kronrod, quad_norm(kronrod - gauss)};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
// V may be double, std::complex<double>, or any vector-space type with a
// quad_norm overload.
template <typename F>
auto integrate_finite(F&& f, double a, double b, const QuadratureSpec& spec = {})
    -> QuadResult<std::decay_t<std::invoke_result_t<F&, double>>>
{
    using V = std::decay_t<std::invoke_result_t<F&, double>>;
    spec.validate();
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("integrate_finite: limits must be finite");
    }
    QuadResult<V> result;
    if (a == b) {
        result.value = V{} * 0.0;
        return result;
    }

    std::priority_queue<detail::Interval<V>> heap;
    auto first = detail::gauss_kronrod_15<V>(f, a, b);
    V total = first.value;
    double total_error = first.error;
    heap.push(first);
    std::size_t evaluations = 15;

    const double eps = std::numeric_limits<double>::epsilon();
    std::size_t subdivisions = 1;
    while (total_error > std::max(spec.abs_tol, spec.rel_tol * quad_norm(total))) {
        if (total_error <= 50.0 * eps * quad_norm(total)) {
            break;  // roundoff floor
        }
        if (subdivisions >= spec.max_subdivisions) {
            throw ConvergenceError("adaptive quadrature exceeded max_subdivisions", quad_norm(total),
                                   total_error);
        }
        auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            throw ConvergenceError("adaptive quadrature interval collapsed", quad_norm(total), total_error);
        }
        auto left = detail::gauss_kronrod_15<V>(f, worst.a, mid);
        auto right = detail::gauss_kronrod_15<V>(f, mid, worst.b);
        evaluations += 30;
        total = total - worst.value + left.value + right.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++subdivisions;
        if (total_error < 0.0 || subdivisions % 64 == 0) {
            // resum to avoid drift from the running update
            total_error = 0.0;
            V resum = V{} * 0.0;
            auto copy = heap;
            while (!copy.empty()) {
                resum = resum + copy.top().value;
                total_error += copy.top().error;
                copy.pop();
            }
            total = resum;
        }
    }
    result.value = total;
    result.error = total_error;
    result.evaluations = evaluations;
    return result;
}

// Integral of f over [0, inf) through the map w = scale * u / (1 - u).
// Intended for integrands with exponential decay on the scale `scale`.
template <typename F>
auto integrate_semi_infinite(F&& f, const QuadratureSpec& spec = {}, double scale = 1.0)
    -> QuadResult<std::decay_t<std::invoke_result_t<F&, double>>>
{
    if (!(scale > 0.0)) {
        throw DomainError("integrate_semi_infinite: scale must be > 0");
    }
    auto mapped = [&f, scale](double u) {
        const double one_minus = 1.0 - u;
        const double w = scale * u / one_minus;
        return f(w) * (scale / (one_minus * one_minus));
    };
    return integrate_finite(mapped, 0.0, 1.0, spec);
}

struct GaussLegendreRule {
    std::vector<double> nodes;    // on [-1, 1], ascending
    std::vector<double> weights;
};

// n-point Gauss-Legendre rule by Newton iteration on P_n.
inline GaussLegendreRule gauss_legendre(std::size_t n)
{
    if (n == 0) {
        throw DomainError("gauss_legendre: n must be >= 1");
    }
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const std::size_t m = (n + 1) / 2;
    for (std::size_t i = 0; i < m; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double kk = static_cast<double>(k);
                const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                break;
            }
        }
        // recompute derivative at the converged node
        double p0 = 1.0;
        double p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
            const double kk = static_cast<double>(k);
            const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
            p0 = p1;
            p1 = p2;
        }
        dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) {
        rule.nodes[n / 2] = 0.0;
    }
    return rule;
}

namespace detail {

template <typename V, typename F2>
V triangle_tensor_rule(F2& f, double beta, const GaussLegendreRule& rule)
{
    V sum = V{} * 0.0;
    const std::size_t n = rule.nodes.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double tau = 0.5 * beta * (rule.nodes[i] + 1.0);
        const double wt = 0.5 * beta * rule.weights[i];
        V inner = V{} * 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double s = 0.5 * (rule.nodes[j] + 1.0);
            inner = inner + f(tau, s * tau) * (0.5 * rule.weights[j]);
        }
        sum = sum + inner * (wt * tau);
    }
    return sum;
}

}  // namespace detail

// Double integral of f(tau, tau') over 0 <= tau' <= tau <= beta using the
// substitution tau' = s * tau and a tensor-product Gauss-Legendre rule.
// The node count doubles until successive estimates agree to rel_tol.
template <typename F2>
auto integrate_triangle(F2&& f, double beta, const QuadratureSpec& spec = {}, std::size_t initial_nodes = 64,
                        std::size_t max_nodes = 1024)
    -> QuadResult<std::decay_t<std::invoke_result_t<F2&, double, double>>>
{
    using V = std::decay_t<std::invoke_result_t<F2&, double, double>>;
    spec.validate();
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw DomainError("integrate_triangle: beta must be finite and >= 0");
    }
    QuadResult<V> result;
    std::size_t n = std::max<std::size_t>(initial_nodes, 1);
    V previous = detail::triangle_tensor_rule<V>(f, beta, gauss_legendre(n));
    result.evaluations = n * n;
    while (true) {
        const std::size_t next = 2 * n;
        if (next > max_nodes) {
            throw ConvergenceError("triangle quadrature did not converge by node doubling", quad_norm(previous),
                                   result.error);
        }
        V current = detail::triangle_tensor_rule<V>(f, beta, gauss_legendre(next));
        result.evaluations += next * next;
        const double diff = quad_norm(current - previous);
        result.error = diff;
        if (diff <= spec.rel_tol * quad_norm(current) + spec.abs_tol) {
            result.value = current;
            return result;
        }
        previous = current;
        n = next;
    }
}

}  // namespace sbrdm::numerics
