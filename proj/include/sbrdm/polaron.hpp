#pragma once

#include <cmath>
#include <complex>
#include <string_view>

#include "sbrdm/errors.hpp"
#include "sbrdm/model.hpp"
#include "sbrdm/numerics/mat2.hpp"
#include "sbrdm/numerics/quadrature.hpp"
#include "sbrdm/numerics/special_functions.hpp"

// Polaron-frame perturbation theory for the equilibrium reduced density matrix.
//
// Basis: |1> is the sigma_z = +1 state, so H_S = diag(+eps/2, -eps/2) + (Delta/2) sigma_x.
// Populations carry the second-order correction in the polaron-frame coupling,
// the coherence rho_12 = tr[sigma_- rho] carries the first-order correction.
namespace sbrdm {

using numerics::cplx;
using numerics::HermMat2;
using numerics::Mat2;
using numerics::QuadratureSpec;

enum class Provenance { Analytic, HighT, PIMC, ED };

inline std::string_view to_string(Provenance p)
{
    switch (p) {
    case Provenance::Analytic: return "Analytic";
    case Provenance::HighT: return "HighT";
    case Provenance::PIMC: return "PIMC";
    case Provenance::ED: return "ED";
    }
    return "unknown";
}

// Reduced density matrix of the spin in the sigma_z basis.
struct RDM {
    HermMat2 matrix;
    Provenance provenance = Provenance::Analytic;
    bool nonpositive = false;       // an eigenvalue < 0: perturbative breakdown indicator
    bool validity_warning = false;  // Delta > omega_c, outside the accurate regime
    double offdiag_imag = 0.0;      // imaginary residue discarded from rho_12

    double rho11() const { return matrix.a11; }
    double rho22() const { return matrix.a22; }
    cplx rho12() const { return matrix.a12; }
};

// e^{-beta H_S} / Z for the bare system Hamiltonian.
inline RDM canonical_rdm(const SystemParams& sys, const Thermo& thermo)
{
    sys.validate();
    thermo.validate();
    const double eta0 = std::hypot(sys.epsilon, sys.delta);
    const double t = std::tanh(0.5 * thermo.beta * eta0);
    // rho = (I - t n.sigma) / 2 with n = (delta, 0, epsilon) / eta0
    RDM out;
    out.matrix = HermMat2::from_bloch(0.5, {-t * sys.delta / eta0, 0.0, -t * sys.epsilon / eta0});
    out.provenance = Provenance::Analytic;
    return out;
}

// Polaron-frame system H~_S = (eps/2) sigma_z + (Delta_R/2) sigma_x.
struct PolaronSystem {
    double log_R = 0.0;
    double R = 1.0;
    double delta_R = 1.0;
    double eta = 1.0;  // sqrt(eps^2 + Delta_R^2)
    double epsilon = 0.0;
    double delta = 1.0;

    // Direction cosines of H~_S in the (sigma_z, sigma_x) plane; (0, 1) when eta vanishes.
    double cos_dir() const { return eta > 0.0 ? epsilon / eta : 0.0; }
    double sin_dir() const { return eta > 0.0 ? delta_R / eta : 1.0; }
};

inline PolaronSystem effective_system(const ModelParams& params)
{
    params.validate();
    PolaronSystem p;
    p.log_R = log_renormalization(params.bath, params.thermo);
    p.R = std::exp(p.log_R);
    p.epsilon = params.system.epsilon;
    p.delta = params.system.delta;
    p.delta_R = p.R * p.delta;
    p.eta = std::hypot(p.epsilon, p.delta_R);
    return p;
}

enum class Axis { X, Y };

namespace detail {

// e^{log_scale} * sinh(x), without overflow when log_scale << 0 and x >> 0.
inline double scaled_sinh(double log_scale, double x)
{
    if (std::abs(x) < 1.0) {
        return std::exp(log_scale) * std::sinh(x);
    }
    return 0.5 * (std::exp(log_scale + x) - std::exp(log_scale - x));
}

}  // namespace detail

// Bath, system and dressed-bath imaginary-time correlation functions.
// Immutable after construction.
class CorrelationSet {
public:
    explicit CorrelationSet(const ModelParams& params, const QuadratureSpec& spec = {})
        : params_(params)
        , polaron_(effective_system(params))
        , phi_spec_(inner_spec(spec))
    {
    }

    const ModelParams& params() const { return params_; }
    const PolaronSystem& polaron() const { return polaron_; }
    double beta() const { return params_.thermo.beta; }

    double phi(double tau) const
    {
        check_tau(tau, "phi");
        return sbrdm::phi(tau, params_.bath, params_.thermo, phi_spec_);
    }

    // C_x and C_y at one imaginary time given phi(tau).
    struct BathPair {
        double x;
        double y;
    };

    BathPair bath_from_phi(double phi_value) const
    {
        const double delta = polaron_.delta;
        // C_x = (Delta_R^2/2) sinh^2(phi/2), C_y = (Delta_R^2/4) sinh(phi)
        const double rs = detail::scaled_sinh(polaron_.log_R, 0.5 * phi_value);
        const double cx = 0.5 * delta * delta * rs * rs;
        const double cy = 0.25 * delta * delta * detail::scaled_sinh(2.0 * polaron_.log_R, phi_value);
        return {cx, cy};
    }

    double bath(Axis n, double tau) const
    {
        check_tau(tau, "bath_corr");
        const auto c = bath_from_phi(phi(tau));
        return n == Axis::X ? c.x : c.y;
    }

    // K_x = 2 C_x / Delta (real), K_y = 2 i C_y / Delta (imaginary).
    cplx dressed(Axis n, double tau) const
    {
        const double c = bath(n, tau);
        return n == Axis::X ? cplx(2.0 * c / polaron_.delta, 0.0) : cplx(0.0, 2.0 * c / polaron_.delta);
    }

    // S_n(tau) = < sigma_n(tau) sigma_- >_{H~_S}
    cplx system(Axis n, double tau) const
    {
        check_tau(tau, "sys_corr");
        const double beta = params_.thermo.beta;
        const double half = 0.5 * beta * polaron_.eta;
        const double x = 0.5 * (beta - 2.0 * tau) * polaron_.eta;
        const double sc = numerics::sech_cosh(half, x);
        const double ss = numerics::sech_sinh(half, x);
        const double c = polaron_.cos_dir();
        const double s = polaron_.sin_dir();
        if (n == Axis::X) {
            return {0.5 * s * s + 0.5 * c * (c * sc - ss), 0.0};
        }
        return {0.0, -0.5 * (sc - c * ss)};
    }

private:
    static QuadratureSpec inner_spec(const QuadratureSpec& spec)
    {
        QuadratureSpec inner = spec;
        inner.rel_tol = std::max(spec.rel_tol * 1e-2, 1e-13);
        inner.abs_tol = std::min(spec.abs_tol, 1e-16);
        return inner;
    }

    void check_tau(double tau, std::string_view op) const
    {
        if (!(tau >= 0.0 && tau <= params_.thermo.beta)) {
            throw DomainError(std::string(op) + ": tau must lie in [0, beta]");
        }
    }

    ModelParams params_;
    PolaronSystem polaron_;
    QuadratureSpec phi_spec_;
};

inline double bath_corr(const CorrelationSet& set, Axis n, double tau) { return set.bath(n, tau); }
inline cplx sys_corr(const CorrelationSet& set, Axis n, double tau) { return set.system(n, tau); }

// Second-order ingredients of the polaron-frame populations. A and Z_(2) are
// stored divided by Z_(0) = tr e^{-beta H~_S}.
struct PerturbationTerms {
    HermMat2 a_over_z0;        // A / Z_(0), sigma_z basis
    double log_z0 = 0.0;       // ln Z_(0)
    double z2_over_z0 = 0.0;   // Z_(2) / Z_(0) = tr(A) / Z_(0)
    double antihermitian = 0.0;  // max |A - A^dag| / 2 / Z_(0), quadrature residue
    double quad_error = 0.0;
};

namespace detail {

// Eigenbasis of H~_S: column 0 is the ground state (energy 0 after shifting), column 1 the excited state (eta).
inline Mat2 polaron_eigenbasis(const PolaronSystem& p)
{
    const double theta = std::atan2(p.sin_dir(), p.cos_dir());
    const double ch = std::cos(0.5 * theta);
    const double sh = std::sin(0.5 * theta);
    return {-sh, ch, ch, sh};
}

inline cplx at(const Mat2& m, int r, int c)
{
    if (r == 0) {
        return c == 0 ? m.m00 : m.m01;
    }
    return c == 0 ? m.m10 : m.m11;
}

inline void set(Mat2& m, int r, int c, cplx v)
{
    if (r == 0) {
        (c == 0 ? m.m00 : m.m01) = v;
    } else {
        (c == 0 ? m.m10 : m.m11) = v;
    }
}

// M_n(u) = int_u^beta dtau rho_0 sigma_n(tau) sigma_n(tau - u), in the H~_S eigenbasis,
// with rho_0 = e^{-beta H~_S} / Z_(0). Every exponent is non-positive.
inline Mat2 inner_time_integral(const Mat2& sigma_hat, double eta, double beta, double u)
{
    const double energy[2] = {0.0, eta};
    const double inv_z0 = 1.0 / (1.0 + std::exp(-beta * eta));
    const double span = beta - u;
    Mat2 out{};
    for (int a = 0; a < 2; ++a) {
        for (int c = 0; c < 2; ++c) {
            cplx sum = 0.0;
            const double delta_ac = energy[a] - energy[c];
            for (int b = 0; b < 2; ++b) {
                const cplx amp = at(sigma_hat, a, b) * at(sigma_hat, b, c);
                if (amp == cplx(0.0)) {
                    continue;
                }
                const double x = -beta * energy[a] + u * (energy[a] - energy[b]);
                sum += amp * (span * numerics::exp_times_exprel(x, span * delta_ac));
            }
            set(out, a, c, sum * inv_z0);
        }
    }
    return out;
}

}  // namespace detail

// A / Z_(0) = sum_n int_0^beta du C_n(u) M_n(u). The inner imaginary-time
// integral over tau at fixed separation u is done in closed form, leaving a
// single adaptive quadrature over u.
inline PerturbationTerms second_order_terms(const CorrelationSet& corr, const QuadratureSpec& spec = {})
{
    const auto& p = corr.polaron();
    const double beta = corr.beta();
    const Mat2 u_mat = detail::polaron_eigenbasis(p);
    const Mat2 u_adj = u_mat.adjoint();
    const Mat2 sx_hat = u_adj * numerics::pauli::x() * u_mat;
    const Mat2 sy_hat = u_adj * numerics::pauli::y() * u_mat;

    auto integrand = [&](double u) {
        const auto c = corr.bath_from_phi(corr.phi(u));
        return detail::inner_time_integral(sx_hat, p.eta, beta, u) * c.x +
               detail::inner_time_integral(sy_hat, p.eta, beta, u) * c.y;
    };
    const auto res = numerics::integrate_finite(integrand, 0.0, beta, spec);
    const Mat2 a_full = u_mat * res.value * u_adj;

    PerturbationTerms terms;
    terms.a_over_z0 = HermMat2::hermitian_part(a_full);
    terms.antihermitian = numerics::quad_norm(a_full - a_full.adjoint()) * 0.5;
    terms.z2_over_z0 = a_full.trace().real();
    terms.log_z0 = 0.5 * beta * p.eta + std::log1p(std::exp(-beta * p.eta));
    terms.quad_error = res.error;
    return terms;
}

// Same quantity through the direct double integral over 0 <= tau' <= tau <= beta
// with closed-form e^{+-tau H~_S}. Independent of the closed-form inner integral;
// usable for moderate beta * eta only.
inline PerturbationTerms second_order_terms_triangle(const CorrelationSet& corr, const QuadratureSpec& spec = {},
                                                     std::size_t initial_nodes = 64)
{
    const auto& p = corr.polaron();
    const double beta = corr.beta();
    const double c = p.cos_dir();
    const double s = p.sin_dir();
    const Mat2 n_sigma = numerics::pauli::z() * c + numerics::pauli::x() * s;
    auto propagator = [&](double t) {  // e^{t H~_S}
        const double h = 0.5 * t * p.eta;
        return Mat2::identity() * std::cosh(h) + n_sigma * std::sinh(h);
    };
    const Mat2 rho0 = propagator(-beta) * (1.0 / (2.0 * std::cosh(0.5 * beta * p.eta)));
    const Mat2 sx = numerics::pauli::x();
    const Mat2 sy = numerics::pauli::y();

    auto integrand = [&](double tau, double tau_p) {
        const auto bath = corr.bath_from_phi(corr.phi(tau - tau_p));
        const Mat2 fwd = propagator(tau);
        const Mat2 bwd = propagator(-tau);
        const Mat2 fwd_p = propagator(tau_p);
        const Mat2 bwd_p = propagator(-tau_p);
        const Mat2 x_term = (fwd * sx * bwd) * (fwd_p * sx * bwd_p);
        const Mat2 y_term = (fwd * sy * bwd) * (fwd_p * sy * bwd_p);
        return rho0 * (x_term * bath.x + y_term * bath.y);
    };
    const auto res = numerics::integrate_triangle(integrand, beta, spec, initial_nodes);

    PerturbationTerms terms;
    terms.a_over_z0 = HermMat2::hermitian_part(res.value);
    terms.antihermitian = numerics::quad_norm(res.value - res.value.adjoint()) * 0.5;
    terms.z2_over_z0 = res.value.trace().real();
    terms.log_z0 = std::log(2.0 * std::cosh(0.5 * beta * p.eta));
    terms.quad_error = res.error;
    return terms;
}

struct Populations {
    double rho11 = 0.5;
    double rho22 = 0.5;
    bool validity_warning = false;
};

// rho_11, rho_22 = (1 +- tr[sigma_z rho~_S]) / 2 with
// rho~_S = rho~_(0) + A/Z_(0) - (Z_(2)/Z_(0)) rho~_(0).
inline Populations diag_populations(const CorrelationSet& corr, const QuadratureSpec& spec = {})
{
    const auto& p = corr.polaron();
    const double beta = corr.beta();
    const PerturbationTerms terms = second_order_terms(corr, spec);

    // tr[sigma_z rho~_(0)] = -(eps/eta) tanh(beta eta / 2)
    const double sz0 = -p.cos_dir() * std::tanh(0.5 * beta * p.eta);
    const double sz_a = terms.a_over_z0.a11 - terms.a_over_z0.a22;
    const double sz = sz0 + sz_a - terms.z2_over_z0 * sz0;

    Populations out;
    out.rho11 = 0.5 * (1.0 + sz);
    out.rho22 = 1.0 - out.rho11;
    out.validity_warning = corr.params().system.delta > corr.params().bath.omega_c;
    return out;
}

inline Populations diag_populations(const ModelParams& params, const QuadratureSpec& spec = {})
{
    return diag_populations(CorrelationSet(params, spec), spec);
}

struct OffDiagonal {
    double zeroth_order = 0.0;
    cplx first_order{};
    double quad_error = 0.0;

    cplx value() const { return zeroth_order + first_order; }
};

// rho_12 = -(R Delta_R / 2 eta) tanh(beta eta / 2) - sum_n int_0^beta S_n(tau) K_n(tau) dtau
inline OffDiagonal offdiag_terms(const CorrelationSet& corr, const QuadratureSpec& spec = {})
{
    const auto& p = corr.polaron();
    const double beta = corr.beta();
    OffDiagonal out;
    // R Delta_R tanh(beta eta/2) / (2 eta) = R^2 Delta (beta/4) tanhc(beta eta/2)
    out.zeroth_order =
        -std::exp(2.0 * p.log_R) * p.delta * 0.25 * beta * numerics::tanhc(0.5 * beta * p.eta);

    auto integrand = [&](double tau) {
        const auto c = corr.bath_from_phi(corr.phi(tau));
        const cplx kx(2.0 * c.x / p.delta, 0.0);
        const cplx ky(0.0, 2.0 * c.y / p.delta);
        return corr.system(Axis::X, tau) * kx + corr.system(Axis::Y, tau) * ky;
    };
    const auto res = numerics::integrate_finite(integrand, 0.0, beta, spec);
    out.first_order = -res.value;
    out.quad_error = res.error;
    return out;
}

inline cplx offdiag(const ModelParams& params, const QuadratureSpec& spec = {})
{
    return offdiag_terms(CorrelationSet(params, spec), spec).value();
}

inline constexpr double offdiag_imag_tolerance = 1e-10;

inline RDM assemble_rdm(const ModelParams& params, const QuadratureSpec& spec = {})
{
    const CorrelationSet corr(params, spec);
    const Populations pops = diag_populations(corr, spec);
    const cplx rho12 = offdiag_terms(corr, spec).value();
    if (std::abs(rho12.imag()) > offdiag_imag_tolerance) {
        throw ConvergenceError("off-diagonal element has a non-vanishing imaginary part", rho12.imag(),
                               std::abs(rho12.imag()));
    }
    RDM out;
    out.matrix = {pops.rho11, pops.rho22, cplx(rho12.real(), 0.0)};
    out.provenance = Provenance::Analytic;
    out.offdiag_imag = rho12.imag();
    out.validity_warning = pops.validity_warning;
    out.nonpositive = numerics::eig2(out.matrix).lambda_minus < 0.0;
    return out;
}

}  // namespace sbrdm
