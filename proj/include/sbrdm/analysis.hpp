#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "sbrdm/errors.hpp"
#include "sbrdm/model.hpp"
#include "sbrdm/numerics/mat2.hpp"
#include "sbrdm/parallel.hpp"
#include "sbrdm/polaron.hpp"

namespace sbrdm {

using numerics::Vec3;

// Projective axis: n and -n describe the same eigenbasis.
struct BlochAxis {
    Vec3 n{0.0, 0.0, 1.0};

    static BlochAxis from(const Vec3& v)
    {
        const double r = numerics::norm(v);
        if (!(r > 0.0) || !std::isfinite(r)) {
            throw DegenerateBasis("zero vector has no axis");
        }
        return {{v[0] / r, v[1] / r, v[2] / r}};
    }
};

inline const BlochAxis z_axis{{0.0, 0.0, 1.0}};

// Smallest rotation between two eigenbases, in [0, pi/2].
// atan2 keeps full precision near 0 and pi/2 where acos does not.
inline double axis_angle(const BlochAxis& a, const BlochAxis& b)
{
    const double c = std::abs(numerics::dot(a.n, b.n));
    const double s = numerics::norm(numerics::cross(a.n, b.n));
    return std::atan2(s, c);
}

inline BlochAxis axis_of(const numerics::HermMat2& m, double rel_threshold = numerics::default_degeneracy_threshold)
{
    const auto e = numerics::eig2(m, rel_threshold);
    if (e.degenerate()) {
        throw DegenerateBasis("matrix is proportional to the identity; its eigenbasis is undefined");
    }
    return {*e.axis};
}

inline BlochAxis axis_of(const RDM& rdm) { return axis_of(rdm.matrix); }

// Eigenbasis of the bare H_S = (eps/2) sz + (Delta/2) sx.
inline BlochAxis system_axis(const SystemParams& sys) { return BlochAxis::from({sys.delta, 0.0, sys.epsilon}); }

struct AngleReport {
    double theta_S = 0.0;   // against the H_S eigenbasis
    double theta_SB = 0.0;  // against the coupling (sigma_z) eigenbasis
};

inline AngleReport angles(const RDM& rdm, const SystemParams& sys)
{
    const BlochAxis a = axis_of(rdm);
    return {axis_angle(a, system_axis(sys)), axis_angle(a, z_axis)};
}

inline double purity_lambda2(const RDM& rdm) { return numerics::eig2(rdm.matrix).lambda_plus; }

struct SweepRow {
    double gamma = 0.0;
    double beta = 0.0;
    double theta_S = std::numeric_limits<double>::quiet_NaN();
    double theta_SB = std::numeric_limits<double>::quiet_NaN();
    double rho11 = std::numeric_limits<double>::quiet_NaN();
    double rho22 = std::numeric_limits<double>::quiet_NaN();
    double rho12 = std::numeric_limits<double>::quiet_NaN();
    double lambda2 = std::numeric_limits<double>::quiet_NaN();
    Provenance provenance = Provenance::Analytic;
    bool nonpositive = false;
    std::string note;   // why angles or the whole row are missing
    bool failed = false;
};

// Fills everything derivable from an RDM. A degenerate RDM leaves the angles NaN.
inline SweepRow row_from_rdm(const RDM& rdm, const ModelParams& params)
{
    SweepRow row;
    row.gamma = params.bath.gamma;
    row.beta = params.thermo.beta;
    row.rho11 = rdm.rho11();
    row.rho22 = rdm.rho22();
    row.rho12 = rdm.rho12().real();
    row.lambda2 = purity_lambda2(rdm);
    row.provenance = rdm.provenance;
    row.nonpositive = rdm.nonpositive;
    try {
        const AngleReport a = angles(rdm, params.system);
        row.theta_S = a.theta_S;
        row.theta_SB = a.theta_SB;
    } catch (const DegenerateBasis& e) {
        row.note = e.what();
    }
    return row;
}

inline SweepRow analytic_row(const ModelParams& params, const numerics::QuadratureSpec& spec = {})
{
    try {
        return row_from_rdm(assemble_rdm(params, spec), params);
    } catch (const std::exception& e) {
        SweepRow row;
        row.gamma = params.bath.gamma;
        row.beta = params.thermo.beta;
        row.failed = true;
        row.note = e.what();
        return row;
    }
}

// Rows come back in grid order whatever the worker count.
inline std::vector<SweepRow> sweep_gamma(const ModelParams& tmpl, const std::vector<double>& gammas,
                                         const numerics::QuadratureSpec& spec = {}, std::size_t workers = 0)
{
    std::vector<SweepRow> rows(gammas.size());
    parallel_for(gammas.size(), workers, [&](std::size_t i) {
        ModelParams p = tmpl;
        p.bath.gamma = gammas[i];
        rows[i] = analytic_row(p, spec);
    });
    return rows;
}

inline std::vector<SweepRow> sweep_temperature(const ModelParams& tmpl, const std::vector<double>& temperatures,
                                               const numerics::QuadratureSpec& spec = {}, std::size_t workers = 0)
{
    std::vector<SweepRow> rows(temperatures.size());
    parallel_for(temperatures.size(), workers, [&](std::size_t i) {
        ModelParams p = tmpl;
        if (!(temperatures[i] > 0.0)) {
            rows[i].failed = true;
            rows[i].note = "DomainError: temperature must be > 0";
            return;
        }
        p.thermo = Thermo::from_temperature(temperatures[i]);
        rows[i] = analytic_row(p, spec);
    });
    return rows;
}

struct Sensitivity {
    double temperature = 0.0;
    double step = 0.0;
    double dtheta_dT = 0.0;         // d theta_S / dT, central difference with `step`
    double dtheta_dT_half = 0.0;    // same with step/2
    double halving_change = 0.0;    // |dtheta_dT - dtheta_dT_half|
};

inline double theta_S_at(const ModelParams& tmpl, double temperature, const numerics::QuadratureSpec& spec)
{
    ModelParams p = tmpl;
    p.thermo = Thermo::from_temperature(temperature);
    return angles(assemble_rdm(p, spec), p.system).theta_S;
}

// h <= 0 selects max(1e-3, 1e-3 T).
inline Sensitivity sensitivity(const ModelParams& tmpl, double temperature, double h = 0.0,
                               const numerics::QuadratureSpec& spec = {})
{
    if (h <= 0.0) {
        h = std::max(1e-3, 1e-3 * temperature);
    }
    if (!(temperature - h > 0.0)) {
        throw DomainError("sensitivity: T - h must be > 0");
    }
    auto central = [&](double step) {
        return (theta_S_at(tmpl, temperature + step, spec) - theta_S_at(tmpl, temperature - step, spec)) /
               (2.0 * step);
    };
    Sensitivity s;
    s.temperature = temperature;
    s.step = h;
    s.dtheta_dT = central(h);
    s.dtheta_dT_half = central(0.5 * h);
    s.halving_change = std::abs(s.dtheta_dT - s.dtheta_dT_half);
    return s;
}

// Leading high-temperature behaviour of the RDM: populations to O(beta),
// coherence to O(beta^2). beta = 0 gives I/2.
inline RDM high_temperature_rdm(const SystemParams& sys, const BathParams& bath, double beta)
{
    sys.validate();
    bath.validate();
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw DomainError("high_temperature_rdm: beta must be finite and >= 0");
    }
    const double k = kappa(bath);
    RDM out;
    out.matrix = {0.5 * (1.0 - 0.5 * sys.epsilon * beta), 0.5 * (1.0 + 0.5 * sys.epsilon * beta),
                  cplx(-0.25 * sys.delta * (beta - k * beta * beta / 6.0), 0.0)};
    out.provenance = Provenance::HighT;
    out.nonpositive = numerics::eig2(out.matrix).lambda_minus < 0.0;
    return out;
}

struct BathOccupation {
    double n_bose = 0.0;
    double n_mean = 0.0;
    double fractional_correction = 0.0;  // (n_mean - n_bose) / n_bose
};

// Mode occupation in the coupled equilibrium: each mode is displaced by g/omega.
inline BathOccupation bath_occupation(const BathMode& mode, const Thermo& thermo)
{
    thermo.validate();
    if (!(mode.omega > 0.0)) {
        throw DomainError("bath_occupation: omega must be > 0");
    }
    BathOccupation o;
    o.n_bose = 1.0 / std::expm1(thermo.beta * mode.omega);
    o.n_mean = o.n_bose + mode.g * mode.g / (mode.omega * mode.omega);
    o.fractional_correction = (o.n_mean - o.n_bose) / o.n_bose;
    return o;
}

}  // namespace sbrdm
