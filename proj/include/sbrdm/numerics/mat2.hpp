#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <optional>

namespace sbrdm::numerics {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// General complex 2x2 matrix, row-major.
struct Mat2 {
    cplx m00{}, m01{}, m10{}, m11{};

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    cplx trace() const { return m00 + m11; }
    Mat2 adjoint() const { return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)}; }

    friend Mat2 operator+(const Mat2& a, const Mat2& b)
    {
        return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
    }
    friend Mat2 operator-(const Mat2& a, const Mat2& b)
    {
        return {a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11};
    }
    friend Mat2 operator*(const Mat2& a, const Mat2& b)
    {
        return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
                a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
    }
    friend Mat2 operator*(const Mat2& a, cplx s) { return {a.m00 * s, a.m01 * s, a.m10 * s, a.m11 * s}; }
    friend Mat2 operator*(const Mat2& a, double s) { return {a.m00 * s, a.m01 * s, a.m10 * s, a.m11 * s}; }
    friend Mat2 operator*(double s, const Mat2& a) { return a * s; }
};

inline double quad_norm(const Mat2& a)
{
    return std::max({std::abs(a.m00), std::abs(a.m01), std::abs(a.m10), std::abs(a.m11)});
}

namespace pauli {
inline Mat2 x() { return {0.0, 1.0, 1.0, 0.0}; }
inline Mat2 y() { return {0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0}; }
inline Mat2 z() { return {1.0, 0.0, 0.0, -1.0}; }
// |2><1| with |1> the sigma_z = +1 state; tr[lowering() rho] = rho_12.
inline Mat2 lowering() { return {0.0, 0.0, 1.0, 0.0}; }
}  // namespace pauli

// Hermitian 2x2 matrix; a21 = conj(a12) is implied.
struct HermMat2 {
    double a11 = 0.0;
    double a22 = 0.0;
    cplx a12{};

    double trace() const { return a11 + a22; }
    Mat2 full() const { return {a11, a12, std::conj(a12), a22}; }

    // m = c I + (1/2) v . sigma
    double center() const { return 0.5 * (a11 + a22); }
    Vec3 bloch_vector() const { return {2.0 * a12.real(), -2.0 * a12.imag(), a11 - a22}; }

    static HermMat2 from_bloch(double c, const Vec3& v)
    {
        return {c + 0.5 * v[2], c - 0.5 * v[2], cplx(0.5 * v[0], -0.5 * v[1])};
    }

    // Hermitian part of a general matrix.
    static HermMat2 hermitian_part(const Mat2& m)
    {
        return {m.m00.real(), m.m11.real(), 0.5 * (m.m01 + std::conj(m.m10))};
    }

    double max_abs() const { return std::max({std::abs(a11), std::abs(a22), std::abs(a12)}); }
};

struct Eig2 {
    double lambda_minus = 0.0;
    double lambda_plus = 0.0;
    std::optional<Vec3> axis;  // empty when degenerate

    bool degenerate() const { return !axis.has_value(); }
};

inline constexpr double default_degeneracy_threshold = 1e-12;

// Closed-form eigen-decomposition. The axis is the unit Bloch vector n with
// m = c I + (r/2) n . sigma, r >= 0; the projector onto lambda_plus is (I + n.sigma)/2.
inline Eig2 eig2(const HermMat2& m, double rel_threshold = default_degeneracy_threshold)
{
    const double c = m.center();
    const Vec3 v = m.bloch_vector();
    const double r = norm(v);
    Eig2 out;
    out.lambda_minus = c - 0.5 * r;
    out.lambda_plus = c + 0.5 * r;
    if (r >= rel_threshold * std::max(1.0, m.max_abs())) {
        out.axis = Vec3{v[0] / r, v[1] / r, v[2] / r};
    }
    return out;
}

}  // namespace sbrdm::numerics
