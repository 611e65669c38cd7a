#pragma once

#include <array>
#include <cmath>
#include <functional>

#include "nilscroll/paracomplex.hpp"

namespace nilscroll {

/// Tangent vector in the left-invariant orthonormal frame {E1, E2, E3}
/// (signature -,+,+), equivalently coefficients in the basis {e1,e2,e3}
/// of the Lie algebra nil3.
struct FrameVector {
    double v1 = 0.0, v2 = 0.0, v3 = 0.0;

    FrameVector operator+(const FrameVector& o) const { return {v1 + o.v1, v2 + o.v2, v3 + o.v3}; }
    FrameVector operator-(const FrameVector& o) const { return {v1 - o.v1, v2 - o.v2, v3 - o.v3}; }
    FrameVector operator-() const { return {-v1, -v2, -v3}; }
    FrameVector operator*(double c) const { return {v1 * c, v2 * c, v3 * c}; }
};
inline FrameVector operator*(double c, const FrameVector& v) { return v * c; }

/// Group element of Nil3 in exponential coordinates (x1, x2, x3).
struct Nil3Point {
    double x1 = 0.0, x2 = 0.0, x3 = 0.0;
};

inline Nil3Point nil3_identity() { return {0.0, 0.0, 0.0}; }

/// (x1,x2,x3)·(y1,y2,y3) = (x1+y1, x2+y2, x3+y3 + (x1 y2 - x2 y1)/2).
inline Nil3Point group_mul(const Nil3Point& p, const Nil3Point& q) {
    return {p.x1 + q.x1, p.x2 + q.x2, p.x3 + q.x3 + 0.5 * (p.x1 * q.x2 - p.x2 * q.x1)};
}

inline Nil3Point group_inv(const Nil3Point& p) { return {-p.x1, -p.x2, -p.x3}; }

/// exp: nil3 -> Nil3 is the coordinate identification.
inline Nil3Point lie_exp(const FrameVector& v) { return {v.v1, v.v2, v.v3}; }
inline FrameVector lie_log(const Nil3Point& p) { return {p.x1, p.x2, p.x3}; }

/// Left-invariant Lorentzian metric g+ in the frame: -v1 w1 + v2 w2 + v3 w3.
inline double metric(const FrameVector& v, const FrameVector& w) {
    return -v.v1 * w.v1 + v.v2 * w.v2 + v.v3 * w.v3;
}

inline double frame_norm_inf(const FrameVector& v) {
    return std::max({std::fabs(v.v1), std::fabs(v.v2), std::fabs(v.v3)});
}

/// Vector product pinned by g(v x w, z) = dx1^dx2^dx3(v, w, z):
/// the Euclidean cross with the first component negated.
inline FrameVector cross(const FrameVector& v, const FrameVector& w) {
    return {-(v.v2 * w.v3 - v.v3 * w.v2),
            v.v3 * w.v1 - v.v1 * w.v3,
            v.v1 * w.v2 - v.v2 * w.v1};
}

/// Connection term Gamma(V, X) = sum V^i X^j nabla_{E_i} E_j from the
/// Levi-Civita table of g+.
inline FrameVector connection_term(const FrameVector& V, const FrameVector& X) {
    return {-0.5 * (V.v2 * X.v3 + V.v3 * X.v2),
            -0.5 * (V.v1 * X.v3 + V.v3 * X.v1),
            0.5 * (V.v1 * X.v2 - V.v2 * X.v1)};
}

/// Frame components of a coordinate-basis tangent vector at base point p.
inline FrameVector frame_components(const Nil3Point& p, double dx1, double dx2, double dx3) {
    return {dx1, dx2, dx3 - 0.5 * (p.x1 * dx2 - p.x2 * dx1)};
}

/// Coordinate components of a frame vector at base point p (inverse pushforward).
inline std::array<double, 3> coordinate_components(const Nil3Point& p, const FrameVector& v) {
    return {v.v1, v.v2, v.v3 + 0.5 * (p.x1 * v.v2 - p.x2 * v.v1)};
}

using CurveFn = std::function<Nil3Point(double)>;
using MapFn = std::function<Nil3Point(double, double)>;
using FrameFieldFn = std::function<FrameVector(double)>;
using FrameField2Fn = std::function<FrameVector(double, double)>;

/// gamma^{-1} dgamma/ds in the frame, from the curve value and coordinate
/// velocity at s.
FrameVector left_translate_velocity(const Nil3Point& gamma, double d1, double d2, double d3);

/// Same, with the coordinate velocity taken by central differences of step h.
FrameVector left_translate_velocity(const CurveFn& gamma, double s, double h = 1e-5);

/// Covariant derivative of a frame field X along a one-parameter map with
/// velocity V (frame components), given the plain parameter derivative dX.
inline FrameVector covariant_derivative(const FrameVector& dX, const FrameVector& V,
                                        const FrameVector& X) {
    return dX + connection_term(V, X);
}

/// Covariant derivative along a curve: FD of the field plus the connection
/// contraction with the curve's left-translated velocity.
FrameVector covariant_derivative(const FrameFieldFn& X, const CurveFn& base, double s,
                                 double h = 1e-5);

/// Covariant derivative of a field on a 2-parameter map along parameter
/// `direction` (0 = first, 1 = second).
FrameVector covariant_derivative(const FrameField2Fn& X, const MapFn& base, int direction,
                                 double u, double v, double h = 1e-5);

/// Frame vector with para-complex components, e.g. f_z = sum phi^j E_j.
struct PcFrameVector {
    ParaComplex c1, c2, c3;

    PcFrameVector operator+(const PcFrameVector& o) const { return {c1 + o.c1, c2 + o.c2, c3 + o.c3}; }
    PcFrameVector operator-(const PcFrameVector& o) const { return {c1 - o.c1, c2 - o.c2, c3 - o.c3}; }
    PcFrameVector operator*(const ParaComplex& z) const { return {c1 * z, c2 * z, c3 * z}; }
    PcFrameVector operator*(double c) const { return {c1 * c, c2 * c, c3 * c}; }
};

inline PcFrameVector pc_frame(const FrameVector& x, const FrameVector& y, ChartKind kind) {
    return {chart_dz(x.v1, y.v1, kind), chart_dz(x.v2, y.v2, kind), chart_dz(x.v3, y.v3, kind)};
}

inline ParaComplex metric(const PcFrameVector& v, const FrameVector& w) {
    return v.c1 * (-w.v1) + v.c2 * w.v2 + v.c3 * w.v3;
}

inline ParaComplex metric(const PcFrameVector& v, const PcFrameVector& w) {
    return v.c1 * w.c1 * (-1.0) + v.c2 * w.c2 + v.c3 * w.c3;
}

inline PcFrameVector connection_term(const PcFrameVector& V, const PcFrameVector& X) {
    return {(V.c2 * X.c3 + V.c3 * X.c2) * (-0.5),
            (V.c1 * X.c3 + V.c3 * X.c1) * (-0.5),
            (V.c1 * X.c2 - V.c2 * X.c1) * 0.5};
}

}  // namespace nilscroll
