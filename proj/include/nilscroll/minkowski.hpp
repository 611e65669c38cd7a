#pragma once

#include <functional>
#include <vector>

#include "nilscroll/curves.hpp"
#include "nilscroll/mat3.hpp"
#include "nilscroll/paracomplex.hpp"

namespace nilscroll::mink {

/// Vector of L^3_{(-,+,+)}.
struct MinkVector {
    double t = 0.0, x = 0.0, y = 0.0;

    MinkVector operator+(const MinkVector& o) const { return {t + o.t, x + o.x, y + o.y}; }
    MinkVector operator-(const MinkVector& o) const { return {t - o.t, x - o.x, y - o.y}; }
    MinkVector operator*(double c) const { return {t * c, x * c, y * c}; }
};
inline MinkVector operator*(double c, const MinkVector& v) { return v * c; }

inline double dot(const MinkVector& v, const MinkVector& w) {
    return -v.t * w.t + v.x * w.x + v.y * w.y;
}

/// <v x w, z> = det[v w z]; Euclidean cross with the first component negated.
inline MinkVector cross(const MinkVector& v, const MinkVector& w) {
    return {-(v.x * w.y - v.y * w.x), v.y * w.t - v.t * w.y, v.t * w.x - v.x * w.t};
}

using MinkCurveFn = std::function<MinkVector(double)>;
using MinkMapFn = std::function<MinkVector(double, double)>;

/// Null Frenet frame along a null curve, integrated from prescribed
/// curvatures: A' = k1 C, B' = k2 C, C' = -k2 A - k1 B, gamma' = A.
struct MinkNullFrame {
    MinkCurveFn A, B, C, gamma;
    MinkCurveFn dA, dB, dC;  // from the frame system, not finite differences
    ScalarFn k1, k2;
    double max_gram_drift = 0.0;
    UniformGrid grid;
};

/// Default initial frame: columns A0, B0, C0 with det +1 so that the induced
/// objects carry the orientation the cross-product identities assume.
Mat3 default_init_frame();

/// Gram-matrix defect of a candidate frame (columns A, B, C) against the
/// null-frame relations <A,B> = <C,C> = 1, all other pairings 0.
double frame_gram_defect(const Mat3& frame);

MinkNullFrame integrate_mink_frame(const ScalarFn& k1, const ScalarFn& k2, const Mat3& init,
                                   Span span, double step);
MinkNullFrame integrate_mink_frame(const ScalarFn& k1, const ScalarFn& k2, Span span, double step);

/// Phi(s, t) = gamma(s) + t B(s).
MinkVector bscroll_eval(const MinkNullFrame& f, double s, double t);

/// Numerically extracted conformal data of an immersion over a para-complex
/// chart: conformal factor, mean curvature, Hopf coefficient, and the
/// Gauss-Codazzi residuals of the triple.
struct SurfaceData {
    double e_u = 0.0;          // conformal factor e^{u~}
    double H = 0.0;            // mean curvature (sign as realized by N~)
    ParaComplex Q;             // Hopf coefficient <Phi_zz, N~>
    MinkVector N;              // unit normal -i' Phi_z x Phi_zbar / |...|
    double conformal_residual = 0.0;  // defect of the chart being conformal/null
    double gauss_residual = 0.0;      // first equation of Gauss-Codazzi
    double codazzi_residual = 0.0;    // second equation, max |component|
};

SurfaceData surface_data(const MinkMapFn& Phi, ChartKind kind, double x, double y,
                         double h1 = 1e-5, double h2 = 1e-3, bool with_gc = false);

bool is_lorentz(const Mat3& M, double tol = 1e-10);
bool is_special_lorentz(const Mat3& M, double tol = 1e-10);

}  // namespace nilscroll::mink
