#pragma once

#include <functional>

#include "nilscroll/curves.hpp"
#include "nilscroll/mat3.hpp"
#include "nilscroll/nil3.hpp"

namespace nilscroll {

/// Null frame (A, B, C) along a null curve with k0 = 0:
/// g(A,B) = g(C,C) = 1, the other pairings vanish, and
/// A' = k1 C, B' = k2 C, C' = -k2 A - k1 B.
struct NullFrame {
    FrameCurve A, B, C;
    ScalarFn k1, k2;
    double max_gram_drift = 0.0;
    UniformGrid grid;
};

/// Same default initial frame as the Minkowski side (det +1).
Mat3 default_init_frame();

double frame_gram_defect(const Mat3& frame);

/// Gram defect of frame vectors evaluated at one parameter value.
double frame_gram_defect(const FrameVector& A, const FrameVector& B, const FrameVector& C);

NullFrame integrate_frame_system(const ScalarFn& k1, const ScalarFn& k2, const Mat3& init,
                                 Span span, double step);
NullFrame integrate_frame_system(const ScalarFn& k1, const ScalarFn& k2, Span span, double step);

/// Base curve with left-translated velocity A.
struct NullCurve {
    CurveFn gamma;
    FrameCurve A;
    Span span;
};

/// gamma(0) = origin, gamma1' = A1, gamma2' = A2,
/// gamma3' = A3 - gamma2 A1 / 2 + A2 gamma1 / 2.
NullCurve reconstruct_curve(const FrameCurve& A, Span span, double step, double s_ref = 0.0);

/// Light-cone ruling B~ with its beta invariant and the induced vector
/// B = B1 e1 + B2 e2 - B3 e3.
struct Ruling {
    FrameCurve Btilde;
    ScalarFn beta;
    FrameCurve induced() const;
};

/// Flip the third component (and derivatives) of a frame curve.
FrameCurve flip_third(const FrameCurve& c);

struct BetaDiagnostics {
    double max_cross_residual = 0.0;   // | B~ x B~' + beta B~ | over the span
    double max_identity_gap = 0.0;     // | g(B~',B~') - beta^2 |
};

/// Least-squares beta from B~ x B~' = -beta B~, validated over the span.
/// Throws NotNull / ZeroRuling on invalid input.
ScalarFn compute_beta(const FrameCurve& Btilde, Span span, int samples = 201,
                      BetaDiagnostics* diag = nullptr);

Ruling make_ruling(FrameCurve Btilde, Span span);

/// Rescale so beta becomes 1/2 when beta vanishes nowhere; identity when
/// beta is identically 0. Throws MixedBeta otherwise.
Ruling normalize_ruling(const Ruling& r, Span span, int samples = 201, double tol = 1e-9);

struct Curvatures {
    ScalarFn k0, k1, k2;
};

/// k0 = g(A',B), k1 = g(A',C), k2 = g(B',C) by central differences.
Curvatures extract_curvatures(const NullFrame& frame, double fd_step = 1e-5);

}  // namespace nilscroll
