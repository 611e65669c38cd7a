#include "nilscroll/nullcurve.hpp"

#include <cmath>
#include <memory>

#include "nilscroll/errors.hpp"

namespace nilscroll {

namespace {
constexpr double kSqrt2Inv = 0.70710678118654752440;

FrameVector col(const Mat3& M, int c) { return {M(0, c), M(1, c), M(2, c)}; }
}  // namespace

Mat3 default_init_frame() {
    Mat3 F;
    F(0, 0) = -kSqrt2Inv;
    F(1, 0) = kSqrt2Inv;
    F(0, 1) = kSqrt2Inv;
    F(1, 1) = kSqrt2Inv;
    F(2, 2) = -1.0;
    return F;
}

double frame_gram_defect(const FrameVector& A, const FrameVector& B, const FrameVector& C) {
    double d = 0.0;
    d = std::max(d, std::fabs(metric(A, B) - 1.0));
    d = std::max(d, std::fabs(metric(C, C) - 1.0));
    d = std::max(d, std::fabs(metric(A, A)));
    d = std::max(d, std::fabs(metric(B, B)));
    d = std::max(d, std::fabs(metric(A, C)));
    d = std::max(d, std::fabs(metric(B, C)));
    return d;
}

double frame_gram_defect(const Mat3& frame) {
    return frame_gram_defect(col(frame, 0), col(frame, 1), col(frame, 2));
}

NullFrame integrate_frame_system(const ScalarFn& k1, const ScalarFn& k2, const Mat3& init,
                                 Span span, double step) {
    if (frame_gram_defect(init) > 1e-10)
        throw BadInitialFrame("integrate_frame_system: init violates the Gram relations");

    const UniformGrid grid = make_grid(span, step, 0.0);
    int anchor = static_cast<int>(std::llround((0.0 - grid.s0) / grid.h));
    anchor = std::clamp(anchor, 0, grid.n - 1);

    std::vector<double> y0(9, 0.0);
    for (int r = 0; r < 3; ++r) {
        y0[r] = init(r, 0);
        y0[3 + r] = init(r, 1);
        y0[6 + r] = init(r, 2);
    }
    auto rhs = [&k1, &k2](double s, const std::vector<double>& y) {
        std::vector<double> dy(9);
        const double a = k1(s), b = k2(s);
        for (int r = 0; r < 3; ++r) {
            dy[r] = a * y[6 + r];
            dy[3 + r] = b * y[6 + r];
            dy[6 + r] = -b * y[r] - a * y[3 + r];
        }
        return dy;
    };
    const auto states = rk4_integrate(rhs, y0, grid, anchor);

    std::vector<FrameVector> A(grid.n), B(grid.n), C(grid.n);
    double drift = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        const auto& y = states[i];
        A[i] = {y[0], y[1], y[2]};
        B[i] = {y[3], y[4], y[5]};
        C[i] = {y[6], y[7], y[8]};
        drift = std::max(drift, frame_gram_defect(A[i], B[i], C[i]));
    }

    const auto nodes = grid.nodes();
    NullFrame out;
    out.A = splined_frame_curve(nodes, A);
    out.B = splined_frame_curve(nodes, B);
    out.C = splined_frame_curve(nodes, C);
    // derivatives through the frame system itself
    auto fA = out.A.f, fB = out.B.f, fC = out.C.f;
    out.A.df = [k1, fC](double s) { return k1(s) * fC(s); };
    out.B.df = [k2, fC](double s) { return k2(s) * fC(s); };
    out.C.df = [k1, k2, fA, fB](double s) { return -1.0 * (k2(s) * fA(s)) - k1(s) * fB(s); };
    auto dC = out.C.df;
    const double hk = 1e-5;
    out.B.d2f = [k2, fC, dC, hk](double s) {
        const double dk2 = (k2(s + hk) - k2(s - hk)) * (0.5 / hk);
        return dk2 * fC(s) + k2(s) * dC(s);
    };
    out.k1 = k1;
    out.k2 = k2;
    out.max_gram_drift = drift;
    out.grid = grid;
    return out;
}

NullFrame integrate_frame_system(const ScalarFn& k1, const ScalarFn& k2, Span span, double step) {
    return integrate_frame_system(k1, k2, default_init_frame(), span, step);
}

NullCurve reconstruct_curve(const FrameCurve& A, Span span, double step, double s_ref) {
    const UniformGrid grid = make_grid(span, step, s_ref);
    int anchor = static_cast<int>(std::llround((s_ref - grid.s0) / grid.h));
    anchor = std::clamp(anchor, 0, grid.n - 1);

    auto value = A.f;
    auto rhs = [value](double s, const std::vector<double>& y) {
        const FrameVector a = value(s);
        return std::vector<double>{a.v1, a.v2, a.v3 - 0.5 * y[1] * a.v1 + 0.5 * a.v2 * y[0]};
    };
    const auto states = rk4_integrate(rhs, {0.0, 0.0, 0.0}, grid, anchor);

    std::vector<double> g1(grid.n), g2(grid.n), g3(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        g1[i] = states[i][0];
        g2[i] = states[i][1];
        g3[i] = states[i][2];
    }
    const auto nodes = grid.nodes();
    auto s1 = std::make_shared<CubicSpline>(nodes, g1);
    auto s2 = std::make_shared<CubicSpline>(nodes, g2);
    auto s3 = std::make_shared<CubicSpline>(nodes, g3);

    NullCurve out;
    out.gamma = [s1, s2, s3](double s) { return Nil3Point{s1->eval(s), s2->eval(s), s3->eval(s)}; };
    out.A = A;
    out.span = span;
    return out;
}

FrameCurve flip_third(const FrameCurve& c) {
    auto flip = [](const std::function<FrameVector(double)>& f) -> std::function<FrameVector(double)> {
        if (!f) return {};
        return [f](double s) {
            FrameVector v = f(s);
            v.v3 = -v.v3;
            return v;
        };
    };
    FrameCurve out;
    out.f = flip(c.f);
    out.df = flip(c.df);
    out.d2f = flip(c.d2f);
    return out;
}

FrameCurve Ruling::induced() const { return flip_third(Btilde); }

ScalarFn compute_beta(const FrameCurve& Btilde, Span span, int samples, BetaDiagnostics* diag) {
    FrameCurve B = with_fd_derivatives(Btilde);
    auto f = B.f;
    auto df = B.df;

    auto beta_at = [f, df](double s) {
        const FrameVector b = f(s);
        const FrameVector db = df(s);
        const double nn = b.v1 * b.v1 + b.v2 * b.v2 + b.v3 * b.v3;
        if (nn < 1e-24) throw ZeroRuling("compute_beta: ruling vanishes");
        const FrameVector c = cross(b, db);
        // least squares over the three components of c = -beta b
        return -(c.v1 * b.v1 + c.v2 * b.v2 + c.v3 * b.v3) / nn;
    };

    BetaDiagnostics local;
    for (int i = 0; i < samples; ++i) {
        const double s = span.lo + span.length() * i / (samples - 1);
        const FrameVector b = f(s);
        const double nn = b.v1 * b.v1 + b.v2 * b.v2 + b.v3 * b.v3;
        if (nn < 1e-24) throw ZeroRuling("compute_beta: ruling vanishes on the span");
        if (std::fabs(metric(b, b)) > 1e-10 * std::max(1.0, nn))
            throw NotNull("compute_beta: ruling leaves the light cone");
        const double bt = beta_at(s);
        const FrameVector resid = cross(b, df(s)) + bt * b;
        local.max_cross_residual = std::max(local.max_cross_residual, frame_norm_inf(resid));
        local.max_identity_gap =
            std::max(local.max_identity_gap, std::fabs(metric(df(s), df(s)) - bt * bt));
    }
    if (local.max_cross_residual > 1e-8)
        throw NotNull("compute_beta: B~ x B~' is not proportional to B~ (non light-cone input)");
    if (diag) *diag = local;
    return beta_at;
}

Ruling make_ruling(FrameCurve Btilde, Span span) {
    Ruling r;
    r.Btilde = with_fd_derivatives(std::move(Btilde));
    r.beta = compute_beta(r.Btilde, span);
    return r;
}

Ruling normalize_ruling(const Ruling& r, Span span, int samples, double tol) {
    double min_abs = 1e300, max_abs = 0.0, max_half_gap = 0.0;
    bool sign_change = false;
    double first_sign = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double s = span.lo + span.length() * i / (samples - 1);
        const double b = r.beta(s);
        min_abs = std::min(min_abs, std::fabs(b));
        max_abs = std::max(max_abs, std::fabs(b));
        max_half_gap = std::max(max_half_gap, std::fabs(b - 0.5));
        if (std::fabs(b) > tol) {
            if (first_sign == 0.0) first_sign = b > 0 ? 1.0 : -1.0;
            if ((b > 0 ? 1.0 : -1.0) != first_sign) sign_change = true;
        }
    }
    if (max_abs <= tol) return r;       // beta identically zero
    if (max_half_gap <= tol) return r;  // already at beta = 1/2
    if (min_abs <= tol || sign_change)
        throw MixedBeta("normalize_ruling: beta changes sign or vanishes inside the span");

    Ruling out;
    if (max_abs - min_abs <= tol) {
        // constant beta: a constant rescale keeps the derivatives exact
        const double c = 1.0 / (2.0 * r.beta(0.5 * (span.lo + span.hi)));
        auto scale = [c](const std::function<FrameVector(double)>& g)
            -> std::function<FrameVector(double)> {
            if (!g) return {};
            return [c, g](double s) { return c * g(s); };
        };
        out.Btilde.f = scale(r.Btilde.f);
        out.Btilde.df = scale(r.Btilde.df);
        out.Btilde.d2f = scale(r.Btilde.d2f);
        out.Btilde = with_fd_derivatives(std::move(out.Btilde));
    } else {
        // varying beta: resample the rescaled curve onto a fine grid; spline
        // derivatives stay smooth where direct differencing of the closure
        // would be too noisy for the downstream B'' uses
        auto beta = r.beta;
        auto f = r.Btilde.f;
        const UniformGrid grid = make_grid({span.lo - 0.05 * span.length(),
                                            span.hi + 0.05 * span.length()}, 3e-5, span.lo);
        std::vector<FrameVector> vals(grid.n);
        for (int i = 0; i < grid.n; ++i) {
            const double s = grid.at(i);
            vals[i] = (1.0 / (2.0 * beta(s))) * f(s);
        }
        out.Btilde = splined_frame_curve(grid.nodes(), vals);
    }
    out.beta = compute_beta(out.Btilde, span);
    return out;
}

Curvatures extract_curvatures(const NullFrame& frame, double fd_step) {
    auto A = frame.A.f, B = frame.B.f, C = frame.C.f;
    const double h = fd_step;
    auto dA = [A, h](double s) { return (A(s + h) - A(s - h)) * (0.5 / h); };
    auto dB = [B, h](double s) { return (B(s + h) - B(s - h)) * (0.5 / h); };
    Curvatures out;
    out.k0 = [dA, B](double s) { return metric(dA(s), B(s)); };
    out.k1 = [dA, C](double s) { return metric(dA(s), C(s)); };
    out.k2 = [dB, C](double s) { return metric(dB(s), C(s)); };
    return out;
}

}  // namespace nilscroll
