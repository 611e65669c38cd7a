#pragma once

#include <functional>
#include <vector>

#include "nilscroll/nil3.hpp"

namespace nilscroll {

using ScalarFn = std::function<double(double)>;

inline ScalarFn constant_fn(double c) {
    return [c](double) { return c; };
}

struct Span {
    double lo = 0.0, hi = 0.0;
    double length() const { return hi - lo; }
    bool contains(double s) const { return s >= lo && s <= hi; }
};

struct GridSpec {
    double s0 = -1.0, s1 = 1.0;
    int ns = 21;
    double t0 = -1.0, t1 = 1.0;
    int nt = 21;

    double s(int i) const { return ns > 1 ? s0 + (s1 - s0) * i / (ns - 1) : s0; }
    double t(int j) const { return nt > 1 ? t0 + (t1 - t0) * j / (nt - 1) : t0; }
    Span s_span() const { return {s0, s1}; }
};

/// Natural-form cubic spline with not-a-knot end conditions on a strictly
/// increasing knot vector.
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> xs, const std::vector<double>& ys);

    double eval(double x) const;
    double deriv(double x) const;
    double deriv2(double x) const;
    bool empty() const { return xs_.empty(); }

private:
    int interval(double x) const;
    std::vector<double> xs_;
    // per-interval cubic p_i(d) = a + b d + c d^2 + e d^3, d = x - xs_[i]
    std::vector<double> a_, b_, c_, e_;
};

/// Curve of frame vectors with derivatives; built either from closed forms
/// or from splined samples.
struct FrameCurve {
    std::function<FrameVector(double)> f;
    std::function<FrameVector(double)> df;
    std::function<FrameVector(double)> d2f;

    bool has_df() const { return static_cast<bool>(df); }
    bool has_d2f() const { return static_cast<bool>(d2f); }
};

/// Fill in missing derivatives by central differences of f.
FrameCurve with_fd_derivatives(FrameCurve c, double h = 1e-5);

/// Spline-backed frame curve through samples at uniform or general knots.
FrameCurve splined_frame_curve(const std::vector<double>& s, const std::vector<FrameVector>& v);

/// Spline-backed scalar function (shared_ptr semantics inside the closure).
ScalarFn splined_scalar(const std::vector<double>& s, const std::vector<double>& v);

/// Cumulative integral at every node of uniformly sampled values, O(h^4)
/// (cubic through neighbouring nodes per interval).
std::vector<double> cumulative_integral(const std::vector<double>& vals, double h);

/// Uniform grid over a span that always contains the anchor s_ref as a node.
struct UniformGrid {
    double s0 = 0.0;  // first node
    double h = 1e-3;
    int n = 0;  // node count
    double at(int i) const { return s0 + h * i; }
    std::vector<double> nodes() const;
};

UniformGrid make_grid(Span span, double step, double s_ref = 0.0);

/// Classic fixed-step RK4 for y' = rhs(s, y) over a grid, both directions
/// from the anchor node. Returns values at every node.
std::vector<std::vector<double>> rk4_integrate(
    const std::function<std::vector<double>(double, const std::vector<double>&)>& rhs,
    const std::vector<double>& y0, const UniformGrid& grid, int anchor_index);

}  // namespace nilscroll
