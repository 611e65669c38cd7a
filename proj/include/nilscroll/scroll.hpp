#pragma once

#include <optional>

#include "nilscroll/nil3.hpp"
#include "nilscroll/nullcurve.hpp"

namespace nilscroll {

/// Null scroll f(s,t) = gamma(s) . exp(t B~(s)) over a null base curve with a
/// light-cone ruling. `frame` is attached when the scroll was produced from a
/// null frame (k0 = 0), enabling the closed-form Abresch-Rosenberg route.
struct NullScroll {
    NullCurve base;
    Ruling ruling;
    std::optional<NullFrame> frame;
    Span span{-1.0, 1.0};
    Span t_span{-1.0, 1.0};

    Nil3Point eval(double s, double t) const;
    MapFn as_map() const;
};

struct ScrollPartials {
    FrameVector fs, ft;
    double D3 = 0.0;  // g(f_s, E3)
};

/// The closed forms of f_s and f_t in the left-invariant frame.
ScrollPartials scroll_partials(const NullScroll& f, double s, double t);

struct FundamentalData {
    double g11 = 0.0, g12 = 0.0;
    double h11 = 0.0, h12 = 0.0, h22 = 0.0;
    double H = 0.0;
    FrameVector N;
    double u = 0.0;   // conformal factor log; filled by the chart-aware overload
    double D3 = 0.0;
};

/// First/second fundamental form and mean curvature from the closed-form
/// polynomials and the connection table (no finite differences).
/// Throws DegeneratePoint where g12 vanishes.
FundamentalData fundamental_data(const NullScroll& f, double s, double t);

enum class MinimalityClass { InnerZero, TwoBeta, NotMinimal };

const char* to_string(MinimalityClass c);

/// Classifies by sampling g(A,B~) and g(A,B) - 2 beta along the span.
MinimalityClass minimality_class(const NullScroll& f, int samples = 201, double tol = 1e-9);

/// Null chart s = 8 p(x), t = 1/(p(x)+q(y)) with the induced coordinate data.
/// S, T carry an attached Abresch-Rosenberg decomposition Q = l S + lbar T.
struct NullChart {
    ScalarFn p, px, q, qy;
    std::function<double(double)> s_of_x, sx;
    std::function<double(double, double)> t_of_xy, tx, ty;
    std::optional<ScalarFn> S, T;

    double s(double x) const { return s_of_x(x); }
    double t(double x, double y) const { return t_of_xy(x, y); }
    /// Liouville solution w = log(-p_x q_y / (p+q)^2).
    double w(double x, double y) const;
};

NullChart chart_from_pq(ScalarFn p, ScalarFn px, ScalarFn q, ScalarFn qy);
/// p = x/8, q = 1/y with the smooth extension t = y/(xy/8 + 1) through y = 0.
NullChart chart_section31();

struct SupportValue {
    double closed_form = 0.0;   // sqrt(2) eps |s_x t_y|^{1/2}
    double definitional = 0.0;  // -e^{u/2} g(N, E3)
    int epsilon = 1;            // sgn g(f_s x f_t, E3)
};

SupportValue support_function(const NullScroll& f, const NullChart& chart, double x, double y);

/// True when g(f_s x f_t, E3) vanishes identically on the grid (E3 tangent,
/// i.e. the scroll is part of a Hopf cylinder).
bool hopf_cylinder(const NullScroll& f, const GridSpec& grid, double tol = 1e-9);

struct ARValue {
    ParaComplex closed_form;   // (l/4) s_x^2 k1; frame route
    ParaComplex definitional;  // ((2H - i')/4) Q~ - (phi^3)^2/4 with H = 0; FD route
};

ARValue abresch_rosenberg(const NullScroll& f, const NullChart& chart, double x, double y);

struct NullCoordCheck {
    double s = 0.0, t = 0.0;
    double conformal_residual = 0.0;  // |g11 s_x + 2 g12 t_x|
    double sy_residual = 0.0;         // |s_y|
};

NullCoordCheck null_coordinates(const NullScroll& f, const NullChart& chart, double x, double y);

/// |1/2 w_zzbar + e^w| with w_zzbar = w_xy in null coordinates, by central
/// differences of step h. Throws OutOfGrid when the stencil leaves the chart.
double liouville_residual(const NullChart& chart, double x, double y, double h = 1e-3);

/// FD probe of an arbitrary Nil3-valued map over a null-coordinate chart:
/// pushforwards, normal, conformal factor, mean curvature, Hopf coefficient,
/// support function and definitional AR coefficient.
struct NilSurfaceProbe {
    FrameVector Fx, Fy, N;
    double e_u = 0.0;
    double H = 0.0;
    ParaComplex fz1, fz2, fz3;
    ParaComplex Qtilde;
    ParaComplex Q_def;
    double support = 0.0;
    int epsilon = 1;
    double conformal_residual = 0.0;
};

NilSurfaceProbe probe_surface(const MapFn& f, double x, double y, double h1 = 1e-5,
                              double h2 = 1e-4);

}  // namespace nilscroll
