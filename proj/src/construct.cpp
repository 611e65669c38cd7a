#include "nilscroll/construct.hpp"

#include <cmath>

#include "nilscroll/errors.hpp"

namespace nilscroll {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2Inv = 0.70710678118654752440;

double sample_min_abs(const ScalarFn& f, Span span, int n) {
    double m = 1e300;
    for (int i = 0; i < n; ++i) m = std::min(m, std::fabs(f(span.lo + span.length() * i / (n - 1))));
    return m;
}

double sample_max_abs(const ScalarFn& f, Span span, int n) {
    double m = 0.0;
    for (int i = 0; i < n; ++i) m = std::max(m, std::fabs(f(span.lo + span.length() * i / (n - 1))));
    return m;
}

}  // namespace

FrameCurve builtin_ruling(BuiltinRuling which) {
    FrameCurve c;
    switch (which) {
        case BuiltinRuling::Circle:
            c.f = [](double s) { return FrameVector{0.5, 0.5 * std::cos(s), 0.5 * std::sin(s)}; };
            c.df = [](double s) { return FrameVector{0.0, -0.5 * std::sin(s), 0.5 * std::cos(s)}; };
            c.d2f = [](double s) { return FrameVector{0.0, -0.5 * std::cos(s), -0.5 * std::sin(s)}; };
            break;
        case BuiltinRuling::Hyperbola:
            c.f = [](double s) { return FrameVector{0.5 * std::cosh(s), 0.5 * std::sinh(s), -0.5}; };
            c.df = [](double s) { return FrameVector{0.5 * std::sinh(s), 0.5 * std::cosh(s), 0.0}; };
            c.d2f = [](double s) { return FrameVector{0.5 * std::cosh(s), 0.5 * std::sinh(s), 0.0}; };
            break;
        case BuiltinRuling::Parabola:
            c.f = [](double s) {
                return FrameVector{s * s / 8.0 + 0.5, 0.5 * s, s * s / 8.0 - 0.5};
            };
            c.df = [](double s) { return FrameVector{s / 4.0, 0.5, s / 4.0}; };
            c.d2f = [](double) { return FrameVector{0.25, 0.0, 0.25}; };
            break;
    }
    return c;
}

NullScroll construct_beta_zero(const ConstantDirectionSpec& spec, const ScalarFn& alpha, Span span,
                               const ConstructOptions& opt) {
    const FrameVector c{spec.c1, spec.c2, spec.c3};
    if (std::fabs(metric(c, c)) > 1e-12)
        throw NotNull("construct_beta_zero: direction (c1,c2,c3) must be null");
    if (std::fabs(spec.c3) < 1e-12) throw ZeroC3("construct_beta_zero: needs c3 != 0");
    if (sample_min_abs(alpha, span, opt.samples) < 1e-12)
        throw AlphaVanishes("construct_beta_zero: alpha vanishes on the span");

    // mu = mu_ref exp(int_{s_ref}^s k), integrated on the working grid
    const UniformGrid grid = make_grid(span, opt.step, spec.s_ref);
    const auto nodes = grid.nodes();
    std::vector<double> kv(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i) kv[i] = spec.k(nodes[i]);
    std::vector<double> K = cumulative_integral(kv, grid.h);
    int anchor = static_cast<int>(std::llround((spec.s_ref - grid.s0) / grid.h));
    anchor = std::clamp(anchor, 0, grid.n - 1);
    const double K0 = K[anchor];
    for (double& k : K) k -= K0;
    auto Kfn = splined_scalar(nodes, K);
    const double mu_ref = spec.mu_ref;
    ScalarFn mu = [Kfn, mu_ref](double s) { return mu_ref * std::exp(Kfn(s)); };

    FrameCurve Btilde;
    ScalarFn kfn = spec.k;
    Btilde.f = [mu, c](double s) { return mu(s) * c; };
    Btilde.df = [mu, kfn, c](double s) { return kfn(s) * mu(s) * c; };
    Btilde = with_fd_derivatives(std::move(Btilde));

    const FrameVector ci{spec.c1, spec.c2, -spec.c3};
    FrameCurve A;
    A.f = [mu, alpha, ci](double s) { return alpha(s) * mu(s) * ci; };
    A = with_fd_derivatives(std::move(A));

    NullScroll out;
    out.base = reconstruct_curve(A, span, opt.step);
    out.ruling.Btilde = Btilde;
    out.ruling.beta = compute_beta(Btilde, span);
    out.span = span;
    return out;
}

NullScroll construct_beta_half(const Ruling& ruling, const ScalarFn& b, Span span,
                               const ConstructOptions& opt) {
    for (int i = 0; i < opt.samples; ++i) {
        const double s = span.lo + span.length() * i / (opt.samples - 1);
        if (std::fabs(ruling.beta(s) - 0.5) > opt.tol)
            throw BetaNotHalf("construct_beta_half: ruling must be normalized to beta = 1/2");
    }

    FrameCurve B = with_fd_derivatives(ruling.induced());
    auto Bf = B.f, dBf = B.df, d2Bf = B.d2f;
    ScalarFn bfn = b;
    FrameCurve A;
    A.f = [Bf, dBf, d2Bf, bfn](double s) {
        const FrameVector Bv = Bf(s), dB = dBf(s), d2B = d2Bf(s);
        const double bb = bfn(s);
        return -4.0 * (2.0 * metric(d2B, d2B) * Bv + d2B) - 2.0 * bb * (dB + 0.25 * bb * Bv);
    };
    A = with_fd_derivatives(std::move(A));

    for (int i = 0; i < opt.samples; ++i) {
        const double s = span.lo + span.length() * i / (opt.samples - 1);
        const FrameVector Av = A.f(s);
        if (std::fabs(metric(Av, Av)) > opt.tol || std::fabs(metric(Av, Bf(s)) - 1.0) > opt.tol)
            throw BadInput("construct_beta_half: constructed A fails its null/g(A,B)=1 contract");
    }

    NullScroll out;
    out.base = reconstruct_curve(A, span, opt.step);
    out.ruling = ruling;
    out.span = span;

    if (sample_max_abs(b, span, opt.samples) == 0.0) {
        // Null frame (A, B, 2B') with curvatures k1 = 4 g(B'',B''), k2 = 1/2
        NullFrame frame;
        frame.A = A;
        frame.B = B;
        FrameCurve C;
        C.f = [dBf](double s) { return 2.0 * dBf(s); };
        C.df = [d2Bf](double s) { return 2.0 * d2Bf(s); };
        frame.C = with_fd_derivatives(std::move(C));
        frame.k1 = [d2Bf](double s) {
            const FrameVector d2B = d2Bf(s);
            return 4.0 * metric(d2B, d2B);
        };
        frame.k2 = constant_fn(0.5);
        frame.grid = make_grid(span, opt.step, 0.0);
        double drift = 0.0;
        for (int i = 0; i < opt.samples; ++i) {
            const double s = span.lo + span.length() * i / (opt.samples - 1);
            drift = std::max(drift, frame_gram_defect(frame.A.f(s), frame.B.f(s), frame.C.f(s)));
        }
        frame.max_gram_drift = drift;
        out.frame = frame;
    }
    return out;
}

NullScroll construct_tangent(const Ruling& ruling, const ScalarFn& alpha, Span span, Span t_span,
                             const ConstructOptions& opt) {
    if (sample_min_abs(ruling.beta, span, opt.samples) < opt.tol)
        throw BetaZero("construct_tangent: needs beta != 0 on the span");
    auto b3 = [&ruling](double s) { return ruling.Btilde.f(s).v3; };
    if (sample_min_abs(b3, span, opt.samples) < opt.tol)
        throw ZeroB3("construct_tangent: needs B3 != 0 on the span");
    if (sample_min_abs(alpha, span, opt.samples) < 1e-12)
        throw AlphaVanishes("construct_tangent: alpha vanishes on the span");

    auto Bf = ruling.Btilde.f;
    ScalarFn a = alpha;
    FrameCurve A;
    A.f = [Bf, a](double s) { return a(s) * Bf(s); };
    A = with_fd_derivatives(std::move(A));

    NullScroll out;
    out.base = reconstruct_curve(A, span, opt.step);
    out.ruling = ruling;
    out.span = span;
    out.t_span = t_span;
    return out;
}

NullScroll construct_from_curvature(const ScalarFn& k1, Span span, const ConstructOptions& opt) {
    NullFrame frame = integrate_frame_system(k1, constant_fn(0.5), span, opt.step);

    NullScroll out;
    out.base = reconstruct_curve(frame.A, span, opt.step);
    out.ruling.Btilde = flip_third(frame.B);
    out.ruling.beta = compute_beta(out.ruling.Btilde, span);
    out.span = span;
    out.frame = std::move(frame);
    return out;
}

ArDataResult construct_from_ar_data(const ScalarFn& S, const ScalarFn& p, const ScalarFn& px,
                                    const ScalarFn& q, const ScalarFn& qy, Span x_span,
                                    Span y_span, const ConstructOptions& opt) {
    if (sample_min_abs(px, x_span, opt.samples) < 1e-12)
        throw ChartInvalid("construct_from_ar_data: p_x vanishes on the x span");
    for (int i = 0; i < opt.samples; ++i) {
        const double x = x_span.lo + x_span.length() * i / (opt.samples - 1);
        for (int j = 0; j < 17; ++j) {
            const double y = y_span.lo + y_span.length() * j / 16.0;
            if (px(x) * qy(y) >= 0.0)
                throw ChartInvalid("construct_from_ar_data: requires p_x q_y < 0");
            if (std::fabs(p(x) + q(y)) < 1e-12)
                throw ChartInvalid("construct_from_ar_data: p + q vanishes on the domain");
        }
    }

    const double s_lo = 8.0 * p(x_span.lo), s_hi = 8.0 * p(x_span.hi);
    const Span s_span{std::min(s_lo, s_hi), std::max(s_lo, s_hi)};
    const bool increasing = s_hi > s_lo;

    // invert s = 8 p(x) by bisection over the (monotone) x span
    ScalarFn P = p;
    const Span xs = x_span;
    auto x_of_s = [P, xs, increasing](double s) {
        double lo = xs.lo, hi = xs.hi;
        double flo = 8.0 * P(lo) - s;
        if (!increasing) {
            std::swap(lo, hi);
            flo = 8.0 * P(lo) - s;
        }
        if (flo > 0.0) return lo;
        if (8.0 * P(hi) - s < 0.0) return hi;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (8.0 * P(mid) - s <= 0.0)
                lo = mid;
            else
                hi = mid;
            if (std::fabs(hi - lo) < 1e-15 * std::max(1.0, std::fabs(lo))) break;
        }
        return 0.5 * (lo + hi);
    };

    ScalarFn Sf = S, pxf = px;
    ScalarFn k1 = [Sf, pxf, x_of_s](double s) {
        const double x = x_of_s(s);
        const double d = pxf(x);
        return Sf(x) / (16.0 * d * d);
    };

    ArDataResult out;
    out.scroll = construct_from_curvature(k1, s_span, opt);
    out.chart = chart_from_pq(p, px, q, qy);
    out.chart.S = S;
    out.chart.T = constant_fn(0.0);
    return out;
}

GalleryEntry example_gallery(const std::string& name, double param) {
    GalleryEntry e;
    e.name = name;
    const ConstructOptions opt{};

    if (name == "circle") {
        const Span span{-2.0, 2.0};
        Ruling r;
        r.Btilde = builtin_ruling(BuiltinRuling::Circle);
        r.beta = compute_beta(r.Btilde, span);
        e.scroll = construct_beta_half(r, constant_fn(0.0), span, opt);
        e.closed_form = [](double s, double t) {
            return Nil3Point{-s + 0.5 * t, std::sin(s) + 0.5 * t * std::cos(s),
                             -0.5 * s * std::sin(s) + 0.25 * t * std::sin(s) -
                                 0.25 * t * s * std::cos(s)};
        };
        e.exact_grid = {-2.0, 2.0, 41, -1.0, 1.0, 41};
        e.working_grid = {-1.0, 1.0, 41, -1.0, 1.0, 41};
    } else if (name == "hyperbola") {
        const Span span{-2.0, 2.0};
        Ruling r;
        r.Btilde = builtin_ruling(BuiltinRuling::Hyperbola);
        r.beta = compute_beta(r.Btilde, span);
        e.scroll = construct_beta_half(r, constant_fn(0.0), span, opt);
        e.closed_form = [](double s, double t) {
            return Nil3Point{-std::sinh(s) + 0.5 * t * std::cosh(s),
                             -std::cosh(s) + 1.0 + 0.5 * t * std::sinh(s),
                             0.5 * s + 0.5 * std::sinh(s) - 0.25 * t - 0.25 * t * std::cosh(s)};
        };
        e.exact_grid = {-2.0, 2.0, 41, -1.0, 1.0, 41};
        // g12 = t^2/16: keep t away from the degenerate base line
        e.working_grid = {-1.2, 1.2, 41, 0.5, 1.4, 41};
    } else if (name == "parabola") {
        const double b = param;
        const Span span{-2.0, 2.0};
        Ruling r;
        r.Btilde = builtin_ruling(BuiltinRuling::Parabola);
        r.beta = compute_beta(r.Btilde, span);
        e.scroll = construct_beta_half(r, constant_fn(b), span, opt);
        e.closed_form = [b](double s, double t) {
            const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
            const double b2 = b * b, b3 = b2 * b, b4 = b3 * b;
            return Nil3Point{
                -b2 / 48.0 * s3 - b / 4.0 * s2 - (b2 / 4.0 + 1.0) * s + t * (s2 / 8.0 + 0.5),
                -b2 / 8.0 * s2 - b * s + 0.5 * s * t,
                -b4 / 3840.0 * s5 - b3 / 192.0 * s4 + b4 / 192.0 * s3 + b / 4.0 * s2 +
                    (1.0 - b2 / 4.0) * s +
                    t * (b2 / 384.0 * s4 - (0.125 + b2 / 32.0) * s2 + b / 4.0 * s - 0.5)};
        };
        e.exact_grid = {-2.0, 2.0, 41, -1.0, 1.0, 41};
        // g12 = (-s/2 + t(s^2/8 - 1/2)/2)^2 vanishes only at t s < 0 here
        e.working_grid = {0.3, 1.5, 41, 0.2, 1.0, 41};
    } else if (name == "vertical-plane" || name == "vertical_plane") {
        const double theta = param != 0.0 ? param : kPi / 3.0;
        const Span span{0.25, 2.25};
        ConstantDirectionSpec cd;
        cd.c1 = 1.0;
        cd.c2 = std::cos(theta);
        cd.c3 = std::sin(theta);
        cd.k = [](double s) { return 1.0 / s; };  // mu = s on s > 0
        cd.s_ref = 1.0;
        cd.mu_ref = 1.0;
        e.scroll = construct_beta_zero(cd, [](double s) { return 1.0 / s; }, span, opt);
        e.closed_form = [theta](double s, double t) {
            return Nil3Point{(1.0 + t) * s, (1.0 + t) * s * std::cos(theta),
                             (1.0 + t) * s * std::sin(theta) - 2.0 * s * std::sin(theta)};
        };
        e.exact_grid = {0.25, 2.25, 41, -1.0, 1.0, 41};
        e.working_grid = {0.3, 2.2, 41, -1.0, 1.0, 41};
    } else if (name == "horizontal-umbrella" || name == "horizontal_umbrella") {
        const Span span{-1.8, 1.8};
        e.scroll = construct_from_curvature(constant_fn(0.0), span, opt);
        const double r = kSqrt2Inv;
        e.closed_form = [r](double s, double t) {
            const double a = s - s * s * t / 8.0;
            return Nil3Point{-r * a + r * t, r * a + r * t, 0.0};
        };
        e.exact_grid = {-1.8, 1.8, 41, -1.8, 1.8, 41};
        e.working_grid = {-1.8, 1.8, 41, -1.8, 1.8, 41};
    } else if (name == "tangent") {
        const Span span{0.4, 2.4};
        FrameCurve Bt;
        Bt.f = [](double s) { return FrameVector{-1.0, std::cos(s), -std::sin(s)}; };
        Bt.df = [](double s) { return FrameVector{0.0, -std::sin(s), -std::cos(s)}; };
        Bt.d2f = [](double s) { return FrameVector{0.0, -std::cos(s), std::sin(s)}; };
        Ruling r;
        r.Btilde = Bt;
        r.beta = compute_beta(Bt, span);
        e.scroll = construct_tangent(r, constant_fn(1.0), span, {0.1, 1.0}, opt);
        e.closed_form = [](double s, double t) {
            const Nil3Point g{-s, std::sin(s), -0.5 * s * std::sin(s)};
            const double d1 = -1.0, d2 = std::cos(s);
            const double d3 = -0.5 * std::sin(s) - 0.5 * s * std::cos(s);
            return Nil3Point{g.x1 + t * d1, g.x2 + t * d2, g.x3 + t * d3};
        };
        e.exact_grid = {0.4, 2.4, 41, 0.1, 1.0, 41};
        // g12 = t^2 beta (B3)^2 / 2: keep t and |sin s| away from zero
        e.working_grid = {1.0, 2.1, 41, 0.4, 1.0, 41};
    } else {
        throw UnknownName("example_gallery: unknown surface '" + name + "'");
    }
    return e;
}

double gallery_deviation(const NullScroll& scroll, const MapFn& closed_form, const GridSpec& grid) {
    // align by left translation fitted at the grid corner
    const Nil3Point ref_c = scroll.eval(grid.s(0), grid.t(0));
    const Nil3Point ref_g = closed_form(grid.s(0), grid.t(0));
    const Nil3Point shift = group_mul(ref_g, group_inv(ref_c));

    double dev = 0.0;
    for (int i = 0; i < grid.ns; ++i)
        for (int j = 0; j < grid.nt; ++j) {
            const Nil3Point a = group_mul(shift, scroll.eval(grid.s(i), grid.t(j)));
            const Nil3Point b = closed_form(grid.s(i), grid.t(j));
            dev = std::max({dev, std::fabs(a.x1 - b.x1), std::fabs(a.x2 - b.x2),
                            std::fabs(a.x3 - b.x3)});
        }
    return dev;
}

}  // namespace nilscroll
