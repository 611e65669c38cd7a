#include "nilscroll/scroll.hpp"

#include <cmath>

#include "nilscroll/errors.hpp"

namespace nilscroll {

Nil3Point NullScroll::eval(double s, double t) const {
    return group_mul(base.gamma(s), lie_exp(t * ruling.Btilde.f(s)));
}

MapFn NullScroll::as_map() const {
    const NullScroll copy = *this;
    return [copy](double s, double t) { return copy.eval(s, t); };
}

ScrollPartials scroll_partials(const NullScroll& f, double s, double t) {
    const FrameVector A = f.base.A.f(s);
    const FrameVector B = f.ruling.Btilde.f(s);
    const FrameVector dB = f.ruling.Btilde.df(s);
    const double Y = A.v1 * B.v2 - A.v2 * B.v1;
    const double W = B.v2 * dB.v1 - B.v1 * dB.v2;

    ScrollPartials out;
    out.D3 = A.v3 + t * (dB.v3 + Y) + 0.5 * t * t * W;
    out.fs = {A.v1 + t * dB.v1, A.v2 + t * dB.v2, out.D3};
    out.ft = B;
    return out;
}

FundamentalData fundamental_data(const NullScroll& f, double s, double t) {
    const FrameVector A = f.base.A.f(s);
    const FrameCurve& Bt = f.ruling.Btilde;
    const FrameVector B = Bt.f(s);
    const FrameVector dB = Bt.df(s);
    const double Y = A.v1 * B.v2 - A.v2 * B.v1;
    const double W = B.v2 * dB.v1 - B.v1 * dB.v2;
    const double gAB = metric(A, B);

    FundamentalData out;
    // quartic/quadratic t-polynomials of the first fundamental form
    out.g11 = t * (2.0 * metric(A, dB) + 2.0 * Y * A.v3) +
              t * t * (metric(dB, dB) + 2.0 * Y * dB.v3 + Y * Y + W * A.v3) +
              t * t * t * W * (dB.v3 + Y) + 0.25 * t * t * t * t * W * W;
    out.g12 = gAB + t * Y * B.v3 + 0.5 * t * t * W * B.v3;
    if (std::fabs(out.g12) < 1e-12)
        throw DegeneratePoint("fundamental_data: g12 vanishes at the requested point");

    const ScrollPartials sp = scroll_partials(f, s, t);
    out.D3 = sp.D3;
    const FrameVector n_raw = cross(sp.fs, sp.ft);
    out.N = (-1.0 / out.g12) * n_raw;

    // h22 = g(nabla_t f_t, N) with nabla_t f_t = Gamma(B, B)
    out.h22 = B.v3 * B.v3;

    // h12 = -P/g12 with P = g(nabla_s f_t, f_s x f_t); compact closed form
    const double P1 = sp.fs.v1, P2 = sp.fs.v2, D = sp.D3;
    const double YtW = Y + t * W;
    const double P = -D * W - B.v3 * (A.v1 * dB.v2 - A.v2 * dB.v1) -
                     0.5 * B.v3 * B.v3 * D * D + 0.5 * B.v3 * B.v3 * (P1 * P1 - P2 * P2) +
                     dB.v3 * YtW + 0.5 * YtW * YtW;
    out.h12 = -P / out.g12;

    // h11 = g(nabla_s f_s, N) from analytic s-derivatives of f_s
    const FrameCurve dA_curve = with_fd_derivatives(f.base.A);
    const FrameVector dA = dA_curve.df(s);
    const FrameCurve B2 = with_fd_derivatives(Bt);
    const FrameVector d2B = B2.d2f(s);
    const double dY = dA.v1 * B.v2 + A.v1 * dB.v2 - dA.v2 * B.v1 - A.v2 * dB.v1;
    const double dW = B.v2 * d2B.v1 - B.v1 * d2B.v2;
    const FrameVector dfs = {dA.v1 + t * d2B.v1, dA.v2 + t * d2B.v2,
                             dA.v3 + t * (d2B.v3 + dY) + 0.5 * t * t * dW};
    out.h11 = metric(dfs + connection_term(sp.fs, sp.fs), out.N);

    out.H = -(out.g11 * out.h22 - 2.0 * out.g12 * out.h12) / (2.0 * out.g12 * out.g12);
    out.u = std::nan("");
    return out;
}

const char* to_string(MinimalityClass c) {
    switch (c) {
        case MinimalityClass::InnerZero: return "InnerZero";
        case MinimalityClass::TwoBeta: return "TwoBeta";
        default: return "NotMinimal";
    }
}

MinimalityClass minimality_class(const NullScroll& f, int samples, double tol) {
    double m_inner = 0.0, m_two = 0.0;
    const FrameCurve induced = f.ruling.induced();
    for (int i = 0; i < samples; ++i) {
        const double s = f.span.lo + f.span.length() * i / (samples - 1);
        const FrameVector A = f.base.A.f(s);
        m_inner = std::max(m_inner, std::fabs(metric(A, f.ruling.Btilde.f(s))));
        m_two = std::max(m_two, std::fabs(metric(A, induced.f(s)) - 2.0 * f.ruling.beta(s)));
    }
    if (m_two <= tol) return MinimalityClass::TwoBeta;
    if (m_inner <= tol) return MinimalityClass::InnerZero;
    return MinimalityClass::NotMinimal;
}

double NullChart::w(double x, double y) const {
    if (!p || !q) throw ChartInvalid("NullChart::w needs the (p, q) form");
    const double pq = p(x) + q(y);
    const double num = -px(x) * qy(y);
    if (pq == 0.0 || !(num > 0.0))
        throw ChartInvalid("NullChart::w: requires p+q != 0 and p_x q_y < 0");
    return std::log(num / (pq * pq));
}

NullChart chart_from_pq(ScalarFn p, ScalarFn px, ScalarFn q, ScalarFn qy) {
    NullChart c;
    c.p = p;
    c.px = px;
    c.q = q;
    c.qy = qy;
    c.s_of_x = [p](double x) { return 8.0 * p(x); };
    c.sx = [px](double x) { return 8.0 * px(x); };
    auto t_of = [p, q](double x, double y) {
        const double pq = p(x) + q(y);
        if (pq == 0.0) throw ChartInvalid("NullChart: p + q vanishes");
        return 1.0 / pq;
    };
    c.t_of_xy = t_of;
    c.tx = [px, t_of](double x, double y) {
        const double t = t_of(x, y);
        return -px(x) * t * t;
    };
    c.ty = [qy, t_of](double x, double y) {
        const double t = t_of(x, y);
        return -qy(y) * t * t;
    };
    return c;
}

NullChart chart_section31() {
    NullChart c = chart_from_pq([](double x) { return x / 8.0; }, constant_fn(1.0 / 8.0),
                                [](double y) { return 1.0 / y; },
                                [](double y) { return -1.0 / (y * y); });
    // smooth extension through y = 0 (t = y / (xy/8 + 1))
    c.t_of_xy = [](double x, double y) {
        const double den = x * y / 8.0 + 1.0;
        if (den == 0.0) throw ChartInvalid("section 3.1 chart: xy/8 + 1 vanishes");
        return y / den;
    };
    auto t_of = c.t_of_xy;
    c.tx = [t_of](double x, double y) {
        const double t = t_of(x, y);
        return -t * t / 8.0;
    };
    c.ty = [](double x, double y) {
        const double den = x * y / 8.0 + 1.0;
        return 1.0 / (den * den);
    };
    return c;
}

SupportValue support_function(const NullScroll& f, const NullChart& chart, double x, double y) {
    const double s = chart.s(x);
    const double t = chart.t(x, y);
    const double sx = chart.sx(x);
    const double ty = chart.ty(x, y);

    const ScrollPartials sp = scroll_partials(f, s, t);
    const FrameVector n_raw = cross(sp.fs, sp.ft);
    const double g12 = metric(sp.fs, sp.ft);
    if (std::fabs(g12) < 1e-12) throw ChartInvalid("support_function: degenerate point");

    SupportValue out;
    out.epsilon = n_raw.v3 >= 0.0 ? 1 : -1;
    out.closed_form = std::sqrt(2.0) * out.epsilon * std::sqrt(std::fabs(sx * ty));

    const double e_u = 2.0 * g12 * sx * ty;
    if (!(e_u > 0.0)) throw ChartInvalid("support_function: chart not conformal here (e^u <= 0)");
    const FrameVector N = (-1.0 / g12) * n_raw;
    out.definitional = -std::sqrt(e_u) * N.v3;
    return out;
}

bool hopf_cylinder(const NullScroll& f, const GridSpec& grid, double tol) {
    for (int i = 0; i < grid.ns; ++i)
        for (int j = 0; j < grid.nt; ++j) {
            const ScrollPartials sp = scroll_partials(f, grid.s(i), grid.t(j));
            if (std::fabs(cross(sp.fs, sp.ft).v3) > tol) return false;
        }
    return true;
}

ARValue abresch_rosenberg(const NullScroll& f, const NullChart& chart, double x, double y) {
    if (!f.frame)
        throw BadInput("abresch_rosenberg: scroll carries no null frame (k1 unavailable)");
    const double s = chart.s(x);
    const double sx = chart.sx(x);

    ARValue out;
    out.closed_form = pc_l * (0.25 * sx * sx * f.frame->k1(s));

    const MapFn map = [&f, &chart](double xx, double yy) {
        return f.eval(chart.s(xx), chart.t(xx, yy));
    };
    const NilSurfaceProbe probe = probe_surface(map, x, y);
    out.definitional = (pc_i * (-0.25)) * probe.Qtilde - (probe.fz3 * probe.fz3) * 0.25;
    return out;
}

NullCoordCheck null_coordinates(const NullScroll& f, const NullChart& chart, double x, double y) {
    NullCoordCheck out;
    out.s = chart.s(x);
    out.t = chart.t(x, y);
    out.sy_residual = 0.0;  // s depends on x only by construction
    const FundamentalData fd = fundamental_data(f, out.s, out.t);
    out.conformal_residual = std::fabs(fd.g11 * chart.sx(x) + 2.0 * fd.g12 * chart.tx(x, y));
    return out;
}

double liouville_residual(const NullChart& chart, double x, double y, double h) {
    try {
        const double wpp = chart.w(x + h, y + h);
        const double wpm = chart.w(x + h, y - h);
        const double wmp = chart.w(x - h, y + h);
        const double wmm = chart.w(x - h, y - h);
        const double w_xy = (wpp - wpm - wmp + wmm) / (4.0 * h * h);
        return 0.5 * w_xy + std::exp(chart.w(x, y));
    } catch (const ChartInvalid&) {
        throw OutOfGrid("liouville_residual: stencil leaves the valid chart region");
    }
}

namespace {

PcFrameVector promote(const FrameVector& v) {
    return {ParaComplex{v.v1}, ParaComplex{v.v2}, ParaComplex{v.v3}};
}

}  // namespace

NilSurfaceProbe probe_surface(const MapFn& f, double x, double y, double h1, double h2) {
    auto pushforwards = [&f, h1](double xx, double yy) {
        const Nil3Point base = f(xx, yy);
        const Nil3Point xp = f(xx + h1, yy), xm = f(xx - h1, yy);
        const Nil3Point yp = f(xx, yy + h1), ym = f(xx, yy - h1);
        const double inv = 0.5 / h1;
        const FrameVector Fx = frame_components(base, (xp.x1 - xm.x1) * inv, (xp.x2 - xm.x2) * inv,
                                                (xp.x3 - xm.x3) * inv);
        const FrameVector Fy = frame_components(base, (yp.x1 - ym.x1) * inv, (yp.x2 - ym.x2) * inv,
                                                (yp.x3 - ym.x3) * inv);
        return std::pair<FrameVector, FrameVector>{Fx, Fy};
    };

    NilSurfaceProbe out;
    const auto [Fx, Fy] = pushforwards(x, y);
    out.Fx = Fx;
    out.Fy = Fy;
    out.e_u = 2.0 * metric(Fx, Fy);
    out.conformal_residual = std::max(std::fabs(metric(Fx, Fx)), std::fabs(metric(Fy, Fy)));

    const FrameVector n_raw = cross(Fx, Fy);
    const double nn = metric(n_raw, n_raw);
    if (std::fabs(nn) < 1e-18)
        throw DegeneratePoint("probe_surface: degenerate tangent plane");
    out.N = (-1.0 / std::sqrt(std::fabs(nn))) * n_raw;
    out.epsilon = n_raw.v3 >= 0.0 ? 1 : -1;

    const PcFrameVector fz = pc_frame(Fx, Fy, ChartKind::NullCoords);
    out.fz1 = fz.c1;
    out.fz2 = fz.c2;
    out.fz3 = fz.c3;

    // nabla_d f_z = l (d_x f_z + Gamma(Fx, f_z)) + lbar (d_y f_z + Gamma(Fy, f_z))
    auto fz_at = [&pushforwards](double xx, double yy) {
        const auto [fx, fy] = pushforwards(xx, yy);
        return pc_frame(fx, fy, ChartKind::NullCoords);
    };
    const PcFrameVector dxfz = (fz_at(x + h2, y) - fz_at(x - h2, y)) * (0.5 / h2);
    const PcFrameVector dyfz = (fz_at(x, y + h2) - fz_at(x, y - h2)) * (0.5 / h2);
    const PcFrameVector cov_x = dxfz + connection_term(promote(Fx), fz);
    const PcFrameVector cov_y = dyfz + connection_term(promote(Fy), fz);
    const PcFrameVector nabla_d_fz = cov_x * pc_l + cov_y * pc_lbar;
    out.Qtilde = metric(nabla_d_fz, out.N);

    // H = g(nabla_x Fy, N) / g(Fx, Fy)
    auto Fy_at = [&pushforwards](double xx, double yy) { return pushforwards(xx, yy).second; };
    const FrameVector dxFy = (Fy_at(x + h2, y) - Fy_at(x - h2, y)) * (0.5 / h2);
    out.H = metric(dxFy + connection_term(Fx, Fy), out.N) / metric(Fx, Fy);

    if (out.e_u > 0.0) out.support = -std::sqrt(out.e_u) * out.N.v3;
    // ((2H - i')/4) Q~ - (phi^3)^2/4 with H = 0 for minimal surfaces; the
    // FD value of H would only inject its own noise here
    out.Q_def = (pc_i * (-0.25)) * out.Qtilde - (out.fz3 * out.fz3) * 0.25;
    return out;
}

}  // namespace nilscroll
