#include "nilscroll/correspondence.hpp"

#include <cmath>

#include "nilscroll/errors.hpp"

namespace nilscroll {

namespace {

FrameVector to_frame(const mink::MinkVector& v) { return {v.t, v.x, v.y}; }

FrameCurve frame_curve_from_mink(const mink::MinkCurveFn& f, const mink::MinkCurveFn& df) {
    FrameCurve out;
    out.f = [f](double s) { return to_frame(f(s)); };
    if (df) out.df = [df](double s) { return to_frame(df(s)); };
    return with_fd_derivatives(std::move(out));
}

}  // namespace

NullScroll bscroll_to_nil(const mink::MinkNullFrame& mf) {
    const Span span{mf.grid.at(0), mf.grid.at(mf.grid.n - 1)};
    for (int i = 0; i < mf.grid.n; ++i)
        if (std::fabs(mf.k2(mf.grid.at(i)) - 0.5) > 1e-9)
            throw BadFrame("bscroll_to_nil: needs k2 = 1/2");
    {
        const mink::MinkVector g0 = mf.gamma(0.0);
        if (std::max({std::fabs(g0.t), std::fabs(g0.x), std::fabs(g0.y)}) > 1e-9)
            throw BadFrame("bscroll_to_nil: base curve must pass the origin at s = 0");
    }

    // gamma3 correction: integral of -gamma2 A1/2 + gamma1 A2/2 on the grid
    const auto nodes = mf.grid.nodes();
    std::vector<double> integrand(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i) {
        const mink::MinkVector g = mf.gamma(nodes[i]);
        const mink::MinkVector A = mf.A(nodes[i]);
        integrand[i] = -0.5 * g.x * A.t + 0.5 * g.t * A.x;
    }
    std::vector<double> corr = cumulative_integral(integrand, mf.grid.h);
    // anchor the correction integral at s = 0
    int anchor = static_cast<int>(std::llround((0.0 - mf.grid.s0) / mf.grid.h));
    anchor = std::clamp(anchor, 0, mf.grid.n - 1);
    const double at0 = corr[anchor];
    for (double& c : corr) c -= at0;
    auto corr_fn = splined_scalar(nodes, corr);

    auto mg = mf.gamma;
    NullCurve base;
    base.gamma = [mg, corr_fn](double s) {
        const mink::MinkVector g = mg(s);
        return Nil3Point{g.t, g.x, g.y + corr_fn(s)};
    };
    base.A = frame_curve_from_mink(mf.A, mf.dA);
    base.span = span;

    NullScroll out;
    out.base = base;
    out.ruling.Btilde = flip_third(frame_curve_from_mink(mf.B, mf.dB));
    out.ruling.beta = compute_beta(out.ruling.Btilde, span);
    out.span = span;

    NullFrame frame;
    frame.A = base.A;
    frame.B = frame_curve_from_mink(mf.B, mf.dB);
    frame.C = frame_curve_from_mink(mf.C, mf.dC);
    frame.k1 = mf.k1;
    frame.k2 = mf.k2;
    frame.max_gram_drift = mf.max_gram_drift;
    frame.grid = mf.grid;
    out.frame = frame;
    return out;
}

DerivativeTriple derivative_of(const MapFn& f_chart, double h) {
    TripleFn fn = [f_chart, h](double x, double y) {
        const Nil3Point base = f_chart(x, y);
        const Nil3Point xp = f_chart(x + h, y), xm = f_chart(x - h, y);
        const Nil3Point yp = f_chart(x, y + h), ym = f_chart(x, y - h);
        const double inv = 0.5 / h;
        const FrameVector Fx = frame_components(base, (xp.x1 - xm.x1) * inv,
                                                (xp.x2 - xm.x2) * inv, (xp.x3 - xm.x3) * inv);
        const FrameVector Fy = frame_components(base, (yp.x1 - ym.x1) * inv,
                                                (yp.x2 - ym.x2) * inv, (yp.x3 - ym.x3) * inv);
        const PcFrameVector fz = pc_frame(Fx, Fy, ChartKind::NullCoords);
        return std::array<ParaComplex, 3>{fz.c1, fz.c2, fz.c3};
    };
    return {fn};
}

DerivativeTriple derivative_of(const NullScroll& f, const NullChart& chart, double h) {
    const NullScroll copy = f;
    const NullChart ch = chart;
    return derivative_of([copy, ch](double x, double y) { return copy.eval(ch.s(x), ch.t(x, y)); },
                         h);
}

DerivativeTriple closed_form_triple(const NullScroll& f, const NullChart& chart) {
    const NullScroll copy = f;
    const NullChart ch = chart;
    TripleFn fn = [copy, ch](double x, double y) {
        const double s = ch.s(x);
        const double t = ch.t(x, y);
        const ScrollPartials sp = scroll_partials(copy, s, t);
        const double sx = ch.sx(x), tx = ch.tx(x, y), ty = ch.ty(x, y);
        const FrameVector Fx = sx * sp.fs + tx * sp.ft;
        const FrameVector Fy = ty * sp.ft;
        const PcFrameVector fz = pc_frame(Fx, Fy, ChartKind::NullCoords);
        return std::array<ParaComplex, 3>{fz.c1, fz.c2, fz.c3};
    };
    return {fn};
}

std::array<ParaComplex, 3> to_mink(const std::array<ParaComplex, 3>& phi) {
    return {phi[0], phi[1], pc_i * phi[2]};
}

std::array<ParaComplex, 3> from_mink(const std::array<ParaComplex, 3>& psi) {
    return {psi[0], psi[1], pc_i * psi[2]};
}

double closedness_residual(const TripleFn& phi, double x, double y, double h) {
    auto conj3 = [&phi](double xx, double yy) { return conj(phi(xx, yy)[2]); };
    const ParaComplex gx = (conj3(x + h, y) - conj3(x - h, y)) * (0.5 / h);
    const ParaComplex gy = (conj3(x, y + h) - conj3(x, y - h)) * (0.5 / h);
    const ParaComplex d_conj3 = chart_dz(gx, gy, ChartKind::NullCoords);
    const auto p = phi(x, y);
    const ParaComplex r = d_conj3 * 2.0 + p[0] * conj(p[1]) - p[1] * conj(p[0]);
    return abs_max(r);
}

namespace {

// l / lbar coefficients of a para-complex number
double l_coeff(const ParaComplex& z) { return z.re + z.im; }
double lbar_coeff(const ParaComplex& z) { return z.re - z.im; }

// integrate the triple's 1-form along one axis leg, returning the increments
// of (f1, f2, f3); f1, f2, f3 start values are needed by the f3 correction
Nil3Point leg_integral(const TripleFn& phi, double x0, double y0, double x1, double y1,
                       const Nil3Point& start, double substep) {
    const bool along_x = (y0 == y1);
    const double len = along_x ? (x1 - x0) : (y1 - y0);
    if (len == 0.0) return start;
    const int n = std::max(4, static_cast<int>(std::ceil(std::fabs(len) / substep)) + 1);
    const double h = len / (n - 1);

    std::vector<double> w1(n), w2(n), c3a(n);
    std::vector<std::array<ParaComplex, 3>> vals(n);
    for (int i = 0; i < n; ++i) {
        const double x = along_x ? x0 + h * i : x0;
        const double y = along_x ? y0 : y0 + h * i;
        vals[i] = phi(x, y);
        if (along_x) {
            w1[i] = l_coeff(vals[i][0]);
            w2[i] = l_coeff(vals[i][1]);
        } else {
            w1[i] = lbar_coeff(vals[i][0]);
            w2[i] = lbar_coeff(vals[i][1]);
        }
    }
    const std::vector<double> F1 = cumulative_integral(w1, h);
    const std::vector<double> F2 = cumulative_integral(w2, h);
    for (int i = 0; i < n; ++i) {
        const double f1 = start.x1 + F1[i];
        const double f2 = start.x2 + F2[i];
        const ParaComplex corrected = vals[i][2] - vals[i][0] * (0.5 * f2) + vals[i][1] * (0.5 * f1);
        c3a[i] = along_x ? l_coeff(corrected) : lbar_coeff(corrected);
    }
    const std::vector<double> F3 = cumulative_integral(c3a, h);
    return {start.x1 + F1[n - 1], start.x2 + F2[n - 1], start.x3 + F3[n - 1]};
}

Nil3Point staircase(const TripleFn& phi, double x0, double y0, double x1, double y1,
                    const Nil3Point& base, double substep, bool x_first) {
    if (x_first) {
        const Nil3Point mid = leg_integral(phi, x0, y0, x1, y0, base, substep);
        return leg_integral(phi, x1, y0, x1, y1, mid, substep);
    }
    const Nil3Point mid = leg_integral(phi, x0, y0, x0, y1, base, substep);
    return leg_integral(phi, x0, y1, x1, y1, mid, substep);
}

}  // namespace

PathIntegration integrate_from_derivative(const TripleFn& phi, std::pair<double, double> base_xy,
                                          const Nil3Point& base_value,
                                          std::pair<double, double> target_xy, double substep,
                                          double closedness_tol) {
    const auto [x0, y0] = base_xy;
    const auto [x1, y1] = target_xy;
    const double rx = 0.5 * (x0 + x1), ry = 0.5 * (y0 + y1);
    if (closedness_residual(phi, rx, ry) > closedness_tol)
        throw NotClosed("integrate_from_derivative: derivative triple is not closed");

    PathIntegration out;
    const Nil3Point a = staircase(phi, x0, y0, x1, y1, base_value, substep, true);
    const Nil3Point b = staircase(phi, x0, y0, x1, y1, base_value, substep, false);
    out.path_disagreement = std::max(
        {std::fabs(a.x1 - b.x1), std::fabs(a.x2 - b.x2), std::fabs(a.x3 - b.x3)});
    if (out.path_disagreement > 1e-6)
        throw NotClosed("integrate_from_derivative: staircase paths disagree");
    out.value = {0.5 * (a.x1 + b.x1), 0.5 * (a.x2 + b.x2), 0.5 * (a.x3 + b.x3)};
    return out;
}

std::vector<Nil3Point> integrate_grid(const TripleFn& phi, std::pair<double, double> base_xy,
                                      const Nil3Point& base_value, const GridSpec& grid,
                                      double substep) {
    std::vector<Nil3Point> out(static_cast<size_t>(grid.ns) * grid.nt);
    for (int i = 0; i < grid.ns; ++i) {
        const Nil3Point col_base =
            leg_integral(phi, base_xy.first, base_xy.second, grid.s(i), base_xy.second,
                         base_value, substep);
        for (int j = 0; j < grid.nt; ++j) {
            out[static_cast<size_t>(j) * grid.ns + i] =
                leg_integral(phi, grid.s(i), base_xy.second, grid.s(i), grid.t(j), col_base,
                             substep);
        }
    }
    return out;
}

GaugeSurface gauge_transform(const NullScroll& f, const NullChart& chart, const Mat3& F0,
                             std::pair<double, double> base_xy, double substep) {
    if (!mink::is_special_lorentz(F0))
        throw NotLorentz("gauge_transform: F0 is not in SO(2,1)");

    const DerivativeTriple phi1 = closed_form_triple(f, chart);
    const TripleFn base_fn = phi1.phi;
    const Mat3 M = F0;
    TripleFn phi2 = [base_fn, M](double x, double y) {
        return from_mink(row_mul(to_mink(base_fn(x, y)), M));
    };

    GaugeSurface out;
    out.triple = {phi2};
    out.base_xy = base_xy;
    const Nil3Point base_value = nil3_identity();
    out.surface = [phi2, base_xy, base_value, substep](double x, double y) {
        return integrate_from_derivative(phi2, base_xy, base_value, {x, y}, substep).value;
    };
    return out;
}

NilSurfaceProbe probe_from_triple(const TripleFn& phi, double x, double y, double h2) {
    auto frames_at = [&phi](double xx, double yy) {
        const auto p = phi(xx, yy);
        const FrameVector Fx{l_coeff(p[0]), l_coeff(p[1]), l_coeff(p[2])};
        const FrameVector Fy{lbar_coeff(p[0]), lbar_coeff(p[1]), lbar_coeff(p[2])};
        return std::pair<FrameVector, FrameVector>{Fx, Fy};
    };

    NilSurfaceProbe out;
    const auto [Fx, Fy] = frames_at(x, y);
    out.Fx = Fx;
    out.Fy = Fy;
    out.e_u = 2.0 * metric(Fx, Fy);
    out.conformal_residual = std::max(std::fabs(metric(Fx, Fx)), std::fabs(metric(Fy, Fy)));

    const FrameVector n_raw = cross(Fx, Fy);
    const double nn = metric(n_raw, n_raw);
    if (std::fabs(nn) < 1e-18) throw DegeneratePoint("probe_from_triple: degenerate tangent plane");
    out.N = (-1.0 / std::sqrt(std::fabs(nn))) * n_raw;
    out.epsilon = n_raw.v3 >= 0.0 ? 1 : -1;

    const auto p = phi(x, y);
    out.fz1 = p[0];
    out.fz2 = p[1];
    out.fz3 = p[2];
    const PcFrameVector fz{p[0], p[1], p[2]};

    auto fz_at = [&phi](double xx, double yy) {
        const auto q = phi(xx, yy);
        return PcFrameVector{q[0], q[1], q[2]};
    };
    auto promote = [](const FrameVector& v) {
        return PcFrameVector{ParaComplex{v.v1}, ParaComplex{v.v2}, ParaComplex{v.v3}};
    };
    const PcFrameVector dxfz = (fz_at(x + h2, y) - fz_at(x - h2, y)) * (0.5 / h2);
    const PcFrameVector dyfz = (fz_at(x, y + h2) - fz_at(x, y - h2)) * (0.5 / h2);
    const PcFrameVector cov_x = dxfz + connection_term(promote(Fx), fz);
    const PcFrameVector cov_y = dyfz + connection_term(promote(Fy), fz);
    const PcFrameVector nabla_d_fz = cov_x * pc_l + cov_y * pc_lbar;
    out.Qtilde = metric(nabla_d_fz, out.N);

    auto Fy_at = [&frames_at](double xx, double yy) { return frames_at(xx, yy).second; };
    const FrameVector dxFy = (Fy_at(x + h2, y) - Fy_at(x - h2, y)) * (0.5 / h2);
    out.H = metric(dxFy + connection_term(Fx, Fy), out.N) / metric(Fx, Fy);

    if (out.e_u > 0.0) out.support = -std::sqrt(out.e_u) * out.N.v3;
    out.Q_def = (pc_i * (-0.25)) * out.Qtilde - (out.fz3 * out.fz3) * 0.25;
    return out;
}

}  // namespace nilscroll
