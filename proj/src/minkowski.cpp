#include "nilscroll/minkowski.hpp"

#include <cmath>
#include <memory>

#include "nilscroll/errors.hpp"

namespace nilscroll::mink {

namespace {

constexpr double kSqrt2Inv = 0.70710678118654752440;

MinkVector from_state(const std::vector<double>& y, int offset) {
    return {y[offset], y[offset + 1], y[offset + 2]};
}

struct MinkSplines {
    CubicSpline t, x, y;
    MinkVector eval(double s) const { return {t.eval(s), x.eval(s), y.eval(s)}; }
};

MinkCurveFn splined(const std::vector<double>& s, const std::vector<MinkVector>& v) {
    std::vector<double> ct(v.size()), cx(v.size()), cy(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        ct[i] = v[i].t;
        cx[i] = v[i].x;
        cy[i] = v[i].y;
    }
    auto sp = std::make_shared<MinkSplines>(MinkSplines{
        CubicSpline(s, ct), CubicSpline(s, cx), CubicSpline(s, cy)});
    return [sp](double u) { return sp->eval(u); };
}

}  // namespace

Mat3 default_init_frame() {
    // A0 = (-1/s2, 1/s2, 0), B0 = (1/s2, 1/s2, 0), C0 = (0, 0, -1); det = +1.
    Mat3 F;
    F(0, 0) = -kSqrt2Inv;
    F(1, 0) = kSqrt2Inv;
    F(0, 1) = kSqrt2Inv;
    F(1, 1) = kSqrt2Inv;
    F(2, 2) = -1.0;
    return F;
}

double frame_gram_defect(const Mat3& frame) {
    auto v = [&](int c) { return MinkVector{frame(0, c), frame(1, c), frame(2, c)}; };
    const MinkVector A = v(0), B = v(1), C = v(2);
    double d = 0.0;
    d = std::max(d, std::fabs(dot(A, B) - 1.0));
    d = std::max(d, std::fabs(dot(C, C) - 1.0));
    d = std::max(d, std::fabs(dot(A, A)));
    d = std::max(d, std::fabs(dot(B, B)));
    d = std::max(d, std::fabs(dot(A, C)));
    d = std::max(d, std::fabs(dot(B, C)));
    return d;
}

MinkNullFrame integrate_mink_frame(const ScalarFn& k1, const ScalarFn& k2, const Mat3& init,
                                   Span span, double step) {
    if (frame_gram_defect(init) > 1e-10)
        throw BadInitialFrame("integrate_mink_frame: init violates the null-frame Gram relations");

    const UniformGrid grid = make_grid(span, step, 0.0);
    int anchor = static_cast<int>(std::llround((0.0 - grid.s0) / grid.h));
    anchor = std::clamp(anchor, 0, grid.n - 1);

    // state: A, B, C, gamma
    std::vector<double> y0(12, 0.0);
    for (int r = 0; r < 3; ++r) {
        y0[r] = init(r, 0);
        y0[3 + r] = init(r, 1);
        y0[6 + r] = init(r, 2);
    }
    auto rhs = [&k1, &k2](double s, const std::vector<double>& y) {
        std::vector<double> dy(12);
        const double a = k1(s), b = k2(s);
        for (int r = 0; r < 3; ++r) {
            dy[r] = a * y[6 + r];                       // A' = k1 C
            dy[3 + r] = b * y[6 + r];                   // B' = k2 C
            dy[6 + r] = -b * y[r] - a * y[3 + r];       // C' = -k2 A - k1 B
            dy[9 + r] = y[r];                           // gamma' = A
        }
        return dy;
    };
    const auto states = rk4_integrate(rhs, y0, grid, anchor);

    std::vector<MinkVector> A(grid.n), B(grid.n), C(grid.n), G(grid.n);
    double drift = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        A[i] = from_state(states[i], 0);
        B[i] = from_state(states[i], 3);
        C[i] = from_state(states[i], 6);
        G[i] = from_state(states[i], 9);
        Mat3 F;
        for (int r = 0; r < 3; ++r) {
            F(r, 0) = states[i][r];
            F(r, 1) = states[i][3 + r];
            F(r, 2) = states[i][6 + r];
        }
        drift = std::max(drift, frame_gram_defect(F));
    }

    const auto nodes = grid.nodes();
    MinkNullFrame out;
    out.A = splined(nodes, A);
    out.B = splined(nodes, B);
    out.C = splined(nodes, C);
    out.gamma = splined(nodes, G);
    out.k1 = k1;
    out.k2 = k2;
    out.max_gram_drift = drift;
    out.grid = grid;
    auto cA = out.A, cB = out.B, cC = out.C;
    out.dA = [k1, cC](double s) { return k1(s) * cC(s); };
    out.dB = [k2, cC](double s) { return k2(s) * cC(s); };
    out.dC = [k1, k2, cA, cB](double s) { return -1.0 * (k2(s) * cA(s)) - k1(s) * cB(s); };
    return out;
}

MinkNullFrame integrate_mink_frame(const ScalarFn& k1, const ScalarFn& k2, Span span, double step) {
    return integrate_mink_frame(k1, k2, default_init_frame(), span, step);
}

MinkVector bscroll_eval(const MinkNullFrame& f, double s, double t) {
    return f.gamma(s) + t * f.B(s);
}

namespace {

// fourth-order first and second derivative stencils
template <typename F>
MinkVector d1_4(const F& f, double h) {
    return (f(-2.0 * h) - 8.0 * f(-h) + 8.0 * f(h) - f(2.0 * h)) * (1.0 / (12.0 * h));
}
template <typename F>
MinkVector d2_4(const F& f, double h) {
    return (-1.0 * f(-2.0 * h) + 16.0 * f(-h) - 30.0 * f(0.0) + 16.0 * f(h) - f(2.0 * h)) *
           (1.0 / (12.0 * h * h));
}

struct PcMink {
    ParaComplex t, x, y;
};

PcMink pc_mink(const MinkVector& a, const MinkVector& b, ChartKind kind) {
    return {chart_dz(a.t, b.t, kind), chart_dz(a.x, b.x, kind), chart_dz(a.y, b.y, kind)};
}

ParaComplex pc_dot(const PcMink& v, const MinkVector& w) {
    return v.t * (-w.t) + v.x * w.x + v.y * w.y;
}

}  // namespace

SurfaceData surface_data(const MinkMapFn& Phi, ChartKind kind, double x, double y, double h1,
                         double h2, bool with_gc) {
    const MinkVector Px = (Phi(x + h1, y) - Phi(x - h1, y)) * (0.5 / h1);
    const MinkVector Py = (Phi(x, y + h1) - Phi(x, y + (-h1))) * (0.5 / h1);

    const MinkVector Pxx = d2_4([&](double d) { return Phi(x + d, y); }, h2);
    const MinkVector Pyy = d2_4([&](double d) { return Phi(x, y + d); }, h2);
    const MinkVector Pxy =
        d1_4([&](double dy) { return d1_4([&](double dx) { return Phi(x + dx, y + dy); }, h2); },
             h2);

    SurfaceData out;
    const double gxx = dot(Px, Px), gyy = dot(Py, Py), gxy = dot(Px, Py);
    MinkVector nraw = cross(Px, Py);
    if (kind == ChartKind::NullCoords) {
        out.e_u = 2.0 * gxy;
        out.conformal_residual = std::max(std::fabs(gxx), std::fabs(gyy));
        nraw = -1.0 * nraw;
    } else {
        out.e_u = gxx;
        out.conformal_residual = std::max(std::fabs(gxx + gyy), std::fabs(gxy));
    }
    const double nn = dot(nraw, nraw);
    if (std::fabs(nn) < 1e-14 || std::fabs(out.e_u) < 1e-14)
        throw DegenerateMetric("surface_data: degenerate first fundamental form");
    out.N = nraw * (1.0 / std::sqrt(std::fabs(nn)));

    MinkVector Pzzbar;      // real part; null: Pxy, standard: (Pxx - Pyy)/4
    PcMink Pzz;             // para-complex second derivative in z
    if (kind == ChartKind::NullCoords) {
        Pzzbar = Pxy;
        Pzz = pc_mink(Pxx, Pyy, ChartKind::NullCoords);
    } else {
        Pzzbar = (Pxx - Pyy) * 0.25;
        const MinkVector re = (Pxx + Pyy) * 0.25;
        const MinkVector im = Pxy * 0.5;
        Pzz = {ParaComplex{re.t, im.t}, ParaComplex{re.x, im.x}, ParaComplex{re.y, im.y}};
    }
    out.H = 2.0 * dot(Pzzbar, out.N) / out.e_u;
    out.Q = pc_dot(Pzz, out.N);

    if (with_gc) {
        const double hg = 1e-2;
        auto field = [&](double xx, double yy) {
            return surface_data(Phi, kind, xx, yy, h1, h2, false);
        };
        const SurfaceData c = field(x, y);
        const SurfaceData xp = field(x + hg, y), xm = field(x - hg, y);
        const SurfaceData yp = field(x, y + hg), ym = field(x, y - hg);
        auto logu = [](const SurfaceData& s) { return std::log(std::fabs(s.e_u)); };
        double u_zzbar;
        if (kind == ChartKind::NullCoords) {
            const SurfaceData pp = field(x + hg, y + hg), pm = field(x + hg, y - hg);
            const SurfaceData mp = field(x - hg, y + hg), mm = field(x - hg, y - hg);
            u_zzbar = (logu(pp) - logu(pm) - logu(mp) + logu(mm)) / (4.0 * hg * hg);
        } else {
            const double uxx = (logu(xp) - 2.0 * logu(c) + logu(xm)) / (hg * hg);
            const double uyy = (logu(yp) - 2.0 * logu(c) + logu(ym)) / (hg * hg);
            u_zzbar = 0.25 * (uxx - uyy);
        }
        out.gauss_residual = 0.5 * u_zzbar + 0.25 * c.H * c.H * c.e_u -
                             squared_modulus(c.Q) / c.e_u;
        const ParaComplex Qx = (xp.Q - xm.Q) * (0.5 / hg);
        const ParaComplex Qy = (yp.Q - ym.Q) * (0.5 / hg);
        const ParaComplex Qzbar = chart_dzbar(Qx, Qy, kind);
        const ParaComplex Hz = chart_dz((xp.H - xm.H) * (0.5 / hg), (yp.H - ym.H) * (0.5 / hg), kind);
        const ParaComplex codazzi = Qzbar - Hz * (0.5 * c.e_u);
        out.codazzi_residual = abs_max(codazzi);
    }
    return out;
}

bool is_lorentz(const Mat3& M, double tol) {
    Mat3 eta;
    eta(0, 0) = -1.0;
    eta(1, 1) = 1.0;
    eta(2, 2) = 1.0;
    const Mat3 r = M.transpose() * eta * M;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (std::fabs(r(i, j) - eta(i, j)) > tol) return false;
    return true;
}

bool is_special_lorentz(const Mat3& M, double tol) {
    return is_lorentz(M, tol) && std::fabs(M.det() - 1.0) <= tol;
}

}  // namespace nilscroll::mink
