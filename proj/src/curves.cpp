#include "nilscroll/curves.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "nilscroll/errors.hpp"

namespace nilscroll {

CubicSpline::CubicSpline(std::vector<double> xs, const std::vector<double>& ys) : xs_(std::move(xs)) {
    const int n = static_cast<int>(xs_.size());
    if (n < 2 || ys.size() != xs_.size()) throw BadInput("CubicSpline: need >= 2 knots");
    for (int i = 0; i + 1 < n; ++i)
        if (!(xs_[i + 1] > xs_[i])) throw BadInput("CubicSpline: knots must increase strictly");

    a_.assign(n - 1, 0.0);
    b_.assign(n - 1, 0.0);
    c_.assign(n - 1, 0.0);
    e_.assign(n - 1, 0.0);

    if (n == 2) {
        a_[0] = ys[0];
        b_[0] = (ys[1] - ys[0]) / (xs_[1] - xs_[0]);
        return;
    }
    if (n == 3) {
        // not-a-knot with three points: the single quadratic through them
        const double h0 = xs_[1] - xs_[0], h1 = xs_[2] - xs_[1];
        const double s0 = (ys[1] - ys[0]) / h0, s1 = (ys[2] - ys[1]) / h1;
        const double c2 = (s1 - s0) / (h0 + h1);  // half second derivative
        for (int i = 0; i < 2; ++i) {
            const double d = xs_[i] - xs_[0];
            a_[i] = ys[0] + d * (s0 + c2 * (d - h0));
            b_[i] = s0 + c2 * (2.0 * d - h0);
            c_[i] = c2;
        }
        return;
    }

    // moments M_i = p''(x_i); interior continuity rows plus not-a-knot ends,
    // with M_0 and M_{n-1} eliminated to keep the system tridiagonal
    std::vector<double> h(n - 1);
    for (int i = 0; i + 1 < n; ++i) h[i] = xs_[i + 1] - xs_[i];
    const int m = n - 2;  // unknowns M_1..M_{n-2}
    std::vector<double> sub(m, 0.0), diag(m, 0.0), sup(m, 0.0), rhs(m, 0.0);
    for (int i = 1; i <= n - 2; ++i) {
        const int k = i - 1;
        sub[k] = h[i - 1] / 6.0;
        diag[k] = (h[i - 1] + h[i]) / 3.0;
        sup[k] = h[i] / 6.0;
        rhs[k] = (ys[i + 1] - ys[i]) / h[i] - (ys[i] - ys[i - 1]) / h[i - 1];
    }
    // M_0 = (1+r) M_1 - r M_2, r = h0/h1
    const double r = h[0] / h[1];
    diag[0] += sub[0] * (1.0 + r);
    sup[0] -= sub[0] * r;
    sub[0] = 0.0;
    // M_{n-1} = (1+q) M_{n-2} - q M_{n-3}, q = h_{n-2}/h_{n-3}
    const double q = h[n - 2] / h[n - 3];
    diag[m - 1] += sup[m - 1] * (1.0 + q);
    sub[m - 1] -= sup[m - 1] * q;
    sup[m - 1] = 0.0;

    // Thomas
    for (int k = 1; k < m; ++k) {
        const double w = sub[k] / diag[k - 1];
        diag[k] -= w * sup[k - 1];
        rhs[k] -= w * rhs[k - 1];
    }
    std::vector<double> M(n, 0.0);
    M[n - 2] = rhs[m - 1] / diag[m - 1];
    for (int k = m - 2; k >= 0; --k) M[k + 1] = (rhs[k] - sup[k] * M[k + 2]) / diag[k];
    M[0] = (1.0 + r) * M[1] - r * M[2];
    M[n - 1] = (1.0 + q) * M[n - 2] - q * M[n - 3];

    for (int i = 0; i + 1 < n; ++i) {
        a_[i] = ys[i];
        c_[i] = 0.5 * M[i];
        e_[i] = (M[i + 1] - M[i]) / (6.0 * h[i]);
        b_[i] = (ys[i + 1] - ys[i]) / h[i] - h[i] * (2.0 * M[i] + M[i + 1]) / 6.0;
    }
}

int CubicSpline::interval(double x) const {
    const int n = static_cast<int>(xs_.size());
    if (x <= xs_.front()) return 0;
    if (x >= xs_[n - 2]) return n - 2;
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    return static_cast<int>(it - xs_.begin()) - 1;
}

double CubicSpline::eval(double x) const {
    const int i = interval(x);
    const double d = x - xs_[i];
    return a_[i] + d * (b_[i] + d * (c_[i] + d * e_[i]));
}

double CubicSpline::deriv(double x) const {
    const int i = interval(x);
    const double d = x - xs_[i];
    return b_[i] + d * (2.0 * c_[i] + 3.0 * d * e_[i]);
}

double CubicSpline::deriv2(double x) const {
    const int i = interval(x);
    const double d = x - xs_[i];
    return 2.0 * c_[i] + 6.0 * d * e_[i];
}

FrameCurve with_fd_derivatives(FrameCurve c, double h) {
    if (!c.df) {
        auto f = c.f;
        c.df = [f, h](double s) { return (f(s + h) - f(s - h)) * (0.5 / h); };
    }
    if (!c.d2f) {
        // a larger step balances truncation against roundoff for the
        // second difference
        const double h2 = std::max(h, 1e-4);
        auto f = c.f;
        c.d2f = [f, h2](double s) {
            return (f(s + h2) + f(s - h2) - 2.0 * f(s)) * (1.0 / (h2 * h2));
        };
    }
    return c;
}

FrameCurve splined_frame_curve(const std::vector<double>& s, const std::vector<FrameVector>& v) {
    std::vector<double> c1(v.size()), c2(v.size()), c3(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        c1[i] = v[i].v1;
        c2[i] = v[i].v2;
        c3[i] = v[i].v3;
    }
    auto s1 = std::make_shared<CubicSpline>(s, c1);
    auto s2 = std::make_shared<CubicSpline>(s, c2);
    auto s3 = std::make_shared<CubicSpline>(s, c3);
    FrameCurve out;
    out.f = [s1, s2, s3](double x) { return FrameVector{s1->eval(x), s2->eval(x), s3->eval(x)}; };
    out.df = [s1, s2, s3](double x) { return FrameVector{s1->deriv(x), s2->deriv(x), s3->deriv(x)}; };
    out.d2f = [s1, s2, s3](double x) {
        return FrameVector{s1->deriv2(x), s2->deriv2(x), s3->deriv2(x)};
    };
    return out;
}

ScalarFn splined_scalar(const std::vector<double>& s, const std::vector<double>& v) {
    auto sp = std::make_shared<CubicSpline>(s, v);
    return [sp](double x) { return sp->eval(x); };
}

std::vector<double> cumulative_integral(const std::vector<double>& v, double h) {
    const int n = static_cast<int>(v.size());
    std::vector<double> out(n, 0.0);
    if (n < 2) return out;
    if (n == 2) {
        out[1] = 0.5 * h * (v[0] + v[1]);
        return out;
    }
    if (n == 3) {
        out[1] = h * (5.0 * v[0] + 8.0 * v[1] - v[2]) / 12.0;
        out[2] = out[1] + h * (-v[0] + 8.0 * v[1] + 5.0 * v[2]) / 12.0;
        return out;
    }
    for (int i = 0; i + 1 < n; ++i) {
        double seg;
        if (i == 0)
            seg = h * (9.0 * v[0] + 19.0 * v[1] - 5.0 * v[2] + v[3]) / 24.0;
        else if (i == n - 2)
            seg = h * (9.0 * v[n - 1] + 19.0 * v[n - 2] - 5.0 * v[n - 3] + v[n - 4]) / 24.0;
        else
            seg = h * (-v[i - 1] + 13.0 * v[i] + 13.0 * v[i + 1] - v[i + 2]) / 24.0;
        out[i + 1] = out[i] + seg;
    }
    return out;
}

std::vector<double> UniformGrid::nodes() const {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = at(i);
    return out;
}

UniformGrid make_grid(Span span, double step, double s_ref) {
    if (!(step > 0.0) || !(span.hi > span.lo)) throw BadInput("make_grid: bad span or step");
    s_ref = std::clamp(s_ref, span.lo, span.hi);
    const int n_left = static_cast<int>(std::ceil((s_ref - span.lo) / step - 1e-9));
    const int n_right = static_cast<int>(std::ceil((span.hi - s_ref) / step - 1e-9));
    UniformGrid g;
    g.h = step;
    g.s0 = s_ref - n_left * step;
    g.n = n_left + n_right + 1;
    return g;
}

std::vector<std::vector<double>> rk4_integrate(
    const std::function<std::vector<double>(double, const std::vector<double>&)>& rhs,
    const std::vector<double>& y0, const UniformGrid& grid, int anchor_index) {
    const size_t dim = y0.size();
    std::vector<std::vector<double>> out(grid.n, std::vector<double>(dim, 0.0));
    out[anchor_index] = y0;

    auto step_once = [&](const std::vector<double>& y, double s, double h) {
        std::vector<double> k1 = rhs(s, y);
        std::vector<double> tmp(dim);
        for (size_t d = 0; d < dim; ++d) tmp[d] = y[d] + 0.5 * h * k1[d];
        std::vector<double> k2 = rhs(s + 0.5 * h, tmp);
        for (size_t d = 0; d < dim; ++d) tmp[d] = y[d] + 0.5 * h * k2[d];
        std::vector<double> k3 = rhs(s + 0.5 * h, tmp);
        for (size_t d = 0; d < dim; ++d) tmp[d] = y[d] + h * k3[d];
        std::vector<double> k4 = rhs(s + h, tmp);
        std::vector<double> next(dim);
        for (size_t d = 0; d < dim; ++d)
            next[d] = y[d] + h / 6.0 * (k1[d] + 2.0 * k2[d] + 2.0 * k3[d] + k4[d]);
        return next;
    };

    for (int i = anchor_index; i + 1 < grid.n; ++i) out[i + 1] = step_once(out[i], grid.at(i), grid.h);
    for (int i = anchor_index; i > 0; --i) out[i - 1] = step_once(out[i], grid.at(i), -grid.h);
    return out;
}

}  // namespace nilscroll
