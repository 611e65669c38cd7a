#include "nilscroll/nil3.hpp"

namespace nilscroll {

FrameVector left_translate_velocity(const Nil3Point& gamma, double d1, double d2, double d3) {
    return frame_components(gamma, d1, d2, d3);
}

FrameVector left_translate_velocity(const CurveFn& gamma, double s, double h) {
    const Nil3Point plus = gamma(s + h);
    const Nil3Point minus = gamma(s - h);
    const double inv = 0.5 / h;
    const double d1 = (plus.x1 - minus.x1) * inv;
    const double d2 = (plus.x2 - minus.x2) * inv;
    const double d3 = (plus.x3 - minus.x3) * inv;
    return frame_components(gamma(s), d1, d2, d3);
}

FrameVector covariant_derivative(const FrameFieldFn& X, const CurveFn& base, double s, double h) {
    const FrameVector dX = (X(s + h) - X(s - h)) * (0.5 / h);
    const FrameVector V = left_translate_velocity(base, s, h);
    return covariant_derivative(dX, V, X(s));
}

FrameVector covariant_derivative(const FrameField2Fn& X, const MapFn& base, int direction,
                                 double u, double v, double h) {
    const double du = direction == 0 ? h : 0.0;
    const double dv = direction == 0 ? 0.0 : h;
    const FrameVector dX = (X(u + du, v + dv) - X(u - du, v - dv)) * (0.5 / h);

    const Nil3Point pp = base(u + du, v + dv);
    const Nil3Point pm = base(u - du, v - dv);
    const double inv = 0.5 / h;
    const FrameVector V = frame_components(base(u, v), (pp.x1 - pm.x1) * inv,
                                           (pp.x2 - pm.x2) * inv, (pp.x3 - pm.x3) * inv);
    return covariant_derivative(dX, V, X(u, v));
}

}  // namespace nilscroll
