#include "nilscroll/paracomplex.hpp"

#include <cmath>

#include "nilscroll/errors.hpp"

namespace nilscroll {

double abs_max(const ParaComplex& z) {
    return std::max(std::fabs(z.re), std::fabs(z.im));
}

std::optional<ParaComplex> pc_sqrt(const ParaComplex& z) {
    // In the idempotent basis z = (re+im) l + (re-im) lbar the product is
    // componentwise, so roots exist iff both components are nonnegative.
    const double u = z.re + z.im;
    const double v = z.re - z.im;
    if (u < 0.0 || v < 0.0) return std::nullopt;
    const double su = std::sqrt(u);
    const double sv = std::sqrt(v);
    return ParaComplex{0.5 * (su + sv), 0.5 * (su - sv)};
}

ParaComplex pc_exp(const ParaComplex& z) {
    const double scale = std::exp(z.re);
    return {scale * std::cosh(z.im), scale * std::sinh(z.im)};
}

std::optional<ParaComplex> pc_inverse(const ParaComplex& z) {
    const double d = z.re * z.re - z.im * z.im;
    if (d == 0.0) return std::nullopt;
    return ParaComplex{z.re / d, -z.im / d};
}

PcPartials pc_partials(const PcField& F, double x, double y, double step) {
    const double h = step;
    const ParaComplex fx = (F(x + h, y) - F(x - h, y)) * (0.5 / h);
    const ParaComplex fy = (F(x, y + h) - F(x, y - h)) * (0.5 / h);
    return {chart_dz(fx, fy, ChartKind::Standard), chart_dzbar(fx, fy, ChartKind::Standard)};
}

PcPartials pc_partials(const PcField& F, const Rect& domain, double x, double y, double step) {
    if (!domain.contains(x - step, y - step) || !domain.contains(x + step, y + step))
        throw OutOfGrid("pc_partials: stencil leaves the sampled domain");
    return pc_partials(F, x, y, step);
}

}  // namespace nilscroll
