#pragma once

#include <functional>
#include <optional>

namespace nilscroll {

/// Para-complex (split-complex) number x + i'y with i'^2 = 1.
/// Not a field: numbers with re^2 == im^2 have no inverse.
struct ParaComplex {
    double re = 0.0;
    double im = 0.0;

    constexpr ParaComplex() = default;
    constexpr ParaComplex(double r, double i = 0.0) : re(r), im(i) {}

    constexpr ParaComplex operator+(const ParaComplex& o) const { return {re + o.re, im + o.im}; }
    constexpr ParaComplex operator-(const ParaComplex& o) const { return {re - o.re, im - o.im}; }
    constexpr ParaComplex operator-() const { return {-re, -im}; }
    constexpr ParaComplex operator*(const ParaComplex& o) const {
        return {re * o.re + im * o.im, re * o.im + im * o.re};
    }
    constexpr ParaComplex operator*(double c) const { return {re * c, im * c}; }
    ParaComplex& operator+=(const ParaComplex& o) { re += o.re; im += o.im; return *this; }
    ParaComplex& operator-=(const ParaComplex& o) { re -= o.re; im -= o.im; return *this; }
};

constexpr ParaComplex operator*(double c, const ParaComplex& z) { return z * c; }

constexpr ParaComplex pc_i{0.0, 1.0};
constexpr ParaComplex pc_l{0.5, 0.5};     // l = (1+i')/2, l^2 = l
constexpr ParaComplex pc_lbar{0.5, -0.5}; // lbar = (1-i')/2, l*lbar = 0

constexpr ParaComplex conj(const ParaComplex& z) { return {z.re, -z.im}; }
constexpr ParaComplex mul(const ParaComplex& a, const ParaComplex& b) { return a * b; }

/// z * conj(z) = re^2 - im^2; real, any sign.
constexpr double squared_modulus(const ParaComplex& z) { return z.re * z.re - z.im * z.im; }

/// Componentwise max |.| over re, im.
double abs_max(const ParaComplex& z);

/// Root with w^2 = z; exists iff re+im >= 0 and re-im >= 0.
/// Branch: w.re >= 0, ties toward w.im >= 0.
std::optional<ParaComplex> pc_sqrt(const ParaComplex& z);

/// e^re (cosh im + i' sinh im). Total function.
ParaComplex pc_exp(const ParaComplex& z);

/// w with z*w = 1; exists iff re^2 != im^2 (exact test, no epsilon).
std::optional<ParaComplex> pc_inverse(const ParaComplex& z);

/// Coordinate convention for a 2d chart (x, y):
///   Standard:   z = x + i'y,   d = (dx + i' dy)/2
///   NullCoords: z = l x + lbar y,   d = l dx + lbar dy
enum class ChartKind { Standard, NullCoords };

/// Assemble d/dz from the real partials of a quantity along x and y.
template <typename T>
T chart_dz(const T& fx, const T& fy, ChartKind kind) {
    if (kind == ChartKind::Standard) return (fx + pc_i * fy) * 0.5;
    return pc_l * fx + pc_lbar * fy;
}
inline ParaComplex chart_dz(double fx, double fy, ChartKind kind) {
    return chart_dz(ParaComplex(fx), ParaComplex(fy), kind);
}
/// d/dzbar analogue.
template <typename T>
T chart_dzbar(const T& fx, const T& fy, ChartKind kind) {
    if (kind == ChartKind::Standard) return (fx - pc_i * fy) * 0.5;
    return pc_lbar * fx + pc_l * fy;
}

struct Rect {
    double x0, x1, y0, y1;
    bool contains(double x, double y) const { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
};

struct PcPartials {
    ParaComplex dz;
    ParaComplex dzbar;
};

using PcField = std::function<ParaComplex(double, double)>;

/// Central-difference d and dbar of F at (x, y); throws OutOfGrid when the
/// stencil leaves the domain.
PcPartials pc_partials(const PcField& F, double x, double y, double step = 1e-5);
PcPartials pc_partials(const PcField& F, const Rect& domain, double x, double y,
                       double step = 1e-5);

}  // namespace nilscroll
