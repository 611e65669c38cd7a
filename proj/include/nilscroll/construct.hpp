#pragma once

#include <string>

#include "nilscroll/scroll.hpp"

namespace nilscroll {

/// Ruling prescriptions. Circle/Hyperbola/Parabola are closed-form
/// light-cone curves with beta = 1/2; ConstantDirection is the beta = 0
/// family B~(s) = mu(s) (c1, c2, c3) with mu = mu_ref exp(int_{s_ref}^s k).
struct ConstantDirectionSpec {
    double c1 = 1.0, c2 = 1.0, c3 = 0.0;
    ScalarFn k = constant_fn(0.0);
    double s_ref = 0.0;
    double mu_ref = 1.0;
};

enum class BuiltinRuling { Circle, Hyperbola, Parabola };

FrameCurve builtin_ruling(BuiltinRuling which);

struct ConstructOptions {
    double step = 5e-4;
    int samples = 201;   // span sampling for the pre/post assertions
    double tol = 1e-9;
};

/// beta = 0 branch: A = alpha B over an affine-null-line base (vertical
/// planes / Hopf cylinders). Throws ZeroC3 / AlphaVanishes / NotNull.
NullScroll construct_beta_zero(const ConstantDirectionSpec& spec, const ScalarFn& alpha, Span span,
                               const ConstructOptions& opt = {});

/// beta = 1/2 branch: A = -4(2 g(B'',B'') B + B'') - 2b (B' + (b/4) B).
/// Attaches the (A, B, 2B') frame with k1 = 4 g(B'',B'') when b == 0.
/// Throws BetaNotHalf when the ruling is not normalized.
NullScroll construct_beta_half(const Ruling& ruling, const ScalarFn& b, Span span,
                               const ConstructOptions& opt = {});

/// g(A, B~) = 0 branch: A = alpha B~, tangent surfaces, valid on t != 0.
NullScroll construct_tangent(const Ruling& ruling, const ScalarFn& alpha, Span span,
                             Span t_span = {0.05, 2.0}, const ConstructOptions& opt = {});

/// Frame route: integrate the frame system with k2 = 1/2, reconstruct the
/// base curve, take the ruling induced by the frame field B.
NullScroll construct_from_curvature(const ScalarFn& k1, Span span,
                                    const ConstructOptions& opt = {});

/// Abresch-Rosenberg data route (Q = l S(x), chart s = 8p, t = 1/(p+q)):
/// k1(s(x)) = S(x) / (16 p_x^2), k2 = 1/2.
struct ArDataResult {
    NullScroll scroll;
    NullChart chart;
};

ArDataResult construct_from_ar_data(const ScalarFn& S, const ScalarFn& p, const ScalarFn& px,
                                    const ScalarFn& q, const ScalarFn& qy, Span x_span,
                                    Span y_span, const ConstructOptions& opt = {});

/// Paper example surfaces with their printed closed forms, used as oracles.
struct GalleryEntry {
    std::string name;
    NullScroll scroll;
    MapFn closed_form;      // exactly as printed
    GridSpec exact_grid;    // closed-form comparison grid
    GridSpec working_grid;  // nondegenerate grid for curvature checks
};

/// names: circle | hyperbola | parabola (param = b) |
///        vertical-plane (param = theta) | horizontal-umbrella | tangent.
/// Throws UnknownName.
GalleryEntry example_gallery(const std::string& name, double param = 0.0);

/// Max coordinate deviation between the constructed scroll and a closed-form
/// oracle over a grid, after aligning by a left translation at the grid
/// corner.
double gallery_deviation(const NullScroll& scroll, const MapFn& closed_form, const GridSpec& grid);

}  // namespace nilscroll
