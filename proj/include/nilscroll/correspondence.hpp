#pragma once

#include <array>
#include <utility>

#include "nilscroll/minkowski.hpp"
#include "nilscroll/scroll.hpp"

namespace nilscroll {

/// f_z = sum phi^j E_j over a null-coordinate chart; the induced Minkowski
/// derivative is (phi^1, phi^2, i' phi^3).
using TripleFn = std::function<std::array<ParaComplex, 3>(double, double)>;

struct DerivativeTriple {
    TripleFn phi;
    std::array<ParaComplex, 3> operator()(double x, double y) const { return phi(x, y); }
};

/// Lift of a CMC-1/2 B-scroll: base gets the gamma3 correction integral,
/// the ruling is the frame field B with its third component negated.
/// Requires k2 = 1/2 and gamma(0) = 0.
NullScroll bscroll_to_nil(const mink::MinkNullFrame& mf);

/// FD derivative triple of a surface given over a null-coordinate chart.
DerivativeTriple derivative_of(const MapFn& f_chart, double h = 1e-5);
DerivativeTriple derivative_of(const NullScroll& f, const NullChart& chart, double h = 1e-5);

/// Exact triple of a null scroll through a chart, from the closed-form
/// partials: phi^j = l (s_x f_s + t_x f_t)^j + lbar (t_y f_t)^j.
DerivativeTriple closed_form_triple(const NullScroll& f, const NullChart& chart);

std::array<ParaComplex, 3> to_mink(const std::array<ParaComplex, 3>& phi);
std::array<ParaComplex, 3> from_mink(const std::array<ParaComplex, 3>& psi);

/// Third component of the exterior-derivative defect:
/// 2 d(conj phi3) + phi1 conj(phi2) - phi2 conj(phi1).
double closedness_residual(const TripleFn& phi, double x, double y, double h = 1e-4);

struct PathIntegration {
    Nil3Point value;
    double path_disagreement = 0.0;
};

/// Path-integrates the closed 1-form of the derivative triple from base to
/// target along the two axis-aligned staircases and checks they agree.
/// Throws NotClosed when the closedness residual or the disagreement is
/// beyond tolerance.
PathIntegration integrate_from_derivative(const TripleFn& phi, std::pair<double, double> base_xy,
                                          const Nil3Point& base_value,
                                          std::pair<double, double> target_xy,
                                          double substep = 0.005, double closedness_tol = 1e-8);

/// Row-major grid of integrated surface points (y-major rows).
std::vector<Nil3Point> integrate_grid(const TripleFn& phi, std::pair<double, double> base_xy,
                                      const Nil3Point& base_value, const GridSpec& grid,
                                      double substep = 0.005);

struct GaugeSurface {
    DerivativeTriple triple;      // transformed derivative
    MapFn surface;                // reintegrated Nil3 map over the chart
    std::pair<double, double> base_xy;
};

/// SO(2,1) gauge action on the Minkowski derivative,
/// (phi1, phi2, i' phi3) -> (phi1, phi2, i' phi3) F0, then reintegration.
GaugeSurface gauge_transform(const NullScroll& f, const NullChart& chart, const Mat3& F0,
                             std::pair<double, double> base_xy, double substep = 0.005);

/// Invariants of a surface known only through its derivative triple:
/// everything probe_surface reports, computed without integrating.
NilSurfaceProbe probe_from_triple(const TripleFn& phi, double x, double y, double h2 = 1e-4);

}  // namespace nilscroll
