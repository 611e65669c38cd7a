#pragma once

#include <map>
#include <span>
#include <string>

#include "nilscroll/minkowski.hpp"
#include "nilscroll/scroll.hpp"

namespace nilscroll {

/// One tolerance table for every pass/fail flag (CLI --tol overrides).
struct Tolerances {
    double closed_H = 1e-8;
    double fd_H = 1e-4;
    double gram = 1e-8;
    double liouville = 1e-5;
    double planarity = 1e-8;
    double correspondence = 1e-6;
    double ar = 1e-6;
    double support = 1e-5;
    double conformal = 1e-8;

    double& by_name(const std::string& name);
};

struct ResidualStat {
    double max = 0.0;
    double sum = 0.0;
    long count = 0;

    void add(double v);
    double mean() const { return count > 0 ? sum / count : 0.0; }
};

struct VerificationReport {
    std::string name;
    GridSpec grid;
    double mask_fraction = 0.0;
    std::map<std::string, ResidualStat> residuals;
    std::map<std::string, bool> pass;
    int epsilon_sign = 0;

    bool all_pass() const;
    std::string to_json() const;
};

/// Mean curvature purely from finite differences of the map and the
/// connection table; independent of the scroll closed forms.
/// steps: first derivatives h1, second derivatives h2.
double fd_mean_curvature(const MapFn& f, double s, double t, double h1 = 1e-5, double h2 = 1e-4);

/// Sweeps closed-form and FD mean curvature over the grid; degenerate points
/// are masked, a fully masked grid fails.
VerificationReport verify_minimal(const NullScroll& f, const GridSpec& grid,
                                  const Tolerances& tol = {});

/// FD-only variant for raw maps (perturbed fixtures).
VerificationReport verify_minimal_fd(const MapFn& f, const std::string& name, const GridSpec& grid,
                                     const Tolerances& tol = {});

/// Max distance to the least-squares plane of the points (coordinates read as
/// Euclidean R^3). Throws TooFewPoints below 4 points.
double verify_planarity(std::span<const Nil3Point> points);

/// Componentwise check of the section-3.1 lift formulas between a Minkowski
/// B-scroll and the corresponding Nil3 scroll built from the same frame.
VerificationReport verify_correspondence(const mink::MinkNullFrame& mf, const NullScroll& f,
                                         const GridSpec& grid, const Tolerances& tol = {});

/// Grid sweep helper honouring NILSCROLL_THREADS.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace nilscroll
