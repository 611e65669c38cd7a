// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is pinned here, in code.

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "nilscroll/construct.hpp"
#include "nilscroll/correspondence.hpp"
#include "nilscroll/errors.hpp"
#include "nilscroll/verify.hpp"

using namespace nilscroll;

namespace {

int failures = 0;

void report(int id, const std::string& what, bool ok, double value, double tol) {
    std::printf("[%2d] %s  %s  (measured %.3e, tol %.3e)\n", id, ok ? "PASS" : "FAIL",
                what.c_str(), value, tol);
    if (!ok) ++failures;
}

void report_flag(int id, const std::string& what, bool ok) {
    std::printf("[%2d] %s  %s\n", id, ok ? "PASS" : "FAIL", what.c_str());
    if (!ok) ++failures;
}

double coord_diff(const Nil3Point& a, const Nil3Point& b) {
    return std::max({std::fabs(a.x1 - b.x1), std::fabs(a.x2 - b.x2), std::fabs(a.x3 - b.x3)});
}

// ---------------------------------------------------------------- criterion 1
void criterion_paracomplex() {
    const double tol = 1e-10;
    std::mt19937_64 rng(20250809);
    std::uniform_real_distribution<double> pos(0.0, 10.0);
    std::uniform_real_distribution<double> sym(-5.0, 5.0);

    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        // sqrt round trip inside the existence region
        const double u = pos(rng), v = pos(rng);
        const ParaComplex z{0.5 * (u + v), 0.5 * (u - v)};
        const auto w = pc_sqrt(z);
        worst = std::max(worst, w ? abs_max(*w * *w - z) : 1.0);

        // inverse round trip away from the null cone (|re^2 - im^2| >= 1e-2,
        // where the identity is resolvable in doubles)
        ParaComplex zi{sym(rng), sym(rng)};
        while (std::fabs(squared_modulus(zi)) < 1e-2) zi = {sym(rng), sym(rng)};
        const auto inv = pc_inverse(zi);
        worst = std::max(worst, inv ? abs_max(zi * *inv - ParaComplex{1.0, 0.0}) : 1.0);

        // exp homomorphism on the |re|+|im| <= 5 ball
        ParaComplex a{sym(rng), sym(rng)}, b{sym(rng), sym(rng)};
        while (std::fabs(a.re) + std::fabs(a.im) > 5.0) a = {sym(rng), sym(rng)};
        while (std::fabs(b.re) + std::fabs(b.im) > 5.0) b = {sym(rng), sym(rng)};
        worst = std::max(worst, abs_max(pc_exp(a + b) - pc_exp(a) * pc_exp(b)));
    }
    report(1, "para-complex law suite (3 x 10^4 round trips)", worst <= tol, worst, tol);

    const bool boundary = !pc_sqrt(pc_i).has_value() && !pc_inverse(pc_l).has_value();
    report_flag(1, "existence boundary: sqrt(i') -> NoRoot, inverse(l) -> NotInvertible",
                boundary);
}

// ---------------------------------------------------------------- criterion 2
void criterion_frame_conservation() {
    const NullFrame f = integrate_frame_system([](double s) { return std::sin(s); },
                                               constant_fn(0.5), {-2.0, 2.0}, 1e-3);
    report(2, "null frame Gram conservation (k1 = sin s, k2 = 1/2, step 1e-3)",
           f.max_gram_drift <= 1e-8, f.max_gram_drift, 1e-8);
}

// ---------------------------------------------------------------- criterion 3
void criterion_gallery() {
    const double tol = 1e-9;
    double worst = 0.0;
    auto run = [&worst](const GalleryEntry& e) {
        worst = std::max(worst, gallery_deviation(e.scroll, e.closed_form, e.exact_grid));
    };
    run(example_gallery("circle"));
    run(example_gallery("hyperbola"));
    run(example_gallery("parabola", 0.0));
    run(example_gallery("parabola", 1.0));
    run(example_gallery("vertical-plane", 3.14159265358979323846 / 3.0));
    run(example_gallery("horizontal-umbrella"));
    report(3, "gallery exactness vs printed closed forms (41x41, aligned)", worst <= tol, worst,
           tol);
}

// ---------------------------------------------------------------- criterion 4
struct Fixture {
    std::string name;
    NullScroll scroll;
    GridSpec grid;
};

std::vector<Fixture> minimal_fixtures() {
    std::vector<Fixture> out;
    for (const char* n :
         {"circle", "hyperbola", "parabola", "vertical-plane", "horizontal-umbrella", "tangent"}) {
        GalleryEntry e = example_gallery(n);
        out.push_back({e.name, e.scroll, e.working_grid});
    }
    {
        GalleryEntry p1 = example_gallery("parabola", 1.0);
        out.push_back({"parabola-b1", p1.scroll, {-0.5, 0.5, 21, -1.0, -0.2, 21}});
    }
    // working grids of the chart-built scrolls keep clear of the degenerate
    // locus t = -2Y/B3 (scanned numerically for these curvature profiles)
    out.push_back({"curvature-sin", construct_from_curvature([](double s) { return std::sin(s); },
                                                             {-2.0, 2.0}),
                   {-1.5, 1.1, 21, 0.3, 1.3, 21}});
    {
        ArDataResult ar = construct_from_ar_data(
            [](double x) { return 0.5 + 0.2 * std::sin(x); }, [](double x) { return x / 8.0; },
            constant_fn(1.0 / 8.0), [](double y) { return 1.0 / y; },
            [](double y) { return -1.0 / (y * y); }, {-2.0, 2.0}, {0.5, 2.0});
        out.push_back({"ar-data", ar.scroll, {-0.9, 0.7, 21, 0.6, 1.4, 21}});
    }
    return out;
}

void criterion_minimality() {
    double worst_closed = 0.0, worst_fd = 0.0;
    bool classified = true;
    for (const Fixture& f : minimal_fixtures()) {
        const VerificationReport rep = verify_minimal(f.scroll, f.grid);
        worst_closed = std::max(worst_closed, rep.residuals.at("closed_H").max);
        worst_fd = std::max(worst_fd, rep.residuals.at("fd_H").max);
        classified = classified && rep.mask_fraction == 0.0 &&
                     minimality_class(f.scroll) != MinimalityClass::NotMinimal;
    }
    report(4, "minimality, closed-form max |H| over 8 fixtures", worst_closed <= 1e-8,
           worst_closed, 1e-8);
    report(4, "minimality, FD max |H| over 8 fixtures", worst_fd <= 1e-4, worst_fd, 1e-4);
    report_flag(4, "all fixtures classify as minimal with unmasked grids", classified);

    // 1% ruling perturbation must fail visibly
    const GalleryEntry g = example_gallery("circle");
    FrameCurve warped;
    const FrameCurve orig = g.scroll.ruling.Btilde;
    warped.f = [orig](double s) { return orig.f(1.01 * s); };
    NullScroll bad;
    bad.base = g.scroll.base;
    bad.ruling.Btilde = with_fd_derivatives(warped);
    bad.ruling.beta = compute_beta(bad.ruling.Btilde, {-1.0, 1.0});
    bad.span = {-1.0, 1.0};
    const VerificationReport rep = verify_minimal(bad, {-1.0, 1.0, 21, -1.0, 1.0, 21});
    const double h = rep.residuals.at("fd_H").max;
    report(4, "1% perturbed ruling is rejected (max |H| >= 1e-3)", h >= 1e-3, h, 1e-3);
}

// ---------------------------------------------------------------- criterion 5
void criterion_ar_structure() {
    // exact Q conj(Q) = 0 through the closed-form l-multiple structure
    const NullChart chart = chart_section31();
    bool exact = true;
    for (const char* n : {"circle", "hyperbola", "horizontal-umbrella"}) {
        const GalleryEntry e = example_gallery(n);
        for (double x : {-0.8, 0.0, 0.7})
            for (double y : {0.6, 1.2}) {
                const ParaComplex q = abresch_rosenberg(e.scroll, chart, x, y).closed_form;
                const ParaComplex qq = q * conj(q);
                exact = exact && qq.re == 0.0 && qq.im == 0.0;
            }
    }
    {
        const GalleryEntry p0 = example_gallery("parabola", 0.0);
        const ParaComplex q = abresch_rosenberg(p0.scroll, chart, 0.4, 0.9).closed_form;
        exact = exact && (q * conj(q)).re == 0.0;
    }
    report_flag(5, "Q conj(Q) = 0 exactly for every framed minimal scroll", exact);

    // construct_from_ar_data closes the loop
    const ScalarFn S = [](double x) { return 0.5 + 0.2 * std::sin(x); };
    const ArDataResult ar = construct_from_ar_data(
        S, [](double x) { return x / 8.0; }, constant_fn(1.0 / 8.0),
        [](double y) { return 1.0 / y; }, [](double y) { return -1.0 / (y * y); }, {-2.0, 2.0},
        {0.5, 2.0});
    double worst_q = 0.0, worst_h = 0.0;
    for (double x : {-1.5, -0.5, 0.5, 1.5})
        for (double y : {0.6, 1.0, 1.5, 1.9}) {
            const ARValue q = abresch_rosenberg(ar.scroll, ar.chart, x, y);
            worst_q = std::max(worst_q, abs_max(q.definitional - pc_l * S(x)));
            const SupportValue sv = support_function(ar.scroll, ar.chart, x, y);
            worst_h = std::max(worst_h, std::fabs(std::fabs(sv.definitional) -
                                                  4.0 * std::exp(0.5 * ar.chart.w(x, y))));
        }
    report(5, "AR-data loop: |Q - l S(x)| (definitional route)", worst_q <= 1e-6, worst_q, 1e-6);
    report(5, "AR-data loop: |h| = 4 e^{w/2}", worst_h <= 1e-5, worst_h, 1e-5);
}

// ---------------------------------------------------------------- criterion 6
void criterion_liouville() {
    const NullChart chart = chart_section31();
    double worst = 0.0;
    for (int i = 0; i <= 20; ++i)
        for (int j = 0; j <= 20; ++j) {
            const double x = -2.0 + 4.0 * i / 20.0;
            const double y = 0.5 + 1.5 * j / 20.0;
            worst = std::max(worst, std::fabs(liouville_residual(chart, x, y, 1e-3)));
        }
    report(6, "Liouville residual of w = log(-p_x q_y/(p+q)^2), p = x/8, q = 1/y", worst <= 1e-5,
           worst, 1e-5);
}

// ---------------------------------------------------------------- criterion 7
void criterion_correspondence() {
    double worst_comp = 0.0, worst_round = 0.0, worst_mean = 0.0;
    int realized_sign = 0;
    const std::vector<ScalarFn> k1s = {constant_fn(0.0), [](double s) { return std::sin(s); }};
    for (const ScalarFn& k1 : k1s) {
        const mink::MinkNullFrame mf =
            mink::integrate_mink_frame(k1, constant_fn(0.5), {-2.0, 2.0}, 1e-3);
        const NullScroll f = bscroll_to_nil(mf);

        const VerificationReport comp =
            verify_correspondence(mf, f, {-1.5, 1.5, 21, -0.8, 0.8, 15});
        for (const char* key : {"f1", "f2", "f3"})
            worst_comp = std::max(worst_comp, comp.residuals.at(key).max);

        // Minkowski derivative round trip through the chart
        const NullChart chart = chart_section31();
        const DerivativeTriple phi = derivative_of(f, chart);
        const mink::MinkMapFn Phi = [&mf, &chart](double x, double y) {
            return bscroll_eval(mf, chart.s(x), chart.t(x, y));
        };
        for (double x : {-0.8, 0.1, 0.9})
            for (double y : {0.5, 1.2}) {
                const auto lifted = to_mink(phi(x, y));
                const double h = 1e-5;
                const mink::MinkVector px = (Phi(x + h, y) - Phi(x - h, y)) * (0.5 / h);
                const mink::MinkVector py = (Phi(x, y + h) - Phi(x, y - h)) * (0.5 / h);
                const ParaComplex z[3] = {chart_dz(px.t, py.t, ChartKind::NullCoords),
                                          chart_dz(px.x, py.x, ChartKind::NullCoords),
                                          chart_dz(px.y, py.y, ChartKind::NullCoords)};
                for (int c = 0; c < 3; ++c)
                    worst_round = std::max(worst_round, abs_max(lifted[c] - z[c]));

                const mink::SurfaceData sd =
                    surface_data(Phi, ChartKind::NullCoords, x, y);
                worst_mean = std::max(worst_mean, std::fabs(std::fabs(sd.H) - 0.5));
                realized_sign = sd.H > 0 ? 1 : -1;
            }
    }
    report(7, "B-scroll lift component formulas (k1 in {0, sin s})", worst_comp <= 1e-6,
           worst_comp, 1e-6);
    report(7, "derivative round trip through to_mink", worst_round <= 1e-6, worst_round, 1e-6);
    std::printf("     realized L3 mean-curvature sign: %+d (recorded; the identity |H~| = k2\n"
                "     holds only up to the choice of normal)\n",
                realized_sign);
    report(7, "k2 = 1/2 B-scroll FD mean curvature: | |H~| - 1/2 |", worst_mean <= 1e-4,
           worst_mean, 1e-4);
}

// ---------------------------------------------------------------- criterion 8
Mat3 random_so21(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> d(-0.7, 0.7);
    const double a = d(rng), b = d(rng), th = d(rng);
    Mat3 bx, by, rot;
    bx(0, 0) = std::cosh(a);
    bx(0, 1) = std::sinh(a);
    bx(1, 0) = std::sinh(a);
    bx(1, 1) = std::cosh(a);
    bx(2, 2) = 1.0;
    by(0, 0) = std::cosh(b);
    by(0, 2) = std::sinh(b);
    by(2, 0) = std::sinh(b);
    by(2, 2) = std::cosh(b);
    by(1, 1) = 1.0;
    rot(0, 0) = 1.0;
    rot(1, 1) = std::cos(th);
    rot(1, 2) = -std::sin(th);
    rot(2, 1) = std::sin(th);
    rot(2, 2) = std::cos(th);
    return bx * by * rot;
}

void criterion_gauge() {
    const NullScroll f =
        construct_from_curvature([](double s) { return std::sin(s); }, {-2.0, 2.0});
    const NullChart chart = chart_section31();
    const DerivativeTriple phi1 = closed_form_triple(f, chart);

    std::mt19937_64 rng(1234);
    double worst_h = 0.0, worst_q = 0.0, worst_H = 0.0, worst_path = 0.0;
    bool all_lorentz = true;
    for (int trial = 0; trial < 3; ++trial) {
        const Mat3 F0 = random_so21(rng);
        all_lorentz = all_lorentz && mink::is_special_lorentz(F0);
        const GaugeSurface g = gauge_transform(f, chart, F0, {0.0, 0.5});

        for (double x : {-0.5, 0.2, 0.8})
            for (double y : {0.6, 1.1}) {
                const NilSurfaceProbe before = probe_from_triple(phi1.phi, x, y);
                const NilSurfaceProbe after = probe_from_triple(g.triple.phi, x, y);
                worst_h = std::max(worst_h,
                                   std::fabs(std::fabs(after.support) - std::fabs(before.support)));
                worst_q = std::max(worst_q, abs_max(after.Q_def - before.Q_def));
                worst_H = std::max(worst_H, std::fabs(after.H));
            }
        // the transformed triple reintegrates path-independently
        const PathIntegration pi =
            integrate_from_derivative(g.triple.phi, {0.0, 0.5}, nil3_identity(), {0.7, 1.3});
        worst_path = std::max(worst_path, pi.path_disagreement);
    }
    report_flag(8, "three pseudorandom gauges lie in SO(2,1)", all_lorentz);
    report(8, "gauge invariance of |h|", worst_h <= 1e-5, worst_h, 1e-5);
    report(8, "gauge invariance of Q", worst_q <= 1e-6, worst_q, 1e-6);
    report(8, "transformed surfaces stay minimal (FD max |H|)", worst_H <= 1e-4, worst_H, 1e-4);
    report(8, "transformed triples reintegrate path-independently", worst_path <= 1e-7,
           worst_path, 1e-7);
}

// ---------------------------------------------------------------- criterion 9
void criterion_planarity() {
    auto sample = [](const GalleryEntry& e) {
        std::vector<Nil3Point> pts;
        for (int i = 0; i < e.exact_grid.ns; i += 2)
            for (int j = 0; j < e.exact_grid.nt; j += 2)
                pts.push_back(e.scroll.eval(e.exact_grid.s(i), e.exact_grid.t(j)));
        return pts;
    };
    const double umb = verify_planarity(sample(example_gallery("horizontal-umbrella")));
    const double par = verify_planarity(sample(example_gallery("parabola", 0.0)));
    const double cir = verify_planarity(sample(example_gallery("circle")));
    report(9, "horizontal umbrella planarity", umb <= 1e-8, umb, 1e-8);
    report(9, "parabola b = 0 planarity", par <= 1e-8, par, 1e-8);
    report(9, "circle scroll is non-planar (negative control)", cir > 1e-3, cir, 1e-3);
}

// --------------------------------------------------------------- criterion 10
void criterion_convergence() {
    const GalleryEntry circle = example_gallery("circle");
    const MapFn map = circle.scroll.as_map();
    double coarse = 0.0, fine = 0.0;
    for (double s : {-0.6, -0.1, 0.4, 0.9})
        for (double t : {-0.3, 0.5}) {
            coarse += std::fabs(fd_mean_curvature(map, s, t, 1e-3, 1e-2));
            fine += std::fabs(fd_mean_curvature(map, s, t, 5e-4, 5e-3));
        }
    const double ratio = coarse / fine;
    const bool ok = ratio >= 3.5 && ratio <= 4.5;
    report(10, "FD mean-curvature error contracts ~4x when steps halve", ok, ratio, 4.0);
}

}  // namespace

int main() {
    std::printf("nilscroll acceptance suite\n");
    criterion_paracomplex();
    criterion_frame_conservation();
    criterion_gallery();
    criterion_minimality();
    criterion_ar_structure();
    criterion_liouville();
    criterion_correspondence();
    criterion_gauge();
    criterion_planarity();
    criterion_convergence();

    std::printf("%s (%d failing check%s)\n", failures == 0 ? "ALL CRITERIA PASS" : "FAILURES",
                failures, failures == 1 ? "" : "s");
    return failures == 0 ? 0 : 1;
}
