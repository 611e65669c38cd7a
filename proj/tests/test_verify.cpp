#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "nilscroll/construct.hpp"
#include "nilscroll/correspondence.hpp"
#include "nilscroll/errors.hpp"
#include "nilscroll/io.hpp"
#include "nilscroll/verify.hpp"

using namespace nilscroll;

TEST_CASE("[verify] fd mean curvature on minimal fixtures") {
    const GalleryEntry circle = example_gallery("circle");
    const MapFn map = circle.scroll.as_map();
    for (double s : {-0.8, 0.0, 0.7})
        for (double t : {-0.6, 0.3}) CHECK(std::fabs(fd_mean_curvature(map, s, t)) < 1e-4);

    // vertical plane: flat, H = 0
    const GalleryEntry vp = example_gallery("vertical-plane");
    CHECK(std::fabs(fd_mean_curvature(vp.scroll.as_map(), 1.0, 0.3)) < 1e-4);
}

TEST_CASE("[verify] fd mean curvature catches perturbations") {
    const GalleryEntry g = example_gallery("circle");
    const NullCurve base = g.scroll.base;
    const double omega = 1.01;
    const MapFn bad = [base, omega](double s, double t) {
        const FrameVector B{0.5, 0.5 * std::cos(omega * s), 0.5 * std::sin(omega * s)};
        return group_mul(base.gamma(s), lie_exp(t * B));
    };
    double max_h = 0.0;
    for (double s : {-0.7, -0.2, 0.3, 0.8})
        for (double t : {-0.4, 0.2, 0.6}) max_h = std::max(max_h, std::fabs(fd_mean_curvature(bad, s, t)));
    CHECK(max_h > 1e-3);
}

TEST_CASE("[verify] fd mean curvature converges at second order") {
    const GalleryEntry circle = example_gallery("circle");
    const MapFn map = circle.scroll.as_map();
    double err_coarse = 0.0, err_fine = 0.0;
    for (double s : {-0.6, -0.1, 0.4, 0.9}) {
        for (double t : {-0.3, 0.5}) {
            err_coarse += std::fabs(fd_mean_curvature(map, s, t, 1e-3, 1e-2));
            err_fine += std::fabs(fd_mean_curvature(map, s, t, 5e-4, 5e-3));
        }
    }
    const double ratio = err_coarse / err_fine;
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
}

TEST_CASE("[verify] verify_minimal reports") {
    const GalleryEntry circle = example_gallery("circle");
    const VerificationReport rep = verify_minimal(circle.scroll, circle.working_grid);
    CHECK(rep.all_pass());
    CHECK(rep.mask_fraction == 0.0);
    CHECK(rep.residuals.at("closed_H").max < 1e-8);
    CHECK(rep.residuals.at("fd_H").max < 1e-4);
    CHECK(rep.epsilon_sign != 0);

    // deterministic for fixed inputs
    const VerificationReport rep2 = verify_minimal(circle.scroll, circle.working_grid);
    CHECK(rep.residuals.at("fd_H").max == rep2.residuals.at("fd_H").max);
    CHECK(rep.to_json() == rep2.to_json());

    // JSON carries the grid-report keys
    const std::string json = rep.to_json();
    CHECK(json.find("maxH") != std::string::npos);
    CHECK(json.find("maskFraction") != std::string::npos);
    CHECK(json.find("epsilonSign") != std::string::npos);
}

TEST_CASE("[verify] non-minimal fixtures fail") {
    const GalleryEntry g = example_gallery("circle");
    const double omega = 1.01;
    FrameCurve Bp;
    Bp.f = [omega](double s) {
        return FrameVector{0.5, 0.5 * std::cos(omega * s), 0.5 * std::sin(omega * s)};
    };
    NullScroll bad;
    bad.base = g.scroll.base;
    bad.ruling.Btilde = with_fd_derivatives(Bp);
    bad.ruling.beta = compute_beta(bad.ruling.Btilde, {-1.0, 1.0});
    bad.span = {-1.0, 1.0};
    const VerificationReport rep = verify_minimal(bad, {-0.8, 0.8, 9, -0.5, 0.5, 9});
    CHECK(!rep.all_pass());
    CHECK(rep.residuals.at("fd_H").max > 1e-3);
}

TEST_CASE("[verify] vacuous grids fail loudly") {
    // hyperbola scroll is degenerate along t = 0: a t = 0 line grid masks out
    const GalleryEntry hyp = example_gallery("hyperbola");
    const VerificationReport rep = verify_minimal(hyp.scroll, {-1.0, 1.0, 9, 0.0, 0.0, 1});
    CHECK(rep.mask_fraction == 1.0);
    CHECK(!rep.all_pass());
}

TEST_CASE("[verify] planarity") {
    const GalleryEntry umb = example_gallery("horizontal-umbrella");
    std::vector<Nil3Point> pts;
    for (int i = 0; i < umb.exact_grid.ns; i += 2)
        for (int j = 0; j < umb.exact_grid.nt; j += 2)
            pts.push_back(umb.scroll.eval(umb.exact_grid.s(i), umb.exact_grid.t(j)));
    CHECK(verify_planarity(pts) < 1e-8);

    const GalleryEntry p0 = example_gallery("parabola", 0.0);
    pts.clear();
    for (int i = 0; i < p0.exact_grid.ns; i += 2)
        for (int j = 0; j < p0.exact_grid.nt; j += 2)
            pts.push_back(p0.scroll.eval(p0.exact_grid.s(i), p0.exact_grid.t(j)));
    CHECK(verify_planarity(pts) < 1e-8);

    // circle scroll is the negative control
    const GalleryEntry circle = example_gallery("circle");
    pts.clear();
    for (int i = 0; i < circle.exact_grid.ns; i += 2)
        for (int j = 0; j < circle.exact_grid.nt; j += 2)
            pts.push_back(circle.scroll.eval(circle.exact_grid.s(i), circle.exact_grid.t(j)));
    CHECK(verify_planarity(pts) > 1e-3);

    const std::vector<Nil3Point> few{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    CHECK_THROWS_AS(verify_planarity(few), TooFewPoints);
}

TEST_CASE("[verify] correspondence report") {
    const mink::MinkNullFrame mf =
        mink::integrate_mink_frame([](double s) { return std::sin(s); }, constant_fn(0.5),
                                   {-2.0, 2.0}, 1e-3);
    const NullScroll f = bscroll_to_nil(mf);
    const VerificationReport rep = verify_correspondence(mf, f, {-1.5, 1.5, 21, -0.8, 0.8, 15});
    CHECK(rep.all_pass());
    CHECK(rep.residuals.at("f3").max < 1e-6);

    // negative control: mismatched frames
    const mink::MinkNullFrame other =
        mink::integrate_mink_frame(constant_fn(1.0), constant_fn(0.5), {-2.0, 2.0}, 1e-3);
    const VerificationReport bad = verify_correspondence(other, f, {-1.5, 1.5, 11, -0.8, 0.8, 9});
    CHECK(!bad.all_pass());
}

TEST_CASE("[verify] junit output") {
    const GalleryEntry circle = example_gallery("circle");
    const VerificationReport rep = verify_minimal(circle.scroll, {-0.5, 0.5, 5, -0.5, 0.5, 5});
    const std::string xml = junit_xml({rep});
    CHECK(xml.find("<testsuite") != std::string::npos);
    CHECK(xml.find("failures=\"0\"") != std::string::npos);
}

TEST_CASE("[verify] tolerance table lookup") {
    Tolerances t;
    t.by_name("fd_H") = 2e-4;
    CHECK(t.fd_H == 2e-4);
    CHECK_THROWS_AS(t.by_name("bogus"), BadInput);
}

TEST_CASE("[verify] csv formats round trip") {
    const std::string dir = "io_test_tmp";
    std::filesystem::create_directories(dir);

    // curve csv `s,x1,x2,x3`
    {
        std::string text = "s,x1,x2,x3\n";
        for (int i = 0; i <= 50; ++i) {
            const double s = -1.0 + 2.0 * i / 50.0;
            text += std::to_string(s) + "," + std::to_string(-s) + "," +
                    std::to_string(std::sin(s)) + "," + std::to_string(-0.5 * s * std::sin(s)) +
                    "\n";
        }
        write_text(dir + "/curve.csv", text);
        const SampledColumns c = load_sampled_curve(dir + "/curve.csv", "x1", "x2", "x3");
        CHECK(c.s.size() == 51);
        CHECK(c.span().lo == doctest::Approx(-1.0));
    }

    // minkowski velocity csv `s,v_t,v_x,v_y`
    {
        write_text(dir + "/vel.csv", "s,v_t,v_x,v_y\n0,1,0.5,0.5\n1,1,0.6,0.4\n");
        const SampledColumns c = load_sampled_curve(dir + "/vel.csv", "v_t", "v_x", "v_y");
        CHECK(c.v[1].v2 == doctest::Approx(0.6));
    }

    // scalar csv `s,k1`
    {
        write_text(dir + "/k1.csv", "s,k1\n-1,0\n0,0.5\n1,1\n");
        Span sp;
        const ScalarFn k1 = load_sampled_scalar(dir + "/k1.csv", "k1", &sp);
        CHECK(k1(0.0) == doctest::Approx(0.5));
        CHECK(sp.hi == doctest::Approx(1.0));
    }

    // malformed inputs
    write_text(dir + "/bad.csv", "s,x1\n1,2,3\n");
    CHECK_THROWS_AS(load_csv(dir + "/bad.csv"), BadInput);
    write_text(dir + "/dec.csv", "s,k1\n1,0\n0,1\n");
    CHECK_THROWS_AS(load_sampled_scalar(dir + "/dec.csv", "k1", nullptr), BadInput);
    CHECK_THROWS_AS(load_csv(dir + "/missing.csv"), BadInput);

    // SO(2,1) matrix as a 9-number row-major array
    write_text(dir + "/m.json", "[1,0,0, 0,1,0, 0,0,1]");
    const Mat3 M = load_matrix_json(dir + "/m.json");
    CHECK(M(1, 1) == 1.0);
    CHECK(mink::is_special_lorentz(M));

    // mesh writers
    const GalleryEntry circle = example_gallery("circle");
    const GridSpec grid{-0.5, 0.5, 4, -0.5, 0.5, 3};
    write_mesh_csv(dir + "/mesh.csv", circle.scroll.as_map(), grid);
    write_mesh_obj(dir + "/mesh.obj", circle.scroll.as_map(), grid);
    {
        std::ifstream in(dir + "/mesh.csv");
        std::string header;
        std::getline(in, header);
        CHECK(header == "s,t,x1,x2,x3");
        int rows = 0;
        for (std::string line; std::getline(in, line);) ++rows;
        CHECK(rows == 12);
    }
    {
        std::ifstream in(dir + "/mesh.obj");
        int verts = 0, faces = 0;
        for (std::string line; std::getline(in, line);) {
            if (line.rfind("v ", 0) == 0) ++verts;
            if (line.rfind("f ", 0) == 0) ++faces;
        }
        CHECK(verts == 12);
        CHECK(faces == 6);
    }
    std::filesystem::remove_all(dir);
}
