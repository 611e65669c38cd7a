#include <doctest.h>

#include <cmath>
#include <random>

#include "nilscroll/nil3.hpp"

using namespace nilscroll;

namespace {

std::mt19937_64 rng(42);

Nil3Point random_point(double range = 10.0) {
    std::uniform_real_distribution<double> d(-range, range);
    return {d(rng), d(rng), d(rng)};
}

FrameVector random_vector(double range = 3.0) {
    std::uniform_real_distribution<double> d(-range, range);
    return {d(rng), d(rng), d(rng)};
}

double max_coord_diff(const Nil3Point& a, const Nil3Point& b) {
    return std::max({std::fabs(a.x1 - b.x1), std::fabs(a.x2 - b.x2), std::fabs(a.x3 - b.x3)});
}

// determinant of the 3x3 with columns u, v, w
double det3(const FrameVector& u, const FrameVector& v, const FrameVector& w) {
    return u.v1 * (v.v2 * w.v3 - v.v3 * w.v2) - v.v1 * (u.v2 * w.v3 - u.v3 * w.v2) +
           w.v1 * (u.v2 * v.v3 - u.v3 * v.v2);
}

}  // namespace

TEST_CASE("[nil3] group law") {
    const Nil3Point p = random_point();
    CHECK(max_coord_diff(group_mul(p, nil3_identity()), p) == 0.0);
    CHECK(max_coord_diff(group_mul(nil3_identity(), p), p) == 0.0);

    const Nil3Point r = group_mul({1, 0, 0}, {0, 1, 0});
    CHECK(r.x1 == 1.0);
    CHECK(r.x2 == 1.0);
    CHECK(r.x3 == 0.5);

    for (int i = 0; i < 200; ++i) {
        const Nil3Point a = random_point();
        CHECK(max_coord_diff(group_mul(a, group_inv(a)), nil3_identity()) < 1e-14);
        CHECK(max_coord_diff(group_mul(group_inv(a), a), nil3_identity()) < 1e-14);
    }
}

TEST_CASE("[nil3] associativity") {
    for (int i = 0; i < 500; ++i) {
        const Nil3Point a = random_point(), b = random_point(), c = random_point();
        const Nil3Point lhs = group_mul(group_mul(a, b), c);
        const Nil3Point rhs = group_mul(a, group_mul(b, c));
        CHECK(max_coord_diff(lhs, rhs) < 1e-13);
    }
}

TEST_CASE("[nil3] exponential coordinates") {
    CHECK(max_coord_diff(lie_exp({0, 0, 0}), nil3_identity()) == 0.0);
    const Nil3Point p = lie_exp({1, 0, 2});
    CHECK(p.x1 == 1.0);
    CHECK(p.x2 == 0.0);
    CHECK(p.x3 == 2.0);
    const FrameVector v = random_vector();
    const FrameVector back = lie_log(lie_exp(v));
    CHECK(back.v1 == v.v1);
    CHECK(back.v2 == v.v2);
    CHECK(back.v3 == v.v3);
}

TEST_CASE("[nil3] metric signature") {
    const FrameVector E1{1, 0, 0}, E2{0, 1, 0}, E3{0, 0, 1};
    CHECK(metric(E1, E1) == -1.0);
    CHECK(metric(E2, E3) == 0.0);
    const double th = 1.1;
    const FrameVector null_dir{1, std::cos(th), std::sin(th)};
    CHECK(metric(null_dir, null_dir) == doctest::Approx(0.0));
}

TEST_CASE("[nil3] cross product determinant oracle") {
    const FrameVector E1{1, 0, 0}, E2{0, 1, 0}, E3{0, 0, 1};
    CHECK(metric(cross(E2, E3), E1) == doctest::Approx(1.0));
    CHECK(cross(E2, E3).v1 == doctest::Approx(-1.0));

    for (int i = 0; i < 200; ++i) {
        const FrameVector v = random_vector(), w = random_vector(), z = random_vector();
        CHECK(metric(cross(v, w), z) == doctest::Approx(det3(v, w, z)).epsilon(1e-10));
        CHECK(metric(cross(v, w), v) == doctest::Approx(0.0));
        CHECK(metric(cross(v, w), w) == doctest::Approx(0.0));
        const FrameVector anti = cross(v, w) + cross(w, v);
        CHECK(frame_norm_inf(anti) == 0.0);
    }
    const FrameVector v = random_vector();
    CHECK(frame_norm_inf(cross(v, v)) == 0.0);
}

TEST_CASE("[nil3] connection table") {
    const FrameVector E[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    // the nine table entries
    auto nab = [&](int i, int j) { return connection_term(E[i], E[j]); };
    CHECK(frame_norm_inf(nab(0, 0)) == 0.0);
    CHECK(frame_norm_inf(nab(0, 1) - 0.5 * E[2]) == 0.0);
    CHECK(frame_norm_inf(nab(0, 2) + 0.5 * E[1]) == 0.0);
    CHECK(frame_norm_inf(nab(1, 0) + 0.5 * E[2]) == 0.0);
    CHECK(frame_norm_inf(nab(1, 1)) == 0.0);
    CHECK(frame_norm_inf(nab(1, 2) + 0.5 * E[0]) == 0.0);
    CHECK(frame_norm_inf(nab(2, 0) + 0.5 * E[1]) == 0.0);
    CHECK(frame_norm_inf(nab(2, 1) + 0.5 * E[0]) == 0.0);
    CHECK(frame_norm_inf(nab(2, 2)) == 0.0);

    // metric compatibility: g(nab_i E_j, E_k) + g(E_j, nab_i E_k) = 0
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                CHECK(metric(nab(i, j), E[k]) + metric(E[j], nab(i, k)) == doctest::Approx(0.0));

    // torsion-free against the bracket [e1,e2] = e3
    CHECK(frame_norm_inf(nab(0, 1) - nab(1, 0) - E[2]) == 0.0);
}

TEST_CASE("[nil3] left translated velocity") {
    const CurveFn line = [](double s) { return Nil3Point{s, 0.0, 0.0}; };
    const FrameVector a = left_translate_velocity(line, 1.3);
    CHECK(a.v1 == doctest::Approx(1.0));
    CHECK(a.v2 == doctest::Approx(0.0));
    CHECK(a.v3 == doctest::Approx(0.0));

    // circle-ruling base curve, velocity (-1, cos s, -sin s)
    const CurveFn gamma = [](double s) {
        return Nil3Point{-s, std::sin(s), -0.5 * s * std::sin(s)};
    };
    for (double s : {-1.0, 0.0, 0.4, 1.7}) {
        const FrameVector v = left_translate_velocity(gamma, s);
        CHECK(v.v1 == doctest::Approx(-1.0).epsilon(1e-8));
        CHECK(v.v2 == doctest::Approx(std::cos(s)).epsilon(1e-8));
        CHECK(v.v3 == doctest::Approx(-std::sin(s)).epsilon(1e-8));
    }
}

TEST_CASE("[nil3] covariant derivative") {
    // constant field along a constant curve
    const FrameFieldFn X = [](double) { return FrameVector{0.4, -1.0, 2.0}; };
    const CurveFn c = [](double) { return Nil3Point{1.0, 2.0, 3.0}; };
    CHECK(frame_norm_inf(covariant_derivative(X, c, 0.0)) < 1e-12);

    // nabla_{dt} f_t of a scroll equals -B2 B3 E1 - B1 B3 E2
    const FrameVector B{0.5, 0.5 * std::cos(0.7), 0.5 * std::sin(0.7)};
    const FrameVector expected{-B.v2 * B.v3, -B.v1 * B.v3, 0.0};
    CHECK(frame_norm_inf(connection_term(B, B) - expected) < 1e-15);

    // FD oracle: field X(s) = (sin s, s, 1) along gamma(s) = (s, s^2, 0)
    const FrameFieldFn Xs = [](double s) { return FrameVector{std::sin(s), s, 1.0}; };
    const CurveFn base = [](double s) { return Nil3Point{s, s * s, 0.0}; };
    const double s = 0.6;
    const FrameVector V = left_translate_velocity(base, s);
    const FrameVector analytic =
        covariant_derivative(FrameVector{std::cos(s), 1.0, 0.0}, V, Xs(s));
    const FrameVector numeric = covariant_derivative(Xs, base, s);
    CHECK(frame_norm_inf(numeric - analytic) < 1e-6);
}
