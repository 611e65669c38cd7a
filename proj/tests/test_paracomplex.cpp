#include <doctest.h>

#include <random>

#include "nilscroll/errors.hpp"
#include "nilscroll/paracomplex.hpp"

using namespace nilscroll;

TEST_CASE("[paracomplex] multiplication") {
    const ParaComplex z{3.0, -2.0};
    const ParaComplex one{1.0, 0.0};
    CHECK((one * z).re == z.re);
    CHECK((one * z).im == z.im);

    // l^2 = l, l lbar = 0, exact in floating point
    const ParaComplex ll = pc_l * pc_l;
    CHECK(ll.re == pc_l.re);
    CHECK(ll.im == pc_l.im);
    const ParaComplex mixed = pc_l * pc_lbar;
    CHECK(mixed.re == 0.0);
    CHECK(mixed.im == 0.0);
    const ParaComplex lbar2 = pc_lbar * pc_lbar;
    CHECK(lbar2.re == pc_lbar.re);
    CHECK(lbar2.im == pc_lbar.im);
    CHECK((pc_l + pc_lbar).re == 1.0);
    CHECK((pc_l + pc_lbar).im == 0.0);

    const ParaComplex p = ParaComplex{2.0, 1.0} * ParaComplex{2.0, -1.0};
    CHECK(p.re == doctest::Approx(3.0));
    CHECK(p.im == doctest::Approx(0.0));
}

TEST_CASE("[paracomplex] conjugation") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> d(-5.0, 5.0);
    for (int i = 0; i < 100; ++i) {
        const ParaComplex z{d(rng), d(rng)}, w{d(rng), d(rng)};
        const ParaComplex lhs = conj(z * w);
        const ParaComplex rhs = conj(z) * conj(w);
        CHECK(abs_max(lhs - rhs) < 1e-12);
        CHECK(conj(conj(z)).re == z.re);
        const ParaComplex zz = z * conj(z);
        CHECK(zz.im == doctest::Approx(0.0));
        CHECK(zz.re == doctest::Approx(squared_modulus(z)));
    }
}

TEST_CASE("[paracomplex] sqrt existence region and branch") {
    CHECK(pc_sqrt({1.0, 0.0})->re == doctest::Approx(1.0));
    CHECK(pc_sqrt({1.0, 0.0})->im == doctest::Approx(0.0));

    // i' has x - y = -1 < 0: no root
    CHECK(!pc_sqrt(pc_i).has_value());
    CHECK(!pc_sqrt({-1.0, 0.0}).has_value());

    const ParaComplex z{2.5, 1.5};  // (5+3i')/2
    const auto w = pc_sqrt(z);
    REQUIRE(w.has_value());
    CHECK(w->re >= 0.0);
    CHECK(abs_max(*w * *w - z) < 1e-12);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> d(0.0, 10.0);
    for (int i = 0; i < 500; ++i) {
        // sample inside the existence region via the idempotent coordinates
        const double u = d(rng), v = d(rng);
        const ParaComplex s{0.5 * (u + v), 0.5 * (u - v)};
        const auto r = pc_sqrt(s);
        REQUIRE(r.has_value());
        CHECK(abs_max(*r * *r - s) < 1e-12);
        CHECK(r->re >= 0.0);
    }
}

TEST_CASE("[paracomplex] exp") {
    CHECK(pc_exp({0.0, 0.0}).re == doctest::Approx(1.0));
    CHECK(pc_exp({0.0, 0.0}).im == doctest::Approx(0.0));

    const double th = 0.85;
    const ParaComplex e = pc_exp({0.0, th});
    CHECK(e.re == doctest::Approx(std::cosh(th)));
    CHECK(e.im == doctest::Approx(std::sinh(th)));

    // |z| = |re| + |im| <= 5 keeps |exp| <= e^5, where the identity is
    // resolvable at 1e-10 in doubles
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> d(-5.0, 5.0);
    int done = 0;
    while (done < 300) {
        const ParaComplex z{d(rng), d(rng)}, w{d(rng), d(rng)};
        if (std::fabs(z.re) + std::fabs(z.im) > 5.0 || std::fabs(w.re) + std::fabs(w.im) > 5.0)
            continue;
        CHECK(abs_max(pc_exp(z + w) - pc_exp(z) * pc_exp(w)) < 1e-10);
        ++done;
    }
}

TEST_CASE("[paracomplex] inverse") {
    CHECK(pc_inverse({1.0, 0.0})->re == doctest::Approx(1.0));

    // l is null: x^2 - y^2 = 0
    CHECK(!pc_inverse(pc_l).has_value());
    CHECK(!pc_inverse(pc_lbar).has_value());

    const auto inv = pc_inverse({2.0, 1.0});
    REQUIRE(inv.has_value());
    CHECK(inv->re == doctest::Approx(2.0 / 3.0));
    CHECK(inv->im == doctest::Approx(-1.0 / 3.0));

    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> d(-5.0, 5.0);
    int done = 0;
    while (done < 300) {
        const ParaComplex z{d(rng), d(rng)};
        if (std::fabs(squared_modulus(z)) < 1e-2) continue;
        const auto w = pc_inverse(z);
        REQUIRE(w.has_value());
        CHECK(abs_max(z * *w - ParaComplex{1.0, 0.0}) < 1e-12);
        ++done;
    }
}

TEST_CASE("[paracomplex] pc_partials") {
    const PcField id = [](double x, double y) { return ParaComplex{x, y}; };
    const PcPartials p = pc_partials(id, 0.3, -0.7);
    CHECK(abs_max(p.dz - ParaComplex{1.0, 0.0}) < 1e-10);
    CHECK(abs_max(p.dzbar) < 1e-10);

    const PcField bar = [](double x, double y) { return ParaComplex{x, -y}; };
    const PcPartials pb = pc_partials(bar, 0.3, -0.7);
    CHECK(abs_max(pb.dz) < 1e-10);
    CHECK(abs_max(pb.dzbar - ParaComplex{1.0, 0.0}) < 1e-10);

    // F = z^2: dF = 2z, analytic oracle
    const PcField sq = [](double x, double y) {
        const ParaComplex z{x, y};
        return z * z;
    };
    const double x = 1.2, y = 0.4;
    const PcPartials ps = pc_partials(sq, x, y);
    CHECK(abs_max(ps.dz - ParaComplex{2.0 * x, 2.0 * y}) < 1e-9);
    CHECK(abs_max(ps.dzbar) < 1e-9);

    const Rect dom{-1.0, 1.0, -1.0, 1.0};
    CHECK_THROWS_AS(pc_partials(id, dom, 1.0, 0.0), OutOfGrid);
    CHECK_NOTHROW(pc_partials(id, dom, 0.5, 0.5));
}
