#include <doctest.h>

#include <random>

#include "qpvi/monodromy.hpp"

using namespace qpvi;

namespace {
cx rand_annulus(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> rad(lo, hi), ang(0.0, 2.0 * M_PI);
    double r = rad(rng), a = ang(rng);
    return {r * std::cos(a), r * std::sin(a)};
}
}  // namespace

TEST_CASE("projective point semantics") {
    Proj1Point a(cx(1.0), cx(2.0)), b(cx(2.0), cx(4.0));
    CHECK(Proj1Point::same(a, b));
    CHECK_FALSE(Proj1Point::same(a, Proj1Point(cx(2.0), cx(1.0))));
    CHECK(Proj1Point::infinity().is_infinity());
    CHECK(std::abs(Proj1Point::affine(cx(0.7)).value() - cx(0.7)) < 1e-15);
    CHECK_THROWS(Proj1Point(cx(0.0), cx(0.0)));
}

TEST_CASE("the form has no square terms") {
    QuadricCoeffs c{cx(1.1), cx(0.7), cx(0.3), cx(0.9), cx(1.3), cx(0.4), 1};
    Quad4Point pt{{Proj1Point(cx(1.0), cx(1.0)), Proj1Point(cx(0.0), cx(1.0)),
                   Proj1Point(cx(0.0), cx(1.0)), Proj1Point(cx(0.0), cx(1.0))}};
    CHECK(std::abs(eval_form(c, pt).value) < 1e-15);
}

TEST_CASE("single infinity reduces to the displayed plane") {
    std::mt19937_64 rng(2);
    QuadricCoeffs c{cx(1.1, 0.2), cx(0.7, -0.1), cx(0.3, 0.4), cx(0.9), cx(1.3), cx(0.4), 1};
    // rho4 = inf and B r3 - D r1 + F r2 = 0 kills the form
    for (int t = 0; t < 10; ++t) {
        cx r1 = rand_annulus(rng, 0.3, 1.5), r2 = rand_annulus(rng, 0.3, 1.5);
        cx r3 = (c.D * r1 - c.F * r2) / c.B;
        Quad4Point pt{{Proj1Point::affine(r1), Proj1Point::affine(r2), Proj1Point::affine(r3),
                       Proj1Point::infinity()}};
        CHECK(eval_form(c, pt).residual() < 1e-14);
    }
}

TEST_CASE("rank classification") {
    QuadricCoeffs ones{cx(1), cx(1), cx(1), cx(1), cx(1), cx(1), 1};
    CHECK(classify(ones).rank == 4);
    QuadricCoeffs r3{cx(2), cx(2), cx(1), cx(1), cx(1), cx(1), 1};
    RankInfo info = classify(r3);
    CHECK(info.rank == 3);
    REQUIRE(info.singular_direction.has_value());
    for (cx v : *info.singular_direction) CHECK(std::abs(v) > 1e-6);
    ParamSet p = ref_params();
    CHECK(classify(quadric_coeffs(p, 1)).rank == 4);
    CHECK(classify(quadric_coeffs(p, 2)).rank == 4);
    // the omega = 1 family member is the degenerate one
    CHECK(classify(quadric_coeffs(rebalance_rho(p, cx(1.0)), 1)).rank == 3);
}

TEST_CASE("pencil membership on exact combinations") {
    std::mt19937_64 rng(9);
    auto rnd6 = [&] {
        QuadricCoeffs c;
        c.A = rand_annulus(rng, 0.5, 1.5);
        c.B = rand_annulus(rng, 0.5, 1.5);
        c.C = rand_annulus(rng, 0.5, 1.5);
        c.D = rand_annulus(rng, 0.5, 1.5);
        c.E = rand_annulus(rng, 0.5, 1.5);
        c.F = rand_annulus(rng, 0.5, 1.5);
        return c;
    };
    PencilSpec pencil{rnd6(), rnd6()};
    auto id = pencil_membership(pencil.gen1, pencil);
    REQUIRE(id.has_value());
    CHECK(std::abs(id->first - cx(1.0)) < 1e-12);
    CHECK(std::abs(id->second) < 1e-12);
    QuadricCoeffs mix;
    auto g1 = pencil.gen1.as_array(), g2 = pencil.gen2.as_array();
    std::array<cx, 6> tgt;
    for (int i = 0; i < 6; ++i) tgt[i] = cx(2.0) * g1[i] - cx(3.0) * g2[i];
    mix.A = tgt[0]; mix.B = tgt[1]; mix.C = tgt[2]; mix.D = tgt[3]; mix.E = tgt[4]; mix.F = tgt[5];
    auto lam = pencil_membership(mix, pencil);
    REQUIRE(lam.has_value());
    CHECK(std::abs(lam->first - cx(2.0)) < 1e-11);
    CHECK(std::abs(lam->second + cx(3.0)) < 1e-11);
    // a generic third quadric is not a member
    CHECK_FALSE(pencil_membership(rnd6(), pencil).has_value());
}

TEST_CASE("quadric family membership under the rho rebalancing") {
    ParamSet p = ref_params();
    PencilSpec pencil{quadric_coeffs(rebalance_rho(p, cx(0.8)), 1),
                      quadric_coeffs(rebalance_rho(p, cx(1.0)), 1)};
    QuadricCoeffs t13 = quadric_coeffs(rebalance_rho(p, cx(1.3)), 1);
    auto lam = pencil_membership(t13, pencil, 1e-7);
    CHECK(lam.has_value());
    CHECK(pencil_residual(t13, pencil) < 1e-10);
}

TEST_CASE("boundary analysis catalogue") {
    ParamSet p = ref_params();
    QuadricCoeffs c = quadric_coeffs(p, 1);
    BoundaryReport br = boundary_analysis(c);
    // position 4: plane (-D, F, B) against (r1, r2, r3)
    auto& s4 = br.single[3];
    CHECK(s4.plane_coords == std::array<int, 3>{1, 2, 3});
    CHECK(std::abs(s4.plane_coeffs[0] + c.D) < 1e-15);
    CHECK(std::abs(s4.plane_coeffs[1] - c.F) < 1e-15);
    CHECK(std::abs(s4.plane_coeffs[2] - c.B) < 1e-15);
    // position 1: plane (A, C, -D) against (r2, r3, r4)
    auto& s1 = br.single[0];
    CHECK(std::abs(s1.plane_coeffs[0] - c.A) < 1e-15);
    CHECK(std::abs(s1.plane_coeffs[1] - c.C) < 1e-15);
    CHECK(std::abs(s1.plane_coeffs[2] + c.D) < 1e-15);
    for (auto& s : br.single) CHECK(s.min_gradient_norm > 1e-3);
    // double infinity at {3,4} is obstructed by B
    bool found = false;
    for (auto& d : br.doubles)
        if (d.positions == std::array<int, 2>{3, 4}) {
            CHECK(std::abs(d.obstruction - c.B) < 1e-15);
            found = true;
        }
    CHECK(found);
    for (double t : br.triple_max_residual) CHECK(t < 1e-14);
}
