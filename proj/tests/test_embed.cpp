#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qpvi/embed.hpp"

using namespace qpvi;

namespace {
cx rand_annulus(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> rad(lo, hi), ang(0.0, 2.0 * M_PI);
    double r = rad(rng), a = ang(rng);
    return {r * std::cos(a), r * std::sin(a)};
}
}  // namespace

TEST_CASE("eta is scale free and sees the pole") {
    ParamSet p = ref_params();
    std::mt19937_64 rng(5);
    Quad4Point pt;
    for (int k = 0; k < 4; ++k)
        pt.c[k] = Proj1Point(rand_annulus(rng, 0.4, 1.5), rand_annulus(rng, 0.4, 1.5));
    EtaPoint a = eta(p, pt);
    Quad4Point scaled = pt;
    scaled.c[2] = Proj1Point(pt.c[2].x * cx(0.0, 3.0), pt.c[2].y * cx(0.0, 3.0));
    EtaPoint b = eta(p, scaled);
    for (int t = 0; t < 6; ++t) CHECK(std::abs(a.eta[t] - b.eta[t]) < 1e-12 * std::abs(a.eta[t]));
    // the det locus lies on the reference quadric, i.e. at the pole
    CHECK_THROWS_AS(eta(p, det_locus(p, cx(0.9, 0.2))), std::domain_error);
}

TEST_CASE("images satisfy the four defining equations") {
    ParamSet p = ref_params();
    std::mt19937_64 rng(13);
    cx omega = p.rho[0] / p.rho[1];
    for (int s = 0; s < 20; ++s) {
        MonodromyRep m = sample_point(p, rng);
        EtaPoint e = eta(p, rho_tuple(m).rho);
        auto r = c6_residuals(p, omega, e);
        for (double v : r) CHECK(v < 1e-8);
    }
    // random points are a negative control
    std::array<cx, 6> noise;
    for (cx& z : noise) z = rand_annulus(rng, 0.5, 1.5);
    auto r = c6_residuals(p, omega, EtaPoint{noise});
    CHECK((r[0] > 1e-3 || r[1] > 1e-3 || r[2] > 1e-3 || r[3] > 1e-3));
}

TEST_CASE("det locus projective residuals and the missing affine equation") {
    ParamSet p = ref_params();
    std::mt19937_64 rng(17);
    for (int s = 0; s < 10; ++s) {
        cx t = rand_annulus(rng, 0.4, 2.0);
        cx w = rand_annulus(rng, 0.6, 1.6);
        auto r = c6_residuals_projective(p, w, det_locus(p, t));
        for (double v : r) CHECK(v < 1e-7);
    }
}

TEST_CASE("elimination to the affine Segre surface") {
    ParamSet p = ref_params();
    std::mt19937_64 rng(19);
    cx omega = p.rho[0] / p.rho[1];
    EliminatedQuadrics eq = eliminate_to_c4(p, omega);
    CHECK(eq.condition < 1e6);
    for (int s = 0; s < 20; ++s) {
        MonodromyRep m = sample_point(p, rng);
        EtaPoint e = eta(p, rho_tuple(m).rho);
        std::array<cx, 4> v = eta_restricted(e);
        // back substitution reproduces the eliminated coordinates
        cx e24 = eq.c24, e34 = eq.c34;
        for (int k = 0; k < 4; ++k) {
            e24 += eq.l24[k] * v[k];
            e34 += eq.l34[k] * v[k];
        }
        CHECK(std::abs(e24 - e.e24()) < 1e-9 * std::abs(e.e24()));
        CHECK(std::abs(e34 - e.e34()) < 1e-9 * std::abs(e.e34()));
        double vmax = 1.0;
        for (cx z : v) vmax = std::max(vmax, std::abs(z));
        CHECK(std::abs(eq.q1.eval(v)) < 1e-8 * eq.q1.max_abs_coef() * vmax * vmax);
        CHECK(std::abs(eq.q2.eval(v)) < 1e-8 * eq.q2.max_abs_coef() * vmax * vmax);
    }
    // degree-2 parts do not move with omega
    EliminatedQuadrics eq2 = eliminate_to_c4(p, cx(0.55, 0.2));
    for (auto [qa, qb] : {std::pair{&eq.q1, &eq2.q1}, std::pair{&eq.q2, &eq2.q2}}) {
        Poly4 da = qa->degree_part(2), db = qb->degree_part(2);
        double cap = std::max(da.max_abs_coef(), db.max_abs_coef());
        for (auto& [e, cv] : da.terms()) {
            cx other = db.terms().count(e) ? db.terms().at(e) : cx(0.0);
            CHECK(std::abs(cv - other) < 1e-10 * cap);
        }
    }
}

TEST_CASE("sixteen lines at the reference parameters") {
    ParamSet p = ref_params();
    std::mt19937_64 rng(23);
    Lines16 out = lines16(p, p.rho[0] / p.rho[1], rng, 5);
    REQUIRE(out.lines.size() == 16);
    for (auto& l : out.lines) {
        INFO(l.label);
        CHECK(l.collinearity < 1e-6);
        CHECK(l.quadric_residuals[0] < 1e-7);
        CHECK(l.quadric_residuals[1] < 1e-7);
    }
    CHECK(out.min_within_family_distance > 1e-6);
}

TEST_CASE("cubic equation of the image in the triple ratio chart") {
    ParamSet p = ref_params();
    std::mt19937_64 rng(29);
    QuadricCoeffs c = quadric_coeffs(p, 1);
    for (int s = 0; s < 50; ++s) {
        MonodromyRep m = sample_point(p, rng);
        RhoTuple t = rho_tuple(m);
        cx X = Proj1Point::ratio(t.rho.c[0], t.rho.c[1]).value();
        cx Y = Proj1Point::ratio(t.rho.c[1], t.rho.c[2]).value();
        cx Z = Proj1Point::ratio(t.rho.c[2], t.rho.c[3]).value();
        CHECK(std::abs(cubic_f(c, X, Y, Z)) < 1e-7 * cubic_f_scale(c, X, Y, Z));
    }
}

TEST_CASE("cubic gradient against central differences") {
    ParamSet p = ref_params();
    QuadricCoeffs c = quadric_coeffs(p, 1);
    std::mt19937_64 rng(31);
    const double h = 1e-6;
    for (int s = 0; s < 20; ++s) {
        cx X = rand_annulus(rng, 0.5, 1.5), Y = rand_annulus(rng, 0.5, 1.5),
           Z = rand_annulus(rng, 0.5, 1.5);
        auto g = cubic_f_gradient(c, X, Y, Z);
        cx fx = (cubic_f(c, X + h, Y, Z) - cubic_f(c, X - h, Y, Z)) / (2.0 * h);
        cx fy = (cubic_f(c, X, Y + h, Z) - cubic_f(c, X, Y - h, Z)) / (2.0 * h);
        cx fz = (cubic_f(c, X, Y, Z + h) - cubic_f(c, X, Y, Z - h)) / (2.0 * h);
        CHECK(std::abs(g[0] - fx) < 1e-6 * std::max(1.0, std::abs(fx)));
        CHECK(std::abs(g[1] - fy) < 1e-6 * std::max(1.0, std::abs(fy)));
        CHECK(std::abs(g[2] - fz) < 1e-6 * std::max(1.0, std::abs(fz)));
    }
}

TEST_CASE("resultant: Sylvester determinant against the root-product oracle") {
    std::mt19937_64 rng(37);
    for (int s = 0; s < 20; ++s) {
        std::array<cx, 4> a, b;
        for (cx& v : a) v = rand_annulus(rng, 0.5, 1.5);
        for (cx& v : b) v = rand_annulus(rng, 0.5, 1.5);
        cx syl = resultant_sylvester(a, b);
        cx orc = oracles::resultant_by_roots(a, b);
        CHECK(std::abs(syl - orc) < 1e-8 * std::max(std::abs(syl), std::abs(orc)));
    }
    // a shared root collapses the resultant
    for (int s = 0; s < 10; ++s) {
        cx r = rand_annulus(rng, 0.5, 1.5);
        auto mul = [&](std::array<cx, 3> qd) {
            return std::array<cx, 4>{qd[0], qd[1] - r * qd[0], qd[2] - r * qd[1], -r * qd[2]};
        };
        std::array<cx, 3> qa, qb;
        for (cx& v : qa) v = rand_annulus(rng, 0.5, 1.5);
        for (cx& v : qb) v = rand_annulus(rng, 0.5, 1.5);
        cx syl = resultant_sylvester(mul(qa), mul(qb));
        CHECK(std::abs(syl) < 1e-10);
    }
}

TEST_CASE("cubic coefficient vectors match the displayed leading terms") {
    ParamSet p = ref_params();
    QuadricCoeffs c = quadric_coeffs(p, 1);
    CubicSurface s = cubic_surface_eq(c);
    CHECK(std::abs(s.p_coeffs[0] + c.A * c.A * c.E) < 1e-15);
    CHECK(std::abs(s.q_coeffs[0] - c.A * c.F * c.F) < 1e-15);
    CHECK(std::abs(s.q_coeffs[3] - c.B * c.C * c.C) < 1e-15);
    CHECK(std::abs(s.resultant - resultant_sylvester(s.p_coeffs, s.q_coeffs)) < 1e-15);
}
