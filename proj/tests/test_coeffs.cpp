#include <doctest.h>

#include <random>

#include "qpvi/coeffs.hpp"
#include "qpvi/suites.hpp"

using namespace qpvi;

TEST_CASE("complementarity relation at the reference point") {
    ParamSet p = ref_params();
    cx b1211 = p.bracket(1, 2, 1, 1);
    cx b3422 = p.bracket(3, 4, 2, 2);
    cx r = t_ratio(p.q, {{b1211}, {b3422}});
    CHECK(std::abs(r + b1211) < 1e-12 * std::abs(b1211));
    CHECK(std::abs(r - cx(0.378)) < 1e-12);
}

TEST_CASE("closed forms match the interpolation oracle at the reference point") {
    ParamSet p = ref_params();
    InterpCoeffs a = interp_coeffs(p);
    InterpCoeffs b = interp_coeffs_oracle(p);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            CHECK(std::abs(a.lam[i][j] - b.lam[i][j]) < 1e-9 * std::abs(b.lam[i][j]));
            CHECK(std::abs(a.mu[i][j] - b.mu[i][j]) < 1e-9 * std::abs(b.mu[i][j]));
            CHECK(std::abs(a.lamp[i][j] - b.lamp[i][j]) < 1e-9 * std::abs(b.lamp[i][j]));
            CHECK(std::abs(a.mup[i][j] - b.mup[i][j]) < 1e-9 * std::abs(b.mup[i][j]));
            CHECK(std::abs(a.pairing_det(i, j)) > 0.0);
        }
}

TEST_CASE("swapping x3 and x4 exchanges primed and unprimed coefficients") {
    ParamSet p = ref_params();
    ParamSet ps = p;
    std::swap(ps.x[2], ps.x[3]);
    InterpCoeffs a = interp_coeffs(p);
    InterpCoeffs b = interp_coeffs(ps);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            CHECK(std::abs(a.lam[i][j] - b.lamp[i][j]) < 1e-12 * std::abs(a.lam[i][j]));
            CHECK(std::abs(a.mup[i][j] - b.mu[i][j]) < 1e-12 * std::abs(a.mup[i][j]));
        }
}

TEST_CASE("row ratio of lambda matches the displayed T-ratio") {
    ParamSet p = ref_params();
    InterpCoeffs a = interp_coeffs(p);
    for (int j = 1; j <= 2; ++j) {
        cx ratio = a.lam[1][j - 1] / a.lam[0][j - 1];
        cx closed = t_ratio(p.q, {{p.bracket(2, 3, j, 2), p.bracket(1, 2, j, 1)},
                                  {p.bracket(1, 2, j, 2), p.bracket(2, 3, j, 1)}});
        CHECK(std::abs(ratio - closed) < 1e-11 * std::abs(closed));
    }
}

TEST_CASE("gamma constants and the eight identification equations") {
    ParamSet p = ref_params();
    GammaConstants g = gamma_constants(p);
    for (double r : g.residuals) CHECK(r < 1e-12);
    // the four displayed gamma ratios evaluate to gamma itself
    InterpCoeffs c = interp_coeffs(p);
    cx r1 = c.lamp[0][0] * c.mup[1][1] / (c.lam[0][0] * c.mu[1][1]);
    CHECK(std::abs(r1 - g.gamma) < 1e-12 * std::abs(g.gamma));
    // alpha from the (1,2)(2,1) equation agrees with the (1,1)(2,2) one
    cx alpha2 = c.lamp[0][1] * c.lamp[1][0] - g.gamma * c.lam[0][1] * c.lam[1][0];
    CHECK(std::abs(alpha2 - g.alpha) < 1e-12 * std::abs(g.alpha));
}

TEST_CASE("quadric coefficients: nonzero, proportional, factored") {
    ParamSet p = ref_params();
    QuadricCoeffs c1 = quadric_coeffs(p, 1);
    QuadricCoeffs c2 = quadric_coeffs(p, 2);
    cx k = proportionality_constant(p);
    auto a1 = c1.as_array(), a2 = c2.as_array();
    for (int t = 0; t < 6; ++t) {
        CHECK(std::abs(a1[t]) > 0.0);
        CHECK(std::abs(a2[t] / a1[t] - k) < 1e-10 * std::abs(k));
    }
    CHECK(std::abs(k - cx(-176.09921246140172)) < 1e-8);
    for (int i = 1; i <= 2; ++i) {
        QuadricCoeffs c = (i == 1) ? c1 : c2;
        CHECK(std::abs(quadric_a_factored(p, i) - c.A) < 1e-11 * std::abs(c.A));
        CHECK(std::abs(quadric_b_factored(p, i) - c.B) < 1e-11 * std::abs(c.B));
    }
}

TEST_CASE("delta: nonzero at the reference point, both methods agree") {
    ParamSet p = ref_params();
    for (int i = 1; i <= 2; ++i) {
        cx b = delta(p, i, DeltaMethod::bilinear);
        cx f = delta(p, i, DeltaMethod::factored);
        CHECK(std::abs(b) > 1e-8);
        CHECK(std::abs(b - f) < 1e-10 * std::abs(b));
    }
}

TEST_CASE("equal sigma exponents collapse delta") {
    ParamSet p = ref_params();
    ParamSet ps = p;
    ps.sigma[1] = ps.sigma[0];
    ps = complete_x4(ps.q, ps.rho, ps.sigma, ps.x[0], ps.x[1], ps.x[2]);
    cx f = delta(ps, 1, DeltaMethod::factored);
    cx b = delta(ps, 1, DeltaMethod::bilinear);
    cx scale = delta(p, 1, DeltaMethod::bilinear);
    CHECK(std::abs(f) < 1e-12 * std::abs(scale));
    CHECK(std::abs(b) < 1e-9);
}

TEST_CASE("the tau bracket factors as Z times Z-prime") {
    // E C tau^2 + D F tau'^2 + (AB - CF - DE) tau tau' agrees with the product
    // (lam_{i1} lamp_{i2} tau - lamp_{i1} lam_{i2} tau')(mu_{i1} mup_{i2} tau - mup_{i1} mu_{i2} tau')
    ParamSet p = ref_params();
    InterpCoeffs ic = interp_coeffs(p);
    std::mt19937_64 rng(83);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 2; ++i) {
        QuadricCoeffs c = quadric_coeffs(ic, i + 1);
        for (int t = 0; t < 10; ++t) {
            cx tau(u(rng), u(rng)), taup(u(rng), u(rng));
            cx z = ic.lam[i][0] * ic.lamp[i][1] * tau - ic.lamp[i][0] * ic.lam[i][1] * taup;
            cx zp = ic.mu[i][0] * ic.mup[i][1] * tau - ic.mup[i][0] * ic.mu[i][1] * taup;
            cx bracket = c.E * c.C * tau * tau + c.D * c.F * taup * taup +
                         (c.A * c.B - c.C * c.F - c.D * c.E) * tau * taup;
            CHECK(std::abs(z * zp - bracket) <
                  1e-12 * std::max(std::abs(bracket), std::abs(z * zp)));
        }
    }
}

TEST_CASE("discriminant closed form and factorization") {
    QuadricCoeffs ones{cx(1), cx(1), cx(1), cx(1), cx(1), cx(1), 1};
    Discriminant d1 = discriminant(ones);
    CHECK(std::abs(d1.closed_form - cx(-3.0)) < 1e-14);
    CHECK(std::abs(d1.det - cx(-3.0)) < 1e-13);
    QuadricCoeffs r3{cx(2), cx(2), cx(1), cx(1), cx(1), cx(1), 1};
    Discriminant d2 = discriminant(r3);
    CHECK(std::abs(d2.closed_form) < 1e-14);
    CHECK(std::abs(d2.det) < 1e-13);
    ParamSet p = ref_params();
    QuadricCoeffs c = quadric_coeffs(p, 1);
    cx dl = delta(p, 1, DeltaMethod::bilinear);
    Discriminant d = discriminant(c);
    CHECK(std::abs(d.det - dl * dl) < 1e-9 * std::abs(d.det));
}

TEST_CASE("coefficient identities hold across random parameter draws") {
    std::mt19937_64 rng(17);
    Nome q(cx(0.2));
    for (int t = 0; t < 10; ++t) {
        ParamSet p = suites::random_valid_params(q, rng);
        InterpCoeffs a = interp_coeffs(p);
        InterpCoeffs b = interp_coeffs_oracle(p);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                CHECK(std::abs(a.lam[i][j] - b.lam[i][j]) < 1e-9 * std::abs(b.lam[i][j]));
        QuadricCoeffs c1 = quadric_coeffs(p, 1);
        QuadricCoeffs c2 = quadric_coeffs(p, 2);
        cx k = c2.A / c1.A;
        CHECK(std::abs(c2.F / c1.F - k) < 1e-8 * std::abs(k));
        cx dl = delta(p, 1, DeltaMethod::bilinear);
        Discriminant d = discriminant(c1);
        CHECK(std::abs(d.closed_form - dl * dl) < 1e-8 * std::abs(d.closed_form));
        GammaConstants g = gamma_constants(p);
        for (double r : g.residuals) CHECK(r < 1e-8);
    }
}
