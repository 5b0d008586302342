#include <doctest.h>

#include <random>

#include "qpvi/params.hpp"

using namespace qpvi;

TEST_CASE("congruence classes") {
    Nome q(cx(0.2));
    auto k = congruence_class(cx(0.04), cx(5.0), q);
    REQUIRE(k.has_value());
    CHECK(*k == 3);
    CHECK(congruence_class(cx(7.0), cx(7.0), q) == 0);
    CHECK_FALSE(congruence_class(cx(7.0), cx(5.0), q).has_value());
    // exhaustive window oracle for the absence claim
    for (int kk = -30; kk <= 30; ++kk)
        CHECK(std::abs(cx(7.0) / (cx(5.0) * std::pow(q.q, cx(double(kk)))) - cx(1.0)) > 1e-6);
    CHECK_THROWS(congruence_class(cx(0.0), cx(1.0), q));
}

TEST_CASE("congruence antisymmetry") {
    Nome q(cx(0.23, 0.04));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 50; ++t) {
        cx d(u(rng) + 1.5, u(rng));
        int k = static_cast<int>(rng() % 7) - 3;
        cx c = d * std::pow(q.q, cx(double(k)));
        auto fwd = congruence_class(c, d, q);
        auto bwd = congruence_class(d, c, q);
        REQUIRE(fwd.has_value());
        REQUIRE(bwd.has_value());
        CHECK(*fwd == k);
        CHECK(*bwd == -k);
    }
}

TEST_CASE("reference parameters validate") {
    ParamSet p = ref_params();
    ValidationReport r = validate(p);
    INFO("the shipped reference parameters must satisfy (NR)(FR)(NS)(SC); "
         "perturb them if this ever fires");
    CHECK(r.all_pass());
    CHECK(r.fr_residual < 1e-14);
    CHECK(std::abs(p.x[3] - cx(0.7215007215007215, -0.2405002405002405)) < 1e-15);
}

TEST_CASE("forced violations are detected and attributed") {
    ParamSet p = ref_params();
    ParamSet bad = p;
    bad.x[1] = p.q.q * p.x[0];
    bad = complete_x4(bad.q, bad.rho, bad.sigma, bad.x[0], bad.x[1], bad.x[2]);
    ValidationReport r = validate(bad);
    CHECK_FALSE(r.nr_x);
    REQUIRE(!r.nr_x_offenders.empty());
    CHECK(r.nr_x_offenders.front() == std::pair<int, int>{1, 2});

    ParamSet bad2 = p;
    bad2.rho[0] = p.sigma[0] * p.x[0] * p.x[1];
    bad2 = complete_x4(bad2.q, bad2.rho, bad2.sigma, bad2.x[0], bad2.x[1], bad2.x[2]);
    ValidationReport r2 = validate(bad2);
    CHECK_FALSE(r2.ns);
    bool found = false;
    for (auto& o : r2.ns_offenders)
        if (o == std::array<int, 4>{1, 1, 1, 2}) found = true;
    CHECK(found);
}

TEST_CASE("complete_x4 closes the Fuchs relation") {
    Nome q(cx(0.2));
    ParamSet p1 = complete_x4(q, {cx(1.0), cx(1.0)}, {cx(1.0), cx(1.0)}, cx(0.5), cx(2.0),
                              cx(3.0));
    CHECK(std::abs(p1.x[3] - cx(1.0) / (cx(0.5) * cx(2.0) * cx(3.0))) < 1e-15);
    ParamSet p = ref_params();
    CHECK(std::abs(p.fuchs_residual()) < 1e-14);
    // scaling x1 by lambda scales x4 by 1/lambda
    cx lam(1.7, 0.3);
    ParamSet ps = complete_x4(p.q, p.rho, p.sigma, lam * p.x[0], p.x[1], p.x[2]);
    CHECK(std::abs(ps.x[3] * lam - p.x[3]) < 1e-14);
}

TEST_CASE("brackets and complementarity") {
    ParamSet p = ref_params();
    CHECK(std::abs(p.bracket(1, 2, 1, 1) - p.x[0] * p.x[1] * p.sigma[0] / p.rho[0]) < 1e-15);
    // [kl.ji][k'l'.j'i'] = 1 under (FR) for complementary indices
    CHECK(std::abs(p.bracket(1, 2, 1, 1) * p.bracket(3, 4, 2, 2) - cx(1.0)) < 1e-13);
    CHECK(std::abs(p.bracket(1, 3, 2, 1) * p.bracket(2, 4, 1, 2) - cx(1.0)) < 1e-13);
    // rescaling rho_1 divides every [..1] bracket
    ParamSet ps = p;
    cx lam(2.3, -0.4);
    ps.rho[0] *= lam;
    CHECK(std::abs(ps.bracket(1, 2, 1, 1) * lam - p.bracket(1, 2, 1, 1)) < 1e-14);
}

TEST_CASE("validation is scale aware") {
    ParamSet p = ref_params();
    // unit-modulus rotations preserving (FR): x_k -> u x_k needs u^4 = 1
    cx u(0.0, 1.0);
    ParamSet ps = p;
    for (auto& xv : ps.x) xv *= u;
    CHECK(std::abs(ps.fuchs_residual()) < 1e-13);
    CHECK(validate(ps).all_pass() == validate(p).all_pass());
}

TEST_CASE("rho rebalancing family") {
    ParamSet p = ref_params();
    cx omega_base = p.rho[0] / p.rho[1];
    ParamSet same = rebalance_rho(p, omega_base);
    CHECK(std::abs(same.rho[0] - p.rho[0]) < 1e-15);
    CHECK(std::abs(same.rho[1] - p.rho[1]) < 1e-15);
    for (cx w : {cx(0.7, 0.1), cx(1.0), cx(2.4, -0.3)}) {
        ParamSet pw = rebalance_rho(p, w);
        CHECK(std::abs(pw.rho[0] / pw.rho[1] - w) < 1e-13);
        CHECK(std::abs(pw.rho[0] * pw.rho[1] - p.rho[0] * p.rho[1]) < 1e-13);
        CHECK(std::abs(pw.fuchs_residual()) < 1e-13);
    }
    ParamSet deg = rebalance_rho(p, cx(1.0));
    CHECK(std::abs(deg.rho[0] - deg.rho[1]) < 1e-14);
}

TEST_CASE("sigma family keeps the Fuchs relation") {
    ParamSet p = ref_params();
    for (cx w : {cx(0.8), cx(1.0), cx(1.3)}) {
        ParamSet pw = sigma_family(p, w);
        CHECK(std::abs(pw.omega() - w) < 1e-14);
        CHECK(std::abs(pw.fuchs_residual()) < 1e-13);
    }
}
