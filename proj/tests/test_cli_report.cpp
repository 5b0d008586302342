#include <doctest.h>

#include <fstream>

#include "qpvi/suites.hpp"

using namespace qpvi;
using suites::RunConfig;

TEST_CASE("reports are deterministic given the seed") {
    RunConfig cfg;
    cfg.suites = {"quadric", "graph"};
    cfg.seed = 7;
    auto a = suites::run(cfg);
    auto b = suites::run(cfg);
    a.erase("timing_ms");
    b.erase("timing_ms");
    CHECK(a.dump() == b.dump());
}

TEST_CASE("suites are independent of the batch they run in") {
    RunConfig lone;
    lone.suites = {"detlocus"};
    lone.seed = 5;
    auto a = suites::run(lone);
    RunConfig batch;
    batch.suites = {"quadric", "detlocus", "graph"};
    batch.seed = 5;
    auto b = suites::run(batch);
    CHECK(a["suites"]["detlocus"].dump() == b["suites"]["detlocus"].dump());
}

TEST_CASE("validation failure is the reported outcome") {
    RunConfig cfg;
    ParamSet p = ref_params();
    p.x[1] = p.q.q * p.x[0];
    cfg.params = complete_x4(p.q, p.rho, p.sigma, p.x[0], p.x[1], p.x[2]);
    cfg.suites = {"quadric"};
    auto rep = suites::run(cfg);
    CHECK_FALSE(suites::report_all_pass(rep));
    CHECK(rep.contains("error"));
    CHECK_FALSE(rep["validation"]["nr_x"].get<bool>());
}

TEST_CASE("identities at the reference parameters pass") {
    RunConfig cfg;
    cfg.suites = {"identities"};
    cfg.seed = 1;
    cfg.paramsets = 8;  // trimmed draw count for test runtime
    auto rep = suites::run(cfg);
    CHECK(rep["suites"]["identities"]["pass"].get<bool>());
}

TEST_CASE("canonical suite list") {
    auto names = suites::canonical_suites();
    CHECK(names.size() == 9);
    CHECK(names.front() == "identities");
    RunConfig cfg;
    cfg.suites = {"no_such_suite"};
    CHECK_THROWS(suites::run(cfg));
}

TEST_CASE("shipped parameter file matches the built-in reference set") {
    std::ifstream f(std::string(QPVI_SOURCE_DIR) + "/data/ref_params.json");
    REQUIRE(f.good());
    nlohmann::ordered_json j;
    f >> j;
    auto pj = j["params"];
    ParamSet p = ref_params();
    auto px = [&](const nlohmann::ordered_json& v) { return cx(v[0].get<double>(), v[1].get<double>()); };
    CHECK(std::abs(px(pj["q"]) - p.q.q) < 1e-15);
    for (int i = 0; i < 2; ++i) {
        CHECK(std::abs(px(pj["rho"][i]) - p.rho[i]) < 1e-15);
        CHECK(std::abs(px(pj["sigma"][i]) - p.sigma[i]) < 1e-15);
    }
    for (int k = 0; k < 3; ++k) CHECK(std::abs(px(pj["x"][k]) - p.x[k]) < 1e-15);
    INFO("the shipped fixture must validate; perturb it if this fires");
    CHECK(validate(p).all_pass());
}

TEST_CASE("random parameter generator returns validated sets") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 5; ++t) {
        ParamSet p = suites::random_valid_params(Nome(cx(0.2)), rng);
        CHECK(validate(p).all_pass());
    }
}
