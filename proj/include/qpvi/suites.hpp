#pragma once

#include <json.hpp>

#include "qpvi/embed.hpp"
#include "qpvi/torusgraph.hpp"

namespace qpvi::suites {

using json = nlohmann::ordered_json;

struct CheckResult {
    std::string name;
    bool pass = true;
    bool flagged = false;  // known open-question failure, reported loudly
    double worst = 0.0;
    json details;
};

// Random parameter sets satisfying (NR), (FR), (NS), (SC) with moduli in a
// fixed annulus; retries until the full coefficient pipeline is clear of
// theta zeros.
ParamSet random_valid_params(const Nome& q, std::mt19937_64& rng);

// Acceptance criteria. Tolerances are pinned at the documented values;
// sample counts are parameters so the CLI can dial effort up or down.
CheckResult theta_identity_suite(uint64_t seed, int draws = 100);
CheckResult oracle_equality_suite(const ParamSet& p, uint64_t seed, int paramsets = 50);
CheckResult two_quadrics_suite(const ParamSet& p, uint64_t seed, int paramsets = 50);
CheckResult discriminant_suite(const ParamSet& p, uint64_t seed, int paramsets = 50);
CheckResult gamma_suite(const ParamSet& p, uint64_t seed, int paramsets = 50);
CheckResult sample_membership_suite(const ParamSet& p, uint64_t seed, int samples = 100);
CheckResult detlocus_suite(const ParamSet& p, uint64_t seed, int t_draws = 20,
                           int omega_draws = 5);
CheckResult pencil_suite(const ParamSet& p, uint64_t seed);
CheckResult embedding_suite(const ParamSet& p, uint64_t seed, int samples = 20);
CheckResult lines_suite(const ParamSet& p, uint64_t seed, int samples_per_line = 6);
CheckResult eq_relation_suite(const ParamSet& p, uint64_t seed, int samples = 50, int reruns = 5);
CheckResult cubic_suite(const ParamSet& p, uint64_t seed, int samples = 100);
CheckResult combinatorics_suite(uint64_t seed);

// Geometry checks of the quadric module that are not numbered criteria
// (classification, boundary slices, chart and action invariance, the
// L^0/L^infty lines, the XY rewriting).
CheckResult quadric_geometry_suite(const ParamSet& p, uint64_t seed);

struct RunConfig {
    ParamSet params = ref_params();
    std::vector<cx> omegas;
    std::vector<std::string> suites;  // subset of the canonical nine
    int samples = 100;
    int paramsets = 50;
    uint64_t seed = 1;
    std::string convention = "auto";  // auto | rowclass | columnclass
    std::optional<double> tol_override;
};

json run(const RunConfig& cfg);
bool report_all_pass(const json& report);

const std::vector<std::string>& canonical_suites();

}  // namespace qpvi::suites
