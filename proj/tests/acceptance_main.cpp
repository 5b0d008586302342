// Acceptance gate: one pass/fail line per criterion, exit 0 iff every
// selected criterion passes.

#include <cstring>
#include <iostream>

#include "oracles.hpp"
#include "qpvi/suites.hpp"

using namespace qpvi;
using suites::CheckResult;

namespace {

uint64_t kSeed = 20260809;

struct Line {
    int id;
    bool pass;
    std::string text;
};

Line criterion(int id) {
    ParamSet p = ref_params();
    auto from = [&](const char* label, CheckResult r, const char* extra = "") {
        char buf[512];
        std::snprintf(buf, sizeof(buf), "criterion %2d %-28s %s (worst %.3e)%s%s", id, label,
                      r.pass ? "PASS" : "FAIL", r.worst, r.flagged ? " [flagged]" : "", extra);
        return Line{id, r.pass, buf};
    };
    switch (id) {
        case 1:
            return from("theta identities", suites::theta_identity_suite(kSeed));
        case 2:
            return from("oracle equality", suites::oracle_equality_suite(p, kSeed, 50));
        case 3:
            return from("two-quadrics coincidence", suites::two_quadrics_suite(p, kSeed, 50));
        case 4:
            return from("discriminant = Delta^2", suites::discriminant_suite(p, kSeed, 50));
        case 5:
            return from("gamma/alpha/beta", suites::gamma_suite(p, kSeed, 50));
        case 6:
            return from("monodromy membership", suites::sample_membership_suite(p, kSeed, 100));
        case 7: {
            CheckResult a = suites::detlocus_suite(p, kSeed, 20, 5);
            CheckResult b = suites::pencil_suite(p, kSeed);
            CheckResult merged;
            merged.pass = a.pass && b.pass;
            merged.flagged = a.flagged || b.flagged;
            merged.worst = std::max(a.worst, b.worst);
            return from("det-locus pencil", merged,
                        merged.flagged ? " (sigma-family open-question flag raised; "
                                         "rho-rebalanced family verified)"
                                       : "");
        }
        case 8:
            return from("embedding suite", suites::embedding_suite(p, kSeed, 20));
        case 9:
            return from("sixteen lines", suites::lines_suite(p, kSeed, 6));
        case 10: {
            CheckResult r = suites::eq_relation_suite(p, kSeed, 50, 5);
            return from("e_q relation", r,
                        r.pass ? ""
                               : " -- blocked: the recalled Pi coordinates carry normalizations from the "
                                 "originating construction; raw ratios are provably non-constant "
                                 "on the loci (see the eq_relation report note and the README)");
        }
        case 11: {
            CheckResult r = suites::cubic_suite(p, kSeed, 100);
            // Sylvester determinant against the root-product oracle
            std::mt19937_64 rng(kSeed);
            std::uniform_real_distribution<double> rad(0.5, 1.5), ang(0.0, 2.0 * M_PI);
            auto rc = [&] {
                double m = rad(rng), a = ang(rng);
                return cx(m * std::cos(a), m * std::sin(a));
            };
            double worst = 0.0;
            for (int s = 0; s < 20; ++s) {
                std::array<cx, 4> a{rc(), rc(), rc(), rc()}, b{rc(), rc(), rc(), rc()};
                cx syl = resultant_sylvester(a, b);
                cx orc = oracles::resultant_by_roots(a, b);
                worst = std::max(worst,
                                 std::abs(syl - orc) / std::max(std::abs(syl), std::abs(orc)));
            }
            r.pass = r.pass && worst < 1e-8;
            r.worst = std::max(r.worst, worst);
            return from("cubic surface", r);
        }
        case 12:
            return from("combinatorics", suites::combinatorics_suite(kSeed));
        default:
            throw std::invalid_argument("criterion id out of range");
    }
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
            only = std::atoi(argv[i + 1]);
        if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc)
            kSeed = std::strtoull(argv[i + 1], nullptr, 10);
    }
    bool all = true;
    for (int id = 1; id <= 12; ++id) {
        if (only != 0 && id != only) continue;
        Line l = criterion(id);
        std::cout << l.text << "\n";
        all = all && l.pass;
    }
    return all ? 0 : 1;
}
