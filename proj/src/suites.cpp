#include "qpvi/suites.hpp"

#include <Eigen/Dense>

#include <chrono>

namespace qpvi::suites {

namespace {

json jcx(cx v) { return json::array({v.real(), v.imag()}); }

cx rand_annulus(std::mt19937_64& rng, double rlo, double rhi) {
    std::uniform_real_distribution<double> rad(rlo, rhi), ang(0.0, 2.0 * M_PI);
    double r = rad(rng), a = ang(rng);
    return {r * std::cos(a), r * std::sin(a)};
}

double rel(cx a, cx b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

struct Tracker {
    double worst = 0.0;
    void feed(double r) { worst = std::max(worst, r); }
};

}  // namespace

ParamSet random_valid_params(const Nome& q, std::mt19937_64& rng) {
    for (int tries = 0; tries < 500; ++tries) {
        std::array<cx, 2> rho{rand_annulus(rng, 0.5, 2.0), rand_annulus(rng, 0.5, 2.0)};
        std::array<cx, 2> sigma{rand_annulus(rng, 0.5, 2.0), rand_annulus(rng, 0.5, 2.0)};
        cx x1 = rand_annulus(rng, 0.5, 1.8);
        cx x2 = rand_annulus(rng, 0.5, 1.8);
        cx x3 = rand_annulus(rng, 0.5, 1.8);
        ParamSet p = complete_x4(q, rho, sigma, x1, x2, x3);
        if (std::abs(p.x[3]) < 0.05 || std::abs(p.x[3]) > 20.0) continue;
        // generic draws: the non-congruence conditions are enforced with a
        // coarse margin so no theta factor sits next to a zero
        if (!validate(p, CongruencePolicy{.tol = 2e-3, .extra_window = 2}).all_pass()) continue;
        try {
            interp_coeffs(p);          // clears the theta-zero guards
            reference_quadric(p);      // the rebalanced member too
        } catch (const std::exception&) {
            continue;
        }
        return p;
    }
    throw std::runtime_error("random_valid_params: retry budget exhausted");
}

CheckResult theta_identity_suite(uint64_t seed, int draws) {
    CheckResult res{.name = "theta_identities"};
    const double tol = 1e-10;
    std::mt19937_64 rng(seed);
    std::array<Nome, 3> nomes = {Nome(cx(0.1, 0.0)), Nome(cx(0.2, 0.0)),
                                 Nome(cx(0.5 * std::cos(M_PI / 7), 0.5 * std::sin(M_PI / 7)))};
    Tracker fe, inv, sp, zero, tt1, tt2, tt3;
    for (const Nome& q : nomes) {
        for (int d = 0; d < draws; ++d) {
            cx x = rand_annulus(rng, 0.3, 3.0);
            cx tx = theta(q, x);
            fe.feed(std::abs(theta(q, q.q * x) * x - tx) / std::abs(tx));
            inv.feed(std::abs(x * theta(q, cx(1.0) / x) - tx) / std::abs(tx));
            sp.feed(rel(tx, theta_by_triple_product(q, x)));
        }
        for (int k = -3; k <= 3; ++k) {
            cx qk = std::pow(q.q, k);
            double scale = std::abs(theta(q, qk));
            zero.feed(std::abs(theta(q, -qk)) / std::max(scale, 1e-300));
        }
        auto T = [&](cx z) { return t_fun(q, z); };
        for (int d = 0; d < draws; ++d) {
            cx a = rand_annulus(rng, 0.5, 1.5), b = rand_annulus(rng, 0.5, 1.5);
            cx c = rand_annulus(rng, 0.5, 1.5), e = rand_annulus(rng, 0.5, 1.5);
            cx x = rand_annulus(rng, 0.5, 1.5);
            {
                cx t1 = c * T(a) * T(b / c) * T(x / a) * T(x / (b * c));
                cx t2 = a * T(b) * T(c / a) * T(x / b) * T(x / (a * c));
                cx t3 = b * T(c) * T(a / b) * T(x / c) * T(x / (a * b));
                double s = std::max({std::abs(t1), std::abs(t2), std::abs(t3), 1e-300});
                tt1.feed(std::abs(t1 + t2 + t3) / s);
            }
            {
                cx t1 = T(b) * T(a / c) * T(x / b) * T(x / (a * c));
                cx t2 = T(a) * T(b / c) * T(x / a) * T(x / (b * c));
                cx t3 = (b / c) * T(c) * T(a / b) * T(x / c) * T(x / (a * b));
                double s = std::max({std::abs(t1), std::abs(t2), std::abs(t3), 1e-300});
                tt2.feed(std::abs(t1 - t2 - t3) / s);
            }
            {
                // third displayed form with the corrected middle coefficient
                cx t1 = c * T(a / b) * T(e / c) * T(x / (a * b)) * T(x / (c * e));
                cx t2 = c * T(a / c) * T(e / b) * T(x / (a * c)) * T(x / (b * e));
                cx t3 = e * T(c / b) * T(a / e) * T(x / (a * e)) * T(x / (b * c));
                double s = std::max({std::abs(t1), std::abs(t2), std::abs(t3), 1e-300});
                tt3.feed(std::abs(t1 - t2 + t3) / s);
            }
        }
    }
    res.worst = std::max({fe.worst, inv.worst, sp.worst, zero.worst, tt1.worst, tt2.worst,
                          tt3.worst});
    res.pass = res.worst < tol;
    res.details = {{"tol", tol},
                   {"functional_equation", fe.worst},
                   {"inversion", inv.worst},
                   {"series_vs_product", sp.worst},
                   {"zero_set", zero.worst},
                   {"three_term_1", tt1.worst},
                   {"three_term_2", tt2.worst},
                   {"three_term_3_corrected", tt3.worst}};
    return res;
}

CheckResult oracle_equality_suite(const ParamSet& p, uint64_t seed, int paramsets) {
    CheckResult res{.name = "interp_oracle_equality"};
    const double tol = 1e-9;
    std::mt19937_64 rng(seed);
    Tracker t;
    for (int s = 0; s < paramsets; ++s) {
        ParamSet ps = (s == 0) ? p : random_valid_params(p.q, rng);
        InterpCoeffs a = interp_coeffs(ps);
        InterpCoeffs b = interp_coeffs_oracle(ps);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                t.feed(rel(a.lam[i][j], b.lam[i][j]));
                t.feed(rel(a.mu[i][j], b.mu[i][j]));
                t.feed(rel(a.lamp[i][j], b.lamp[i][j]));
                t.feed(rel(a.mup[i][j], b.mup[i][j]));
                if (std::abs(a.pairing_det(i, j)) == 0.0) res.pass = false;
            }
    }
    res.worst = t.worst;
    res.pass = res.pass && t.worst < tol;
    res.details = {{"tol", tol}, {"max_rel_deviation", t.worst}, {"paramsets", paramsets}};
    return res;
}

CheckResult two_quadrics_suite(const ParamSet& p, uint64_t seed, int paramsets) {
    CheckResult res{.name = "two_quadrics_coincide"};
    const double tol = 1e-8;
    std::mt19937_64 rng(seed);
    Tracker t, fact;
    for (int s = 0; s < paramsets; ++s) {
        ParamSet ps = (s == 0) ? p : random_valid_params(p.q, rng);
        QuadricCoeffs c1 = quadric_coeffs(ps, 1);
        QuadricCoeffs c2 = quadric_coeffs(ps, 2);
        cx constant = proportionality_constant(ps);
        auto a1 = c1.as_array(), a2 = c2.as_array();
        for (int k = 0; k < 6; ++k) {
            if (std::abs(a1[k]) == 0.0 || std::abs(a2[k]) == 0.0) res.pass = false;
            t.feed(rel(a2[k] / a1[k], constant));
        }
        for (int i = 1; i <= 2; ++i) {
            QuadricCoeffs ci = (i == 1) ? c1 : c2;
            fact.feed(rel(ci.A, quadric_a_factored(ps, i)));
            fact.feed(rel(ci.B, quadric_b_factored(ps, i)));
        }
    }
    res.worst = std::max(t.worst, fact.worst);
    res.pass = res.pass && res.worst < tol;
    res.details = {{"tol", tol},
                   {"ratio_vs_constant", t.worst},
                   {"factored_vs_bilinear", fact.worst},
                   {"paramsets", paramsets}};
    return res;
}

CheckResult discriminant_suite(const ParamSet& p, uint64_t seed, int paramsets) {
    CheckResult res{.name = "discriminant_factorization"};
    const double tol_disc = 1e-8, tol_delta = 1e-9;
    std::mt19937_64 rng(seed);
    Tracker disc_vs_delta2, bil_vs_fact, det_vs_closed;
    double min_delta = 1e300;
    for (int s = 0; s < paramsets; ++s) {
        ParamSet ps = (s == 0) ? p : random_valid_params(p.q, rng);
        InterpCoeffs ic = interp_coeffs(ps);
        for (int i = 1; i <= 2; ++i) {
            QuadricCoeffs c = quadric_coeffs(ic, i);
            Discriminant d = discriminant(ic, i);
            cx dl_b = delta(ps, i, DeltaMethod::bilinear);
            cx dl_f = delta(ps, i, DeltaMethod::factored);
            // the factored form is a pure product, free of the t1 - t2
            // cancellation that limits the bilinear route
            disc_vs_delta2.feed(rel(d.det, dl_f * dl_f));
            // difference residual normalized by the term magnitudes, as for
            // the other theta identities
            int k = i - 1;
            double tscale =
                std::max(std::abs(ic.lamp[k][0] * ic.lam[k][1] * ic.mu[k][0] * ic.mup[k][1]),
                         std::abs(ic.lam[k][0] * ic.lamp[k][1] * ic.mup[k][0] * ic.mu[k][1]));
            bil_vs_fact.feed(std::abs(dl_b - dl_f) / std::max(tscale, 1e-300));
            double scale = 0.0;
            for (cx k : c.as_array()) scale = std::max(scale, std::abs(k));
            // both determinant routes cancel heavily when disc << scale^4,
            // so compare them at rounding level relative to the entry scale
            det_vs_closed.feed(std::abs(d.det - d.closed_form) / std::pow(scale, 4));
            min_delta = std::min(min_delta, std::abs(dl_b) / (scale * scale));
        }
    }
    res.worst = std::max({disc_vs_delta2.worst, bil_vs_fact.worst});
    res.pass = disc_vs_delta2.worst < tol_disc && bil_vs_fact.worst < tol_delta &&
               det_vs_closed.worst < 1e-10 && min_delta > 1e-12;
    res.details = {{"tol_disc", tol_disc},
                   {"tol_delta", tol_delta},
                   {"disc_vs_delta_sq", disc_vs_delta2.worst},
                   {"bilinear_vs_factored_delta", bil_vs_fact.worst},
                   {"det_vs_closed_form", det_vs_closed.worst},
                   {"min_normalized_delta", min_delta},
                   {"paramsets", paramsets}};
    return res;
}

CheckResult gamma_suite(const ParamSet& p, uint64_t seed, int paramsets) {
    CheckResult res{.name = "gamma_alpha_beta"};
    const double tol = 1e-8;
    std::mt19937_64 rng(seed);
    Tracker ratios, functional;
    for (int s = 0; s < paramsets; ++s) {
        ParamSet ps = (s == 0) ? p : random_valid_params(p.q, rng);
        GammaConstants g = gamma_constants(ps);
        for (double r : g.residuals) ratios.feed(r);
        // functional axiom on random V-points, through both product splits
        for (int trial = 0; trial < 20; ++trial) {
            std::array<std::array<std::pair<cx, cx>, 2>, 2> coeff;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    coeff[i][j] = {rand_annulus(rng, 0.2, 1.0), rand_annulus(rng, 0.2, 1.0)};
            MonodromyRep m(ps, coeff);
            for (int split = 0; split < 2; ++split) {
                auto f = [&](int k) {
                    return split == 0 ? m.entry(0, 0, k) * m.entry(1, 1, k)
                                      : m.entry(0, 1, k) * m.entry(1, 0, k);
                };
                double scale = std::max({std::abs(f(0)), std::abs(f(1)), std::abs(f(2)),
                                         std::abs(f(3)), 1e-300});
                cx resid = f(3) - (g.alpha * f(0) + g.beta * f(1) + g.gamma * f(2));
                functional.feed(std::abs(resid) / scale);
            }
        }
    }
    res.worst = std::max(ratios.worst, functional.worst);
    res.pass = res.worst < tol;
    res.details = {{"tol", tol},
                   {"identification_residuals", ratios.worst},
                   {"functional_axiom", functional.worst},
                   {"paramsets", paramsets}};
    return res;
}

CheckResult sample_membership_suite(const ParamSet& p, uint64_t seed, int samples) {
    CheckResult res{.name = "monodromy_membership"};
    const double tol = 1e-7;
    std::mt19937_64 rng(seed);
    Tracker det4, quad, gauge, tensor_line;
    double min_x0 = 1e300;
    for (int set = 0; set < 3; ++set) {
      ParamSet pc = (set == 0) ? p : random_valid_params(p.q, rng);
      QuadricCoeffs c1 = quadric_coeffs(pc, 1);
      QuadricCoeffs c2 = quadric_coeffs(pc, 2);
      cx x0 = default_x0(pc);
      int count = (set == 0) ? samples : samples / 2;
      for (int s = 0; s < count; ++s) {
        MonodromyRep m = sample_point(pc, rng);
        double s2 = m.scale2();
        det4.feed(std::abs(m.det_at(3)) / s2);
        RhoTuple t = rho_tuple(m);
        quad.feed(eval_form(c1, t.rho).residual());
        quad.feed(eval_form(c2, t.rho).residual());
        // no zero at a common position across the four evaluations
        for (int i = 0; i < 2 && res.pass; ++i)
            for (int j = 0; j < 2; ++j) {
                int zero_count = 0;
                for (int k = 0; k < 4; ++k)
                    if (std::abs(m.entry(i, j, k)) < 1e-9 * std::sqrt(s2)) ++zero_count;
                if (zero_count > 1) res.pass = false;
            }
        if (s < 20) {
            // gauge invariance of the mixed projectivization and equivariance
            // of the tuple under M -> Gamma M Delta^{-1}
            cx g1 = rand_annulus(rng, 0.5, 1.5), g2 = rand_annulus(rng, 0.5, 1.5);
            cx d1 = rand_annulus(rng, 0.5, 1.5), d2 = rand_annulus(rng, 0.5, 1.5);
            std::array<std::array<std::pair<cx, cx>, 2>, 2> gc;
            std::array<cx, 2> gamma{g1, g2}, delta{d1, d2};
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    cx f = gamma[i] / delta[j];
                    gc[i][j] = {m.coeff(i, j).first * f, m.coeff(i, j).second * f};
                }
            MonodromyRep mg(pc, gc);
            auto pid = pi_mixed(Rank1Mat::at(m, 0), Rank1Mat::at(m, 1));
            auto pig = pi_mixed(Rank1Mat::at(mg, 0), Rank1Mat::at(mg, 1));
            if (pid.first && pig.first)
                gauge.feed(Proj1Point::cross_distance(*pid.first, *pig.first));
            if (pid.second && pig.second)
                gauge.feed(Proj1Point::cross_distance(*pid.second, *pig.second));
            RhoTuple tg = rho_tuple(mg);
            cx mult_rho = delta[0] / delta[1];   // chart value m12/m11
            cx mult_rhop = gamma[1] / gamma[0];  // chart value m21/m11
            for (int k = 0; k < 4; ++k) {
                gauge.feed(Proj1Point::cross_distance(
                    tg.rho.c[k], Proj1Point(t.rho.c[k].x * mult_rho, t.rho.c[k].y)));
                gauge.feed(Proj1Point::cross_distance(
                    tg.rhoPrime.c[k], Proj1Point(t.rhoPrime.c[k].x * mult_rhop,
                                                 t.rhoPrime.c[k].y)));
            }
            TensorPair tp = tensor_pair(m, x0);
            for (double r : tp.line_residuals) tensor_line.feed(r);
            tensor_line.feed(tp.segre_residuals[0]);
            tensor_line.feed(tp.segre_residuals[1]);
            min_x0 = std::min(min_x0, tp.x0_magnitude);
        }
      }
    }
    // distinct samples land on distinct orbits (injectivity spot-check)
    QuadricCoeffs c1 = quadric_coeffs(p, 1);
    {
        std::array<MonodromyRep, 2> pair{sample_point(p, rng), sample_point(p, rng)};
        RhoTuple t0 = rho_tuple(pair[0]), t1 = rho_tuple(pair[1]);
        double sep = 0.0;
        if (t0.PiPrime[0][1] && t1.PiPrime[0][1])
            sep = Proj1Point::cross_distance(*t0.PiPrime[0][1], *t1.PiPrime[0][1]);
        if (sep < 1e-9) res.pass = false;
    }
    // constrained samples carry the pinned zero exactly
    Tracker constrained;
    for (int s = 0; s < 10; ++s) {
        MonodromyRep m = sample_point(p, rng, {Constraint::rho_zero, 1});
        RhoTuple t = rho_tuple(m);
        if (t.PiPrime[0][1])
            constrained.feed(std::abs(t.PiPrime[0][1]->x) /
                             std::max(std::abs(t.PiPrime[0][1]->y), 1e-300));
        quad.feed(eval_form(c1, t.rho).residual());
    }
    res.worst = std::max({det4.worst, quad.worst});
    res.pass = res.pass && det4.worst < tol && quad.worst < tol && gauge.worst < 1e-9 &&
               tensor_line.worst < tol && min_x0 > 1e-6 && constrained.worst < 1e-9;
    res.details = {{"tol", tol},
                   {"det_x4", det4.worst},
                   {"quadric_residual", quad.worst},
                   {"gauge_invariance", gauge.worst},
                   {"tensor_line_and_segre", tensor_line.worst},
                   {"min_x0_transversality", min_x0},
                   {"constrained_piprime_zero", constrained.worst},
                   {"samples", samples}};
    return res;
}

CheckResult detlocus_suite(const ParamSet& p, uint64_t seed, int t_draws, int omega_draws) {
    CheckResult res{.name = "det_locus"};
    const double tol = 1e-7;
    std::mt19937_64 rng(seed);
    Tracker quad, shift, c6;
    std::vector<cx> omegas;
    for (int w = 0; w < omega_draws; ++w) omegas.push_back(rand_annulus(rng, 0.5, 2.0));
    for (int d = 0; d < t_draws; ++d) {
        cx t = rand_annulus(rng, 0.4, 2.2);
        Quad4Point pt = det_locus(p, t);
        for (cx w : omegas) {
            QuadricCoeffs cw = quadric_coeffs(rebalance_rho(p, w), 1);
            quad.feed(eval_form(cw, pt).residual());
            auto pr = c6_residuals_projective(p, w, pt);
            for (double r : pr) c6.feed(r);
        }
        // t -> q t acts by the common factor sigma1/sigma2
        Quad4Point ptq = det_locus(p, p.q.q * t);
        for (int k = 1; k < 4; ++k) {
            Proj1Point r0 = Proj1Point::ratio(ptq.c[0], pt.c[0]);
            Proj1Point rk = Proj1Point::ratio(ptq.c[k], pt.c[k]);
            shift.feed(Proj1Point::cross_distance(r0, rk));
        }
    }
    res.worst = std::max({quad.worst, c6.worst});
    res.pass = quad.worst < tol && c6.worst < tol && shift.worst < 1e-9;
    res.details = {{"tol", tol},
                   {"quadric_residual_over_family", quad.worst},
                   {"c6_projective_residuals", c6.worst},
                   {"q_shift_invariance", shift.worst},
                   {"t_draws", t_draws},
                   {"omega_draws", omega_draws}};
    return res;
}

CheckResult pencil_suite(const ParamSet& p, uint64_t seed) {
    CheckResult res{.name = "pencil_membership"};
    const double tol = 1e-7;
    std::mt19937_64 rng(seed);
    PencilSpec pencil{quadric_coeffs(rebalance_rho(p, cx(0.8)), 1),
                      quadric_coeffs(rebalance_rho(p, cx(1.0)), 1)};
    Tracker memb;
    std::vector<cx> omegas = {cx(1.3), rand_annulus(rng, 0.5, 2.0), rand_annulus(rng, 0.5, 2.0),
                              rand_annulus(rng, 0.5, 2.0)};
    json per_omega = json::array();
    for (cx w : omegas) {
        QuadricCoeffs cw = quadric_coeffs(rebalance_rho(p, w), 1);
        double r = pencil_residual(cw, pencil);
        memb.feed(r);
        per_omega.push_back({{"omega", jcx(w)}, {"residual", r}});
    }
    // the literal sigma-side family from the source text, reported for
    // transparency: it does not lie in a pencil (see the notes shipped with
    // the report)
    PencilSpec spencil{quadric_coeffs(sigma_family(p, cx(0.8)), 1),
                       quadric_coeffs(sigma_family(p, cx(1.0)), 1)};
    double sresid = 0.0;
    for (cx w : omegas)
        sresid = std::max(sresid, pencil_residual(quadric_coeffs(sigma_family(p, w), 1), spencil));
    res.worst = memb.worst;
    res.pass = memb.worst < tol;
    res.flagged = sresid >= tol;  // open-question flag: the sigma-side reading fails
    res.details = {{"tol", tol},
                   {"rho_family_membership", per_omega},
                   {"rho_family_worst", memb.worst},
                   {"sigma_family_worst", sresid},
                   {"sigma_family_flag",
                    "sigma-side omega convention does not produce a pencil; the rho-rebalanced "
                    "family is the one verified"}};
    return res;
}

CheckResult embedding_suite(const ParamSet& p, uint64_t seed, int samples) {
    CheckResult res{.name = "embedding"};
    const double tol = 1e-8;
    std::mt19937_64 rng(seed);
    cx omega_base = p.rho[0] / p.rho[1];
    std::array<cx, 2> omegas = {omega_base, cx(1.45, 0.2)};
    Tracker c6, elim, recon, pluecker;
    for (cx w : omegas) {
        ParamSet pw = rebalance_rho(p, w);
        EliminatedQuadrics eq = eliminate_to_c4(p, w);
        for (int s = 0; s < samples; ++s) {
            MonodromyRep m = sample_point(pw, rng);
            RhoTuple t = rho_tuple(m);
            EtaPoint e = eta(pw, t.rho);
            auto r = c6_residuals(pw, w, e);
            for (double v : r) c6.feed(v);
            pluecker.feed(std::max(r[2], r[3]));
            std::array<cx, 4> v = eta_restricted(e);
            double vmax = 1.0;
            for (cx z : v) vmax = std::max(vmax, std::abs(z));
            elim.feed(std::abs(eq.q1.eval(v)) / (eq.q1.max_abs_coef() * vmax * vmax));
            elim.feed(std::abs(eq.q2.eval(v)) / (eq.q2.max_abs_coef() * vmax * vmax));
            // reconstructed eta24, eta34 close the linear system
            cx e24 = eq.c24, e34 = eq.c34;
            for (int k = 0; k < 4; ++k) {
                e24 += eq.l24[k] * v[k];
                e34 += eq.l34[k] * v[k];
            }
            recon.feed(rel(e24, e.e24()));
            recon.feed(rel(e34, e.e34()));
        }
    }
    // degree-2 parts do not depend on omega
    EliminatedQuadrics qa = eliminate_to_c4(p, omega_base);
    EliminatedQuadrics qb = eliminate_to_c4(p, cx(0.63, -0.4));
    double deg2_dev = 0.0;
    for (auto [qa_poly, qb_poly] :
         {std::pair{&qa.q1, &qb.q1}, std::pair{&qa.q2, &qb.q2}}) {
        Poly4 da = qa_poly->degree_part(2), db = qb_poly->degree_part(2);
        double cap = std::max(da.max_abs_coef(), db.max_abs_coef());
        for (auto& [e, cva] : da.terms()) {
            cx cvb = db.terms().count(e) ? db.terms().at(e) : cx(0.0);
            deg2_dev = std::max(deg2_dev, std::abs(cva - cvb) / cap);
        }
        for (auto& [e, cvb] : db.terms())
            if (!da.terms().count(e)) deg2_dev = std::max(deg2_dev, std::abs(cvb) / cap);
    }
    // negative control: a random eta point violates the equations
    std::array<cx, 6> noise;
    for (cx& z : noise) z = rand_annulus(rng, 0.5, 1.5);
    auto control = c6_residuals(p, omega_base, EtaPoint{noise});
    double control_min = std::min({control[0], control[1], control[2], control[3]});

    res.worst = std::max({c6.worst, elim.worst, deg2_dev});
    res.pass = c6.worst < tol && elim.worst < tol && recon.worst < 1e-9 && deg2_dev < 1e-10 &&
               control_min > 1e-3;
    res.details = {{"tol", tol},
                   {"c6_residuals", c6.worst},
                   {"eliminated_quadrics_on_images", elim.worst},
                   {"reconstruction", recon.worst},
                   {"pluecker", pluecker.worst},
                   {"deg2_omega_independence", deg2_dev},
                   {"negative_control_min_residual", control_min},
                   {"samples", samples}};
    return res;
}

CheckResult lines_suite(const ParamSet& p, uint64_t seed, int samples_per_line) {
    CheckResult res{.name = "sixteen_lines"};
    const double tol_line = 1e-6, tol_quad = 1e-7;
    std::mt19937_64 rng(seed);
    cx omega_base = p.rho[0] / p.rho[1];
    Lines16 out = lines16(p, omega_base, rng, samples_per_line);
    Lines16 dense = lines16(p, omega_base, rng, 2 * samples_per_line);
    Tracker coll, quad, stab;
    json lines = json::array();
    for (size_t i = 0; i < out.lines.size(); ++i) {
        const LineSpec& l = out.lines[i];
        coll.feed(l.collinearity);
        quad.feed(std::max(l.quadric_residuals[0], l.quadric_residuals[1]));
        // direction stability under doubling the sample count
        cx dot = 0.0;
        double na = 0.0, nb = 0.0;
        for (int c = 0; c < 4; ++c) {
            dot += std::conj(l.direction[c]) * dense.lines[i].direction[c];
            na += std::norm(l.direction[c]);
            nb += std::norm(dense.lines[i].direction[c]);
        }
        stab.feed(1.0 - std::abs(dot) / std::sqrt(na * nb));
        lines.push_back({{"label", l.label},
                         {"collinearity", l.collinearity},
                         {"quadric_residuals", {l.quadric_residuals[0], l.quadric_residuals[1]}},
                         {"ratio_spread", l.ratio_spread},
                         {"exchanged_candidate_mismatch", l.candidate_mismatch}});
    }
    res.worst = std::max(coll.worst, quad.worst);
    res.pass = coll.worst < tol_line && quad.worst < tol_quad &&
               out.min_within_family_distance > 1e-6 && stab.worst < 1e-6;
    res.details = {{"tol_collinearity", tol_line},
                   {"tol_quadric", tol_quad},
                   {"collinearity", coll.worst},
                   {"quadric_residual", quad.worst},
                   {"within_family_min_distance", out.min_within_family_distance},
                   {"cross_family_coincidences", out.cross_family_coincidences.size()},
                   {"fit_stability", stab.worst},
                   {"lines", lines}};
    return res;
}

CheckResult eq_relation_suite(const ParamSet& p, uint64_t seed, int samples, int reruns) {
    CheckResult res{.name = "eq_relation"};
    const double tol = 1e-7;
    std::vector<std::string> chosen;
    double worst_row = 0.0, worst_col = 0.0;
    for (int r = 0; r < reruns; ++r) {
        std::mt19937_64 rng(seed + 1000 * r);
        ConventionReport rep = select_convention(p, rng, std::max(2, samples / reruns));
        chosen.push_back(rep.chosen == RhoConvention::rowclass ? "rowclass" : "columnclass");
        worst_row = std::max(worst_row, rep.residual_rowclass);
        worst_col = std::max(worst_col, rep.residual_columnclass);
    }
    bool stable = std::all_of(chosen.begin(), chosen.end(),
                              [&](const std::string& s) { return s == chosen.front(); });
    // constancy of the Pi value along one fixed locus, reported
    std::mt19937_64 rng(seed);
    std::vector<cx> vals;
    for (int s = 0; s < 10; ++s) {
        MonodromyRep m = sample_point(p, rng, {Constraint::rho_zero, 1});
        RhoTuple t = rho_tuple(m);
        if (t.Pi[0][1] && std::abs(t.Pi[0][1]->y) > 1e-14) vals.push_back(t.Pi[0][1]->value());
    }
    double spread = 0.0;
    for (cx v : vals) spread = std::max(spread, std::abs(v - vals.front()) / std::abs(vals.front()));

    double best = std::min(worst_row, worst_col);
    res.worst = best;
    res.pass = best < tol && stable;
    res.flagged = !res.pass;
    res.details = {
        {"tol", tol},
        {"residual_rowclass", worst_row},
        {"residual_columnclass", worst_col},
        {"chosen", chosen},
        {"convention_stable", stable},
        {"pi_value_spread_on_locus", spread},
        {"e_q_1", jcx(eq_constant(p, 1))},
        {"e_q_2", jcx(eq_constant(p, 2))},
        {"note",
         "the Pi coordinates of the recalled relation carry normalizations of the originating "
         "construction that are not reconstructible here; raw projectivization ratios are not constant "
         "on the special loci (the loci are nonetheless exact lines in the Segre coordinates), "
         "so this criterion fails honestly under every orientation convention"}};
    return res;
}

CheckResult cubic_suite(const ParamSet& p, uint64_t seed, int samples) {
    CheckResult res{.name = "cubic_surface"};
    const double tol_f = 1e-7, tol_grad = 1e-6;
    std::mt19937_64 rng(seed);
    QuadricCoeffs c = quadric_coeffs(p, 1);
    Tracker fres, grad;
    for (int s = 0; s < samples; ++s) {
        MonodromyRep m = sample_point(p, rng);
        RhoTuple t = rho_tuple(m);
        cx X = Proj1Point::ratio(t.rho.c[0], t.rho.c[1]).value();
        cx Y = Proj1Point::ratio(t.rho.c[1], t.rho.c[2]).value();
        cx Z = Proj1Point::ratio(t.rho.c[2], t.rho.c[3]).value();
        fres.feed(std::abs(cubic_f(c, X, Y, Z)) / std::max(cubic_f_scale(c, X, Y, Z), 1e-300));
    }
    for (int s = 0; s < 20; ++s) {
        cx X = rand_annulus(rng, 0.5, 1.5), Y = rand_annulus(rng, 0.5, 1.5),
           Z = rand_annulus(rng, 0.5, 1.5);
        auto g = cubic_f_gradient(c, X, Y, Z);
        const double h = 1e-6;
        auto fd = [&](int which) {
            cx dp, dm;
            cx dx = (which == 0) ? cx(h) : cx(0), dy = (which == 1) ? cx(h) : cx(0),
               dz = (which == 2) ? cx(h) : cx(0);
            dp = cubic_f(c, X + dx, Y + dy, Z + dz);
            dm = cubic_f(c, X - dx, Y - dy, Z - dz);
            return (dp - dm) / (2.0 * h);
        };
        for (int w = 0; w < 3; ++w) grad.feed(rel(g[w], fd(w)));
    }
    CubicSurface cs = cubic_surface_eq(c);
    // planted common root makes the resultant collapse
    Tracker planted;
    for (int s = 0; s < 5; ++s) {
        cx r = rand_annulus(rng, 0.5, 1.5);
        std::array<cx, 4> a{rand_annulus(rng, 0.5, 1.5), rand_annulus(rng, 0.5, 1.5),
                            rand_annulus(rng, 0.5, 1.5), cx(0)},
            b{rand_annulus(rng, 0.5, 1.5), rand_annulus(rng, 0.5, 1.5),
              rand_annulus(rng, 0.5, 1.5), cx(0)};
        // multiply (y - r) into quadratics a, b (stored descending)
        auto times_root = [&](std::array<cx, 4> qd) {
            std::array<cx, 4> out{};
            out[0] = qd[0];
            out[1] = qd[1] - r * qd[0];
            out[2] = qd[2] - r * qd[1];
            out[3] = -r * qd[2];
            return out;
        };
        auto pa = times_root(a), pb = times_root(b);
        double scale = 0.0;
        for (cx v : pa) scale = std::max(scale, std::abs(v));
        for (cx v : pb) scale = std::max(scale, std::abs(v));
        planted.feed(std::abs(resultant_sylvester(pa, pb)) / std::pow(scale, 6));
    }
    res.worst = std::max({fres.worst, grad.worst});
    res.pass = fres.worst < tol_f && grad.worst < tol_grad && planted.worst < 1e-9;
    res.details = {{"tol_f", tol_f},
                   {"tol_grad", tol_grad},
                   {"f_residual_on_images", fres.worst},
                   {"gradient_vs_fd", grad.worst},
                   {"planted_common_root_resultant", planted.worst},
                   {"resultant_at_params", jcx(cs.resultant)},
                   {"samples", samples}};
    return res;
}

namespace {

// independent component count for the combinatorics oracle
int components_bfs(const SupportGraph& g) {
    int n = g.n;
    std::vector<std::vector<int>> adj(2 * n);
    for (auto& [i, j] : g.s) {
        adj[i - 1].push_back(n + j - 1);
        adj[n + j - 1].push_back(i - 1);
    }
    std::vector<char> seen(2 * n, 0);
    int comps = 0;
    for (int v = 0; v < 2 * n; ++v) {
        if (seen[v]) continue;
        ++comps;
        std::vector<int> queue{v};
        seen[v] = 1;
        for (size_t qi = 0; qi < queue.size(); ++qi)
            for (int w : adj[queue[qi]])
                if (!seen[w]) {
                    seen[w] = 1;
                    queue.push_back(w);
                }
    }
    return comps;
}

}  // namespace

CheckResult combinatorics_suite(uint64_t seed) {
    CheckResult res{.name = "torus_combinatorics"};
    std::mt19937_64 rng(seed);
    bool pass = true;
    json fails = json::array();

    for (int n = 2; n <= 3; ++n) {
        int cells = n * n;
        for (int mask = 1; mask < (1 << cells); ++mask) {
            SupportGraph g;
            g.n = n;
            for (int b = 0; b < cells; ++b)
                if (mask & (1 << b)) g.s.insert({b / n + 1, b % n + 1});
            GraphStats st = graph_stats(g);
            if (st.chi != components_bfs(g)) {
                pass = false;
                fails.push_back({{"n", n}, {"mask", mask}, {"what", "chi"}});
            }
            if (n == 2 && st.chi != std::max(1, 4 - static_cast<int>(g.s.size()))) pass = false;
            if (st.cyclomatic < 0) pass = false;
            auto cycles = cycle_monomials(g);
            if (static_cast<int>(cycles.size()) != st.cyclomatic) {
                pass = false;
                fails.push_back({{"n", n}, {"mask", mask}, {"what", "cycle_count"}});
            }
            // independence and character-lattice membership of the exponents
            if (!cycles.empty()) {
                Eigen::MatrixXd expo(cycles.size(), cells);
                expo.setZero();
                for (size_t r = 0; r < cycles.size(); ++r) {
                    std::array<int, 6> rowsum{}, colsum{};
                    for (auto& [cell, e] : cycles[r].exponents) {
                        expo(r, (cell.first - 1) * n + cell.second - 1) = e;
                        rowsum[cell.first - 1] += e;
                        colsum[cell.second - 1] += e;
                    }
                    for (int i = 0; i < n; ++i)
                        if (rowsum[i] != 0 || colsum[i] != 0) {
                            pass = false;
                            fails.push_back({{"n", n}, {"mask", mask}, {"what", "balance"}});
                        }
                }
                Eigen::JacobiSVD<Eigen::MatrixXd> svd(expo);
                int rank = 0;
                for (int i = 0; i < svd.singularValues().size(); ++i)
                    if (svd.singularValues()(i) > 1e-9 * svd.singularValues()(0)) ++rank;
                if (rank != static_cast<int>(cycles.size())) {
                    pass = false;
                    fails.push_back({{"n", n}, {"mask", mask}, {"what", "rank"}});
                }
            }
        }
    }

    // generator listings for the JS and degenerate JS supports
    SupportGraph js{2, {{1, 1}, {1, 2}, {2, 1}, {2, 2}}};
    SupportGraph js_deg{2, {{1, 2}, {2, 1}, {2, 2}}};
    Chart chart;
    auto rc = [&] { return std::complex<double>(0.3, 0.0) + rand_annulus(rng, 0.4, 1.2); };
    for (auto& cell : js.s) chart[cell] = {rc(), rc()};
    auto gens = invariant_generators(js, chart);
    int coords = 0, cyclesg = 0;
    for (auto& d : gens) (d.kind == InvariantDescriptor::coordinate ? coords : cyclesg)++;
    if (coords != 8 || cyclesg != 1) pass = false;
    auto gens_deg = invariant_generators(js_deg, chart);
    coords = cyclesg = 0;
    for (auto& d : gens_deg) (d.kind == InvariantDescriptor::coordinate ? coords : cyclesg)++;
    if (coords != 6 || cyclesg != 0) pass = false;

    // numeric invariance under the diagonal action, and orbit constancy
    double worst = 0.0;
    std::map<std::pair<int, int>, std::array<std::complex<double>, 2>> pt;
    for (auto& cell : js.s) pt[cell] = {rc(), rc()};
    std::vector<std::complex<double>> base_vals;
    for (auto& d : gens) base_vals.push_back(evaluate_descriptor(d, chart, pt));
    for (int trial = 0; trial < 1000; ++trial) {
        std::array<std::complex<double>, 2> gamma{rc(), rc()}, delta{rc(), rc()};
        auto acted = pt;
        for (auto& [cell, v] : acted) {
            std::complex<double> f = gamma[cell.first - 1] / delta[cell.second - 1];
            v = {v[0] * f, v[1] * f};
        }
        for (size_t i = 0; i < gens.size(); ++i) {
            std::complex<double> v = evaluate_descriptor(gens[i], chart, acted);
            worst = std::max(worst,
                             std::abs(v - base_vals[i]) / std::max(std::abs(base_vals[i]), 1e-300));
        }
    }
    if (worst > 1e-10) pass = false;

    res.pass = pass;
    res.worst = worst;
    res.details = {{"exhaustive_n", 3},
                   {"invariance_worst", worst},
                   {"failures", fails}};
    return res;
}

CheckResult quadric_geometry_suite(const ParamSet& p, uint64_t seed) {
    CheckResult res{.name = "quadric_geometry"};
    std::mt19937_64 rng(seed);
    bool pass = true;
    Tracker xyform, lines_resid, chart_inv, diag_inv;

    QuadricCoeffs ones{cx(1), cx(1), cx(1), cx(1), cx(1), cx(1), 1};
    QuadricCoeffs rank3{cx(2), cx(2), cx(1), cx(1), cx(1), cx(1), 1};
    if (classify(ones).rank != 4) pass = false;
    RankInfo r3 = classify(rank3);
    if (r3.rank != 3 || !r3.singular_direction) pass = false;
    if (r3.singular_direction)
        for (cx v : *r3.singular_direction)
            if (std::abs(v) < 1e-8) pass = false;
    QuadricCoeffs c1 = quadric_coeffs(p, 1);
    if (classify(c1).rank != 4 || classify(quadric_coeffs(p, 2)).rank != 4) pass = false;
    for (int t = 0; t < 5; ++t) {
        ParamSet pr = random_valid_params(p.q, rng);
        if (classify(quadric_coeffs(pr, 1)).rank != classify(quadric_coeffs(pr, 2)).rank)
            pass = false;
    }

    // XY rewriting of the quadratic equation
    for (int s = 0; s < 20; ++s) {
        cx r = rand_annulus(rng, 0.5, 1.5), sg = rand_annulus(rng, 0.5, 1.5);
        cx t = rand_annulus(rng, 0.5, 1.5), tp = rand_annulus(rng, 0.5, 1.5);
        cx phi = eval_form_affine(c1, {r, sg, t, tp}).value;
        cx X = c1.A * r - c1.E * t + c1.F * tp;
        cx Y = c1.A * sg + c1.C * t - c1.D * tp;
        cx bracket = c1.E * c1.C * t * t + c1.D * c1.F * tp * tp +
                     (c1.A * c1.B - c1.C * c1.F - c1.D * c1.E) * t * tp;
        xyform.feed(rel(c1.A * phi, X * Y + bracket));
    }

    // the two coordinate-line families lie on the surface
    for (int pos = 0; pos < 4; ++pos) {
        for (int inf = 0; inf < 2; ++inf) {
            for (int s = 0; s < 10; ++s) {
                Quad4Point pt;
                for (int m = 0; m < 4; ++m)
                    pt.c[m] = (m == pos)
                                  ? Proj1Point::affine(rand_annulus(rng, 0.3, 2.0))
                                  : (inf ? Proj1Point::infinity() : Proj1Point::affine(cx(0.0)));
                lines_resid.feed(eval_form(c1, pt).residual());
            }
        }
    }

    // chart independence and the diagonal action
    for (int s = 0; s < 20; ++s) {
        Quad4Point pt;
        for (int m = 0; m < 4; ++m)
            pt.c[m] = Proj1Point(rand_annulus(rng, 0.3, 2.0), rand_annulus(rng, 0.3, 2.0));
        double r0 = eval_form(c1, pt).residual();
        Quad4Point scaled = pt;
        int which = static_cast<int>(rng() % 4);
        cx lam = rand_annulus(rng, 0.2, 4.0);
        scaled.c[which] = Proj1Point(pt.c[which].x * lam, pt.c[which].y * lam);
        chart_inv.feed(std::abs(eval_form(c1, scaled).residual() - r0));
        Quad4Point diag = pt;
        cx mu = rand_annulus(rng, 0.2, 4.0);
        for (int m = 0; m < 4; ++m) diag.c[m] = Proj1Point(pt.c[m].x * mu, pt.c[m].y);
        diag_inv.feed(std::abs(eval_form(c1, diag).residual() - r0));
    }

    // boundary slices: plane membership kills the form, double infinity is
    // obstructed by one coefficient, triple slices are entire lines
    BoundaryReport br = boundary_analysis(c1);
    Tracker bnd;
    for (auto& s : br.single) {
        for (int trial = 0; trial < 5; ++trial) {
            std::array<cx, 4> v{};
            int solve_t = 0;
            for (int t = 0; t < 3; ++t)
                if (std::abs(s.plane_coeffs[t]) > std::abs(s.plane_coeffs[solve_t])) solve_t = t;
            cx acc = 0.0;
            for (int t = 0; t < 3; ++t) {
                if (t == solve_t) continue;
                v[s.plane_coords[t] - 1] = rand_annulus(rng, 0.3, 1.5);
                acc += s.plane_coeffs[t] * v[s.plane_coords[t] - 1];
            }
            v[s.plane_coords[solve_t] - 1] = -acc / s.plane_coeffs[solve_t];
            Quad4Point pt;
            for (int m = 0; m < 4; ++m)
                pt.c[m] = (m == s.position - 1) ? Proj1Point::infinity()
                                                : Proj1Point::affine(v[m]);
            bnd.feed(eval_form(c1, pt).residual());
        }
        if (s.min_gradient_norm < 1e-8) pass = false;
    }
    double kmin = 1e300;
    for (auto& d : br.doubles) {
        if (std::abs(d.obstruction) < 1e-12) pass = false;
        kmin = std::min(kmin, std::abs(d.obstruction));
    }
    for (double t : br.triple_max_residual)
        if (t > 1e-12) pass = false;

    res.worst = std::max({xyform.worst, lines_resid.worst, bnd.worst});
    res.pass = pass && xyform.worst < 1e-12 && lines_resid.worst < 1e-12 &&
               chart_inv.worst < 1e-10 && diag_inv.worst < 1e-10 && bnd.worst < 1e-10;
    res.details = {{"xy_form", xyform.worst},
                   {"coordinate_lines", lines_resid.worst},
                   {"chart_invariance", chart_inv.worst},
                   {"diagonal_invariance", diag_inv.worst},
                   {"boundary_planes", bnd.worst},
                   {"min_obstruction", kmin}};
    return res;
}

const std::vector<std::string>& canonical_suites() {
    static const std::vector<std::string> names = {"identities", "quadric", "pencil",
                                                   "samples",    "detlocus", "embed",
                                                   "lines",      "cubic",    "graph"};
    return names;
}

json run(const RunConfig& cfg) {
    if (cfg.samples < 1 || cfg.paramsets < 1)
        throw std::invalid_argument("run: sample counts must be at least 1");
    if (cfg.tol_override && !(*cfg.tol_override > 0.0))
        throw std::invalid_argument("run: tolerance override must be positive");
    auto t0 = std::chrono::steady_clock::now();
    json report;
    if (cfg.tol_override) report["tol_override"] = *cfg.tol_override;
    ValidationReport vr = validate(cfg.params);
    report["params"] = {{"q", jcx(cfg.params.q.q)},
                        {"rho", {jcx(cfg.params.rho[0]), jcx(cfg.params.rho[1])}},
                        {"sigma", {jcx(cfg.params.sigma[0]), jcx(cfg.params.sigma[1])}},
                        {"x",
                         {jcx(cfg.params.x[0]), jcx(cfg.params.x[1]), jcx(cfg.params.x[2]),
                          jcx(cfg.params.x[3])}}};
    report["seed"] = cfg.seed;
    report["validation"] = {{"nr_rho", vr.nr_rho}, {"nr_sigma", vr.nr_sigma},
                            {"nr_x", vr.nr_x},     {"fr_residual", vr.fr_residual},
                            {"ns", vr.ns},         {"sc", vr.sc},
                            {"pass", vr.all_pass()}};
    if (!vr.all_pass()) {
        report["pass"] = false;
        report["error"] = "parameter validation failed; perturb the offending entries";
        return report;
    }

    std::string convention = cfg.convention;
    if (convention == "auto") {
        std::mt19937_64 rng(cfg.seed);
        ConventionReport cr = select_convention(cfg.params, rng);
        convention = cr.chosen == RhoConvention::rowclass ? "rowclass" : "columnclass";
        report["convention"] = {{"chosen", convention},
                                {"residual_rowclass", cr.residual_rowclass},
                                {"residual_columnclass", cr.residual_columnclass}};
    } else {
        report["convention"] = {{"chosen", convention}};
    }

    std::vector<std::string> wanted = cfg.suites.empty() ? canonical_suites() : cfg.suites;
    json suites_out;
    bool all = true;
    auto add = [&](const std::string& suite, std::vector<CheckResult> checks) {
        json arr = json::array();
        bool pass = true;
        for (auto& c : checks) {
            json entry = {{"name", c.name},
                          {"pass", c.pass},
                          {"flagged", c.flagged},
                          {"worst", c.worst},
                          {"details", c.details}};
            if (cfg.tol_override) entry["pass_at_override"] = c.worst < *cfg.tol_override;
            arr.push_back(entry);
            pass = pass && c.pass;
        }
        suites_out[suite] = {{"pass", pass}, {"checks", arr}};
        all = all && pass;
    };
    const ParamSet& p = cfg.params;
    for (const std::string& s : wanted) {
        if (s == "identities")
            add(s, {theta_identity_suite(cfg.seed), oracle_equality_suite(p, cfg.seed, cfg.paramsets),
                    two_quadrics_suite(p, cfg.seed, cfg.paramsets),
                    discriminant_suite(p, cfg.seed, cfg.paramsets),
                    gamma_suite(p, cfg.seed, cfg.paramsets)});
        else if (s == "quadric")
            add(s, {quadric_geometry_suite(p, cfg.seed)});
        else if (s == "pencil")
            add(s, {pencil_suite(p, cfg.seed)});
        else if (s == "samples")
            add(s, {sample_membership_suite(p, cfg.seed, cfg.samples),
                    eq_relation_suite(p, cfg.seed, cfg.samples)});
        else if (s == "detlocus")
            add(s, {detlocus_suite(p, cfg.seed, 20, 5)});
        else if (s == "embed")
            add(s, {embedding_suite(p, cfg.seed, std::min(cfg.samples, 20))});
        else if (s == "lines")
            add(s, {lines_suite(p, cfg.seed)});
        else if (s == "cubic")
            add(s, {cubic_suite(p, cfg.seed, cfg.samples)});
        else if (s == "graph")
            add(s, {combinatorics_suite(cfg.seed)});
        else
            throw std::invalid_argument("run: unknown suite " + s);
    }
    report["suites"] = suites_out;
    report["pass"] = all;
    auto t1 = std::chrono::steady_clock::now();
    report["timing_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    return report;
}

bool report_all_pass(const json& report) {
    return report.contains("pass") && report["pass"].get<bool>();
}

}  // namespace qpvi::suites
