#include "qpvi/embed.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <stdexcept>

namespace qpvi {

namespace {

// contraction of (A..F) against eta in the order 12,13,14,23,24,34:
// A e12 + C e13 - D e14 - E e23 + F e24 + B e34
std::pair<cx, double> contract(const QuadricCoeffs& c, const std::array<cx, 6>& e) {
    std::array<cx, 6> terms = {c.A * e[0], c.C * e[1], -c.D * e[2],
                               -c.E * e[3], c.F * e[4], c.B * e[5]};
    cx v = 0.0;
    double s = 0.0;
    for (cx t : terms) {
        v += t;
        s += std::abs(t);
    }
    return {v, std::max(s, 1e-300)};
}

}  // namespace

QuadricCoeffs reference_quadric(const ParamSet& p, const PrecisionPolicy& policy) {
    return quadric_coeffs(rebalance_rho(p, cx(1.0)), 1, policy);
}

EtaHomogeneous eta_homogeneous(const ParamSet& p, const Quad4Point& pt,
                               const PrecisionPolicy& policy) {
    EtaHomogeneous h;
    for (int t = 0; t < 6; ++t) {
        cx prod = 1.0;
        for (int m = 0; m < 4; ++m) {
            bool xslot = (m == kEtaPairs[t].first || m == kEtaPairs[t].second);
            prod *= xslot ? pt.c[m].x : pt.c[m].y;
        }
        h.numerators[t] = prod;
    }
    h.denominator = eval_form(reference_quadric(p, policy), pt).value;
    return h;
}

EtaPoint eta(const ParamSet& p, const Quad4Point& pt, const PrecisionPolicy& policy) {
    EtaHomogeneous h = eta_homogeneous(p, pt, policy);
    double num_scale = 0.0;
    for (cx n : h.numerators) num_scale = std::max(num_scale, std::abs(n));
    if (std::abs(h.denominator) < 1e-12 * std::max(num_scale, 1e-300))
        throw std::domain_error("eta: point on the reference surface (pole)");
    EtaPoint e;
    for (int t = 0; t < 6; ++t) e.eta[t] = h.numerators[t] / h.denominator;
    return e;
}

std::array<double, 4> c6_residuals(const ParamSet& p, cx omega, const EtaPoint& e,
                                   const PrecisionPolicy& policy) {
    QuadricCoeffs aw = quadric_coeffs(rebalance_rho(p, omega), 1, policy);
    QuadricCoeffs ar = reference_quadric(p, policy);
    auto [v1, s1] = contract(aw, e.eta);
    auto [v2, s2] = contract(ar, e.eta);
    double pl_scale1 = std::max({std::abs(e.e12() * e.e34()), std::abs(e.e13() * e.e24()), 1e-300});
    double pl_scale2 = std::max({std::abs(e.e13() * e.e24()), std::abs(e.e14() * e.e23()), 1e-300});
    return {std::abs(v1) / s1, std::abs(v2 - cx(1.0)),
            std::abs(e.e12() * e.e34() - e.e13() * e.e24()) / pl_scale1,
            std::abs(e.e13() * e.e24() - e.e14() * e.e23()) / pl_scale2};
}

std::array<double, 3> c6_residuals_projective(const ParamSet& p, cx omega, const Quad4Point& pt,
                                              const PrecisionPolicy& policy) {
    EtaHomogeneous h = eta_homogeneous(p, pt, policy);
    QuadricCoeffs aw = quadric_coeffs(rebalance_rho(p, omega), 1, policy);
    auto [v1, s1] = contract(aw, h.numerators);
    const auto& n = h.numerators;
    double pl_scale1 = std::max({std::abs(n[0] * n[5]), std::abs(n[1] * n[4]), 1e-300});
    double pl_scale2 = std::max({std::abs(n[1] * n[4]), std::abs(n[2] * n[3]), 1e-300});
    return {std::abs(v1) / s1, std::abs(n[0] * n[5] - n[1] * n[4]) / pl_scale1,
            std::abs(n[1] * n[4] - n[2] * n[3]) / pl_scale2};
}

void Poly4::add(const Expo& e, cx coef) {
    terms_[e] += coef;
}

cx Poly4::eval(const std::array<cx, 4>& v) const {
    cx s = 0.0;
    for (auto& [e, c] : terms_) {
        cx t = c;
        for (int i = 0; i < 4; ++i)
            for (int k = 0; k < e[i]; ++k) t *= v[i];
        s += t;
    }
    return s;
}

Poly4 Poly4::degree_part(int d) const {
    Poly4 out;
    for (auto& [e, c] : terms_)
        if (e[0] + e[1] + e[2] + e[3] == d) out.terms_[e] = c;
    return out;
}

double Poly4::max_abs_coef() const {
    double m = 0.0;
    for (auto& [e, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

void Poly4::prune(double rel_threshold) {
    double cap = max_abs_coef() * rel_threshold;
    for (auto it = terms_.begin(); it != terms_.end();)
        it = (std::abs(it->second) < cap) ? terms_.erase(it) : std::next(it);
}

std::array<cx, 4> eta_restricted(const EtaPoint& e) {
    return {e.e12(), e.e13(), e.e14(), e.e23()};
}

EliminatedQuadrics eliminate_to_c4(const ParamSet& p, cx omega, double condition_cap,
                                   const PrecisionPolicy& policy) {
    QuadricCoeffs aw = quadric_coeffs(rebalance_rho(p, omega), 1, policy);
    QuadricCoeffs ar = reference_quadric(p, policy);
    Eigen::Matrix2cd m;
    m << aw.F, aw.B, ar.F, ar.B;
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(m);
    double cond = svd.singularValues()(0) / svd.singularValues()(1);
    if (!(cond < condition_cap))
        throw std::domain_error("eliminate_to_c4: ill-conditioned elimination");
    Eigen::Matrix2cd minv = m.inverse();

    EliminatedQuadrics out;
    out.condition = cond;
    // linear coefficients of (eta12, eta13, eta14, eta23) on the right sides
    std::array<cx, 4> rhs_w = {-aw.A, -aw.C, aw.D, aw.E};
    std::array<cx, 4> rhs_r = {-ar.A, -ar.C, ar.D, ar.E};
    for (int t = 0; t < 4; ++t) {
        Eigen::Vector2cd sol = minv * Eigen::Vector2cd(rhs_w[t], rhs_r[t]);
        out.l24[t] = sol(0);
        out.l34[t] = sol(1);
    }
    Eigen::Vector2cd c0 = minv * Eigen::Vector2cd(cx(0.0), cx(1.0));
    out.c24 = c0(0);
    out.c34 = c0(1);

    // (63): e12 e34 - e13 e24 ; (64): e13 e24 - e14 e23, substituted
    auto unit = [](int i) {
        Poly4::Expo e{0, 0, 0, 0};
        e[i] = 1;
        return e;
    };
    auto plus = [](Poly4::Expo a, Poly4::Expo b) {
        Poly4::Expo e;
        for (int i = 0; i < 4; ++i) e[i] = a[i] + b[i];
        return e;
    };
    for (int t = 0; t < 4; ++t) {
        out.q1.add(plus(unit(0), unit(t)), out.l34[t]);
        out.q1.add(plus(unit(1), unit(t)), -out.l24[t]);
        out.q2.add(plus(unit(1), unit(t)), out.l24[t]);
    }
    out.q1.add(unit(0), out.c34);
    out.q1.add(unit(1), -out.c24);
    out.q2.add(unit(1), out.c24);
    out.q2.add(plus(unit(2), unit(3)), cx(-1.0));
    out.q1.prune();
    out.q2.prune();
    return out;
}

namespace {

double poly_residual(const Poly4& q, const std::array<cx, 4>& v) {
    double vmax = 1.0;
    for (cx z : v) vmax = std::max(vmax, std::abs(z));
    double scale = q.max_abs_coef() * vmax * vmax;
    return std::abs(q.eval(v)) / std::max(scale, 1e-300);
}

struct LineFit {
    std::array<cx, 4> base, direction;
    double collinearity;
};

LineFit fit_line(const std::vector<std::array<cx, 4>>& pts) {
    Eigen::MatrixXcd m(pts.size(), 4);
    Eigen::RowVector4cd centroid = Eigen::RowVector4cd::Zero();
    for (size_t r = 0; r < pts.size(); ++r)
        for (int c = 0; c < 4; ++c) {
            m(r, c) = pts[r][c];
            centroid(c) += pts[r][c];
        }
    centroid /= static_cast<double>(pts.size());
    for (size_t r = 0; r < pts.size(); ++r) m.row(r) -= centroid;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinV);
    LineFit f;
    for (int c = 0; c < 4; ++c) {
        f.base[c] = centroid(c);
        f.direction[c] = svd.matrixV()(c, 0);
    }
    f.collinearity = svd.singularValues()(1) / std::max(svd.singularValues()(0), 1e-300);
    return f;
}

double line_distance(const LineFit& a, const LineFit& b) {
    // direction misalignment plus offset of b's base from a's line
    cx dot = 0.0;
    double na = 0.0, nb = 0.0;
    for (int c = 0; c < 4; ++c) {
        dot += std::conj(a.direction[c]) * b.direction[c];
        na += std::norm(a.direction[c]);
        nb += std::norm(b.direction[c]);
    }
    double align = 1.0 - std::abs(dot) / std::sqrt(na * nb);
    cx proj = 0.0;
    double off2 = 0.0, base_scale = 1.0;
    for (int c = 0; c < 4; ++c) proj += std::conj(a.direction[c]) * (b.base[c] - a.base[c]);
    proj /= na;
    for (int c = 0; c < 4; ++c) {
        cx d = (b.base[c] - a.base[c]) - proj * a.direction[c];
        off2 += std::norm(d);
        base_scale = std::max({base_scale, std::abs(a.base[c]), std::abs(b.base[c])});
    }
    return std::max(align, std::sqrt(off2) / base_scale);
}

}  // namespace

Lines16 lines16(const ParamSet& p, cx omega, std::mt19937_64& rng, int samples_per_line,
                const SamplerOptions& opts) {
    EliminatedQuadrics eq = eliminate_to_c4(p, omega, 1e8, opts.policy);
    Lines16 out;
    std::vector<LineFit> fits;
    const std::array<std::pair<Constraint::Kind, const char*>, 4> kinds = {{
        {Constraint::rho_zero, "rho%d=0"},
        {Constraint::rho_inf, "rho%d=inf"},
        {Constraint::rhoP_zero, "rho'%d=0"},
        {Constraint::rhoP_inf, "rho'%d=inf"},
    }};
    for (auto [kind, fmt] : kinds) {
        for (int pos = 1; pos <= 4; ++pos) {
            LineSpec spec;
            char buf[32];
            std::snprintf(buf, sizeof(buf), fmt, pos);
            spec.label = buf;
            spec.constraint = {kind, pos};
            std::vector<std::array<cx, 4>> pts;
            for (int s = 0; s < samples_per_line; ++s) {
                MonodromyRep m = sample_point(p, rng, spec.constraint, opts);
                RhoTuple t = rho_tuple(m, opts.convention);
                pts.push_back(eta_restricted(eta(p, t.rho, opts.policy)));
            }
            LineFit f = fit_line(pts);
            spec.base = f.base;
            spec.direction = f.direction;
            spec.collinearity = f.collinearity;
            spec.quadric_residuals = {0.0, 0.0};
            for (auto& v : pts) {
                spec.quadric_residuals[0] =
                    std::max(spec.quadric_residuals[0], poly_residual(eq.q1, v));
                spec.quadric_residuals[1] =
                    std::max(spec.quadric_residuals[1], poly_residual(eq.q2, v));
            }
            if (kind == Constraint::rhoP_zero || kind == Constraint::rhoP_inf) {
                // fitted constants of the claimed hyperplane containments
                // (eta13/eta23, eta12/eta23, eta13/eta14), reported only
                std::array<cx, 3> mean{};
                std::array<double, 3> spread{};
                auto ratio = [](const std::array<cx, 4>& v, int num, int den) {
                    return v[num] / v[den];
                };
                for (auto& v : pts) {
                    mean[0] += ratio(v, 1, 3);
                    mean[1] += ratio(v, 0, 3);
                    mean[2] += ratio(v, 1, 2);
                }
                for (auto& m0 : mean) m0 /= static_cast<double>(pts.size());
                for (auto& v : pts) {
                    spread[0] = std::max(spread[0], std::abs(ratio(v, 1, 3) - mean[0]));
                    spread[1] = std::max(spread[1], std::abs(ratio(v, 0, 3) - mean[1]));
                    spread[2] = std::max(spread[2], std::abs(ratio(v, 1, 2) - mean[2]));
                }
                double rel = 0.0;
                for (int t = 0; t < 3; ++t)
                    rel = std::max(rel, spread[t] / std::max(std::abs(mean[t]), 1e-300));
                spec.ratio_spread = rel;
                // exchanged-formula candidate for the (1,2) ratio
                cx cand1 = eq_constant(p, 1, opts.policy);
                cx cand2 = eq_constant(p, 2, opts.policy);
                spec.candidate_mismatch =
                    std::min(std::abs(mean[0] - cand1) / std::abs(cand1),
                             std::abs(mean[0] - cand2) / std::abs(cand2));
            }
            out.lines.push_back(spec);
            fits.push_back(f);
        }
    }
    out.min_within_family_distance = 1e300;
    for (int fam = 0; fam < 2; ++fam) {
        int lo = fam * 8, hi = lo + 8;
        for (int i = lo; i < hi; ++i)
            for (int j = i + 1; j < hi; ++j)
                out.min_within_family_distance =
                    std::min(out.min_within_family_distance, line_distance(fits[i], fits[j]));
    }
    for (int i = 0; i < 8; ++i)
        for (int j = 8; j < 16; ++j)
            if (line_distance(fits[i], fits[j]) < 1e-6) out.cross_family_coincidences.push_back({i, j});
    return out;
}

cx cubic_f(const QuadricCoeffs& c, cx X, cx Y, cx Z) {
    return c.A * X * Y * Y * Z + c.C * X * Y * Z - c.D * X * Y - c.E * Y * Z + c.F * Y + c.B;
}

std::array<cx, 3> cubic_f_gradient(const QuadricCoeffs& c, cx X, cx Y, cx Z) {
    return {c.A * Y * Y * Z + c.C * Y * Z - c.D * Y,
            cx(2.0) * c.A * X * Y * Z + c.C * X * Z - c.D * X - c.E * Z + c.F,
            c.A * X * Y * Y + c.C * X * Y - c.E * Y};
}

double cubic_f_scale(const QuadricCoeffs& c, cx X, cx Y, cx Z) {
    return std::abs(c.A * X * Y * Y * Z) + std::abs(c.C * X * Y * Z) + std::abs(c.D * X * Y) +
           std::abs(c.E * Y * Z) + std::abs(c.F * Y) + std::abs(c.B);
}

CubicSurface cubic_surface_eq(const QuadricCoeffs& c) {
    CubicSurface s;
    s.p_coeffs = {-c.A * c.A * c.E, c.A * (c.A * c.F - cx(2.0) * c.C * c.E),
                  c.C * (cx(2.0) * c.A * c.F - c.C * c.E), c.C * (c.D * c.E + c.C * c.F)};
    s.q_coeffs = {c.A * c.F * c.F,
                  c.A * (cx(2.0) * c.C * c.F - cx(2.0) * c.D * c.E + c.A * c.B),
                  c.C * (cx(2.0) * c.A * c.B - cx(2.0) * c.D * c.E + c.C * c.F), c.B * c.C * c.C};
    s.resultant = resultant_sylvester(s.p_coeffs, s.q_coeffs);
    return s;
}

cx resultant_sylvester(const std::array<cx, 4>& p3, const std::array<cx, 4>& q3) {
    Eigen::Matrix<cx, 6, 6> s = Eigen::Matrix<cx, 6, 6>::Zero();
    for (int r = 0; r < 3; ++r)
        for (int k = 0; k < 4; ++k) s(r, r + k) = p3[k];
    for (int r = 0; r < 3; ++r)
        for (int k = 0; k < 4; ++k) s(3 + r, r + k) = q3[k];
    return s.determinant();
}

}  // namespace qpvi
