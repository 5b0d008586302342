#include "qpvi/monodromy.hpp"

#include <Eigen/Dense>

#include <stdexcept>

namespace qpvi {

BasisEvalTable basis_eval_matrix(const ParamSet& p, int i, int j, const PrecisionPolicy& policy) {
    BasisEvalTable t;
    cx u = p.sigma[j - 1] / p.rho[i - 1];
    for (int k = 0; k < 4; ++k) {
        for (int m = 0; m < 2; ++m) {
            if (k == m) {
                t[k][m] = 0.0;  // theta(-x_k/x_k) = theta(-1) = 0
                continue;
            }
            t[k][m] = theta(p.q, -p.x[k] / p.x[m], policy) *
                      theta(p.q, -p.x[k] * p.x[m] * u, policy);
        }
    }
    return t;
}

MonodromyRep::MonodromyRep(ParamSet p, std::array<std::array<std::pair<cx, cx>, 2>, 2> coeff,
                           const PrecisionPolicy& policy)
    : params_(std::move(p)), coeff_(coeff), policy_(policy) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            BasisEvalTable t = basis_eval_matrix(params_, i + 1, j + 1, policy_);
            for (int k = 0; k < 4; ++k)
                values_[i][j][k] = coeff_[i][j].first * t[k][0] + coeff_[i][j].second * t[k][1];
        }
}

cx MonodromyRep::entry_at(int i, int j, cx x) const {
    cx u = params_.sigma[j] / params_.rho[i];
    cx e1 = theta(params_.q, -x / params_.x[0], policy_) *
            theta(params_.q, -x * params_.x[0] * u, policy_);
    cx e2 = theta(params_.q, -x / params_.x[1], policy_) *
            theta(params_.q, -x * params_.x[1] * u, policy_);
    return coeff_[i][j].first * e1 + coeff_[i][j].second * e2;
}

cx MonodromyRep::det_at(int k) const {
    return values_[0][0][k] * values_[1][1][k] - values_[0][1][k] * values_[1][0][k];
}

cx MonodromyRep::det_at_point(cx x) const {
    return entry_at(0, 0, x) * entry_at(1, 1, x) - entry_at(0, 1, x) * entry_at(1, 0, x);
}

double MonodromyRep::scale2() const {
    double m = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 4; ++k) m = std::max(m, std::abs(values_[i][j][k]));
    return m * m;
}

namespace {

using CoeffGrid = std::array<std::array<std::pair<cx, cx>, 2>, 2>;

cx rand_cx(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double re = u(rng), im = u(rng);
    return {re, im};
}

// Zero line/column of M(x_{k0}) expressed through which matrix entries get
// pinned to the basis direction vanishing at x_{k0}.
struct PinSpec {
    // pinned entries (i, j) share the scale structure explained in
    // sample_point; 'free' is the randomly drawn entry, 'solved' the remaining
    // one whose coefficients enter the kernel system.
    std::pair<int, int> pin_a, pin_b, free, solved;
    bool pinned_multiplies_free;  // true when the pinned pair and free entry
                                  // sit in the same det-product term
};

PinSpec pin_spec(Constraint::Kind kind, RhoConvention conv) {
    // rho value is read as m12/m11 (the quadric chart); rho' as m21/m11 under
    // rowclass, m11/m21 under columnclass.
    bool col_constraint = (kind == Constraint::rho_zero || kind == Constraint::rho_inf);
    int zero_col = (kind == Constraint::rho_zero) ? 1 : 0;
    bool rp_zero = (kind == Constraint::rhoP_zero);
    int zero_row;
    if (conv == RhoConvention::rowclass)
        zero_row = rp_zero ? 1 : 0;
    else
        zero_row = rp_zero ? 0 : 1;

    PinSpec s{};
    if (col_constraint) {
        int oth = 1 - zero_col;
        s.pin_a = {0, zero_col};
        s.pin_b = {1, zero_col};
        s.free = {0, oth};
        s.solved = {1, oth};
    } else {
        int oth = 1 - zero_row;
        s.pin_a = {zero_row, 0};
        s.pin_b = {zero_row, 1};
        s.free = {oth, 0};
        s.solved = {oth, 1};
    }
    return s;
}

}  // namespace

MonodromyRep sample_point(const ParamSet& p, std::mt19937_64& rng, Constraint c,
                          const SamplerOptions& opts) {
    std::array<std::array<BasisEvalTable, 2>, 2> ev;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) ev[i][j] = basis_eval_matrix(p, i + 1, j + 1, opts.policy);

    auto value_of = [&](std::pair<cx, cx> cf, int i, int j, int k) {
        return cf.first * ev[i][j][k][0] + cf.second * ev[i][j][k][1];
    };

    for (int attempt = 0; attempt < opts.max_retries; ++attempt) {
        CoeffGrid grid{};
        bool ok = false;
        if (c.kind == Constraint::none) {
            grid[0][0] = {rand_cx(rng), rand_cx(rng)};
            grid[1][0] = {rand_cx(rng), rand_cx(rng)};
            // det M(x_k) = 0, k = 1..3, linear in the (m12, m22) coefficients
            Eigen::Matrix<cx, 3, 4> sys;
            for (int k = 0; k < 3; ++k) {
                cx m11 = value_of(grid[0][0], 0, 0, k);
                cx m21 = value_of(grid[1][0], 1, 0, k);
                sys(k, 0) = -m21 * ev[0][1][k][0];
                sys(k, 1) = -m21 * ev[0][1][k][1];
                sys(k, 2) = m11 * ev[1][1][k][0];
                sys(k, 3) = m11 * ev[1][1][k][1];
            }
            Eigen::JacobiSVD<Eigen::Matrix<cx, 3, 4>> svd(sys, Eigen::ComputeFullV);
            if (svd.singularValues()(2) < opts.degenerate_tol * svd.singularValues()(0)) continue;
            Eigen::Matrix<cx, 4, 1> v = svd.matrixV().col(3);
            grid[0][1] = {v(0), v(1)};
            grid[1][1] = {v(2), v(3)};
            ok = true;
        } else {
            int k0 = c.position - 1;
            PinSpec s = pin_spec(c.kind, opts.convention);
            // direction with m(x_{k0}) = 0
            auto pin_dir = [&](std::pair<int, int> e) -> std::pair<cx, cx> {
                return {ev[e.first][e.second][k0][1], -ev[e.first][e.second][k0][0]};
            };
            auto da = pin_dir(s.pin_a);
            auto db = pin_dir(s.pin_b);
            std::pair<cx, cx> cf_free = {rand_cx(rng), rand_cx(rng)};
            // remaining conditions at the first two indices other than k0;
            // the last follows from the Fuchs relation
            std::array<int, 2> ks{};
            int n = 0;
            for (int k = 0; k < 4 && n < 2; ++k)
                if (k != k0) ks[n++] = k;
            // unknowns (scale of the pin partner entry, solved entry coeffs)
            Eigen::Matrix<cx, 2, 3> sys;
            for (int t = 0; t < 2; ++t) {
                int k = ks[t];
                cx vfree = value_of(cf_free, s.free.first, s.free.second, k);
                cx va = value_of(da, s.pin_a.first, s.pin_a.second, k);
                cx vb = value_of(db, s.pin_b.first, s.pin_b.second, k);
                // det = m11 m22 - m12 m21; 'free' and 'pin_b' are always
                // complementary entries, so their product carries the det
                // sign of the diagonal 'free' sits on. The scale unknown
                // rides on pin_b.
                cx sgn_fb = (s.free.first == s.free.second) ? cx(1.0) : cx(-1.0);
                cx sgn_as = -sgn_fb;
                sys(t, 0) = sgn_fb * vfree * vb;
                sys(t, 1) = sgn_as * va * ev[s.solved.first][s.solved.second][k][0];
                sys(t, 2) = sgn_as * va * ev[s.solved.first][s.solved.second][k][1];
            }
            Eigen::JacobiSVD<Eigen::Matrix<cx, 2, 3>> svd(sys, Eigen::ComputeFullV);
            if (svd.singularValues()(1) < opts.degenerate_tol * svd.singularValues()(0)) continue;
            Eigen::Matrix<cx, 3, 1> w = svd.matrixV().col(2);
            grid[s.free.first][s.free.second] = cf_free;
            grid[s.pin_a.first][s.pin_a.second] = da;
            grid[s.pin_b.first][s.pin_b.second] = {db.first * w(0), db.second * w(0)};
            grid[s.solved.first][s.solved.second] = {w(1), w(2)};
            ok = true;
        }
        if (!ok) continue;

        MonodromyRep rep(p, grid, opts.policy);
        double s2 = rep.scale2();
        if (s2 <= 0.0) continue;
        bool degenerate = false;
        for (int i = 0; i < 2 && !degenerate; ++i)
            for (int j = 0; j < 2; ++j) {
                double cn = std::abs(rep.coeff(i, j).first) + std::abs(rep.coeff(i, j).second);
                if (cn < 1e-12) {
                    degenerate = true;  // m_{i,j} identically zero
                    break;
                }
            }
        for (int k = 0; k < 4 && !degenerate; ++k)
            if (std::abs(rep.det_at(k)) > 1e-8 * s2) degenerate = true;
        if (degenerate) continue;
        return rep;
    }
    throw std::runtime_error("sample_point: no admissible sample within retry budget");
}

double Rank1Mat::max_abs() const {
    double m = 0.0;
    for (auto& r : a)
        for (auto& v : r) m = std::max(m, std::abs(v));
    return m;
}

bool Rank1Mat::is_rank1(double tol) const {
    double m = max_abs();
    return m > 0.0 && std::abs(det()) < tol * m * m;
}

Rank1Mat Rank1Mat::at(const MonodromyRep& m, int k) {
    return Rank1Mat{{{{m.entry(0, 0, k), m.entry(0, 1, k)}, {m.entry(1, 0, k), m.entry(1, 1, k)}}}};
}

std::pair<Proj1Point, Proj1Point> rho_rank1(const Rank1Mat& m, RhoConvention convention) {
    if (m.max_abs() == 0.0) throw std::domain_error("rho_rank1: zero matrix");
    // dismiss the vanishing representative
    auto row_norm = [&](int r) { return std::abs(m.a[r][0]) + std::abs(m.a[r][1]); };
    auto col_norm = [&](int c) { return std::abs(m.a[0][c]) + std::abs(m.a[1][c]); };
    int r = row_norm(0) >= row_norm(1) ? 0 : 1;
    int c = col_norm(0) >= col_norm(1) ? 0 : 1;
    Proj1Point row_class(m.a[r][0], m.a[r][1]);
    Proj1Point col_class(m.a[0][c], m.a[1][c]);
    if (convention == RhoConvention::rowclass) return {row_class, col_class};
    return {col_class, row_class};
}

RhoTuple rho_tuple(const MonodromyRep& m, RhoConvention convention) {
    RhoTuple t;
    for (int k = 0; k < 4; ++k) {
        Rank1Mat a = Rank1Mat::at(m, k);
        if (!a.is_rank1()) throw std::domain_error("rho_tuple: evaluation is not rank 1");
        auto [row_class, col_class] = rho_rank1(a, RhoConvention::rowclass);
        // quadric chart: value m12/m11
        t.rho.c[k] = row_class.flipped();
        t.rhoPrime.c[k] = (convention == RhoConvention::rowclass) ? col_class.flipped()
                                                                  : col_class;
    }
    auto safe_ratio = [](const Proj1Point& a, const Proj1Point& b) -> std::optional<Proj1Point> {
        cx num = a.x * b.y, den = b.x * a.y;
        if (std::abs(num) + std::abs(den) < 1e-14) return std::nullopt;
        return Proj1Point(num, den);
    };
    for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
            t.Pi[k][l] = safe_ratio(t.rhoPrime.c[k], t.rhoPrime.c[l]);
            t.PiPrime[k][l] = safe_ratio(t.rho.c[k], t.rho.c[l]);
        }
    return t;
}

std::pair<std::optional<Proj1Point>, std::optional<Proj1Point>> pi_mixed(const Rank1Mat& m1,
                                                                         const Rank1Mat& m2) {
    auto col_of = [](const Rank1Mat& m) -> std::array<cx, 2> {
        double n0 = std::abs(m.a[0][0]) + std::abs(m.a[1][0]);
        double n1 = std::abs(m.a[0][1]) + std::abs(m.a[1][1]);
        int c = n0 >= n1 ? 0 : 1;
        return {m.a[0][c], m.a[1][c]};
    };
    auto row_of = [](const Rank1Mat& m) -> std::array<cx, 2> {
        double n0 = std::abs(m.a[0][0]) + std::abs(m.a[0][1]);
        double n1 = std::abs(m.a[1][0]) + std::abs(m.a[1][1]);
        int r = n0 >= n1 ? 0 : 1;
        return {m.a[r][0], m.a[r][1]};
    };
    std::pair<std::optional<Proj1Point>, std::optional<Proj1Point>> out;
    auto c1 = col_of(m1), c2 = col_of(m2);
    cx pa = c1[0] * c2[1], pb = c2[0] * c1[1];
    double cs = std::max(m1.max_abs() * m2.max_abs(), 1e-300);
    if (std::abs(pa) + std::abs(pb) > 1e-12 * cs) out.first = Proj1Point(pa, pb);
    auto r1 = row_of(m1), r2 = row_of(m2);
    cx qa = r1[0] * r2[1], qb = r2[0] * r1[1];
    if (std::abs(qa) + std::abs(qb) > 1e-12 * cs) out.second = Proj1Point(qa, qb);
    return out;
}

Quad4Point det_locus(const ParamSet& p, cx t, const PrecisionPolicy& policy) {
    if (t == cx(0.0)) throw std::invalid_argument("det_locus: t = 0");
    Quad4Point pt;
    for (int k = 0; k < 4; ++k) {
        cx num = theta(p.q, p.sigma[1] * p.x[k] * t, policy);
        cx den = theta(p.q, p.sigma[0] * p.x[k] * t, policy);
        pt.c[k] = Proj1Point(num, den);
    }
    return pt;
}

cx eq_constant(const ParamSet& p, int which, const PrecisionPolicy& policy) {
    cx s = p.sigma[which - 1];
    cx a = s / p.rho[0], b = s / p.rho[1];
    cx x13 = p.x[0] * p.x[2], x23 = p.x[1] * p.x[2];
    cx den = theta(p.q, a * x23, policy) * theta(p.q, b * x13, policy);
    if (std::abs(den) == 0.0) throw std::domain_error("eq_constant: theta zero in denominator");
    return theta(p.q, a * x13, policy) * theta(p.q, b * x23, policy) / den;
}

TensorPair tensor_pair(const MonodromyRep& m, cx x0) {
    const ParamSet& p = m.params();
    for (int k = 0; k < 4; ++k)
        if (congruence_class(x0, p.x[k], p.q))
            throw std::invalid_argument("tensor_pair: x0 congruent to a det zero");
    TensorPair out{};
    std::array<cx, 4> pts{p.x[0], p.x[1], p.x[2], x0};
    double scale = 0.0;
    for (int s = 0; s < 4; ++s) {
        out.yplus[s] = (s < 3) ? m.entry(0, 0, s) * m.entry(1, 1, s)
                               : m.entry_at(0, 0, pts[s]) * m.entry_at(1, 1, pts[s]);
        out.yminus[s] = (s < 3) ? m.entry(0, 1, s) * m.entry(1, 0, s)
                                : m.entry_at(0, 1, pts[s]) * m.entry_at(1, 0, pts[s]);
        scale = std::max({scale, std::abs(out.yplus[s]), std::abs(out.yminus[s])});
    }
    // product-basis coordinates of y+ = m11 (x) m22: (a1 a2, a1 b2, b1 a2, b1 b2)
    auto segre = [](std::pair<cx, cx> u, std::pair<cx, cx> v) {
        cx X = u.first * v.first, Y = u.first * v.second;
        cx Z = u.second * v.first, T = u.second * v.second;
        double s = std::max({std::abs(X * T), std::abs(Y * Z), 1e-300});
        return std::abs(X * T - Y * Z) / s;
    };
    out.segre_residuals[0] = segre(m.coeff(0, 0), m.coeff(1, 1));
    out.segre_residuals[1] = segre(m.coeff(0, 1), m.coeff(1, 0));
    for (int k = 0; k < 3; ++k)
        out.line_residuals[k] = std::abs(out.yplus[k] - out.yminus[k]) / std::max(scale, 1e-300);
    out.x0_magnitude = std::abs(out.yplus[3] - out.yminus[3]) / std::max(scale, 1e-300);
    return out;
}

cx default_x0(const ParamSet& p) {
    cx dir = cx(1.0, 1.0) / std::abs(cx(1.0, 1.0));
    cx x0 = p.x[0] * std::sqrt(p.q.q) * dir;
    for (int tries = 0; tries < 32; ++tries) {
        bool clash = false;
        for (int k = 0; k < 4; ++k)
            if (congruence_class(x0, p.x[k], p.q)) clash = true;
        if (!clash) return x0;
        x0 *= cx(std::cos(0.37), std::sin(0.37));
    }
    throw std::runtime_error("default_x0: no non-congruent direction found");
}

double eq_relation_residual(const ParamSet& p, std::mt19937_64& rng, RhoConvention convention,
                            int samples) {
    cx e1 = eq_constant(p, 1);
    cx e2 = eq_constant(p, 2);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        MonodromyRep m = sample_point(p, rng, {Constraint::rho_zero, 1},
                                      SamplerOptions{.convention = convention});
        RhoTuple t = rho_tuple(m, convention);
        // on Pi'_{1,2} = 0, Pi_{1,2} should equal e_q^1 (or e_q^2 under the
        // opposite orientation); take the better of the two
        double r = 1e300;
        if (t.Pi[0][1] && std::abs(t.Pi[0][1]->y) > 0.0) {
            cx v = t.Pi[0][1]->value();
            r = std::min(std::abs(v - e1) / std::abs(e1), std::abs(v - e2) / std::abs(e2));
        }
        worst = std::max(worst, r);
    }
    return worst;
}

ConventionReport select_convention(const ParamSet& p, std::mt19937_64& rng, int samples) {
    ConventionReport rep{};
    rep.residual_rowclass = eq_relation_residual(p, rng, RhoConvention::rowclass, samples);
    rep.residual_columnclass = eq_relation_residual(p, rng, RhoConvention::columnclass, samples);
    rep.chosen = rep.residual_rowclass <= rep.residual_columnclass ? RhoConvention::rowclass
                                                                   : RhoConvention::columnclass;
    return rep;
}

}  // namespace qpvi
