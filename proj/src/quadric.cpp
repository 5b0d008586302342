#include "qpvi/quadric.hpp"

#include <Eigen/Dense>

#include <random>
#include <stdexcept>

namespace qpvi {

namespace {

struct Monomial {
    double sign;
    int a, b;  // 0-based positions carrying the x-coordinate
};

// A r1 r2 + B r3 r4 + C r1 r3 - D r1 r4 - E r2 r3 + F r2 r4
constexpr std::array<Monomial, 6> kMonomials = {{
    {+1.0, 0, 1},  // A
    {+1.0, 2, 3},  // B
    {+1.0, 0, 2},  // C
    {-1.0, 0, 3},  // D
    {-1.0, 1, 2},  // E
    {+1.0, 1, 3},  // F
}};

}  // namespace

Proj1Point::Proj1Point(cx x_, cx y_) : x(x_), y(y_) {
    double m = std::max(std::abs(x), std::abs(y));
    if (m == 0.0) throw std::invalid_argument("Proj1Point: [0:0]");
    x /= m;
    y /= m;
}

double Proj1Point::cross_distance(const Proj1Point& a, const Proj1Point& b) {
    return std::abs(a.x * b.y - b.x * a.y);
}

bool Proj1Point::same(const Proj1Point& a, const Proj1Point& b, double tol) {
    return cross_distance(a, b) < tol;
}

FormValue eval_form(const QuadricCoeffs& c, const Quad4Point& pt) {
    std::array<cx, 6> k = c.as_array();
    cx total = 0.0;
    double scale = 0.0;
    for (int m = 0; m < 6; ++m) {
        cx term = k[m];
        for (int pos = 0; pos < 4; ++pos) {
            bool xslot = (pos == kMonomials[m].a || pos == kMonomials[m].b);
            term *= xslot ? pt.c[pos].x : pt.c[pos].y;
        }
        total += kMonomials[m].sign * term;
        scale += std::abs(term);
    }
    return {total, scale};
}

FormValue eval_form_affine(const QuadricCoeffs& c, const std::array<cx, 4>& v) {
    std::array<cx, 6> k = c.as_array();
    cx total = 0.0;
    double scale = 0.0;
    for (int m = 0; m < 6; ++m) {
        cx term = k[m] * v[kMonomials[m].a] * v[kMonomials[m].b];
        total += kMonomials[m].sign * term;
        scale += std::abs(term);
    }
    return {total, scale};
}

RankInfo classify(const QuadricCoeffs& c, double tol) {
    Eigen::Matrix4cd g;
    g << cx(0), c.A, c.C, -c.D,
         c.A, cx(0), -c.E, c.F,
         c.C, -c.E, cx(0), c.B,
         -c.D, c.F, c.B, cx(0);
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(g, Eigen::ComputeFullV);
    auto sv = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < 4; ++i)
        if (sv(i) >= tol * sv(0)) ++rank;
    if (rank < 3) throw std::domain_error("classify: rank below 3, coefficients invalid");
    RankInfo info;
    info.rank = rank;
    if (rank == 3) {
        std::array<cx, 4> dir;
        for (int i = 0; i < 4; ++i) dir[i] = svd.matrixV()(i, 3);
        info.singular_direction = dir;
    }
    return info;
}

double pencil_residual(const QuadricCoeffs& target, const PencilSpec& pencil) {
    Eigen::Matrix<cx, 6, 2> g;
    Eigen::Matrix<cx, 6, 1> t;
    auto a1 = pencil.gen1.as_array(), a2 = pencil.gen2.as_array(), ta = target.as_array();
    for (int i = 0; i < 6; ++i) {
        g(i, 0) = a1[i];
        g(i, 1) = a2[i];
        t(i) = ta[i];
    }
    Eigen::Matrix<cx, 2, 1> lam = g.colPivHouseholderQr().solve(t);
    return (g * lam - t).norm() / t.norm();
}

std::optional<std::pair<cx, cx>> pencil_membership(const QuadricCoeffs& target,
                                                   const PencilSpec& pencil, double tol) {
    {
        Eigen::Matrix<cx, 6, 1> a, b;
        auto a1 = pencil.gen1.as_array(), a2 = pencil.gen2.as_array();
        for (int i = 0; i < 6; ++i) {
            a(i) = a1[i];
            b(i) = a2[i];
        }
        cx lam = a.dot(b) / a.squaredNorm();
        if ((b - lam * a).norm() < 1e-12 * b.norm())
            throw std::invalid_argument("pencil_membership: proportional generators");
    }
    Eigen::Matrix<cx, 6, 2> g;
    Eigen::Matrix<cx, 6, 1> t;
    auto a1 = pencil.gen1.as_array(), a2 = pencil.gen2.as_array(), ta = target.as_array();
    for (int i = 0; i < 6; ++i) {
        g(i, 0) = a1[i];
        g(i, 1) = a2[i];
        t(i) = ta[i];
    }
    Eigen::Matrix<cx, 2, 1> lam = g.colPivHouseholderQr().solve(t);
    double resid = (g * lam - t).norm() / t.norm();
    if (resid >= tol) return std::nullopt;
    return std::make_pair(lam(0), lam(1));
}

BoundaryReport boundary_analysis(const QuadricCoeffs& c) {
    BoundaryReport rep;
    std::array<cx, 6> k = c.as_array();
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    auto rndc = [&] { return cx(unif(rng), unif(rng)); };

    for (int p = 0; p < 4; ++p) {
        auto& s = rep.single[p];
        s.position = p + 1;
        int idx = 0;
        for (int pos = 0; pos < 4; ++pos)
            if (pos != p) s.plane_coords[idx++] = pos + 1;
        // monomials with an x-slot at p contribute a linear term in the other
        // x-slot coordinate
        for (int t = 0; t < 3; ++t) s.plane_coeffs[t] = 0.0;
        for (int m = 0; m < 6; ++m) {
            int other = -1;
            if (kMonomials[m].a == p) other = kMonomials[m].b;
            if (kMonomials[m].b == p) other = kMonomials[m].a;
            if (other < 0) continue;
            for (int t = 0; t < 3; ++t)
                if (s.plane_coords[t] == other + 1) s.plane_coeffs[t] += kMonomials[m].sign * k[m];
        }
        // gradient on the slice: the three plane coefficients plus the
        // derivative along the inverted coordinate
        double min_norm = 1e300;
        for (int trial = 0; trial < 10; ++trial) {
            std::array<cx, 4> v{};
            // random point on the plane (solve for the first coordinate with a
            // nonzero coefficient)
            int solve_t = 0;
            for (int t = 0; t < 3; ++t)
                if (std::abs(s.plane_coeffs[t]) > std::abs(s.plane_coeffs[solve_t])) solve_t = t;
            cx acc = 0.0;
            for (int t = 0; t < 3; ++t) {
                if (t == solve_t) continue;
                v[s.plane_coords[t] - 1] = rndc();
                acc += s.plane_coeffs[t] * v[s.plane_coords[t] - 1];
            }
            v[s.plane_coords[solve_t] - 1] = -acc / s.plane_coeffs[solve_t];
            cx dpert = 0.0;  // d/d(inverted coord): monomials not involving p's x-slot
            for (int m = 0; m < 6; ++m) {
                if (kMonomials[m].a == p || kMonomials[m].b == p) continue;
                dpert += kMonomials[m].sign * k[m] * v[kMonomials[m].a] * v[kMonomials[m].b];
            }
            double norm2 = std::norm(dpert);
            for (int t = 0; t < 3; ++t) norm2 += std::norm(s.plane_coeffs[t]);
            min_norm = std::min(min_norm, std::sqrt(norm2));
        }
        s.min_gradient_norm = min_norm;
    }

    int d = 0;
    for (int m = 0; m < 6; ++m) {
        rep.doubles[d].positions = {kMonomials[m].a + 1, kMonomials[m].b + 1};
        rep.doubles[d].obstruction = kMonomials[m].sign * k[m];
        ++d;
    }

    for (int p = 0; p < 4; ++p) {
        // positions other than p at infinity, p free
        double worst = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            Quad4Point pt;
            for (int pos = 0; pos < 4; ++pos)
                pt.c[pos] = (pos == p) ? Proj1Point::affine(rndc()) : Proj1Point::infinity();
            worst = std::max(worst, std::abs(eval_form(c, pt).value));
        }
        rep.triple_max_residual[p] = worst;
    }
    return rep;
}

}  // namespace qpvi
