#pragma once

#include <optional>

#include "qpvi/coeffs.hpp"

namespace qpvi {

/// Class [x : y] on P^1; the affine value in the standard chart is x/y.
struct Proj1Point {
    cx x, y;

    Proj1Point() : x(1.0), y(1.0) {}
    Proj1Point(cx x_, cx y_);  // normalizes to max-modulus 1

    static Proj1Point affine(cx v) { return {v, cx(1.0)}; }
    static Proj1Point infinity() { return {cx(1.0), cx(0.0)}; }

    bool is_infinity(double tol = 1e-12) const { return std::abs(y) <= tol * std::abs(x); }
    cx value() const { return x / y; }
    Proj1Point flipped() const { return {y, x}; }

    /// |x1 y2 - x2 y1| on max-modulus-1 representatives.
    static double cross_distance(const Proj1Point& a, const Proj1Point& b);
    static bool same(const Proj1Point& a, const Proj1Point& b, double tol = 1e-9);

    /// Projective ratio a/b.
    static Proj1Point ratio(const Proj1Point& a, const Proj1Point& b) {
        return {a.x * b.y, b.x * a.y};
    }
};

/// Point of (P^1)^4.
struct Quad4Point {
    std::array<Proj1Point, 4> c;
};

struct FormValue {
    cx value;        // bihomogeneous value on the normalized representatives
    double scale;    // sum of monomial magnitudes
    double residual() const { return std::abs(value) / std::max(scale, 1e-300); }
};

// Bihomogeneous form  A r1x r2x r3y r4y + B r1y r2y r3x r4x + C r1x r2y r3x r4y
// - D r1x r2y r3y r4x - E r1y r2x r3x r4y + F r1y r2x r3y r4x.
FormValue eval_form(const QuadricCoeffs& c, const Quad4Point& pt);

/// Affine chart variant on values (r1, r2, r3, r4).
FormValue eval_form_affine(const QuadricCoeffs& c, const std::array<cx, 4>& v);

struct RankInfo {
    int rank = 4;
    std::optional<std::array<cx, 4>> singular_direction;  // kernel, when rank 3
};

// Rank of the Gram matrix by singular values; throws if rank < 3 (forbidden
// while C, D, E, F are nonzero).
RankInfo classify(const QuadricCoeffs& c, double tol = 1e-9);

struct PencilSpec {
    QuadricCoeffs gen1, gen2;
};

// Least-squares resolution of target ~ l1 gen1 + l2 gen2 over the six
// coefficients; engaged only when the relative residual is below tol.
std::optional<std::pair<cx, cx>> pencil_membership(const QuadricCoeffs& target,
                                                   const PencilSpec& pencil, double tol = 1e-7);

double pencil_residual(const QuadricCoeffs& target, const PencilSpec& pencil);

struct BoundaryReport {
    // one entry per coordinate sent to infinity (position 1..4)
    struct SingleInfinity {
        int position;
        std::array<int, 3> plane_coords;   // remaining positions, 1-based
        std::array<cx, 3> plane_coeffs;    // linear form cutting the slice
        double min_gradient_norm;          // over sampled points of the slice
    };
    std::array<SingleInfinity, 4> single;
    // surviving coefficient for each double-infinity pair
    struct DoubleInfinity {
        std::array<int, 2> positions;
        cx obstruction;
    };
    std::array<DoubleInfinity, 6> doubles;
    // max |Phi| over random points of each triple-infinity slice
    std::array<double, 4> triple_max_residual;
};

BoundaryReport boundary_analysis(const QuadricCoeffs& c);

}  // namespace qpvi
