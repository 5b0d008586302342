#pragma once

#include <map>
#include <string>

#include "qpvi/monodromy.hpp"

namespace qpvi {

// eta coordinate order: 12, 13, 14, 23, 24, 34.
constexpr std::array<std::pair<int, int>, 6> kEtaPairs = {{
    {0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
}};

struct EtaPoint {
    std::array<cx, 6> eta;

    cx e12() const { return eta[0]; }
    cx e13() const { return eta[1]; }
    cx e14() const { return eta[2]; }
    cx e23() const { return eta[3]; }
    cx e24() const { return eta[4]; }
    cx e34() const { return eta[5]; }
};

// Reference quadric of the embedding: the degenerate family member at
// omega = 1 (rho1 = rho2), the analogue of the equal-exponent quadric.
QuadricCoeffs reference_quadric(const ParamSet& p, const PrecisionPolicy& = {});

// eta_{ij} = rho_i rho_j / Phi_ref(rho), evaluated multihomogeneously; throws
// when the point sits on the reference surface (pole).
EtaPoint eta(const ParamSet& p, const Quad4Point& pt, const PrecisionPolicy& = {});

// The same numerators and denominator before division, for points at or near
// the pole (each entry is a degree-(1,..,1) form on the representatives).
struct EtaHomogeneous {
    std::array<cx, 6> numerators;
    cx denominator;
};
EtaHomogeneous eta_homogeneous(const ParamSet& p, const Quad4Point& pt,
                               const PrecisionPolicy& = {});

// Relative residuals of the four defining equations at a finite eta point:
// [0] family quadric contraction = 0, [1] reference contraction = 1,
// [2] e12 e34 - e13 e24, [3] e13 e24 - e14 e23.
std::array<double, 4> c6_residuals(const ParamSet& p, cx omega, const EtaPoint& e,
                                   const PrecisionPolicy& = {});

// Scale-free variant skipping the inhomogeneous equation; usable on the
// divisor at infinity (the det locus).
std::array<double, 3> c6_residuals_projective(const ParamSet& p, cx omega, const Quad4Point& pt,
                                              const PrecisionPolicy& = {});

/// Polynomial in (eta12, eta13, eta14, eta23) as an exponent-vector map.
class Poly4 {
  public:
    using Expo = std::array<int, 4>;

    void add(const Expo& e, cx coef);
    cx eval(const std::array<cx, 4>& v) const;
    const std::map<Expo, cx>& terms() const { return terms_; }
    Poly4 degree_part(int d) const;
    double max_abs_coef() const;
    void prune(double rel_threshold = 1e-13);

  private:
    std::map<Expo, cx> terms_;
};

struct EliminatedQuadrics {
    Poly4 q1, q2;
    // affine-linear reconstruction eta24 = l24 . v + c24, eta34 = l34 . v + c34
    std::array<cx, 4> l24, l34;
    cx c24, c34;
    double condition;  // of the 2x2 elimination system
};

// Solves the two linear equations for (eta24, eta34) and substitutes into the
// Pluecker relations; exact polynomial arithmetic over complex coefficients.
EliminatedQuadrics eliminate_to_c4(const ParamSet& p, cx omega, double condition_cap = 1e8,
                                   const PrecisionPolicy& = {});

std::array<cx, 4> eta_restricted(const EtaPoint& e);

struct LineSpec {
    std::string label;
    Constraint constraint;
    std::array<cx, 4> base, direction;
    double collinearity;            // second-singular-value ratio of the fit
    std::array<double, 2> quadric_residuals;
    // ratio diagnostics for the rho'-family: fitted eta13/eta23, eta12/eta23,
    // eta13/eta14 constants and their spread along the line, plus the
    // exchanged-formula candidate comparison
    double ratio_spread = 0.0;
    double candidate_mismatch = 0.0;
};

struct Lines16 {
    std::vector<LineSpec> lines;
    double min_within_family_distance;  // over the rho-family and rho'-family separately
    std::vector<std::pair<int, int>> cross_family_coincidences;
};

Lines16 lines16(const ParamSet& p, cx omega, std::mt19937_64& rng, int samples_per_line = 6,
                const SamplerOptions& = {});

struct CubicSurface {
    std::array<cx, 4> p_coeffs, q_coeffs;  // descending degree
    cx resultant;                          // 6x6 Sylvester determinant
};

// F(X, Y, Z) = A X Y^2 Z + C X Y Z - D X Y - E Y Z + F Y + B.
cx cubic_f(const QuadricCoeffs& c, cx X, cx Y, cx Z);
std::array<cx, 3> cubic_f_gradient(const QuadricCoeffs& c, cx X, cx Y, cx Z);
double cubic_f_scale(const QuadricCoeffs& c, cx X, cx Y, cx Z);

CubicSurface cubic_surface_eq(const QuadricCoeffs& c);

cx resultant_sylvester(const std::array<cx, 4>& p3, const std::array<cx, 4>& q3);

}  // namespace qpvi
