#pragma once

#include <array>

#include "qpvi/params.hpp"

namespace qpvi {

/// Interpolation coefficients of the evaluations at x3, x4 through those at
/// x1, x2: w = lam u + mu v, w' = lamp u + mup v, per (i, j) cell.
struct InterpCoeffs {
    std::array<std::array<cx, 2>, 2> lam, mu, lamp, mup;  // [i][j], 0-based

    cx pairing_det(int i, int j) const {
        return lam[i][j] * mup[i][j] - lamp[i][j] * mu[i][j];
    }
};

// Closed theta-ratio forms, all arguments routed through T with factor pairing.
InterpCoeffs interp_coeffs(const ParamSet& p, const PrecisionPolicy& = {});

// Independent route: direct basis evaluations and 2x2 back-substitution
// (u(e1) = v(e2) = 0 makes the system anti-diagonal).
InterpCoeffs interp_coeffs_oracle(const ParamSet& p, const PrecisionPolicy& = {});

struct GammaConstants {
    cx alpha, beta, gamma;
    std::array<double, 8> residuals;  // all eight identification equations, relative
};

// gamma = T(x4/x2, x4/x1 / x3/x2, x3/x1) * x4/x3; alpha, beta from the
// lambda- and mu-identification equations. Requires (SC).
GammaConstants gamma_constants(const ParamSet& p, const PrecisionPolicy& = {});

struct QuadricCoeffs {
    cx A, B, C, D, E, F;
    int i = 1;  // which row produced them (1 or 2)

    std::array<cx, 6> as_array() const { return {A, B, C, D, E, F}; }
};

// Coefficients of  A rho sigma + B tau tau' + C rho tau - D rho tau'
//                  - E sigma tau + F sigma tau' = 0:
//   A = lam_{i2} mup_{i2} - lamp_{i2} mu_{i2},  B = lam_{i1} mup_{i1} - lamp_{i1} mu_{i1},
//   C = lamp_{i2} mu_{i1}, D = lam_{i2} mup_{i1}, E = lam_{i1} mup_{i2}, F = lamp_{i1} mu_{i2}.
QuadricCoeffs quadric_coeffs(const ParamSet& p, int i, const PrecisionPolicy& = {});
QuadricCoeffs quadric_coeffs(const InterpCoeffs& ic, int i);

// Factored forms: A_i = (x3/x1) T(x4/x3 / x2/x1) T([34.2i]/[12.2i]), and the
// analogous B_i with j = 1 brackets.
cx quadric_a_factored(const ParamSet& p, int i, const PrecisionPolicy& = {});
cx quadric_b_factored(const ParamSet& p, int i, const PrecisionPolicy& = {});

// The common value of the six ratios K_2/K_1:
// (rho1/rho2) T([12.11],[12.21] / [12.12],[12.22]).
cx proportionality_constant(const ParamSet& p, const PrecisionPolicy& = {});

enum class DeltaMethod { bilinear, factored };

// Delta_i = lamp_{i1} lam_{i2} mu_{i1} mup_{i2} - lam_{i1} lamp_{i2} mup_{i1} mu_{i2},
// or its totally factored theta-product form.
cx delta(const ParamSet& p, int i, DeltaMethod method, const PrecisionPolicy& = {});

struct Discriminant {
    cx det;          // 4x4 Gram determinant
    cx closed_form;  // (AB - CF - DE)^2 - 4 CDEF
};

Discriminant discriminant(const QuadricCoeffs& c);

// Same determinant, with the Gram entries formed in extended precision
// straight from the interpolation coefficients; avoids the rounding of the
// six stored coefficients, which dominates when the determinant is small
// against the entry scale.
Discriminant discriminant(const InterpCoeffs& ic, int i);

}  // namespace qpvi
