#pragma once

#include <optional>
#include <random>

#include "qpvi/quadric.hpp"

namespace qpvi {

// e^m_{i,j}(x_k) = theta(-x_k/x_m) theta(-x_k x_m sigma_j/rho_i), m = 1, 2.
// Row k, column m; rows 1-2 are anti-diagonal by construction.
using BasisEvalTable = std::array<std::array<cx, 2>, 4>;

BasisEvalTable basis_eval_matrix(const ParamSet& p, int i, int j, const PrecisionPolicy& = {});

// Orientation of the rank-1 projectivizations. rowclass reads rho(A) from the
// rows and rho'(A) from the columns as displayed in the source; columnclass
// swaps the two. The surface-level maps fix the rho-orientation by the quadric
// equation; the switch only reorients rho'.
enum class RhoConvention { rowclass, columnclass };

/// One point of the monodromy space: m_{i,j} = a e^1_{i,j} + b e^2_{i,j}.
class MonodromyRep {
  public:
    MonodromyRep(ParamSet p, std::array<std::array<std::pair<cx, cx>, 2>, 2> coeff,
                 const PrecisionPolicy& policy = {});

    const ParamSet& params() const { return params_; }
    const std::pair<cx, cx>& coeff(int i, int j) const { return coeff_[i][j]; }

    /// m_{i,j}(x_k), cached table.
    cx entry(int i, int j, int k) const { return values_[i][j][k]; }
    /// m_{i,j} at an arbitrary point.
    cx entry_at(int i, int j, cx x) const;

    cx det_at(int k) const;
    cx det_at_point(cx x) const;
    /// max |m_{i,j}(x_k)|^2 over the table, the determinant scale.
    double scale2() const;

  private:
    ParamSet params_;
    std::array<std::array<std::pair<cx, cx>, 2>, 2> coeff_;
    std::array<std::array<std::array<cx, 4>, 2>, 2> values_;  // [i][j][k]
    PrecisionPolicy policy_;
};

struct Constraint {
    enum Kind { none, rho_zero, rho_inf, rhoP_zero, rhoP_inf } kind = none;
    int position = 1;  // 1-based x_k index
};

struct SamplerOptions {
    RhoConvention convention = RhoConvention::rowclass;
    int max_retries = 100;
    double degenerate_tol = 1e-10;
    PrecisionPolicy policy{};
};

// Draws column (m11, m21) at random and solves the three homogeneous
// conditions det M(x_k) = 0, k = 1..3, for the other column; the fourth zero
// follows from the Fuchs relation. Constrained draws pin the zero line or
// column first.
MonodromyRep sample_point(const ParamSet& p, std::mt19937_64& rng, Constraint c = {},
                          const SamplerOptions& opts = {});

struct Rank1Mat {
    std::array<std::array<cx, 2>, 2> a;

    cx det() const { return a[0][0] * a[1][1] - a[0][1] * a[1][0]; }
    double max_abs() const;
    bool is_rank1(double tol = 1e-8) const;
    static Rank1Mat at(const MonodromyRep& m, int k);
};

// (rho, rho') of a rank-1 matrix, dismissing the vanishing representative.
std::pair<Proj1Point, Proj1Point> rho_rank1(const Rank1Mat& a,
                                            RhoConvention convention = RhoConvention::rowclass);

struct RhoTuple {
    Quad4Point rho;       // chart in which the quadric equation holds
    Quad4Point rhoPrime;
    // ratios rhoPrime_k / rhoPrime_l and rho_k / rho_l; absent when the
    // ratio is 0/0 or inf/inf
    std::array<std::array<std::optional<Proj1Point>, 4>, 4> Pi;
    std::array<std::array<std::optional<Proj1Point>, 4>, 4> PiPrime;
};

RhoTuple rho_tuple(const MonodromyRep& m, RhoConvention convention = RhoConvention::rowclass);

// Mixed projectivizations of a rank-1 pair: Pi from columns, Pi' from rows.
// A component is absent when the pair sits in the excluded locus.
std::pair<std::optional<Proj1Point>, std::optional<Proj1Point>> pi_mixed(const Rank1Mat& m1,
                                                                         const Rank1Mat& m2);

// ([theta(sigma2 x_k t) : theta(sigma1 x_k t)])_k, the det M = 0 locus.
Quad4Point det_locus(const ParamSet& p, cx t, const PrecisionPolicy& = {});

// e_q^{which;1,2;3}.
cx eq_constant(const ParamSet& p, int which, const PrecisionPolicy& = {});

struct TensorPair {
    std::array<cx, 4> yplus, yminus;        // evaluations at (x1, x2, x3, x0)
    std::array<double, 2> segre_residuals;  // XT - YZ in the product basis, relative
    std::array<double, 3> line_residuals;   // (y+ - y-)(x_k)/scale, k = 1..3
    double x0_magnitude;                    // |(y+ - y-)(x0)|/scale
};

TensorPair tensor_pair(const MonodromyRep& m, cx x0);

// x1 q^{1/2} rotated until non-congruent to every x_k.
cx default_x0(const ParamSet& p);

struct ConventionReport {
    RhoConvention chosen;
    double residual_rowclass;
    double residual_columnclass;
};

// Empirical selection through the e_q relation on constrained samples.
ConventionReport select_convention(const ParamSet& p, std::mt19937_64& rng, int samples = 10);

// Max over k of | |Pi-ratio| - e_q | style residual used by the selector: for
// samples constrained to rho_zero at x1, compares Pi_{1,2} with e_q^{1;1,2;3}.
double eq_relation_residual(const ParamSet& p, std::mt19937_64& rng, RhoConvention convention,
                            int samples);

}  // namespace qpvi
