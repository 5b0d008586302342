#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "qpvi/theta.hpp"

namespace qpvi {

struct CongruencePolicy {
    double tol = 1e-8;
    int extra_window = 2;
};

// k with c = d q^k (relative tolerance), or nullopt. The k-window is bounded
// by the magnitude of c/d.
std::optional<int> congruence_class(cx c, cx d, const Nome& q, const CongruencePolicy& = {});

/// Local data of the JS case (n = mu = 2, N = 4).
struct ParamSet {
    Nome q;
    std::array<cx, 2> rho;
    std::array<cx, 2> sigma;
    std::array<cx, 4> x;

    cx omega() const { return sigma[0] / sigma[1]; }
    /// [kl.ji] = x_k x_l sigma_j / rho_i (1-based indices).
    cx bracket(int k, int l, int j, int i) const;
    /// x1 x2 x3 x4 sigma1 sigma2 / (rho1 rho2) - 1.
    cx fuchs_residual() const;
};

struct ValidationReport {
    bool nr_rho = true;
    bool nr_sigma = true;
    bool nr_x = true;
    std::vector<std::pair<int, int>> nr_x_offenders;  // 1-based pairs
    double fr_residual = 0.0;
    bool fr = true;
    bool ns = true;
    std::vector<std::array<int, 4>> ns_offenders;  // (i, j, k, l), 1-based
    bool sc = true;

    bool all_pass() const { return nr_rho && nr_sigma && nr_x && fr && ns && sc; }
};

// (NR), (FR), (NS) over all six pairs k < l, (SC).
ValidationReport validate(const ParamSet& p, const CongruencePolicy& = {}, double fr_tol = 1e-9);

// Fourth zero from the Fuchs relation: x4 = rho1 rho2 / (sigma1 sigma2 x1 x2 x3).
ParamSet complete_x4(const Nome& q, std::array<cx, 2> rho, std::array<cx, 2> sigma, cx x1, cx x2,
                     cx x3);

/// Shipped reference parameter set (q = 0.2).
ParamSet ref_params();

// The one-parameter quadric family: sigma and x fixed, rho1 rho2 fixed,
// rho1/rho2 = omega. omega = 1 is the degenerate member (rho1 = rho2);
// omega = rho1/rho2 of p returns p itself.
ParamSet rebalance_rho(const ParamSet& p, cx omega);

// Literal sigma-side family (sigma1 = omega sigma2, rho1 = omega rho1(1),
// sigma2/rho2/x fixed). Kept for the flagged pencil diagnostic.
ParamSet sigma_family(const ParamSet& p, cx omega);

}  // namespace qpvi
