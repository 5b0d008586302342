#include "qpvi/params.hpp"

#include <cmath>
#include <stdexcept>

namespace qpvi {

std::optional<int> congruence_class(cx c, cx d, const Nome& q, const CongruencePolicy& policy) {
    if (c == cx(0.0) || d == cx(0.0)) throw std::invalid_argument("congruence_class: zero input");
    cx r = c / d;
    double lq = std::abs(std::log(std::abs(q.q)));
    int window = static_cast<int>(std::ceil(std::abs(std::log(std::abs(r))) / lq)) +
                 policy.extra_window;
    for (int k = -window; k <= window; ++k) {
        cx scaled = r * std::pow(q.q, -k);
        if (std::abs(scaled - cx(1.0)) < policy.tol) return k;
    }
    return std::nullopt;
}

cx ParamSet::bracket(int k, int l, int j, int i) const {
    return x[k - 1] * x[l - 1] * sigma[j - 1] / rho[i - 1];
}

cx ParamSet::fuchs_residual() const {
    return x[0] * x[1] * x[2] * x[3] * sigma[0] * sigma[1] / (rho[0] * rho[1]) - cx(1.0);
}

ValidationReport validate(const ParamSet& p, const CongruencePolicy& policy, double fr_tol) {
    ValidationReport r;
    r.nr_rho = !congruence_class(p.rho[0], p.rho[1], p.q, policy).has_value();
    r.nr_sigma = !congruence_class(p.sigma[0], p.sigma[1], p.q, policy).has_value();
    for (int k = 0; k < 4; ++k)
        for (int l = k + 1; l < 4; ++l)
            if (congruence_class(p.x[k], p.x[l], p.q, policy)) {
                r.nr_x = false;
                r.nr_x_offenders.push_back({k + 1, l + 1});
            }
    r.fr_residual = std::abs(p.fuchs_residual());
    r.fr = r.fr_residual < fr_tol;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = k + 1; l < 4; ++l)
                    if (congruence_class(p.rho[i] / p.sigma[j], p.x[k] * p.x[l], p.q, policy)) {
                        r.ns = false;
                        r.ns_offenders.push_back({i + 1, j + 1, k + 1, l + 1});
                    }
    r.sc = !congruence_class(p.rho[0] / p.sigma[0], p.rho[1] / p.sigma[1], p.q, policy) &&
           !congruence_class(p.rho[1] / p.sigma[0], p.rho[0] / p.sigma[1], p.q, policy);
    return r;
}

ParamSet complete_x4(const Nome& q, std::array<cx, 2> rho, std::array<cx, 2> sigma, cx x1, cx x2,
                     cx x3) {
    if (x1 == cx(0.0) || x2 == cx(0.0) || x3 == cx(0.0) || rho[0] == cx(0.0) ||
        rho[1] == cx(0.0) || sigma[0] == cx(0.0) || sigma[1] == cx(0.0))
        throw std::invalid_argument("complete_x4: zero input");
    cx x4 = rho[0] * rho[1] / (sigma[0] * sigma[1] * x1 * x2 * x3);
    return ParamSet{q, rho, sigma, {x1, x2, x3, x4}};
}

ParamSet ref_params() {
    Nome q(cx(0.2, 0.0));
    return complete_x4(q, {cx(2.0, 0.0), cx(-0.5, 0.0)}, {cx(0.7, 0.0), cx(1.1, 0.0)},
                       cx(0.9, 0.0), cx(-1.2, 0.0), cx(1.5, 0.5));
}

ParamSet rebalance_rho(const ParamSet& p, cx omega) {
    // branch continuous with p: omega = omega_base returns p exactly
    cx omega_base = p.rho[0] / p.rho[1];
    cx s = std::sqrt(omega / omega_base);
    ParamSet out = p;
    out.rho = {p.rho[0] * s, p.rho[1] / s};
    return out;
}

ParamSet sigma_family(const ParamSet& p, cx omega) {
    cx omega_base = p.omega();
    ParamSet out = p;
    out.sigma = {omega * p.sigma[1], p.sigma[1]};
    out.rho = {omega * (p.rho[0] / omega_base), p.rho[1]};
    return out;
}

}  // namespace qpvi
