#include "qpvi/coeffs.hpp"

#include <stdexcept>

namespace qpvi {

namespace {

cx tr(const Nome& q, std::vector<cx> num, std::vector<cx> den, const PrecisionPolicy& policy) {
    return t_ratio(q, ThetaRatioSpec{std::move(num), std::move(den)}, policy);
}

}  // namespace

InterpCoeffs interp_coeffs(const ParamSet& p, const PrecisionPolicy& policy) {
    InterpCoeffs ic;
    const auto& x = p.x;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            cx u = p.sigma[j] / p.rho[i];
            ic.lam[i][j] = tr(p.q, {x[2] / x[1], x[1] * x[2] * u},
                              {x[0] / x[1], x[0] * x[1] * u}, policy);
            ic.mu[i][j] = tr(p.q, {x[2] / x[0], x[0] * x[2] * u},
                             {x[1] / x[0], x[0] * x[1] * u}, policy);
            ic.lamp[i][j] = tr(p.q, {x[3] / x[1], x[1] * x[3] * u},
                               {x[0] / x[1], x[0] * x[1] * u}, policy);
            ic.mup[i][j] = tr(p.q, {x[3] / x[0], x[0] * x[3] * u},
                              {x[1] / x[0], x[0] * x[1] * u}, policy);
        }
    }
    return ic;
}

InterpCoeffs interp_coeffs_oracle(const ParamSet& p, const PrecisionPolicy& policy) {
    InterpCoeffs ic;
    const auto& x = p.x;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            cx u = p.sigma[j] / p.rho[i];
            // e^m evaluated at x_k: theta(-x_k/x_m) theta(-x_k x_m u)
            auto ev = [&](int k, int m) {
                return theta(p.q, -x[k] / x[m], policy) * theta(p.q, -x[k] * x[m] * u, policy);
            };
            cx ue2 = ev(0, 1), ve1 = ev(1, 0);
            if (ue2 == cx(0.0) || ve1 == cx(0.0))
                throw std::domain_error("interp_coeffs_oracle: singular basis evaluation");
            ic.lam[i][j] = ev(2, 1) / ue2;
            ic.mu[i][j] = ev(2, 0) / ve1;
            ic.lamp[i][j] = ev(3, 1) / ue2;
            ic.mup[i][j] = ev(3, 0) / ve1;
        }
    }
    return ic;
}

GammaConstants gamma_constants(const ParamSet& p, const PrecisionPolicy& policy) {
    const auto& x = p.x;
    InterpCoeffs c = interp_coeffs(p, policy);
    GammaConstants g;
    g.gamma = tr(p.q, {x[3] / x[1], x[3] / x[0]}, {x[2] / x[1], x[2] / x[0]}, policy) * x[3] / x[2];
    g.alpha = c.lamp[0][0] * c.lamp[1][1] - g.gamma * c.lam[0][0] * c.lam[1][1];
    g.beta = c.mup[0][0] * c.mup[1][1] - g.gamma * c.mu[0][0] * c.mu[1][1];

    auto rel = [](cx lhs, cx rhs) {
        double s = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
        return std::abs(lhs - rhs) / s;
    };
    g.residuals[0] = rel(c.lamp[0][0] * c.lamp[1][1], g.alpha + g.gamma * c.lam[0][0] * c.lam[1][1]);
    g.residuals[1] = rel(c.lamp[0][1] * c.lamp[1][0], g.alpha + g.gamma * c.lam[0][1] * c.lam[1][0]);
    g.residuals[2] = rel(c.mup[0][0] * c.mup[1][1], g.beta + g.gamma * c.mu[0][0] * c.mu[1][1]);
    g.residuals[3] = rel(c.mup[0][1] * c.mup[1][0], g.beta + g.gamma * c.mu[0][1] * c.mu[1][0]);
    g.residuals[4] = rel(c.lamp[0][0] * c.mup[1][1], g.gamma * c.lam[0][0] * c.mu[1][1]);
    g.residuals[5] = rel(c.lamp[0][1] * c.mup[1][0], g.gamma * c.lam[0][1] * c.mu[1][0]);
    g.residuals[6] = rel(c.lamp[1][1] * c.mup[0][0], g.gamma * c.lam[1][1] * c.mu[0][0]);
    g.residuals[7] = rel(c.lamp[1][0] * c.mup[0][1], g.gamma * c.lam[1][0] * c.mu[0][1]);
    return g;
}

QuadricCoeffs quadric_coeffs(const InterpCoeffs& c, int i) {
    int k = i - 1;
    QuadricCoeffs out;
    out.i = i;
    out.A = c.lam[k][1] * c.mup[k][1] - c.lamp[k][1] * c.mu[k][1];
    out.B = c.lam[k][0] * c.mup[k][0] - c.lamp[k][0] * c.mu[k][0];
    out.C = c.lamp[k][1] * c.mu[k][0];
    out.D = c.lam[k][1] * c.mup[k][0];
    out.E = c.lam[k][0] * c.mup[k][1];
    out.F = c.lamp[k][0] * c.mu[k][1];
    return out;
}

QuadricCoeffs quadric_coeffs(const ParamSet& p, int i, const PrecisionPolicy& policy) {
    return quadric_coeffs(interp_coeffs(p, policy), i);
}

cx quadric_a_factored(const ParamSet& p, int i, const PrecisionPolicy& policy) {
    const auto& x = p.x;
    return x[2] / x[0] *
           tr(p.q, {x[3] / x[2], p.bracket(3, 4, 2, i)}, {x[1] / x[0], p.bracket(1, 2, 2, i)},
              policy);
}

cx quadric_b_factored(const ParamSet& p, int i, const PrecisionPolicy& policy) {
    const auto& x = p.x;
    return x[2] / x[0] *
           tr(p.q, {x[3] / x[2], p.bracket(3, 4, 1, i)}, {x[1] / x[0], p.bracket(1, 2, 1, i)},
              policy);
}

cx proportionality_constant(const ParamSet& p, const PrecisionPolicy& policy) {
    return p.rho[0] / p.rho[1] *
           tr(p.q, {p.bracket(1, 2, 1, 1), p.bracket(1, 2, 2, 1)},
              {p.bracket(1, 2, 1, 2), p.bracket(1, 2, 2, 2)}, policy);
}

cx delta(const ParamSet& p, int i, DeltaMethod method, const PrecisionPolicy& policy) {
    if (method == DeltaMethod::bilinear) {
        InterpCoeffs c = interp_coeffs(p, policy);
        int k = i - 1;
        return c.lamp[k][0] * c.lam[k][1] * c.mu[k][0] * c.mup[k][1] -
               c.lam[k][0] * c.lamp[k][1] * c.mup[k][0] * c.mu[k][1];
    }
    const auto& x = p.x;
    int ip = (i == 1) ? 2 : 1;
    cx b121i = p.bracket(1, 2, 1, i);
    cx b122i = p.bracket(1, 2, 2, i);
    cx value = p.bracket(2, 3, 2, i) *
               tr(p.q,
                  {x[2] / x[1], x[3] / x[1], x[2] / x[0], x[3] / x[0], x[3] / x[2],
                   p.sigma[0] / p.sigma[1], p.rho[ip - 1] / p.rho[i - 1]},
                  {x[0] / x[1], x[1] / x[0], x[1] / x[0], b121i, b121i, b122i, b122i}, policy);
    // The displayed product carries the opposite global sign relative to the
    // bilinear definition of Delta_i (its t1/t2 labels are interchanged).
    return -value;
}

namespace {

using lcx = std::complex<long double>;

// cofactor expansion in extended precision; the determinant cancels heavily
// whenever it is small against the entry scale
lcx det4_ext(const std::array<std::array<lcx, 4>, 4>& a) {
    auto det3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
        return a[r0][c0] * (a[r1][c1] * a[r2][c2] - a[r1][c2] * a[r2][c1]) -
               a[r0][c1] * (a[r1][c0] * a[r2][c2] - a[r1][c2] * a[r2][c0]) +
               a[r0][c2] * (a[r1][c0] * a[r2][c1] - a[r1][c1] * a[r2][c0]);
    };
    lcx d = a[0][0] * det3(1, 2, 3, 1, 2, 3) - a[0][1] * det3(1, 2, 3, 0, 2, 3) +
            a[0][2] * det3(1, 2, 3, 0, 1, 3) - a[0][3] * det3(1, 2, 3, 0, 1, 2);
    return d;
}

}  // namespace

namespace {

Discriminant discriminant_from(lcx A, lcx B, lcx C, lcx D, lcx E, lcx F) {
    std::array<std::array<lcx, 4>, 4> g = {{{lcx(0), A, C, -D},
                                            {A, lcx(0), -E, F},
                                            {C, -E, lcx(0), B},
                                            {-D, F, B, lcx(0)}}};
    Discriminant d;
    lcx de = det4_ext(g);
    d.det = cx(static_cast<double>(de.real()), static_cast<double>(de.imag()));
    lcx m = A * B - C * F - D * E;
    lcx cf = m * m - lcx(4.0) * C * D * E * F;
    d.closed_form = cx(static_cast<double>(cf.real()), static_cast<double>(cf.imag()));
    return d;
}

lcx widen(cx v) { return {v.real(), v.imag()}; }

}  // namespace

Discriminant discriminant(const QuadricCoeffs& c) {
    return discriminant_from(widen(c.A), widen(c.B), widen(c.C), widen(c.D), widen(c.E),
                             widen(c.F));
}

Discriminant discriminant(const InterpCoeffs& ic, int i) {
    int k = i - 1;
    lcx lam1 = widen(ic.lam[k][0]), lam2 = widen(ic.lam[k][1]);
    lcx mu1 = widen(ic.mu[k][0]), mu2 = widen(ic.mu[k][1]);
    lcx lap1 = widen(ic.lamp[k][0]), lap2 = widen(ic.lamp[k][1]);
    lcx mup1 = widen(ic.mup[k][0]), mup2 = widen(ic.mup[k][1]);
    return discriminant_from(lam2 * mup2 - lap2 * mu2, lam1 * mup1 - lap1 * mu1, lap2 * mu1,
                             lam2 * mup1, lam1 * mup2, lap1 * mu2);
}

}  // namespace qpvi
