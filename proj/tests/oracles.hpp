// Test-side reference implementations, kept independent of the library paths
// they check.
#pragma once

#include <array>
#include <complex>

namespace oracles {

using cx = std::complex<double>;

// plain symmetric summation, no argument reduction; adequate for moderate
// arguments and |q| <= 0.6
inline cx naive_theta(cx q, cx x, int terms = 80) {
    cx s = 0.0;
    for (int n = -terms; n <= terms; ++n) {
        cx e = std::pow(q, n * (n - 1) / 2) * std::pow(x, n);
        s += e;
    }
    return s;
}

// roots of a z^3 + b z^2 + c z + d (a != 0) by the trigonometric-free
// Cardano formulas over C
inline std::array<cx, 3> cubic_roots(cx a, cx b, cx c, cx d) {
    b /= a;
    c /= a;
    d /= a;
    cx p = c - b * b / 3.0;
    cx qq = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    cx disc = qq * qq / 4.0 + p * p * p / 27.0;
    cx sq = std::sqrt(disc);
    cx u3 = -qq / 2.0 + sq;
    if (std::abs(u3) < 1e-300) u3 = -qq / 2.0 - sq;
    cx u = std::pow(u3, 1.0 / 3.0);
    std::array<cx, 3> roots;
    const cx w(-0.5, std::sqrt(3.0) / 2.0);
    for (int k = 0; k < 3; ++k) {
        cx uk = u * std::pow(w, k);
        cx v = (std::abs(uk) > 1e-300) ? -p / (3.0 * uk) : cx(0.0);
        roots[k] = uk + v - b / 3.0;
    }
    return roots;
}

// Res(p, q) = lc(p)^deg(q) prod q(alpha_i) over the roots of p
inline cx resultant_by_roots(const std::array<cx, 4>& p, const std::array<cx, 4>& q) {
    auto r = cubic_roots(p[0], p[1], p[2], p[3]);
    auto evalq = [&](cx y) { return ((q[0] * y + q[1]) * y + q[2]) * y + q[3]; };
    cx out = p[0] * p[0] * p[0];
    for (cx root : r) out *= evalq(root);
    return out;
}

}  // namespace oracles
