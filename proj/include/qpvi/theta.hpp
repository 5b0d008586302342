#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace qpvi {

using cx = std::complex<double>;

/// Base of the q-difference equations. Valid iff 0 < |q| < 1.
struct Nome {
    cx q;

    explicit Nome(cx q_) : q(q_) {
        double m = std::abs(q_);
        if (!(m > 0.0) || !(m < 1.0))
            throw std::invalid_argument("Nome: need 0 < |q| < 1");
    }
};

/// Evaluation controls for the theta series.
/// digits > 0 switches the summation to MPFR with that many decimal digits;
/// the result is rounded back to double precision.
struct PrecisionPolicy {
    double tol = 1e-10;
    int max_terms = 10000;   // cap on |n| in the symmetric sum
    int digits = 0;
    double zero_tol = 1e-9;  // proximity guard for zeros of T in denominators
};

// theta(q, x) = sum_{n in Z} q^{n(n-1)/2} x^n.
// Satisfies theta(q x) = x^{-1} theta(x), x theta(1/x) = theta(x); zeros on -q^Z.
cx theta(const Nome& q, cx x, const PrecisionPolicy& policy = {});

// Reference evaluator through (q;q)oo (-x;q)oo (-q/x;q)oo. Independent of the
// series path; used by the identity suites and tests.
cx theta_by_triple_product(const Nome& q, cx x, const PrecisionPolicy& policy = {});

/// T(x) = theta(-x); vanishes exactly on q^Z.
cx t_fun(const Nome& q, cx x, const PrecisionPolicy& policy = {});

/// Stacked ratio prod T(numerators) / prod T(denominators).
struct ThetaRatioSpec {
    std::vector<cx> numerators;
    std::vector<cx> denominators;
};

// Factors are evaluated in a scaled representation and interleaved
// numerator/denominator so the running product stays in range.
cx t_ratio(const Nome& q, const ThetaRatioSpec& spec, const PrecisionPolicy& policy = {});

// Distance of z from the zero set q^Z of T, as min_k |z q^{-k} - 1| over the
// window forced by |z|.
double t_zero_distance(const Nome& q, cx z);

// Argument-reduction shift: k with |q^k x| in [|q|^{1/2}, |q|^{-1/2}].
int reduction_shift(const Nome& q, cx x);

}  // namespace qpvi
