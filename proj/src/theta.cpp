#include "qpvi/theta.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>

namespace qpvi {

namespace {

// Minimal complex arithmetic over mpfr, just enough for the theta series.
class MpComplex {
  public:
    explicit MpComplex(mpfr_prec_t prec) : prec_(prec) {
        mpfr_init2(re_, prec);
        mpfr_init2(im_, prec);
        mpfr_set_zero(re_, 1);
        mpfr_set_zero(im_, 1);
    }
    MpComplex(const MpComplex& o) : MpComplex(o.prec_) {
        mpfr_set(re_, o.re_, MPFR_RNDN);
        mpfr_set(im_, o.im_, MPFR_RNDN);
    }
    MpComplex& operator=(const MpComplex& o) {
        mpfr_set(re_, o.re_, MPFR_RNDN);
        mpfr_set(im_, o.im_, MPFR_RNDN);
        return *this;
    }
    ~MpComplex() {
        mpfr_clear(re_);
        mpfr_clear(im_);
    }

    static MpComplex from(cx v, mpfr_prec_t prec) {
        MpComplex r(prec);
        mpfr_set_d(r.re_, v.real(), MPFR_RNDN);
        mpfr_set_d(r.im_, v.imag(), MPFR_RNDN);
        return r;
    }
    cx to_cx() const { return {mpfr_get_d(re_, MPFR_RNDN), mpfr_get_d(im_, MPFR_RNDN)}; }

    MpComplex operator+(const MpComplex& o) const {
        MpComplex r(prec_);
        mpfr_add(r.re_, re_, o.re_, MPFR_RNDN);
        mpfr_add(r.im_, im_, o.im_, MPFR_RNDN);
        return r;
    }
    MpComplex operator*(const MpComplex& o) const {
        MpComplex r(prec_);
        mpfr_t t1, t2;
        mpfr_init2(t1, prec_);
        mpfr_init2(t2, prec_);
        mpfr_mul(t1, re_, o.re_, MPFR_RNDN);
        mpfr_mul(t2, im_, o.im_, MPFR_RNDN);
        mpfr_sub(r.re_, t1, t2, MPFR_RNDN);
        mpfr_mul(t1, re_, o.im_, MPFR_RNDN);
        mpfr_mul(t2, im_, o.re_, MPFR_RNDN);
        mpfr_add(r.im_, t1, t2, MPFR_RNDN);
        mpfr_clear(t1);
        mpfr_clear(t2);
        return r;
    }
    MpComplex inv() const {
        MpComplex r(prec_);
        mpfr_t n, t1, t2;
        mpfr_init2(n, prec_);
        mpfr_init2(t1, prec_);
        mpfr_init2(t2, prec_);
        mpfr_sqr(t1, re_, MPFR_RNDN);
        mpfr_sqr(t2, im_, MPFR_RNDN);
        mpfr_add(n, t1, t2, MPFR_RNDN);
        mpfr_div(r.re_, re_, n, MPFR_RNDN);
        mpfr_div(r.im_, im_, n, MPFR_RNDN);
        mpfr_neg(r.im_, r.im_, MPFR_RNDN);
        mpfr_clear(n);
        mpfr_clear(t1);
        mpfr_clear(t2);
        return r;
    }
    double abs2() const {
        mpfr_t t1, t2;
        mpfr_init2(t1, prec_);
        mpfr_init2(t2, prec_);
        mpfr_sqr(t1, re_, MPFR_RNDN);
        mpfr_sqr(t2, im_, MPFR_RNDN);
        mpfr_add(t1, t1, t2, MPFR_RNDN);
        double v = mpfr_get_d(t1, MPFR_RNDN);
        mpfr_clear(t1);
        mpfr_clear(t2);
        return v;
    }

  private:
    mpfr_prec_t prec_;
    mpfr_t re_, im_;
};

inline cx cx_one() { return {1.0, 0.0}; }

template <class C>
struct Ops;

template <>
struct Ops<cx> {
    static cx from(cx v, const PrecisionPolicy&) { return v; }
    static cx to_cx(const cx& v) { return v; }
    static cx one(const PrecisionPolicy&) { return cx_one(); }
    static cx mul(const cx& a, const cx& b) { return a * b; }
    static cx add(const cx& a, const cx& b) { return a + b; }
    static cx inv(const cx& a) { return cx_one() / a; }
    static double abs2(const cx& a) { return std::norm(a); }
};

template <>
struct Ops<MpComplex> {
    static mpfr_prec_t prec(const PrecisionPolicy& p) {
        return static_cast<mpfr_prec_t>(std::max(64.0, p.digits * 3.33) + 16);
    }
    static MpComplex from(cx v, const PrecisionPolicy& p) { return MpComplex::from(v, prec(p)); }
    static cx to_cx(const MpComplex& v) { return v.to_cx(); }
    static MpComplex one(const PrecisionPolicy& p) { return MpComplex::from(cx_one(), prec(p)); }
    static MpComplex mul(const MpComplex& a, const MpComplex& b) { return a * b; }
    static MpComplex add(const MpComplex& a, const MpComplex& b) { return a + b; }
    static MpComplex inv(const MpComplex& a) { return a.inv(); }
    static double abs2(const MpComplex& a) { return a.abs2(); }
};

// Symmetric sum of q^{n(n-1)/2} x^n for an argument already reduced to the
// fundamental annulus. Terminates when three consecutive terms on a side are
// below tol relative to the partial sum.
template <class C>
cx theta_series(cx q, cx x, const PrecisionPolicy& policy) {
    using O = Ops<C>;
    C qf = O::from(q, policy);
    C xf = O::from(x, policy);
    C xinv = O::inv(xf);
    C sum = O::one(policy);  // n = 0 term

    const double tol2 = policy.tol * policy.tol * 1e-6;
    for (int dir = 0; dir < 2; ++dir) {
        // dir 0: n = 1,2,...  term(n) = term(n-1) * q^{n-1} * x
        // dir 1: n = -1,-2,...: with m = -n, term = q^{m(m+1)/2} x^{-m},
        //        term(m) = term(m-1) * q^m * x^{-1}
        C term = O::one(policy);
        C qpow = O::one(policy);
        int quiet = 0;
        for (int n = 1; n <= policy.max_terms; ++n) {
            if (dir == 0) {
                term = O::mul(term, O::mul(qpow, xf));  // q^{n-1} x
                qpow = O::mul(qpow, qf);
            } else {
                qpow = O::mul(qpow, qf);                  // q^n
                term = O::mul(term, O::mul(qpow, xinv));  // q^n / x
            }
            sum = O::add(sum, term);
            if (O::abs2(term) < tol2 * std::max(O::abs2(sum), 1e-300)) {
                if (++quiet >= 3) break;
            } else {
                quiet = 0;
            }
        }
    }
    return O::to_cx(sum);
}

}  // namespace

int reduction_shift(const Nome& q, cx x) {
    double lx = std::log(std::abs(x));
    double lq = std::log(std::abs(q.q));
    return static_cast<int>(std::lround(-lx / lq));
}

namespace {

// q^e * x^k for integer e, k, evaluated in log space. Branch choice is
// immaterial for integer exponents.
cx int_power_product(cx q, long e, cx x, long k) {
    cx lg = static_cast<double>(e) * std::log(q) + static_cast<double>(k) * std::log(x);
    if (lg.real() > 700.0) throw std::overflow_error("theta: prefactor overflow");
    return std::exp(lg);
}

}  // namespace

cx theta(const Nome& q, cx x, const PrecisionPolicy& policy) {
    if (x == cx(0.0, 0.0)) throw std::domain_error("theta: zero argument");
    // theta(x) = q^{k(k-1)/2} x^k theta(q^k x); pick k so |q^k x| ~ 1.
    int k = reduction_shift(q, x);
    cx xr = std::pow(q.q, k) * x;
    cx value = (policy.digits > 0) ? theta_series<MpComplex>(q.q, xr, policy)
                                   : theta_series<cx>(q.q, xr, policy);
    if (k != 0) {
        long e = static_cast<long>(k) * (k - 1) / 2;
        value *= int_power_product(q.q, e, x, k);
    }
    return value;
}

cx theta_by_triple_product(const Nome& q, cx x, const PrecisionPolicy& policy) {
    if (x == cx(0.0, 0.0)) throw std::domain_error("theta: zero argument");
    int k = reduction_shift(q, x);
    cx xr = std::pow(q.q, k) * x;
    cx p = cx_one();
    cx qk = cx_one();  // q^m
    for (int m = 0; m < policy.max_terms; ++m) {
        cx qk1 = qk * q.q;  // q^{m+1}
        cx f = (cx_one() - qk1) * (cx_one() + xr * qk) * (cx_one() + qk1 / xr);
        p *= f;
        qk = qk1;
        if (std::abs(qk) < policy.tol * 1e-4 && m > 3) break;
    }
    if (k != 0) {
        long e = static_cast<long>(k) * (k - 1) / 2;
        p *= int_power_product(q.q, e, x, k);
    }
    return p;
}

cx t_fun(const Nome& q, cx x, const PrecisionPolicy& policy) { return theta(q, -x, policy); }

double t_zero_distance(const Nome& q, cx z) {
    int k = reduction_shift(q, z);
    double best = std::abs(z * std::pow(q.q, k) - cx_one());
    for (int dk = -2; dk <= 2; ++dk) {
        double d = std::abs(z * std::pow(q.q, k + dk) - cx_one());
        best = std::min(best, d);
    }
    return best;
}

namespace {

struct ScaledFactor {
    cx mantissa;  // annulus-reduced theta value
    int shift;    // reduction exponent k
    cx arg;       // original argument of T
};

ScaledFactor t_factor(const Nome& q, cx x, const PrecisionPolicy& policy) {
    cx mx = -x;
    int k = reduction_shift(q, mx);
    cx xr = std::pow(q.q, k) * mx;
    cx value = (policy.digits > 0) ? theta_series<MpComplex>(q.q, xr, policy)
                                   : theta_series<cx>(q.q, xr, policy);
    return {value, k, x};
}

// Multiplies the prefactors q^{k(k-1)/2} x^k of a numerator/denominator factor
// pair, cancelling the q-power exponents first.
cx paired_prefactor(const Nome& q, const ScaledFactor& num, const ScaledFactor& den) {
    long en = static_cast<long>(num.shift) * (num.shift - 1) / 2;
    long ed = static_cast<long>(den.shift) * (den.shift - 1) / 2;
    cx lg = static_cast<double>(en - ed) * std::log(q.q);
    lg += static_cast<double>(num.shift) * std::log(-num.arg);
    lg -= static_cast<double>(den.shift) * std::log(-den.arg);
    if (lg.real() > 700.0) throw std::overflow_error("t_ratio: prefactor overflow");
    return std::exp(lg);
}

}  // namespace

cx t_ratio(const Nome& q, const ThetaRatioSpec& spec, const PrecisionPolicy& policy) {
    for (cx d : spec.denominators) {
        if (t_zero_distance(q, d) < policy.zero_tol)
            throw std::domain_error("t_ratio: denominator argument on a zero of T");
    }
    std::vector<ScaledFactor> nums, dens;
    nums.reserve(spec.numerators.size());
    dens.reserve(spec.denominators.size());
    for (cx n : spec.numerators) nums.push_back(t_factor(q, n, policy));
    for (cx d : spec.denominators) dens.push_back(t_factor(q, d, policy));

    // Pair off by reduction exponent so the q-power prefactors mostly cancel.
    auto by_shift = [](const ScaledFactor& a, const ScaledFactor& b) { return a.shift < b.shift; };
    std::sort(nums.begin(), nums.end(), by_shift);
    std::sort(dens.begin(), dens.end(), by_shift);

    cx r = cx_one();
    size_t i = 0, j = 0;
    while (i < nums.size() && j < dens.size()) {
        r *= paired_prefactor(q, nums[i], dens[j]);
        r *= nums[i].mantissa / dens[j].mantissa;
        ++i, ++j;
    }
    for (; i < nums.size(); ++i) {
        long e = static_cast<long>(nums[i].shift) * (nums[i].shift - 1) / 2;
        r *= int_power_product(q.q, e, -nums[i].arg, nums[i].shift);
        r *= nums[i].mantissa;
    }
    for (; j < dens.size(); ++j) {
        long e = static_cast<long>(dens[j].shift) * (dens[j].shift - 1) / 2;
        r /= int_power_product(q.q, e, -dens[j].arg, dens[j].shift);
        r /= dens[j].mantissa;
    }
    if (!std::isfinite(std::abs(r))) throw std::overflow_error("t_ratio: overflow");
    return r;
}

}  // namespace qpvi
