#pragma once

// Numeric q-special functions at working precision: multiple q-Pochhammer
// symbols with certified truncation tails, theta, elliptic Gamma, q-Gamma,
// q-Barnes G, and the classical Gamma function (Spouge) used by the
// continuous-limit comparisons.
//
// Conventions:
//   (Z; t_1..t_N)_inf = prod_{i_1..i_N >= 0} (1 - Z prod_k t_k^{i_k})
//   log form: (Z; t_*) = exp(-sum_{m>=1} Z^m / (m prod_k (1 - t_k^m))),
//   valid for |Z| < 1 and any |t_k| != 1; bases with |t| > 1 are reachable
//   either directly through the log form or by the inversion rewrite
//   (Z; t^-1, rest) = (Z t^-1... see qpoch_flip below.

#include <vector>

#include "qptau/complex.hpp"

namespace qptau {

namespace detail_q {

inline Real ten_pow(int e) {
    return pow(Real(10), e);
}

// default absolute tail target: comfortably below the checkable residuals
inline int default_tail_exp() { return -(working_digits() + 8); }

inline Complex qpoch_impl(const Complex& Z, std::vector<Complex> ts, int tail_exp, int depth);

// log-sum form; requires |Z| < 1 (bases of any modulus != 1)
inline Complex qpoch_pexpr(const Complex& Z, const std::vector<Complex>& ts, int tail_exp) {
    const Real absZ = abs(Z);
    Real log_eps = Real(tail_exp) * log(Real(10));

    Complex sum(0);
    Complex zp = Z;                      // Z^m
    std::vector<Complex> tp(ts);         // t_k^m
    std::vector<Real> tmod(ts.size());   // |t_k|^m
    for (std::size_t k = 0; k < ts.size(); ++k) tmod[k] = abs(ts[k]);
    std::vector<Real> tmod1(tmod);

    const long cap = 4000000;
    for (long m = 1; m <= cap; ++m) {
        Complex den(Real(static_cast<long>(m)));
        for (std::size_t k = 0; k < ts.size(); ++k) den *= Complex(1) - tp[k];
        if (den.is_zero()) throw UnitModulusBase();
        sum -= zp / den;

        if ((m & 3) == 0 || m < 8) {
            // remaining log-sum tail, i.e. the relative error of the result:
            // tail <= |Z|^(m+1) / ((m+1)(1-|Z|) prod_k |1-|t_k|^(m+1)|)
            Real tail = pow(absZ, static_cast<long>(m) + 1) / ((Real(static_cast<long>(m)) + 1) * (Real(1) - absZ));
            for (std::size_t k = 0; k < ts.size(); ++k) {
                Real d = tmod1[k] * tmod[k];  // |t|^(m+1)
                tail /= (d < 1) ? Real(1) - d : d - 1;
            }
            if (log(tail + ten_pow(-2 * working_digits() - 40)) < log_eps) {
                return exp(sum);
            }
        }
        zp *= Z;
        for (std::size_t k = 0; k < ts.size(); ++k) {
            tp[k] *= ts[k];
            tmod1[k] *= tmod[k];
        }
    }
    throw NoConvergence();
}

// (Z; w, rest) with |w| > 1 rewritten as (Z w^-1; w^-1, rest)^-1
inline Complex qpoch_flip(const Complex& Z, std::vector<Complex> ts, std::size_t k, int tail_exp,
                          int depth) {
    Complex w = ts[k];
    ts[k] = Complex(1) / w;
    Complex inner = qpoch_impl(Z * ts[k], ts, tail_exp, depth + 1);
    if (inner.is_zero()) throw PoleHit();
    return Complex(1) / inner;
}

inline Complex qpoch_impl(const Complex& Z, std::vector<Complex> ts, int tail_exp, int depth) {
    if (depth > 512) throw NoConvergence();
    if (Z.is_zero()) return Complex(1);
    for (const auto& t : ts) {
        Real m = abs(t);
        if (m > Real("0.999999") && m < Real("1.000001")) throw UnitModulusBase();
    }
    const Real absZ = abs(Z);
    if (absZ < Real("0.75")) return qpoch_pexpr(Z, ts, tail_exp);

    // |Z| >= 0.75: make all bases contracting, then peel factors off along
    // the fastest-shrinking base until the log form applies
    for (std::size_t k = 0; k < ts.size(); ++k)
        if (abs(ts[k]) > 1) return qpoch_flip(Z, ts, k, tail_exp, depth);

    if (ts.empty()) return Complex(1) - Z;  // bare factor

    std::size_t kmin = 0;
    for (std::size_t k = 1; k < ts.size(); ++k)
        if (abs(ts[k]) < abs(ts[kmin])) kmin = k;

    std::vector<Complex> rest;
    for (std::size_t k = 0; k < ts.size(); ++k)
        if (k != kmin) rest.push_back(ts[k]);

    Complex acc(1);
    Complex cur = Z;
    const Complex& t = ts[kmin];
    for (int step = 0; step < 100000; ++step) {
        if (abs(cur) < Real("0.75")) return acc * qpoch_pexpr(cur, ts, tail_exp);
        acc *= qpoch_impl(cur, rest, tail_exp, depth + 1);
        if (acc.is_zero()) return acc;  // an exact zero of the product
        cur *= t;
    }
    throw NoConvergence();
}

}  // namespace detail_q

// N-fold infinite q-Pochhammer (Z; t_1..t_N) with relative truncation error
// below 10^tail_exp (default tied to the working precision)
inline Complex qpoch(const Complex& Z, const std::vector<Complex>& bases, int tail_exp = 0) {
    if (tail_exp == 0) tail_exp = detail_q::default_tail_exp();
    return detail_q::qpoch_impl(Z, bases, tail_exp, 0);
}

// theta(Z; q) = (Z; q) (q/Z; q)
inline Complex theta(const Complex& Z, const Complex& q) {
    if (Z.is_zero()) throw PoleHit();
    return qpoch(Z, {q}) * qpoch(q / Z, {q});
}

// Jacobi triple product sum form, used as a cross-check oracle
inline Complex theta_series(const Complex& Z, const Complex& q) {
    if (Z.is_zero()) throw PoleHit();
    Real eps = detail_q::ten_pow(detail_q::default_tail_exp());
    Complex sum(0);
    for (int k = -1;; --k) {  // negative k wing
        Complex term = pow(Complex(-1), static_cast<long>(-k & 1)) *
                       pow(q, Complex(Real(k) * (Real(k) - 1) / 2)) * pow(Z, static_cast<long>(k));
        sum += term;
        if (abs(term) < eps && k < -4) break;
        if (k < -100000) throw NoConvergence();
    }
    for (int k = 0;; ++k) {
        Complex term = pow(Complex(-1), static_cast<long>(k & 1)) *
                       pow(q, Complex(Real(k) * (Real(k) - 1) / 2)) * pow(Z, static_cast<long>(k));
        sum += term;
        if (abs(term) < eps && k > 4) break;
        if (k > 100000) throw NoConvergence();
    }
    return sum / qpoch(q, {q});
}

// elliptic Gamma: (t q / Z; t, q) / (Z; t, q)
inline Complex elliptic_gamma(const Complex& Z, const Complex& t, const Complex& q) {
    if (Z.is_zero()) throw PoleHit();
    Complex den = qpoch(Z, {t, q});
    if (den.is_zero()) throw PoleHit();
    return qpoch(t * q / Z, {t, q}) / den;
}

// trigonometric Gamma: (1-q)^(1-x) (q; q) / (q^x; q)
inline Complex q_gamma(const Complex& x, const Complex& q) {
    Complex qx = exp(x * log(q));
    Complex den = qpoch(qx, {q});
    if (den.is_zero()) throw PoleHit();
    return exp((Complex(1) - x) * log(Complex(1) - q)) * qpoch(q, {q}) / den;
}

// trigonometric Barnes G: (1-q)^(-(x-1)(x-2)/2) (q;q)^(x-1) (q^x; q,q) / (q; q,q)
inline Complex q_barnes_g(const Complex& x, const Complex& q) {
    Complex qx = exp(x * log(q));
    Complex l1q = log(Complex(1) - q);
    Complex lpoch = log(qpoch(q, {q}));
    return exp(l1q * ((x - Complex(1)) * (x - Complex(2)) / Complex(-2)) + lpoch * (x - Complex(1))) *
           qpoch(qx, {q, q}) / qpoch(q, {q, q});
}

namespace detail_q {

struct SpougeTable {
    int a = 0;
    std::vector<Real> c;  // c[0] = sqrt(2 pi), c[k] as usual
};

inline const SpougeTable& spouge_table() {
    static SpougeTable tab;
    static int built_for = -1;
    if (built_for != working_digits()) {
        built_for = working_digits();
        tab.a = static_cast<int>(1.27 * (working_digits() + 14)) + 2;
        tab.c.assign(static_cast<std::size_t>(tab.a), Real(0));
        tab.c[0] = sqrt(2 * const_pi());
        Real fact(1);
        for (int k = 1; k < tab.a; ++k) {
            Real ak(tab.a - k);
            tab.c[static_cast<std::size_t>(k)] =
                ((k - 1) % 2 == 0 ? 1 : -1) * pow(ak, Real(k) - Real(0.5)) * exp(ak) / fact;
            fact *= k;
        }
    }
    return tab;
}

}  // namespace detail_q

// classical Gamma via Spouge's expansion with reflection for Re z < 1/2
inline Complex gamma(const Complex& z) {
    const auto& tab = detail_q::spouge_table();
    if (z.re < Real("0.5")) {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        Complex s = sin(Complex(const_pi()) * z);
        if (s.is_zero()) throw PoleHit();
        return Complex(const_pi()) / (s * gamma(Complex(1) - z));
    }
    Complex acc(tab.c[0]);
    for (int k = 1; k < tab.a; ++k) acc += Complex(tab.c[static_cast<std::size_t>(k)]) / (z + Complex(k - 1));
    Complex za(z + Complex(tab.a - 1));
    return exp((z - Complex(Real("0.5"))) * log(za) - za) * acc;
}

}  // namespace qptau
