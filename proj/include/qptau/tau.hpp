#pragma once

// The tau function of q-difference Painleve III(D8):
//
//   T(u,s;q|Z) = sum_n s^n C(u q^{2n};q|Z) F(u q^{2n}; q^-1,q | Z)
//                / ((u q^{2n+1}; q,q) (u^-1 q^{-2n+1}; q,q)),
//
// its two rewritings (the C-telescoped form and the rational-weight form),
// the normalized variant T_c, the structure functions C_1 and C_c, the
// rational weights P_n, and the (F, G) coordinates built from four
// tau-letters.
//
// Branch policy: every fractional power of q, u, Z is exp of a rational
// multiple of fixed logarithms (lq, lu, lZ). The sign flag sigma_branch
// selects the Z-sheet lZ = Log Z + 2 pi i, which flips Z^(1/2) and turns
// the "+" bilinear form into the analytically continued "-" form.

#include <map>
#include <memory>
#include <utility>

#include "qptau/blocks.hpp"
#include "qptau/qspecial.hpp"

namespace qptau {

enum class CKind { C1, Cc };

// C_1(u;q|Z) = G(w)^3 / (G(i (qZu)^(1/4)) G(i (qZ/u)^(1/4))), G = elliptic
// Gamma with both bases q^(1/4), w = (qZ)^(1/4); all quarter powers taken
// log-consistently so the three defining difference equations hold exactly.
inline Complex c_function_logs(CKind kind, const Complex& lu, const Complex& lq,
                               const Complex& lZ) {
    Complex p = exp(lq / Complex(4));
    if (kind == CKind::C1) {
        Complex w = exp((lq + lZ) / Complex(4));
        Complex v1 = Complex::i() * exp((lq + lZ + lu) / Complex(4));
        Complex v2 = Complex::i() * exp((lq + lZ - lu) / Complex(4));
        Complex g = elliptic_gamma(w, p, p);
        return g * g * g / (elliptic_gamma(v1, p, p) * elliptic_gamma(v2, p, p));
    }
    // C_c = (-1)^(2 sigma^2) Gamma(-(qZ)^(1/4); q^(1/4), q^(1/4))
    //       * exp(log^2 u log Z / (4 log^2 q)),  sigma = log u / (2 log q)
    Complex sigma = lu / (Complex(2) * lq);
    Complex phase = exp(Complex(0, const_pi()) * Complex(2) * sigma * sigma);
    Complex w = exp((lq + lZ) / Complex(4));
    return phase * elliptic_gamma(Complex(0) - w, p, p) * exp(lu * lu * lZ / (Complex(4) * lq * lq));
}

// P_n(u;q) of the rational-weight rewriting:
//   P_n = (-1)^n / ((1-u)^(2n) prod_{i=1}^{2n-1} (u^(1/2) q^(i/2) - u^(-1/2) q^(-i/2))^(2(2n-i)))
// for n >= 0, and P_n(u;q) = P_{-n}(u^(-1);q) for n < 0.
inline Complex p_n_coefficient(int n, const Complex& lu, const Complex& lq) {
    if (n == 0) return Complex(1);
    if (n < 0) return p_n_coefficient(-n, Complex(0) - lu, lq);
    Complex u = exp(lu);
    Complex den = pow(Complex(1) - u, 2L * n);
    for (int i = 1; i <= 2 * n - 1; ++i) {
        Complex arg = (lu + Complex(i) * lq) / Complex(2);
        Complex s = exp(arg) - exp(Complex(0) - arg);
        den *= pow(s, 2L * (2 * n - i));
    }
    if (den.is_zero()) throw ResonantU();
    return Complex(n % 2 == 0 ? 1 : -1) / den;
}

// P_n(q) at the algebraic point u = q^(1/2):
//   prod_{j=0}^{k-1} ((1-q^(j+1/2))(1-q^(-j-1/2)))^(-(k-j)),
//   k = 2n for n > 0 and k = -2n-1 for n < 0
inline Complex p_n_algebraic(int n, const Complex& lq) {
    if (n == 0) return Complex(1);
    int k = n > 0 ? 2 * n : -2 * n - 1;
    Complex acc(1);
    for (int j = 0; j < k; ++j) {
        Complex e = (Complex(j) + Complex(Real("0.5"))) * lq;
        Complex f = (Complex(1) - exp(e)) * (Complex(1) - exp(Complex(0) - e));
        acc *= pow(f, static_cast<long>(-(k - j)));
    }
    return acc;
}

enum class TauForm { Plain, CTelescoped, RationalWeights };

struct TauOptions {
    int block_order = 8;   // Z-order of every conformal block
    int n_cap = 32;        // hard ceiling of the |n| summation window
    CKind c_kind = CKind::Cc;
    int sigma_branch = +1;  // -1 selects the lZ + 2 pi i sheet
    TauForm form = TauForm::Plain;
};

class TauSystem {
  public:
    TauSystem(const Complex& u, const Complex& s, const Complex& q, TauOptions opt = {})
        : lu_(log(u)), s_(s), lq_(log(q)), opt_(opt) {
        check_resonance();
    }

    // logs supplied directly (for limit studies where u = e^(2 sigma hbar))
    static TauSystem from_logs(const Complex& lu, const Complex& s, const Complex& lq,
                               TauOptions opt = {}) {
        return TauSystem(lu, s, lq, opt, 0);
    }

    const Complex& lq() const { return lq_; }
    const Complex& lu() const { return lu_; }
    const TauOptions& options() const { return opt_; }

    Complex lz_of(const Complex& Z) const {
        Complex l = log(Z);
        if (opt_.sigma_branch < 0) l.im += 2 * const_pi();
        return l;
    }

    // T(u q^shift, s; q | e^lZ) in the requested form
    Complex tau_logs(const Complex& lZ, int u_shift = 0) {
        switch (opt_.form) {
            case TauForm::Plain: return tau_plain(lZ, u_shift);
            case TauForm::CTelescoped: return tau_telescoped(lZ, u_shift);
            default: return tau_rational(lZ, u_shift);
        }
    }
    Complex tau(const Complex& Z, int u_shift = 0) { return tau_logs(lz_of(Z), u_shift); }

    // T_c = (q; q,q)^2 / Gamma(-(qZ)^(1/4); q^(1/4), q^(1/4)) * T
    Complex tau_c_logs(const Complex& lZ, int u_shift = 0) {
        Complex q = exp(lq_);
        Complex p = exp(lq_ / Complex(4));
        Complex w = exp((lq_ + lZ) / Complex(4));
        Complex dd = qpoch(q, {q, q});
        return dd * dd / elliptic_gamma(Complex(0) - w, p, p) * tau_logs(lZ, u_shift);
    }
    Complex tau_c(const Complex& Z, int u_shift = 0) { return tau_c_logs(lz_of(Z), u_shift); }

    // tau-letters at lZ: T1 = T(u,s|Z), T3 = s^(1/2) T(uq,s|Z), and the
    // overlines T2 = T1(qZ), T4 = T3(qZ)
    struct Letters {
        Complex t1, t2, t3, t4;
    };
    Letters letters(const Complex& lZ) {
        Complex shalf = sqrt_s();
        Letters L;
        L.t1 = tau_logs(lZ);
        L.t3 = shalf * tau_logs(lZ, 1);
        L.t2 = tau_logs(lZ + lq_);
        L.t4 = shalf * tau_logs(lZ + lq_, 1);
        return L;
    }

    // F = -(qZ)^(1/2) T2^2/T4^2, G = -Z^(1/2) T1^2/T3^2
    std::pair<Complex, Complex> fg(const Complex& lZ) {
        Letters L = letters(lZ);
        if (L.t3.is_zero() || L.t4.is_zero()) throw ZeroTau();
        Complex F = Complex(0) - exp((lq_ + lZ) / Complex(2)) * (L.t2 * L.t2) / (L.t4 * L.t4);
        Complex G = Complex(0) - exp(lZ / Complex(2)) * (L.t1 * L.t1) / (L.t3 * L.t3);
        return {F, G};
    }

    Complex c_fn(const Complex& lZ, int u_shift) const {
        return c_function_logs(opt_.c_kind, lu_ + Complex(u_shift) * lq_, lq_, lZ);
    }

    // block F(u q^m; q^-1, q | .) as a series, cached per shift m
    const GradedSeries<Complex>& block(int m) {
        auto it = blocks_.find(m);
        if (it == blocks_.end()) {
            Complex q = exp(lq_);
            Complex um = exp(lu_ + Complex(m) * lq_);
            it = blocks_.emplace(m, conformal_block(um, Complex(1) / q, q, opt_.block_order)).first;
        }
        return it->second;
    }

    Complex block_value(int m, const Complex& lZ) {
        const auto& f = block(m);
        Complex Z = exp(lZ);
        Complex acc(0), zp(1);
        int expo = 0;
        for (const auto& [e, c] : f.coefficients()) {
            while (expo < e) { zp *= Z; expo += 4; }  // block exponents step by 4
            acc += c * zp;
        }
        return acc;
    }

  private:
    Complex lu_, s_, lq_;
    TauOptions opt_;
    std::map<int, GradedSeries<Complex>> blocks_;

    TauSystem(const Complex& lu, const Complex& s, const Complex& lq, TauOptions opt, int)
        : lu_(lu), s_(s), lq_(lq), opt_(opt) {
        check_resonance();
    }

    void check_resonance() const {
        Complex u = exp(lu_), q = exp(lq_);
        Real eps = pow(Real(10), -(working_digits() - 10));
        Complex qk(1);
        for (int k = 0; k <= 2 * opt_.n_cap + 4; ++k) {
            if (abs(u - qk) < eps || abs(u * qk - Complex(1)) < eps) throw ResonantU();
            qk *= q;
        }
    }

    Complex sqrt_s() const { return exp(log(s_) / Complex(2)); }

    Real stab_eps() const { return pow(Real(10), -(working_digits() + 2)); }

    template <class Term>
    Complex adaptive_sum(Term&& term) {
        Complex acc = term(0);
        Real scale = abs(acc) + Real(1);
        int quiet = 0;
        for (int n = 1; n <= opt_.n_cap; ++n) {
            Complex inc = term(n) + term(-n);
            acc += inc;
            if (abs(inc) < stab_eps() * (abs(acc) + scale)) {
                if (++quiet >= 2) return acc;
            } else {
                quiet = 0;
            }
        }
        throw NoConvergence();
    }

    // denominator (v q; q,q)(v^-1 q; q,q) at v = u q^m
    Complex double_poch_pair(int m) {
        auto it = poch_cache_.find(m);
        if (it != poch_cache_.end()) return it->second;
        Complex q = exp(lq_);
        Complex a1 = exp(lu_ + Complex(m + 1) * lq_);
        Complex a2 = exp(Complex(0) - lu_ + Complex(1 - m) * lq_);
        Complex v = qpoch(a1, {q, q}) * qpoch(a2, {q, q});
        poch_cache_.emplace(m, v);
        return v;
    }
    std::map<int, Complex> poch_cache_;

    Complex tau_plain(const Complex& lZ, int u_shift) {
        return adaptive_sum([&](int n) {
            int m = 2 * n + u_shift;
            Complex den = double_poch_pair(m);
            if (den.is_zero()) throw ResonantU();
            return pow(s_, static_cast<long>(n)) * c_fn(lZ, m) * block_value(m, lZ) / den;
        });
    }

    // T = C(u|Z) sum_n ts^n Z^(n^2+n/2) F(u q^(2n)|Z) / poch,
    // ts = -(C(u|Z)/C(u q^-1|Z))^2 s
    Complex tau_telescoped(const Complex& lZ, int u_shift) {
        Complex c0 = c_fn(lZ, u_shift);
        Complex ts = Complex(0) - pow(c0 / c_fn(lZ, u_shift - 1), 2L) * s_;
        Complex acc = adaptive_sum([&](int n) {
            int m = 2 * n + u_shift;
            Complex den = double_poch_pair(m);
            if (den.is_zero()) throw ResonantU();
            Complex zpow = exp(Complex(Real(n) * Real(n) + Real(n) / 2) * lZ);
            return pow(ts, static_cast<long>(n)) * zpow * block_value(m, lZ) / den;
        });
        return c0 * acc;
    }

    // T = C(u|Z)/poch(u) sum_n hs^n Z^(n^2+n/2) P_n(u;q) F(u q^(2n)|Z),
    // hs = -(C(u|Z)/C(u q^-1|Z) (u;q)/(u^-1;q))^2 s
    Complex tau_rational(const Complex& lZ, int u_shift) {
        Complex lus = lu_ + Complex(u_shift) * lq_;
        Complex q = exp(lq_);
        Complex u = exp(lus);
        Complex c0 = c_fn(lZ, u_shift);
        Complex r = qpoch(u, {q}) / qpoch(Complex(1) / u, {q});
        Complex hs = Complex(0) - pow(c0 / c_fn(lZ, u_shift - 1) * r, 2L) * s_;
        Complex acc = adaptive_sum([&](int n) {
            Complex zpow = exp(Complex(Real(n) * Real(n) + Real(n) / 2) * lZ);
            return pow(hs, static_cast<long>(n)) * zpow * p_n_coefficient(n, lus, lq_) *
                   block_value(2 * n + u_shift, lZ);
        });
        return c0 * acc / double_poch_pair(u_shift);
    }
};

// relative residuals of the three defining C-equations at one sample point
struct CEquationResiduals {
    Real c01, c11, c10;
};
inline CEquationResiduals c_equation_residuals(CKind kind, const Complex& lu, const Complex& lq,
                                               const Complex& lZ) {
    auto C = [&](const Complex& lus, const Complex& lZs) {
        return c_function_logs(kind, lus, lq, lZs);
    };
    Complex c0 = C(lu, lZ);
    Complex z_half = exp(lZ / Complex(2));
    Complex z_q = exp(lZ / Complex(4));
    Complex u = exp(lu);

    Complex r01 = C(lu + lq, lZ) * C(lu - lq, lZ) / (c0 * c0) + z_half;
    Complex r11 = C(lu + lq, lZ + lq) * C(lu - lq, lZ - lq) / (c0 * c0) + u * z_q;
    Complex r10 = C(lu, lZ + lq) * C(lu, lZ - lq) / (c0 * c0) - Complex(1) / z_q;
    return {abs(r01) / (abs(z_half) + 1), abs(r11) / (abs(u * z_q) + 1),
            abs(r10) / (abs(Complex(1) / z_q) + 1)};
}

}  // namespace qptau
