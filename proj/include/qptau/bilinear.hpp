#pragma once

// Residual series for the bilinear identities:
//   - the main block bilinear relation (normalized to rational weights),
//   - the tau q-Toda relation,
//   - the algebraic-solution Pochhammer identity at u = q^(1/2),
//   - the two generic-(q1,q2) relations of the lozenge partition sum,
//   - the fiber-base inversion check (expected to FAIL, by design).
//
// The main-relation weights are
//   w_n = prod_e (u^e q; q,q)^2 / prod_{e,e'} (u^e q^(1+2e'n); q,q),
// which telescope to the finite product 1/(A_m(u) A_m(u^-1)), m = |2n|,
//   A_m(u) = prod_{i=0}^{m-1} prod_{l=0}^{i} (1 - u^-1 q^-l)
//          * prod_{j=1}^{m} prod_{l=1}^{j-1} (1 - u q^l).
// This makes every coefficient of the exact residual a rational function.

#include <functional>

#include "qptau/blocks.hpp"
#include "qptau/rational_function.hpp"
#include "qptau/series.hpp"
#include "qptau/tau.hpp"

namespace qptau {

template <class S>
S bilinear_weight_am(int m, const S& u, const S& q) {
    S acc(1);
    S uinv = S(1) / u;
    detail_blocks::PowCache<S> qp(q);
    for (int i = 0; i <= m - 1; ++i)
        for (int l = 0; l <= i; ++l) acc *= S(1) - uinv * qp(-l);
    for (int j = 1; j <= m; ++j)
        for (int l = 1; l <= j - 1; ++l) acc *= S(1) - u * qp(l);
    return acc;
}

// w_{m/2} for m = |2n|
template <class S>
S bilinear_weight(int m, const S& u, const S& q) {
    if (m == 0) return S(1);
    S den = bilinear_weight_am(m, u, q) * bilinear_weight_am(m, S(1) / u, q);
    if (den.is_zero()) throw ResonantU();
    return S(1) / den;
}

// Main bilinear residual, truncated at Z-order `order` (zeta-order 4*order):
//   sum_{2n in Z, 2n^2 <= order} w_n [ u^(2n) Z^(2n^2)
//        F(u q^-2n | q^-1 Z) F(u q^2n | q Z)
//      - (1 - Z^(1/2)) Z^(2n^2) F(u q^-2n | Z) F(u q^2n | Z) ].
// block_fn(m, z_order) must return F(u q^m; q^-1, q | Z) through Z^z_order.
template <class S, class BlockFn>
GradedSeries<S> bilinear_residual_main(const S& u, const S& q_quarter, int order, int branch,
                                       BlockFn&& block_fn, bool include_half_sectors = true) {
    if (order < 1) throw std::invalid_argument("order must be >= 1");
    const S q = pow(q_quarter, 4L);
    GradedSeries<S> residual(4 * order);

    for (int m = 0; 2 * m * m <= 4 * order; ++m) {  // m = 2n >= 0
        if (m > 0 && (m % 2 == 1) && !include_half_sectors) continue;
        int zeta_pref = 2 * m * m;          // zeta-order of Z^(2n^2)
        int sub_order = order - zeta_pref / 4 - (zeta_pref % 4 ? 1 : 0);
        if (sub_order < 0) continue;
        S w = bilinear_weight(m, u, q);

        for (int sign = (m == 0 ? 1 : -1); sign <= 1; sign += 2) {
            int mm = sign * m;  // 2n
            auto fm = block_fn(-mm, sub_order);
            auto fp = block_fn(mm, sub_order);

            // u^(2n) F(.|q^-1 Z) F(.|q Z); support is multiples of 4, so the
            // declared order can be widened by 2 to match the rhs below
            GradedSeries<S> lhs = series_scale_z(fm, S(1) / q_quarter) * series_scale_z(fp, q_quarter);
            lhs = lhs.scale(pow(u, static_cast<long>(mm))).with_order(4 * sub_order + 2);
            // (1 - Z^(1/2)) F(.|Z) F(.|Z): the product has support on
            // multiples of 4 only, so widening by 2 before subtracting the
            // shifted copy keeps the top coefficient exact
            GradedSeries<S> prod = fm * fp;
            GradedSeries<S> rhs =
                prod.with_order(prod.order() + 2) -
                prod.mul_monomial(2, S(branch < 0 ? -1 : 1));

            // sub_order was sized so that every populated exponent <= 4*order
            // is exact; widen the declared order accordingly before summing
            residual += (lhs - rhs).scale(w).mul_monomial(zeta_pref, S(1)).with_order(4 * order);
            if (m == 0) break;
        }
    }
    return residual;
}

// exact backend over generators a = q^(1/4), b = u^(1/4)
inline GradedSeries<RatFn> bilinear_residual_exact(int order, int branch = +1,
                                                   bool include_half_sectors = true) {
    VarsPtr ab = make_vars({"a", "b"});
    RatFn a = RatFn::var(ab, 0);
    RatFn q = RatFn::mono(ab, 0, 4), qinv = RatFn::mono(ab, 0, -4);
    RatFn u = RatFn::mono(ab, 1, 4);
    auto block_fn = [&](int m, int z_order) {
        return conformal_block(u * pow(q, static_cast<long>(m)), qinv, q, z_order);
    };
    return bilinear_residual_main(u, a, order, branch, block_fn, include_half_sectors);
}

// numeric backend at a sample point (u, q)
inline GradedSeries<Complex> bilinear_residual_numeric(const Complex& u, const Complex& q,
                                                       int order, int branch = +1) {
    Complex lq = log(q), lu = log(u);
    Complex qq = exp(lq), qinv = Complex(1) / qq;
    auto block_fn = [&](int m, int z_order) {
        return conformal_block(exp(lu + Complex(m) * lq), qinv, qq, z_order);
    };
    return bilinear_residual_main(u, exp(lq / Complex(4)), order, branch, block_fn);
}

// q-Toda residual of the tau function at one point, relative to the largest
// participating term:
//   Z^(1/4) T(qZ) T(q^-1 Z) - T(Z)^2 - Z^(1/2) T_{uq}(Z) T_{uq^-1}(Z)
inline Real qtoda_residual(TauSystem& sys, const Complex& Z) {
    Complex lZ = sys.lz_of(Z);
    Complex lq = sys.lq();
    Complex t_up = sys.tau_logs(lZ + lq), t_dn = sys.tau_logs(lZ - lq);
    Complex t0 = sys.tau_logs(lZ);
    Complex tu = sys.tau_logs(lZ, 1), td = sys.tau_logs(lZ, -1);
    Complex a = exp(lZ / Complex(4)) * t_up * t_dn;
    Complex b = t0 * t0;
    Complex c = exp(lZ / Complex(2)) * tu * td;
    Real scale = abs(a) + abs(b) + abs(c);
    return abs(a - b - c) / scale;
}

// same combination for tau_c (no Z^(1/4) prefactor); sign of the cross term
// follows the Z-sheet so that on the continued sheet this is literally the
// minus-form equation with the principal Z^(1/2)
inline Real qtoda_residual_c(TauSystem& sys, const Complex& Z) {
    Complex lZ = sys.lz_of(Z);
    Complex lq = sys.lq();
    Complex a = sys.tau_c_logs(lZ + lq) * sys.tau_c_logs(lZ - lq);
    Complex b = sys.tau_c_logs(lZ);
    b *= b;
    Complex c = exp(lZ / Complex(2)) * sys.tau_c_logs(lZ, 1) * sys.tau_c_logs(lZ, -1);
    Real scale = abs(a) + abs(b) + abs(c);
    return abs(a - b - c) / scale;
}

// algebraic-solution identity at u = q^(1/2): residual series in zeta of
//   (sign_term; q^(1/2), q^(1/2))_inf - sum_n (∓1)^n Z^(n^2+n/2) P_n(q) F(q^(2n+1/2))
// with sign = -1 giving the upper sign of the printed relation.
// The Pochhammer side is expanded through its log form, exactly.
template <class S, class BlockFn, class PnFn>
GradedSeries<S> algebraic_residual(int order, int sign, const S& q_half, BlockFn&& block_fn,
                                   PnFn&& pn_fn) {
    const int zorder = 4 * order;
    // log series: L = -sum_m (sign)^m q^(m/2) zeta^(2m) / (m (1-q^(m/2))^2)
    GradedSeries<S> logser(zorder);
    detail_blocks::PowCache<S> qh(q_half);
    for (int m = 1; 2 * m <= zorder; ++m) {
        S den = S(1) - qh(m);
        den = S(m) * den * den;
        S num = qh(m);  // (sign)^m q^(m/2)
        if (sign < 0 && (m % 2 != 0)) num = S(0) - num;
        logser.set(2 * m, S(0) - num / den);
    }
    // exp via the ODE recurrence: e_j = (1/j) sum_i i l_i e_{j-i} (j in zeta/2 units)
    GradedSeries<S> lhs(zorder);
    lhs.set(0, S(1));
    std::vector<S> e(static_cast<std::size_t>(zorder / 2) + 1, S(0));
    e[0] = S(1);
    for (int j = 1; 2 * j <= zorder; ++j) {
        S acc(0);
        for (int i = 1; i <= j; ++i) {
            S li = logser.get(2 * i);
            if (li.is_zero()) continue;
            acc += S(i) * li * e[static_cast<std::size_t>(j - i)];
        }
        e[static_cast<std::size_t>(j)] = acc / S(j);
        lhs.set(2 * j, e[static_cast<std::size_t>(j)]);
    }

    GradedSeries<S> rhs(zorder);
    for (int n = -order - 1; n <= order + 1; ++n) {
        int zeta_pref = 4 * n * n + 2 * n;  // zeta-order of Z^(n^2+n/2)
        if (zeta_pref > zorder) continue;
        int sub_order = (zorder - zeta_pref) / 4;
        S weight = pn_fn(n);
        if (sign < 0 && (n % 2 != 0)) weight = S(0) - weight;  // sign^n
        auto f = block_fn(n, sub_order);
        rhs += f.scale(weight).mul_monomial(zeta_pref, S(1)).with_order(zorder);
    }
    return lhs - rhs;
}

// exact backend over the single generator a = q^(1/4)
inline GradedSeries<RatFn> algebraic_residual_exact(int order, int sign) {
    VarsPtr av = make_vars({"a"});
    RatFn q = RatFn::mono(av, 0, 4), qinv = RatFn::mono(av, 0, -4);
    RatFn qh = RatFn::mono(av, 0, 2);
    auto block_fn = [&](int n, int z_order) {
        return conformal_block(RatFn::mono(av, 0, 8 * n + 2), qinv, q, z_order);
    };
    auto pn = [&](int n) {  // P_n(q), the paper's product over j < k
        if (n == 0) return RatFn::from_int(av, 1);
        int k = n > 0 ? 2 * n : -2 * n - 1;
        RatFn acc = RatFn::from_int(av, 1);
        RatFn one = RatFn::from_int(av, 1);
        for (int j = 0; j < k; ++j) {
            RatFn f = (one - RatFn::mono(av, 0, 4 * j + 2)) * (one - RatFn::mono(av, 0, -4 * j - 2));
            acc *= pow(f, static_cast<long>(-(k - j)));
        }
        return acc;
    };
    return algebraic_residual(order, sign, qh, block_fn, pn);
}

inline GradedSeries<Complex> algebraic_residual_numeric(const Complex& q, int order, int sign) {
    Complex lq = log(q);
    Complex qq = exp(lq), qinv = Complex(1) / qq;
    auto block_fn = [&](int n, int z_order) {
        return conformal_block(exp(Complex(2 * n) * lq + lq / Complex(2)), qinv, qq, z_order);
    };
    auto pn = [&](int n) { return p_n_algebraic(n, lq); };
    return algebraic_residual(order, sign, exp(lq / Complex(2)), block_fn, pn);
}

// ---- Appendix-style generic (q1, q2) relations ----

struct GenericBilinearResult {
    GradedSeries<Complex> r1;  // F_loz - Fhat_1
    GradedSeries<Complex> r0;  // F_loz - (1 - q2 q1 Z^(1/2)) Fhat_0
};

// sector |q2| < 1 < |q1|; order is the Z-order of both residuals
inline GenericBilinearResult generic_bilinear_residuals(const Complex& u, const Complex& q1,
                                                        const Complex& q2, int order) {
    Complex lq1 = log(q1), lq2 = log(q2), lu = log(u);
    GradedSeries<Complex> floz = conformal_block_lozenge(u, q1, q2, 2 * order);

    auto fhat = [&](int d) {
        GradedSeries<Complex> acc(4 * order);
        for (int m = 0; 2 * m * m <= 4 * order; ++m) {  // m = 2n >= 0
            int zeta_pref = 2 * m * m;
            int sub_order = order - zeta_pref / 4 - (zeta_pref % 4 ? 1 : 0);
            if (sub_order < 0) continue;
            for (int sign = (m == 0 ? 1 : -1); sign <= 1; sign += 2) {
                int mm = sign * m;  // 2n
                // weights: (u q1^(4n-2); q1^-2, q1^-1 q2)(u^-1 q1^(-4n-2); ..)
                //        * (u q1^-1 q2^(4n+1); q1^-1 q2, q2^2)(u^-1 q1^-1 q2^(-4n+1); ..)
                std::vector<Complex> b1{exp(Complex(-2) * lq1), exp(lq2 - lq1)};
                std::vector<Complex> b2{exp(lq2 - lq1), exp(Complex(2) * lq2)};
                Complex w1 = qpoch(exp(lu + Complex(2 * mm - 2) * lq1), b1) *
                             qpoch(exp(Complex(0) - lu - Complex(2 * mm + 2) * lq1), b1);
                Complex w2 = qpoch(exp(lu - lq1 + Complex(2 * mm + 1) * lq2), b2) *
                             qpoch(exp(Complex(0) - lu - lq1 + Complex(1 - 2 * mm) * lq2), b2);
                Complex wden = w1 * w2;
                if (wden.is_zero()) throw ResonantU();

                auto f1 = conformal_block(exp(lu + Complex(2 * mm) * lq1), exp(Complex(2) * lq1),
                                          exp(lq2 - lq1), sub_order);
                auto f2 = conformal_block(exp(lu + Complex(2 * mm) * lq2), exp(lq1 - lq2),
                                          exp(Complex(2) * lq2), sub_order);
                // arguments q1^(2d) Z and q2^(2d) Z
                if (d != 0) {
                    f1 = series_scale_z(f1, exp(Complex(d) * lq1 / Complex(2)));
                    f2 = series_scale_z(f2, exp(Complex(d) * lq2 / Complex(2)));
                }
                // u^(2dn) (q1 q2)^(4dn^2) with 2n = mm
                Complex pref = exp(Complex(d * mm) * lu) * exp(Complex(d * mm * mm) * (lq1 + lq2));
                acc += (f1 * f2)
                           .scale(pref / wden)
                           .mul_monomial(zeta_pref, Complex(1))
                           .with_order(4 * order);
                if (m == 0) break;
            }
        }
        return acc;
    };

    GenericBilinearResult out{GradedSeries<Complex>(4 * order), GradedSeries<Complex>(4 * order)};
    out.r1 = floz.truncated(4 * order) - fhat(1);
    GradedSeries<Complex> blowup_factor = GradedSeries<Complex>::one();
    blowup_factor.set(2, Complex(0) - q2 * q1);  // 1 - q2 q1 Z^(1/2)
    out.r0 = floz.truncated(4 * order) - fhat(0) * blowup_factor;
    return out;
}

// ---- fiber-base inversion: both sides of the would-be identity ----
//   F(u; q^-1, q | Z) / (uq; q,q)^2  vs  F(uZ; q^-1, q | Z^-1) / (uZq; q,q)^2
// The report direction is inverted: the check passes when these differ.
struct FiberBaseResult {
    Complex lhs, rhs;
    Real rel_diff;
};

inline FiberBaseResult fiber_base_both_sides(const Complex& u, const Complex& q, const Complex& Z,
                                             int order) {
    Complex qinv = Complex(1) / q;
    auto eval_series = [](const GradedSeries<Complex>& f, const Complex& at) {
        Complex acc(0), zp(1);
        int expo = 0;
        for (const auto& [e, c] : f.coefficients()) {
            while (expo < e) { zp *= at; expo += 4; }
            acc += c * zp;
        }
        return acc;
    };
    Complex lhs_f = eval_series(conformal_block(u, qinv, q, order), Z);
    Complex w = u * Z;
    Complex rhs_f = eval_series(conformal_block(w, qinv, q, order), Complex(1) / Z);
    Complex lhs = lhs_f / pow(qpoch(u * q, {q, q}), 2L);
    Complex rhs = rhs_f / pow(qpoch(w * q, {q, q}), 2L);
    Real scale = abs(lhs) + abs(rhs);
    return {lhs, rhs, abs(lhs - rhs) / scale};
}

}  // namespace qptau
