#pragma once

// Multivariate polynomial gcd and exact division.
//
// Strategy, in order of cheapness:
//   1. trivial cases, common monomial factors, integer contents;
//   2. a modular univariate-image probe that certifies coprimality
//      (the common case when reducing fractions);
//   3. heuristic gcd (evaluation at a big integer, balanced base-xi
//      reconstruction), verified by exact trial division;
//   4. primitive PRS in the variable of lowest degree as a fallback.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "qptau/poly_gcd_modular.hpp"
#include "qptau/polynomial.hpp"

namespace qptau {

// Exact multivariate division via lexicographic leading-term elimination.
// Returns nothing when b does not divide a.
inline std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
    a.check_vars(b);
    if (b.is_zero()) return std::nullopt;
    if (a.is_zero()) return Poly(a.vars());
    if (b.is_constant()) {
        const Int& c = b.constant_value();
        Poly q(a.vars());
        for (const auto& [m, v] : a.terms()) {
            if (v % c != 0) return std::nullopt;
            q.add_term(m, v / c);
        }
        return q;
    }
    Poly r = a;
    Poly q(a.vars());
    const Mono& mb = b.leading_mono();
    const Int& cb = b.leading_coeff();
    const std::size_t n = a.nvars();
    while (!r.is_zero()) {
        const Mono& mr = r.leading_mono();
        const Int& cr = r.leading_coeff();
        Mono shift(n);
        for (std::size_t i = 0; i < n; ++i) {
            shift[i] = mr[i] - mb[i];
            if (shift[i] < 0) return std::nullopt;
        }
        if (cr % cb != 0) return std::nullopt;
        Int cq = cr / cb;
        q.add_term(shift, cq);
        r -= b.mul_mono(shift, cq);
    }
    return q;
}

inline bool divides(const Poly& b, const Poly& a) { return divide_exact(a, b).has_value(); }

namespace detail_gcd {

constexpr int64_t kProbePrime = 2147483647;  // 2^31-1

inline int64_t mulmod(int64_t a, int64_t b) {
    return static_cast<int64_t>((static_cast<__int128>(a) * b) % kProbePrime);
}
inline int64_t powmod(int64_t a, int64_t e) {
    int64_t r = 1;
    a %= kProbePrime;
    while (e) {
        if (e & 1) r = mulmod(r, a);
        a = mulmod(a, a);
        e >>= 1;
    }
    return r;
}

inline int64_t coeff_mod(const Int& c) {
    Int r = c % kProbePrime;
    if (r < 0) r += kProbePrime;
    return r.convert_to<int64_t>();
}

// p as a univariate polynomial in `v` mod the probe prime, all other
// variables evaluated at `pt`
inline std::vector<int64_t> univ_image_mod(const Poly& p, std::size_t v,
                                           const std::vector<int64_t>& pt) {
    std::vector<int64_t> img(static_cast<std::size_t>(p.degree(v)) + 1, 0);
    for (const auto& [m, c] : p.terms()) {
        int64_t t = coeff_mod(c);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (i != v && m[i] != 0) t = mulmod(t, powmod(pt[i], m[i]));
        auto e = static_cast<std::size_t>(m[v]);
        img[e] = (img[e] + t) % kProbePrime;
    }
    while (!img.empty() && img.back() == 0) img.pop_back();
    return img;
}

inline int univ_gcd_degree_mod(std::vector<int64_t> f, std::vector<int64_t> g) {
    while (!g.empty()) {
        // f mod g
        int64_t inv = powmod(g.back(), kProbePrime - 2);
        while (f.size() >= g.size()) {
            int64_t c = mulmod(f.back(), inv);
            std::size_t off = f.size() - g.size();
            for (std::size_t i = 0; i < g.size(); ++i) {
                f[off + i] -= mulmod(c, g[i]);
                if (f[off + i] < 0) f[off + i] += kProbePrime;
            }
            while (!f.empty() && f.back() == 0) f.pop_back();
            if (f.empty()) break;
        }
        std::swap(f, g);
    }
    return static_cast<int>(f.size()) - 1;  // -1 when gcd picked up the zero poly
}

inline Int height(const Poly& p) {
    Int h(0);
    for (const auto& [m, c] : p.terms()) {
        Int a = abs(c);
        if (a > h) h = a;
    }
    return h;
}

// coefficientwise symmetric remainder mod xi, in (-xi/2, xi/2]
inline Poly smod(const Poly& p, const Int& xi) {
    Poly r(p.vars());
    Int half = xi / 2;
    for (const auto& [m, c] : p.terms()) {
        Int v = c % xi;
        if (v < 0) v += xi;
        if (v > half) v -= xi;
        if (v != 0) r.add_term(m, v);
    }
    return r;
}

// balanced base-xi reconstruction of a polynomial in variable v
inline Poly genpoly(Poly g, const Int& xi, std::size_t v) {
    Poly out(g.vars());
    int32_t e = 0;
    while (!g.is_zero()) {
        Poly digit = smod(g, xi);
        for (const auto& [m, c] : digit.terms()) {
            Mono mm(m);
            mm[v] = e;
            out.add_term(std::move(mm), c);
        }
        g -= digit;
        g.divide_exact(xi);
        ++e;
        if (e > 4096) throw std::runtime_error("genpoly runaway");
    }
    return out;
}

inline Poly primitive_positive(Poly p) {
    if (p.is_zero()) return p;
    Int c = p.content();
    if (p.leading_coeff() < 0) c = -c;
    if (c != 1) p.divide_exact(c);
    return p;
}

// Heuristic gcd. Integer contents of intermediate results are the images
// of gcd factors one level up, so nothing is made primitive here; trial
// division keeps the final answer sound.
inline std::optional<Poly> gcdheu(const Poly& a, const Poly& b, int depth = 0) {
    if (depth > 16) return std::nullopt;
    std::size_t v = SIZE_MAX;
    for (std::size_t i = 0; i < a.nvars(); ++i)
        if (a.degree(i) > 0 || b.degree(i) > 0) { v = i; break; }
    if (v == SIZE_MAX)
        return Poly::constant(a.vars(), gcd(a.constant_value(), b.constant_value()));

    Int ha = height(a), hb = height(b);
    Int xi = 2 * (ha < hb ? ha : hb) + 2;
    if (xi < 4) xi = 4;
    for (int attempt = 0; attempt < 3; ++attempt) {
        Poly A = a.eval_var(v, xi);
        Poly B = b.eval_var(v, xi);
        if (!A.is_zero() && !B.is_zero()) {
            std::optional<Poly> sub = gcdheu(A, B, depth + 1);
            if (sub && !sub->is_zero()) {
                Poly g = genpoly(*sub, xi, v);
                if (!g.is_zero() && divides(g, a) && divides(g, b)) return g;
            }
        }
        xi = xi * 73537 / 32768 + 1;  // ~2.24x growth, keeps xi away from small structured values
    }
    return std::nullopt;
}

// ---- modular multivariate gcd driver ----

Poly gcd_impl(const Poly& a, const Poly& b);

inline std::map<int32_t, Poly> as_univariate(const Poly& p, std::size_t v);
inline Poly content_wrt(const Poly& p, std::size_t v);

// pa, pb integer-content-free with no common monomial; nullopt = bad luck
inline std::optional<Poly> modular_gcd(const Poly& pa, const Poly& pb) {
    using namespace detail_modgcd;
    const std::size_t n = pa.nvars();

    // main variable: largest guaranteed gcd-degree window stays out of the
    // interpolation grid
    std::size_t v = SIZE_MAX;
    int32_t vdeg = 0;
    for (std::size_t w = 0; w < n; ++w) {
        int32_t d = std::min(pa.degree(w), pb.degree(w));
        if (d > vdeg) { vdeg = d; v = w; }
    }
    if (v == SIZE_MAX) return std::nullopt;

    Poly ca = content_wrt(pa, v), cb = content_wrt(pb, v);
    Poly cont_g = gcd_impl(ca, cb);
    Poly fa = *divide_exact(pa, ca);
    Poly fb = *divide_exact(pb, cb);

    Poly lca = as_univariate(fa, v).rbegin()->second;
    Poly lcb = as_univariate(fb, v).rbegin()->second;
    Poly gamma = gcd_impl(lca, lcb);

    std::vector<std::size_t> ivars;
    std::vector<int> npoints;
    for (std::size_t w = 0; w < n; ++w) {
        if (w == v) continue;
        int32_t da = fa.degree(w), db = fb.degree(w);
        if (da <= 0 && db <= 0 && gamma.degree(w) <= 0) continue;
        int32_t bound = std::min(std::max(da, 0), std::max(db, 0)) + std::max(gamma.degree(w), 0);
        ivars.push_back(w);
        npoints.push_back(bound + 1);
    }

    Poly crt_acc(pa.vars());  // coefficients in [0, modulus)
    Int modulus = 1;
    Poly prev_lift(pa.vars());
    int best_deg = -1;
    int used = 0;

    for (int64_t p : prime_pool()) {
        PolyZp A = reduce_mod(fa, p), B = reduce_mod(fb, p), G = reduce_mod(gamma, p);
        if (A.degree(v) != fa.degree(v) || B.degree(v) != fb.degree(v) || G.zero()) continue;

        int deg = best_deg;
        ZpGcdBuilder builder(A, B, v, ivars, npoints, G, p);
        auto h = builder.run(deg);
        if (!h) continue;
        if (deg == 0) return cont_g;  // primitive parts are coprime
        if (best_deg >= 0 && deg > best_deg) continue;  // unlucky prime
        if (best_deg < 0 || deg < best_deg) {
            best_deg = deg;
            crt_acc = Poly(pa.vars());
            modulus = 1;
            prev_lift = Poly(pa.vars());
            used = 0;
        }

        // CRT-combine h into crt_acc
        Poly next(pa.vars());
        if (modulus == 1) {
            for (const auto& [m, c] : h->t) next.add_term(m, Int(c));
        } else {
            Int minv_i = [](Int a, Int m) {  // a^(-1) mod m, m prime
                Int t0 = 0, t1 = 1, r0 = m, r1 = a % m;
                while (r1 != 0) {
                    Int q = r0 / r1;
                    Int tn = t0 - q * t1;
                    t0 = t1;
                    t1 = tn;
                    Int rn = r0 - q * r1;
                    r0 = r1;
                    r1 = rn;
                }
                return t0 < 0 ? t0 + m : t0;
            }(modulus % p, Int(p));
            for (const auto& [m, c] : h->t) {
                Int r1 = crt_acc.terms().count(m) ? crt_acc.terms().at(m) : Int(0);
                Int d = (Int(c) - r1) % p;
                if (d < 0) d += p;
                next.add_term(m, r1 + modulus * ((d * minv_i) % p));
            }
            for (const auto& [m, c] : crt_acc.terms())
                if (!h->t.count(m)) {
                    Int d = (Int(0) - c) % p;
                    if (d < 0) d += p;
                    next.add_term(m, c + modulus * ((d * minv_i) % p));
                }
        }
        crt_acc = next;
        modulus *= p;
        ++used;

        // symmetric lift and stabilization check
        Poly lifted(pa.vars());
        Int half = modulus / 2;
        for (const auto& [m, c] : crt_acc.terms()) lifted.add_term(m, c > half ? c - modulus : c);
        if (used >= 1 && lifted == prev_lift) {
            // stabilized: strip contents and verify
            Poly cand = lifted;
            Int ic = cand.content();
            if (ic != 0 && ic != 1) cand.divide_exact(ic);
            Poly wc = content_wrt(cand, v);
            if (!(wc.is_constant() && wc.constant_value() == 1)) cand = *divide_exact(cand, wc);
            if (divides(cand, fa) && divides(cand, fb)) return cont_g * cand;
        }
        prev_lift = lifted;
        if (used == 1) {
            // heights are usually tiny: try verification immediately
            Poly cand = lifted;
            Int ic = cand.content();
            if (ic != 0 && ic != 1) cand.divide_exact(ic);
            Poly wc = content_wrt(cand, v);
            if (!(wc.is_constant() && wc.constant_value() == 1)) cand = *divide_exact(cand, wc);
            if (divides(cand, fa) && divides(cand, fb)) return cont_g * cand;
        }
        if (used > 10) break;
    }
    return std::nullopt;
}

inline std::map<int32_t, Poly> as_univariate(const Poly& p, std::size_t v) {
    std::map<int32_t, Poly> out;
    for (const auto& [m, c] : p.terms()) {
        Mono mm(m);
        int32_t e = mm[v];
        mm[v] = 0;
        auto it = out.find(e);
        if (it == out.end()) it = out.emplace(e, Poly(p.vars())).first;
        it->second.add_term(std::move(mm), c);
    }
    return out;
}

inline Poly from_univariate(const std::map<int32_t, Poly>& u, std::size_t v, VarsPtr vars) {
    Poly out(vars);
    for (const auto& [e, coeff] : u) {
        for (const auto& [m, c] : coeff.terms()) {
            Mono mm(m);
            mm[v] = e;
            out.add_term(std::move(mm), c);
        }
    }
    return out;
}

// content of p viewed as univariate in v (gcd of the Poly coefficients)
inline Poly content_wrt(const Poly& p, std::size_t v) {
    Poly g(p.vars());
    for (const auto& [e, coeff] : as_univariate(p, v)) {
        g = g.is_zero() ? coeff : gcd_impl(g, coeff);
        if (g.is_constant() && g.constant_value() == 1) break;
    }
    return g;
}

// pseudo-remainder of f by g in variable v
inline Poly prem(const Poly& f, const Poly& g, std::size_t v) {
    auto uf = as_univariate(f, v);
    auto ug = as_univariate(g, v);
    int32_t dg = ug.rbegin()->first;
    const Poly& lcg = ug.rbegin()->second;
    Poly r = f;
    int32_t dr = r.degree(v);
    while (!r.is_zero() && (dr = r.degree(v)) >= dg) {
        auto ur = as_univariate(r, v);
        const Poly& lcr = ur.rbegin()->second;
        // r := lcg*r - lcr*g*v^(dr-dg)
        Poly t(g.vars());
        Mono shift(f.nvars(), 0);
        shift[v] = dr - dg;
        t = (g.mul_mono(shift, Int(1))) * lcr;
        r = r * lcg - t;
    }
    return r;
}

inline Poly prs_gcd(const Poly& a, const Poly& b, std::size_t v) {
    Poly ca = content_wrt(a, v), cb = content_wrt(b, v);
    Poly g_cont = gcd_impl(ca, cb);
    Poly f = *divide_exact(a, ca);
    Poly g = *divide_exact(b, cb);
    if (f.degree(v) < g.degree(v)) std::swap(f, g);
    while (true) {
        if (g.is_zero()) return primitive_positive(f * g_cont);
        if (g.degree(v) == 0) return g_cont;
        Poly r = prem(f, g, v);
        if (r.is_zero()) {
            Poly pp = *divide_exact(g, content_wrt(g, v));
            return primitive_positive(pp * g_cont);
        }
        Poly cr = content_wrt(r, v);
        f = g;
        g = *divide_exact(r, cr);
    }
}

inline Poly gcd_impl(const Poly& a, const Poly& b) {
    if (a.is_zero()) return primitive_positive(b);
    if (b.is_zero()) return primitive_positive(a);

    const std::size_t n = a.nvars();

    // split off common monomial factors
    Mono ma = a.common_mono(), mb = b.common_mono(), mg(n, 0);
    bool has_mono = false;
    for (std::size_t i = 0; i < n; ++i) {
        mg[i] = std::min(ma[i], mb[i]);
        if (ma[i] || mb[i]) has_mono = true;
    }
    Poly pa = has_mono ? a.shift_down(ma) : a;
    Poly pb = has_mono ? b.shift_down(mb) : b;

    Int ca = pa.content(), cb = pb.content();
    Int cg = gcd(ca, cb);
    if (ca != 1) pa.divide_exact(ca);
    if (cb != 1) pb.divide_exact(cb);

    Poly mono_part(a.vars());
    mono_part.add_term(mg, cg);

    if (pa.is_constant() || pb.is_constant()) return mono_part;
    if (pa == pb) return mono_part * pa;
    {
        Poly nb = -pb;
        if (pa == nb) return mono_part * primitive_positive(pa);
    }
    if (pa.size() <= 24 && divides(pa, pb)) return mono_part * primitive_positive(pa);
    if (pb.size() <= 24 && divides(pb, pa)) return mono_part * primitive_positive(pb);

    // modular probe: per-variable gcd degree bounds
    std::vector<std::size_t> active;
    for (std::size_t v = 0; v < n; ++v)
        if (pa.degree(v) > 0 && pb.degree(v) > 0) active.push_back(v);
    if (active.empty()) return mono_part;

    uint64_t state = 0x9e3779b97f4a7c15ull;
    auto next_residue = [&state]() {
        state ^= state << 13; state ^= state >> 7; state ^= state << 17;
        return static_cast<int64_t>(state % (kProbePrime - 3)) + 2;
    };
    bool maybe_common = false;
    for (int round = 0; round < 2 && !maybe_common; ++round) {
        std::vector<int64_t> pt(n);
        for (auto& x : pt) x = next_residue();
        for (std::size_t v : active) {
            auto ia = univ_image_mod(pa, v, pt);
            auto ib = univ_image_mod(pb, v, pt);
            if (static_cast<int>(ia.size()) - 1 != pa.degree(v) ||
                static_cast<int>(ib.size()) - 1 != pb.degree(v)) {
                maybe_common = true;  // unlucky point, cannot certify
                break;
            }
            if (univ_gcd_degree_mod(ia, ib) > 0) {
                maybe_common = true;
                break;
            }
        }
        if (!maybe_common) return mono_part;  // certified coprime primitive parts
        if (round == 0) maybe_common = false;  // one retry on unlucky points
    }

    if (auto g = gcdheu(pa, pb)) return mono_part * primitive_positive(*g);
    if (auto g = modular_gcd(pa, pb)) return mono_part * primitive_positive(*g);

#ifdef QPTAU_GCD_TRACE
    {
        auto dump = [](const Poly& p, const char* path) {
            FILE* f = fopen(path, "w");
            for (const auto& [m, c] : p.terms()) {
                for (auto e : m) fprintf(f, "%d ", e);
                fprintf(f, "%s\n", c.str().c_str());
            }
            fclose(f);
        };
        dump(pa, "/tmp/gcd_fail_a.txt");
        dump(pb, "/tmp/gcd_fail_b.txt");
        fprintf(stderr, "[gcd] modular failed, dumped pair (%zu x %zu terms)\n", pa.size(), pb.size());
        abort();
    }
#endif
    // variable of smallest combined degree keeps the PRS shallow
    std::size_t best = active[0];
    int32_t best_deg = INT32_MAX;
    for (std::size_t v : active) {
        int32_t d = std::min(pa.degree(v), pb.degree(v));
        if (d < best_deg) { best_deg = d; best = v; }
    }
    return mono_part * prs_gcd(pa, pb, best);
}

}  // namespace detail_gcd

inline Poly gcd(const Poly& a, const Poly& b) {
    a.check_vars(b);
    return detail_gcd::gcd_impl(a, b);
}

}  // namespace qptau
