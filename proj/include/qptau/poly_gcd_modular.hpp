#pragma once

// Dense modular multivariate gcd (Brown-style): univariate gcd images mod a
// word-sized prime, Newton interpolation variable by variable, CRT across
// primes, trial-division verification over Z. This is the workhorse for
// gcds the heuristic cannot settle.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include <boost/multiprecision/miller_rabin.hpp>

#include "qptau/polynomial.hpp"

namespace qptau {
namespace detail_modgcd {

inline int64_t mulmodp(int64_t a, int64_t b, int64_t p) {
    return static_cast<int64_t>((static_cast<__int128>(a) * b) % p);
}
inline int64_t powmodp(int64_t a, int64_t e, int64_t p) {
    int64_t r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = mulmodp(r, a, p);
        a = mulmodp(a, a, p);
        e >>= 1;
    }
    return r;
}
inline int64_t invmodp(int64_t a, int64_t p) { return powmodp(a, p - 2, p); }

// deterministic stream of ~61-bit primes
inline const std::vector<int64_t>& prime_pool() {
    static std::vector<int64_t> primes = [] {
        std::vector<int64_t> out;
        Int c = (Int(1) << 61) - 1;
        while (out.size() < 24) {
            if (boost::multiprecision::miller_rabin_test(c, 32)) out.push_back(c.convert_to<int64_t>());
            c -= 2;
        }
        return out;
    }();
    return primes;
}

struct PolyZp {
    std::size_t nvars = 0;
    std::map<Mono, int64_t, MonoLess> t;

    bool zero() const { return t.empty(); }
    void add(const Mono& m, int64_t v, int64_t p) {
        auto it = t.find(m);
        if (it == t.end()) {
            if (v) t.emplace(m, v);
        } else {
            it->second = (it->second + v) % p;
            if (it->second < 0) it->second += p;
            if (!it->second) t.erase(it);
        }
    }
    int32_t degree(std::size_t v) const {
        int32_t d = -1;
        for (const auto& [m, c] : t) d = std::max(d, m[v]);
        return d;
    }
};

inline PolyZp reduce_mod(const Poly& a, int64_t p) {
    PolyZp r;
    r.nvars = a.nvars();
    for (const auto& [m, c] : a.terms()) {
        Int v = c % p;
        if (v < 0) v += p;
        int64_t vv = v.convert_to<int64_t>();
        if (vv) r.t.emplace(m, vv);
    }
    return r;
}

inline PolyZp eval_var_zp(const PolyZp& a, std::size_t v, int64_t x, int64_t p) {
    PolyZp r;
    r.nvars = a.nvars;
    std::map<int32_t, int64_t> pw{{0, 1}};
    for (const auto& [m, c] : a.t) {
        auto it = pw.find(m[v]);
        if (it == pw.end()) it = pw.emplace(m[v], powmodp(x, m[v], p)).first;
        Mono mm(m);
        mm[v] = 0;
        r.add(mm, mulmodp(c, it->second, p), p);
    }
    return r;
}

// a must involve only variable v
inline std::vector<int64_t> to_univ(const PolyZp& a, std::size_t v) {
    std::vector<int64_t> f(static_cast<std::size_t>(a.degree(v)) + 1, 0);
    for (const auto& [m, c] : a.t) f[static_cast<std::size_t>(m[v])] = c;
    return f;
}

inline void univ_trim(std::vector<int64_t>& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline std::vector<int64_t> univ_gcd_monic(std::vector<int64_t> f, std::vector<int64_t> g,
                                           int64_t p) {
    univ_trim(f);
    univ_trim(g);
    while (!g.empty()) {
        int64_t inv = invmodp(g.back(), p);
        while (f.size() >= g.size()) {
            int64_t c = mulmodp(f.back(), inv, p);
            std::size_t off = f.size() - g.size();
            for (std::size_t i = 0; i < g.size(); ++i) {
                f[off + i] = (f[off + i] - mulmodp(c, g[i], p)) % p;
                if (f[off + i] < 0) f[off + i] += p;
            }
            univ_trim(f);
            if (f.empty()) break;
        }
        std::swap(f, g);
    }
    if (!f.empty()) {
        int64_t inv = invmodp(f.back(), p);
        for (auto& c : f) c = mulmodp(c, inv, p);
    }
    return f;
}

struct UnluckyPoint {};   // image degree above the running bound: skip point
struct DegreeDropped {};  // image degree below the bound: restart with it

class ZpGcdBuilder {
  public:
    ZpGcdBuilder(const PolyZp& a, const PolyZp& b, std::size_t main_var,
                 std::vector<std::size_t> interp_vars, std::vector<int> npoints,
                 const PolyZp& gamma, int64_t p)
        : main_(main_var), ivars_(std::move(interp_vars)), np_(std::move(npoints)),
          gamma_(gamma), p_(p), a_(a), b_(b) {}

    // candidate with lc_main = gamma, or nothing if degrees collapsed
    std::optional<PolyZp> run(int& gcd_degree) {
        gcd_degree_ = gcd_degree;
        for (int attempt = 0; attempt < 40; ++attempt) {
            try {
                PolyZp h = build(ivars_.size(), a_, b_, gamma_);
                gcd_degree = gcd_degree_;
                return h;
            } catch (const DegreeDropped&) {
#ifdef QPTAU_GCD_TRACE
                fprintf(stderr, "[zp] degree dropped to %d\n", gcd_degree_);
#endif
                continue;  // gcd_degree_ was lowered; rebuild everything
            } catch (const UnluckyPoint&) {
#ifdef QPTAU_GCD_TRACE
                fprintf(stderr, "[zp] unlucky point (deg %d), shifting\n", gcd_degree_);
#endif
                shift_ += 1000003;  // move the whole evaluation grid
                continue;
            }
        }
        return std::nullopt;
    }

  private:
    std::size_t main_;
    std::vector<std::size_t> ivars_;
    std::vector<int> np_;
    PolyZp gamma_;
    int64_t p_;
    const PolyZp& a_;
    const PolyZp& b_;
    int gcd_degree_ = -1;
    int64_t shift_ = 0;

    PolyZp build(std::size_t k, const PolyZp& A, const PolyZp& B, const PolyZp& gam) {
        if (A.zero() || B.zero()) throw UnluckyPoint{};
        if (k == 0) {
            auto f = to_univ(A, main_), g = to_univ(B, main_);
            auto h = univ_gcd_monic(f, g, p_);
            int d = static_cast<int>(h.size()) - 1;
            if (gcd_degree_ < 0) gcd_degree_ = d;
            if (d > gcd_degree_) throw UnluckyPoint{};
            if (d < gcd_degree_) {
                gcd_degree_ = d;
                throw DegreeDropped{};
            }
            int64_t scale = gam.zero() ? 0 : gam.t.begin()->second;
            if (!scale) throw UnluckyPoint{};
            PolyZp r;
            r.nvars = A.nvars;
            for (std::size_t i = 0; i < h.size(); ++i) {
                if (!h[i]) continue;
                Mono m(A.nvars, 0);
                m[main_] = static_cast<int32_t>(i);
                r.t.emplace(std::move(m), mulmodp(h[i], scale, p_));
            }
            return r;
        }
        std::size_t w = ivars_[k - 1];
        int need = np_[k - 1];
        std::vector<int64_t> pts;
        std::vector<PolyZp> vals;
        // independent pseudo-random points per variable; equal values across
        // variables make structured monomial factors collide systematically
        uint64_t seed = 0x9e3779b97f4a7c15ull ^ (static_cast<uint64_t>(w + 1) << 32) ^
                        static_cast<uint64_t>(shift_);
        auto next_point = [&seed, this]() {
            seed += 0x9e3779b97f4a7c15ull;
            uint64_t z = seed;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
            z ^= z >> 31;
            return static_cast<int64_t>(z % static_cast<uint64_t>(p_ - 3)) + 2;
        };
        while (static_cast<int>(pts.size()) < need) {
            int64_t x = next_point();
            if (std::find(pts.begin(), pts.end(), x) != pts.end()) continue;
            PolyZp Ax = eval_var_zp(A, w, x, p_);
            PolyZp Bx = eval_var_zp(B, w, x, p_);
            // a vanished leading coefficient makes the image useless
            if (Ax.degree(main_) != A.degree(main_) || Bx.degree(main_) != B.degree(main_))
                continue;
            PolyZp gx = eval_var_zp(gam, w, x, p_);
            vals.push_back(build(k - 1, Ax, Bx, gx));
            pts.push_back(x);
        }
        return newton_interpolate(pts, vals, w);
    }

    PolyZp newton_interpolate(const std::vector<int64_t>& pts, std::vector<PolyZp>& vals,
                              std::size_t w) {
        const std::size_t n = pts.size();
        std::vector<PolyZp> c(n);
        c[0] = vals[0];
        for (std::size_t j = 1; j < n; ++j) {
            PolyZp acc = vals[j];
            for (std::size_t i = 0; i < j; ++i) {
                // acc = (acc - c[i]) / (t_j - t_i)
                PolyZp diff = acc;
                for (const auto& [m, v] : c[i].t) diff.add(m, p_ - v, p_);
                int64_t den = (pts[j] - pts[i]) % p_;
                if (den < 0) den += p_;
                if (!den) throw UnluckyPoint{};
                int64_t inv = invmodp(den, p_);
                PolyZp scaled;
                scaled.nvars = diff.nvars;
                for (const auto& [m, v] : diff.t) scaled.t.emplace(m, mulmodp(v, inv, p_));
                acc = std::move(scaled);
            }
            c[j] = std::move(acc);
        }
        // expand c_0 + (w-t_0)(c_1 + (w-t_1)(...))
        PolyZp res = c[n - 1];
        for (std::size_t j = n - 1; j-- > 0;) {
            PolyZp next;
            next.nvars = res.nvars;
            int64_t neg_t = (p_ - pts[j] % p_) % p_;
            for (const auto& [m, v] : res.t) {
                Mono up(m);
                up[w] += 1;
                next.add(up, v, p_);
                if (neg_t) next.add(m, mulmodp(v, neg_t, p_), p_);
            }
            for (const auto& [m, v] : c[j].t) next.add(m, v, p_);
            res = std::move(next);
        }
        return res;
    }
};

// symmetric lift into (-p/2, p/2], then CRT accumulate
inline Poly lift_symmetric(const PolyZp& a, VarsPtr vars, int64_t p) {
    Poly r(vars);
    int64_t half = p / 2;
    for (const auto& [m, c] : a.t) r.add_term(m, Int(c > half ? c - p : c));
    return r;
}

}  // namespace detail_modgcd
}  // namespace qptau
