#pragma once

// Sparse multivariate polynomials over Z with arbitrary-size integer
// coefficients. Exponents are non-negative here; Laurent monomials are
// handled one level up by the rational-function fraction.
//
// Monomial order is lexicographic in the fixed generator list; all
// iteration orders (and hence printed forms) are deterministic.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "qptau/complex.hpp"
#include "qptau/mp.hpp"

namespace qptau {

struct Vars {
    std::vector<std::string> names;
    explicit Vars(std::vector<std::string> n) : names(std::move(n)) {}
    std::size_t size() const { return names.size(); }
};
using VarsPtr = std::shared_ptr<const Vars>;

inline VarsPtr make_vars(std::vector<std::string> names) {
    return std::make_shared<const Vars>(std::move(names));
}

using Mono = std::vector<int32_t>;

struct MonoLess {
    bool operator()(const Mono& a, const Mono& b) const {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

class Poly {
  public:
    using TermMap = std::map<Mono, Int, MonoLess>;

    Poly() = default;
    explicit Poly(VarsPtr vars) : vars_(std::move(vars)) {}

    static Poly constant(VarsPtr vars, Int c) {
        Poly p(vars);
        if (c != 0) p.terms_[Mono(vars ? vars->size() : 0, 0)] = std::move(c);
        return p;
    }
    static Poly monomial(VarsPtr vars, std::size_t var, int32_t exp, Int c = Int(1)) {
        if (exp < 0) throw std::invalid_argument("Poly::monomial wants exp >= 0");
        Poly p(vars);
        if (c != 0) {
            Mono m(vars->size(), 0);
            m[var] = exp;
            p.terms_[std::move(m)] = std::move(c);
        }
        return p;
    }

    const VarsPtr& vars() const { return vars_; }
    std::size_t nvars() const { return vars_ ? vars_->size() : 0; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    bool is_constant() const {
        if (terms_.empty()) return true;
        if (terms_.size() > 1) return false;
        const Mono& m = terms_.begin()->first;
        return std::all_of(m.begin(), m.end(), [](int32_t e) { return e == 0; });
    }
    // constant term (when is_constant())
    Int constant_value() const { return terms_.empty() ? Int(0) : terms_.begin()->second; }

    int32_t degree(std::size_t var) const {
        int32_t d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
        return d;  // -1 for the zero polynomial
    }
    int32_t min_degree(std::size_t var) const {
        if (terms_.empty()) return 0;
        int32_t d = INT32_MAX;
        for (const auto& [m, c] : terms_) d = std::min(d, m[var]);
        return d;
    }

    void add_term(Mono m, const Int& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.try_emplace(std::move(m), c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Poly& operator+=(const Poly& o) {
        check_vars(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        check_vars(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    Poly operator-() const {
        Poly r(vars_);
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check_vars(b);
        Poly r(a.vars_);
        if (a.is_zero() || b.is_zero()) return r;
        Mono m(a.nvars());
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
                r.add_term(m, ca * cb);
            }
        }
        return r;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly& operator*=(const Int& c) {
        if (c == 0) { terms_.clear(); return *this; }
        for (auto& [m, v] : terms_) v *= c;
        return *this;
    }
    friend Poly operator*(Poly a, const Int& c) { return a *= c; }

    // exact division by an integer (caller guarantees divisibility)
    Poly& divide_exact(const Int& c) {
        for (auto& [m, v] : terms_) v /= c;
        return *this;
    }

    Poly mul_mono(const Mono& shift, const Int& c) const {
        Poly r(vars_);
        if (c == 0) return r;
        for (const auto& [m, v] : terms_) {
            Mono mm(m);
            for (std::size_t i = 0; i < mm.size(); ++i) mm[i] += shift[i];
            r.terms_[std::move(mm)] = v * c;
        }
        return r;
    }

    bool operator==(const Poly& o) const { return terms_ == o.terms_; }

    // gcd of all integer coefficients, non-negative
    Int content() const {
        Int g(0);
        for (const auto& [m, c] : terms_) {
            g = gcd(g, c);
            if (g == 1) break;
        }
        return g;
    }

    // coefficient of the lexicographically largest monomial
    const Int& leading_coeff() const {
        static const Int zero(0);
        return terms_.empty() ? zero : terms_.rbegin()->second;
    }
    const Mono& leading_mono() const { return terms_.rbegin()->first; }

    // componentwise minimum exponent over all terms (the common monomial factor)
    Mono common_mono() const {
        Mono m(nvars(), 0);
        if (terms_.empty()) return m;
        bool first = true;
        for (const auto& [mm, c] : terms_) {
            if (first) { m = mm; first = false; continue; }
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], mm[i]);
        }
        return m;
    }
    Poly shift_down(const Mono& m) const {
        Poly r(vars_);
        for (const auto& [mm, c] : terms_) {
            Mono t(mm);
            for (std::size_t i = 0; i < t.size(); ++i) t[i] -= m[i];
            r.terms_[std::move(t)] = c;
        }
        return r;
    }

    // substitute var := value, producing a polynomial in the remaining slots
    // (the slot stays but its exponent becomes 0)
    Poly eval_var(std::size_t var, const Int& value) const {
        Poly r(vars_);
        std::map<int32_t, Int> powers;
        powers[0] = 1;
        for (const auto& [m, c] : terms_) {
            int32_t e = m[var];
            auto it = powers.find(e);
            if (it == powers.end()) {
                Int p = pow(value, static_cast<unsigned>(e));
                it = powers.emplace(e, std::move(p)).first;
            }
            Mono mm(m);
            mm[var] = 0;
            r.add_term(std::move(mm), c * it->second);
        }
        return r;
    }

    Complex eval(const std::vector<Complex>& point) const {
        Complex acc(0);
        for (const auto& [m, c] : terms_) {
            Complex t(Real(c.str()));
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i] != 0) t *= pow(point[i], static_cast<long>(m[i]));
            acc += t;
        }
        return acc;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const Int& c = it->second;
            if (!first) os << (c > 0 ? " + " : " - ");
            else if (c < 0) os << "-";
            first = false;
            Int a = abs(c);
            bool unit = (a == 1);
            bool any_var = false;
            std::ostringstream vs;
            for (std::size_t i = 0; i < it->first.size(); ++i) {
                int32_t e = it->first[i];
                if (e == 0) continue;
                if (any_var) vs << "*";
                any_var = true;
                vs << vars_->names[i];
                if (e != 1) vs << "^" << e;
            }
            if (!unit || !any_var) {
                os << a.str();
                if (any_var) os << "*";
            }
            os << vs.str();
        }
        return os.str();
    }

    void check_vars(const Poly& o) const {
        if (vars_ != o.vars_) {
            if (!vars_ || !o.vars_ || vars_->names != o.vars_->names) throw BackendMismatch();
        }
    }

  private:
    VarsPtr vars_;
    TermMap terms_;
};

}  // namespace qptau
