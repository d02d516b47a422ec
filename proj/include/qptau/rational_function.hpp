#pragma once

// Normalized rational functions over Z in a fixed generator list: the exact
// scalar backend. Values are canonical: gcd(num, den) is a unit, the joint
// integer content is reduced, and the denominator's lexicographically
// leading coefficient is positive. Negative generator exponents are
// accepted on input and cleared into the fraction.

#include <map>
#include <string>
#include <utility>

#include "qptau/poly_gcd.hpp"

namespace qptau {

class RatFn {
  public:
    RatFn() = default;  // the (context-free) zero value

    // context-free integer constant; adopts the other operand's generators
    // when it first meets an attached value
    RatFn(int c) : RatFn(from_int(nullptr, Int(c))) {}

    RatFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
        num_.check_vars(den_);
        normalize_full();
    }

    static RatFn from_int(VarsPtr vars, Int c) {
        RatFn r;
        r.num_ = Poly::constant(vars, std::move(c));
        r.den_ = Poly::constant(vars, 1);
        return r;
    }
    static RatFn from_rat(VarsPtr vars, const Rat& q) {
        RatFn r(Poly::constant(vars, numerator(q)), Poly::constant(vars, denominator(q)));
        return r;
    }
    // c * g_var^exp, Laurent exponents allowed
    static RatFn mono(VarsPtr vars, std::size_t var, int32_t exp, Int c = Int(1)) {
        RatFn r;
        if (exp >= 0) {
            r.num_ = Poly::monomial(vars, var, exp, std::move(c));
            r.den_ = Poly::constant(vars, 1);
        } else {
            r.num_ = Poly::constant(vars, std::move(c));
            r.den_ = Poly::monomial(vars, var, -exp);
        }
        r.normalize_sign_only();
        return r;
    }
    static RatFn var(VarsPtr vars, std::size_t v) { return mono(vars, v, 1); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    VarsPtr vars() const { return num_.vars(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == den_; }
    bool attached() const { return num_.vars() != nullptr; }

    RatFn operator-() const {
        RatFn r(*this);
        r.num_ = -r.num_;
        return r;
    }

    friend RatFn operator+(const RatFn& x, const RatFn& y) {
        auto [a, b] = RatFn::aligned(x, y);
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        RatFn r;
        Poly g = gcd(a.den_, b.den_);
        if (g.is_constant() && g.constant_value() == 1) {
            r.num_ = a.num_ * b.den_ + b.num_ * a.den_;
            r.den_ = a.den_ * b.den_;
        } else {
            Poly db = *divide_exact(b.den_, g);
            Poly da = *divide_exact(a.den_, g);
            r.num_ = a.num_ * db + b.num_ * da;
            r.den_ = a.den_ * db;
        }
        r.normalize_full();
        return r;
    }
    friend RatFn operator-(const RatFn& x, const RatFn& y) { return x + (-y); }

    friend RatFn operator*(const RatFn& x, const RatFn& y) {
        auto [a, b] = RatFn::aligned(x, y);
        if (a.is_zero() || b.is_zero()) return RatFn::from_int(a.vars() ? a.vars() : b.vars(), 0);
        Poly g1 = gcd(a.num_, b.den_);
        Poly g2 = gcd(b.num_, a.den_);
        RatFn r;
        r.num_ = *divide_exact(a.num_, g1) * *divide_exact(b.num_, g2);
        r.den_ = *divide_exact(a.den_, g2) * *divide_exact(b.den_, g1);
        r.normalize_sign_only();
        return r;
    }

    RatFn inverse() const {
        if (is_zero()) throw ZeroDenominator();
        RatFn r;
        r.num_ = den_;
        r.den_ = num_;
        r.normalize_sign_only();
        return r;
    }
    friend RatFn operator/(const RatFn& x, const RatFn& y) { return x * y.inverse(); }

    RatFn& operator+=(const RatFn& o) { return *this = *this + o; }
    RatFn& operator-=(const RatFn& o) { return *this = *this - o; }
    RatFn& operator*=(const RatFn& o) { return *this = *this * o; }
    RatFn& operator/=(const RatFn& o) { return *this = *this / o; }

    friend bool operator==(const RatFn& x, const RatFn& y) {
        auto [a, b] = RatFn::aligned(x, y);
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFn& x, const RatFn& y) { return !(x == y); }

    Complex eval(const std::map<std::string, Complex>& assignment) const {
        std::vector<Complex> pt = assignment_vector(assignment);
        Complex d = den_.eval(pt);
        Real scale = abs(d);
        Real floor = Real("1e-" + std::to_string(working_digits() - 8));
        if (scale < floor) throw DenominatorVanishes();
        return num_.eval(pt) / d;
    }

    std::string str() const {
        if (!attached()) return "0";
        if (den_.is_constant() && den_.constant_value() == 1) return num_.str();
        std::string ns = num_.size() > 1 ? "(" + num_.str() + ")" : num_.str();
        std::string ds = den_.size() > 1 ? "(" + den_.str() + ")" : den_.str();
        return ns + "/" + ds;
    }

  private:
    Poly num_, den_;  // default-constructed pair means a context-free 0

    std::vector<Complex> assignment_vector(const std::map<std::string, Complex>& a) const {
        const auto& names = vars()->names;
        std::vector<Complex> pt;
        pt.reserve(names.size());
        for (const auto& n : names) {
            auto it = a.find(n);
            if (it == a.end()) throw std::invalid_argument("assignment misses generator " + n);
            pt.push_back(it->second);
        }
        return pt;
    }

    static RatFn lifted(const RatFn& constant, VarsPtr vars) {
        RatFn r;
        r.num_ = Poly::constant(vars, constant.num_.constant_value());
        r.den_ = Poly::constant(vars, constant.den_.constant_value());
        return r;
    }

    static std::pair<RatFn, RatFn> aligned(const RatFn& x, const RatFn& y) {
        if (x.attached() == y.attached()) {
            if (x.attached()) x.num_.check_vars(y.num_);
            return {x, y};
        }
        if (!x.attached()) return {lifted(x, y.vars()), y};
        return {x, lifted(y, x.vars())};
    }

    void normalize_full() {
        if (den_.is_zero()) throw ZeroDenominator();
        if (num_.is_zero()) {
            den_ = Poly::constant(den_.vars(), 1);
            return;
        }
        Poly g = gcd(num_, den_);
        if (!(g.is_constant() && g.constant_value() == 1)) {
            num_ = *divide_exact(num_, g);
            den_ = *divide_exact(den_, g);
        }
        normalize_sign_only();
    }

    // operands already coprime; fix sign and joint content
    void normalize_sign_only() {
        if (den_.is_zero()) throw ZeroDenominator();
        if (num_.is_zero()) {
            den_ = Poly::constant(den_.vars(), 1);
            return;
        }
        Int c = gcd(num_.content(), den_.content());
        if (den_.leading_coeff() < 0) c = -c;
        if (c != 1) {
            num_.divide_exact(c);
            den_.divide_exact(c);
        }
    }
};

inline RatFn pow(const RatFn& x, long n) {
    VarsPtr ctx = x.vars();
    RatFn acc = RatFn::from_int(ctx, 1);
    if (n == 0) return acc;
    RatFn base = n < 0 ? x.inverse() : x;
    unsigned long e = n < 0 ? -static_cast<unsigned long>(n) : static_cast<unsigned long>(n);
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

// The spec-level normalization entry point: canonical reduced fraction.
inline RatFn exact_normalize(Poly num, Poly den) { return RatFn(std::move(num), std::move(den)); }

}  // namespace qptau
