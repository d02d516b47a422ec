#pragma once

// Truncated graded power series in zeta = Z^(1/4) over a generic scalar
// backend. A series is exact for all retained exponents <= order; absent
// exponents are zero. Arithmetic truncates to the minimum operand order.
// Integer powers of Z live on exponents divisible by 4, half-integer
// powers on multiples of 2.

#include <limits>
#include <map>
#include <vector>

#include "qptau/mp.hpp"

namespace qptau {

// order value for factors that are polynomials known exactly at all orders
constexpr int kExactOrder = std::numeric_limits<int>::max() / 4;

template <class S>
class GradedSeries {
  public:
    GradedSeries() : order_(kExactOrder) {}
    explicit GradedSeries(int order) : order_(order) {}

    static GradedSeries one(int order = kExactOrder) {
        GradedSeries f(order);
        f.set(0, S(1));
        return f;
    }
    static GradedSeries monomial(int exp, S c, int order = kExactOrder) {
        GradedSeries f(order);
        f.set(exp, std::move(c));
        return f;
    }

    int order() const { return order_; }
    const std::map<int, S>& coefficients() const { return c_; }
    bool empty() const { return c_.empty(); }

    void set(int exp, S v) {
        if (exp > order_) return;
        if (is_zero_scalar(v)) c_.erase(exp);
        else c_[exp] = std::move(v);
    }
    void add(int exp, const S& v) {
        if (exp > order_) return;
        auto it = c_.find(exp);
        if (it == c_.end()) {
            if (!is_zero_scalar(v)) c_[exp] = v;
        } else {
            it->second += v;
            if (is_zero_scalar(it->second)) c_.erase(it);
        }
    }
    // zero for absent exponents
    S get(int exp) const {
        auto it = c_.find(exp);
        return it == c_.end() ? S(0) : it->second;
    }

    GradedSeries truncated(int order) const {
        GradedSeries r(std::min(order, order_));
        for (const auto& [e, v] : c_)
            if (e <= r.order_) r.c_[e] = v;
        return r;
    }

    // declare the series exact through `order` (drops higher coefficients):
    // for terms whose support provably cannot reach beyond what was computed
    GradedSeries with_order(int order) const {
        GradedSeries r(order);
        for (const auto& [e, v] : c_)
            if (e <= order) r.c_[e] = v;
        return r;
    }

    friend GradedSeries operator+(const GradedSeries& a, const GradedSeries& b) {
        GradedSeries r = a.truncated(b.order_);
        for (const auto& [e, v] : b.c_) r.add(e, v);
        return r;
    }
    friend GradedSeries operator-(const GradedSeries& a, const GradedSeries& b) {
        GradedSeries r = a.truncated(b.order_);
        for (const auto& [e, v] : b.c_) r.add(e, S(0) - v);
        return r;
    }
    friend GradedSeries operator*(const GradedSeries& a, const GradedSeries& b) {
        GradedSeries r(std::min(a.order_, b.order_));
        for (const auto& [ea, va] : a.c_) {
            if (ea > r.order_) break;
            for (const auto& [eb, vb] : b.c_) {
                if (ea + eb > r.order_) break;
                r.add(ea + eb, va * vb);
            }
        }
        return r;
    }
    GradedSeries& operator+=(const GradedSeries& o) { return *this = *this + o; }
    GradedSeries& operator-=(const GradedSeries& o) { return *this = *this - o; }
    GradedSeries& operator*=(const GradedSeries& o) { return *this = *this * o; }

    // multiply by c * zeta^exp; the truncation window shifts along
    GradedSeries mul_monomial(int exp, const S& c) const {
        GradedSeries r(order_ >= kExactOrder ? order_ : order_ + exp);
        for (const auto& [e, v] : c_) r.c_[e + exp] = v * c;
        return r;
    }

    GradedSeries scale(const S& c) const {
        GradedSeries r(order_);
        for (const auto& [e, v] : c_) {
            S t = v * c;
            if (!is_zero_scalar(t)) r.c_[e] = std::move(t);
        }
        return r;
    }

  private:
    int order_;
    std::map<int, S> c_;

    static bool is_zero_scalar(const S& v) { return v.is_zero(); }
};

// Z -> c^4 Z substitution; c is the scalar image of the substitution's
// quarter power (e.g. Z -> qZ passes c = q^(1/4)), so the coefficient at
// zeta^k picks up c^k.
template <class S>
GradedSeries<S> series_scale_z(const GradedSeries<S>& f, const S& quarter_power) {
    GradedSeries<S> r(f.order());
    std::map<int, S> powers;
    for (const auto& [e, v] : f.coefficients()) {
        auto it = powers.find(e);
        if (it == powers.end()) it = powers.emplace(e, pow(quarter_power, e)).first;
        S t = v * it->second;
        r.set(e, std::move(t));
    }
    return r;
}

template <class S>
struct SeriesViolation {
    int exponent;
    S coefficient;
};

// Exact backends: nonzero retained coefficients. Numeric backends use the
// overload below with a tolerance.
template <class S>
std::vector<SeriesViolation<S>> series_assert_zero(const GradedSeries<S>& f) {
    std::vector<SeriesViolation<S>> v;
    for (const auto& [e, c] : f.coefficients())
        if (!c.is_zero()) v.push_back({e, c});
    return v;
}

template <class S, class AbsFn>
std::vector<SeriesViolation<S>> series_assert_zero(const GradedSeries<S>& f, const Real& tol,
                                                   AbsFn&& absfn) {
    std::vector<SeriesViolation<S>> v;
    for (const auto& [e, c] : f.coefficients())
        if (absfn(c) > tol) v.push_back({e, c});
    return v;
}

}  // namespace qptau
