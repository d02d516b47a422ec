#pragma once

// Arbitrary-precision complex arithmetic on top of MPFR reals, with the
// elementary functions needed by the q-special-function and tau modules.
// All multivalued functions take principal branches; modules that need a
// different sheet thread explicit logarithms instead of relying on branch
// tricks here.

#include <ostream>
#include <string>

#include "qptau/mp.hpp"

namespace qptau {

struct Complex {
    Real re, im;

    Complex() : re(0), im(0) {}
    Complex(const Real& r) : re(r), im(0) {}
    Complex(const Real& r, const Real& i) : re(r), im(i) {}
    Complex(double r) : re(r), im(0) {}
    Complex(double r, double i) : re(r), im(i) {}
    Complex(int n) : re(n), im(0) {}
    Complex(long n) : re(n), im(0) {}

    static Complex i() { return Complex(Real(0), Real(1)); }

    Complex operator-() const { return Complex(-re, -im); }

    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o) {
        Real r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }
    Complex& operator/=(const Complex& o);

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

inline Complex operator+(Complex a, const Complex& b) { return a += b; }
inline Complex operator-(Complex a, const Complex& b) { return a -= b; }
inline Complex operator*(Complex a, const Complex& b) { return a *= b; }

inline Complex conj(const Complex& z) { return Complex(z.re, -z.im); }
inline Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
inline Real abs(const Complex& z) { return sqrt(norm(z)); }

inline Complex& Complex::operator/=(const Complex& o) {
    Real d = norm(o);
    if (d.is_zero()) throw std::domain_error("complex division by zero");
    Real r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = r;
    return *this;
}
inline Complex operator/(Complex a, const Complex& b) { return a /= b; }

inline bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
inline bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }

inline Real const_pi() {
    return atan2(Real(0), Real(-1));
}

inline Complex exp(const Complex& z) {
    Real m = exp(z.re);
    return Complex(m * cos(z.im), m * sin(z.im));
}

inline Real arg(const Complex& z) { return atan2(z.im, z.re); }

// principal logarithm, Im in (-pi, pi]
inline Complex log(const Complex& z) {
    if (z.is_zero()) throw std::domain_error("log of zero");
    return Complex(log(abs(z)), arg(z));
}

inline Complex sqrt(const Complex& z) {
    if (z.is_zero()) return Complex();
    Real m = sqrt(abs(z));
    Real a = arg(z) / 2;
    return Complex(m * cos(a), m * sin(a));
}

inline Complex pow(const Complex& z, long n) {
    if (n == 0) return Complex(1);
    if (n < 0) return Complex(1) / pow(z, -n);
    Complex base = z, acc(1);
    unsigned long e = static_cast<unsigned long>(n);
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

inline Complex pow(const Complex& z, const Complex& w) {
    if (z.is_zero()) {
        if (w.is_zero()) return Complex(1);
        return Complex();
    }
    return exp(w * log(z));
}

inline Complex sin(const Complex& z) {
    return Complex(sin(z.re) * cosh(z.im), cos(z.re) * sinh(z.im));
}
inline Complex cos(const Complex& z) {
    return Complex(cos(z.re) * cosh(z.im), -sin(z.re) * sinh(z.im));
}

inline std::string to_string(const Real& x, int digits = 0) {
    if (digits <= 0) digits = working_digits();
    return x.str(digits);
}

inline std::string to_string(const Complex& z, int digits = 0) {
    std::string s = to_string(z.re, digits);
    const std::string t = to_string(z.im, digits);
    if (!t.empty() && t[0] == '-')
        s += " - " + t.substr(1) + "*I";
    else
        s += " + " + t + "*I";
    return s;
}

inline std::ostream& operator<<(std::ostream& os, const Complex& z) {
    return os << to_string(z, 12);
}

}  // namespace qptau
