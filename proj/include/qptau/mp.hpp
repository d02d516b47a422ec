#pragma once

// Multiprecision number types and global working-precision configuration.
//
// Exact arithmetic uses GMP integers/rationals, numeric arithmetic uses
// MPFR reals at a runtime-selectable decimal precision (default 50 digits).

#include <stdexcept>
#include <string>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace qptau {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                            boost::multiprecision::et_off>;

namespace detail {
inline int& working_digits_ref() {
    static int digits = 0;
    return digits;
}
}  // namespace detail

// Sets the working precision in decimal digits for all Real/Complex
// arithmetic created afterwards. A guard margin is added internally so that
// residual checks at 10^-(digits-10) have headroom.
inline void set_working_digits(int digits) {
    if (digits < 10 || digits > 10000) throw std::invalid_argument("working digits out of range");
    detail::working_digits_ref() = digits;
    Real::default_precision(static_cast<unsigned>(digits) + 12);
}

inline int working_digits() {
    if (detail::working_digits_ref() == 0) set_working_digits(50);
    return detail::working_digits_ref();
}

// force the default precision before main() so early Real constructions in
// any translation unit see 50 digits
inline const int kDefaultPrecisionInit = working_digits();

// ---- error taxonomy (names follow the operation contracts) ----

struct ZeroDenominator : std::domain_error {
    ZeroDenominator() : std::domain_error("zero polynomial denominator") {}
};
struct DenominatorVanishes : std::domain_error {
    DenominatorVanishes() : std::domain_error("denominator vanishes at the given assignment") {}
};
struct BackendMismatch : std::invalid_argument {
    BackendMismatch() : std::invalid_argument("operands use different scalar backends/generators") {}
};
struct NegativeSize : std::invalid_argument {
    NegativeSize() : std::invalid_argument("partition size must be non-negative") {}
};
struct PoleAtResonance : std::domain_error {
    PoleAtResonance() : std::domain_error("u hits a resonance q^n") {}
};
struct ResonantU : PoleAtResonance {};
struct ResonantSigma : std::domain_error {
    ResonantSigma() : std::domain_error("2*sigma is an integer (resonant)") {}
};
struct UnitModulusBase : std::domain_error {
    UnitModulusBase() : std::domain_error("Pochhammer base has unit modulus") {}
};
struct PoleHit : std::domain_error {
    PoleHit() : std::domain_error("evaluation hit a pole") {}
};
struct NoConvergence : std::runtime_error {
    NoConvergence() : std::runtime_error("series cutoff growth did not stabilize") {}
};
struct ZeroTau : std::domain_error {
    ZeroTau() : std::domain_error("tau function vanishes, F/G undefined") {}
};
struct SingularLocus : std::domain_error {
    SingularLocus() : std::domain_error("transformation denominator vanished at sample") {}
};

}  // namespace qptau
