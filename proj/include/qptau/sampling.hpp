#pragma once

// Seeded random samplers shared by the randomized identity checks. All
// randomness flows through one engine type so that reports reproduce
// byte-identically from (seed, digits).

#include <random>

#include "qptau/complex.hpp"
#include "qptau/mp.hpp"

namespace qptau {

class Sampler {
  public:
    explicit Sampler(uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) {
        std::uniform_real_distribution<double> d(lo, hi);
        return d(rng_);
    }
    long integer(long lo, long hi) {
        std::uniform_int_distribution<long> d(lo, hi);
        return d(rng_);
    }

    // complex with modulus in [rlo, rhi], arbitrary phase
    Complex annulus(double rlo, double rhi) {
        double r = uniform(rlo, rhi);
        double ph = uniform(0.0, 6.283185307179586);
        return Complex(r * std::cos(ph), r * std::sin(ph));
    }

    // nonzero rational with numerator/denominator magnitudes <= bound
    Rat rational(long bound = 1000) {
        long num = 0;
        while (num == 0) num = integer(-bound, bound);
        return Rat(num) / integer(1, bound);
    }

    std::mt19937_64& engine() { return rng_; }

  private:
    std::mt19937_64 rng_;
};

}  // namespace qptau
