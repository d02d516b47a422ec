#pragma once

// Nekrasov factors and the Whittaker q-conformal block series
//
//   F(u; q1, q2 | Z) = sum over pairs (la1, la2) of
//       Z^(|la1|+|la2|) / prod_{i,j} N_{la_i, la_j}(u_i/u_j; q1, q2),
//
//   N_{la,mu}(u; q1, q2) = prod_{s in la} (1 - u q2^(-a_mu(s)-1) q1^(l_la(s)))
//                        * prod_{s in mu} (1 - u q2^(a_la(s)) q1^(-l_mu(s)-1)),
//
// plus the parity-filtered lozenge variant and the 4d (c = 1 irregular
// Virasoro) limit block. Everything is generic over the scalar backend;
// exact callers pass symbolic monomials, numeric callers complex values.

#include <map>
#include <vector>

#include "qptau/partitions.hpp"
#include "qptau/series.hpp"

namespace qptau {

namespace detail_blocks {

// power cache so that repeated small exponents cost one multiplication
template <class S>
class PowCache {
  public:
    explicit PowCache(S base) : base_(std::move(base)) {}
    const S& operator()(long e) {
        auto it = cache_.find(e);
        if (it == cache_.end()) it = cache_.emplace(e, pow(base_, e)).first;
        return it->second;
    }

  private:
    S base_;
    std::map<long, S> cache_;
};

}  // namespace detail_blocks

template <class S>
S nekrasov_factor(const Partition& la, const Partition& mu, const S& u,
                  detail_blocks::PowCache<S>& q1p, detail_blocks::PowCache<S>& q2p) {
    S acc(1);
    la.for_cells([&](int i, int j) {
        acc *= S(1) - u * q2p(-mu.arm(i, j) - 1) * q1p(la.leg(i, j));
    });
    mu.for_cells([&](int i, int j) {
        acc *= S(1) - u * q2p(la.arm(i, j)) * q1p(-mu.leg(i, j) - 1);
    });
    return acc;
}

template <class S>
S nekrasov_factor(const Partition& la, const Partition& mu, const S& u, const S& q1, const S& q2) {
    detail_blocks::PowCache<S> q1p(q1), q2p(q2);
    return nekrasov_factor(la, mu, u, q1p, q2p);
}

// lozenge variant: cells restricted to a_mu(s)+l_la(s)+1 = 0 mod 2 (and the
// mirrored rule on the second product)
template <class S>
S nekrasov_factor_lozenge(const Partition& la, const Partition& mu, const S& u,
                          detail_blocks::PowCache<S>& q1p, detail_blocks::PowCache<S>& q2p) {
    S acc(1);
    la.for_cells([&](int i, int j) {
        int a = mu.arm(i, j), l = la.leg(i, j);
        if ((a + l + 1) % 2 == 0) acc *= S(1) - u * q2p(-a - 1) * q1p(l);
    });
    mu.for_cells([&](int i, int j) {
        int a = la.arm(i, j), l = mu.leg(i, j);
        if ((a + l + 1) % 2 == 0) acc *= S(1) - u * q2p(a) * q1p(-l - 1);
    });
    return acc;
}

template <class S>
S nekrasov_factor_lozenge(const Partition& la, const Partition& mu, const S& u, const S& q1,
                          const S& q2) {
    detail_blocks::PowCache<S> q1p(q1), q2p(q2);
    return nekrasov_factor_lozenge(la, mu, u, q1p, q2p);
}

namespace detail_blocks {

template <class S, class NFactor>
GradedSeries<S> block_sum(const S& u, const S& q1, const S& q2, int z_order, int zeta_step,
                          NFactor&& nf) {
    PowCache<S> q1p(q1), q2p(q2);
    S uinv = S(1) / u;
    GradedSeries<S> out(zeta_step * z_order);

    // diagonal factors N_{la,la}(1) are shared between pair terms
    std::vector<std::vector<S>> diag(static_cast<std::size_t>(z_order) + 1);
    for (int n = 0; n <= z_order; ++n) {
        const auto& ps = partitions_cached(n);
        diag[static_cast<std::size_t>(n)].reserve(ps.size());
        for (const auto& la : ps)
            diag[static_cast<std::size_t>(n)].push_back(nf(la, la, S(1), q1p, q2p));
    }

    for (int n = 0; n <= z_order; ++n) {
        S coeff(0);
        for (int n1 = 0; n1 <= n; ++n1) {
            const auto& ps1 = partitions_cached(n1);
            const auto& ps2 = partitions_cached(n - n1);
            for (std::size_t i1 = 0; i1 < ps1.size(); ++i1) {
                for (std::size_t i2 = 0; i2 < ps2.size(); ++i2) {
                    S den = diag[static_cast<std::size_t>(n1)][i1] *
                            diag[static_cast<std::size_t>(n - n1)][i2] *
                            nf(ps1[i1], ps2[i2], u, q1p, q2p) *
                            nf(ps2[i2], ps1[i1], uinv, q1p, q2p);
                    if (den.is_zero()) throw PoleAtResonance();
                    coeff += S(1) / den;
                }
            }
        }
        out.set(zeta_step * n, std::move(coeff));
    }
    return out;
}

}  // namespace detail_blocks

// series in zeta with support on multiples of 4 (integer Z powers), exact
// through Z^z_order
template <class S>
GradedSeries<S> conformal_block(const S& u, const S& q1, const S& q2, int z_order) {
    if (z_order < 0) throw std::invalid_argument("block order must be >= 0");
    return detail_blocks::block_sum(
        u, q1, q2, z_order, 4,
        [](const Partition& la, const Partition& mu, const S& v, auto& p1, auto& p2) {
            return nekrasov_factor(la, mu, v, p1, p2);
        });
}

// series in Z^(1/2): support on zeta multiples of 2, exact through
// Z^(half_order/2); half_order counts Z^(1/2) steps
template <class S>
GradedSeries<S> conformal_block_lozenge(const S& u, const S& q1, const S& q2, int half_order) {
    if (half_order < 0) throw std::invalid_argument("block order must be >= 0");
    return detail_blocks::block_sum(
        u, q1, q2, half_order, 2,
        [](const Partition& la, const Partition& mu, const S& v, auto& p1, auto& p2) {
            return nekrasov_factor_lozenge(la, mu, v, p1, p2);
        });
}

// ---- 4d limit ----
//
// hbar -> 0 of the q-factor at q1 = q^-1, q2 = q, u = q^(2 sigma):
//   1 - q^(2s - a_mu - l_la - 1) ~ -hbar (2s - (a_mu(s)+l_la(s)+1))   (s in la)
//   1 - q^(2s + a_la + l_mu + 1) ~ -hbar (2s + (a_la(s)+l_mu(s)+1))   (s in mu)
// The (-hbar) powers cancel against Z = hbar^4 z. The second product uses
// (a_la, l_mu): the printed asymptotics reuse (a_mu, l_la) there, which the
// hbar -> 0 oracle rules out (see tests).
template <class S>
S nekrasov_factor_4d(const Partition& la, const Partition& mu, const S& two_sigma) {
    S acc(1);
    la.for_cells([&](int i, int j) {
        acc *= two_sigma - S(mu.arm(i, j) + la.leg(i, j) + 1);
    });
    mu.for_cells([&](int i, int j) {
        acc *= two_sigma + S(la.arm(i, j) + mu.leg(i, j) + 1);
    });
    return acc;
}

// c = 1 irregular Virasoro block F(sigma^2 | z) as a series in z
// (zeta-step 4 kept for uniformity with the q-block)
template <class S>
GradedSeries<S> block_4d(const S& two_sigma, int z_order) {
    GradedSeries<S> out(4 * z_order);
    S zero(0), minus = zero - two_sigma;
    std::vector<std::vector<S>> diag(static_cast<std::size_t>(z_order) + 1);
    for (int n = 0; n <= z_order; ++n)
        for (const auto& la : partitions_cached(n))
            diag[static_cast<std::size_t>(n)].push_back(nekrasov_factor_4d(la, la, zero));

    for (int n = 0; n <= z_order; ++n) {
        S coeff(0);
        for (int n1 = 0; n1 <= n; ++n1) {
            const auto& ps1 = partitions_cached(n1);
            const auto& ps2 = partitions_cached(n - n1);
            for (std::size_t i1 = 0; i1 < ps1.size(); ++i1)
                for (std::size_t i2 = 0; i2 < ps2.size(); ++i2) {
                    S den = diag[static_cast<std::size_t>(n1)][i1] *
                            diag[static_cast<std::size_t>(n - n1)][i2] *
                            nekrasov_factor_4d(ps1[i1], ps2[i2], two_sigma) *
                            nekrasov_factor_4d(ps2[i2], ps1[i1], minus);
                    if (den.is_zero()) throw ResonantSigma();
                    coeff += S(1) / den;
                }
        }
        out.set(4 * n, std::move(coeff));
    }
    return out;
}

}  // namespace qptau
