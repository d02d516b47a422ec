#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qptau/rational_function.hpp"
#include "qptau/series.hpp"

using namespace qptau;

namespace {
VarsPtr av() {
    static VarsPtr v = make_vars({"a"});
    return v;
}
using SeriesC = GradedSeries<Complex>;
using SeriesR = GradedSeries<RatFn>;

SeriesC random_series(std::mt19937_64& rng, int order) {
    std::uniform_real_distribution<double> u(-2, 2);
    SeriesC f(order);
    for (int e = 0; e <= order; ++e)
        if (rng() % 3) f.set(e, Complex(u(rng), u(rng)));
    return f;
}
}  // namespace

TEST_CASE("series_mul truncation examples") {
    // zeta = Z^(1/4): Z is zeta^4
    SeriesC one_plus(8), one_minus(8);
    one_plus.set(0, Complex(1));
    one_plus.set(4, Complex(1));
    one_minus.set(0, Complex(1));
    one_minus.set(4, Complex(-1));
    SeriesC p = one_plus * one_minus;
    REQUIRE(p.order() == 8);
    REQUIRE(abs(p.get(0) - Complex(1)) == 0);
    REQUIRE(p.get(4).is_zero());
    REQUIRE(abs(p.get(8) - Complex(-1)) == 0);

    SeriesC zero(8);
    REQUIRE((one_plus * zero).empty());

    SeriesC f(3);
    f.set(0, Complex(1));
    f.set(2, Complex(1));
    SeriesC g = f * f;  // order 3 drops zeta^4
    REQUIRE(g.order() == 3);
    REQUIRE(abs(g.get(0) - Complex(1)) == 0);
    REQUIRE(abs(g.get(2) - Complex(2)) == 0);
    REQUIRE(g.get(4).is_zero());
}

TEST_CASE("series_scale_z on monomials") {
    // exact backend: a = q^(1/4)
    RatFn a = RatFn::var(av(), 0);
    SeriesR f(8);
    f.set(4, RatFn::from_int(av(), 1));  // Z
    SeriesR g = series_scale_z(f, a);    // Z -> qZ
    REQUIRE(g.get(4) == pow(a, 4));

    SeriesR c = SeriesR::one(8);
    REQUIRE(series_scale_z(c, a).get(0) == RatFn::from_int(av(), 1));

    SeriesR h(8);
    h.set(2, RatFn::from_int(av(), 1));  // Z^(1/2)
    REQUIRE(series_scale_z(h, pow(a, -1)).get(2) == pow(a, -2));
}

TEST_CASE("scale roundtrip is exact") {
    RatFn a = RatFn::var(av(), 0);
    std::mt19937_64 rng(5);
    SeriesR f(12);
    for (int e = 0; e <= 12; ++e)
        if (rng() % 2) f.set(e, pow(a, static_cast<long>(rng() % 5)) + RatFn::from_int(av(), static_cast<int>(rng() % 7)));
    SeriesR g = series_scale_z(series_scale_z(f, a), pow(a, -1));
    REQUIRE(series_assert_zero(g - f).empty());
}

TEST_CASE("series_assert_zero") {
    SeriesC z(8);
    REQUIRE(series_assert_zero(z, Real("1e-20"), [](const Complex& c) { return abs(c); }).empty());

    SeriesR e(4);
    RatFn one = RatFn::from_int(av(), 1);
    e.set(0, one - one);  // cancellation stores nothing
    REQUIRE(series_assert_zero(e).empty());

    SeriesC bad(8);
    bad.set(4, Complex(Real("1e-8")));
    auto viol = series_assert_zero(bad, Real("1e-20"), [](const Complex& c) { return abs(c); });
    REQUIRE(viol.size() == 1);
    REQUIRE(viol[0].exponent == 4);
}

TEST_CASE("ring axioms at fixed order") {
    std::mt19937_64 rng(17);
    auto absf = [](const Complex& c) { return abs(c); };
    Real tol = Real("1e-40");
    for (int t = 0; t < 10; ++t) {
        SeriesC f = random_series(rng, 10), g = random_series(rng, 10), h = random_series(rng, 10);
        REQUIRE(series_assert_zero((f + g) * h - (f * h + g * h), tol, absf).empty());
        REQUIRE(series_assert_zero(f * (g * h) - (f * g) * h, tol, absf).empty());
        REQUIRE(series_assert_zero(f * g - g * f, tol, absf).empty());
    }
}

TEST_CASE("series_mul matches direct convolution") {
    std::mt19937_64 rng(23);
    SeriesC f = random_series(rng, 9), g = random_series(rng, 9);
    SeriesC p = f * g;
    for (int k = 0; k <= 9; ++k) {
        Complex direct(0);
        for (int i = 0; i <= k; ++i) direct += f.get(i) * g.get(k - i);
        REQUIRE(abs(p.get(k) - direct) < Real("1e-42"));
    }
}
