#include <doctest.h>

#include "gen.hpp"
#include "qdissect/eta.hpp"
#include "qdissect/series.hpp"

using namespace qdissect;
using qdtest::Gen;

namespace {

const RingSpec Z = RingSpec::integers();

Series zs(std::initializer_list<long> c) { return Series::from_coeffs(Z, c); }

constexpr int kCases = 1000;

}  // namespace

TEST_CASE("ring spec") {
  CHECK(RingSpec::integers().to_string() == "Z");
  CHECK(RingSpec::residues(16).to_string() == "Z/16");
  CHECK_THROWS_AS(RingSpec::residues(1), std::invalid_argument);
  CHECK_NOTHROW(RingSpec::residues(1ull << 63));
  CHECK_THROWS_AS(RingSpec::residues((1ull << 63) + 1), std::invalid_argument);
}

TEST_CASE("mod arith") {
  ModArith m{97};
  CHECK(m.reduce(Integer(-1)) == 96);
  CHECK(m.reduce(std::int64_t{-98}) == 96);
  CHECK(m.mul(m.inverse(5), 5) == 1);
  CHECK_THROWS_AS(ModArith{16}.inverse(4), NonUnit);
  ModArith big{1ull << 63};
  CHECK(big.add((1ull << 63) - 1, 2) == 1);
  CHECK(big.is_power_of_two());
}

TEST_CASE("make") {
  CHECK(Series::make(Z, 3, [](std::size_t) { return Integer(1); }) == zs({1, 1, 1}));
  CHECK(Series::make(Z, 4, [](std::size_t n) { return Integer(n == 0); }) == Series::one(Z, 4));
  const Series r = Series::make(RingSpec::residues(16), 2, [](std::size_t) { return Integer(17); });
  CHECK(r.residues()[0] == 1);
  CHECK(r.residues()[1] == 1);
  CHECK_THROWS_AS(Series::zero(Z, 0), PrecisionError);
}

TEST_CASE("add and sub") {
  CHECK(zs({1, 1}) + zs({1, -1}) == zs({2, 0}));
  const Series f = zs({3, -4, 5, 0, 7});
  CHECK((f - f).is_zero());
  CHECK((zs({1, 2, 3, 4, 5}) + zs({1, 1, 1})).precision() == 3);
  CHECK_THROWS_AS(add(f, Series::zero(RingSpec::residues(8), 5)), RingMismatch);
  CHECK_THROWS_AS(add(Series::zero(RingSpec::residues(4), 5), Series::zero(RingSpec::residues(8), 5)), RingMismatch);
}

TEST_CASE("mul") {
  CHECK(zs({1, -1, 0, 0}) * zs({1, 1, 1, 1}) == zs({1, 0, 0, 0}));
  const Series f = zs({2, 0, -3, 5});
  CHECK(f * Series::one(Z, 4) == f);
  CHECK(zs({1, 1, 0}) * zs({1, 1, 0}) == zs({1, 2, 1}));
}

TEST_CASE("inv") {
  CHECK(inv(zs({1, -1, 0, 0})) == zs({1, 1, 1, 1}));
  CHECK(inv(zs({1})) == zs({1}));
  // partitions of 0..5 by hand: 1 1 2 3 5 7
  CHECK(inv(expand_eta(1, 6, Z)) == zs({1, 1, 2, 3, 5, 7}));
  CHECK_THROWS_AS(inv(zs({2, 1})), NonUnit);
  CHECK_THROWS_AS(inv(Series::from_residues(16, {2, 1})), NonUnit);
  CHECK(mul(Series::from_residues(15, {7, 1, 3}), inv(Series::from_residues(15, {7, 1, 3}))) ==
        Series::one(RingSpec::residues(15), 3));
}

TEST_CASE("pow") {
  CHECK(pow(zs({1, 1, 0}), 2) == zs({1, 2, 1}));
  const Series f = zs({1, 4, -2, 9, 0, 1});
  CHECK(pow(f, 0) == Series::one(Z, 6));
  CHECK(pow(pow(f, -1), -1) == f);
  CHECK(pow(f, 3) == f * f * f);
}

TEST_CASE("scale_q, mul_qpow, div_qpow") {
  CHECK(scale_q(zs({1, 1}), 3) == zs({1, 0, 0, 1, 0, 0}));
  const Series f = zs({1, 2, 3});
  CHECK(scale_q(f, 1) == f);
  CHECK(scale_q(expand_eta(1, 50, Z), 2) == expand_eta(2, 100, Z));
  CHECK(mul_qpow(Series::one(Z, 1), 1) == zs({0, 1}));
  CHECK(mul_qpow(f, 0) == f);
  const Series g = mul_qpow(f, 2);
  CHECK(g.precision() == 5);
  for (std::size_t n = 0; n < 5; ++n) CHECK(g.coeff(n) == (n < 2 ? Integer(0) : f.coeff(n - 2)));
  CHECK(div_qpow(g, 2) == f);
  CHECK_THROWS(div_qpow(f, 1));
  CHECK_THROWS_AS(div_qpow(f, 3), PrecisionError);
}

TEST_CASE("reduce_mod and exact division") {
  CHECK(reduce_mod(zs({2, -3}), 2) == Series::from_residues(2, {0, 1}));
  CHECK(reduce_mod(scale(expand_eta(1, 40, Z), 16), 16).is_zero());
  const Series r = Series::from_residues(16, {5, 15, 8});
  CHECK(reduce_mod(r, 4) == Series::from_residues(4, {1, 3, 0}));
  CHECK_THROWS(reduce_mod(r, 3));
  CHECK(exact_div_scalar(zs({4, -8, 12}), 4) == zs({1, -2, 3}));
  CHECK_THROWS_AS(exact_div_scalar(zs({4, 6}), 4), std::domain_error);
}

TEST_CASE("to_string") {
  CHECK(zs({1, -1, 0}).to_string() == "1 -1 0");
  CHECK(Series::from_residues(8, {7, 0}).to_string() == "7 0");
}

TEST_CASE("large coefficients survive") {
  const Series f = pow(inv(expand_eta(1, 300, Z)), 24);
  // inv(f1)^24 at q^299 is far beyond 64 bits
  CHECK(f.coeff(299) > Integer(1) << 200);
  CHECK(reduce_mod(f, 1ull << 63) == pow(inv(expand_eta(1, 300, RingSpec::residues(1ull << 63))), 24));
}

// --- properties -------------------------------------------------------------

TEST_CASE("property: ring laws") {
  Gen g(1);
  for (int i = 0; i < kCases; ++i) {
    const RingSpec ring = g.ring();
    const std::size_t n = g.precision();
    const Series a = g.series(ring, n), b = g.series(ring, n), c = g.series(ring, n);
    INFO("case " << i << " ring " << ring.to_string() << " precision " << n);
    REQUIRE(a + b == b + a);
    REQUIRE(a * b == b * a);
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE((a + b) - b == a);
    REQUIRE(a + neg(a) == Series::zero(ring, n));
  }
}

TEST_CASE("property: mul matches schoolbook product") {
  Gen g(2);
  for (int i = 0; i < kCases; ++i) {
    const std::size_t n = g.precision();
    const Series a = g.series(Z, n), b = g.series(Z, n);
    INFO("case " << i);
    REQUIRE(qdtest::to_vec(a * b) == qdtest::naive_mul(qdtest::to_vec(a), qdtest::to_vec(b), n));
  }
}

TEST_CASE("property: inversion") {
  Gen g(3);
  for (int i = 0; i < kCases; ++i) {
    const RingSpec ring = g.ring();
    const std::size_t n = g.precision();
    const Series u = g.unit_series(ring, n), a = g.series(ring, n);
    INFO("case " << i << " ring " << ring.to_string());
    REQUIRE(u * inv(u) == Series::one(ring, n));
    REQUIRE(div(a, u) == a * inv(u));
    REQUIRE(div(a, u) * u == a);
    REQUIRE(pow(u, -3) == pow(inv(u), 3));
  }
}

TEST_CASE("property: scale_q is multiplicative") {
  Gen g(4);
  for (int i = 0; i < kCases; ++i) {
    const RingSpec ring = g.ring();
    const std::size_t n = g.precision(1, 32);
    const std::size_t m = static_cast<std::size_t>(g.range(1, 5));
    const Series a = g.series(ring, n), b = g.series(ring, n);
    REQUIRE(scale_q(a * b, m) == scale_q(a, m) * scale_q(b, m));
  }
}

TEST_CASE("property: reduce_mod homomorphism") {
  Gen g(5);
  for (int i = 0; i < kCases; ++i) {
    const std::size_t n = g.precision();
    const std::uint64_t m = g.modulus();
    const Series a = g.series(Z, n), b = g.series(Z, n), u = g.unit_series(Z, n);
    const auto e = g.range(-4, 6);
    INFO("case " << i << " modulus " << m);
    REQUIRE(reduce_mod(a + b, m) == reduce_mod(a, m) + reduce_mod(b, m));
    REQUIRE(reduce_mod(a * b, m) == reduce_mod(a, m) * reduce_mod(b, m));
    REQUIRE(reduce_mod(pow(u, e), m) == pow(reduce_mod(u, m), e));
    REQUIRE(reduce_mod(div(a, u), m) == div(reduce_mod(a, m), reduce_mod(u, m)));
  }
}

TEST_CASE("property: precision contract") {
  Gen g(6);
  for (int i = 0; i < kCases; ++i) {
    const RingSpec ring = g.ring();
    const std::size_t n1 = g.precision(), n2 = g.precision();
    const Series a = g.series(ring, n1), b = g.unit_series(ring, n2);
    const std::size_t lo = std::min(n1, n2);
    REQUIRE((a + b).precision() == lo);
    REQUIRE((a - b).precision() == lo);
    REQUIRE((a * b).precision() == lo);
    REQUIRE(div(a, b).precision() == lo);
    REQUIRE(scale_q(a, 3).precision() == 3 * n1);
    REQUIRE(mul_qpow(a, 2).precision() == n1 + 2);
  }
}
