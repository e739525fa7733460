#include <doctest.h>

#include "gen.hpp"
#include "qdissect/eta.hpp"

using namespace qdissect;
using qdtest::Gen;

namespace {

const RingSpec Z = RingSpec::integers();

Series zs(std::initializer_list<long> c) { return Series::from_coeffs(Z, c); }

EtaQuotient quot(std::initializer_list<std::pair<std::int64_t, std::int64_t>> fs) {
  EtaQuotient q;
  for (auto [r, e] : fs) q *= EtaQuotient::single(r, e);
  return q;
}

}  // namespace

TEST_CASE("parse single quotient") {
  const EtaExpression e = parse("f2*f3 / (f1*f6^2)");
  REQUIRE(e.terms().size() == 1);
  const EtaTerm& t = e.terms()[0];
  CHECK(t.coeff == 1);
  CHECK(t.qpow == 0);
  CHECK(t.quotient == quot({{1, -1}, {2, 1}, {3, 1}, {6, -2}}));
}

TEST_CASE("parse two-term lemma") {
  const EtaExpression e = parse("f4^3*f6^2/(f2^2*f12) + q*f12^3/f4");
  REQUIRE(e.terms().size() == 2);
  CHECK(e.terms()[0].qpow == 0);
  CHECK(e.terms()[1].qpow == 1);
  CHECK(e.terms()[1].quotient == quot({{4, -1}, {12, 3}}));
}

TEST_CASE("normalization") {
  CHECK(parse("f1 - f1").empty());
  CHECK(parse("f1*f1") == parse("f1^2"));
  CHECK(parse("f1^2/f1") == parse("f1"));
  CHECK(parse("q*f2 + q*f2") == parse("2*q*f2"));
  CHECK(parse("q^2*3") == parse("3*q^2"));
  CHECK(parse("f1^-2") == parse("1/f1^2"));
  CHECK(parse("-(f2^4*f6^3)/(f1^2*f4^2)").terms()[0].coeff == -1);
  CHECK(parse("(f1 + q*f2)*(f1 - q*f2)") == parse("f1^2 - q^2*f2^2"));
  CHECK(parse("0").empty());
  CHECK(parse("q^0") == EtaExpression::constant(1));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("f0"), ParseError);
  CHECK_THROWS_AS(parse("f"), ParseError);
  CHECK_THROWS_AS(parse("f1 +"), ParseError);
  CHECK_THROWS_AS(parse("f1 / (f2 + f3)"), ParseError);
  CHECK_THROWS_AS(parse("f1 / (2*f2)"), ParseError);
  CHECK_THROWS_AS(parse("f1 / q"), ParseError);
  CHECK_THROWS_AS(parse("g1"), ParseError);
  CHECK_THROWS_AS(parse("(f1"), ParseError);
  CHECK_THROWS_AS(parse("f1)"), ParseError);
  CHECK_THROWS(parse("f1^99999999999"));
  CHECK_THROWS(parse("f1^2000000000*f1^2000000000"));
  CHECK_THROWS(parse("99999999999999999999"));
  try {
    parse("f1 * $");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 5);
  }
}

TEST_CASE("render") {
  CHECK(render(parse("f2*f3/(f1*f6^2)")) == "f2*f3/(f1*f6^2)");
  CHECK(render(parse("2*q/f1")) == "2*q/f1");
  CHECK(render(EtaExpression{}) == "0");
  CHECK(render(parse("1 - q*f1")) == "1 - q*f1");
}

TEST_CASE("expand_eta") {
  CHECK(expand_eta(1, 8, Z) == zs({1, -1, -1, 0, 0, 1, 0, 1}));
  CHECK(expand_eta(2, 5, Z) == zs({1, 0, -1, 0, -1}));
  CHECK_THROWS(expand_eta(0, 5, Z));
  for (std::uint64_t r = 1; r <= 12; ++r)
    for (std::size_t n : {1, 7, 50, 200}) {
      INFO("r=" << r << " n=" << n);
      CHECK(expand_eta(r, n, Z) == Series::from_integers(qdtest::naive_eta(r, n)));
      CHECK(expand_eta(r, n, Z) == scale_q(expand_eta(1, (n + r - 1) / r, Z), r).truncated(n));
    }
}

TEST_CASE("expand_expression") {
  CHECK(expand_expression(parse("f2*f3/(f1*f6^2)"), 8, Z) == zs({1, 1, 1, 1, 1, 2, 3, 4}));
  CHECK(expand_expression(EtaExpression{}, 5, Z).is_zero());
  CHECK(expand_expression(parse("f1*f1 - f1^2"), 30, Z).is_zero());
  // qpow beyond precision contributes nothing
  CHECK(expand_expression(parse("q^10*f1"), 5, Z).is_zero());
  const RingSpec r16 = RingSpec::residues(16);
  CHECK(expand_expression(parse("f2*f3/(f1*f6^2)"), 100, r16) ==
        reduce_mod(expand_expression(parse("f2*f3/(f1*f6^2)"), 100, Z), 16));
}

TEST_CASE("negative exponents match explicit inversion") {
  const std::size_t n = 400;
  for (const RingSpec ring : {Z, RingSpec::residues(16), RingSpec::residues(1000003)}) {
    const Series f1 = expand_eta(1, n, ring), f3 = expand_eta(3, n, ring);
    CHECK(expand_expression(parse("1/f1^2"), n, ring) == pow(inv(f1), 2));
    CHECK(expand_expression(parse("f3^5/f1^7"), n, ring) == mul(pow(f3, 5), pow(inv(f1), 7)));
  }
}

TEST_CASE("expand_pochhammer") {
  CHECK(expand_pochhammer({1, 1}, 8, Z) == expand_eta(1, 8, Z));
  CHECK(expand_pochhammer({1, 6}, 8, Z) == zs({1, -1, 0, 0, 0, 0, 0, -1}));
  const std::size_t n = 300;
  const Series prod = mul(mul(expand_pochhammer({1, 6}, n, Z), expand_pochhammer({5, 6}, n, Z)),
                          expand_pochhammer({6, 6}, n, Z));
  CHECK(inv(prod) == expand_expression(parse("f2*f3/(f1*f6^2)"), n, Z));
  CHECK_THROWS(expand_pochhammer({0, 6}, 8, Z));
  CHECK_THROWS(expand_pochhammer({7, 6}, 8, Z));
}

// --- properties -------------------------------------------------------------

namespace {

EtaExpression random_expression(Gen& g, int max_terms) {
  std::vector<EtaTerm> terms;
  const auto count = g.range(0, max_terms);
  for (int i = 0; i < count; ++i) {
    EtaTerm t;
    t.coeff = g.range(-20, 20);
    t.qpow = static_cast<std::uint64_t>(g.range(0, 4));
    const auto factors = g.range(0, 4);
    for (int k = 0; k < factors; ++k) t.quotient *= EtaQuotient::single(g.range(1, 24), g.range(-5, 5));
    terms.push_back(t);
  }
  return EtaExpression(std::move(terms));
}

}  // namespace

TEST_CASE("property: parse and render round trip") {
  Gen g(11);
  for (int i = 0; i < 1000; ++i) {
    const EtaExpression e = random_expression(g, 4);
    const std::string text = render(e);
    INFO(text);
    REQUIRE(parse(text) == e);
    REQUIRE(render(parse(text)) == text);
  }
}

TEST_CASE("property: expansion is multiplicative") {
  Gen g(12);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = g.precision();
    const RingSpec ring = g.ring();
    const EtaExpression a = random_expression(g, 1), b = random_expression(g, 1);
    INFO(render(a) << " * " << render(b) << " over " << ring.to_string());
    REQUIRE(expand_expression(a * b, n, ring) == mul(expand_expression(a, n, ring), expand_expression(b, n, ring)));
    REQUIRE(expand_expression(a + b, n, ring) == add(expand_expression(a, n, ring), expand_expression(b, n, ring)));
  }
}
