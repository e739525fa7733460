#include "qdissect/aaw.hpp"

namespace qdissect {

namespace {

const RingSpec kZ = RingSpec::integers();

// 1 + c*q*t
Series linear_in_qt(const Series& t, long c, std::size_t precision) {
  Series qt = mul_qpow(t, 1).truncated(precision);
  return add(Series::one(kZ, precision), scale(qt, Integer(c)));
}

Series eta_power(unsigned r, long e, std::size_t precision) {
  return pow(expand_eta(r, precision, kZ), e);
}

}  // namespace

Series phi(std::size_t precision) {
  if (precision == 0) throw PrecisionError("series precision must be at least 1");
  std::vector<Integer> c(precision);
  c[0] = 1;
  for (std::size_t n = 1; n * n < precision; ++n) c[n * n] += 2;
  return Series::from_integers(std::move(c));
}

ParamPair compute_params(std::size_t precision) {
  if (precision < 2) throw PrecisionError("parameter series need precision at least 2");
  // one extra term: t loses one coefficient to the division by q
  const std::size_t wide = precision + 1;
  const Series ph = phi(wide);
  const Series ph3 = scale_q(phi((wide + 2) / 3), 3).truncated(wide);
  const Series ph3_sq = mul(ph3, ph3);

  Series s = div(pow(ph3, 3), ph).truncated(precision);

  const Series numerator = sub(mul(ph, ph), ph3_sq);
  const Series reduced = exact_div_scalar(div_qpow(numerator, 1), Integer(4));
  Series t = div(reduced, ph3_sq.truncated(precision));
  return {std::move(s), std::move(t)};
}

Series param_relation_rhs(const ParamPair& p, const ParamRelation& rel, std::size_t precision) {
  const Series s = p.s.truncated(precision);
  const Series t = p.t.truncated(precision);
  Series out = pow(s, 12);
  out = mul(out, pow(t, rel.t_exp));
  out = mul(out, pow(linear_in_qt(t, -2, precision), rel.minus2));
  out = mul(out, pow(linear_in_qt(t, 1, precision), rel.plus1));
  out = mul(out, pow(linear_in_qt(t, 2, precision), rel.plus2));
  out = mul(out, pow(linear_in_qt(t, 4, precision), rel.plus4));
  return out;
}

std::vector<VerificationReport> verify_param_identities(const ParamPair& p, std::size_t precision) {
  if (precision == 0) throw PrecisionError("precision must be at least 1");
  if (p.s.precision() < precision || p.t.precision() < precision)
    throw PrecisionError("parameter series are shorter than the requested precision");
  std::vector<VerificationReport> out;
  for (const auto& rel : kParamRelations) {
    const Series lhs = eta_power(rel.r, 24, precision);
    out.push_back(compare_series("f" + std::to_string(rel.r) + "^24", lhs, param_relation_rhs(p, rel, precision)));
  }
  return out;
}

Series compute_L(std::size_t precision) {
  if (precision < 2) throw PrecisionError("L(q) needs precision at least 2");
  auto f = [&](unsigned r) { return expand_eta(r, precision, kZ); };
  const Series f1 = f(1), f2 = f(2), f3 = f(3), f4 = f(4), f6 = f(6), f12 = f(12);

  // -f2^4 f3^8 / (f1^2 f4^2 f6)
  Series t1 = div(mul(pow(f2, 4), pow(f3, 8)), mul(mul(pow(f1, 2), pow(f4, 2)), f6));
  // 8q f2 f4 f6^8 / (f1^2 f12)
  Series t2 = div(mul(mul(f2, f4), pow(f6, 8)), mul(pow(f1, 2), f12));
  // f2^10 f3^4 f6^5 / (f1^6 f4^4 f12^2)
  Series t3 = div(mul(mul(pow(f2, 10), pow(f3, 4)), pow(f6, 5)), mul(mul(pow(f1, 6), pow(f4, 4)), pow(f12, 2)));
  // 4q f2^4 f3^6 f12^2 / (f1^4 f6)
  Series t4 = div(mul(mul(pow(f2, 4), pow(f3, 6)), pow(f12, 2)), mul(pow(f1, 4), f6));

  Series out = neg(t1);
  out = add(out, scale(mul_qpow(t2, 1), Integer(8)));
  out = add(out, t3);
  out = add(out, scale(mul_qpow(t4, 1), Integer(4)));
  return out.truncated(precision);
}

VerificationReport verify_L_identity(std::size_t precision) {
  if (precision < 2) throw PrecisionError("L(q) identity needs precision at least 2");
  const Series lhs = mul(compute_L(precision), expand_expression(parse("f4^2*f6/f3^2"), precision, kZ));

  const ParamPair p = compute_params(precision);
  Series rhs = mul(pow(p.s, 4), pow(p.t, 2));
  rhs = mul(rhs, pow(linear_in_qt(p.t, 1, precision), 3));
  rhs = mul(rhs, linear_in_qt(p.t, 2, precision));
  rhs = mul(rhs, linear_in_qt(p.t, 4, precision));
  rhs = scale(mul_qpow(rhs, 1), Integer(16)).truncated(precision);

  return compare_series("L*f4^2*f6/f3^2", lhs, rhs);
}

}  // namespace qdissect
