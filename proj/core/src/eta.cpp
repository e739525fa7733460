#include "qdissect/eta.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace qdissect {

namespace {

constexpr std::int64_t kMaxExponent = std::numeric_limits<std::int32_t>::max();

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("coefficient overflow");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("coefficient overflow");
  return out;
}

}  // namespace

EtaQuotient EtaQuotient::single(std::int64_t r, std::int64_t e) {
  if (r < 1) throw std::invalid_argument("eta index must be positive");
  if (e > kMaxExponent || e < -kMaxExponent) throw std::overflow_error("exponent overflow");
  EtaQuotient q;
  if (e != 0) q.factors_[r] = e;
  return q;
}

std::int64_t EtaQuotient::exponent(std::int64_t r) const {
  auto it = factors_.find(r);
  return it == factors_.end() ? 0 : it->second;
}

EtaQuotient& EtaQuotient::operator*=(const EtaQuotient& other) {
  for (const auto& [r, e] : other.factors_) {
    const std::int64_t sum = exponent(r) + e;
    if (sum > kMaxExponent || sum < -kMaxExponent) throw std::overflow_error("exponent overflow");
    if (sum == 0) factors_.erase(r);
    else factors_[r] = sum;
  }
  return *this;
}

EtaQuotient EtaQuotient::inverse() const {
  EtaQuotient out;
  for (const auto& [r, e] : factors_) out.factors_[r] = -e;
  return out;
}

EtaExpression::EtaExpression(std::vector<EtaTerm> terms) {
  std::sort(terms.begin(), terms.end(), [](const EtaTerm& a, const EtaTerm& b) {
    if (a.qpow != b.qpow) return a.qpow < b.qpow;
    return a.quotient < b.quotient;
  });
  for (auto& t : terms) {
    if (!terms_.empty() && terms_.back().qpow == t.qpow && terms_.back().quotient == t.quotient) {
      terms_.back().coeff = checked_add(terms_.back().coeff, t.coeff);
    } else {
      terms_.push_back(std::move(t));
    }
  }
  std::erase_if(terms_, [](const EtaTerm& t) { return t.coeff == 0; });
}

EtaExpression EtaExpression::constant(std::int64_t c) { return EtaExpression({EtaTerm{c, 0, {}}}); }

EtaExpression EtaExpression::of(EtaTerm term) { return EtaExpression({std::move(term)}); }

EtaExpression EtaExpression::operator+(const EtaExpression& other) const {
  std::vector<EtaTerm> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return EtaExpression(std::move(all));
}

EtaExpression EtaExpression::operator-() const {
  std::vector<EtaTerm> all = terms_;
  for (auto& t : all) t.coeff = checked_mul(t.coeff, -1);
  return EtaExpression(std::move(all));
}

EtaExpression EtaExpression::operator-(const EtaExpression& other) const { return *this + (-other); }

EtaExpression EtaExpression::operator*(const EtaExpression& other) const {
  std::vector<EtaTerm> all;
  all.reserve(terms_.size() * other.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) {
      std::uint64_t qpow;
      if (__builtin_add_overflow(a.qpow, b.qpow, &qpow)) throw std::overflow_error("q exponent overflow");
      all.push_back(EtaTerm{checked_mul(a.coeff, b.coeff), qpow, a.quotient * b.quotient});
    }
  }
  return EtaExpression(std::move(all));
}

std::string render(const EtaQuotient& q) {
  std::vector<std::string> num, den;
  for (const auto& [r, e] : q.factors()) {
    const std::int64_t mag = e < 0 ? -e : e;
    std::string s = "f" + std::to_string(r);
    if (mag != 1) s += "^" + std::to_string(mag);
    (e > 0 ? num : den).push_back(std::move(s));
  }
  auto join = [](const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "*" : "") + parts[i];
    return out;
  };
  std::string out = num.empty() ? "1" : join(num);
  if (den.size() == 1) out += "/" + den.front();
  else if (den.size() > 1) out += "/(" + join(den) + ")";
  return out;
}

std::string render(const EtaExpression& e) {
  if (e.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : e.terms()) {
    const bool negative = t.coeff < 0;
    if (first) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    first = false;

    std::vector<std::string> head;
    // magnitude as unsigned so INT64_MIN renders correctly
    const std::uint64_t mag = negative ? static_cast<std::uint64_t>(-(t.coeff + 1)) + 1
                                       : static_cast<std::uint64_t>(t.coeff);
    if (mag != 1) head.push_back(std::to_string(mag));
    if (t.qpow == 1) head.push_back("q");
    else if (t.qpow > 1) head.push_back("q^" + std::to_string(t.qpow));

    const std::string quotient = render(t.quotient);
    const bool bare_one = quotient.starts_with("1");
    std::string body;
    for (std::size_t i = 0; i < head.size(); ++i) body += (i ? "*" : "") + head[i];
    if (body.empty()) {
      body = quotient;
    } else if (!bare_one) {
      body += "*" + quotient;
    } else if (quotient.size() > 1) {
      body += quotient.substr(1);  // "2" + "/f1"
    }
    out += body;
  }
  return out;
}

Series expand_eta(std::uint64_t r, std::size_t precision, RingSpec ring) {
  if (r == 0) throw std::invalid_argument("eta index must be positive");
  if (precision == 0) throw PrecisionError("series precision must be at least 1");
  std::vector<Integer> c(precision);
  c[0] = 1;
  // sum over j >= 1 of (-1)^j (q^{r j(3j-1)/2} + q^{r j(3j+1)/2})
  for (std::uint64_t j = 1;; ++j) {
    const std::uint64_t lo = r * (j * (3 * j - 1) / 2);
    if (lo >= precision) break;
    const long sign = (j % 2) ? -1 : 1;
    c[lo] += sign;
    const std::uint64_t hi = r * (j * (3 * j + 1) / 2);
    if (hi < precision) c[hi] += sign;
  }
  return Series::from_coeffs(ring, c);
}

Series expand_quotient(const EtaQuotient& q, std::size_t precision, RingSpec ring) {
  Series acc = Series::one(ring, precision);
  for (const auto& [r, e] : q.factors()) {
    if (static_cast<std::uint64_t>(r) >= precision) continue;  // f_r == 1 below q^r
    const Series f = expand_eta(static_cast<std::uint64_t>(r), precision, ring);
    const std::int64_t reps = e < 0 ? -e : e;
    for (std::int64_t i = 0; i < reps; ++i) acc = e > 0 ? mul(acc, f) : div(acc, f);
  }
  return acc;
}

Series expand_expression(const EtaExpression& e, std::size_t precision, RingSpec ring) {
  Series total = Series::zero(ring, precision);
  for (const auto& t : e.terms()) {
    if (t.qpow >= precision) continue;
    Series s = expand_quotient(t.quotient, precision - t.qpow, ring);
    s = mul_qpow(s, t.qpow);
    total = add(total, scale(s, Integer(static_cast<long>(t.coeff))));
  }
  return total;
}

Series expand_pochhammer(PochhammerFactor p, std::size_t precision, RingSpec ring) {
  if (p.m == 0 || p.j < 1 || p.j > p.m) throw std::invalid_argument("Pochhammer factor needs 1 <= j <= m");
  if (precision == 0) throw PrecisionError("series precision must be at least 1");
  std::vector<Integer> c(precision);
  c[0] = 1;
  for (std::uint64_t k = p.j; k < precision; k += p.m) {
    // multiply in place by (1 - q^k), high degrees first
    for (std::size_t n = precision - 1; n >= k; --n) c[n] -= c[n - k];
  }
  return Series::from_coeffs(ring, c);
}

}  // namespace qdissect
