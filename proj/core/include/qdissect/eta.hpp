#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qdissect/series.hpp"

namespace qdissect {

/// Syntax error in the eta-quotient DSL, carrying the byte offset of the
/// offending token.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : std::invalid_argument(message + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// prod_r f_r^{e_r} with f_r = (q^r; q^r)_inf. Zero exponents are never stored.
class EtaQuotient {
 public:
  EtaQuotient() = default;
  /// f_r^e; e == 0 gives the empty quotient.
  static EtaQuotient single(std::int64_t r, std::int64_t e = 1);

  const std::map<std::int64_t, std::int64_t>& factors() const { return factors_; }
  std::int64_t exponent(std::int64_t r) const;
  bool empty() const { return factors_.empty(); }

  /// Throws std::overflow_error if an exponent leaves the int32 range.
  EtaQuotient& operator*=(const EtaQuotient& other);
  EtaQuotient inverse() const;

  friend EtaQuotient operator*(EtaQuotient a, const EtaQuotient& b) { return a *= b; }
  friend auto operator<=>(const EtaQuotient&, const EtaQuotient&) = default;
  friend bool operator==(const EtaQuotient&, const EtaQuotient&) = default;

 private:
  std::map<std::int64_t, std::int64_t> factors_;
};

/// coeff * q^qpow * quotient.
struct EtaTerm {
  std::int64_t coeff = 1;
  std::uint64_t qpow = 0;
  EtaQuotient quotient;

  friend bool operator==(const EtaTerm&, const EtaTerm&) = default;
};

/// A normalized sum of EtaTerms: like (qpow, quotient) keys are collected,
/// zero coefficients dropped, and terms sorted by (qpow, quotient). Equality
/// of expressions is therefore syntactic.
class EtaExpression {
 public:
  EtaExpression() = default;
  explicit EtaExpression(std::vector<EtaTerm> terms);
  static EtaExpression constant(std::int64_t c);
  static EtaExpression of(EtaTerm term);

  const std::vector<EtaTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  EtaExpression operator+(const EtaExpression& other) const;
  EtaExpression operator-(const EtaExpression& other) const;
  EtaExpression operator-() const;
  EtaExpression operator*(const EtaExpression& other) const;

  friend bool operator==(const EtaExpression&, const EtaExpression&) = default;

 private:
  std::vector<EtaTerm> terms_;
};

/// (q^j; q^m)_inf with 1 <= j <= m.
struct PochhammerFactor {
  std::uint64_t j;
  std::uint64_t m;
};

/// Parse the DSL:
///   expr   := term (('+'|'-') term)*
///   term   := signed? factor ('*' factor | '/' factor)*
///   factor := 'q' ('^' uint)? | 'f' uint ('^' sint)? | uint | '(' expr ')'
/// Divisors must be a bare eta quotient (optionally negated).
EtaExpression parse(std::string_view text);

/// Inverse of parse: parse(render(e)) == e.
std::string render(const EtaExpression& e);
std::string render(const EtaQuotient& q);

/// Truncated expansion of f_r via the pentagonal number theorem.
Series expand_eta(std::uint64_t r, std::size_t precision, RingSpec ring);

/// Sum of coeff * q^qpow * prod f_r^{e_r}. Positive exponents multiply by the
/// sparse expansion of f_r, negative ones divide by it.
Series expand_expression(const EtaExpression& e, std::size_t precision, RingSpec ring);
Series expand_quotient(const EtaQuotient& q, std::size_t precision, RingSpec ring);

/// Truncated prod_{k>=0} (1 - q^{j+mk}) by direct multiplication.
Series expand_pochhammer(PochhammerFactor p, std::size_t precision, RingSpec ring);

}  // namespace qdissect
