#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qdissect/ring.hpp"

namespace qdissect {

/// Raised when an operation cannot produce even one trustworthy coefficient,
/// or is handed a precision outside its contract.
class PrecisionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Truncated power series a_0 + a_1 q + ... + a_{N-1} q^{N-1} over a RingSpec.
///
/// The precision N is part of the value: every coefficient below N is known,
/// nothing at or above N is. Binary operations return the smaller precision of
/// their inputs; no operation ever extends precision implicitly.
///
/// Values are immutable once built, so a Series can be shared across threads.
class Series {
 public:
  using Residue = std::uint64_t;

  /// coeffs[n] = coeff_fn(n), reduced into `ring`. Throws PrecisionError on
  /// precision 0.
  static Series make(RingSpec ring, std::size_t precision,
                     const std::function<Integer(std::size_t)>& coeff_fn);
  static Series zero(RingSpec ring, std::size_t precision);
  static Series one(RingSpec ring, std::size_t precision);
  /// Precision is the list length.
  static Series from_coeffs(RingSpec ring, std::span<const Integer> coeffs);
  static Series from_coeffs(RingSpec ring, std::initializer_list<long> coeffs);
  static Series from_integers(std::vector<Integer> coeffs);
  static Series from_residues(std::uint64_t modulus, std::vector<Residue> coeffs);

  const RingSpec& ring() const { return ring_; }
  std::size_t precision() const;

  /// Coefficient of q^n as an integer; residues come back in [0, m).
  Integer coeff(std::size_t n) const;
  bool coeff_is_zero(std::size_t n) const;

  /// Direct views. Throw RingMismatch when called on the wrong ring kind.
  std::span<const Integer> integers() const;
  std::span<const Residue> residues() const;

  Series truncated(std::size_t precision) const;
  bool is_zero() const;

  /// Space-separated coefficients, lowest degree first.
  std::string to_string() const;

  friend bool operator==(const Series& a, const Series& b);

 private:
  using Storage = std::variant<std::vector<Integer>, std::vector<Residue>>;

  Series(RingSpec ring, Storage coeffs) : ring_(ring), coeffs_(std::move(coeffs)) {}

  RingSpec ring_;
  Storage coeffs_;

  friend Series add(const Series&, const Series&);
  friend Series sub(const Series&, const Series&);
  friend Series neg(const Series&);
  friend Series mul(const Series&, const Series&);
  friend Series scale(const Series&, const Integer&);
  friend Series inv(const Series&);
  friend Series div(const Series&, const Series&);
  friend Series scale_q(const Series&, std::size_t);
  friend Series mul_qpow(const Series&, std::size_t);
  friend Series reduce_mod(const Series&, std::uint64_t);
  friend Series exact_div_scalar(const Series&, const Integer&);
  friend Series div_qpow(const Series&, std::size_t);
};

Series add(const Series& a, const Series& b);
Series sub(const Series& a, const Series& b);
Series neg(const Series& a);
/// Truncated Cauchy product. The sparser operand drives the loop, so
/// multiplying by an eta expansion costs O(N * nonzeros).
Series mul(const Series& a, const Series& b);
/// Multiply every coefficient by an integer constant.
Series scale(const Series& a, const Integer& c);
/// Throws NonUnit unless the constant term is a unit (+-1 over Z).
Series inv(const Series& a);
/// a * inv(b) without materialising inv(b).
Series div(const Series& a, const Series& b);
/// Binary exponentiation; negative exponents go through inv.
Series pow(const Series& a, std::int64_t e);
/// a(q^m); precision grows to a.precision * m.
Series scale_q(const Series& a, std::size_t m);
/// q^k * a; precision grows by k.
Series mul_qpow(const Series& a, std::size_t k);
/// Coefficientwise reduction of an integer series into Z/m. A residue series
/// may also be reduced to a divisor of its modulus.
Series reduce_mod(const Series& a, std::uint64_t m);

/// Divide every coefficient by c, throwing std::domain_error if one is not a
/// multiple. Integers only.
Series exact_div_scalar(const Series& a, const Integer& c);
/// Drop the first k coefficients, asserting they are zero (a / q^k).
Series div_qpow(const Series& a, std::size_t k);

inline Series operator+(const Series& a, const Series& b) { return add(a, b); }
inline Series operator-(const Series& a, const Series& b) { return sub(a, b); }
inline Series operator-(const Series& a) { return neg(a); }
inline Series operator*(const Series& a, const Series& b) { return mul(a, b); }

}  // namespace qdissect
