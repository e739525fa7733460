#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace qdissect {

/// Arbitrary-precision integer used for exact coefficients.
using Integer = mpz_class;

/// Raised when two operands live over different coefficient rings.
class RingMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an inverse is requested for a non-unit.
class NonUnit : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Coefficient ring of a series: the integers, or Z/mZ with 2 <= m <= 2^63.
class RingSpec {
 public:
  enum class Kind { integers, residues };

  static RingSpec integers() { return RingSpec(Kind::integers, 0); }
  static RingSpec residues(std::uint64_t modulus);

  Kind kind() const { return kind_; }
  bool is_exact() const { return kind_ == Kind::integers; }
  /// Zero for the integers.
  std::uint64_t modulus() const { return modulus_; }

  std::string to_string() const;

  friend bool operator==(const RingSpec&, const RingSpec&) = default;

 private:
  RingSpec(Kind kind, std::uint64_t modulus) : kind_(kind), modulus_(modulus) {}

  Kind kind_;
  std::uint64_t modulus_;
};

/// Word-sized arithmetic modulo m. Values are kept in [0, m).
struct ModArith {
  std::uint64_t m;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;  // a, b < 2^63 so no wrap
    return s >= m ? s - m : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + (m - b); }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : m - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
  }
  std::uint64_t reduce(const Integer& v) const;
  std::uint64_t reduce(std::int64_t v) const;
  /// Multiplicative inverse; throws NonUnit when gcd(a, m) != 1.
  std::uint64_t inverse(std::uint64_t a) const;
  bool is_power_of_two() const { return (m & (m - 1)) == 0; }
};

}  // namespace qdissect
