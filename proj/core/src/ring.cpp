#include "qdissect/ring.hpp"

#include <numeric>

namespace qdissect {

RingSpec RingSpec::residues(std::uint64_t modulus) {
  if (modulus < 2) throw std::invalid_argument("residue modulus must be at least 2");
  if (modulus > (std::uint64_t{1} << 63)) throw std::invalid_argument("residue modulus exceeds 2^63");
  return RingSpec(Kind::residues, modulus);
}

std::string RingSpec::to_string() const {
  if (is_exact()) return "Z";
  return "Z/" + std::to_string(modulus_);
}

std::uint64_t ModArith::reduce(const Integer& v) const {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t), "LP64 required");
  return mpz_fdiv_ui(v.get_mpz_t(), m);
}

std::uint64_t ModArith::reduce(std::int64_t v) const {
  if (v >= 0) return static_cast<std::uint64_t>(v) % m;
  // -(v+1) avoids overflow at INT64_MIN
  std::uint64_t mag = static_cast<std::uint64_t>(-(v + 1)) + 1;
  return neg(mag % m);
}

std::uint64_t ModArith::inverse(std::uint64_t a) const {
  // extended Euclid on signed 128-bit values
  __int128 old_r = a % m, r = m, old_s = 1, s = 0;
  while (r != 0) {
    __int128 q = old_r / r;
    __int128 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw NonUnit("constant term " + std::to_string(a) + " is not a unit mod " + std::to_string(m));
  __int128 inv = old_s % static_cast<__int128>(m);
  if (inv < 0) inv += m;
  return static_cast<std::uint64_t>(inv);
}

}  // namespace qdissect
