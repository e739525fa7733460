#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qdissect/series.hpp"

namespace qdtest {

using qdissect::Integer;
using qdissect::RingSpec;
using qdissect::Series;

/// Small deterministic generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  std::size_t precision(std::size_t lo = 1, std::size_t hi = 64) {
    return static_cast<std::size_t>(range(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
  }
  bool coin() { return range(0, 1) == 1; }

  std::uint64_t modulus() {
    static const std::uint64_t pool[] = {2, 3, 4, 7, 8, 16, 32, 97, 1000003, (1ull << 32) + 15, 1ull << 40,
                                         (1ull << 62) + 135, 1ull << 63};
    return pool[range(0, std::size(pool) - 1)];
  }

  RingSpec ring() { return coin() ? RingSpec::integers() : RingSpec::residues(modulus()); }

  /// Dense-ish random integer, occasionally huge.
  Integer integer() {
    if (range(0, 9) == 0) {
      Integer v = range(-1000000, 1000000);
      v *= Integer(1) << static_cast<unsigned long>(range(40, 120));
      return v + range(-5, 5);
    }
    return range(-50, 50);
  }

  /// Random series with a sprinkling of zero coefficients.
  Series series(RingSpec ring, std::size_t precision) {
    std::vector<Integer> c(precision);
    for (auto& v : c) v = range(0, 3) == 0 ? Integer(0) : integer();
    return to_ring(ring, c);
  }

  /// Random series with constant term +-1, invertible over every ring.
  Series unit_series(RingSpec ring, std::size_t precision) {
    std::vector<Integer> c(precision);
    for (auto& v : c) v = range(0, 3) == 0 ? Integer(0) : integer();
    c[0] = coin() ? 1 : -1;
    return to_ring(ring, c);
  }

  static Series to_ring(RingSpec ring, const std::vector<Integer>& c) {
    const Series z = Series::from_integers(c);
    return ring.is_exact() ? z : qdissect::reduce_mod(z, ring.modulus());
  }

 private:
  std::mt19937_64 rng_;
};

/// Schoolbook product over Z, no sparsity tricks.
inline std::vector<Integer> naive_mul(const std::vector<Integer>& a, const std::vector<Integer>& b, std::size_t n) {
  std::vector<Integer> out(n);
  for (std::size_t i = 0; i < n && i < a.size(); ++i)
    for (std::size_t j = 0; i + j < n && j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

/// prod_{k=1}^{...} (1 - q^{rk}) truncated to n by repeated multiplication.
inline std::vector<Integer> naive_eta(std::uint64_t r, std::size_t n) {
  std::vector<Integer> c(n);
  c[0] = 1;
  for (std::uint64_t k = r; k < n; k += r)
    for (std::size_t i = n; i-- > k;) c[i] -= c[i - k];
  return c;
}

/// Number of partitions of n into parts from `allowed` (strictly positive),
/// by plain recursion over the largest part.
inline Integer count_partitions(std::uint64_t n, const std::vector<std::uint64_t>& allowed, std::size_t idx = 0) {
  if (n == 0) return 1;
  Integer total = 0;
  for (std::size_t i = idx; i < allowed.size(); ++i)
    if (allowed[i] <= n) total += count_partitions(n - allowed[i], allowed, i);
  return total;
}

inline std::vector<Integer> to_vec(const Series& s) {
  std::vector<Integer> out;
  for (std::size_t n = 0; n < s.precision(); ++n) out.push_back(s.coeff(n));
  return out;
}

}  // namespace qdtest
