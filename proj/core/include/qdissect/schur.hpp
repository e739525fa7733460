#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "qdissect/series.hpp"

namespace qdissect {

/// S(0), ..., S(N-1): overpartitions of Schur type, generating function
/// 1 / ((q;q^6)(q^5;q^6)(q^6;q^6)).
class SchurSeries {
 public:
  SchurSeries() = default;
  /// Throws std::invalid_argument if values is empty or S(0) != 1.
  explicit SchurSeries(std::vector<Integer> values);

  std::size_t size() const { return values_.size(); }
  const Integer& operator[](std::size_t n) const { return values_[n]; }
  const std::vector<Integer>& values() const { return values_; }

  /// Values reduced mod m.
  std::vector<std::uint64_t> residues(std::uint64_t m) const;
  Series as_series() const;

 private:
  std::vector<Integer> values_;
};

/// Parts allowed in the product: j = 0, 1, 5 (mod 6).
inline bool is_schur_part(std::uint64_t j) { return j % 6 == 0 || j % 6 == 1 || j % 6 == 5; }

/// Exact S(0..N-1) by multiplying in 1/(1-q^j) for each allowed part j, one
/// prefix-sum pass per part. Independent of the series code.
SchurSeries s_series(std::size_t count);

/// Number of partitions of n into parts = 0, 1, 5 (mod 6), by memoized
/// enumeration. Oracle scale: 0 <= n <= 80, std::out_of_range otherwise.
Integer oracle_part_count(std::size_t n);

/// Part classes of an overpartition counted by S(n), indexing the
/// difference matrix: 1-bar, 2-bar, 3-bar (overlined, by residue mod 3) and
/// plain 3 (non-overlined, necessarily divisible by 3).
enum class PartClass : std::uint8_t { one_bar = 0, two_bar = 1, three_bar = 2, three = 3 };

/// Minimal gaps between consecutive parts, row = larger part, column =
/// smaller part.
inline constexpr std::array<std::array<int, 4>, 4> kDifferenceMatrix{{
    {3, 2, 4, 1},
    {4, 3, 5, 2},
    {5, 4, 6, 3},
    {2, 1, 3, 0},
}};

/// Direct count of Schur-type overpartitions of n, 0 <= n <= 40.
///
/// Reading of the combinatorial conditions:
///  - a part is a size with an overline flag; only multiples of 3 may be
///    non-overlined, and 3-bar and 3 are distinct parts of equal size;
///  - the class of a part is its overline flag plus its residue mod 3;
///  - the smallest part is overlined and = 1, 2, 3 (mod 6), or plain and
///    = 0 (mod 6);
///  - consecutive parts lambda_i >= lambda_{i+1} satisfy
///    lambda_i - lambda_{i+1} >= A(u, v) and = A(u, v) (mod 6), so equal
///    adjacent parts only occur where A is 0 (two plain parts).
/// Throws std::out_of_range for n > 40.
Integer oracle_schur_overpartitions(std::size_t n);

/// Binary table cache: "SCHS1", u64 count, then per value a u32 byte length,
/// that many little-endian magnitude bytes, and a sign byte (1 = negative).
/// All integers little-endian.
void write_table_cache(const SchurSeries& table, std::ostream& out);
void write_table_cache(const SchurSeries& table, const std::filesystem::path& path);
/// Throws std::runtime_error on a malformed stream.
SchurSeries read_table_cache(std::istream& in);
SchurSeries read_table_cache(const std::filesystem::path& path);

/// One decimal value per line.
void write_table_decimal(const SchurSeries& table, std::ostream& out);

/// Table of at least `count` values: read from `cache` when it holds enough,
/// otherwise computed and (if a cache path is given) written back. The
/// result has exactly `count` entries.
SchurSeries load_or_build_table(std::size_t count, const std::optional<std::filesystem::path>& cache);

}  // namespace qdissect
