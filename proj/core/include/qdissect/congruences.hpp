#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qdissect/schur.hpp"

namespace qdissect {

/// Outcome of checking a congruence against a finite table. `empirical`
/// marks a conjectured statement that held on every tested value; it is
/// never reported as holds_so_far.
enum class CongruenceStatus { untested, holds_so_far, empirical, refuted };

std::string to_string(CongruenceStatus s);

/// Claim S(A n + B) = 0 (mod M) for all n.
struct CongruenceTriple {
  std::uint64_t A = 1;
  std::uint64_t B = 0;
  std::uint64_t M = 2;
  /// Largest n checked; absent when nothing was checked.
  std::optional<std::uint64_t> tested_to;
  CongruenceStatus status = CongruenceStatus::untested;
  /// First failing n when refuted.
  std::optional<std::uint64_t> refuted_at;

  /// Number of n values tested.
  std::uint64_t support() const { return tested_to ? *tested_to + 1 : 0; }

  /// Throws std::invalid_argument unless A >= 1, B < A, M >= 2.
  void validate() const;
  std::string to_string() const;
  /// {"A":..,"B":..,"M":..,"tested_to":..,"support":..,"status":".."}
  std::string to_json() const;
};

/// Claim S(a N + b) = S(c N + d) (mod M) for all N.
struct InternalCongruence {
  std::uint64_t a = 2;
  std::uint64_t b = 0;
  std::uint64_t c = 1;
  std::uint64_t d = 0;
  std::uint64_t M = 2;
  /// Conjectured rather than proved; a surviving check reports `empirical`.
  bool conjectural = false;
  std::optional<std::uint64_t> tested_to;
  CongruenceStatus status = CongruenceStatus::untested;
  std::optional<std::uint64_t> refuted_at;

  /// Throws std::invalid_argument unless a > c >= 1, b < a, d < c, M >= 2.
  void validate() const;
  std::string to_string() const;
  std::string to_json() const;
};

/// (A, B) = (2^{5+2 alpha}, 2^{5+2 alpha} - (2^{2+2 alpha} - 1)/3).
/// Throws std::overflow_error once A no longer fits 63 bits (alpha >= 29).
struct FamilyProgression {
  std::uint64_t A;
  std::uint64_t B;
};
FamilyProgression family_progression(unsigned alpha);

/// Check t against every n with A n + B < table.size(). Throws
/// std::invalid_argument when not even n = 0 is covered.
CongruenceTriple check_triple(CongruenceTriple t, const SchurSeries& table);

/// Same semantics for internal congruences (a N + b must be covered).
InternalCongruence check_internal(InternalCongruence c, const SchurSeries& table);

struct ScanOptions {
  std::uint64_t max_a = 128;
  std::set<std::uint64_t> moduli{8, 16, 32};
  /// Minimum number of tested n for a survivor to be reported; at least 20.
  std::uint64_t min_support = 50;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 1;
};

/// Every (A, B, M) with A <= max_a and M in moduli such that S(An+B) = 0
/// (mod M) for all tested n, with at least min_support tests. Sorted by
/// (M desc, A, B); the result does not depend on the thread count.
std::vector<CongruenceTriple> scan(const ScanOptions& options, const SchurSeries& table);

struct FamilyCheck {
  unsigned alpha;
  FamilyProgression progression;
  /// False when B(alpha) lies beyond the table.
  bool testable;
  CongruenceTriple result;
};

/// check_triple((A(alpha), B(alpha), 16)) for alpha = 0..alpha_max.
std::vector<FamilyCheck> verify_family(unsigned alpha_max, const SchurSeries& table);

/// The internal congruences proved for S(n) (mod 16 and mod 8) followed by
/// the four conjectured ones modulo 32.
std::vector<InternalCongruence> known_internal_congruences();

}  // namespace qdissect
