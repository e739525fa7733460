#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qdissect/eta.hpp"
#include "qdissect/series.hpp"

namespace qdissect {

/// Coefficients q^{mn+r} of `a`, reindexed to q^n. This is "take the terms in
/// the residue class r mod m, divide by q^r, replace q^m by q" in one step.
/// Result precision is ceil((a.precision - r) / m).
Series extract(const Series& a, std::uint64_t m, std::uint64_t r);

/// (m, r) steps applied left to right.
struct ExtractionRecipe {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> steps;

  /// Throws std::invalid_argument unless every step has m >= 2, 0 <= r < m.
  void validate() const;
  /// Smallest root precision that still yields `precision` coefficients.
  std::size_t required_root_precision(std::size_t precision) const;
  /// Composite progression: coefficient n of the result is coefficient
  /// stride*n + offset of the root.
  std::pair<std::uint64_t, std::uint64_t> progression() const;

  Series apply(const Series& root) const;
  std::string to_string() const;

  friend bool operator==(const ExtractionRecipe&, const ExtractionRecipe&) = default;
};

/// A named series, optionally dissected: "@S[16,11]" in catalog syntax.
struct RootExtraction {
  std::string root;
  ExtractionRecipe recipe;

  friend bool operator==(const RootExtraction&, const RootExtraction&) = default;
};

struct IdentityRecord {
  std::string id;
  std::variant<EtaExpression, RootExtraction> lhs;
  EtaExpression rhs;
  /// Absent means exact equality over Z.
  std::optional<std::uint64_t> modulus;
  std::string anchor;
};

/// First mismatch between two sides, with up to three coefficients of
/// context on each side starting at the mismatch.
struct Mismatch {
  std::size_t degree;
  Integer lhs;
  Integer rhs;
  std::vector<Integer> lhs_context;
  std::vector<Integer> rhs_context;
};

struct VerificationReport {
  std::string id;
  bool passed = false;
  std::size_t precision = 0;
  RingSpec ring = RingSpec::integers();
  std::optional<Mismatch> mismatch;
  /// Root precision demanded by the extraction recipe, when there is one.
  std::optional<std::size_t> root_precision;
  /// Set when the check could not run (unknown root, bad precision, ...).
  std::string error;

  std::string summary() const;
};

/// Compare two series coefficientwise over min(precision).
VerificationReport compare_series(const std::string& id, const Series& lhs, const Series& rhs);

/// Thread-safe source of the named root series. Known names:
///   S     sum S(n) q^n = f2 f3 / (f1 f6^2)
///   negq  (-q; -q)_inf, i.e. f1 with q -> -q
/// A residue root is derived from a cached root over a multiple modulus or
/// over Z when one is available with enough precision.
class RootProvider {
 public:
  static bool known(const std::string& name);

  /// Throws std::invalid_argument for unknown names.
  Series get(const std::string& name, std::size_t precision, RingSpec ring);

  /// Compute once ahead of time (e.g. before fanning out to threads).
  void prime(const std::string& name, std::size_t precision, RingSpec ring);

 private:
  static Series compute(const std::string& name, std::size_t precision, RingSpec ring);

  std::mutex mutex_;
  std::map<std::string, std::vector<Series>> cache_;
};

/// Expand both sides of `rec` at `precision` over Z or Z/modulus and compare.
/// Failures to evaluate (unknown root, ...) come back as a failed report
/// with `error` set.
VerificationReport verify_identity(const IdentityRecord& rec, std::size_t precision, RootProvider& roots);

/// Dissect the named root with `recipe` and compare with `rhs`.
VerificationReport verify_dissection_theorem(const std::string& root, const ExtractionRecipe& recipe,
                                             const EtaExpression& rhs, std::optional<std::uint64_t> modulus,
                                             std::size_t precision, RootProvider& roots);

/// Default verification precisions: exact identities and congruence records.
inline constexpr std::size_t kExactPrecision = 500;
inline constexpr std::size_t kCongruencePrecision = 2000;

struct CatalogRunOptions {
  std::size_t exact_precision = kExactPrecision;
  std::size_t congruence_precision = kCongruencePrecision;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 1;
};

/// Verify every record, in parallel, returning reports in input order.
std::vector<VerificationReport> verify_catalog(const std::vector<IdentityRecord>& records,
                                               const CatalogRunOptions& options, RootProvider& roots);

}  // namespace qdissect
