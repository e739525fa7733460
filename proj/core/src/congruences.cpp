#include "qdissect/congruences.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qdissect/parallel.hpp"

namespace qdissect {

std::string to_string(CongruenceStatus s) {
  switch (s) {
    case CongruenceStatus::untested: return "untested";
    case CongruenceStatus::holds_so_far: return "holds-so-far";
    case CongruenceStatus::empirical: return "empirical";
    case CongruenceStatus::refuted: return "refuted";
  }
  return "unknown";
}

namespace {

std::string status_text(CongruenceStatus s, const std::optional<std::uint64_t>& refuted_at) {
  if (s == CongruenceStatus::refuted && refuted_at) return "refuted-at(" + std::to_string(*refuted_at) + ")";
  return to_string(s);
}

nlohmann::ordered_json tested_json(const std::optional<std::uint64_t>& tested_to) {
  return tested_to ? nlohmann::ordered_json(*tested_to) : nlohmann::ordered_json(nullptr);
}

bool divides(const Integer& v, std::uint64_t m) { return mpz_fdiv_ui(v.get_mpz_t(), m) == 0; }

}  // namespace

void CongruenceTriple::validate() const {
  if (A < 1) throw std::invalid_argument("A must be positive");
  if (B >= A) throw std::invalid_argument("B must satisfy 0 <= B < A");
  if (M < 2) throw std::invalid_argument("M must be at least 2");
}

std::string CongruenceTriple::to_string() const {
  std::ostringstream os;
  os << "S(" << A << "n+" << B << ") = 0 (mod " << M << "): " << status_text(status, refuted_at);
  if (tested_to) os << ", tested n <= " << *tested_to;
  return os.str();
}

std::string CongruenceTriple::to_json() const {
  nlohmann::ordered_json j;
  j["A"] = A;
  j["B"] = B;
  j["M"] = M;
  j["tested_to"] = tested_json(tested_to);
  j["support"] = support();
  j["status"] = status_text(status, refuted_at);
  return j.dump();
}

void InternalCongruence::validate() const {
  if (!(a > c && c >= 1)) throw std::invalid_argument("internal congruence needs a > c >= 1");
  if (b >= a) throw std::invalid_argument("internal congruence needs 0 <= b < a");
  if (d >= c) throw std::invalid_argument("internal congruence needs 0 <= d < c");
  if (M < 2) throw std::invalid_argument("M must be at least 2");
}

std::string InternalCongruence::to_string() const {
  std::ostringstream os;
  os << "S(" << a << "N+" << b << ") = S(" << c << "N+" << d << ") (mod " << M
     << "): " << status_text(status, refuted_at);
  if (tested_to) os << ", tested N <= " << *tested_to;
  return os.str();
}

std::string InternalCongruence::to_json() const {
  nlohmann::ordered_json j;
  j["a"] = a;
  j["b"] = b;
  j["c"] = c;
  j["d"] = d;
  j["M"] = M;
  j["tested_to"] = tested_json(tested_to);
  j["support"] = tested_to ? *tested_to + 1 : 0;
  j["status"] = status_text(status, refuted_at);
  return j.dump();
}

FamilyProgression family_progression(unsigned alpha) {
  const unsigned shift = 5 + 2 * alpha;
  if (shift > 62) throw std::overflow_error("family progression exceeds 63-bit range");
  const std::uint64_t A = std::uint64_t{1} << shift;
  const std::uint64_t tail = ((std::uint64_t{1} << (2 + 2 * alpha)) - 1) / 3;  // exact: 4^k = 1 mod 3
  return {A, A - tail};
}

CongruenceTriple check_triple(CongruenceTriple t, const SchurSeries& table) {
  t.validate();
  if (t.B >= table.size())
    throw std::invalid_argument("table of " + std::to_string(table.size()) + " values does not reach S(" +
                                std::to_string(t.B) + ")");
  t.status = CongruenceStatus::holds_so_far;
  t.refuted_at.reset();
  std::uint64_t n = 0;
  for (std::uint64_t idx = t.B; idx < table.size(); idx += t.A, ++n) {
    t.tested_to = n;
    if (!divides(table[idx], t.M)) {
      t.status = CongruenceStatus::refuted;
      t.refuted_at = n;
      break;
    }
  }
  return t;
}

InternalCongruence check_internal(InternalCongruence c, const SchurSeries& table) {
  c.validate();
  if (c.b >= table.size())
    throw std::invalid_argument("table of " + std::to_string(table.size()) + " values does not reach S(" +
                                std::to_string(c.b) + ")");
  c.status = c.conjectural ? CongruenceStatus::empirical : CongruenceStatus::holds_so_far;
  c.refuted_at.reset();
  Integer diff;
  std::uint64_t n = 0;
  for (std::uint64_t hi = c.b, lo = c.d; hi < table.size(); hi += c.a, lo += c.c, ++n) {
    c.tested_to = n;
    diff = table[hi] - table[lo];
    if (!divides(diff, c.M)) {
      c.status = CongruenceStatus::refuted;
      c.refuted_at = n;
      break;
    }
  }
  return c;
}

namespace {

template <typename R>
std::vector<CongruenceTriple> scan_residues(const std::vector<R>& res, std::uint64_t lcm, const ScanOptions& options) {
  const std::uint64_t size = res.size();
  std::vector<std::vector<CongruenceTriple>> per_a(options.max_a);
  parallel_for(options.max_a, options.threads, [&](std::size_t i) {
    const std::uint64_t A = i + 1;
    for (std::uint64_t B = 0; B < A && B < size; ++B) {
      const std::uint64_t support = (size - 1 - B) / A + 1;
      if (support < options.min_support) continue;
      // gcd(lcm, all residues) is divisible by M exactly when every value is.
      std::uint64_t g = lcm;
      for (std::uint64_t idx = B; idx < size && g != 1; idx += A) g = std::gcd(g, static_cast<std::uint64_t>(res[idx]));
      if (g == 1) continue;
      for (const auto M : options.moduli) {
        if (g % M != 0) continue;
        CongruenceTriple t;
        t.A = A;
        t.B = B;
        t.M = M;
        t.tested_to = support - 1;
        t.status = CongruenceStatus::holds_so_far;
        per_a[i].push_back(t);
      }
    }
  });
  std::vector<CongruenceTriple> out;
  for (auto& v : per_a) out.insert(out.end(), v.begin(), v.end());
  std::sort(out.begin(), out.end(), [](const CongruenceTriple& x, const CongruenceTriple& y) {
    if (x.M != y.M) return x.M > y.M;
    if (x.A != y.A) return x.A < y.A;
    return x.B < y.B;
  });
  return out;
}

}  // namespace

std::vector<CongruenceTriple> scan(const ScanOptions& options, const SchurSeries& table) {
  if (options.moduli.empty()) throw std::invalid_argument("scan needs at least one modulus");
  if (options.min_support < 20) throw std::invalid_argument("min_support must be at least 20");
  if (options.max_a < 1) throw std::invalid_argument("max_a must be at least 1");
  std::uint64_t lcm = 1;
  for (const auto M : options.moduli) {
    if (M < 2) throw std::invalid_argument("scan moduli must be at least 2");
    lcm = std::lcm(lcm, M);
    if (lcm > (std::uint64_t{1} << 62)) throw std::overflow_error("lcm of scan moduli too large");
  }
  const auto res = table.residues(lcm);
  if (lcm <= 256) {
    std::vector<std::uint8_t> bytes(res.begin(), res.end());
    return scan_residues(bytes, lcm, options);
  }
  return scan_residues(res, lcm, options);
}

std::vector<FamilyCheck> verify_family(unsigned alpha_max, const SchurSeries& table) {
  std::vector<FamilyCheck> out;
  for (unsigned alpha = 0; alpha <= alpha_max; ++alpha) {
    FamilyCheck fc{alpha, family_progression(alpha), false, {}};
    fc.result.A = fc.progression.A;
    fc.result.B = fc.progression.B;
    fc.result.M = 16;
    fc.testable = fc.progression.B < table.size();
    if (fc.testable) fc.result = check_triple(fc.result, table);
    out.push_back(fc);
  }
  return out;
}

std::vector<InternalCongruence> known_internal_congruences() {
  auto ic = [](std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d, std::uint64_t M, bool conj) {
    InternalCongruence x;
    x.a = a;
    x.b = b;
    x.c = c;
    x.d = d;
    x.M = M;
    x.conjectural = conj;
    return x;
  };
  return {
      ic(256, 171, 64, 43, 16, false),
      ic(64, 43, 16, 11, 8, false),
      ic(64, 59, 16, 15, 8, false),
      ic(256, 123, 64, 31, 32, true),
      ic(256, 171, 64, 43, 32, true),
      ic(256, 235, 64, 59, 32, true),
      ic(256, 251, 64, 63, 32, true),
  };
}

}  // namespace qdissect
