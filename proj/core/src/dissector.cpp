#include "qdissect/dissector.hpp"

#include <numeric>
#include <sstream>

#include "qdissect/parallel.hpp"

namespace qdissect {

Series extract(const Series& a, std::uint64_t m, std::uint64_t r) {
  if (m < 2) throw std::invalid_argument("extraction modulus must be at least 2");
  if (r >= m) throw std::invalid_argument("extraction residue must be below the modulus");
  if (a.precision() <= r)
    throw PrecisionError("precision " + std::to_string(a.precision()) + " yields no coefficient in class " +
                         std::to_string(r) + " mod " + std::to_string(m));
  const std::size_t n = (a.precision() - r + m - 1) / m;
  if (a.ring().is_exact()) {
    const auto v = a.integers();
    std::vector<Integer> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = v[i * m + r];
    return Series::from_integers(std::move(out));
  }
  const auto v = a.residues();
  std::vector<Series::Residue> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = v[i * m + r];
  return Series::from_residues(a.ring().modulus(), std::move(out));
}

void ExtractionRecipe::validate() const {
  for (const auto& [m, r] : steps) {
    if (m < 2) throw std::invalid_argument("extraction modulus must be at least 2");
    if (r >= m) throw std::invalid_argument("extraction residue must be below the modulus");
  }
}

std::size_t ExtractionRecipe::required_root_precision(std::size_t precision) const {
  // ceil((x - r)/m) >= p  <=>  x >= m(p-1) + r + 1
  std::size_t need = precision;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) need = it->first * (need - 1) + it->second + 1;
  return need;
}

std::pair<std::uint64_t, std::uint64_t> ExtractionRecipe::progression() const {
  std::uint64_t stride = 1, offset = 0;
  for (const auto& [m, r] : steps) {
    offset += stride * r;
    stride *= m;
  }
  return {stride, offset};
}

Series ExtractionRecipe::apply(const Series& root) const {
  validate();
  Series s = root;
  for (const auto& [m, r] : steps) s = extract(s, m, r);
  return s;
}

std::string ExtractionRecipe::to_string() const {
  std::string out;
  for (const auto& [m, r] : steps) out += "[" + std::to_string(m) + "," + std::to_string(r) + "]";
  return out;
}

std::string VerificationReport::summary() const {
  std::ostringstream os;
  if (!error.empty()) {
    os << "ERROR " << id << ": " << error;
    return os.str();
  }
  os << (passed ? "PASS " : "FAIL ") << id << " [" << ring.to_string() << ", precision " << precision;
  if (root_precision) os << ", root precision " << *root_precision;
  os << "]";
  if (mismatch) {
    os << " first mismatch at degree " << mismatch->degree << ": lhs " << mismatch->lhs.get_str() << " vs rhs "
       << mismatch->rhs.get_str();
  }
  return os.str();
}

VerificationReport compare_series(const std::string& id, const Series& lhs, const Series& rhs) {
  if (lhs.ring() != rhs.ring())
    throw RingMismatch("ring mismatch: " + lhs.ring().to_string() + " vs " + rhs.ring().to_string());
  VerificationReport rep;
  rep.id = id;
  rep.ring = lhs.ring();
  rep.precision = std::min(lhs.precision(), rhs.precision());
  rep.passed = true;
  for (std::size_t n = 0; n < rep.precision; ++n) {
    if (lhs.coeff(n) == rhs.coeff(n)) continue;
    Mismatch mm{n, lhs.coeff(n), rhs.coeff(n), {}, {}};
    for (std::size_t k = n; k < std::min(rep.precision, n + 3); ++k) {
      mm.lhs_context.push_back(lhs.coeff(k));
      mm.rhs_context.push_back(rhs.coeff(k));
    }
    rep.passed = false;
    rep.mismatch = std::move(mm);
    break;
  }
  return rep;
}

bool RootProvider::known(const std::string& name) { return name == "S" || name == "negq"; }

Series RootProvider::compute(const std::string& name, std::size_t precision, RingSpec ring) {
  if (name == "S") return expand_expression(parse("f2*f3/(f1*f6^2)"), precision, ring);
  if (name == "negq") {
    const Series f1 = expand_eta(1, precision, RingSpec::integers());
    return Series::make(ring, precision, [&](std::size_t n) {
      return n % 2 ? Integer(-f1.coeff(n)) : f1.coeff(n);
    });
  }
  throw std::invalid_argument("unknown root series '" + name + "'");
}

Series RootProvider::get(const std::string& name, std::size_t precision, RingSpec ring) {
  if (!known(name)) throw std::invalid_argument("unknown root series '" + name + "'");
  std::unique_lock lock(mutex_);
  const auto& slots = cache_[name];
  for (const auto& s : slots) {
    if (s.precision() < precision) continue;
    if (s.ring() == ring) return s.truncated(precision);
  }
  if (!ring.is_exact()) {
    for (const auto& s : slots) {
      if (s.precision() < precision) continue;
      if (s.ring().is_exact() || s.ring().modulus() % ring.modulus() == 0)
        return reduce_mod(s.truncated(precision), ring.modulus());
    }
  }
  lock.unlock();
  Series fresh = compute(name, precision, ring);
  lock.lock();
  cache_[name].push_back(fresh);
  return fresh;
}

void RootProvider::prime(const std::string& name, std::size_t precision, RingSpec ring) {
  (void)get(name, precision, ring);
}

namespace {

VerificationReport error_report(const std::string& id, std::size_t precision, const std::string& msg) {
  VerificationReport rep;
  rep.id = id;
  rep.precision = precision;
  rep.error = msg;
  return rep;
}

RingSpec ring_for(std::optional<std::uint64_t> modulus) {
  return modulus ? RingSpec::residues(*modulus) : RingSpec::integers();
}

}  // namespace

VerificationReport verify_dissection_theorem(const std::string& root, const ExtractionRecipe& recipe,
                                             const EtaExpression& rhs, std::optional<std::uint64_t> modulus,
                                             std::size_t precision, RootProvider& roots) {
  const std::string id = "@" + root + recipe.to_string();
  if (!RootProvider::known(root)) return error_report(id, precision, "unknown root series '" + root + "'");
  if (precision == 0) return error_report(id, precision, "precision must be at least 1");
  recipe.validate();
  const RingSpec ring = ring_for(modulus);
  const std::size_t need = recipe.required_root_precision(precision);
  const Series lhs = recipe.apply(roots.get(root, need, ring));
  if (lhs.precision() < precision)
    return error_report(id, precision, "insufficient precision after extraction; root needs " + std::to_string(need));
  VerificationReport rep = compare_series(id, lhs.truncated(precision), expand_expression(rhs, precision, ring));
  rep.root_precision = need;
  return rep;
}

VerificationReport verify_identity(const IdentityRecord& rec, std::size_t precision, RootProvider& roots) {
  try {
    const RingSpec ring = ring_for(rec.modulus);
    VerificationReport rep;
    if (const auto* root = std::get_if<RootExtraction>(&rec.lhs)) {
      rep = verify_dissection_theorem(root->root, root->recipe, rec.rhs, rec.modulus, precision, roots);
    } else {
      const auto& lhs = std::get<EtaExpression>(rec.lhs);
      rep = compare_series(rec.id, expand_expression(lhs, precision, ring), expand_expression(rec.rhs, precision, ring));
    }
    rep.id = rec.id;
    return rep;
  } catch (const std::exception& e) {
    return error_report(rec.id, precision, e.what());
  }
}

std::vector<VerificationReport> verify_catalog(const std::vector<IdentityRecord>& records,
                                               const CatalogRunOptions& options, RootProvider& roots) {
  auto precision_for = [&](const IdentityRecord& r) {
    return r.modulus ? options.congruence_precision : options.exact_precision;
  };

  // One root per (name, exact/residue) at the largest precision any record
  // needs; residue records share a root over the lcm of their moduli.
  struct Need {
    std::size_t exact = 0;
    std::size_t residue = 0;
    std::uint64_t lcm = 1;
  };
  std::map<std::string, Need> needs;
  for (const auto& r : records) {
    const auto* root = std::get_if<RootExtraction>(&r.lhs);
    if (!root || !RootProvider::known(root->root)) continue;
    try {
      root->recipe.validate();
    } catch (const std::exception&) {
      continue;  // reported per record below
    }
    const std::size_t need = root->recipe.required_root_precision(precision_for(r));
    Need& n = needs[root->root];
    if (r.modulus) {
      n.residue = std::max(n.residue, need);
      n.lcm = std::lcm(n.lcm, *r.modulus);
    } else {
      n.exact = std::max(n.exact, need);
    }
  }
  std::vector<std::tuple<std::string, std::size_t, RingSpec>> jobs;
  for (const auto& [name, n] : needs) {
    if (n.exact) jobs.emplace_back(name, n.exact, RingSpec::integers());
    if (n.residue) jobs.emplace_back(name, n.residue, RingSpec::residues(n.lcm));
  }
  parallel_for(jobs.size(), options.threads, [&](std::size_t i) {
    const auto& [name, prec, ring] = jobs[i];
    roots.prime(name, prec, ring);
  });

  std::vector<VerificationReport> out(records.size());
  parallel_for(records.size(), options.threads,
               [&](std::size_t i) { out[i] = verify_identity(records[i], precision_for(records[i]), roots); });
  return out;
}

}  // namespace qdissect
