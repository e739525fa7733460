#include "qdissect/series.hpp"

#include <algorithm>
#include <sstream>

namespace qdissect {

namespace {

using Residue = Series::Residue;
using IntVec = std::vector<Integer>;
using ResVec = std::vector<Residue>;

void require_same_ring(const Series& a, const Series& b) {
  if (a.ring() != b.ring())
    throw RingMismatch("ring mismatch: " + a.ring().to_string() + " vs " + b.ring().to_string());
}

void require_precision(std::size_t precision) {
  if (precision == 0) throw PrecisionError("series precision must be at least 1");
}

// A nonzero coefficient of the sparse operand. `small` is set when the value
// fits a signed long so GMP's *_ui kernels can be used.
struct SparseEntry {
  std::size_t index;
  const Integer* value;
  bool small;
  long small_value;
};

std::vector<SparseEntry> sparse_entries(const IntVec& v, std::size_t limit, std::size_t from) {
  std::vector<SparseEntry> out;
  for (std::size_t i = from; i < std::min(limit, v.size()); ++i) {
    if (sgn(v[i]) == 0) continue;
    bool small = v[i].fits_slong_p();
    out.push_back({i, &v[i], small, small ? v[i].get_si() : 0});
  }
  return out;
}

// target += e * x
inline void addmul(mpz_ptr target, const SparseEntry& e, mpz_srcptr x) {
  if (e.small) {
    if (e.small_value == 1) {
      mpz_add(target, target, x);
    } else if (e.small_value == -1) {
      mpz_sub(target, target, x);
    } else if (e.small_value > 0) {
      mpz_addmul_ui(target, x, static_cast<unsigned long>(e.small_value));
    } else {
      mpz_submul_ui(target, x, static_cast<unsigned long>(-(e.small_value + 1)) + 1);
    }
  } else {
    mpz_addmul(target, e.value->get_mpz_t(), x);
  }
}

// target -= e * x
inline void submul(mpz_ptr target, const SparseEntry& e, mpz_srcptr x) {
  if (e.small) {
    if (e.small_value == 1) {
      mpz_sub(target, target, x);
    } else if (e.small_value == -1) {
      mpz_add(target, target, x);
    } else if (e.small_value > 0) {
      mpz_submul_ui(target, x, static_cast<unsigned long>(e.small_value));
    } else {
      mpz_addmul_ui(target, x, static_cast<unsigned long>(-(e.small_value + 1)) + 1);
    }
  } else {
    mpz_submul(target, e.value->get_mpz_t(), x);
  }
}

std::size_t count_nonzero(const Series& s) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < s.precision(); ++i) n += s.coeff_is_zero(i) ? 0 : 1;
  return n;
}

IntVec mul_integers(const IntVec& dense, const IntVec& sparse, std::size_t n) {
  IntVec c(n);
  for (const auto& e : sparse_entries(sparse, n, 0)) {
    for (std::size_t i = 0; i + e.index < n; ++i) {
      if (sgn(dense[i]) == 0) continue;
      addmul(c[i + e.index].get_mpz_t(), e, dense[i].get_mpz_t());
    }
  }
  return c;
}

ResVec mul_residues(const ResVec& dense, const ResVec& sparse, std::size_t n, const ModArith& mod) {
  ResVec c(n, 0);
  if (mod.is_power_of_two()) {
    // Z/2^64 -> Z/m is a ring map, so wrap freely and mask once.
    for (std::size_t j = 0; j < n; ++j) {
      const Residue bj = sparse[j];
      if (bj == 0) continue;
      Residue* out = c.data() + j;
      for (std::size_t i = 0; i + j < n; ++i) out[i] += dense[i] * bj;
    }
    for (auto& v : c) v &= mod.m - 1;
    return c;
  }
  if (mod.m <= (std::uint64_t{1} << 32)) {
    std::vector<unsigned __int128> acc(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      const Residue bj = sparse[j];
      if (bj == 0) continue;
      for (std::size_t i = 0; i + j < n; ++i) acc[i + j] += static_cast<unsigned __int128>(dense[i] * bj);
    }
    for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<Residue>(acc[i] % mod.m);
    return c;
  }
  for (std::size_t j = 0; j < n; ++j) {
    const Residue bj = sparse[j];
    if (bj == 0) continue;
    for (std::size_t i = 0; i + j < n; ++i) c[i + j] = mod.add(c[i + j], mod.mul(dense[i], bj));
  }
  return c;
}

// c = num / den where den[0] has inverse `unit_inv`.
IntVec div_integers(const IntVec& num, const IntVec& den, std::size_t n) {
  const bool negate = sgn(den[0]) < 0;  // den[0] is +-1, its own inverse
  const auto entries = sparse_entries(den, n, 1);
  IntVec c(n);
  Integer acc;
  for (std::size_t k = 0; k < n; ++k) {
    acc = num[k];
    for (const auto& e : entries) {
      if (e.index > k) break;
      submul(acc.get_mpz_t(), e, c[k - e.index].get_mpz_t());
    }
    if (negate) mpz_neg(c[k].get_mpz_t(), acc.get_mpz_t());
    else mpz_swap(c[k].get_mpz_t(), acc.get_mpz_t());
  }
  return c;
}

ResVec div_residues(const ResVec& num, const ResVec& den, std::size_t n, const ModArith& mod) {
  const Residue unit_inv = mod.inverse(den[0]);
  std::vector<std::pair<std::size_t, Residue>> entries;
  for (std::size_t i = 1; i < n; ++i)
    if (den[i] != 0) entries.emplace_back(i, den[i]);
  ResVec c(n, 0);
  if (mod.is_power_of_two()) {
    for (std::size_t k = 0; k < n; ++k) {
      Residue acc = num[k];
      for (const auto& [i, v] : entries) {
        if (i > k) break;
        acc -= v * c[k - i];
      }
      c[k] = (acc * unit_inv) & (mod.m - 1);
    }
    return c;
  }
  for (std::size_t k = 0; k < n; ++k) {
    Residue acc = num[k];
    for (const auto& [i, v] : entries) {
      if (i > k) break;
      acc = mod.sub(acc, mod.mul(v, c[k - i]));
    }
    c[k] = mod.mul(acc, unit_inv);
  }
  return c;
}

void require_unit(const Series& a) {
  if (a.ring().is_exact()) {
    const Integer c0 = a.coeff(0);
    if (c0 != 1 && c0 != -1) throw NonUnit("constant term " + c0.get_str() + " is not a unit of Z");
  } else {
    ModArith{a.ring().modulus()}.inverse(a.residues()[0]);
  }
}

}  // namespace

Series Series::make(RingSpec ring, std::size_t precision,
                    const std::function<Integer(std::size_t)>& coeff_fn) {
  require_precision(precision);
  if (ring.is_exact()) {
    IntVec v(precision);
    for (std::size_t n = 0; n < precision; ++n) v[n] = coeff_fn(n);
    return Series(ring, std::move(v));
  }
  ModArith mod{ring.modulus()};
  ResVec v(precision);
  for (std::size_t n = 0; n < precision; ++n) v[n] = mod.reduce(coeff_fn(n));
  return Series(ring, std::move(v));
}

Series Series::zero(RingSpec ring, std::size_t precision) {
  require_precision(precision);
  if (ring.is_exact()) return Series(ring, IntVec(precision));
  return Series(ring, ResVec(precision, 0));
}

Series Series::one(RingSpec ring, std::size_t precision) {
  Series s = zero(ring, precision);
  std::visit([](auto& v) { v[0] = 1; }, s.coeffs_);
  return s;
}

Series Series::from_coeffs(RingSpec ring, std::span<const Integer> coeffs) {
  return make(ring, coeffs.size(), [&](std::size_t n) { return coeffs[n]; });
}

Series Series::from_coeffs(RingSpec ring, std::initializer_list<long> coeffs) {
  std::vector<long> v(coeffs);
  return make(ring, v.size(), [&](std::size_t n) { return Integer(v[n]); });
}

Series Series::from_integers(std::vector<Integer> coeffs) {
  require_precision(coeffs.size());
  return Series(RingSpec::integers(), std::move(coeffs));
}

Series Series::from_residues(std::uint64_t modulus, std::vector<Residue> coeffs) {
  require_precision(coeffs.size());
  for (auto& c : coeffs) c %= modulus;
  return Series(RingSpec::residues(modulus), std::move(coeffs));
}

std::size_t Series::precision() const {
  return std::visit([](const auto& v) { return v.size(); }, coeffs_);
}

Integer Series::coeff(std::size_t n) const {
  if (n >= precision()) throw PrecisionError("coefficient " + std::to_string(n) + " is beyond precision");
  if (ring_.is_exact()) return std::get<IntVec>(coeffs_)[n];
  Integer out;
  mpz_set_ui(out.get_mpz_t(), std::get<ResVec>(coeffs_)[n]);
  return out;
}

bool Series::coeff_is_zero(std::size_t n) const {
  if (ring_.is_exact()) return sgn(std::get<IntVec>(coeffs_)[n]) == 0;
  return std::get<ResVec>(coeffs_)[n] == 0;
}

std::span<const Integer> Series::integers() const {
  if (!ring_.is_exact()) throw RingMismatch("series is over " + ring_.to_string() + ", not Z");
  return std::get<IntVec>(coeffs_);
}

std::span<const Series::Residue> Series::residues() const {
  if (ring_.is_exact()) throw RingMismatch("series is over Z, not a residue ring");
  return std::get<ResVec>(coeffs_);
}

Series Series::truncated(std::size_t precision) const {
  require_precision(precision);
  if (precision > this->precision())
    throw PrecisionError("cannot truncate to " + std::to_string(precision) + " above precision " +
                         std::to_string(this->precision()));
  return std::visit(
      [&](const auto& v) {
        using V = std::decay_t<decltype(v)>;
        return Series(ring_, V(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(precision)));
      },
      coeffs_);
}

bool Series::is_zero() const {
  for (std::size_t i = 0; i < precision(); ++i)
    if (!coeff_is_zero(i)) return false;
  return true;
}

std::string Series::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < precision(); ++i) {
    if (i) os << ' ';
    os << coeff(i).get_str();
  }
  return os.str();
}

bool operator==(const Series& a, const Series& b) {
  return a.ring_ == b.ring_ && a.coeffs_ == b.coeffs_;
}

Series add(const Series& a, const Series& b) {
  require_same_ring(a, b);
  const std::size_t n = std::min(a.precision(), b.precision());
  if (a.ring().is_exact()) {
    const auto& x = std::get<IntVec>(a.coeffs_);
    const auto& y = std::get<IntVec>(b.coeffs_);
    IntVec c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = x[i] + y[i];
    return Series(a.ring(), std::move(c));
  }
  ModArith mod{a.ring().modulus()};
  const auto& x = std::get<ResVec>(a.coeffs_);
  const auto& y = std::get<ResVec>(b.coeffs_);
  ResVec c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = mod.add(x[i], y[i]);
  return Series(a.ring(), std::move(c));
}

Series neg(const Series& a) {
  if (a.ring().is_exact()) {
    IntVec c = std::get<IntVec>(a.coeffs_);
    for (auto& v : c) v = -v;
    return Series(a.ring(), std::move(c));
  }
  ModArith mod{a.ring().modulus()};
  ResVec c = std::get<ResVec>(a.coeffs_);
  for (auto& v : c) v = mod.neg(v);
  return Series(a.ring(), std::move(c));
}

Series sub(const Series& a, const Series& b) {
  require_same_ring(a, b);
  return add(a, neg(b));
}

Series mul(const Series& a, const Series& b) {
  require_same_ring(a, b);
  const std::size_t n = std::min(a.precision(), b.precision());
  const bool a_sparser = count_nonzero(a) < count_nonzero(b);
  const Series& dense = a_sparser ? b : a;
  const Series& sparse = a_sparser ? a : b;
  if (a.ring().is_exact())
    return Series(a.ring(), mul_integers(std::get<IntVec>(dense.coeffs_), std::get<IntVec>(sparse.coeffs_), n));
  return Series(a.ring(), mul_residues(std::get<ResVec>(dense.coeffs_), std::get<ResVec>(sparse.coeffs_), n,
                                       ModArith{a.ring().modulus()}));
}

Series scale(const Series& a, const Integer& c) {
  if (a.ring().is_exact()) {
    IntVec out = std::get<IntVec>(a.coeffs_);
    for (auto& v : out) v *= c;
    return Series(a.ring(), std::move(out));
  }
  ModArith mod{a.ring().modulus()};
  const Residue k = mod.reduce(c);
  ResVec out = std::get<ResVec>(a.coeffs_);
  for (auto& v : out) v = mod.mul(v, k);
  return Series(a.ring(), std::move(out));
}

Series div(const Series& a, const Series& b) {
  require_same_ring(a, b);
  require_unit(b);
  const std::size_t n = std::min(a.precision(), b.precision());
  if (a.ring().is_exact())
    return Series(a.ring(), div_integers(std::get<IntVec>(a.coeffs_), std::get<IntVec>(b.coeffs_), n));
  return Series(a.ring(), div_residues(std::get<ResVec>(a.coeffs_), std::get<ResVec>(b.coeffs_), n,
                                       ModArith{a.ring().modulus()}));
}

Series inv(const Series& a) {
  require_unit(a);
  return div(Series::one(a.ring(), a.precision()), a);
}

Series pow(const Series& a, std::int64_t e) {
  if (e < 0) {
    // -(e+1)+1 keeps INT64_MIN representable
    const auto mag = static_cast<std::uint64_t>(-(e + 1)) + 1;
    Series base = inv(a);
    Series result = Series::one(a.ring(), a.precision());
    for (std::uint64_t k = mag; k; k >>= 1) {
      if (k & 1) result = mul(result, base);
      if (k > 1) base = mul(base, base);
    }
    return result;
  }
  Series base = a;
  Series result = Series::one(a.ring(), a.precision());
  for (auto k = static_cast<std::uint64_t>(e); k; k >>= 1) {
    if (k & 1) result = mul(result, base);
    if (k > 1) base = mul(base, base);
  }
  return result;
}

Series scale_q(const Series& a, std::size_t m) {
  if (m == 0) throw std::invalid_argument("scale_q factor must be at least 1");
  const std::size_t n = a.precision() * m;
  return std::visit(
      [&](const auto& v) {
        using V = std::decay_t<decltype(v)>;
        V out(n);
        for (std::size_t i = 0; i < v.size(); ++i) out[i * m] = v[i];
        return Series(a.ring(), std::move(out));
      },
      a.coeffs_);
}

Series mul_qpow(const Series& a, std::size_t k) {
  return std::visit(
      [&](const auto& v) {
        using V = std::decay_t<decltype(v)>;
        V out(v.size() + k);
        std::copy(v.begin(), v.end(), out.begin() + static_cast<std::ptrdiff_t>(k));
        return Series(a.ring(), std::move(out));
      },
      a.coeffs_);
}

Series div_qpow(const Series& a, std::size_t k) {
  if (k >= a.precision())
    throw PrecisionError("dividing by q^" + std::to_string(k) + " leaves no coefficients");
  for (std::size_t i = 0; i < k; ++i)
    if (!a.coeff_is_zero(i))
      throw std::domain_error("coefficient of q^" + std::to_string(i) + " is nonzero; not divisible by q^" +
                              std::to_string(k));
  return std::visit(
      [&](const auto& v) {
        using V = std::decay_t<decltype(v)>;
        return Series(a.ring(), V(v.begin() + static_cast<std::ptrdiff_t>(k), v.end()));
      },
      a.coeffs_);
}

Series reduce_mod(const Series& a, std::uint64_t m) {
  if (m < 2) throw std::invalid_argument("reduction modulus must be at least 2");
  const RingSpec target = RingSpec::residues(m);
  if (a.ring().is_exact()) {
    const ModArith mod{m};
    const auto& v = std::get<IntVec>(a.coeffs_);
    ResVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = mod.reduce(v[i]);
    return Series(target, std::move(out));
  }
  if (a.ring().modulus() % m != 0)
    throw RingMismatch("cannot reduce " + a.ring().to_string() + " to Z/" + std::to_string(m));
  ResVec out = std::get<ResVec>(a.coeffs_);
  for (auto& v : out) v %= m;
  return Series(target, std::move(out));
}

Series exact_div_scalar(const Series& a, const Integer& c) {
  if (!a.ring().is_exact()) throw RingMismatch("exact division needs an integer series");
  if (c == 0) throw std::domain_error("division by zero");
  IntVec out = std::get<IntVec>(a.coeffs_);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!mpz_divisible_p(out[i].get_mpz_t(), c.get_mpz_t()))
      throw std::domain_error("coefficient of q^" + std::to_string(i) + " (" + out[i].get_str() +
                              ") is not divisible by " + c.get_str());
    mpz_divexact(out[i].get_mpz_t(), out[i].get_mpz_t(), c.get_mpz_t());
  }
  return Series(a.ring(), std::move(out));
}

}  // namespace qdissect
