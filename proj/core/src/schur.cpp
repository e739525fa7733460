#include "qdissect/schur.hpp"

#include <cstring>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>

namespace qdissect {

SchurSeries::SchurSeries(std::vector<Integer> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("Schur table must hold at least S(0)");
  if (values_[0] != 1) throw std::invalid_argument("Schur table must start with S(0) = 1");
}

std::vector<std::uint64_t> SchurSeries::residues(std::uint64_t m) const {
  const ModArith mod{m};
  std::vector<std::uint64_t> out(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) out[i] = mod.reduce(values_[i]);
  return out;
}

Series SchurSeries::as_series() const { return Series::from_integers(values_); }

SchurSeries s_series(std::size_t count) {
  if (count == 0) throw PrecisionError("table size must be at least 1");
  std::vector<Integer> s(count);
  s[0] = 1;
  for (std::size_t j = 1; j < count; ++j) {
    if (!is_schur_part(j)) continue;
    for (std::size_t n = j; n < count; ++n) mpz_add(s[n].get_mpz_t(), s[n].get_mpz_t(), s[n - j].get_mpz_t());
  }
  return SchurSeries(std::move(s));
}

Integer oracle_part_count(std::size_t n) {
  if (n > 80) throw std::out_of_range("partition oracle is limited to n <= 80");
  std::vector<std::size_t> parts;
  for (std::size_t j = 1; j <= n; ++j)
    if (is_schur_part(j)) parts.push_back(j);
  // ways(rem, k): partitions of rem using parts[0..k)
  std::map<std::pair<std::size_t, std::size_t>, Integer> memo;
  auto ways = [&](auto&& self, std::size_t rem, std::size_t k) -> Integer {
    if (rem == 0) return 1;
    if (k == 0) return 0;
    const auto key = std::make_pair(rem, k);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Integer total = self(self, rem, k - 1);
    if (parts[k - 1] <= rem) total += self(self, rem - parts[k - 1], k);
    memo.emplace(key, total);
    return total;
  };
  return ways(ways, n, parts.size());
}

namespace {

struct Part {
  std::size_t size;
  bool overlined;

  PartClass cls() const {
    if (!overlined) return PartClass::three;
    switch (size % 3) {
      case 1: return PartClass::one_bar;
      case 2: return PartClass::two_bar;
      default: return PartClass::three_bar;
    }
  }
};

bool may_be_smallest(const Part& p) {
  if (p.overlined) return p.size % 6 == 1 || p.size % 6 == 2 || p.size % 6 == 3;
  return p.size % 6 == 0;
}

bool may_follow(const Part& larger, const Part& smaller) {
  if (larger.size < smaller.size) return false;
  const int need = kDifferenceMatrix[static_cast<int>(larger.cls())][static_cast<int>(smaller.cls())];
  const auto gap = static_cast<long>(larger.size - smaller.size);
  return gap >= need && (gap - need) % 6 == 0;
}

}  // namespace

Integer oracle_schur_overpartitions(std::size_t n) {
  if (n > 40) throw std::out_of_range("overpartition oracle is limited to n <= 40");
  std::vector<Part> parts;
  for (std::size_t p = 1; p <= n; ++p) {
    parts.push_back({p, true});
    if (p % 3 == 0) parts.push_back({p, false});
  }
  // Build from the smallest part upward; state is the largest part so far.
  std::map<std::tuple<std::size_t, std::size_t>, Integer> memo;
  auto extend = [&](auto&& self, std::size_t rem, std::size_t last) -> Integer {
    const auto key = std::make_tuple(rem, last);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Integer total = rem == 0 ? 1 : 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i].size > rem) break;
      if (may_follow(parts[i], parts[last])) total += self(self, rem - parts[i].size, i);
    }
    memo.emplace(key, total);
    return total;
  };
  Integer total = n == 0 ? 1 : 0;
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (may_be_smallest(parts[i])) total += extend(extend, n - parts[i].size, i);
  return total;
}

namespace {

constexpr char kMagic[5] = {'S', 'C', 'H', 'S', '1'};

template <typename T>
void put_le(std::ostream& out, T v) {
  unsigned char buf[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
  unsigned char buf[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(buf), sizeof(T))) throw std::runtime_error("truncated table cache");
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(buf[i]) << (8 * i);
  return v;
}

}  // namespace

void write_table_cache(const SchurSeries& table, std::ostream& out) {
  out.write(kMagic, sizeof(kMagic));
  put_le<std::uint64_t>(out, table.size());
  std::vector<unsigned char> bytes;
  for (const auto& v : table.values()) {
    const std::size_t len = sgn(v) == 0 ? 0 : (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
    bytes.assign(len, 0);
    std::size_t written = 0;
    if (len) mpz_export(bytes.data(), &written, -1, 1, 0, 0, v.get_mpz_t());
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(written));
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(written));
    out.put(sgn(v) < 0 ? 1 : 0);
  }
  if (!out) throw std::runtime_error("failed writing table cache");
}

void write_table_cache(const SchurSeries& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_table_cache(table, out);
}

SchurSeries read_table_cache(std::istream& in) {
  char magic[sizeof(kMagic)];
  if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("not a table cache (bad magic)");
  const auto count = get_le<std::uint64_t>(in);
  if (count == 0) throw std::runtime_error("empty table cache");
  std::vector<Integer> values;
  values.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(count, 1u << 24)));
  std::vector<unsigned char> bytes;
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto len = get_le<std::uint32_t>(in);
    bytes.resize(len);
    if (len && !in.read(reinterpret_cast<char*>(bytes.data()), len)) throw std::runtime_error("truncated table cache");
    const int sign = in.get();
    if (sign != 0 && sign != 1) throw std::runtime_error("bad sign byte in table cache");
    Integer v;
    if (len) mpz_import(v.get_mpz_t(), len, -1, 1, 0, 0, bytes.data());
    if (sign == 1) v = -v;
    values.push_back(std::move(v));
  }
  return SchurSeries(std::move(values));
}

SchurSeries read_table_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_table_cache(in);
}

void write_table_decimal(const SchurSeries& table, std::ostream& out) {
  for (const auto& v : table.values()) out << v.get_str() << '\n';
}

SchurSeries load_or_build_table(std::size_t count, const std::optional<std::filesystem::path>& cache) {
  if (cache && std::filesystem::exists(*cache)) {
    try {
      SchurSeries cached = read_table_cache(*cache);
      if (cached.size() >= count) {
        std::vector<Integer> head(cached.values().begin(), cached.values().begin() + static_cast<std::ptrdiff_t>(count));
        return SchurSeries(std::move(head));
      }
    } catch (const std::runtime_error&) {
      // unreadable cache: rebuild and overwrite below
    }
  }
  SchurSeries table = s_series(count);
  if (cache) write_table_cache(table, *cache);
  return table;
}

}  // namespace qdissect
