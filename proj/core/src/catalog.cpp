#include "qdissect/catalog.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace qdissect {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto at = s.find(sep);
    out.push_back(trim(s.substr(0, at)));
    if (at == std::string_view::npos) return out;
    s.remove_prefix(at + 1);
  }
}

std::uint64_t parse_uint(std::string_view s, const char* what) {
  std::uint64_t v = 0;
  s = trim(s);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument(std::string("bad ") + what + " '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::variant<EtaExpression, RootExtraction> parse_lhs(std::string_view text) {
  text = trim(text);
  if (text.empty() || text.front() != '@') return parse(text);
  text.remove_prefix(1);
  const auto bracket = text.find('[');
  RootExtraction out;
  out.root = std::string(trim(text.substr(0, bracket)));
  if (out.root.empty()) throw std::invalid_argument("missing root series name after '@'");
  if (!RootProvider::known(out.root)) throw std::invalid_argument("unknown root series '" + out.root + "'");
  text = bracket == std::string_view::npos ? std::string_view{} : text.substr(bracket);
  while (!(text = trim(text)).empty()) {
    if (text.front() != '[') throw std::invalid_argument("expected '[' in extraction recipe");
    const auto close = text.find(']');
    if (close == std::string_view::npos) throw std::invalid_argument("unterminated '[' in extraction recipe");
    const auto parts = split(text.substr(1, close - 1), ',');
    if (parts.size() != 2) throw std::invalid_argument("extraction step needs 'm,r'");
    out.recipe.steps.emplace_back(parse_uint(parts[0], "modulus"), parse_uint(parts[1], "residue"));
    text.remove_prefix(close + 1);
  }
  out.recipe.validate();
  return out;
}

std::vector<IdentityRecord> parse_catalog(std::string_view text) {
  static const std::set<std::uint64_t> allowed{2, 4, 8, 16, 32};
  std::vector<IdentityRecord> out;
  std::set<std::string> seen;
  std::size_t lineno = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;

    const auto fields = split(line, '|');
    if (fields.size() != 5) throw CatalogError("expected 5 '|'-separated fields", lineno);
    IdentityRecord rec;
    rec.id = std::string(fields[0]);
    if (rec.id.empty()) throw CatalogError("empty id", lineno);
    if (!seen.insert(rec.id).second) throw CatalogError("duplicate id '" + rec.id + "'", lineno);
    try {
      rec.lhs = parse_lhs(fields[1]);
      rec.rhs = parse(fields[2]);
      if (!fields[3].empty() && fields[3] != "-") {
        const std::uint64_t m = parse_uint(fields[3], "modulus");
        if (!allowed.contains(m)) throw std::invalid_argument("modulus must be one of 2, 4, 8, 16, 32");
        rec.modulus = m;
      }
    } catch (const std::exception& e) {
      throw CatalogError(rec.id + ": " + e.what(), lineno);
    }
    rec.anchor = std::string(fields[4]);
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<IdentityRecord> load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open catalog " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_catalog(ss.str());
}

const std::vector<IdentityRecord>& builtin_catalog() {
  static const std::vector<IdentityRecord> records = parse_catalog(builtin_catalog_text());
  return records;
}

const IdentityRecord* find_record(const std::vector<IdentityRecord>& records, std::string_view id) {
  for (const auto& r : records)
    if (r.id == id) return &r;
  return nullptr;
}

}  // namespace qdissect
