#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qdissect/dissector.hpp"

namespace qdissect {

/// Problem in a catalog file; `line` is 1-based.
class CatalogError : public std::runtime_error {
 public:
  CatalogError(const std::string& message, std::size_t line)
      : std::runtime_error("catalog line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Parse catalog text. One record per line:
///
///   id | lhs | rhs | modulus | anchor
///
/// lhs is either a DSL expression or a root extraction "@S[16,11]" (chained
/// steps allowed, "@negq" with none). modulus is empty or "-" for exact
/// identities, otherwise one of 2, 4, 8, 16, 32. Blank lines and lines
/// starting with '#' are ignored.
std::vector<IdentityRecord> parse_catalog(std::string_view text);
std::vector<IdentityRecord> load_catalog(const std::filesystem::path& path);

/// Parse just the lhs field.
std::variant<EtaExpression, RootExtraction> parse_lhs(std::string_view text);

/// The catalog compiled into the library (data/catalog.txt).
std::string_view builtin_catalog_text();
const std::vector<IdentityRecord>& builtin_catalog();

/// Record by id, or nullptr.
const IdentityRecord* find_record(const std::vector<IdentityRecord>& records, std::string_view id);

}  // namespace qdissect
