#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdissect/aaw.hpp"
#include "qdissect/catalog.hpp"
#include "qdissect/congruences.hpp"
#include "qdissect/dissector.hpp"
#include "qdissect/eta.hpp"
#include "qdissect/schur.hpp"

namespace qdissect::cli {

namespace {

using json = nlohmann::ordered_json;

/// Invalid input discovered after argument parsing (bad expression, ...).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::size_t precision = 500;
  std::size_t table_size = 40000;
  std::string output = "text";
  unsigned threads = 0;
  std::optional<std::string> cache_path;

  bool json() const { return output == "json"; }

  void validate() const {
    if (precision < 8) throw UsageError("--precision must be at least 8");
    if (table_size < 1) throw UsageError("--table-size must be at least 1");
  }

  std::optional<std::filesystem::path> cache() const {
    if (const char* env = std::getenv("QDISSECT_CACHE"); env && *env) return std::filesystem::path(env);
    if (cache_path) return std::filesystem::path(*cache_path);
    return std::nullopt;
  }
};

std::vector<std::uint64_t> parse_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("bad integer '" + item + "' in list '" + text + "'");
    }
  }
  return out;
}

std::string ring_name(const RingSpec& r) { return r.to_string(); }

json report_json(const VerificationReport& r) {
  json j;
  j["id"] = r.id;
  j["status"] = !r.error.empty() ? "error" : (r.passed ? "pass" : "fail");
  j["ring"] = ring_name(r.ring);
  j["precision"] = r.precision;
  if (r.root_precision) j["root_precision"] = *r.root_precision;
  if (r.mismatch) {
    j["degree"] = r.mismatch->degree;
    j["lhs"] = r.mismatch->lhs.get_str();
    j["rhs"] = r.mismatch->rhs.get_str();
    json lc = json::array(), rc = json::array();
    for (const auto& v : r.mismatch->lhs_context) lc.push_back(v.get_str());
    for (const auto& v : r.mismatch->rhs_context) rc.push_back(v.get_str());
    j["lhs_context"] = lc;
    j["rhs_context"] = rc;
  }
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

RingSpec ring_from(std::uint64_t modulus) {
  return modulus ? RingSpec::residues(modulus) : RingSpec::integers();
}

// --- subcommands -----------------------------------------------------------

int cmd_expand(const Config& cfg, const std::string& expr, std::uint64_t modulus, std::ostream& out) {
  EtaExpression e;
  try {
    e = parse(expr);
  } catch (const ParseError& pe) {
    throw UsageError(pe.what());
  }
  const Series s = expand_expression(e, cfg.precision, ring_from(modulus));
  if (cfg.json()) {
    json j;
    j["expression"] = render(e);
    j["ring"] = ring_name(s.ring());
    j["precision"] = s.precision();
    json coeffs = json::array();
    for (std::size_t n = 0; n < s.precision(); ++n) coeffs.push_back(s.coeff(n).get_str());
    j["coefficients"] = coeffs;
    out << j.dump() << '\n';
  } else {
    out << s.to_string() << '\n';
  }
  return kExitOk;
}

int cmd_dissect(const Config& cfg, const std::string& lhs_text, const std::string& rhs_text, std::uint64_t modulus,
                std::ostream& out) {
  std::variant<EtaExpression, RootExtraction> lhs;
  std::optional<EtaExpression> rhs;
  try {
    lhs = parse_lhs(lhs_text);
    if (!rhs_text.empty()) rhs = parse(rhs_text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const RingSpec ring = ring_from(modulus);
  RootProvider roots;
  Series series = Series::zero(ring, 1);
  std::optional<std::size_t> root_precision;
  if (const auto* root = std::get_if<RootExtraction>(&lhs)) {
    const std::size_t need = root->recipe.required_root_precision(cfg.precision);
    series = root->recipe.apply(roots.get(root->root, need, ring)).truncated(cfg.precision);
    root_precision = need;
  } else {
    series = expand_expression(std::get<EtaExpression>(lhs), cfg.precision, ring);
  }

  if (!rhs) {
    if (cfg.json()) {
      json j;
      j["lhs"] = lhs_text;
      j["ring"] = ring_name(ring);
      j["precision"] = series.precision();
      if (root_precision) j["root_precision"] = *root_precision;
      json coeffs = json::array();
      for (std::size_t n = 0; n < series.precision(); ++n) coeffs.push_back(series.coeff(n).get_str());
      j["coefficients"] = coeffs;
      out << j.dump() << '\n';
    } else {
      out << series.to_string() << '\n';
    }
    return kExitOk;
  }
  VerificationReport rep = compare_series(lhs_text, series, expand_expression(*rhs, cfg.precision, ring));
  rep.root_precision = root_precision;
  out << (cfg.json() ? report_json(rep).dump() : rep.summary()) << '\n';
  return rep.passed ? kExitOk : kExitFailure;
}

int cmd_verify(const Config& cfg, bool all, const std::vector<std::string>& ids, std::size_t congruence_precision,
               const std::string& catalog_path, std::ostream& out, std::ostream& err) {
  if (all == !ids.empty()) throw UsageError("verify needs exactly one of --all or --id");
  if (congruence_precision < 8) throw UsageError("--congruence-precision must be at least 8");
  std::vector<IdentityRecord> catalog;
  try {
    catalog = catalog_path.empty() ? builtin_catalog() : load_catalog(catalog_path);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  std::vector<IdentityRecord> selected;
  if (all) {
    selected = catalog;
  } else {
    for (const auto& id : ids) {
      const IdentityRecord* rec = find_record(catalog, id);
      if (!rec) throw UsageError("no catalog record with id '" + id + "'");
      selected.push_back(*rec);
    }
  }
  RootProvider roots;
  CatalogRunOptions opts;
  opts.exact_precision = cfg.precision;
  opts.congruence_precision = congruence_precision;
  opts.threads = cfg.threads;
  const auto reports = verify_catalog(selected, opts, roots);
  std::size_t passed = 0;
  for (const auto& r : reports) {
    passed += r.passed ? 1 : 0;
    out << (cfg.json() ? report_json(r).dump() : r.summary()) << '\n';
  }
  err << passed << "/" << reports.size() << " records passed\n";
  return passed == reports.size() ? kExitOk : kExitFailure;
}

SchurSeries table_for(const Config& cfg) { return load_or_build_table(cfg.table_size, cfg.cache()); }

int cmd_scan(const Config& cfg, std::uint64_t max_a, const std::string& moduli, std::uint64_t min_support,
             std::ostream& out) {
  ScanOptions opts;
  opts.max_a = max_a;
  opts.min_support = min_support;
  opts.threads = cfg.threads;
  opts.moduli.clear();
  for (const auto m : parse_list(moduli)) opts.moduli.insert(m);
  if (opts.moduli.empty()) throw UsageError("--moduli must name at least one modulus");
  for (const auto m : opts.moduli)
    if (m < 2) throw UsageError("--moduli entries must be at least 2");
  if (min_support < 20) throw UsageError("--min-support must be at least 20");
  if (max_a < 1) throw UsageError("--max-a must be at least 1");
  const SchurSeries table = table_for(cfg);
  for (const auto& t : scan(opts, table)) out << (cfg.json() ? t.to_json() : t.to_string()) << '\n';
  return kExitOk;
}

int cmd_family(const Config& cfg, unsigned alpha_max, std::ostream& out) {
  const SchurSeries table = table_for(cfg);
  bool ok = true;
  for (const auto& fc : verify_family(alpha_max, table)) {
    if (cfg.json()) {
      json j;
      j["alpha"] = fc.alpha;
      j["A"] = fc.progression.A;
      j["B"] = fc.progression.B;
      j["M"] = 16;
      j["testable"] = fc.testable;
      j["tested_to"] = fc.result.tested_to ? json(*fc.result.tested_to) : json(nullptr);
      j["status"] = fc.testable ? json::parse(fc.result.to_json())["status"] : json("untestable");
      out << j.dump() << '\n';
    } else if (fc.testable) {
      out << "alpha=" << fc.alpha << " " << fc.result.to_string() << '\n';
    } else {
      out << "alpha=" << fc.alpha << " S(" << fc.progression.A << "n+" << fc.progression.B
          << "): untestable, B beyond table of " << table.size() << '\n';
    }
    if (fc.testable && fc.result.status == CongruenceStatus::refuted) ok = false;
  }
  return ok ? kExitOk : kExitFailure;
}

int cmd_internal(const Config& cfg, const std::vector<std::string>& specs, bool conjecture, std::ostream& out) {
  std::vector<InternalCongruence> claims;
  if (specs.empty()) {
    claims = known_internal_congruences();
  } else {
    for (const auto& s : specs) {
      const auto v = parse_list(s);
      if (v.size() != 5) throw UsageError("--spec needs a,b,c,d,M");
      InternalCongruence c;
      c.a = v[0];
      c.b = v[1];
      c.c = v[2];
      c.d = v[3];
      c.M = v[4];
      c.conjectural = conjecture;
      try {
        c.validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      claims.push_back(c);
    }
  }
  const SchurSeries table = table_for(cfg);
  bool ok = true;
  for (const auto& c : claims) {
    const InternalCongruence r = check_internal(c, table);
    out << (cfg.json() ? r.to_json() : r.to_string()) << '\n';
    if (r.status == CongruenceStatus::refuted) ok = false;
  }
  return ok ? kExitOk : kExitFailure;
}

int cmd_aaw(const Config& cfg, std::size_t precision, std::ostream& out) {
  if (precision < 8) throw UsageError("--precision must be at least 8");
  std::vector<VerificationReport> reports = verify_param_identities(compute_params(precision), precision);
  reports.push_back(verify_L_identity(precision));

  const Series L = compute_L(precision);
  VerificationReport mod16 = compare_series("L=0 (mod 16)", reduce_mod(L, 16), Series::zero(RingSpec::residues(16), precision));
  reports.push_back(mod16);

  bool ok = true;
  for (const auto& r : reports) {
    ok = ok && r.passed;
    out << (cfg.json() ? report_json(r).dump() : r.summary()) << '\n';
  }
  return ok ? kExitOk : kExitFailure;
}

int cmd_oracle(const Config& cfg, std::size_t max_n, std::ostream& out) {
  if (max_n > 80) throw UsageError("--max-n must be at most 80");
  const SchurSeries table = s_series(max_n + 1);
  bool ok = true;
  for (std::size_t n = 0; n <= max_n; ++n) {
    const Integer parts = oracle_part_count(n);
    std::optional<Integer> schur;
    if (n <= 40) schur = oracle_schur_overpartitions(n);
    const bool match = parts == table[n] && (!schur || *schur == table[n]);
    ok = ok && match;
    if (cfg.json()) {
      json j;
      j["n"] = n;
      j["S"] = table[n].get_str();
      j["part_count"] = parts.get_str();
      j["overpartitions"] = schur ? json(schur->get_str()) : json(nullptr);
      j["match"] = match;
      out << j.dump() << '\n';
    } else {
      out << "n=" << n << " S=" << table[n].get_str() << " parts=" << parts.get_str()
          << " overpartitions=" << (schur ? schur->get_str() : std::string("-")) << (match ? " ok" : " MISMATCH")
          << '\n';
    }
  }
  return ok ? kExitOk : kExitFailure;
}

int cmd_dump(const Config& cfg, const std::string& format, const std::string& path, std::ostream& out) {
  const SchurSeries table = table_for(cfg);
  if (format == "binary") {
    if (path.empty()) throw UsageError("binary dump needs --out");
    write_table_cache(table, std::filesystem::path(path));
    return kExitOk;
  }
  if (path.empty()) {
    write_table_decimal(table, out);
  } else {
    std::ofstream file(path);
    if (!file) throw UsageError("cannot open " + path);
    write_table_decimal(table, file);
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qdissect: truncated q-series toolkit for Schur-type overpartitions"};
  app.name("qdissect");
  app.require_subcommand(1);

  Config cfg;
  app.add_option("--threads", cfg.threads, "Worker threads (0 = one per core)");
  app.add_option("--output", cfg.output, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--cache", cfg.cache_path, "Table cache file (QDISSECT_CACHE overrides)");

  auto add_precision = [&](CLI::App* sub) {
    sub->add_option("--precision", cfg.precision, "Series precision (default 500)");
  };
  auto add_table = [&](CLI::App* sub) { sub->add_option("--table-size", cfg.table_size, "Number of S(n) values"); };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--threads", cfg.threads, "Worker threads (0 = one per core)");
    sub->add_option("--output", cfg.output, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--cache", cfg.cache_path, "Table cache file");
  };

  std::string expr, rhs_text, moduli = "8,16,32", catalog_path, format = "decimal", out_path;
  std::uint64_t modulus = 0, max_a = 128, min_support = 50;
  std::size_t congruence_precision = kCongruencePrecision, aaw_precision = 300, max_n = 40;
  unsigned alpha_max = 4;
  bool all = false, conjecture = false;
  std::vector<std::string> ids, specs;

  auto* expand = app.add_subcommand("expand", "Expand an eta-quotient expression");
  expand->add_option("expression", expr, "Expression in the eta DSL")->required();
  expand->add_option("--mod", modulus, "Reduce coefficients mod M");
  add_precision(expand);
  add_common(expand);

  auto* dissect = app.add_subcommand("dissect", "Extract a progression from @S[m,r] or an expression");
  dissect->add_option("lhs", expr, "Root extraction like @S[8,3] or a DSL expression")->required();
  dissect->add_option("--rhs", rhs_text, "Compare against this expression");
  dissect->add_option("--mod", modulus, "Work mod M");
  add_precision(dissect);
  add_common(dissect);

  auto* verify = app.add_subcommand("verify", "Verify catalog identities and congruences");
  verify->add_flag("--all", all, "Verify every record");
  verify->add_option("--id", ids, "Record id (repeatable)");
  verify->add_option("--congruence-precision", congruence_precision, "Precision for mod 2^k records (default 2000)");
  verify->add_option("--catalog", catalog_path, "Catalog file instead of the built-in one");
  add_precision(verify);
  add_common(verify);

  auto* scan_cmd = app.add_subcommand("scan", "Search for S(An+B) = 0 (mod M)");
  scan_cmd->add_option("--max-a", max_a, "Largest A");
  scan_cmd->add_option("--moduli", moduli, "Comma-separated moduli");
  scan_cmd->add_option("--min-support", min_support, "Minimum tested n per survivor (>= 20)");
  add_table(scan_cmd);
  add_common(scan_cmd);

  auto* family = app.add_subcommand("family", "Check the mod-16 family for alpha = 0..alpha-max");
  family->add_option("--alpha-max", alpha_max, "Largest alpha");
  add_table(family);
  add_common(family);

  auto* internal = app.add_subcommand("internal", "Check internal congruences S(aN+b) = S(cN+d) (mod M)");
  internal->add_option("--spec", specs, "a,b,c,d,M (repeatable; default: the known list)");
  internal->add_flag("--conjecture", conjecture, "Label --spec claims as conjectures");
  add_table(internal);
  add_common(internal);

  auto* aaw = app.add_subcommand("aaw-check", "Verify the s, t parameterization and the L(q) identity");
  aaw->add_option("--precision", aaw_precision, "Series precision (default 300)");
  add_common(aaw);

  auto* oracle = app.add_subcommand("oracle", "Compare S(n) against the combinatorial oracles");
  oracle->add_option("--max-n", max_n, "Largest n (<= 80; overpartition oracle stops at 40)");
  add_common(oracle);

  auto* dump = app.add_subcommand("dump-table", "Write S(0..N-1)");
  dump->add_option("--format", format, "decimal or binary")->check(CLI::IsMember({"decimal", "binary"}));
  dump->add_option("--out", out_path, "Output file (stdout for decimal when omitted)");
  add_table(dump);
  add_common(dump);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    cfg.validate();
    if (expand->parsed()) return cmd_expand(cfg, expr, modulus, out);
    if (dissect->parsed()) return cmd_dissect(cfg, expr, rhs_text, modulus, out);
    if (verify->parsed()) return cmd_verify(cfg, all, ids, congruence_precision, catalog_path, out, err);
    if (scan_cmd->parsed()) return cmd_scan(cfg, max_a, moduli, min_support, out);
    if (family->parsed()) return cmd_family(cfg, alpha_max, out);
    if (internal->parsed()) return cmd_internal(cfg, specs, conjecture, out);
    if (aaw->parsed()) return cmd_aaw(cfg, aaw_precision, out);
    if (oracle->parsed()) return cmd_oracle(cfg, max_n, out);
    if (dump->parsed()) return cmd_dump(cfg, format, out_path, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace qdissect::cli
