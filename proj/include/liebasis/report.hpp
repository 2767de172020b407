#pragma once

// Report generation for the command-line front end: run configuration,
// canonical JSON, markdown tables and the three commands (counts, verify,
// decompose).

#include "liebasis/decomp.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace liebasis {

using json = nlohmann::json;

/// Thrown for invalid run configurations (exit code 3).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class OutputFormat { json, markdown };

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int check_failed = 2;
inline constexpr int invalid_config = 3;
}  // namespace exit_code

struct RunConfig {
  int n = 2;
  RepKind rep1 = RepKind::defining;
  RepKind rep2 = RepKind::defining;
  BasisKind basis = BasisKind::coupled;
  bool with_exchange = false;
  CompletenessOptions tolerances;
  OutputFormat format = OutputFormat::json;
  std::optional<std::filesystem::path> cache_dir;

  void validate() const {
    if (n < 2) throw ConfigError("n must be >= 2");
    for (RepKind k : {rep1, rep2})
      if (k == RepKind::product) throw ConfigError("factor representations must be defining, conjugate or adjoint");
    if (basis == BasisKind::single_ir) throw ConfigError("basis must be product or coupled");
    if (with_exchange && rep1 != rep2) throw ConfigError("--with-exchange requires identical factor representations");
    const auto& t = tolerances;
    if (!(t.commute_tol > 0 && t.cluster_tol > 0 && t.scalar_tol > 0)) throw ConfigError("tolerances must be positive");
  }
};

/// Flag wins over LIEBASIS_CACHE_DIR; no caching when neither is set.
inline std::optional<std::filesystem::path> resolve_cache_dir(const std::optional<std::filesystem::path>& flag) {
  if (flag && !flag->empty()) return flag;
  if (const char* env = std::getenv("LIEBASIS_CACHE_DIR"); env && *env) return std::filesystem::path(env);
  return std::nullopt;
}

struct CommandResult {
  json report;
  int exit_code = exit_code::ok;
};

// ---------------------------------------------------------------------------
// Canonical JSON: sorted keys, two-space indent, floats with 12 significant
// digits. Parsing the output and re-serializing reproduces it byte for byte.

/// Rounds to 12 significant digits (and -0 to 0).
inline double canonical_double(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

/// Eigenvalue rounding used in block tuples.
inline double round_eigenvalue(double x) {
  const double r = std::round(x * 1e9) / 1e9;
  return canonical_double(r);
}

namespace detail {

inline void write_canonical(std::ostream& os, const json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << json(it.key()).dump() << ": ";
        write_canonical(os, it.value(), depth + 1);
      }
      os << "\n" << close_pad << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
      if (flat) {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          write_canonical(os, j[i], depth + 1);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        write_canonical(os, j[i], depth + 1);
      }
      os << "\n" << close_pad << "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        os << "null";
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
      os << buf;
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace detail

inline std::string to_canonical_json(const json& j) {
  std::ostringstream os;
  detail::write_canonical(os, j, 0);
  os << "\n";
  return os.str();
}

inline json real_array(const std::vector<double>& v, double (*round)(double) = canonical_double) {
  json a = json::array();
  for (double x : v) a.push_back(round(x));
  return a;
}

// ---------------------------------------------------------------------------
// counts

inline CommandResult cmd_counts(int n_max) {
  if (n_max < 2) throw ConfigError("--n-max must be >= 2");
  CommandResult res;
  json rows = json::array();
  bool all_match = true;
  for (int n = 2; n <= n_max; ++n) {
    const auto enumerated = [&](BasisKind k) { return static_cast<long long>(enumerate_labels(n, k).size()); };
    const long long s = enumerated(BasisKind::single_ir), p = enumerated(BasisKind::product),
                    c = enumerated(BasisKind::coupled);
    const bool match = s == count_single_ir(n) && p == count_product(n) && c == count_coupled(n) &&
                       p - c == count_difference(n);
    all_match = all_match && match;
    rows.push_back({{"n", n},
                    {"single_ir", {{"enumerated", s}, {"closed_form", count_single_ir(n)}}},
                    {"product", {{"enumerated", p}, {"closed_form", count_product(n)}}},
                    {"coupled", {{"enumerated", c}, {"closed_form", count_coupled(n)}}},
                    {"difference", {{"enumerated", p - c}, {"closed_form", count_difference(n)}}},
                    {"match", match}});
  }
  res.report = {{"meta", {{"command", "counts"}, {"n_max", n_max}}}, {"rows", rows}, {"all_match", all_match}};
  res.exit_code = all_match ? exit_code::ok : exit_code::check_failed;
  return res;
}

// ---------------------------------------------------------------------------
// verify

namespace detail {

inline json meta_for(const RunConfig& cfg, const char* command) {
  return {{"command", command},
          {"n", cfg.n},
          {"rep1", std::string(to_string(cfg.rep1))},
          {"rep2", std::string(to_string(cfg.rep2))},
          {"tolerances",
           {{"commute_tol", canonical_double(cfg.tolerances.commute_tol)},
            {"cluster_tol", canonical_double(cfg.tolerances.cluster_tol)},
            {"scalar_tol", canonical_double(cfg.tolerances.scalar_tol)}}}};
}

struct Arena {
  GeneratorBasis basis;
  StructureConstants sc;
  ProductSpace ps;

  explicit Arena(const RunConfig& cfg)
      : basis(build_generators(cfg.n)),
        sc(structure_constants(basis)),
        ps(make_rep(cfg.rep1, basis, sc), make_rep(cfg.rep2, basis, sc)) {}
};

}  // namespace detail

inline CommandResult cmd_verify(const RunConfig& cfg) {
  cfg.validate();
  const detail::Arena arena(cfg);
  const auto cache_dir = resolve_cache_dir(cfg.cache_dir);
  std::optional<OperatorCache> cache;
  if (cache_dir) cache.emplace(*cache_dir);

  const OperatorSet set = build_set(cfg.basis, arena.ps, arena.basis, cache ? &*cache : nullptr);
  std::optional<Matrix> extra;
  if (cfg.with_exchange) extra = arena.ps.exchange_operator();

  json failures = json::array();
  json checks = json::object();
  const auto check = [&](const std::string& name, bool ok) {
    checks[name] = ok;
    if (!ok) failures.push_back(name);
  };

  double herm = 0.0;
  for (const auto& it : set.items)
    herm = std::max(herm, hermitian_defect(it.matrix) / std::max(it.matrix.norm(), 1e-300));
  check("hermitian", herm < 1e-10);

  CommandResult res;
  json meta = detail::meta_for(cfg, "verify");
  meta["basis"] = std::string(to_string(cfg.basis));
  meta["with_exchange"] = cfg.with_exchange;
  meta["dim"] = arena.ps.dim();

  CompletenessReport rep;
  try {
    rep = completeness_report(set, extra, cfg.tolerances);
  } catch (const InvariantError& e) {
    const auto comm = check_commuting(set, cfg.tolerances.commute_tol);
    check("commuting", false);
    meta["labels"] = set.labels();
    res.report = {{"meta", meta},
                  {"counts", {{"expected", closed_form_count(cfg.n, cfg.basis)}, {"actual", set.size()}}},
                  {"commutation",
                   {{"max_residual", canonical_double(comm.max_residual)},
                    {"worst_pair", {comm.worst_pair.first, comm.worst_pair.second}},
                    {"pass", comm.pass}}},
                  {"rank", nullptr},
                  {"blocks", json::array()},
                  {"verdict", {{"result", "error"}, {"error", e.what()}, {"checks", checks}, {"failures", failures}}}};
    res.exit_code = exit_code::check_failed;
    return res;
  }

  meta["labels"] = rep.spectrum.labels;
  check("commuting", rep.commutation.pass);
  check("count_matches_closed_form", rep.actual_count == rep.expected_count + rep.extra_operators);
  check("dimension_conserved", rep.spectrum.total_dim() == arena.ps.dim());
  check("blocks_orthogonal", rep.spectrum.cross_orthogonality_defect() < 1e-8);

  json scalar = json::array();
  for (std::size_t i = 0; i < rep.rank.scalar_flags.size(); ++i)
    if (rep.rank.scalar_flags[i]) scalar.push_back(rep.spectrum.labels[i]);

  json blocks = json::array();
  std::map<std::string, int> histogram;
  for (const auto& b : rep.spectrum.blocks) {
    blocks.push_back({{"dim", b.dim}, {"eigenvalues", real_array(b.eigenvalues, round_eigenvalue)}});
    ++histogram[std::to_string(b.dim)];
  }

  res.report = {
      {"meta", meta},
      {"counts",
       {{"expected", rep.expected_count}, {"actual", rep.actual_count}, {"extra_operators", rep.extra_operators}}},
      {"commutation",
       {{"max_residual", canonical_double(rep.commutation.max_residual)},
        {"worst_pair", {rep.commutation.worst_pair.first, rep.commutation.worst_pair.second}},
        {"pass", rep.commutation.pass}}},
      {"rank", {{"matrix_rank", rep.rank.rank}, {"nonscalar_rank", rep.rank.nonscalar_rank}, {"scalar_operators", scalar}}},
      {"blocks", blocks},
      {"verdict",
       {{"result", std::string(to_string(rep.verdict))},
        {"max_block_dim", rep.max_block_dim},
        {"block_count", rep.spectrum.blocks.size()},
        {"block_dim_histogram", histogram},
        {"checks", checks},
        {"failures", failures}}}};
  res.exit_code = failures.empty() ? exit_code::ok : exit_code::check_failed;
  return res;
}

// ---------------------------------------------------------------------------
// decompose

inline CommandResult cmd_decompose(const RunConfig& cfg) {
  cfg.validate();
  const detail::Arena arena(cfg);
  const auto cache_dir = resolve_cache_dir(cfg.cache_dir);
  std::optional<OperatorCache> cache;
  if (cache_dir) cache.emplace(*cache_dir);

  const auto comps = isotypic_decomposition(arena.ps, arena.basis, cfg.tolerances, cache ? &*cache : nullptr);
  CommandResult res;
  json rows = json::array();
  long long conserved = 0;
  bool all_resolved = true;
  bool consistent = true;
  for (const auto& c : comps) {
    json row = {{"fingerprint", real_array(c.fingerprint, round_eigenvalue)},
                {"total_dim", c.total_dim},
                {"highest_weight_space_dim", c.highest_weight_space_dim}};
    row["highest_weight"] = c.highest_weight.empty() ? json(nullptr) : json(c.highest_weight);
    row["irrep_dim"] = c.irrep_dim ? json(*c.irrep_dim) : json(nullptr);
    row["multiplicity"] = c.multiplicity ? json(*c.multiplicity) : json(nullptr);
    if (arena.basis.n() == 3) {
      row["su3_labels"] = c.su3_labels ? json{c.su3_labels->p, c.su3_labels->q} : json(nullptr);
      row["identified"] = c.su3_labels.has_value();
      if (c.su3_labels && !c.highest_weight.empty() && c.highest_weight != std::vector<int>{c.su3_labels->p, c.su3_labels->q})
        consistent = false;
    }
    if (c.multiplicity && c.irrep_dim)
      conserved += *c.multiplicity * *c.irrep_dim;
    else
      all_resolved = false;
    rows.push_back(row);
  }
  const bool conservation = all_resolved && conserved == arena.ps.dim();
  json meta = detail::meta_for(cfg, "decompose");
  meta["dim"] = arena.ps.dim();
  meta["fingerprint_orders"] = [&] {
    json a = json::array();
    for (int k = 2; k <= cfg.n; ++k) a.push_back(k);
    return a;
  }();
  res.report = {{"meta", meta},
                {"components", rows},
                {"conservation",
                 {{"sum_sigma_dim", conserved},
                  {"product_dim", arena.ps.dim()},
                  {"all_resolved", all_resolved},
                  {"labels_consistent", consistent},
                  {"pass", conservation && consistent}}}};
  // Unresolved components are informational; a resolved table that fails to
  // conserve dimension is a check failure.
  res.exit_code = (all_resolved && !conservation) || !consistent ? exit_code::check_failed : exit_code::ok;
  return res;
}

// ---------------------------------------------------------------------------
// Markdown

namespace detail {

inline std::string cell(const json& j) {
  if (j.is_null()) return "-";
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>() ? "yes" : "no";
  if (j.is_array()) {
    std::string s = "(";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + cell(j[i]);
    return s + ")";
  }
  std::string s = to_canonical_json(j);
  s.pop_back();
  return s;
}

}  // namespace detail

inline std::string to_markdown(const json& report) {
  std::ostringstream os;
  const std::string command = report.at("meta").at("command");
  if (command == "counts") {
    os << "# Operator counts\n\n";
    os << "| n | single IR | product | coupled | difference | closed forms | match |\n";
    os << "|---|---|---|---|---|---|---|\n";
    for (const auto& r : report.at("rows")) {
      os << "| " << r.at("n") << " | " << r.at("single_ir").at("enumerated") << " | " << r.at("product").at("enumerated")
         << " | " << r.at("coupled").at("enumerated") << " | " << r.at("difference").at("enumerated") << " | "
         << r.at("single_ir").at("closed_form") << ", " << r.at("product").at("closed_form") << ", "
         << r.at("coupled").at("closed_form") << ", " << r.at("difference").at("closed_form") << " | "
         << detail::cell(r.at("match")) << " |\n";
    }
    return os.str();
  }

  const json& meta = report.at("meta");
  os << "# " << command << ": su(" << meta.at("n") << ") " << meta.at("rep1").get<std::string>() << " x "
     << meta.at("rep2").get<std::string>() << "\n\n";
  if (command == "verify") {
    const json& v = report.at("verdict");
    os << "- basis: " << meta.at("basis").get<std::string>() << (meta.at("with_exchange").get<bool>() ? " + exchange" : "")
       << "\n";
    os << "- verdict: **" << v.at("result").get<std::string>() << "**";
    if (v.contains("max_block_dim")) os << " (max block dim " << v.at("max_block_dim") << ")";
    os << "\n";
    os << "- operators: " << report.at("counts").at("actual") << " (closed form " << report.at("counts").at("expected")
       << ")\n";
    os << "- max commutator residual: " << detail::cell(report.at("commutation").at("max_residual")) << "\n";
    if (!report.at("rank").is_null())
      os << "- matrix rank: " << report.at("rank").at("matrix_rank") << " (non-scalar "
         << report.at("rank").at("nonscalar_rank") << ")\n";
    os << "- failures: " << (v.at("failures").empty() ? std::string("none") : detail::cell(v.at("failures"))) << "\n\n";
    if (!report.at("blocks").empty()) {
      os << "| dim |";
      for (const auto& l : meta.at("labels")) os << " " << l.get<std::string>() << " |";
      os << "\n|---|";
      for (std::size_t i = 0; i < meta.at("labels").size(); ++i) os << "---|";
      os << "\n";
      for (const auto& b : report.at("blocks")) {
        os << "| " << b.at("dim") << " |";
        for (const auto& e : b.at("eigenvalues")) os << " " << detail::cell(e) << " |";
        os << "\n";
      }
    }
    return os.str();
  }
  // decompose
  const bool su3 = meta.at("n").get<int>() == 3;
  os << "| fingerprint | total dim | highest weight | irrep dim | sigma |" << (su3 ? " (p,q) |" : "") << "\n";
  os << "|---|---|---|---|---|" << (su3 ? "---|" : "") << "\n";
  for (const auto& c : report.at("components")) {
    os << "| " << detail::cell(c.at("fingerprint")) << " | " << c.at("total_dim") << " | " << detail::cell(c.at("highest_weight"))
       << " | " << detail::cell(c.at("irrep_dim")) << " | " << detail::cell(c.at("multiplicity")) << " |";
    if (su3) os << " " << (c.at("su3_labels").is_null() ? std::string("unidentified") : detail::cell(c.at("su3_labels"))) << " |";
    os << "\n";
  }
  const json& cons = report.at("conservation");
  os << "\nsum sigma * dim = " << cons.at("sum_sigma_dim") << " of " << cons.at("product_dim") << "\n";
  return os.str();
}

inline std::string render(const CommandResult& res, OutputFormat fmt) {
  return fmt == OutputFormat::json ? to_canonical_json(res.report) : to_markdown(res.report);
}

}  // namespace liebasis
