#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "pdalg/boundary.hpp"
#include "pdalg/catalog.hpp"
#include "pdalg/diagonal.hpp"
#include "pdalg/document.hpp"
#include "pdalg/graded_ring.hpp"

namespace pdalg::cli {

/// Stable process exit codes.
enum ExitCode : int {
  success = 0,
  check_failed = 1,
  parse_failed = 2,
  singular_pairing = 3,
};

struct Options {
  SignMode mode = SignMode::literal;
  bool json = false;
  bool allow_noncommutative = false;
};

/// A file path if one exists, otherwise a catalog id.
inline AlgebraDocument load_input(const std::string& input) {
  if (std::filesystem::is_regular_file(input)) {
    std::ifstream in(input);
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
      return parse_document(buffer.str());
    } catch (const ParseError& e) {
      throw ParseError(input + ":" + e.location(), e.message());
    }
  }
  return {input, catalog::resolve_payload(input)};
}

inline std::string render_term(const Rational& c, const std::string& body, bool first) {
  std::string s;
  if (sgn(c) < 0)
    s = first ? "-" : " - ";
  else if (!first)
    s = " + ";
  const Rational magnitude = abs(c);
  if (magnitude != 1) s += to_string(magnitude) + "·";
  return s + body;
}

/// "1⊗x + x⊗1", terms in row-major order; "0" for the zero class.
inline std::string render_tensor(const TensorClass& w) {
  std::string out;
  for (std::size_t i = 0; i < w.mu.rows(); ++i)
    for (std::size_t j = 0; j < w.mu.cols(); ++j)
      if (!is_zero(w.mu(i, j))) out += render_term(w.mu(i, j), w.left.label(i) + "⊗" + w.right.label(j), out.empty());
  return out.empty() ? "0" : out;
}

inline ordered_json matrix_json(const Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (const auto& x : m.row(r)) row.push_back(to_string(x));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Inverse of matrix_json.
inline Matrix matrix_from_json(const nlohmann::json& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows[0].size();
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = parse_rational(rows[i][j].get<std::string>());
  return m;
}

inline std::string matrix_text(const Matrix& m, const std::string& indent = "  ") {
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out += indent + "[";
    for (std::size_t c = 0; c < m.cols(); ++c) out += (c ? " " : "") + to_string(m(r, c));
    out += "]\n";
  }
  return out;
}

inline ordered_json labels_json(const GradedBasis& b) { return b.labels(); }

inline ordered_json report_json(const ValidationReport& report) {
  ordered_json list = ordered_json::array();
  for (const auto& v : report.violations)
    list.push_back({{"axiom", to_string(v.axiom)}, {"indices", v.indices}, {"detail", v.detail}});
  return list;
}

inline std::string violation_text(const Violation& v) {
  std::string s = std::string(to_string(v.axiom)) + " violation at (";
  for (std::size_t n = 0; n < v.indices.size(); ++n) s += (n ? "," : "") + std::to_string(v.indices[n]);
  return s + "): " + v.detail;
}

inline ValidationReport validate_payload(const Payload& p, const Options& opt) {
  const ValidationOptions vo{opt.allow_noncommutative};
  if (const auto* r = std::get_if<RingStructure>(&p)) return validate(*r, vo);
  return validate_module(std::get<ModulePair>(p), vo);
}

inline const char* kind_of(const Payload& p) { return std::holds_alternative<RingStructure>(p) ? "closed" : "relative"; }

/// Prints the report; returns check_failed when it is not empty.
inline int emit_validation(const AlgebraDocument& doc, const ValidationReport& report, const Options& opt,
                           std::ostream& out) {
  if (opt.json) {
    ordered_json j;
    j["input"] = doc.name;
    j["kind"] = kind_of(doc.payload);
    j["valid"] = report.ok();
    j["violations"] = report_json(report);
    out << j.dump(2) << "\n";
  } else if (report.ok()) {
    out << "valid: " << doc.name << "\n";
  } else {
    out << "invalid: " << doc.name << ": " << report.violations.size() << " violation(s); first: "
        << violation_text(report.violations.front()) << "\n";
  }
  return report.ok() ? success : check_failed;
}

inline int cmd_validate(const std::string& input, const Options& opt, std::ostream& out) {
  const AlgebraDocument doc = load_input(input);
  return emit_validation(doc, validate_payload(doc.payload, opt), opt, out);
}

struct DiagonalResult {
  Matrix pairing;
  TensorClass w;
  SymmetryResidual residual;
  std::vector<std::pair<std::size_t, std::size_t>> normalization;
};

inline DiagonalResult compute_diagonal(const Payload& p, SignMode mode) {
  if (const auto* r = std::get_if<RingStructure>(&p)) {
    TensorClass w = diagonal_class(*r, mode);
    auto residual = check_symmetry(*r, mode, w);
    auto normalization = normalization_violations(*r, w);
    return {pairing_matrix(*r), std::move(w), std::move(residual), std::move(normalization)};
  }
  const auto& mp = std::get<ModulePair>(p);
  TensorClass w = relative_diagonal_class(mp, mode);
  auto residual = check_relative_symmetry(mp, mode, w);
  auto normalization = relative_normalization_violations(mp, w);
  return {relative_pairing_matrix(mp), std::move(w), std::move(residual), std::move(normalization)};
}

inline Matrix payload_pairing(const Payload& p) {
  if (const auto* r = std::get_if<RingStructure>(&p)) return pairing_matrix(*r);
  return relative_pairing_matrix(std::get<ModulePair>(p));
}

inline int emit_singular(const AlgebraDocument& doc, const Options& opt, std::ostream& out) {
  const Matrix pairing = payload_pairing(doc.payload);
  if (opt.json) {
    ordered_json j;
    j["input"] = doc.name;
    j["kind"] = kind_of(doc.payload);
    j["error"] = "singular pairing";
    j["pairing"] = matrix_json(pairing);
    out << j.dump(2) << "\n";
  } else {
    out << "singular pairing: " << doc.name << "\n" << matrix_text(pairing);
  }
  return singular_pairing;
}

inline int cmd_diag(const std::string& input, const Options& opt, std::ostream& out) {
  const AlgebraDocument doc = load_input(input);
  const ValidationReport report = validate_payload(doc.payload, opt);
  if (!report.ok()) return emit_validation(doc, report, opt, out);

  std::optional<DiagonalResult> computed;
  try {
    computed = compute_diagonal(doc.payload, opt.mode);
  } catch (const SingularPairing&) {
    return emit_singular(doc, opt, out);
  }
  const DiagonalResult& result = *computed;
  const bool ok = result.residual.empty() && result.normalization.empty();

  if (opt.json) {
    ordered_json j;
    j["input"] = doc.name;
    j["kind"] = kind_of(doc.payload);
    j["mode"] = to_string(opt.mode);
    j["left_basis"] = labels_json(result.w.left);
    j["right_basis"] = labels_json(result.w.right);
    j["pairing"] = matrix_json(result.pairing);
    j["mu"] = matrix_json(result.w.mu);
    j["w"] = render_tensor(result.w);
    j["symmetric"] = result.residual.empty();
    ordered_json residual = ordered_json::array();
    for (const auto& e : result.residual.entries)
      residual.push_back({{"k", e.k}, {"i", e.i}, {"j", e.j}, {"value", to_string(e.value)}});
    j["residual"] = std::move(residual);
    j["normalized"] = result.normalization.empty();
    ordered_json norm = ordered_json::array();
    for (const auto& [r, c] : result.normalization) norm.push_back({r, c});
    j["normalization_violations"] = std::move(norm);
    out << j.dump(2) << "\n";
  } else {
    out << "input: " << doc.name << " (" << kind_of(doc.payload) << ", " << to_string(opt.mode) << " mode)\n";
    out << "pairing:\n" << matrix_text(result.pairing);
    out << "mu:\n" << matrix_text(result.w.mu);
    out << "w = " << render_tensor(result.w) << "\n";
    if (result.residual.empty()) {
      out << "symmetry residual: empty\n";
    } else {
      out << "symmetry residual: " << result.residual.entries.size() << " nonzero entries\n";
      for (const auto& e : result.residual.entries)
        out << "  k=" << e.k << " (" << e.i << "," << e.j << ") = " << to_string(e.value) << "\n";
    }
    out << "normalization: " << (result.normalization.empty() ? "holds" : "violated") << "\n";
  }
  return ok ? success : check_failed;
}

inline int cmd_solve(const std::string& input, const Options& opt, std::ostream& out) {
  const AlgebraDocument doc = load_input(input);
  const ValidationReport report = validate_payload(doc.payload, opt);
  if (!report.ok()) return emit_validation(doc, report, opt, out);

  std::vector<TensorClass> space;
  std::optional<bool> inverse_in_span;
  std::string normalized;
  auto describe = [](const std::optional<NormalizedSolutions>& s) -> std::string {
    if (!s) return "none";
    return s->unique() ? "unique" : "non-unique";
  };
  if (const auto* r = std::get_if<RingStructure>(&doc.payload)) {
    space = solve_symmetric_space(*r, opt.mode);
    if (r->basis().top_index()) {
      if (check_poincare_duality(*r))
        inverse_in_span = in_symmetric_span(space, TensorClass(r->basis(), r->basis(), pairing_inverse(*r)));
      normalized = describe(normalized_symmetric_solutions(*r, opt.mode));
    } else {
      normalized = "none";
    }
  } else {
    const auto& mp = std::get<ModulePair>(doc.payload);
    space = solve_relative_symmetric_space(mp, opt.mode);
    if (check_relative_duality(mp))
      inverse_in_span =
          in_symmetric_span(space, TensorClass(mp.module_basis(), mp.ring().basis(), relative_pairing_inverse(mp)));
    normalized = describe(normalized_relative_solutions(mp, opt.mode));
  }

  if (opt.json) {
    ordered_json j;
    j["input"] = doc.name;
    j["kind"] = kind_of(doc.payload);
    j["mode"] = to_string(opt.mode);
    j["dimension"] = space.size();
    ordered_json basis = ordered_json::array();
    for (const auto& s : space) basis.push_back(matrix_json(s.mu));
    j["basis"] = std::move(basis);
    j["inverse_pairing_in_span"] = inverse_in_span ? ordered_json(*inverse_in_span) : ordered_json(nullptr);
    j["normalized_solution"] = normalized;
    out << j.dump(2) << "\n";
  } else {
    out << "input: " << doc.name << " (" << kind_of(doc.payload) << ", " << to_string(opt.mode) << " mode)\n";
    out << "dimension: " << space.size() << "\n";
    for (std::size_t n = 0; n < space.size(); ++n) out << "  s" << n << " = " << render_tensor(space[n]) << "\n";
    out << "inverse pairing in span: " << (inverse_in_span ? (*inverse_in_span ? "yes" : "no") : "n/a") << "\n";
    out << "normalized solution: " << normalized << "\n";
  }
  return success;
}

inline int cmd_pair(const std::string& input, const Options& opt, std::ostream& out) {
  const AlgebraDocument doc = load_input(input);
  Matrix pairing;
  try {
    pairing = payload_pairing(doc.payload);
  } catch (const MissingTopClass&) {
    out << "no top class: " << doc.name << "\n";
    return check_failed;
  }
  const bool nondegenerate = pairing.square() && rank(pairing) == pairing.rows();
  if (opt.json) {
    ordered_json j;
    j["input"] = doc.name;
    j["kind"] = kind_of(doc.payload);
    j["pairing"] = matrix_json(pairing);
    j["nondegenerate"] = nondegenerate;
    out << j.dump(2) << "\n";
  } else {
    out << "pairing (" << doc.name << "):\n" << matrix_text(pairing);
    out << (nondegenerate ? "nondegenerate\n" : "degenerate\n");
  }
  return nondegenerate ? success : singular_pairing;
}

inline RingStructure require_ring(const AlgebraDocument& doc) {
  if (const auto* r = std::get_if<RingStructure>(&doc.payload)) return *r;
  throw ParseError(doc.name, "a ring is required, got a module pair");
}

inline int cmd_kunneth(const std::string& a, const std::string& b, const Options& opt, std::ostream& out) {
  const AlgebraDocument da = load_input(a);
  const AlgebraDocument db = load_input(b);
  const RingStructure product = kunneth_product(require_ring(da), require_ring(db), opt.mode);
  out << emit_document({"product:" + da.name + "," + db.name, product});
  return success;
}

inline int cmd_catalog(const std::string& id, std::ostream& out) {
  if (id.empty()) {
    for (const auto& name : catalog::standard_entries()) out << name << "\n";
    return success;
  }
  out << emit_document({id, catalog::resolve_payload(id)});
  return success;
}

/// Runs one command line. argv[0] is the program name.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Poincaré-duality algebras: structure constants, diagonal classes, boundary case"};
  app.require_subcommand(1);

  Options opt;
  std::string mode_name = "literal";
  std::string output = "text";
  std::string input;
  std::string second;
  std::string catalog_id;

  const std::map<std::string, SignMode> modes{{"literal", SignMode::literal}, {"graded", SignMode::graded}};
  auto add_input = [&](CLI::App* sub) { sub->add_option("input", input, "catalog id or document path")->required(); };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--output", output, "text or json")->check(CLI::IsMember({"text", "json"}));
  };
  auto add_mode = [&](CLI::App* sub, const std::string& fallback) {
    sub->add_option("--mode", mode_name, "literal or graded (default " + fallback + ")")
        ->check(CLI::IsMember({"literal", "graded"}));
  };
  auto add_commutativity = [&](CLI::App* sub) {
    sub->add_flag("--allow-noncommutative", opt.allow_noncommutative, "skip the graded-commutativity axiom");
  };

  auto* validate_cmd = app.add_subcommand("validate", "check the ring / module axioms");
  add_input(validate_cmd);
  add_output(validate_cmd);
  add_commutativity(validate_cmd);

  auto* diag_cmd = app.add_subcommand("diag", "compute the symmetric class and its residual");
  add_input(diag_cmd);
  add_mode(diag_cmd, "literal");
  add_output(diag_cmd);
  add_commutativity(diag_cmd);

  auto* solve_cmd = app.add_subcommand("solve", "basis of all symmetric classes");
  add_input(solve_cmd);
  add_mode(solve_cmd, "literal");
  add_output(solve_cmd);
  add_commutativity(solve_cmd);

  auto* pair_cmd = app.add_subcommand("pair", "pairing matrix and its nondegeneracy");
  add_input(pair_cmd);
  add_output(pair_cmd);

  auto* kunneth_cmd = app.add_subcommand("kunneth", "emit the product ring as a document");
  kunneth_cmd->add_option("first", input, "catalog id or document path")->required();
  kunneth_cmd->add_option("second", second, "catalog id or document path")->required();
  add_mode(kunneth_cmd, "graded");

  auto* catalog_cmd = app.add_subcommand("catalog", "list fixtures, or emit one as a document");
  catalog_cmd->add_option("id", catalog_id, "catalog id");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return parse_failed;
  }

  if (kunneth_cmd->parsed() && kunneth_cmd->count("--mode") == 0) mode_name = "graded";
  opt.mode = modes.at(mode_name);
  opt.json = output == "json";

  try {
    if (validate_cmd->parsed()) return cmd_validate(input, opt, out);
    if (diag_cmd->parsed()) return cmd_diag(input, opt, out);
    if (solve_cmd->parsed()) return cmd_solve(input, opt, out);
    if (pair_cmd->parsed()) return cmd_pair(input, opt, out);
    if (kunneth_cmd->parsed()) return cmd_kunneth(input, second, opt, out);
    if (catalog_cmd->parsed()) return cmd_catalog(catalog_id, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return parse_failed;
  } catch (const MissingTopClass& e) {
    err << "error: " << e.what() << "\n";
    return check_failed;
  } catch (const NoSolution& e) {
    err << "error: " << e.what() << "\n";
    return check_failed;
  } catch (const NonUniqueSolution& e) {
    err << "error: " << e.what() << "\n";
    return check_failed;
  }
  return parse_failed;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"pdalg"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace pdalg::cli
