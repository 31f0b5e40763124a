// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance                 run every criterion
//   acceptance --criterion N   run criterion N only; exit status reflects it

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pdalg/catalog.hpp"
#include "pdalg/cli.hpp"
#include "pdalg/document.hpp"

using namespace pdalg;
namespace fs = std::filesystem;

namespace {

constexpr double per_entry_limit_seconds = 1.0;
constexpr double chain_total_limit_seconds = 10.0;
constexpr int random_basis_changes = 120;
constexpr unsigned random_seed = 20261016;

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> failures;

  void fail(std::string why) {
    pass = false;
    failures.push_back(std::move(why));
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string seconds_text(double s) {
  std::ostringstream o;
  o.precision(3);
  o << std::fixed << s << " s";
  return o.str();
}

const char* mode_name(SignMode m) { return to_string(m); }

RingStructure ring_of(const std::string& id) { return std::get<RingStructure>(catalog::resolve_payload(id)); }

std::vector<Vector> flattened(const std::vector<TensorClass>& space) {
  std::vector<Vector> out;
  for (const auto& s : space) out.push_back(s.flatten());
  return out;
}

fs::path data(const std::string& rel) { return fs::path(PDALG_TEST_DATA) / rel; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct CliRun {
  int code;
  std::string out;
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str()};
}

Outcome inversion_theorem() {
  Outcome o;
  double worst = 0;
  const auto ids = catalog::evenly_graded_rings();
  for (const auto& id : ids) {
    const auto start = Clock::now();
    const auto ring = ring_of(id);
    const auto w = diagonal_class(ring, SignMode::literal);
    const auto residual = check_symmetry(ring, SignMode::literal, w);
    const double t = seconds_since(start);
    worst = std::max(worst, t);
    if (!residual.empty()) o.fail(id + ": " + std::to_string(residual.entries.size()) + " nonzero residual entries");
    if (t >= per_entry_limit_seconds) o.fail(id + ": took " + seconds_text(t));
  }
  o.summary = "inverse pairing is symmetric in literal mode on " + std::to_string(ids.size()) +
              " evenly graded rings (slowest " + seconds_text(worst) + ")";
  return o;
}

Outcome boundary_theorem() {
  Outcome o;
  std::vector<std::string> ids{"disk:1", "disk:2", "disk:3", "disk:4", "disk:5", "cylinder:sphere:2", "cylinder:cp:2"};
  for (const auto& r : catalog::standard_rings()) ids.push_back("closed:" + r);
  double worst = 0;
  for (const auto& id : ids) {
    const auto start = Clock::now();
    const auto mp = std::get<ModulePair>(catalog::resolve_payload(id));
    const auto w = relative_diagonal_class(mp, SignMode::literal);
    const auto residual = check_relative_symmetry(mp, SignMode::literal, w);
    const auto bad = relative_normalization_violations(mp, w);
    const double t = seconds_since(start);
    worst = std::max(worst, t);
    if (!residual.empty()) o.fail(id + ": " + std::to_string(residual.entries.size()) + " nonzero residual entries");
    if (!bad.empty()) o.fail(id + ": normalization fails at " + std::to_string(bad.size()) + " entries");
    if (t >= per_entry_limit_seconds) o.fail(id + ": took " + seconds_text(t));
  }
  o.summary = "inverse relative pairing is symmetric and normalized on " + std::to_string(ids.size()) +
              " module pairs (slowest " + seconds_text(worst) + ")";
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::size_t checks = 0;
  for (const auto& id : catalog::standard_entries()) {
    const auto payload = catalog::resolve_payload(id);
    for (auto mode : {SignMode::literal, SignMode::graded}) {
      ++checks;
      const std::string tag = id + " (" + mode_name(mode) + ")";
      std::vector<TensorClass> space;
      std::optional<NormalizedSolutions> normalized;
      std::optional<TensorClass> w;
      if (const auto* ring = std::get_if<RingStructure>(&payload)) {
        space = solve_symmetric_space(*ring, mode);
        normalized = normalized_symmetric_solutions(*ring, mode);
        w = diagonal_class(*ring, mode);
      } else {
        const auto& mp = std::get<ModulePair>(payload);
        space = solve_relative_symmetric_space(mp, mode);
        normalized = normalized_relative_solutions(mp, mode);
        w = relative_diagonal_class(mp, mode);
      }
      if (!oracle::in_span(flattened(space), w->flatten())) o.fail(tag + ": class outside the solution span");
      if (!normalized)
        o.fail(tag + ": normalized system inconsistent");
      else if (!normalized->unique())
        o.fail(tag + ": normalized solution has " + std::to_string(normalized->directions.size()) + " free directions");
    }
  }
  o.summary = "class in solved span and unique normalized solution for " + std::to_string(checks) + " entry/mode pairs";
  return o;
}

Outcome frobenius_chain() {
  Outcome o;
  const auto start = Clock::now();
  std::size_t checked = 0;
  for (const auto& id : catalog::standard_entries()) {
    const auto payload = catalog::resolve_payload(id);
    ++checked;
    if (const auto* ring = std::get_if<RingStructure>(&payload)) {
      if (!validate(*ring).ok()) o.fail(id + ": validation fails");
      if (!check_frobenius_chain(*ring)) o.fail(id + ": chain identity fails");
    } else {
      const auto& mp = std::get<ModulePair>(payload);
      if (!validate_module(mp).ok()) o.fail(id + ": validation fails");
      if (mp.ring().basis().top_index() && !check_frobenius_chain(mp.ring())) o.fail(id + ": chain identity fails");
    }
  }

  std::mt19937 rng(random_seed);
  const auto ids = catalog::standard_rings();
  for (int t = 0; t < random_basis_changes; ++t) {
    const auto& id = ids[static_cast<std::size_t>(t) % ids.size()];
    const auto ring = oracle::random_basis_change(ring_of(id), rng);
    ++checked;
    if (!validate(ring).ok()) o.fail(id + " after basis change " + std::to_string(t) + ": validation fails");
    if (!check_frobenius_chain(ring)) o.fail(id + " after basis change " + std::to_string(t) + ": chain identity fails");
  }
  const double total = seconds_since(start);
  if (total >= chain_total_limit_seconds) o.fail("took " + seconds_text(total));
  o.summary = "validation and chain identity on " + std::to_string(checked) + " rings, " +
              std::to_string(random_basis_changes) + " of them randomly rebased (" + seconds_text(total) + ")";
  return o;
}

Outcome family_closure() {
  Outcome o;
  std::size_t products = 0;
  for (const auto& id : catalog::standard_entries()) {
    const auto payload = catalog::resolve_payload(id);
    for (auto mode : {SignMode::literal, SignMode::graded}) {
      std::size_t escaped = 0;
      if (const auto* ring = std::get_if<RingStructure>(&payload)) {
        const auto space = solve_symmetric_space(*ring, mode);
        const RingElement one = unit_element(*ring);
        for (const auto& s : space)
          for (std::size_t y = 0; y < ring->size(); ++y) {
            ++products;
            const auto moved = tensor_multiply(*ring, *ring, mode, s, tensor_of(*ring, *ring, one, basis_element(*ring, y)));
            if (!in_symmetric_span(space, moved)) ++escaped;
          }
      } else {
        const auto& mp = std::get<ModulePair>(payload);
        const auto space = solve_relative_symmetric_space(mp, mode);
        for (const auto& s : space)
          for (std::size_t y = 0; y < mp.ring().size(); ++y) {
            ++products;
            if (!in_symmetric_span(space, act_right(mp, mode, s, y))) ++escaped;
          }
      }
      if (escaped > 0)
        o.fail(id + " (" + mode_name(mode) + "): " + std::to_string(escaped) + " products s·(1⊗y) leave the solution space");
    }
  }
  o.summary = "membership of s·(1⊗y) in the solution space, " + std::to_string(products) + " products over all entries and both modes";
  return o;
}

Outcome sign_mode_separation() {
  Outcome o;
  const auto torus = ring_of("torus:2");
  const Matrix inverse = pairing_inverse(torus);
  const TensorClass w(torus.basis(), torus.basis(), inverse);

  for (auto mode : {SignMode::literal, SignMode::graded}) {
    const auto residual = check_symmetry(torus, mode, w);
    const auto golden =
        nlohmann::json::parse(slurp(data(std::string("golden/diag_torus_2_") + mode_name(mode) + ".json")));
    nlohmann::json computed = nlohmann::json::array();
    for (const auto& e : residual.entries)
      computed.push_back({{"k", e.k}, {"i", e.i}, {"j", e.j}, {"value", to_string(e.value)}});
    if (computed != golden["residual"]) o.fail(std::string(mode_name(mode)) + " residual differs from the fixture");
    if (cli::matrix_from_json(golden["mu"]) != inverse && mode == SignMode::literal)
      o.fail("literal fixture does not hold the inverse pairing");
  }

  const auto normalized = normalized_symmetric_solutions(torus, SignMode::graded);
  if (!normalized) {
    o.fail("graded normalized system inconsistent");
  } else if (!normalized->unique()) {
    o.fail("graded normalized solution not unique");
  } else {
    const Matrix& mu = normalized->particular.mu;
    for (std::size_t i = 0; i < mu.rows(); ++i)
      for (std::size_t j = 0; j < mu.cols(); ++j)
        if (abs(mu(i, j)) != abs(inverse(i, j)))
          o.fail("graded mu differs from the inverse pairing beyond sign at (" + std::to_string(i) + "," +
                 std::to_string(j) + ")");
    if (mu == inverse) o.summary = "torus:2 residuals match fixtures; graded solution unique and equal to the inverse pairing";
  }
  if (o.summary.empty()) o.summary = "torus:2 residuals match fixtures; graded solution unique, equal up to sign";
  return o;
}

Outcome cli_contract() {
  Outcome o;
  const std::vector<std::pair<std::vector<std::string>, std::string>> goldens{
      {{"diag", "sphere:2", "--output", "json"}, "diag_sphere_2.json"},
      {{"diag", "cp:2", "--output", "json"}, "diag_cp_2.json"},
      {{"diag", "disk:3", "--output", "json"}, "diag_disk_3.json"},
      {{"diag", "cylinder:sphere:2", "--output", "json"}, "diag_cylinder_sphere_2.json"},
      {{"diag", "torus:2", "--mode", "literal", "--output", "json"}, "diag_torus_2_literal.json"},
      {{"diag", "torus:2", "--mode", "graded", "--output", "json"}, "diag_torus_2_graded.json"},
      {{"solve", "point", "--output", "json"}, "solve_point.json"},
      {{"solve", "sphere:2", "--output", "json"}, "solve_sphere_2.json"},
      {{"solve", "cp:2", "--output", "json"}, "solve_cp_2.json"},
      {{"kunneth", "sphere:1", "sphere:1"}, "kunneth_sphere_1_sphere_1.json"},
  };
  for (const auto& [args, file] : goldens) {
    const auto r = run_cli(args);
    if (r.code != 0 || r.out != slurp(data("golden/" + file))) o.fail("golden mismatch: " + file);
  }

  std::size_t round_trips = 0;
  for (const auto& id : catalog::standard_entries()) {
    const auto r = run_cli({"catalog", id});
    ++round_trips;
    try {
      if (emit_document(parse_document(r.out)) != r.out) o.fail("round trip changes " + id);
    } catch (const ParseError& e) {
      o.fail("emitted document for " + id + " does not parse: " + e.what());
    }
  }

  struct Case {
    std::string command;
    std::string file;
    int code;
  };
  const std::vector<Case> table{
      {"diag", "singular_pairing.json", 3},          {"pair", "singular_pairing.json", 3},
      {"diag", "singular_relative_pairing.json", 3}, {"validate", "broken_associativity.json", 1},
      {"diag", "broken_associativity.json", 1},      {"validate", "degree_mismatch.json", 1},
      {"validate", "unit_violation.json", 1},        {"validate", "duplicate_key.json", 2},
      {"validate", "index_out_of_range.json", 2},    {"validate", "bad_rational.json", 2},
      {"validate", "missing_field.json", 2},         {"validate", "top_degree.json", 2},
      {"validate", "syntax_error.json", 2},          {"validate", "singular_pairing.json", 0},
  };
  for (const auto& c : table) {
    const int code = run_cli({c.command, data("corpus/" + c.file).string()}).code;
    if (code != c.code)
      o.fail(c.command + " " + c.file + ": exit " + std::to_string(code) + ", expected " + std::to_string(c.code));
  }
  o.summary = std::to_string(goldens.size()) + " golden outputs, " + std::to_string(round_trips) + " round trips, " +
              std::to_string(table.size()) + " exit codes";
  return o;
}

struct Criterion {
  int number;
  std::string name;
  std::function<Outcome()> check;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "inversion theorem", inversion_theorem},
      {2, "boundary theorem", boundary_theorem},
      {3, "oracle equivalence", oracle_equivalence},
      {4, "frobenius chain", frobenius_chain},
      {5, "family closure", family_closure},
      {6, "sign-mode separation", sign_mode_separation},
      {7, "cli contract", cli_contract},
  };
  return all;
}

bool report(const Criterion& c) {
  Outcome o;
  try {
    o = c.check();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  std::cout << "criterion " << c.number << " " << (o.pass ? "PASS" : "FAIL") << "  " << c.name << ": " << o.summary
            << "\n";
  for (const auto& f : o.failures) std::cout << "    " << f << "\n";
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int a = 1; a < argc; ++a) {
    const std::string arg = argv[a];
    if (arg == "--criterion" && a + 1 < argc) {
      only = std::atoi(argv[++a]);
    } else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 2;
    }
  }
  bool all_pass = true;
  bool ran = false;
  for (const auto& c : criteria()) {
    if (only != 0 && c.number != only) continue;
    ran = true;
    all_pass = report(c) && all_pass;
  }
  if (!ran) {
    std::cerr << "no criterion " << only << "\n";
    return 2;
  }
  return all_pass ? 0 : 1;
}
