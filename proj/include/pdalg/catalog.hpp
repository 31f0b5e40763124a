#pragma once

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "pdalg/boundary.hpp"
#include "pdalg/diagonal.hpp"
#include "pdalg/errors.hpp"
#include "pdalg/graded_ring.hpp"

namespace pdalg {

using Payload = std::variant<RingStructure, ModulePair>;

/// Stored values for the flagship fixtures; checked against recomputation in tests.
struct Expectations {
  Matrix pairing;
  Matrix mu;
  std::size_t solution_dimension;
};

struct CatalogEntry {
  std::string name;
  Payload payload;
  std::optional<Expectations> expected;
};

namespace catalog {

inline RingStructure point() {
  return RingStructure(GradedBasis({"1"}, {0}, 0, 0, 0), {{{0, 0, 0}, 1}});
}

/// H*(S^n) = Q[x]/(x^2), |x| = n.
inline RingStructure sphere(int n) {
  if (n < 1) throw InvalidBasis("sphere dimension must be at least 1");
  return RingStructure(GradedBasis({"1", "x"}, {0, n}, 0, 1, n),
                       {{{0, 0, 0}, 1}, {{0, 1, 1}, 1}, {{1, 0, 1}, 1}});
}

/// H*(CP^n) = Q[h]/(h^{n+1}), |h| = 2.
inline RingStructure complex_projective(int n) {
  if (n < 1) throw InvalidBasis("complex projective dimension must be at least 1");
  std::vector<std::string> labels{"1", "h"};
  std::vector<int> degrees{0, 2};
  for (int p = 2; p <= n; ++p) {
    labels.push_back("h^" + std::to_string(p));
    degrees.push_back(2 * p);
  }
  const auto size = static_cast<std::size_t>(n) + 1;
  StructureTensor lambda;
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; i + j < size; ++j) lambda[{i, j, i + j}] = 1;
  return RingStructure(GradedBasis(std::move(labels), std::move(degrees), 0, size - 1, 2 * n), std::move(lambda));
}

inline RingStructure product(const RingStructure& a, const RingStructure& b, SignMode mode = SignMode::graded) {
  return kunneth_product(a, b, mode);
}

/// H*(T^n) as the graded Künneth power of H*(S^1), relabelled by exterior monomials a1a2...
inline RingStructure torus(int n) {
  if (n < 1) throw InvalidBasis("torus dimension must be at least 1");
  RingStructure ring = sphere(1);
  for (int f = 1; f < n; ++f) ring = kunneth_product(ring, sphere(1), SignMode::graded);
  // Index bit (n-1-g) set means generator a_{g+1} is present.
  std::vector<std::string> labels;
  for (std::size_t idx = 0; idx < ring.size(); ++idx) {
    std::string label;
    for (int g = 0; g < n; ++g)
      if (idx & (std::size_t{1} << (n - 1 - g))) label += "a" + std::to_string(g + 1);
    labels.push_back(label.empty() ? "1" : label);
  }
  const auto& b = ring.basis();
  return RingStructure(GradedBasis(std::move(labels), b.degrees(), 0, b.top_index(), n), ring.lambda());
}

/// (H*(D^n), H*(D^n, ∂D^n)): ring {1}, module {u} in degree n, 1 ∧ u = u.
inline ModulePair disk_pair(int n) {
  if (n < 1) throw InvalidBasis("disk dimension must be at least 1");
  RingStructure ring(GradedBasis({"1"}, {0}, 0, std::nullopt, n), {{{0, 0, 0}, 1}});
  return ModulePair(std::move(ring), GradedBasis({"u"}, {n}, std::nullopt, 0, n), {{{0, 0, 0}, 1}});
}

/// (H*(M×I), H*(M×I, M×∂I)) for closed M: the module is H*(M) shifted up by the
/// relative interval class τ, and y_i ∧ (y_j τ) = lambda^k_ij (y_k τ).
inline ModulePair cylinder_pair(const RingStructure& ring) {
  const auto& b = ring.basis();
  const std::size_t top = b.top();
  const int dim = b.formal_dimension() + 1;
  RingStructure base(GradedBasis(b.labels(), b.degrees(), 0, std::nullopt, dim), ring.lambda());
  std::vector<std::string> labels;
  std::vector<int> degrees;
  for (std::size_t i = 0; i < b.size(); ++i) {
    labels.push_back(i == 0 ? std::string("τ") : b.label(i) + "τ");
    degrees.push_back(b.degree(i) + 1);
  }
  return ModulePair(std::move(base), GradedBasis(std::move(labels), std::move(degrees), std::nullopt, top, dim),
                    ring.lambda());
}

namespace detail {

inline int parse_dimension(std::string_view text, std::string_view id) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError("", "bad dimension in catalog id '" + std::string(id) + "'");
  return value;
}

inline RingStructure expect_ring(const Payload& p, std::string_view id) {
  if (const auto* r = std::get_if<RingStructure>(&p)) return *r;
  throw ParseError("", "catalog id '" + std::string(id) + "' is a module pair, a ring is required");
}

}  // namespace detail

inline Payload resolve_payload(std::string_view id) {
  const auto colon = id.find(':');
  const std::string_view head = id.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : id.substr(colon + 1);
  try {
    if (id == "point") return point();
    if (colon == std::string_view::npos) throw ParseError("", "unknown catalog id '" + std::string(id) + "'");
    if (head == "sphere") return sphere(detail::parse_dimension(rest, id));
    if (head == "cp") return complex_projective(detail::parse_dimension(rest, id));
    if (head == "torus") return torus(detail::parse_dimension(rest, id));
    if (head == "disk") return disk_pair(detail::parse_dimension(rest, id));
    if (head == "cylinder") return cylinder_pair(detail::expect_ring(resolve_payload(rest), id));
    if (head == "closed") return closed_as_pair(detail::expect_ring(resolve_payload(rest), id));
    if (head == "product") {
      // Split at the first comma: the left factor may not itself be a product.
      const auto comma = rest.find(',');
      if (comma == std::string_view::npos) throw ParseError("", "product needs two ids: '" + std::string(id) + "'");
      return product(detail::expect_ring(resolve_payload(rest.substr(0, comma)), id),
                     detail::expect_ring(resolve_payload(rest.substr(comma + 1)), id));
    }
  } catch (const InvalidBasis& e) {
    throw ParseError("", "catalog id '" + std::string(id) + "': " + e.what());
  }
  throw ParseError("", "unknown catalog id '" + std::string(id) + "'");
}

inline std::optional<Expectations> stored_expectations(std::string_view id) {
  const Matrix swap{{0, 1}, {1, 0}};
  if (id == "sphere:2") return Expectations{swap, swap, 2};
  if (id == "cp:2") {
    const Matrix anti{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}};
    return Expectations{anti, anti, 3};
  }
  if (id == "torus:2") {
    // Basis 1, a2, a1, a1a2 with a2 a1 = -a1a2.
    const Matrix pairing{{0, 0, 0, 1}, {0, 0, -1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}};
    const Matrix mu{{0, 0, 0, 1}, {0, 0, 1, 0}, {0, -1, 0, 0}, {1, 0, 0, 0}};
    return Expectations{pairing, mu, 4};
  }
  if (id == "disk:3") return Expectations{Matrix{{1}}, Matrix{{1}}, 1};
  if (id == "cylinder:sphere:2") return Expectations{swap, swap, 2};
  return std::nullopt;
}

inline CatalogEntry resolve(std::string_view id) {
  return CatalogEntry{std::string(id), resolve_payload(id), stored_expectations(id)};
}

/// Closed fixtures swept by the test suites.
inline std::vector<std::string> standard_rings() {
  return {"point",        "sphere:1",  "sphere:2",  "sphere:3",  "sphere:4",
          "cp:1",         "cp:2",      "cp:3",      "torus:2",   "torus:3",
          "product:sphere:2,sphere:2", "product:cp:1,cp:1",      "product:sphere:1,sphere:2",
          "product:sphere:2,cp:2"};
}

inline std::vector<std::string> evenly_graded_rings() {
  return {"sphere:2", "sphere:4", "cp:2", "cp:3", "product:sphere:2,sphere:2", "product:cp:1,cp:1"};
}

/// Module-pair fixtures swept by the test suites.
inline std::vector<std::string> standard_pairs() {
  return {"disk:1",           "disk:2",           "disk:3",        "disk:4",         "disk:5",
          "cylinder:sphere:1", "cylinder:sphere:2", "cylinder:cp:2", "cylinder:torus:2", "closed:point",
          "closed:sphere:2",  "closed:cp:2",      "closed:torus:2"};
}

inline std::vector<std::string> standard_entries() {
  auto ids = standard_rings();
  const auto pairs = standard_pairs();
  ids.insert(ids.end(), pairs.begin(), pairs.end());
  return ids;
}

}  // namespace catalog
}  // namespace pdalg
