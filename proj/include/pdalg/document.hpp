#pragma once

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pdalg/boundary.hpp"
#include "pdalg/catalog.hpp"
#include "pdalg/errors.hpp"
#include "pdalg/graded_ring.hpp"

namespace pdalg {

using ordered_json = nlohmann::ordered_json;

/// A named ring or module pair as read from / written to an algebra document.
///
/// Layout:
///   { "name", "dimension", "basis": [{"label","degree"}], "unit", "top"?,
///     "lambda": [{"i","j","k","value"}],
///     "module"?: { "basis", "top", "action": [{"i","j","k","value"}] } }
/// Values are rational strings ("p/q" or "p"). Missing tensor entries are zero.
struct AlgebraDocument {
  std::string name;
  Payload payload;
};

namespace detail {

inline ordered_json basis_json(const GradedBasis& b) {
  ordered_json out = ordered_json::array();
  for (std::size_t i = 0; i < b.size(); ++i) out.push_back({{"label", b.label(i)}, {"degree", b.degree(i)}});
  return out;
}

inline ordered_json tensor_json(const StructureTensor& t) {
  ordered_json out = ordered_json::array();
  for (const auto& [key, value] : t)
    out.push_back({{"i", key[0]}, {"j", key[1]}, {"k", key[2]}, {"value", to_string(value)}});
  return out;
}

class Reader {
 public:
  explicit Reader(const ordered_json& root) : root_(root) {}

  const ordered_json& field(const ordered_json& obj, const std::string& path, const std::string& key) const {
    if (!obj.is_object()) throw ParseError(path.empty() ? "/" : path, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(path + "/" + key, "missing field");
    return *it;
  }

  long long integer(const ordered_json& v, const std::string& path) const {
    if (!v.is_number_integer()) throw ParseError(path, "expected an integer");
    return v.get<long long>();
  }

  std::size_t index(const ordered_json& v, const std::string& path) const {
    const long long x = integer(v, path);
    if (x < 0) throw ParseError(path, "index must be nonnegative");
    return static_cast<std::size_t>(x);
  }

  std::string text(const ordered_json& v, const std::string& path) const {
    if (!v.is_string()) throw ParseError(path, "expected a string");
    return v.get<std::string>();
  }

  GradedBasis basis(const ordered_json& obj, const std::string& path, std::optional<std::size_t> unit,
                    std::optional<std::size_t> top, int dimension) const {
    const auto& list = field(obj, path, "basis");
    if (!list.is_array()) throw ParseError(path + "/basis", "expected a list");
    std::vector<std::string> labels;
    std::vector<int> degrees;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string at = path + "/basis/" + std::to_string(i);
      labels.push_back(text(field(list[i], at, "label"), at + "/label"));
      degrees.push_back(static_cast<int>(integer(field(list[i], at, "degree"), at + "/degree")));
    }
    try {
      return GradedBasis(std::move(labels), std::move(degrees), unit, top, dimension);
    } catch (const InvalidBasis& e) {
      throw ParseError(path + "/basis", e.what());
    }
  }

  StructureTensor tensor(const ordered_json& obj, const std::string& path, const std::string& key, std::size_t rows,
                         std::size_t cols) const {
    const auto& list = field(obj, path, key);
    if (!list.is_array()) throw ParseError(path + "/" + key, "expected a list");
    StructureTensor t;
    for (std::size_t n = 0; n < list.size(); ++n) {
      const std::string at = path + "/" + key + "/" + std::to_string(n);
      const std::size_t i = index(field(list[n], at, "i"), at + "/i");
      const std::size_t j = index(field(list[n], at, "j"), at + "/j");
      const std::size_t k = index(field(list[n], at, "k"), at + "/k");
      if (i >= rows) throw ParseError(at + "/i", "index out of range");
      if (j >= cols) throw ParseError(at + "/j", "index out of range");
      if (k >= cols) throw ParseError(at + "/k", "index out of range");
      Rational value;
      try {
        value = parse_rational(text(field(list[n], at, "value"), at + "/value"));
      } catch (const ParseError& e) {
        throw ParseError(at + "/value", e.what());
      }
      if (!t.emplace(std::array<std::size_t, 3>{i, j, k}, std::move(value)).second)
        throw ParseError(at, "duplicate entry (" + std::to_string(i) + "," + std::to_string(j) + "," +
                                 std::to_string(k) + ")");
    }
    return t;
  }

  std::optional<std::size_t> optional_index(const ordered_json& obj, const std::string& path,
                                            const std::string& key) const {
    const auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    return index(*it, path + "/" + key);
  }

  AlgebraDocument read() const {
    const std::string name = text(field(root_, "", "name"), "/name");
    const int dimension = static_cast<int>(integer(field(root_, "", "dimension"), "/dimension"));
    const std::size_t unit = index(field(root_, "", "unit"), "/unit");
    if (unit != 0) throw ParseError("/unit", "the unit must be basis index 0");
    const auto top = optional_index(root_, "", "top");
    GradedBasis basis = this->basis(root_, "", unit, top, dimension);
    StructureTensor lambda = tensor(root_, "", "lambda", basis.size(), basis.size());
    RingStructure ring(std::move(basis), std::move(lambda));

    const auto mod = root_.find("module");
    if (mod == root_.end() || mod->is_null()) return {name, std::move(ring)};
    const auto module_top = index(field(*mod, "/module", "top"), "/module/top");
    GradedBasis module_basis = this->basis(*mod, "/module", std::nullopt, module_top, dimension);
    StructureTensor action = tensor(*mod, "/module", "action", ring.size(), module_basis.size());
    try {
      return {name, ModulePair(std::move(ring), std::move(module_basis), std::move(action))};
    } catch (const InvalidBasis& e) {
      throw ParseError("/module", e.what());
    }
  }

 private:
  const ordered_json& root_;
};

}  // namespace detail

inline ordered_json document_json(const AlgebraDocument& doc) {
  const RingStructure& ring = std::visit(
      [](const auto& p) -> const RingStructure& {
        if constexpr (std::is_same_v<std::decay_t<decltype(p)>, RingStructure>)
          return p;
        else
          return p.ring();
      },
      doc.payload);
  const auto& b = ring.basis();
  ordered_json out;
  out["name"] = doc.name;
  out["dimension"] = b.formal_dimension();
  out["basis"] = detail::basis_json(b);
  out["unit"] = 0;
  out["top"] = b.top_index() ? ordered_json(*b.top_index()) : ordered_json(nullptr);
  out["lambda"] = detail::tensor_json(ring.lambda());
  if (const auto* mp = std::get_if<ModulePair>(&doc.payload)) {
    ordered_json mod;
    mod["basis"] = detail::basis_json(mp->module_basis());
    mod["top"] = mp->module_basis().top();
    mod["action"] = detail::tensor_json(mp->action());
    out["module"] = std::move(mod);
  }
  return out;
}

/// Deterministic text: emit(parse(emit(x))) == emit(x) byte for byte.
inline std::string emit_document(const AlgebraDocument& doc) { return document_json(doc).dump(2) + "\n"; }

inline AlgebraDocument parse_document(const std::string& text) {
  ordered_json root;
  try {
    root = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // nlohmann reports "at line L, column C" inside what().
    throw ParseError("syntax", e.what());
  }
  try {
    return detail::Reader(root).read();
  } catch (const DimensionMismatch& e) {
    throw ParseError("/", e.what());
  } catch (const InvalidBasis& e) {
    throw ParseError("/", e.what());
  }
}

}  // namespace pdalg
