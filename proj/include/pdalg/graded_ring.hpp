#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pdalg/errors.hpp"
#include "pdalg/matrix.hpp"
#include "pdalg/rational.hpp"

namespace pdalg {

/// Ordered homogeneous basis with degrees and distinguished unit/top elements.
///
/// A ring basis always has its unit at index 0. A module basis (relative
/// cohomology) has no unit but must carry a top class in the formal dimension.
class GradedBasis {
 public:
  GradedBasis() = default;

  GradedBasis(std::vector<std::string> labels, std::vector<int> degrees, std::optional<std::size_t> unit_index,
              std::optional<std::size_t> top_index, int formal_dimension)
      : labels_(std::move(labels)),
        degrees_(std::move(degrees)),
        unit_(unit_index),
        top_(top_index),
        formal_dimension_(formal_dimension) {
    if (labels_.size() != degrees_.size()) throw InvalidBasis("labels and degrees differ in length");
    if (labels_.empty()) throw InvalidBasis("basis is empty");
    if (formal_dimension_ < 0) throw InvalidBasis("formal dimension is negative");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (degrees_[i] < 0) throw InvalidBasis("negative degree at index " + std::to_string(i));
      if (!seen.insert(labels_[i]).second) throw InvalidBasis("duplicate label '" + labels_[i] + "'");
    }
    if (unit_) {
      if (*unit_ >= size()) throw InvalidBasis("unit index out of range");
      if (degrees_[*unit_] != 0) throw InvalidBasis("unit element must have degree 0");
    }
    if (top_) {
      if (*top_ >= size()) throw InvalidBasis("top index out of range");
      if (degrees_[*top_] != formal_dimension_) throw InvalidBasis("top element must have the formal dimension");
    }
  }

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<int>& degrees() const noexcept { return degrees_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  int degree(std::size_t i) const { return degrees_.at(i); }
  std::optional<std::size_t> unit_index() const noexcept { return unit_; }
  std::optional<std::size_t> top_index() const noexcept { return top_; }
  int formal_dimension() const noexcept { return formal_dimension_; }

  std::size_t top() const {
    if (!top_) throw MissingTopClass();
    return *top_;
  }

  bool evenly_graded() const {
    for (int d : degrees_)
      if (d % 2 != 0) return false;
    return true;
  }

  friend bool operator==(const GradedBasis&, const GradedBasis&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<int> degrees_;
  std::optional<std::size_t> unit_;
  std::optional<std::size_t> top_;
  int formal_dimension_ = 0;
};

/// Sparse tensor keyed by (i, j, k). Zero entries are never stored.
using StructureTensor = std::map<std::array<std::size_t, 3>, Rational>;

/// One term c * x_k of a basis product.
struct Term {
  std::size_t index;
  Rational coefficient;
};

namespace detail {

inline StructureTensor drop_zeros(StructureTensor t) {
  std::erase_if(t, [](const auto& kv) { return is_zero(kv.second); });
  return t;
}

/// products[i * cols + j] lists the nonzero c_{ij}^k terms.
inline std::vector<std::vector<Term>> index_products(const StructureTensor& t, std::size_t rows, std::size_t cols,
                                                     std::size_t targets) {
  std::vector<std::vector<Term>> products(rows * cols);
  for (const auto& [key, value] : t) {
    const auto [i, j, k] = key;
    if (i >= rows || j >= cols || k >= targets)
      throw DimensionMismatch("tensor index (" + std::to_string(i) + "," + std::to_string(j) + "," +
                              std::to_string(k) + ") out of range");
    products[i * cols + j].push_back({k, value});
  }
  return products;
}

}  // namespace detail

/// H*(M;Q) as a graded basis plus structure constants x_i x_j = lambda^k_ij x_k.
class RingStructure {
 public:
  RingStructure(GradedBasis basis, StructureTensor lambda)
      : basis_(std::move(basis)), lambda_(detail::drop_zeros(std::move(lambda))) {
    if (basis_.unit_index() != std::optional<std::size_t>{0}) throw InvalidBasis("ring basis must have its unit at index 0");
    products_ = detail::index_products(lambda_, size(), size(), size());
  }

  const GradedBasis& basis() const noexcept { return basis_; }
  const StructureTensor& lambda() const noexcept { return lambda_; }
  std::size_t size() const noexcept { return basis_.size(); }

  Rational coefficient(std::size_t i, std::size_t j, std::size_t k) const {
    const auto it = lambda_.find({i, j, k});
    return it == lambda_.end() ? Rational(0) : it->second;
  }

  /// Nonzero terms of x_i * x_j.
  const std::vector<Term>& product(std::size_t i, std::size_t j) const { return products_[i * size() + j]; }

  friend bool operator==(const RingStructure& a, const RingStructure& b) {
    return a.basis_ == b.basis_ && a.lambda_ == b.lambda_;
  }

 private:
  GradedBasis basis_;
  StructureTensor lambda_;
  std::vector<std::vector<Term>> products_;
};

/// Coefficient vector against a ring basis.
struct RingElement {
  Vector coefficients;

  friend bool operator==(const RingElement&, const RingElement&) = default;
};

inline RingElement basis_element(const RingStructure& ring, std::size_t i) {
  if (i >= ring.size()) throw DimensionMismatch("basis index out of range");
  RingElement e{Vector(ring.size())};
  e.coefficients[i] = 1;
  return e;
}

inline RingElement unit_element(const RingStructure& ring) { return basis_element(ring, 0); }

inline RingElement multiply(const RingStructure& ring, const RingElement& a, const RingElement& b) {
  const std::size_t n = ring.size();
  if (a.coefficients.size() != n || b.coefficients.size() != n)
    throw DimensionMismatch("multiply: element length differs from basis size");
  RingElement out{Vector(n)};
  for (std::size_t i = 0; i < n; ++i) {
    if (is_zero(a.coefficients[i])) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (is_zero(b.coefficients[j])) continue;
      const Rational ab = a.coefficients[i] * b.coefficients[j];
      for (const auto& t : ring.product(i, j)) out.coefficients[t.index] += ab * t.coefficient;
    }
  }
  return out;
}

enum class Axiom {
  grading,
  unit,
  associativity,
  graded_commutativity,
  unit_action,
  module_associativity,
};

inline const char* to_string(Axiom a) {
  switch (a) {
    case Axiom::grading: return "grading";
    case Axiom::unit: return "unit";
    case Axiom::associativity: return "associativity";
    case Axiom::graded_commutativity: return "graded_commutativity";
    case Axiom::unit_action: return "unit_action";
    case Axiom::module_associativity: return "module_associativity";
  }
  return "unknown";
}

struct Violation {
  Axiom axiom;
  std::vector<std::size_t> indices;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  bool has(Axiom a) const {
    for (const auto& v : violations)
      if (v.axiom == a) return true;
    return false;
  }
};

struct ValidationOptions {
  /// Skip only the graded-commutativity axiom.
  bool allow_noncommutative = false;
};

namespace detail {

inline std::string index_tuple(std::initializer_list<std::size_t> ix) {
  std::string s = "(";
  bool first = true;
  for (auto i : ix) {
    if (!first) s += ",";
    s += std::to_string(i);
    first = false;
  }
  return s + ")";
}

inline Vector product_vector(const RingStructure& ring, std::size_t i, std::size_t j) {
  Vector v(ring.size());
  for (const auto& t : ring.product(i, j)) v[t.index] += t.coefficient;
  return v;
}

}  // namespace detail

/// Checks grading, unit, associativity and graded commutativity of the structure tensor.
/// Every violation is reported with its witnessing index tuple.
inline ValidationReport validate(const RingStructure& ring, const ValidationOptions& options = {}) {
  ValidationReport report;
  const auto& basis = ring.basis();
  const std::size_t n = ring.size();

  for (const auto& [key, value] : ring.lambda()) {
    const auto [i, j, k] = key;
    if (basis.degree(k) != basis.degree(i) + basis.degree(j))
      report.violations.push_back({Axiom::grading, {i, j, k},
                                   "lambda^" + std::to_string(k) + "_" + detail::index_tuple({i, j}) + " = " +
                                       to_string(value) + " in a degree-forbidden slot"});
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Rational expected = i == k ? 1 : 0;
      if (ring.coefficient(i, 0, k) != expected)
        report.violations.push_back({Axiom::unit, {i, k}, "x_" + std::to_string(i) + " * 1 has coefficient " +
                                                              to_string(ring.coefficient(i, 0, k)) + " on x_" +
                                                              std::to_string(k)});
      if (i != 0 && ring.coefficient(0, i, k) != expected)
        report.violations.push_back({Axiom::unit, {i, k}, "1 * x_" + std::to_string(i) + " has coefficient " +
                                                              to_string(ring.coefficient(0, i, k)) + " on x_" +
                                                              std::to_string(k)});
    }

  // (x_i x_j) x_k against x_i (x_j x_k), compared coefficient by coefficient.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Vector left(n);
        Vector right(n);
        for (const auto& ij : ring.product(i, j))
          for (const auto& t : ring.product(ij.index, k)) left[t.index] += ij.coefficient * t.coefficient;
        for (const auto& jk : ring.product(j, k))
          for (const auto& t : ring.product(i, jk.index)) right[t.index] += jk.coefficient * t.coefficient;
        for (std::size_t s = 0; s < n; ++s)
          if (left[s] != right[s])
            report.violations.push_back({Axiom::associativity, {i, j, k, s},
                                         "(x_i x_j) x_k = " + to_string(left[s]) + " but x_i (x_j x_k) = " +
                                             to_string(right[s]) + " on x_" + std::to_string(s)});
      }

  if (!options.allow_noncommutative) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const bool odd = (basis.degree(i) * basis.degree(j)) % 2 != 0;
        const Vector ij = detail::product_vector(ring, i, j);
        const Vector ji = detail::product_vector(ring, j, i);
        for (std::size_t k = 0; k < n; ++k) {
          const Rational expected = odd ? Rational(-ji[k]) : ji[k];
          if (ij[k] != expected)
            report.violations.push_back({Axiom::graded_commutativity, {i, j, k},
                                         "lambda^k_ij = " + to_string(ij[k]) + " but lambda^k_ji = " +
                                             to_string(ji[k])});
        }
      }
  }
  return report;
}

/// Entry (i, j) is lambda^top_ij, the coefficient of the top class in x_i x_j.
inline Matrix pairing_matrix(const RingStructure& ring) {
  const std::size_t top = ring.basis().top();
  const std::size_t n = ring.size();
  Matrix m(n, n);
  for (const auto& [key, value] : ring.lambda())
    if (key[2] == top) m(key[0], key[1]) = value;
  return m;
}

inline bool check_poincare_duality(const RingStructure& ring) {
  return rank(pairing_matrix(ring)) == ring.size();
}

/// sum_j lambda^j_{a k} P_{j b} == sum_i P_{a i} lambda^i_{k b} for every (a, k, b),
/// where P is the pairing matrix.
inline bool check_frobenius_chain(const RingStructure& ring) {
  const Matrix pairing = pairing_matrix(ring);
  const std::size_t n = ring.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t b = 0; b < n; ++b) {
        Rational left = 0;
        for (const auto& t : ring.product(a, k)) left += t.coefficient * pairing(t.index, b);
        Rational right = 0;
        for (const auto& t : ring.product(k, b)) right += pairing(a, t.index) * t.coefficient;
        if (left != right) return false;
      }
  return true;
}

/// Structure constants in the basis x'_a = sum_b change(a, b) x_b, labelled by `new_basis`.
/// Each row of `change` must be homogeneous of the degree `new_basis` assigns it,
/// otherwise the result fails the grading axiom.
inline RingStructure change_basis(const RingStructure& ring, const Matrix& change, GradedBasis new_basis) {
  const std::size_t n = ring.size();
  if (change.rows() != n || !change.square()) throw DimensionMismatch("change of basis has wrong shape");
  const Matrix back = invert(change);
  StructureTensor lambda;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Vector in_old(n);
      for (std::size_t c = 0; c < n; ++c) {
        if (is_zero(change(a, c))) continue;
        for (std::size_t d = 0; d < n; ++d) {
          if (is_zero(change(b, d))) continue;
          for (const auto& t : ring.product(c, d)) in_old[t.index] += change(a, c) * change(b, d) * t.coefficient;
        }
      }
      for (std::size_t f = 0; f < n; ++f) {
        Rational value = 0;
        for (std::size_t e = 0; e < n; ++e)
          if (!is_zero(in_old[e])) value += in_old[e] * back(e, f);
        if (!is_zero(value)) lambda[{a, b, f}] = value;
      }
    }
  return RingStructure(std::move(new_basis), std::move(lambda));
}

inline RingStructure change_basis(const RingStructure& ring, const Matrix& change) {
  return change_basis(ring, change, ring.basis());
}

}  // namespace pdalg
