#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pdalg/errors.hpp"
#include "pdalg/graded_ring.hpp"
#include "pdalg/matrix.hpp"

namespace pdalg {

/// How factors commute past each other in a tensor product.
///
/// literal: (a⊗b)(c⊗d) = (ac)⊗(bd), the sign-free index calculus.
/// graded:  (a⊗b)(c⊗d) = (-1)^{|b||c|} (ac)⊗(bd), the Koszul rule.
enum class SignMode { literal, graded };

inline const char* to_string(SignMode m) { return m == SignMode::literal ? "literal" : "graded"; }

inline int koszul_sign(SignMode mode, int degree_b, int degree_c) {
  if (mode == SignMode::literal) return 1;
  return (degree_b * degree_c) % 2 == 0 ? 1 : -1;
}

/// w = sum mu(i, j) l_i ⊗ r_j. Rows index the left basis, columns the right basis.
///
/// For a module pair the left basis is the module (relative classes) and the right
/// basis is the ring.
struct TensorClass {
  GradedBasis left;
  GradedBasis right;
  Matrix mu;

  TensorClass(GradedBasis l, GradedBasis r, Matrix m) : left(std::move(l)), right(std::move(r)), mu(std::move(m)) {
    if (mu.rows() != left.size() || mu.cols() != right.size())
      throw DimensionMismatch("tensor coefficients do not match the bases");
  }

  static TensorClass zero(const GradedBasis& l, const GradedBasis& r) {
    return TensorClass(l, r, Matrix(l.size(), r.size()));
  }

  /// Coefficients of total degree d.
  Matrix component(int d) const {
    Matrix c(mu.rows(), mu.cols());
    for (std::size_t i = 0; i < mu.rows(); ++i)
      for (std::size_t j = 0; j < mu.cols(); ++j)
        if (left.degree(i) + right.degree(j) == d) c(i, j) = mu(i, j);
    return c;
  }

  /// Flattened row-major coefficients.
  Vector flatten() const { return Vector(mu.entries().begin(), mu.entries().end()); }

  friend bool operator==(const TensorClass& a, const TensorClass& b) {
    return a.left == b.left && a.right == b.right && a.mu == b.mu;
  }
};

using RelativeTensorClass = TensorClass;

namespace detail {

inline TensorClass unflatten(const GradedBasis& l, const GradedBasis& r, const Vector& v) {
  Matrix m(l.size(), r.size());
  for (std::size_t i = 0; i < l.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j) m(i, j) = v[i * r.size() + j];
  return TensorClass(l, r, std::move(m));
}

}  // namespace detail

inline TensorClass tensor_of(const RingStructure& left_ring, const RingStructure& right_ring, const RingElement& a,
                             const RingElement& b) {
  if (a.coefficients.size() != left_ring.size() || b.coefficients.size() != right_ring.size())
    throw DimensionMismatch("tensor_of: element length differs from basis size");
  Matrix m(left_ring.size(), right_ring.size());
  for (std::size_t i = 0; i < left_ring.size(); ++i)
    for (std::size_t j = 0; j < right_ring.size(); ++j) m(i, j) = a.coefficients[i] * b.coefficients[j];
  return TensorClass(left_ring.basis(), right_ring.basis(), std::move(m));
}

/// Product in H*(L) ⊗ H*(R) under the chosen sign rule.
inline TensorClass tensor_multiply(const RingStructure& left_ring, const RingStructure& right_ring, SignMode mode,
                                   const TensorClass& u, const TensorClass& v) {
  const auto& lb = left_ring.basis();
  const auto& rb = right_ring.basis();
  if (u.left != lb || v.left != lb || u.right != rb || v.right != rb)
    throw DimensionMismatch("tensor_multiply: operands are not over the given bases");
  Matrix out(lb.size(), rb.size());
  for (std::size_t i = 0; i < lb.size(); ++i)
    for (std::size_t j = 0; j < rb.size(); ++j) {
      const Rational& uij = u.mu(i, j);
      if (is_zero(uij)) continue;
      for (std::size_t k = 0; k < lb.size(); ++k)
        for (std::size_t l = 0; l < rb.size(); ++l) {
          const Rational& vkl = v.mu(k, l);
          if (is_zero(vkl)) continue;
          const Rational c = koszul_sign(mode, rb.degree(j), lb.degree(k)) * uij * vkl;
          for (const auto& p : left_ring.product(i, k))
            for (const auto& q : right_ring.product(j, l)) out(p.index, q.index) += c * p.coefficient * q.coefficient;
        }
    }
  return TensorClass(lb, rb, std::move(out));
}

inline Matrix pairing_inverse(const RingStructure& ring) {
  const Matrix pairing = pairing_matrix(ring);
  try {
    return invert(pairing);
  } catch (const SingularMatrix&) {
    throw SingularPairing();
  }
}

/// A nonzero component of w·(1⊗x_k) - (x_k⊗1)·w at l_i ⊗ r_j.
struct ResidualEntry {
  std::size_t k;
  std::size_t i;
  std::size_t j;
  Rational value;
};

struct SymmetryResidual {
  std::vector<ResidualEntry> entries;

  bool empty() const noexcept { return entries.empty(); }
};

namespace detail {

inline void collect_residual(std::size_t k, const Matrix& lhs, const Matrix& rhs, SymmetryResidual& out) {
  for (std::size_t i = 0; i < lhs.rows(); ++i)
    for (std::size_t j = 0; j < lhs.cols(); ++j) {
      Rational d = lhs(i, j) - rhs(i, j);
      if (!is_zero(d)) out.entries.push_back({k, i, j, std::move(d)});
    }
}

}  // namespace detail

/// Residual of the symmetry condition w·(1⊗x) = (x⊗1)·w for every basis element x = x_k.
inline SymmetryResidual check_symmetry(const RingStructure& ring, SignMode mode, const TensorClass& w) {
  SymmetryResidual residual;
  const RingElement one = unit_element(ring);
  for (std::size_t k = 0; k < ring.size(); ++k) {
    const RingElement x = basis_element(ring, k);
    const TensorClass lhs = tensor_multiply(ring, ring, mode, w, tensor_of(ring, ring, one, x));
    const TensorClass rhs = tensor_multiply(ring, ring, mode, tensor_of(ring, ring, x, one), w);
    detail::collect_residual(k, lhs.mu, rhs.mu, residual);
  }
  return residual;
}

namespace detail {

/// Linear system whose kernel is the space of symmetric classes. Column (a, b) holds
/// the residual of the elementary tensor x_a ⊗ x_b, so signs follow `mode` exactly as
/// check_symmetry applies them.
inline Matrix symmetry_system(const RingStructure& ring, SignMode mode) {
  const std::size_t n = ring.size();
  const GradedBasis& b = ring.basis();
  Matrix system(n * n * n, n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = 0; c < n; ++c) {
      TensorClass e = TensorClass::zero(b, b);
      e.mu(a, c) = 1;
      for (const auto& r : check_symmetry(ring, mode, e).entries) system((r.k * n + r.i) * n + r.j, a * n + c) = r.value;
    }
  return system;
}

}  // namespace detail

/// Echelon-normalized basis of all symmetric classes in H*(M)⊗H*(M).
inline std::vector<TensorClass> solve_symmetric_space(const RingStructure& ring, SignMode mode) {
  std::vector<TensorClass> basis;
  for (const auto& v : nullspace(detail::symmetry_system(ring, mode)))
    basis.push_back(detail::unflatten(ring.basis(), ring.basis(), v));
  return basis;
}

/// Symmetric classes with mu(top, j) = mu(j, top) = δ_{j0}: one particular solution and the
/// directions along which it is free. nullopt when no such class exists.
struct NormalizedSolutions {
  TensorClass particular;
  std::vector<TensorClass> directions;

  bool unique() const noexcept { return directions.empty(); }
};

inline std::optional<NormalizedSolutions> normalized_symmetric_solutions(const RingStructure& ring, SignMode mode) {
  const std::size_t n = ring.size();
  const std::size_t top = ring.basis().top();
  const Matrix system = detail::symmetry_system(ring, mode);
  Matrix augmented(system.rows() + 2 * n, n * n);
  Vector rhs(augmented.rows());
  for (std::size_t r = 0; r < system.rows(); ++r)
    for (std::size_t c = 0; c < n * n; ++c) augmented(r, c) = system(r, c);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t row = system.rows() + 2 * j;
    augmented(row, top * n + j) = 1;
    augmented(row + 1, j * n + top) = 1;
    if (j == 0) rhs[row] = rhs[row + 1] = 1;
  }
  const auto solved = solve(augmented, rhs);
  if (!solved) return std::nullopt;
  NormalizedSolutions out{detail::unflatten(ring.basis(), ring.basis(), solved->particular), {}};
  for (const auto& v : solved->kernel) out.directions.push_back(detail::unflatten(ring.basis(), ring.basis(), v));
  return out;
}

/// The symmetric class.
///
/// literal: mu is the inverse of the pairing matrix.
/// graded:  the unique symmetric solution with mu(top, j) = mu(j, top) = δ_{j0}, found by
///          exact solving of the sign-aware system.
inline TensorClass diagonal_class(const RingStructure& ring, SignMode mode) {
  Matrix mu = pairing_inverse(ring);
  if (mode == SignMode::literal) return TensorClass(ring.basis(), ring.basis(), std::move(mu));
  auto solutions = normalized_symmetric_solutions(ring, mode);
  if (!solutions) throw NoSolution();
  if (!solutions->unique()) throw NonUniqueSolution();
  return std::move(solutions->particular);
}

/// Entries of w violating mu(top, j) = mu(j, top) = δ_{j0}, as (row, col) pairs.
inline std::vector<std::pair<std::size_t, std::size_t>> normalization_violations(const RingStructure& ring,
                                                                                  const TensorClass& w) {
  const std::size_t top = ring.basis().top();
  std::vector<std::pair<std::size_t, std::size_t>> bad;
  for (std::size_t j = 0; j < ring.size(); ++j) {
    const Rational expected = j == 0 ? 1 : 0;
    if (w.mu(top, j) != expected) bad.emplace_back(top, j);
    if (j != top && w.mu(j, top) != expected) bad.emplace_back(j, top);
  }
  return bad;
}

inline bool in_symmetric_span(const std::vector<TensorClass>& space, const TensorClass& w) {
  std::vector<Vector> basis;
  for (const auto& s : space) basis.push_back(s.flatten());
  return in_span(basis, w.flatten());
}

struct FamilyMember {
  TensorClass value;
  /// value == w·(1⊗xy)
  bool matches_closed_form;
  bool symmetric;
};

/// (x⊗1)·w·(1⊗y), with its closed form and symmetry checked.
inline FamilyMember symmetric_family(const RingStructure& ring, SignMode mode, const TensorClass& w,
                                     const RingElement& x, const RingElement& y) {
  const RingElement one = unit_element(ring);
  TensorClass value = tensor_multiply(ring, ring, mode,
                                      tensor_multiply(ring, ring, mode, tensor_of(ring, ring, x, one), w),
                                      tensor_of(ring, ring, one, y));
  const TensorClass closed = tensor_multiply(ring, ring, mode, w, tensor_of(ring, ring, one, multiply(ring, x, y)));
  const bool matches = value == closed;
  const bool symmetric = check_symmetry(ring, mode, value).empty();
  return {std::move(value), matches, symmetric};
}

namespace detail {

inline std::string product_label(const GradedBasis& a, std::size_t i, const GradedBasis& b, std::size_t j) {
  if (i == 0 && j == 0) return a.label(0);
  return a.label(i) + "×" + b.label(j);
}

}  // namespace detail

/// Ring of A×B on the basis (i, j) -> i * |B| + j, with
/// (a_i⊗b_j)(a_k⊗b_l) = sign(|b_j|, |a_k|) (a_i a_k)⊗(b_j b_l).
inline RingStructure kunneth_product(const RingStructure& a, const RingStructure& b, SignMode mode) {
  const auto& ab = a.basis();
  const auto& bb = b.basis();
  const std::size_t nb = bb.size();
  std::vector<std::string> labels;
  std::vector<int> degrees;
  for (std::size_t i = 0; i < ab.size(); ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      labels.push_back(detail::product_label(ab, i, bb, j));
      degrees.push_back(ab.degree(i) + bb.degree(j));
    }
  std::optional<std::size_t> top;
  if (ab.top_index() && bb.top_index()) top = *ab.top_index() * nb + *bb.top_index();
  GradedBasis basis(std::move(labels), std::move(degrees), 0, top, ab.formal_dimension() + bb.formal_dimension());

  StructureTensor lambda;
  for (const auto& [ka, va] : a.lambda())
    for (const auto& [kb, vb] : b.lambda()) {
      const auto [i, k, p] = ka;
      const auto [j, l, q] = kb;
      const int sign = koszul_sign(mode, bb.degree(j), ab.degree(k));
      lambda[{i * nb + j, k * nb + l, p * nb + q}] = sign * va * vb;
    }
  return RingStructure(std::move(basis), std::move(lambda));
}

}  // namespace pdalg
