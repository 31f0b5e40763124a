#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pdalg/diagonal.hpp"
#include "pdalg/errors.hpp"
#include "pdalg/graded_ring.hpp"
#include "pdalg/matrix.hpp"

namespace pdalg {

/// H*(M,∂M) as a module over H*(M): y_i ∧ x_j = lambda^k_ij x_k.
///
/// The ring's own structure tensor plays the role of nu (y_i y_k = nu^s_ik y_s).
/// Orientation convention: relative classes w have rows over the module basis and
/// columns over the ring basis; the relative pairing matrix has rows over the ring
/// basis and columns over the module basis.
class ModulePair {
 public:
  ModulePair(RingStructure ring, GradedBasis module_basis, StructureTensor action)
      : ring_(std::move(ring)), module_(std::move(module_basis)), action_(detail::drop_zeros(std::move(action))) {
    if (!module_.top_index()) throw InvalidBasis("module basis needs a top class");
    if (module_.formal_dimension() != ring_.basis().formal_dimension())
      throw InvalidBasis("ring and module disagree on the formal dimension");
    products_ = detail::index_products(action_, ring_.size(), module_.size(), module_.size());
  }

  const RingStructure& ring() const noexcept { return ring_; }
  const GradedBasis& module_basis() const noexcept { return module_; }
  const StructureTensor& action() const noexcept { return action_; }
  int formal_dimension() const noexcept { return module_.formal_dimension(); }

  Rational action_coefficient(std::size_t i, std::size_t j, std::size_t k) const {
    const auto it = action_.find({i, j, k});
    return it == action_.end() ? Rational(0) : it->second;
  }

  /// Nonzero terms of y_i ∧ x_j.
  const std::vector<Term>& act(std::size_t i, std::size_t j) const { return products_[i * module_.size() + j]; }

  friend bool operator==(const ModulePair& a, const ModulePair& b) {
    return a.ring_ == b.ring_ && a.module_ == b.module_ && a.action_ == b.action_;
  }

 private:
  RingStructure ring_;
  GradedBasis module_;
  StructureTensor action_;
  std::vector<std::vector<Term>> products_;
};

inline ValidationReport validate_module(const ModulePair& mp, const ValidationOptions& options = {}) {
  ValidationReport report = validate(mp.ring(), options);
  for (auto& v : report.violations) v.detail = "ring: " + v.detail;

  const auto& rb = mp.ring().basis();
  const auto& mb = mp.module_basis();
  const std::size_t nr = rb.size();
  const std::size_t nm = mb.size();

  for (const auto& [key, value] : mp.action()) {
    const auto [i, j, k] = key;
    if (mb.degree(k) != rb.degree(i) + mb.degree(j))
      report.violations.push_back({Axiom::grading, {i, j, k},
                                   "action coefficient " + to_string(value) + " of y_" + std::to_string(i) +
                                       " ∧ x_" + std::to_string(j) + " on x_" + std::to_string(k) +
                                       " breaks the grading"});
  }

  for (std::size_t j = 0; j < nm; ++j)
    for (std::size_t k = 0; k < nm; ++k) {
      const Rational expected = j == k ? 1 : 0;
      if (mp.action_coefficient(0, j, k) != expected)
        report.violations.push_back({Axiom::unit_action, {j, k}, "1 ∧ x_" + std::to_string(j) + " has coefficient " +
                                                                    to_string(mp.action_coefficient(0, j, k)) +
                                                                    " on x_" + std::to_string(k)});
    }

  // (y_i y_j) ∧ x_k against y_i ∧ (y_j ∧ x_k).
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nr; ++j)
      for (std::size_t k = 0; k < nm; ++k) {
        Vector left(nm);
        Vector right(nm);
        for (const auto& ij : mp.ring().product(i, j))
          for (const auto& t : mp.act(ij.index, k)) left[t.index] += ij.coefficient * t.coefficient;
        for (const auto& jk : mp.act(j, k))
          for (const auto& t : mp.act(i, jk.index)) right[t.index] += jk.coefficient * t.coefficient;
        for (std::size_t s = 0; s < nm; ++s)
          if (left[s] != right[s])
            report.violations.push_back({Axiom::module_associativity, {i, j, k, s},
                                         "(y_i y_j) ∧ x_k = " + to_string(left[s]) + " but y_i ∧ (y_j ∧ x_k) = " +
                                             to_string(right[s]) + " on x_" + std::to_string(s)});
      }
  return report;
}

/// Entry (i, j) is the top-class coefficient of y_i ∧ x_j.
inline Matrix relative_pairing_matrix(const ModulePair& mp) {
  const std::size_t top = mp.module_basis().top();
  Matrix m(mp.ring().size(), mp.module_basis().size());
  for (const auto& [key, value] : mp.action())
    if (key[2] == top) m(key[0], key[1]) = value;
  return m;
}

inline bool check_relative_duality(const ModulePair& mp) {
  const Matrix p = relative_pairing_matrix(mp);
  return p.square() && rank(p) == p.rows();
}

/// (y_k⊗1)·w, with the module action on the left factor.
inline TensorClass act_left(const ModulePair& mp, SignMode mode, std::size_t k, const TensorClass& w) {
  const auto& mb = mp.module_basis();
  Matrix out(w.mu.rows(), w.mu.cols());
  for (std::size_t i = 0; i < w.mu.rows(); ++i)
    for (std::size_t j = 0; j < w.mu.cols(); ++j) {
      if (is_zero(w.mu(i, j))) continue;
      const Rational c = koszul_sign(mode, 0, mb.degree(i)) * w.mu(i, j);
      for (const auto& t : mp.act(k, i)) out(t.index, j) += c * t.coefficient;
    }
  return TensorClass(w.left, w.right, std::move(out));
}

/// w·(1⊗y_k), with the ring product on the right factor.
inline TensorClass act_right(const ModulePair& mp, SignMode mode, const TensorClass& w, std::size_t k) {
  const auto& rb = mp.ring().basis();
  Matrix out(w.mu.rows(), w.mu.cols());
  for (std::size_t i = 0; i < w.mu.rows(); ++i)
    for (std::size_t j = 0; j < w.mu.cols(); ++j) {
      if (is_zero(w.mu(i, j))) continue;
      const Rational c = koszul_sign(mode, rb.degree(j), 0) * w.mu(i, j);
      for (const auto& t : mp.ring().product(j, k)) out(i, t.index) += c * t.coefficient;
    }
  return TensorClass(w.left, w.right, std::move(out));
}

/// Residual of w·(1⊗y) = (y⊗1)·w for every ring basis element y = y_k; entries are
/// indexed (k, i, s) with i over the module basis and s over the ring basis.
inline SymmetryResidual check_relative_symmetry(const ModulePair& mp, SignMode mode, const TensorClass& w) {
  if (w.left != mp.module_basis() || w.right != mp.ring().basis())
    throw DimensionMismatch("relative class is not over module ⊗ ring");
  SymmetryResidual residual;
  for (std::size_t k = 0; k < mp.ring().size(); ++k)
    detail::collect_residual(k, act_right(mp, mode, w, k).mu, act_left(mp, mode, k, w).mu, residual);
  return residual;
}

namespace detail {

inline Matrix relative_symmetry_system(const ModulePair& mp, SignMode mode) {
  const std::size_t nm = mp.module_basis().size();
  const std::size_t nr = mp.ring().size();
  Matrix system(nr * nm * nr, nm * nr);
  for (std::size_t a = 0; a < nm; ++a)
    for (std::size_t b = 0; b < nr; ++b) {
      TensorClass e = TensorClass::zero(mp.module_basis(), mp.ring().basis());
      e.mu(a, b) = 1;
      for (const auto& r : check_relative_symmetry(mp, mode, e).entries)
        system((r.k * nm + r.i) * nr + r.j, a * nr + b) = r.value;
    }
  return system;
}

}  // namespace detail

inline std::vector<TensorClass> solve_relative_symmetric_space(const ModulePair& mp, SignMode mode) {
  std::vector<TensorClass> basis;
  for (const auto& v : nullspace(detail::relative_symmetry_system(mp, mode)))
    basis.push_back(detail::unflatten(mp.module_basis(), mp.ring().basis(), v));
  return basis;
}

/// Symmetric relative classes with mu(top, j) = δ_{j0}.
inline std::optional<NormalizedSolutions> normalized_relative_solutions(const ModulePair& mp, SignMode mode) {
  const std::size_t nm = mp.module_basis().size();
  const std::size_t nr = mp.ring().size();
  const std::size_t top = mp.module_basis().top();
  const Matrix system = detail::relative_symmetry_system(mp, mode);
  Matrix augmented(system.rows() + nr, nm * nr);
  Vector rhs(augmented.rows());
  for (std::size_t r = 0; r < system.rows(); ++r)
    for (std::size_t c = 0; c < nm * nr; ++c) augmented(r, c) = system(r, c);
  for (std::size_t j = 0; j < nr; ++j) {
    augmented(system.rows() + j, top * nr + j) = 1;
    if (j == 0) rhs[system.rows() + j] = 1;
  }
  const auto solved = solve(augmented, rhs);
  if (!solved) return std::nullopt;
  NormalizedSolutions out{detail::unflatten(mp.module_basis(), mp.ring().basis(), solved->particular), {}};
  for (const auto& v : solved->kernel)
    out.directions.push_back(detail::unflatten(mp.module_basis(), mp.ring().basis(), v));
  return out;
}

inline Matrix relative_pairing_inverse(const ModulePair& mp) {
  const Matrix p = relative_pairing_matrix(mp);
  if (!p.square()) throw SingularPairing();
  try {
    return invert(p);
  } catch (const SingularMatrix&) {
    throw SingularPairing();
  }
}

/// literal: mu is the inverse of the relative pairing matrix.
/// graded:  the unique symmetric solution with mu(top, j) = δ_{j0}.
inline TensorClass relative_diagonal_class(const ModulePair& mp, SignMode mode) {
  Matrix mu = relative_pairing_inverse(mp);
  if (mode == SignMode::literal) return TensorClass(mp.module_basis(), mp.ring().basis(), std::move(mu));
  auto solutions = normalized_relative_solutions(mp, mode);
  if (!solutions) throw NoSolution();
  if (!solutions->unique()) throw NonUniqueSolution();
  return std::move(solutions->particular);
}

/// Entries of w violating mu(top, j) = δ_{j0}.
inline std::vector<std::pair<std::size_t, std::size_t>> relative_normalization_violations(const ModulePair& mp,
                                                                                           const TensorClass& w) {
  const std::size_t top = mp.module_basis().top();
  std::vector<std::pair<std::size_t, std::size_t>> bad;
  for (std::size_t j = 0; j < mp.ring().size(); ++j)
    if (w.mu(top, j) != (j == 0 ? Rational(1) : Rational(0))) bad.emplace_back(top, j);
  return bad;
}

/// The closed case as a module pair: module = ring (without a unit), action = multiplication.
inline ModulePair closed_as_pair(const RingStructure& ring) {
  const auto& b = ring.basis();
  return ModulePair(ring, GradedBasis(b.labels(), b.degrees(), std::nullopt, b.top(), b.formal_dimension()),
                    ring.lambda());
}

}  // namespace pdalg
