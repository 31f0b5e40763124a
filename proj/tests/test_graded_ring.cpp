#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "pdalg/catalog.hpp"
#include "pdalg/graded_ring.hpp"

using namespace pdalg;

namespace {

RingStructure with_entry(const RingStructure& ring, std::size_t i, std::size_t j, std::size_t k, Rational v) {
  StructureTensor t = ring.lambda();
  t[{i, j, k}] = std::move(v);
  return RingStructure(ring.basis(), std::move(t));
}

RingElement element(const RingStructure& ring, std::initializer_list<int> coefficients) {
  RingElement e{Vector(coefficients.begin(), coefficients.end())};
  EXPECT_EQ(e.coefficients.size(), ring.size());
  return e;
}

}  // namespace

TEST(GradedBasis, Invariants) {
  EXPECT_NO_THROW(GradedBasis({"1", "x"}, {0, 2}, 0, 1, 2));
  EXPECT_THROW(GradedBasis({"1", "x"}, {1, 2}, 0, 1, 2), InvalidBasis);
  EXPECT_THROW(GradedBasis({"1", "x"}, {0, 2}, 0, 1, 3), InvalidBasis);
  EXPECT_THROW(GradedBasis({"1", "1"}, {0, 2}, 0, 1, 2), InvalidBasis);
  EXPECT_THROW(GradedBasis({"1"}, {0, 2}, 0, 0, 0), InvalidBasis);
  EXPECT_THROW(GradedBasis({"1", "x"}, {0, 2}, 0, 5, 2), InvalidBasis);
  EXPECT_THROW(RingStructure(GradedBasis({"x", "1"}, {2, 0}, 1, 0, 2), {}), InvalidBasis);
}

TEST(Validate, ComplexProjectivePlaneIsValid) {
  const auto report = validate(catalog::complex_projective(2));
  EXPECT_TRUE(report.ok());
}

TEST(Validate, RescaledSquareIsStillARing) {
  // h·h = 2h^2 keeps every axiom; only the pairing normalization changes.
  const auto ring = with_entry(catalog::complex_projective(2), 1, 1, 2, 2);
  EXPECT_TRUE(validate(ring).ok());
  EXPECT_EQ(pairing_matrix(ring), (Matrix{{0, 0, 1}, {0, 2, 0}, {1, 0, 0}}));
}

TEST(Validate, MissingUnitCoefficientIsReported) {
  const auto ring = with_entry(catalog::complex_projective(2), 0, 0, 0, 0);
  const auto report = validate(ring);
  ASSERT_FALSE(report.ok());
  ASSERT_TRUE(report.has(Axiom::unit));
  const auto& v = report.violations.front();
  EXPECT_EQ(v.axiom, Axiom::unit);
  EXPECT_EQ(v.indices, (std::vector<std::size_t>{0, 0}));
}

TEST(Validate, GradingViolationCarriesIndexTuple) {
  const auto ring = with_entry(catalog::complex_projective(2), 1, 1, 1, 1);
  const auto report = validate(ring);
  ASSERT_TRUE(report.has(Axiom::grading));
  EXPECT_EQ(report.violations.front().axiom, Axiom::grading);
  EXPECT_EQ(report.violations.front().indices, (std::vector<std::size_t>{1, 1, 1}));
}

TEST(Validate, GradedCommutativityAndItsOptOut) {
  // S^1 x S^1 built without Koszul signs: a·b = b·a for odd a, b.
  const auto ring = kunneth_product(catalog::sphere(1), catalog::sphere(1), SignMode::literal);
  const auto report = validate(ring);
  EXPECT_TRUE(report.has(Axiom::graded_commutativity));
  EXPECT_FALSE(report.has(Axiom::associativity));
  EXPECT_TRUE(validate(ring, {.allow_noncommutative = true}).ok());
}

TEST(Validate, BrokenAssociativityIsReported) {
  const auto ring = with_entry(catalog::complex_projective(3), 1, 2, 3, 2);
  const auto report = validate(ring, {.allow_noncommutative = true});
  EXPECT_TRUE(report.has(Axiom::associativity));
}

TEST(Multiply, Examples) {
  const auto cp2 = catalog::complex_projective(2);
  EXPECT_EQ(multiply(cp2, basis_element(cp2, 1), basis_element(cp2, 1)), basis_element(cp2, 2));

  const auto a = element(cp2, {3, -1, 2});
  EXPECT_EQ(multiply(cp2, unit_element(cp2), a), a);
  EXPECT_EQ(multiply(cp2, a, unit_element(cp2)), a);

  const auto s2 = catalog::sphere(2);
  EXPECT_EQ(multiply(s2, basis_element(s2, 1), basis_element(s2, 1)), element(s2, {0, 0}));

  EXPECT_THROW(multiply(s2, RingElement{{1}}, basis_element(s2, 0)), DimensionMismatch);
}

TEST(PairingMatrix, Examples) {
  EXPECT_EQ(pairing_matrix(catalog::sphere(2)), (Matrix{{0, 1}, {1, 0}}));
  EXPECT_EQ(pairing_matrix(catalog::complex_projective(2)), (Matrix{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}));
  EXPECT_EQ(pairing_matrix(catalog::point()), (Matrix{{1}}));
  const RingStructure no_top(GradedBasis({"1"}, {0}, 0, std::nullopt, 3), {{{0, 0, 0}, 1}});
  EXPECT_THROW(pairing_matrix(no_top), MissingTopClass);
}

TEST(PoincareDuality, Examples) {
  EXPECT_TRUE(check_poincare_duality(catalog::sphere(2)));
  EXPECT_EQ(oracle::determinant(pairing_matrix(catalog::sphere(2))), -1);
  EXPECT_TRUE(check_poincare_duality(catalog::point()));

  // 1, a, t with a·a = 0 and a·t = 0: the row of a pairs to nothing.
  const RingStructure wedge(GradedBasis({"1", "a", "t"}, {0, 1, 2}, 0, 2, 2),
                            {{{0, 0, 0}, 1}, {{0, 1, 1}, 1}, {{1, 0, 1}, 1}, {{0, 2, 2}, 1}, {{2, 0, 2}, 1}});
  EXPECT_TRUE(validate(wedge).ok());
  EXPECT_FALSE(check_poincare_duality(wedge));
}

TEST(FrobeniusChain, Examples) {
  EXPECT_TRUE(check_frobenius_chain(catalog::complex_projective(2)));
  for (int n = 1; n <= 5; ++n) EXPECT_TRUE(check_frobenius_chain(catalog::sphere(n)));

  // h·h^2 = 2h^3 but h^2·h = h^3: <(h h) h> = 1 while <h (h h)> = 2.
  const auto broken = with_entry(catalog::complex_projective(3), 1, 2, 3, 2);
  EXPECT_FALSE(check_frobenius_chain(broken));
}

TEST(PairingMatrix, UnitRowAndColumnIndicateTop) {
  for (const auto& id : catalog::standard_rings()) {
    const auto ring = std::get<RingStructure>(catalog::resolve_payload(id));
    const Matrix p = pairing_matrix(ring);
    const std::size_t top = ring.basis().top();
    for (std::size_t j = 0; j < ring.size(); ++j) {
      EXPECT_EQ(p(0, j), j == top ? 1 : 0) << id;
      EXPECT_EQ(p(j, 0), j == top ? 1 : 0) << id;
    }
  }
}

TEST(Properties, RandomBasisChangesStayValidDualAndFrobenius) {
  std::mt19937 rng(42);
  const auto ids = catalog::standard_rings();
  for (int t = 0; t < 60; ++t) {
    const auto& id = ids[t % ids.size()];
    const auto ring = oracle::random_basis_change(std::get<RingStructure>(catalog::resolve_payload(id)), rng);
    ASSERT_TRUE(validate(ring).ok()) << id;
    ASSERT_TRUE(check_poincare_duality(ring)) << id;
    EXPECT_TRUE(check_frobenius_chain(ring)) << id;
  }
}

TEST(Properties, MultiplicationIsAssociativeOnRandomElements) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (const auto& id : catalog::standard_rings()) {
    const auto ring = std::get<RingStructure>(catalog::resolve_payload(id));
    ASSERT_TRUE(validate(ring).ok());
    for (int t = 0; t < 10; ++t) {
      RingElement a{Vector(ring.size())}, b{Vector(ring.size())}, c{Vector(ring.size())};
      for (std::size_t i = 0; i < ring.size(); ++i) {
        a.coefficients[i] = entry(rng);
        b.coefficients[i] = entry(rng);
        c.coefficients[i] = entry(rng);
      }
      EXPECT_EQ(multiply(ring, multiply(ring, a, b), c), multiply(ring, a, multiply(ring, b, c))) << id;
    }
  }
}
