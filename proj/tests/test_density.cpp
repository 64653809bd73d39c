#include <cmath>

#include <gtest/gtest.h>

#include "densem/density.hpp"
#include "support.hpp"

namespace densem {
namespace {

DensityMatrix basis(std::size_t d, std::size_t i) {
  std::vector<double> v(d, 0.0);
  v[i] = 1.0;
  return pure(v);
}

TEST(DensityMatrix, Validation) {
  EXPECT_THROW(DensityMatrix(SymMatrix::diagonal({1.0, -0.1})), NotPsdError);
  EXPECT_THROW(DensityMatrix(SymMatrix(0)), ShapeError);
  EXPECT_TRUE(DensityMatrix(SymMatrix(2)).is_zero());
  EXPECT_THROW(pure({0.0, 0.0}), DegenerateInputError);
  EXPECT_THROW(normalize(DensityMatrix(SymMatrix(2))), DegenerateInputError);
}

TEST(DensityMatrix, Mixture) {
  const DensityMatrix m = mixture({0.5, 0.5}, {basis(2, 0), basis(2, 1)});
  EXPECT_EQ(m.op(), SymMatrix::diagonal({0.5, 0.5}));
  EXPECT_THROW(mixture({1.0}, {basis(2, 0), basis(2, 1)}), ShapeError);
  EXPECT_THROW(mixture({1.0, 1.0}, {basis(2, 0), basis(3, 1)}), ShapeError);
  EXPECT_THROW(mixture({1.0, 0.0}, {basis(2, 0), basis(2, 1)}), std::invalid_argument);
}

TEST(ExtendedReal, Clamping) {
  EXPECT_EQ(ExtendedReal::finite(-1e-12).to_double(), 0.0);
  EXPECT_THROW(ExtendedReal::finite(-1e-3), NumericFailure);
  EXPECT_TRUE(std::isinf(ExtendedReal::infinite().to_double()));
}

TEST(Fidelity, Examples) {
  const DensityMatrix rho{SymMatrix{{0.75, 0.25}, {0.25, 0.25}}};
  EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-12);
  EXPECT_NEAR(fidelity(basis(2, 0), basis(2, 1)), 0.0, 1e-15);
  EXPECT_NEAR(fidelity(basis(2, 0), rho), std::sqrt(0.75), 1e-12);
  EXPECT_NEAR(fidelity(basis(2, 1), rho), 0.5, 1e-12);
  EXPECT_THROW(fidelity(basis(2, 0), basis(3, 0)), ShapeError);
}

TEST(Fidelity, NormalizesInternally) {
  const DensityMatrix a{SymMatrix::diagonal({2.0, 5.0, 0.0})}, b{SymMatrix::diagonal({5.0, 2.0, 3.0})};
  EXPECT_NEAR(fidelity(a, b), 2.0 * std::sqrt(1.0 / 7.0), 1e-12);
  EXPECT_NEAR(fidelity(normalize(a), normalize(b)), fidelity(a, b), 1e-14);
}

TEST(RelativeEntropy, LionsMammals) {
  const DensityMatrix lions = basis(2, 0);
  const DensityMatrix mammals = mixture({0.5, 0.5}, {basis(2, 0), basis(2, 1)});
  EXPECT_NEAR(relative_entropy(lions, mammals).to_double(), 1.0, 1e-12);
  EXPECT_TRUE(relative_entropy(mammals, lions).is_infinite());
  EXPECT_NEAR(representativeness(lions, mammals), 0.5, 1e-12);
  EXPECT_EQ(representativeness(mammals, lions), 0.0);
  EXPECT_NEAR(relative_entropy(lions, mammals, {{}, LogBase::kE}).to_double(), std::log(2.0), 1e-12);
}

TEST(RelativeEntropy, MammalsAgainOracle) {
  // Closed-form 2x2 spectral oracle values, frozen.
  const DensityMatrix rho{SymMatrix{{0.75, 0.25}, {0.25, 0.25}}};
  EXPECT_NEAR(relative_entropy(basis(2, 0), rho).to_double(), 0.600876036692856, 1e-9);
  EXPECT_NEAR(relative_entropy(basis(2, 1), rho).to_double(), 2.399123963307144, 1e-9);
  EXPECT_NEAR(relative_entropy(basis(2, 0), rho, {{}, LogBase::kE}).to_double(), 0.416495530699687, 1e-9);
  EXPECT_NEAR(von_neumann_entropy(rho), 0.600876036692856, 1e-9);
}

TEST(Entailment, SupportOrder) {
  const DensityMatrix lions = basis(2, 0);
  const DensityMatrix mammals = mixture({0.5, 0.5}, {basis(2, 0), basis(2, 1)});
  EXPECT_TRUE(supp_leq(lions, mammals));
  EXPECT_FALSE(supp_leq(mammals, lions));
  EXPECT_TRUE(supp_leq(mammals, mammals));
  EXPECT_TRUE(precedes(lions, mammals));
  EXPECT_FALSE(equivalent(lions, mammals));
}

TEST(Entailment, Classify) {
  const DensityMatrix a{SymMatrix{{0.75, 0.25}, {0.25, 0.25}}};
  EXPECT_EQ(classify(a, a).relation, Relation::kEquivalent);
  EXPECT_EQ(classify(basis(2, 0), basis(2, 1)).relation, Relation::kIncomparable);
  const DensityMatrix lions = basis(2, 0), mammals = mixture({0.5, 0.5}, {basis(2, 0), basis(2, 1)});
  EXPECT_EQ(classify(lions, mammals).relation, Relation::kHyponym);
  EXPECT_EQ(classify(mammals, lions).relation, Relation::kHypernym);
  // A threshold above R = 0.5 drops the forward direction.
  EXPECT_EQ(classify(lions, mammals, 0.6).relation, Relation::kIncomparable);
  EXPECT_THROW(classify(lions, mammals, 1.0), std::invalid_argument);
  EXPECT_THROW(classify(lions, mammals, -0.1), std::invalid_argument);
  EXPECT_EQ(to_string(Relation::kHyponym), "HYPONYM");
}

TEST(Entailment, NormalizationInvariance) {
  testing::Rng rng(testing::kSeed + 1);
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = testing::uniform(rng, 1, 4);
    const DensityMatrix rho = testing::random_psd(rng, d, testing::uniform(rng, 1, d));
    const DensityMatrix sigma = testing::random_psd(rng, d, testing::uniform(rng, 1, d));
    const auto v = classify(rho, sigma, 0.1);
    const auto w = classify(DensityMatrix(3.0 * rho.op()), DensityMatrix(0.2 * sigma.op()), 0.1);
    EXPECT_EQ(v.relation, w.relation);
    EXPECT_NEAR(v.forward, w.forward, 1e-9);
  }
}

TEST(Entailment, PreorderOnRandomTriples) {
  testing::Rng rng(testing::kSeed + 2);
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = testing::uniform(rng, 1, 4);
    const DensityMatrix a = testing::random_psd(rng, d, testing::uniform(rng, 1, d));
    const DensityMatrix b = testing::dominating(rng, a);
    const DensityMatrix c = testing::dominating(rng, b);
    EXPECT_TRUE(precedes(a, a));
    EXPECT_TRUE(precedes(a, b));
    EXPECT_TRUE(precedes(b, c));
    EXPECT_TRUE(precedes(a, c));
  }
}

TEST(Fidelity, OneImpliesEqual) {
  testing::Rng rng(testing::kSeed + 3);
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = testing::uniform(rng, 1, 4);
    const DensityMatrix rho = normalize(testing::random_full_rank(rng, d));
    const DensityMatrix near(rho.op() + 1e-3 * testing::random_psd_op(rng, d, 1));
    EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-9);
    if (fidelity(rho, near) >= 1.0 - 1e-15) {
      EXPECT_LE(max_abs_diff(rho.op(), normalize(near).op()), 1e-6);
    }
  }
}

}  // namespace
}  // namespace densem
