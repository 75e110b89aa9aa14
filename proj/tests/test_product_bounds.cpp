#include <gtest/gtest.h>

#include <cmath>

#include "numrad/error.hpp"
#include "numrad/product_bounds.hpp"
#include "test_util.hpp"

using namespace numrad;

namespace {

void expect_holds(const BoundRecord& r, double tol = 1e-8) {
  EXPECT_LE(r.lhs, r.rhs + tol * (1.0 + std::abs(r.rhs))) << r.bound_id << " " << r.notes;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::ParseError;
}

struct Pair {
  ComplexMatrix a, b;
};

// A random, B = c0 I + c1 |A| + c2 |A|² with real coefficients, so |A|B = B^*|A|.
Pair intertwined(SplitMix64& rng, std::size_t n) {
  const ComplexMatrix a = testutil::random_square(rng, n);
  const ComplexMatrix m = absolute_value(a);
  const ComplexMatrix b = rng.normal() * ComplexMatrix::identity(n) + rng.normal() * m + 0.3 * rng.normal() * (m * m);
  return {a, b};
}

}  // namespace

TEST(Intertwining, Detection) {
  SplitMix64 rng(61);
  const auto [a, b] = intertwined(rng, 4);
  EXPECT_TRUE(check_intertwining(a, b));
  EXPECT_FALSE(check_intertwining(ComplexMatrix{{1, 0}, {0, 2}}, ComplexMatrix{{0, 1}, {0, 0}}));
}

TEST(HolderPair, Validation) {
  EXPECT_NO_THROW(HolderPair(2.0, 2.0));
  EXPECT_NEAR(HolderPair(3.0, 1.5).gamma(), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(code_of([] { HolderPair(1.5, 3.0); }), ErrorCode::InvalidParameters);
  EXPECT_EQ(code_of([] { HolderPair(2.0, 2.5); }), ErrorCode::InvalidParameters);
}

TEST(ProductTheorem, HoldsAndOrdersOnIntertwinedPairs) {
  SplitMix64 rng(62);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 5));
    const auto [a, b] = intertwined(rng, n);
    const double s = rng.uniform();
    const auto [first, second] = thm1_bounds({a, b, PowerFunction(s), PowerFunction(1.0 - s), 1.0, std::nullopt});
    EXPECT_TRUE(first.preconditions_met);
    expect_holds(first);
    expect_holds(second);
    EXPECT_DOUBLE_EQ(first.rhs, second.lhs);
  }
}

TEST(ProductTheorem, IdentityFactorGivesKnownValues) {
  // A = I, B = I: w(AB) = 1, first = ½·1·w(2I) = 1, second = ⅛·2·(1+1+0+... ) = 1.
  const ComplexMatrix id = ComplexMatrix::identity(3);
  const auto [first, second] = thm1_bounds({id, id, PowerFunction(0.5), PowerFunction(0.5), 1.0, std::nullopt});
  EXPECT_NEAR(first.lhs, 1.0, 1e-9);
  EXPECT_NEAR(first.rhs, 1.0, 1e-9);
  EXPECT_NEAR(second.rhs, 1.0, 1e-9);
}

TEST(ProductTheorem, FlagsBrokenHypothesis) {
  const auto [first, second] = thm1_bounds({ComplexMatrix{{1, 0}, {0, 2}}, ComplexMatrix{{0, 1}, {0, 0}},
                                            PowerFunction(0.5), PowerFunction(0.5), 1.0, std::nullopt});
  EXPECT_FALSE(first.preconditions_met);
  EXPECT_FALSE(second.preconditions_met);
}

TEST(ProductTheorem, RejectsBadExponents) {
  const ComplexMatrix id = ComplexMatrix::identity(2);
  EXPECT_EQ(code_of([&] { thm1_bounds({id, id, PowerFunction(0.5), PowerFunction(0.7), 1.0, std::nullopt}); }),
            ErrorCode::InvalidExponent);
  EXPECT_EQ(code_of([&] { thm1_bounds({id, ComplexMatrix::identity(3), PowerFunction(0.5), PowerFunction(0.5), 1.0,
                                       std::nullopt}); }),
            ErrorCode::DimensionMismatch);
}

TEST(AlphaFamily, HalfExponentIsBelowSymmetricNormBound) {
  SplitMix64 rng(63);
  double largest_gap = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 5));
    const auto [a, b] = intertwined(rng, n);
    const auto [first, second] = cor1_alpha_bounds(a, b, 0.5);
    EXPECT_EQ(first.bound_id, "eq3.2");
    const BoundRecord sym = cor2_bound(a, b);
    expect_holds(sym);
    EXPECT_LE(second.rhs, sym.rhs + 1e-9 * (1.0 + sym.rhs));
    largest_gap = std::max(largest_gap, sym.rhs - second.rhs);
  }
  // The two bounds are distinct in general.
  EXPECT_GT(largest_gap, 1e-3);
}

TEST(AlphaFamily, RejectsAlphaOutsideUnitInterval) {
  const ComplexMatrix id = ComplexMatrix::identity(2);
  EXPECT_EQ(code_of([&] { cor1_alpha_bounds(id, id, 1.5); }), ErrorCode::InvalidParameters);
}

TEST(HolderBounds, HoldOnIntertwinedPairs) {
  SplitMix64 rng(64);
  const struct {
    double alpha, beta, p;
  } combos[] = {{2, 2, 1}, {2, 2, 2}, {3, 1.5, 2}, {4, 4.0 / 3.0, 3}};
  for (const auto& c : combos) {
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 5));
      const auto [a, b] = intertwined(rng, n);
      const double s = rng.uniform();
      const auto [r1, r2, r3] =
          thm2_bounds({a, b, PowerFunction(s), PowerFunction(1.0 - s), c.p, HolderPair(c.alpha, c.beta)});
      expect_holds(r1);
      expect_holds(r2);
      expect_holds(r3);
    }
  }
}

TEST(HolderBounds, ReduceToProductTheoremAtSquareExponents) {
  SplitMix64 rng(65);
  for (int trial = 0; trial < 20; ++trial) {
    const auto [a, b] = intertwined(rng, 4);
    const auto [t1, t1b] = thm1_bounds({a, b, PowerFunction(0.5), PowerFunction(0.5), 1.0, std::nullopt});
    const auto [r1, r2, r3] = thm2_bounds({a, b, PowerFunction(0.5), PowerFunction(0.5), 1.0, HolderPair(2, 2)});
    EXPECT_NEAR(r1.rhs, t1.rhs, 1e-9 * (1.0 + t1.rhs));
    EXPECT_NEAR(r1.lhs, t1.lhs, 1e-12 * (1.0 + t1.lhs));
  }
}

TEST(HolderBounds, RequireHolderPairAndExponentProduct) {
  const ComplexMatrix id = ComplexMatrix::identity(2);
  EXPECT_EQ(code_of([&] { thm2_bounds({id, id, PowerFunction(0.5), PowerFunction(0.5), 1.0, std::nullopt}); }),
            ErrorCode::InvalidParameters);
  EXPECT_EQ(code_of([&] { thm2_bounds({id, id, PowerFunction(0.5), PowerFunction(0.5), 1.0, HolderPair(3, 1.5)}); }),
            ErrorCode::InvalidExponent);
}

TEST(CommutingBound, HoldsOnCommutingHermitianPairs) {
  SplitMix64 rng(66);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 5));
    const ComplexMatrix a = testutil::random_hermitian(rng, n);
    const ComplexMatrix b = rng.normal() * ComplexMatrix::identity(n) + rng.normal() * a;
    const double s = rng.uniform();
    expect_holds(thm3_bound(a, b, PowerFunction(s), PowerFunction(1.0 - s), 1.0, HolderPair(2, 2)));
    expect_holds(thm3_bound(a, b, PowerFunction(s), PowerFunction(1.0 - s), 2.0, HolderPair(3, 1.5)));
  }
}

TEST(CommutingBound, NamesTheFailingHypothesis) {
  const ComplexMatrix a{{1, 0}, {0, 2}};
  const ComplexMatrix b{{0, 1}, {0, 0}};
  try {
    thm3_bound(a, b, PowerFunction(0.5), PowerFunction(0.5), 1.0, HolderPair(2, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PreconditionFailed);
    EXPECT_NE(std::string(e.what()).find("AB = BA"), std::string::npos);
  }
}

TEST(ContractionBound, SharpDiagonalProjection) {
  const ComplexMatrix p{{1, 0}, {0, 0}};
  const BoundRecord r = thm4_bound(p, p, 2.0);
  EXPECT_NEAR(r.lhs, 1.0, 1e-9);
  EXPECT_NEAR(r.rhs, 1.0, 1e-9);
}

TEST(ContractionBound, HalfIdentity) {
  const ComplexMatrix h = 0.5 * ComplexMatrix::identity(2);
  const BoundRecord r = thm4_bound(h, h, 2.0);
  EXPECT_NEAR(r.lhs, 1.0 / 256.0, 1e-12);
  EXPECT_NEAR(r.rhs, 1.0 / 16.0, 1e-12);
}

TEST(ContractionBound, HoldsAndIsSymmetric) {
  SplitMix64 rng(67);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 5));
    ComplexMatrix a = testutil::random_positive(rng, n), b = testutil::random_positive(rng, n);
    const double s = std::sqrt(rng.uniform(0.1, 1.0) / operator_norm(a * b));
    a = s * a;
    b = s * b;
    const double p = rng.uniform(2.0, 4.0);
    const BoundRecord ab = thm4_bound(a, b, p), ba = thm4_bound(b, a, p);
    expect_holds(ab);
    EXPECT_NEAR(ab.lhs, ba.lhs, 1e-8 * (1.0 + ab.lhs));
    EXPECT_NEAR(ab.rhs, ba.rhs, 1e-12 * (1.0 + ab.rhs));
  }
}

TEST(ContractionBound, RejectsLargeProduct) {
  const ComplexMatrix two = 2.0 * ComplexMatrix::identity(2);
  EXPECT_EQ(code_of([&] { thm4_bound(two, two, 2.0); }), ErrorCode::NotContraction);
  EXPECT_EQ(code_of([&] { thm4_bound(ComplexMatrix{{1, 0}, {0, -1}}, ComplexMatrix::identity(2), 2.0); }),
            ErrorCode::NotPositive);
  EXPECT_EQ(code_of([&] { thm4_bound(ComplexMatrix::identity(2), ComplexMatrix::identity(2), 1.5); }),
            ErrorCode::InvalidExponent);
}

TEST(BlockPositivity, IdentityBlocksWithLargeCorner) {
  const ComplexMatrix id = ComplexMatrix::identity(2);
  const BlockPositivity bp = block_positivity_check(id, id, 2.0 * id);
  EXPECT_FALSE(bp.positive);
  EXPECT_FALSE(bp.schwarz_all_samples);
  EXPECT_TRUE(bp.consistent());
  EXPECT_NEAR(bp.min_eigenvalue, -1.0, 1e-10);
  EXPECT_FALSE(block_positivity_record(bp).preconditions_met);
}

TEST(BlockPositivity, ContractiveCornerIsPositive) {
  SplitMix64 rng(68);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 4));
    const std::size_t m = static_cast<std::size_t>(rng.uniform_int(1, 4));
    const ComplexMatrix a = testutil::random_positive(rng, n), b = testutil::random_positive(rng, m);
    ComplexMatrix k = testutil::random_matrix(rng, m, n);
    k = (rng.uniform() / operator_norm(k)) * k;
    const ComplexMatrix c = positive_power(b, 0.5) * k * positive_power(a, 0.5);
    const BlockPositivity bp = block_positivity_check(a, b, c, 1234 + static_cast<std::uint64_t>(trial));
    EXPECT_TRUE(bp.positive);
    EXPECT_TRUE(bp.schwarz_all_samples);
    EXPECT_TRUE(holds(block_positivity_record(bp)));
  }
}

TEST(BlockPositivity, RejectsMismatchedCorner) {
  const ComplexMatrix id = ComplexMatrix::identity(2);
  EXPECT_EQ(code_of([&] { block_positivity_check(id, id, ComplexMatrix(3, 2)); }), ErrorCode::DimensionMismatch);
}

TEST(AbsoluteValueBound, NilpotentShift) {
  const BoundRecord r = cor5_bound(testutil::jordan(2), 2.0);
  EXPECT_NEAR(r.lhs, 1.0 / 16.0, 1e-9);
  EXPECT_NEAR(r.rhs, 1.0, 1e-9);
  EXPECT_NE(r.notes.find("printed_form_rhs="), std::string::npos);
}

TEST(AbsoluteValueBound, HoldsOnRandomMatrices) {
  SplitMix64 rng(69);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 5));
    expect_holds(cor5_bound(testutil::random_square(rng, n), rng.uniform(2.0, 4.0)));
  }
  EXPECT_NE(cor5_bound(ComplexMatrix::identity(2), 2.5).notes.find("undefined"), std::string::npos);
}
