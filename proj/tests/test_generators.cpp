#include <gtest/gtest.h>

#include <cmath>

#include "numrad/error.hpp"
#include "numrad/generators.hpp"
#include "numrad/hypotheses.hpp"
#include "test_util.hpp"

using namespace numrad;

namespace {

GeneratorSpec spec(GeneratorKind k, std::size_t dim, std::uint64_t seed, double scale = 1.0) {
  return {k, dim, {}, seed, scale};
}

}  // namespace

TEST(Generators, KindNamesRoundTrip) {
  for (GeneratorKind k : all_generator_kinds) EXPECT_EQ(parse_generator_kind(to_string(k)), k);
  EXPECT_THROW(parse_generator_kind("gaussian"), Error);
  EXPECT_EQ(arity_of(GeneratorKind::hermitian), Arity::single);
  EXPECT_EQ(arity_of(GeneratorKind::contraction_pair), Arity::pair);
  EXPECT_EQ(arity_of(GeneratorKind::block_partition), Arity::partition);
}

TEST(Generators, DeterministicInSeed) {
  for (GeneratorKind k : all_generator_kinds) {
    GeneratorSpec s = spec(k, 4, 99);
    if (k == GeneratorKind::block_partition) s.block_sizes = {2, 1, 2};
    const Instance a = generate(s), b = generate(s);
    EXPECT_EQ(a.index(), b.index());
    if (const auto* m = std::get_if<ComplexMatrix>(&a)) {
      EXPECT_EQ(*m, std::get<ComplexMatrix>(b));
    } else if (const auto* p = std::get_if<MatrixPair>(&a)) {
      EXPECT_EQ(p->a, std::get<MatrixPair>(b).a);
      EXPECT_EQ(p->b, std::get<MatrixPair>(b).b);
    } else {
      EXPECT_EQ(std::get<BlockPartition>(a).assemble(), std::get<BlockPartition>(b).assemble());
    }
  }
  EXPECT_NE(std::get<ComplexMatrix>(generate(spec(GeneratorKind::ginibre, 3, 1))),
            std::get<ComplexMatrix>(generate(spec(GeneratorKind::ginibre, 3, 2))));
}

TEST(Generators, SingleKindsHaveTheirClassProperties) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 2 + seed % 7;
    const auto h = std::get<ComplexMatrix>(generate(spec(GeneratorKind::hermitian, n, seed, 2.0)));
    EXPECT_LE(testutil::distance(h, h.adjoint()), 1e-14);

    const auto p = std::get<ComplexMatrix>(generate(spec(GeneratorKind::positive, n, seed)));
    EXPECT_TRUE(is_positive(p));

    const auto u = std::get<ComplexMatrix>(generate(spec(GeneratorKind::unitary, n, seed)));
    EXPECT_LE(testutil::distance(u.adjoint() * u, ComplexMatrix::identity(n)), 1e-10);

    const auto m = std::get<ComplexMatrix>(generate(spec(GeneratorKind::normal, n, seed)));
    EXPECT_LE(testutil::distance(m.adjoint() * m, m * m.adjoint()), 1e-9 * (1.0 + operator_norm(m) * operator_norm(m)));

    const auto s = std::get<ComplexMatrix>(generate(spec(GeneratorKind::nilpotent_shift, n, seed)));
    EXPECT_LE(power(s, static_cast<unsigned>(n)).max_abs(), 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      EXPECT_GE(s(i, i + 1).real(), 0.5);
      EXPECT_LE(s(i, i + 1).real(), 1.5);
    }
  }
}

TEST(Generators, ScaleMultipliesGinibre) {
  const auto a = std::get<ComplexMatrix>(generate(spec(GeneratorKind::ginibre, 4, 5, 1.0)));
  const auto b = std::get<ComplexMatrix>(generate(spec(GeneratorKind::ginibre, 4, 5, 3.0)));
  EXPECT_LE(testutil::distance(3.0 * a, b), 1e-12);
}

TEST(Generators, IntertwinedPairsSatisfyTheRelation) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 1 + seed % 8;
    const auto pr = std::get<MatrixPair>(generate(spec(GeneratorKind::intertwined_pair, n, seed)));
    const double res = intertwining_residual(pr.a, pr.b);
    EXPECT_LE(res, 1e-10 * (1.0 + operator_norm(pr.a) * operator_norm(pr.b)));
  }
}

TEST(Generators, CommutingPairsSatisfyBothRelations) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 1 + seed % 8;
    const auto pr = std::get<MatrixPair>(generate(spec(GeneratorKind::commuting_pair, n, seed)));
    const double na = operator_norm(pr.a), nb = operator_norm(pr.b);
    EXPECT_LE(commutator_residual(pr.a, pr.b), 1e-10 * (1.0 + na * nb));
    const ComplexMatrix a2 = pr.a * pr.a, b2 = pr.b * pr.b;
    EXPECT_LE(intertwining_residual(a2, b2), 1e-10 * (1.0 + operator_norm(a2) * operator_norm(b2)));
  }
}

TEST(Generators, ContractionPairsArePositiveWithBoundedProduct) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 1 + seed % 8;
    const double scale = seed % 2 ? 0.5 : 2.0;
    const auto pr = std::get<MatrixPair>(generate(spec(GeneratorKind::contraction_pair, n, seed, scale)));
    EXPECT_TRUE(is_positive(pr.a));
    EXPECT_TRUE(is_positive(pr.b));
    EXPECT_NEAR(operator_norm(pr.a * pr.b), std::min(0.9 * scale, 1.0), 1e-9);
  }
}

TEST(Generators, PartitionsFollowRequestedSizes) {
  GeneratorSpec s = spec(GeneratorKind::block_partition, 0, 3);
  s.block_sizes = {3, 1, 3};
  const auto p = std::get<BlockPartition>(generate(s));
  EXPECT_EQ(p.block_sizes, s.block_sizes);
  EXPECT_EQ(p.dimension(), 7u);
  EXPECT_NO_THROW(p.validate());
  s.block_sizes.clear();
  EXPECT_THROW(generate(s), Error);
}

TEST(Generators, RejectBadParameters) {
  EXPECT_THROW(generate(spec(GeneratorKind::ginibre, 0, 1)), Error);
  EXPECT_THROW(generate(spec(GeneratorKind::ginibre, 2, 1, -1.0)), Error);
  EXPECT_THROW(generate(spec(GeneratorKind::ginibre, 2, 1, std::nan(""))), Error);
}
