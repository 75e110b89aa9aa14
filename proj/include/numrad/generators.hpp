#pragma once

// Seeded random instances for each hypothesis class.

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "numrad/block_bounds.hpp"
#include "numrad/error.hpp"
#include "numrad/hypotheses.hpp"
#include "numrad/linalg.hpp"
#include "numrad/matrix.hpp"
#include "numrad/rng.hpp"

namespace numrad {

enum class GeneratorKind {
  ginibre,
  hermitian,
  positive,
  unitary,
  normal,
  nilpotent_shift,
  commuting_pair,
  intertwined_pair,
  contraction_pair,
  block_partition,
};

inline constexpr GeneratorKind all_generator_kinds[] = {
    GeneratorKind::ginibre,        GeneratorKind::hermitian,        GeneratorKind::positive,
    GeneratorKind::unitary,        GeneratorKind::normal,           GeneratorKind::nilpotent_shift,
    GeneratorKind::commuting_pair, GeneratorKind::intertwined_pair, GeneratorKind::contraction_pair,
    GeneratorKind::block_partition};

inline constexpr std::string_view to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::ginibre: return "ginibre";
    case GeneratorKind::hermitian: return "hermitian";
    case GeneratorKind::positive: return "positive";
    case GeneratorKind::unitary: return "unitary";
    case GeneratorKind::normal: return "normal";
    case GeneratorKind::nilpotent_shift: return "nilpotent_shift";
    case GeneratorKind::commuting_pair: return "commuting_pair";
    case GeneratorKind::intertwined_pair: return "intertwined_pair";
    case GeneratorKind::contraction_pair: return "contraction_pair";
    case GeneratorKind::block_partition: return "block_partition";
  }
  return "?";
}

inline GeneratorKind parse_generator_kind(std::string_view s) {
  for (GeneratorKind k : all_generator_kinds)
    if (to_string(k) == s) return k;
  throw Error(ErrorCode::ParseError, "unknown generator kind '" + std::string(s) + "'");
}

enum class Arity { single, pair, partition };

inline Arity arity_of(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::commuting_pair:
    case GeneratorKind::intertwined_pair:
    case GeneratorKind::contraction_pair: return Arity::pair;
    case GeneratorKind::block_partition: return Arity::partition;
    default: return Arity::single;
  }
}

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::ginibre;
  std::size_t dim = 2;
  std::vector<std::size_t> block_sizes;  // block_partition only
  std::uint64_t seed = 0;
  double scale = 1.0;
};

struct MatrixPair {
  ComplexMatrix a;
  ComplexMatrix b;
};

using Instance = std::variant<ComplexMatrix, MatrixPair, BlockPartition>;

namespace generator_tol {
inline constexpr double class_residual = 1e-10;  // unitarity, positivity, commutation
inline constexpr int max_attempts = 100;
}  // namespace generator_tol

namespace detail {

inline ComplexMatrix ginibre_matrix(SplitMix64& rng, std::size_t r, std::size_t c, double scale) {
  ComplexMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = scale * rng.complex_normal();
  return m;
}

// Haar unitary: Gram-Schmidt on Ginibre columns (phases fixed by the construction).
inline ComplexMatrix haar_unitary(SplitMix64& rng, std::size_t n) {
  for (;;) {
    const ComplexMatrix g = ginibre_matrix(rng, n, n, 1.0);
    std::vector<Vector> cols;
    for (std::size_t j = 0; j < n; ++j) cols.push_back(g.column(j));
    reorthonormalize(cols);
    ComplexMatrix u(n, n);
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) {
      ok = std::abs(norm(cols[j]) - 1.0) < 1e-12;
      for (std::size_t i = 0; i < n; ++i) u(i, j) = cols[j][i];
    }
    if (ok) return u;
  }
}

inline double unitarity_residual(const ComplexMatrix& u) {
  return operator_norm(u.adjoint() * u - ComplexMatrix::identity(u.rows()));
}

// Σ c_k X^k by Horner's rule.
inline ComplexMatrix polynomial(const std::vector<double>& c, const ComplexMatrix& x) {
  ComplexMatrix out = ComplexMatrix::zeros(x.rows(), x.cols());
  const ComplexMatrix id = ComplexMatrix::identity(x.rows());
  for (std::size_t k = c.size(); k-- > 0;) out = out * x + c[k] * id;
  return out;
}

inline std::vector<double> random_polynomial(SplitMix64& rng, std::size_t degree) {
  std::vector<double> c(degree + 1);
  for (auto& v : c) v = rng.normal();
  return c;
}

inline bool is_scalar_multiple_of_identity(const ComplexMatrix& b) {
  const std::size_t n = b.rows();
  if (n <= 1) return false;
  Complex tr{};
  for (std::size_t i = 0; i < n; ++i) tr += b(i, i);
  const ComplexMatrix dev = b - (tr / static_cast<double>(n)) * ComplexMatrix::identity(n);
  return operator_norm(dev) <= 1e-8 * (1.0 + operator_norm(b));
}

inline Instance generate_single(GeneratorKind kind, std::size_t n, double scale, SplitMix64& rng) {
  switch (kind) {
    case GeneratorKind::ginibre: return ginibre_matrix(rng, n, n, scale);
    case GeneratorKind::hermitian: return hermitian_part(ginibre_matrix(rng, n, n, scale));
    case GeneratorKind::positive:
      for (int attempt = 0; attempt < generator_tol::max_attempts; ++attempt) {
        const ComplexMatrix p = (scale / static_cast<double>(n)) * gram(ginibre_matrix(rng, n, n, 1.0));
        if (is_positive(p)) return p;
      }
      break;
    case GeneratorKind::unitary:
      for (int attempt = 0; attempt < generator_tol::max_attempts; ++attempt) {
        ComplexMatrix u = haar_unitary(rng, n);
        if (unitarity_residual(u) <= generator_tol::class_residual) return u;
      }
      break;
    case GeneratorKind::normal: {
      const ComplexMatrix u = haar_unitary(rng, n);
      Vector d(n);
      for (auto& z : d) z = scale * rng.complex_normal();
      return u * ComplexMatrix::diagonal(d) * u.adjoint();
    }
    case GeneratorKind::nilpotent_shift: {
      ComplexMatrix s(n, n);
      for (std::size_t i = 0; i + 1 < n; ++i) s(i, i + 1) = scale * rng.uniform(0.5, 1.5);
      return s;
    }
    default: break;
  }
  throw Error(ErrorCode::ResamplingExhausted, std::string(to_string(kind)) + " generator gave up");
}

// B = h(|A|), h a real polynomial of degree 1..3 with a non-negligible linear term.
inline MatrixPair intertwined_pair(std::size_t n, double scale, SplitMix64& rng) {
  for (int attempt = 0; attempt < generator_tol::max_attempts; ++attempt) {
    const ComplexMatrix a = ginibre_matrix(rng, n, n, scale);
    auto h = random_polynomial(rng, static_cast<std::size_t>(rng.uniform_int(1, 3)));
    if (std::abs(h[1]) < 0.5) h[1] = std::copysign(0.5 + std::abs(h[1]), h[1]);
    const HermitianEigen e = hermitian_eigen(gram(a));
    Vector hv(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double s = std::sqrt(std::max(e.values[k], 0.0));
      double v = 0.0;
      for (std::size_t d = h.size(); d-- > 0;) v = v * s + h[d];
      hv[k] = v;
    }
    const ComplexMatrix b = hermitian_part(e.vectors * ComplexMatrix::diagonal(hv) * e.vectors.adjoint());
    if (is_scalar_multiple_of_identity(b)) continue;
    const double res = intertwining_residual(a, b);
    if (res <= generator_tol::class_residual * (1.0 + operator_norm(a) * operator_norm(b))) return {a, b};
  }
  throw Error(ErrorCode::ResamplingExhausted, "intertwined_pair generator gave up");
}

// B = q(A) for a real polynomial q, with A drawn from one of three families on which the
// second hypothesis |A²|B² = (B²)^*|A²| can hold: Hermitian A, square-zero A, or any A with
// constant q. Candidates failing either hypothesis are redrawn.
inline MatrixPair commuting_pair(std::size_t n, double scale, SplitMix64& rng) {
  for (int attempt = 0; attempt < generator_tol::max_attempts; ++attempt) {
    const auto family = rng.uniform_int(0, 2);
    ComplexMatrix a;
    std::vector<double> q;
    if (family == 0) {
      a = hermitian_part(ginibre_matrix(rng, n, n, scale));
      q = random_polynomial(rng, static_cast<std::size_t>(rng.uniform_int(1, 3)));
    } else if (family == 1) {
      const std::size_t k = n / 2;
      ComplexMatrix core(n, n);
      if (k > 0) core.set_block(0, k, ginibre_matrix(rng, k, n - k, scale));
      const ComplexMatrix v = haar_unitary(rng, n);
      a = v * core * v.adjoint();
      q = random_polynomial(rng, 1);
    } else {
      a = ginibre_matrix(rng, n, n, scale);
      q = random_polynomial(rng, 0);
    }
    const ComplexMatrix b = polynomial(q, a);
    const double na = operator_norm(a), nb = operator_norm(b);
    if (commutator_residual(a, b) > generator_tol::class_residual * (1.0 + na * nb)) continue;
    const ComplexMatrix a2 = a * a, b2 = b * b;
    if (intertwining_residual(a2, b2) > generator_tol::class_residual * (1.0 + operator_norm(a2) * operator_norm(b2)))
      continue;
    return {a, b};
  }
  throw Error(ErrorCode::ResamplingExhausted, "commuting_pair generator gave up");
}

// Positive A, B rescaled so ‖AB‖ = min(0.9 scale, 1).
inline MatrixPair contraction_pair(std::size_t n, double scale, SplitMix64& rng) {
  const double target = std::min(0.9 * scale, 1.0);
  for (int attempt = 0; attempt < generator_tol::max_attempts; ++attempt) {
    ComplexMatrix a = (1.0 / static_cast<double>(n)) * gram(ginibre_matrix(rng, n, n, 1.0));
    ComplexMatrix b = (1.0 / static_cast<double>(n)) * gram(ginibre_matrix(rng, n, n, 1.0));
    const double nab = operator_norm(a * b);
    if (!(nab > 0.0)) continue;
    const double f = std::sqrt(target / nab);
    a = f * a;
    b = f * b;
    if (is_positive(a) && is_positive(b) && operator_norm(a * b) <= 1.0) return {a, b};
  }
  throw Error(ErrorCode::ResamplingExhausted, "contraction_pair generator gave up");
}

inline BlockPartition random_partition(const std::vector<std::size_t>& sizes, double scale, SplitMix64& rng) {
  if (sizes.empty()) throw Error(ErrorCode::InvalidPartition, "block_partition needs block_sizes");
  BlockPartition p;
  p.block_sizes = sizes;
  const std::size_t n = sizes.size();
  p.blocks.assign(n, std::vector<ComplexMatrix>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p.blocks[i][j] = ginibre_matrix(rng, sizes[i], sizes[j], scale);
  p.validate();
  return p;
}

}  // namespace detail

/// Deterministic in (kind, dim or block_sizes, seed, scale).
inline Instance generate(const GeneratorSpec& spec) {
  if (!(spec.scale > 0.0) || !std::isfinite(spec.scale))
    throw Error(ErrorCode::InvalidParameters, "scale must be positive");
  if (spec.kind != GeneratorKind::block_partition && spec.dim == 0)
    throw Error(ErrorCode::InvalidParameters, "dim must be >= 1");
  SplitMix64 rng(spec.seed);
  switch (arity_of(spec.kind)) {
    case Arity::single: return detail::generate_single(spec.kind, spec.dim, spec.scale, rng);
    case Arity::partition: return detail::random_partition(spec.block_sizes, spec.scale, rng);
    case Arity::pair: break;
  }
  switch (spec.kind) {
    case GeneratorKind::intertwined_pair: return detail::intertwined_pair(spec.dim, spec.scale, rng);
    case GeneratorKind::commuting_pair: return detail::commuting_pair(spec.dim, spec.scale, rng);
    default: return detail::contraction_pair(spec.dim, spec.scale, rng);
  }
}

}  // namespace numrad
