#pragma once

// Pinching an operator matrix [A_ij] into a small nonnegative matrix whose numerical or
// spectral radius dominates w(A).

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "numrad/bound_record.hpp"
#include "numrad/error.hpp"
#include "numrad/hypotheses.hpp"
#include "numrad/linalg.hpp"
#include "numrad/matrix.hpp"
#include "numrad/radius.hpp"

namespace numrad {

/// n×n grid of blocks; blocks[i][j] is block_sizes[i] × block_sizes[j].
struct BlockPartition {
  std::vector<std::size_t> block_sizes;
  std::vector<std::vector<ComplexMatrix>> blocks;

  std::size_t count() const { return block_sizes.size(); }

  std::size_t dimension() const {
    std::size_t n = 0;
    for (auto k : block_sizes) n += k;
    return n;
  }

  void validate() const {
    const std::size_t n = count();
    if (n == 0) throw Error(ErrorCode::InvalidPartition, "partition has no blocks");
    if (blocks.size() != n) throw Error(ErrorCode::InvalidPartition, "block grid has the wrong number of rows");
    for (std::size_t i = 0; i < n; ++i) {
      if (block_sizes[i] == 0) throw Error(ErrorCode::InvalidPartition, "block sizes must be positive");
      if (blocks[i].size() != n) throw Error(ErrorCode::InvalidPartition, "block grid row is incomplete");
      for (std::size_t j = 0; j < n; ++j)
        if (blocks[i][j].rows() != block_sizes[i] || blocks[i][j].cols() != block_sizes[j])
          throw Error(ErrorCode::InvalidPartition, "block (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                                       ") has the wrong shape");
    }
  }

  /// Sizes read the same backwards, so every anti-diagonal block is square.
  bool palindromic() const {
    const std::size_t n = count();
    for (std::size_t i = 0; i < n; ++i)
      if (block_sizes[i] != block_sizes[n - 1 - i]) return false;
    return true;
  }

  ComplexMatrix assemble() const {
    validate();
    ComplexMatrix full(dimension(), dimension());
    std::size_t r = 0;
    for (std::size_t i = 0; i < count(); ++i) {
      std::size_t c = 0;
      for (std::size_t j = 0; j < count(); ++j) {
        full.set_block(r, c, blocks[i][j]);
        c += block_sizes[j];
      }
      r += block_sizes[i];
    }
    return full;
  }

  /// Splits a square matrix along `sizes`.
  static BlockPartition split(const ComplexMatrix& full, std::vector<std::size_t> sizes) {
    BlockPartition p;
    p.block_sizes = std::move(sizes);
    std::size_t total = 0;
    for (auto k : p.block_sizes) total += k;
    if (!full.is_square() || full.rows() != total)
      throw Error(ErrorCode::InvalidPartition, "block sizes do not add up to the matrix dimension");
    const std::size_t n = p.count();
    p.blocks.assign(n, std::vector<ComplexMatrix>(n));
    std::size_t r = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t c = 0;
      for (std::size_t j = 0; j < n; ++j) {
        p.blocks[i][j] = full.block(r, c, p.block_sizes[i], p.block_sizes[j]);
        c += p.block_sizes[j];
      }
      r += p.block_sizes[i];
    }
    p.validate();
    return p;
  }
};

enum class SchemeId { t1, t2, t3, a, b, c, d };

inline constexpr std::string_view to_string(SchemeId s) {
  switch (s) {
    case SchemeId::t1: return "t1";
    case SchemeId::t2: return "t2";
    case SchemeId::t3: return "t3";
    case SchemeId::a: return "a";
    case SchemeId::b: return "b";
    case SchemeId::c: return "c";
    case SchemeId::d: return "d";
  }
  return "?";
}

inline SchemeId parse_scheme(std::string_view s) {
  for (SchemeId id : {SchemeId::t1, SchemeId::t2, SchemeId::t3, SchemeId::a, SchemeId::b, SchemeId::c, SchemeId::d})
    if (to_string(id) == s) return id;
  throw Error(ErrorCode::InvalidParameters, "unknown pinch scheme '" + std::string(s) + "'");
}

struct PinchScheme {
  SchemeId id = SchemeId::t3;
  std::optional<PowerFunction> f;
  std::optional<PowerFunction> g;
};

/// Schemes measured by the spectral radius of the pinch rather than its numerical radius.
inline bool uses_spectral_radius(SchemeId s) { return s == SchemeId::b || s == SchemeId::d; }

/// Schemes that single out the anti-diagonal j = n − i + 1.
inline bool uses_anti_diagonal(SchemeId s) { return s == SchemeId::a || s == SchemeId::b || s == SchemeId::c || s == SchemeId::d; }

namespace detail {

// ½‖f²(|X|) + g²(|X^*|)‖ for a square block X.
inline double fg_half_norm(const ComplexMatrix& x, PowerFunction f, PowerFunction g) {
  const ComplexMatrix f2 = positive_power(gram(x), f.exponent);
  const ComplexMatrix g2 = positive_power(gram(x.adjoint()), g.exponent);
  return 0.5 * operator_norm(f2 + g2);
}

inline double block_radius(const ComplexMatrix& x, double tol) {
  return numerical_radius(x, tol).value;
}

}  // namespace detail

/// The n×n nonnegative pinch matrix of `partition` under `scheme` (real entries stored as complex).
inline ComplexMatrix pinch(const BlockPartition& partition, const PinchScheme& scheme, double tol) {
  partition.validate();
  if (!(tol > 0.0) || !std::isfinite(tol)) throw Error(ErrorCode::InvalidTolerance, "tol must be positive");
  const SchemeId s = scheme.id;
  const bool needs_fg = s == SchemeId::c || s == SchemeId::d;
  if (needs_fg) {
    if (!scheme.f || !scheme.g)
      throw Error(ErrorCode::SchemeParameterMissing, "schemes c and d need f and g");
    require_conjugate_exponents(scheme.f->exponent, scheme.g->exponent);
  }
  if (uses_anti_diagonal(s) && !partition.palindromic())
    throw Error(ErrorCode::InvalidPartition, "anti-diagonal schemes need block sizes that read the same backwards");

  const std::size_t n = partition.count();
  const auto& A = partition.blocks;
  auto nrm = [&](std::size_t i, std::size_t j) { return operator_norm(A[i][j]); };
  auto rad = [&](std::size_t i, std::size_t j) { return detail::block_radius(A[i][j], tol); };
  auto fg = [&](std::size_t i, std::size_t j) { return detail::fg_half_norm(A[i][j], *scheme.f, *scheme.g); };

  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const bool diag = i == j;
      const bool anti = !diag && j == n - 1 - i;
      double v = 0.0;
      switch (s) {
        case SchemeId::t1:
          v = nrm(i, j);
          break;
        case SchemeId::t2:
          v = diag ? 0.5 * (nrm(i, i) + std::sqrt(operator_norm(A[i][i] * A[i][i]))) : nrm(i, j);
          break;
        case SchemeId::t3:
          v = diag ? rad(i, i) : nrm(i, j);
          break;
        case SchemeId::a:
          v = diag || anti ? rad(i, j) : nrm(i, j);
          break;
        case SchemeId::b:
          if (diag) v = rad(i, i);
          else if (anti) v = 0.5 * (rad(i, j) + rad(j, i));
          else v = 0.5 * (nrm(i, j) + nrm(j, i));
          break;
        case SchemeId::c:
          v = diag || anti ? fg(i, j) : nrm(i, j);
          break;
        case SchemeId::d:
          if (diag) v = fg(i, i);
          else if (anti) v = 0.5 * (fg(i, j) + fg(j, i));
          else v = 0.5 * (nrm(i, j) + nrm(j, i));
          break;
      }
      out(i, j) = v;
    }
  return out;
}

inline std::string block_bound_id(SchemeId s) { return "block." + std::string(to_string(s)); }

/// w(A) against w(pinch) (schemes t1, t2, t3, a, c) or r(pinch) (schemes b, d).
inline BoundRecord block_bound(const BlockPartition& partition, const PinchScheme& scheme, double tol) {
  const ComplexMatrix p = pinch(partition, scheme, tol);
  const double lhs = numerical_radius(partition.assemble(), tol).value;
  const double rhs = uses_spectral_radius(scheme.id) ? spectral_radius(p) : numerical_radius(p, tol).value;
  BoundRecord r = make_record(block_bound_id(scheme.id), lhs, rhs);
  append_note(r, "scheme=" + std::string(to_string(scheme.id)));
  return r;
}

namespace detail {

struct ClosedForm {
  double value;          // ½(w11 + w22 + sqrt((w11 − w22)² + (w12 + w21)²))
  double symmetrized_r;  // r([[w11, (w12+w21)/2], [(w12+w21)/2, w22]])
};

inline ClosedForm closed_form(const BlockPartition& partition, double tol) {
  partition.validate();
  if (partition.count() != 2) throw Error(ErrorCode::NotTwoByTwo, "closed form needs exactly 2x2 blocks");
  if (!partition.palindromic()) throw Error(ErrorCode::InvalidPartition, "closed form needs equal block sizes");
  const auto& A = partition.blocks;
  const double w11 = block_radius(A[0][0], tol), w22 = block_radius(A[1][1], tol);
  const double off = block_radius(A[0][1], tol) + block_radius(A[1][0], tol);
  const double value = 0.5 * (w11 + w22 + std::sqrt((w11 - w22) * (w11 - w22) + off * off));
  const ComplexMatrix sym{{w11, 0.5 * off}, {0.5 * off, w22}};
  return {value, hermitian_eigenvalues(sym).back()};
}

}  // namespace detail

/// w(A) against the closed-form spectral radius of the symmetrized 2×2 pinch. Notes carry the
/// gap between the formula and the eigenvalue computation.
inline BoundRecord two_by_two_closed_form(const BlockPartition& partition, double tol) {
  const detail::ClosedForm cf = detail::closed_form(partition, tol);
  BoundRecord r = make_record("block.2x2", numerical_radius(partition.assemble(), tol).value, cf.value);
  append_note(r, "symmetrized_pinch_gap=" + format_real(std::abs(cf.value - cf.symmetrized_r)));
  return r;
}

/// |closed form − r(symmetrized pinch)|.
inline double closed_form_pinch_gap(const BlockPartition& partition, double tol) {
  const detail::ClosedForm cf = detail::closed_form(partition, tol);
  return std::abs(cf.value - cf.symmetrized_r);
}

}  // namespace numrad
