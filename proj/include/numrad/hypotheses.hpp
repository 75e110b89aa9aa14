#pragma once

// Residual checks for the operator hypotheses the bounds depend on.

#include <cmath>
#include <string>

#include "numrad/error.hpp"
#include "numrad/linalg.hpp"
#include "numrad/matrix.hpp"

namespace numrad {

namespace hypothesis_tol {
inline constexpr double relation_rel = 1e-8;     // ‖residual‖ ≤ 1e-8 (1 + ‖A‖‖B‖)
inline constexpr double exponent_sum = 1e-12;    // f.exponent + g.exponent = 1
inline constexpr double holder_sum = 1e-12;      // 1/α + 1/β = 1
inline constexpr double unit_norm = 1e-12;
inline constexpr double contraction = 1e-10;
}  // namespace hypothesis_tol

namespace detail {

inline void require_same_square(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (!a.is_square() || !b.is_square()) throw Error(ErrorCode::NonSquare, what);
  if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, what);
}

inline void require_length(const ComplexMatrix& a, const Vector& x, const char* what) {
  if (x.size() != a.cols()) throw Error(ErrorCode::DimensionMismatch, what);
}

inline bool relation_holds(double residual, double norm_a, double norm_b) {
  return residual <= hypothesis_tol::relation_rel * (1.0 + norm_a * norm_b);
}

}  // namespace detail

/// ‖|A|B − B^*|A|‖.
inline double intertwining_residual(const ComplexMatrix& a, const ComplexMatrix& b) {
  detail::require_same_square(a, b, "intertwining check needs square matrices of one size");
  const ComplexMatrix abs_a = absolute_value(a);
  return operator_norm(abs_a * b - b.adjoint() * abs_a);
}

/// ‖AB − BA‖.
inline double commutator_residual(const ComplexMatrix& a, const ComplexMatrix& b) {
  detail::require_same_square(a, b, "commutator needs square matrices of one size");
  return operator_norm(a * b - b * a);
}

/// Hermitian (within the eigensolver's tolerance) with λ_min ≥ -1e-8 (1 + ‖P‖).
inline bool is_positive(const ComplexMatrix& p) {
  if (!p.is_square()) return false;
  try {
    const auto vals = hermitian_eigenvalues(p);
    if (vals.empty()) return true;
    const double scale = std::max(std::abs(vals.front()), std::abs(vals.back()));
    return vals.front() >= -linalg_tol::negative_eigen_rel * (1.0 + scale);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotHermitian) return false;
    throw;
  }
}

inline void require_positive(const ComplexMatrix& p, const char* what) {
  if (!is_positive(p)) throw Error(ErrorCode::NotPositive, what);
}

inline void require_conjugate_exponents(double f_exponent, double g_exponent) {
  if (std::abs(f_exponent + g_exponent - 1.0) > hypothesis_tol::exponent_sum)
    throw Error(ErrorCode::InvalidExponent, "f and g exponents must sum to 1, got " +
                                                std::to_string(f_exponent) + " + " + std::to_string(g_exponent));
}

}  // namespace numrad
