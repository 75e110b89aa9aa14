#pragma once

// Classical single-operator bounds and the vector-level lemmas, as BoundRecords.

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "numrad/bound_record.hpp"
#include "numrad/error.hpp"
#include "numrad/hypotheses.hpp"
#include "numrad/linalg.hpp"
#include "numrad/matrix.hpp"
#include "numrad/radius.hpp"

namespace numrad {

/// Lazily computed quantities of one square operator T, shared by the single-operator bounds.
class OperatorProfile {
 public:
  explicit OperatorProfile(ComplexMatrix t) : t_(std::move(t)) {
    if (!t_.is_square()) throw Error(ErrorCode::NonSquare, "operator profile needs a square matrix");
  }

  const ComplexMatrix& matrix() const { return t_; }

  double norm() { return cached(norm_, [&] { return operator_norm(t_); }); }
  double radius() { return cached(w_, [&] { return numerical_radius(t_).value; }); }
  const ComplexMatrix& square() {
    if (!square_) square_ = t_ * t_;
    return *square_;
  }
  double square_norm() { return cached(square_norm_, [&] { return operator_norm(square()); }); }
  double square_radius() { return cached(square_w_, [&] { return numerical_radius(square()).value; }); }
  const ComplexMatrix& aluthge_transform() {
    if (!aluthge_) aluthge_ = aluthge(t_);
    return *aluthge_;
  }
  double aluthge_radius() { return cached(aluthge_w_, [&] { return numerical_radius(aluthge_transform()).value; }); }
  /// ‖T^*T + TT^*‖.
  double cartesian_norm() {
    return cached(cartesian_, [&] { return operator_norm(gram(t_) + gram(t_.adjoint())); });
  }

 private:
  template <class F>
  static double cached(std::optional<double>& slot, F&& compute) {
    if (!slot) slot = compute();
    return *slot;
  }

  ComplexMatrix t_;
  std::optional<double> norm_, w_, square_norm_, square_w_, aluthge_w_, cartesian_;
  std::optional<ComplexMatrix> square_, aluthge_;
};

inline std::pair<BoundRecord, BoundRecord> eq11_sandwich(OperatorProfile& p) {
  return {make_record("eq1.1.lower", p.norm() / 2.0, p.radius()),
          make_record("eq1.1.upper", p.radius(), p.norm())};
}

inline std::pair<BoundRecord, BoundRecord> eq11_sandwich(const ComplexMatrix& t) {
  OperatorProfile p(t);
  return eq11_sandwich(p);
}

/// w(T) ≤ (‖T‖ + ‖T²‖^{1/2})/2. Notes record whether the bound stays below ‖T‖.
inline BoundRecord kittaneh2003(OperatorProfile& p) {
  const double rhs = 0.5 * (p.norm() + std::sqrt(p.square_norm()));
  BoundRecord r = make_record("eq1.2", p.radius(), rhs);
  const bool refines = rhs <= p.norm() + default_tolerance(p.norm());
  append_note(r, std::string("refines_norm=") + (refines ? "true" : "false"));
  return r;
}

inline BoundRecord kittaneh2003(const ComplexMatrix& t) {
  OperatorProfile p(t);
  return kittaneh2003(p);
}

inline std::pair<BoundRecord, BoundRecord> kittaneh2005(OperatorProfile& p) {
  const double w2 = p.radius() * p.radius();
  return {make_record("eq1.3.lower", p.cartesian_norm() / 4.0, w2),
          make_record("eq1.3.upper", w2, p.cartesian_norm() / 2.0)};
}

inline std::pair<BoundRecord, BoundRecord> kittaneh2005(const ComplexMatrix& t) {
  OperatorProfile p(t);
  return kittaneh2005(p);
}

inline std::pair<BoundRecord, BoundRecord> yamazaki(OperatorProfile& p) {
  const double first_rhs = 0.5 * (p.norm() + p.aluthge_radius());
  const double second_rhs = 0.5 * (p.norm() + std::sqrt(p.square_norm()));
  return {make_record("eq1.4.first", p.radius(), first_rhs),
          make_record("eq1.4.second", first_rhs, second_rhs)};
}

inline std::pair<BoundRecord, BoundRecord> yamazaki(const ComplexMatrix& t) {
  OperatorProfile p(t);
  return yamazaki(p);
}

enum class DragomirVariant { as_printed, squared_norm };

/// w(T)² ≤ (‖T‖ + w(T²))/2 as typeset, or with ‖T‖² in place of ‖T‖.
inline BoundRecord dragomir(OperatorProfile& p, DragomirVariant variant = DragomirVariant::squared_norm) {
  const double lhs = p.radius() * p.radius();
  if (variant == DragomirVariant::as_printed) {
    BoundRecord r = make_record("eq1.5.as_printed", lhs, 0.5 * (p.norm() + p.square_radius()));
    append_note(r, "violation expected when the typeset form disagrees");
    return r;
  }
  return make_record("eq1.5.squared_norm", lhs, 0.5 * (p.norm() * p.norm() + p.square_radius()));
}

inline BoundRecord dragomir(const ComplexMatrix& t, DragomirVariant variant = DragomirVariant::squared_norm) {
  OperatorProfile p(t);
  return dragomir(p, variant);
}

/// |⟨Ax, y⟩|² ≤ ⟨|A|^{2α}x, x⟩ ⟨|A^*|^{2(1−α)}y, y⟩.
inline BoundRecord mixed_schwarz_gap(const ComplexMatrix& a, const Vector& x, const Vector& y, double alpha) {
  if (!a.is_square()) throw Error(ErrorCode::NonSquare, "mixed Schwarz needs a square matrix");
  detail::require_length(a, x, "x has the wrong length");
  detail::require_length(a, y, "y has the wrong length");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorCode::InvalidParameters, "alpha must lie in [0, 1]");
  const double lhs = std::norm(inner(a * x, y));
  const ComplexMatrix left = positive_power(gram(a), alpha);
  const ComplexMatrix right = positive_power(gram(a.adjoint()), 1.0 - alpha);
  const double rhs = quadratic_form(left, x).real() * quadratic_form(right, y).real();
  return make_record("eq2.4", lhs, rhs);
}

/// |⟨ABx, y⟩| ≤ r(B) ‖f(|A|)x‖ ‖g(|A^*|)y‖ under |A|B = B^*|A|.
inline BoundRecord kittaneh_fg_gap(const ComplexMatrix& a, const ComplexMatrix& b, const Vector& x,
                                   const Vector& y, PowerFunction f, PowerFunction g) {
  detail::require_same_square(a, b, "A and B must be square of one size");
  detail::require_length(a, x, "x has the wrong length");
  detail::require_length(a, y, "y has the wrong length");
  require_conjugate_exponents(f.exponent, g.exponent);
  const double residual = intertwining_residual(a, b);
  const bool ok = detail::relation_holds(residual, operator_norm(a), operator_norm(b));

  const double lhs = std::abs(inner(a * (b * x), y));
  const ComplexMatrix fa = positive_power(gram(a), f.exponent / 2.0);
  const ComplexMatrix ga = positive_power(gram(a.adjoint()), g.exponent / 2.0);
  const double rhs = spectral_radius(b) * norm(fa * x) * norm(ga * y);
  BoundRecord r = make_record("lem5", lhs, rhs, ok);
  if (!ok) append_note(r, "intertwining residual " + format_real(residual));
  return r;
}

/// ‖A+B‖ ≤ (‖A‖ + ‖B‖ + sqrt((‖A‖−‖B‖)² + 4‖A^{1/2}B^{1/2}‖²))/2 for positive A, B.
inline BoundRecord norm_sum_estimate(const ComplexMatrix& a, const ComplexMatrix& b) {
  detail::require_same_square(a, b, "A and B must be square of one size");
  require_positive(a, "A must be positive semidefinite");
  require_positive(b, "B must be positive semidefinite");
  const double na = operator_norm(a), nb = operator_norm(b);
  const double cross = operator_norm(positive_power(a, 0.5) * positive_power(b, 0.5));
  const double rhs = 0.5 * (na + nb + std::sqrt((na - nb) * (na - nb) + 4.0 * cross * cross));
  BoundRecord r = make_record("fact1", operator_norm(a + b), rhs);
  const bool sharper = rhs <= na + nb + default_tolerance(na + nb);
  append_note(r, std::string("below_triangle=") + (sharper ? "true" : "false"));
  return r;
}

/// ‖A^{1/2}B^{1/2}‖ ≤ ‖AB‖^{1/2} for positive A, B.
inline BoundRecord fact2_check(const ComplexMatrix& a, const ComplexMatrix& b) {
  detail::require_same_square(a, b, "A and B must be square of one size");
  require_positive(a, "A must be positive semidefinite");
  require_positive(b, "B must be positive semidefinite");
  const double lhs = operator_norm(positive_power(a, 0.5) * positive_power(b, 0.5));
  return make_record("fact2", lhs, std::sqrt(operator_norm(a * b)));
}

/// r(AB) ≤ (‖AB‖ + ‖BA‖ + sqrt((‖AB‖−‖BA‖)² + 4 min(‖A‖‖BAB‖, ‖B‖‖ABA‖)))/4.
inline BoundRecord spectral_radius_product_estimate(const ComplexMatrix& a, const ComplexMatrix& b) {
  detail::require_same_square(a, b, "A and B must be square of one size");
  const ComplexMatrix ab = a * b, ba = b * a;
  const double nab = operator_norm(ab), nba = operator_norm(ba);
  const double m = std::min(operator_norm(a) * operator_norm(ba * b), operator_norm(b) * operator_norm(ab * a));
  const double rhs = 0.25 * (nab + nba + std::sqrt((nab - nba) * (nab - nba) + 4.0 * m));
  return make_record("fact3", spectral_radius(ab), rhs);
}

namespace detail {

// ⟨A^p u, u⟩ − ⟨|A − ⟨Au, u⟩ I|^p u, u⟩ for unit u.
inline double refined_bracket(const ComplexMatrix& a, const ComplexMatrix& a_pow, const Vector& u, double p) {
  const double mean = quadratic_form(a, u).real();
  const ComplexMatrix shifted = a - mean * ComplexMatrix::identity(a.rows());
  const ComplexMatrix dev = positive_power(gram(shifted), p / 2.0);
  return quadratic_form(a_pow, u).real() - quadratic_form(dev, u).real();
}

}  // namespace detail

/// |⟨Ax,y⟩|^{2p} ≤ [⟨A^p x,x⟩ − ⟨|A − ⟨Ax,x⟩|^p x,x⟩][same for y] ≤ ⟨A^p x,x⟩⟨A^p y,y⟩.
/// Non-unit x, y: brackets are taken at x/‖x‖, y/‖y‖ and scaled by ‖x‖^{2p}‖y‖^{2p}.
inline std::pair<BoundRecord, BoundRecord> refined_cauchy_schwarz(const ComplexMatrix& a, const Vector& x,
                                                                  const Vector& y, double p) {
  if (!a.is_square()) throw Error(ErrorCode::NonSquare, "A must be square");
  detail::require_length(a, x, "x has the wrong length");
  detail::require_length(a, y, "y has the wrong length");
  if (!(p >= 2.0) || !std::isfinite(p)) throw Error(ErrorCode::InvalidExponent, "p must be >= 2");
  require_positive(a, "A must be positive semidefinite");

  const double lhs = std::pow(std::abs(inner(a * x, y)), 2.0 * p);
  const double nx = norm(x), ny = norm(y);
  if (nx == 0.0 || ny == 0.0) return {make_record("lem7.refined", lhs, 0.0), make_record("lem7.outer", 0.0, 0.0)};

  const Vector ux = normalized(x), uy = normalized(y);
  const ComplexMatrix a_pow = positive_power(a, p);
  const double scale = std::pow(nx, 2.0 * p) * std::pow(ny, 2.0 * p);
  const double refined = detail::refined_bracket(a, a_pow, ux, p) * detail::refined_bracket(a, a_pow, uy, p) * scale;
  const double outer = quadratic_form(a_pow, ux).real() * quadratic_form(a_pow, uy).real() * scale;
  return {make_record("lem7.refined", lhs, refined), make_record("lem7.outer", refined, outer)};
}

/// |⟨x,e⟩⟨e,y⟩| ≤ (|⟨x,y⟩| + ‖x‖‖y‖)/2 for unit e.
inline BoundRecord buzano_key_check(const Vector& x, const Vector& y, const Vector& e) {
  if (x.size() != y.size() || x.size() != e.size())
    throw Error(ErrorCode::DimensionMismatch, "x, y, e must have one length");
  if (std::abs(norm(e) - 1.0) > hypothesis_tol::unit_norm) throw Error(ErrorCode::NotUnit, "e must be a unit vector");
  const double lhs = std::abs(inner(x, e) * inner(e, y));
  const double rhs = 0.5 * (std::abs(inner(x, y)) + norm(x) * norm(y));
  return make_record("buzano.key", lhs, rhs);
}

/// Power-mean chain a^w b^{1−w} ≤ wa + (1−w)b ≤ (wa^p + (1−w)b^p)^{1/p}, weight w ∈ [0, 1].
inline std::vector<BoundRecord> power_mean_checks(double a, double b, double weight, double p) {
  if (!(a >= 0.0) || !(b >= 0.0)) throw Error(ErrorCode::InvalidParameters, "a and b must be >= 0");
  if (!(weight >= 0.0 && weight <= 1.0)) throw Error(ErrorCode::InvalidParameters, "weight must lie in [0, 1]");
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorCode::InvalidParameters, "p must be >= 1");
  const double geo = std::pow(a, weight) * std::pow(b, 1.0 - weight);
  const double arith = weight * a + (1.0 - weight) * b;
  const double power = std::pow(weight * std::pow(a, p) + (1.0 - weight) * std::pow(b, p), 1.0 / p);
  return {make_record("pmi", geo, arith, true, "stage=first"), make_record("pmi", arith, power, true, "stage=second")};
}

/// Power-Young chain ab ≤ a^α/α + b^β/β ≤ (a^{pα}/α + b^{pβ}/β)^{1/p}, 1/α + 1/β = 1.
inline std::vector<BoundRecord> power_young_checks(double a, double b, double alpha, double beta, double p) {
  if (!(a >= 0.0) || !(b >= 0.0)) throw Error(ErrorCode::InvalidParameters, "a and b must be >= 0");
  if (!(alpha > 1.0) || !(beta > 1.0) || std::abs(1.0 / alpha + 1.0 / beta - 1.0) > hypothesis_tol::holder_sum)
    throw Error(ErrorCode::InvalidParameters, "alpha, beta must be conjugate exponents > 1");
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorCode::InvalidParameters, "p must be >= 1");
  const double mid = std::pow(a, alpha) / alpha + std::pow(b, beta) / beta;
  const double top = std::pow(std::pow(a, p * alpha) / alpha + std::pow(b, p * beta) / beta, 1.0 / p);
  return {make_record("young", a * b, mid, true, "stage=first"), make_record("young", mid, top, true, "stage=second")};
}

/// Both scalar chains; the power-mean weight is 1/alpha.
inline std::vector<BoundRecord> scalar_lemma_checks(double a, double b, double alpha, double beta, double p) {
  auto out = power_young_checks(a, b, alpha, beta, p);
  auto pmi = power_mean_checks(a, b, 1.0 / alpha, p);
  out.insert(out.begin(), pmi.begin(), pmi.end());
  return out;
}

/// ⟨Ax,x⟩^p ≤ ⟨A^p x,x⟩ for positive A, unit x, p ≥ 1.
inline BoundRecord mccarty_check(const ComplexMatrix& a, const Vector& x, double p) {
  if (!a.is_square()) throw Error(ErrorCode::NonSquare, "A must be square");
  detail::require_length(a, x, "x has the wrong length");
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorCode::InvalidParameters, "p must be >= 1");
  if (std::abs(norm(x) - 1.0) > hypothesis_tol::unit_norm) throw Error(ErrorCode::NotUnit, "x must be a unit vector");
  require_positive(a, "A must be positive semidefinite");
  const double mean = std::max(quadratic_form(a, x).real(), 0.0);
  return make_record("mccarty", std::pow(mean, p), quadratic_form(positive_power(a, p), x).real());
}

}  // namespace numrad
