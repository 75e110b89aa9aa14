#pragma once

// Numerical radius bounds for products AB under intertwining, commutation and contraction
// hypotheses.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <utility>

#include "numrad/bound_record.hpp"
#include "numrad/error.hpp"
#include "numrad/hypotheses.hpp"
#include "numrad/linalg.hpp"
#include "numrad/matrix.hpp"
#include "numrad/radius.hpp"
#include "numrad/rng.hpp"

namespace numrad {

/// Conjugate exponents α ≥ β > 1 with 1/α + 1/β = 1.
struct HolderPair {
  double alpha = 2.0;
  double beta = 2.0;

  HolderPair(double a, double b) : alpha(a), beta(b) {
    if (!(a > 1.0) || !(b > 1.0) || std::abs(1.0 / a + 1.0 / b - 1.0) > hypothesis_tol::holder_sum)
      throw Error(ErrorCode::InvalidParameters, "alpha, beta must be conjugate exponents > 1");
    if (a < b) throw Error(ErrorCode::InvalidParameters, "alpha must be >= beta");
  }

  double gamma() const { return std::max(1.0 / alpha, 1.0 / beta); }
};

struct ProductBoundInput {
  ComplexMatrix a;
  ComplexMatrix b;
  PowerFunction f{0.5};
  PowerFunction g{0.5};
  double p = 1.0;
  std::optional<HolderPair> holder;
};

namespace detail {

// |X|^s = (X^*X)^{s/2} and |X^*|^s = (XX^*)^{s/2}.
inline ComplexMatrix modulus_power(const ComplexMatrix& x, double s) { return positive_power(gram(x), s / 2.0); }
inline ComplexMatrix co_modulus_power(const ComplexMatrix& x, double s) {
  return positive_power(gram(x.adjoint()), s / 2.0);
}

inline double radius_of(const ComplexMatrix& x) { return numerical_radius(x).value; }

// ‖X‖ + ‖X²‖^{1/2}
inline double kittaneh_factor(const ComplexMatrix& x) { return operator_norm(x) + std::sqrt(operator_norm(x * x)); }

// ‖F‖ + ‖G‖ + sqrt((‖F‖ − ‖G‖)² + 4c)
inline double norm_pair_term(double nf, double ng, double c) {
  return nf + ng + std::sqrt((nf - ng) * (nf - ng) + 4.0 * c);
}

inline void validate_input(const ProductBoundInput& in) {
  require_same_square(in.a, in.b, "A and B must be square of one size");
  require_conjugate_exponents(in.f.exponent, in.g.exponent);
  if (!(in.p >= 1.0) || !std::isfinite(in.p)) throw Error(ErrorCode::InvalidExponent, "p must be >= 1");
}

inline const HolderPair& require_holder(const ProductBoundInput& in) {
  if (!in.holder) throw Error(ErrorCode::InvalidParameters, "Holder pair (alpha, beta) is required");
  if (in.holder->beta * in.p < 2.0 - 1e-12) throw Error(ErrorCode::InvalidExponent, "beta * p must be >= 2");
  return *in.holder;
}

// [‖X^p‖ − λ_min(|X − c I|^p)] for Hermitian X.
inline double contraction_bracket(const ComplexMatrix& x, double c, double p) {
  const double top = operator_norm(positive_power(x, p));
  const ComplexMatrix shifted = x - c * ComplexMatrix::identity(x.rows());
  const double floor = hermitian_eigenvalues(positive_power(gram(shifted), p / 2.0)).front();
  return top - floor;
}

}  // namespace detail

/// ‖|A|B − B^*|A|‖ ≤ 1e-8 (1 + ‖A‖‖B‖).
inline bool check_intertwining(const ComplexMatrix& a, const ComplexMatrix& b) {
  const double residual = intertwining_residual(a, b);
  return detail::relation_holds(residual, operator_norm(a), operator_norm(b));
}

/// w(AB) ≤ ½ r(B) w(f²(|A|) + g²(|A^*|)) ≤ ⅛(‖B‖ + ‖B²‖^{1/2}){‖f²‖ + ‖g²‖ + sqrt((‖f²‖−‖g²‖)² + 4‖f(|A|)g(|A^*|)‖²)}.
inline std::pair<BoundRecord, BoundRecord> thm1_bounds(const ProductBoundInput& in) {
  detail::validate_input(in);
  const bool ok = check_intertwining(in.a, in.b);
  const ComplexMatrix f2 = detail::modulus_power(in.a, 2.0 * in.f.exponent);
  const ComplexMatrix g2 = detail::co_modulus_power(in.a, 2.0 * in.g.exponent);
  const ComplexMatrix fg = detail::modulus_power(in.a, in.f.exponent) * detail::co_modulus_power(in.a, in.g.exponent);

  const double lhs = detail::radius_of(in.a * in.b);
  const double first = 0.5 * spectral_radius(in.b) * detail::radius_of(f2 + g2);
  const double nfg = operator_norm(fg);
  const double second = 0.125 * detail::kittaneh_factor(in.b) *
                        detail::norm_pair_term(operator_norm(f2), operator_norm(g2), nfg * nfg);
  BoundRecord r1 = make_record("eq2.1.first", lhs, first, ok);
  BoundRecord r2 = make_record("eq2.1.second", first, second, ok);
  if (!ok) {
    append_note(r1, "intertwining hypothesis fails");
    append_note(r2, "intertwining hypothesis fails");
  }
  return {r1, r2};
}

/// thm1_bounds with f = t^α, g = t^{1−α}.
inline std::pair<BoundRecord, BoundRecord> cor1_alpha_bounds(const ComplexMatrix& a, const ComplexMatrix& b,
                                                             double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorCode::InvalidParameters, "alpha must lie in [0, 1]");
  auto [first, second] = thm1_bounds({a, b, PowerFunction(alpha), PowerFunction(1.0 - alpha), 1.0, std::nullopt});
  for (BoundRecord* r : {&first, &second}) r->bound_id = "eq3.2";
  append_note(first, "level=first");
  append_note(second, "level=second");
  return {first, second};
}

/// w(AB) ≤ ¼(‖B‖ + ‖B²‖^{1/2})(‖A‖ + ‖A²‖^{1/2}).
inline BoundRecord cor2_bound(const ComplexMatrix& a, const ComplexMatrix& b) {
  detail::require_same_square(a, b, "A and B must be square of one size");
  const bool ok = check_intertwining(a, b);
  const double rhs = 0.25 * detail::kittaneh_factor(b) * detail::kittaneh_factor(a);
  BoundRecord r = make_record("eq3.3", detail::radius_of(a * b), rhs, ok);
  if (!ok) append_note(r, "intertwining hypothesis fails");
  return r;
}

/// Three records: w(AB)^p against the radius form, the norm form, and the Φ form.
inline std::tuple<BoundRecord, BoundRecord, BoundRecord> thm2_bounds(const ProductBoundInput& in) {
  detail::validate_input(in);
  const HolderPair& h = detail::require_holder(in);
  const bool ok = check_intertwining(in.a, in.b);
  const double p = in.p;

  const ComplexMatrix fm = detail::modulus_power(in.a, in.f.exponent * h.alpha * p);
  const ComplexMatrix gm = detail::co_modulus_power(in.a, in.g.exponent * h.beta * p);
  const ComplexMatrix mix = (1.0 / h.alpha) * fm + (1.0 / h.beta) * gm;
  const double rb = std::pow(spectral_radius(in.b), p);

  const double lhs = std::pow(detail::radius_of(in.a * in.b), p);
  const double first = rb * detail::radius_of(mix);
  const double second = rb * operator_norm(mix);
  const double phi_term = detail::norm_pair_term(operator_norm(fm), operator_norm(gm), operator_norm(fm * gm));
  const double third = h.gamma() / std::pow(2.0, p + 1.0) * std::pow(detail::kittaneh_factor(in.b), p) * phi_term;

  BoundRecord r1 = make_record("eq3.4.first", lhs, first, ok);
  BoundRecord r2 = make_record("eq3.4.second", first, second, ok);
  BoundRecord r3 = make_record("eq3.5", lhs, third, ok);
  if (!ok)
    for (BoundRecord* r : {&r1, &r2, &r3}) append_note(*r, "intertwining hypothesis fails");
  return {r1, r2, r3};
}

/// w(AB)^{2p} ≤ ½‖AB‖^{2p} + γ/2^{p+2} (‖B²‖ + ‖B⁴‖^{1/2})^p {‖f^{αp}(|A²|)‖ + ‖g^{βp}(|(A²)^*|)‖ + Φ(A²)}
/// for commuting A, B with |A²|B² = (B²)^*|A²|.
inline BoundRecord thm3_bound(const ComplexMatrix& a, const ComplexMatrix& b, PowerFunction f, PowerFunction g,
                              double p, HolderPair holder) {
  const ProductBoundInput in{a, b, f, g, p, holder};
  detail::validate_input(in);
  detail::require_holder(in);

  const double na = operator_norm(a), nb = operator_norm(b);
  const double comm = commutator_residual(a, b);
  if (!detail::relation_holds(comm, na, nb))
    throw Error(ErrorCode::PreconditionFailed, "AB = BA fails (residual " + format_real(comm) + ")");
  const ComplexMatrix a2 = a * a, b2 = b * b;
  const double inter = intertwining_residual(a2, b2);
  if (!detail::relation_holds(inter, operator_norm(a2), operator_norm(b2)))
    throw Error(ErrorCode::PreconditionFailed,
                "|A^2|B^2 = (B^2)^*|A^2| fails (residual " + format_real(inter) + ")");

  const ComplexMatrix fm = detail::modulus_power(a2, f.exponent * holder.alpha * p);
  const ComplexMatrix gm = detail::co_modulus_power(a2, g.exponent * holder.beta * p);
  const double phi_term = detail::norm_pair_term(operator_norm(fm), operator_norm(gm), operator_norm(fm * gm));
  const ComplexMatrix ab = a * b;
  const double rhs = 0.5 * std::pow(operator_norm(ab), 2.0 * p) +
                     holder.gamma() / std::pow(2.0, p + 2.0) * std::pow(detail::kittaneh_factor(b2), p) * phi_term;
  return make_record("eq3.6", std::pow(detail::radius_of(ab), 2.0 * p), rhs);
}

/// w(AB)^{2p} ≤ [‖A^p‖ − λ_min(|A − ‖A‖|^p)][‖B^p‖ − λ_min(|B − ‖B‖|^p)] for positive A, B with ‖AB‖ ≤ 1.
inline BoundRecord thm4_bound(const ComplexMatrix& a, const ComplexMatrix& b, double p) {
  detail::require_same_square(a, b, "A and B must be square of one size");
  if (!(p >= 2.0) || !std::isfinite(p)) throw Error(ErrorCode::InvalidExponent, "p must be >= 2");
  require_positive(a, "A must be positive semidefinite");
  require_positive(b, "B must be positive semidefinite");
  const ComplexMatrix ab = a * b;
  const double nab = operator_norm(ab);
  if (nab > 1.0 + hypothesis_tol::contraction)
    throw Error(ErrorCode::NotContraction, "||AB|| = " + format_real(nab) + " exceeds 1");
  const double rhs = detail::contraction_bracket(a, operator_norm(a), p) *
                     detail::contraction_bracket(b, operator_norm(b), p);
  return make_record("thm4", std::pow(detail::radius_of(ab), 2.0 * p), rhs);
}

struct BlockPositivity {
  bool positive = false;
  bool schwarz_all_samples = false;
  double min_eigenvalue = 0.0;
  double worst_gap = 0.0;  // max over samples of |⟨Cx,y⟩|² − ⟨Ax,x⟩⟨By,y⟩
  double worst_lhs = 0.0;
  double worst_rhs = 0.0;

  /// Positivity forces every sampled Schwarz inequality to hold.
  bool consistent() const { return !positive || schwarz_all_samples; }
};

namespace block_positivity {
inline constexpr std::size_t samples = 1000;
inline constexpr double tolerance = 1e-10;
inline constexpr std::uint64_t default_seed = 0x4C454D34ULL;
}  // namespace block_positivity

/// Positivity of [[A, C^*], [C, B]] against sampled |⟨Cx,y⟩|² ≤ ⟨Ax,x⟩⟨By,y⟩.
inline BlockPositivity block_positivity_check(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                                              std::uint64_t seed = block_positivity::default_seed) {
  if (!a.is_square() || !b.is_square()) throw Error(ErrorCode::NonSquare, "A and B must be square");
  if (c.rows() != b.rows() || c.cols() != a.rows())
    throw Error(ErrorCode::DimensionMismatch, "C must map the space of A into the space of B");
  const std::size_t n = a.rows(), m = b.rows();

  ComplexMatrix full(n + m, n + m);
  full.set_block(0, 0, a);
  full.set_block(0, n, c.adjoint());
  full.set_block(n, 0, c);
  full.set_block(n, n, b);

  BlockPositivity out;
  out.min_eigenvalue = hermitian_eigenvalues(full).front();
  out.positive = out.min_eigenvalue >= -block_positivity::tolerance;

  SplitMix64 rng(seed);
  out.worst_gap = -std::numeric_limits<double>::infinity();
  out.schwarz_all_samples = true;
  for (std::size_t s = 0; s < block_positivity::samples; ++s) {
    const Vector x = rng.unit_vector(n);
    const Vector y = rng.unit_vector(m);
    const double lhs = std::norm(inner(c * x, y));
    const double rhs = quadratic_form(a, x).real() * quadratic_form(b, y).real();
    if (lhs - rhs > out.worst_gap) {
      out.worst_gap = lhs - rhs;
      out.worst_lhs = lhs;
      out.worst_rhs = rhs;
    }
    if (lhs > rhs + block_positivity::tolerance) out.schwarz_all_samples = false;
  }
  return out;
}

/// The worst sampled Schwarz pair as a record; informational when the block is not positive.
inline BoundRecord block_positivity_record(const BlockPositivity& bp) {
  BoundRecord r = make_record("lem4.positivity", bp.worst_lhs, bp.worst_rhs, bp.positive);
  append_note(r, "min_eigenvalue=" + format_real(bp.min_eigenvalue));
  append_note(r, std::string("consistent=") + (bp.consistent() ? "true" : "false"));
  return r;
}

namespace detail {

// [‖T^p‖ − λ_min(|T − ‖T‖|^p)][‖(T^*)^p‖ − λ_min(|T^* − ‖T‖|^p)] read literally, integer p only.
inline std::optional<double> cor5_printed_rhs(const ComplexMatrix& t, double nt, double p) {
  if (p != std::floor(p) || p > 64.0) return std::nullopt;
  const auto k = static_cast<unsigned>(p);
  auto bracket = [&](const ComplexMatrix& x) {
    const ComplexMatrix shifted = x - nt * ComplexMatrix::identity(x.rows());
    return operator_norm(power(x, k)) - hermitian_eigenvalues(positive_power(gram(shifted), p / 2.0)).front();
  };
  return bracket(t) * bracket(t.adjoint());
}

}  // namespace detail

/// w(T)^{2p} ≤ [‖|T|^p‖ − λ_min(||T| − ‖T‖|^p)][‖|T^*|^p‖ − λ_min(||T^*| − ‖T‖|^p)].
inline BoundRecord cor5_bound(const ComplexMatrix& t, double p) {
  if (!t.is_square()) throw Error(ErrorCode::NonSquare, "T must be square");
  if (!(p >= 2.0) || !std::isfinite(p)) throw Error(ErrorCode::InvalidExponent, "p must be >= 2");
  const double nt = operator_norm(t);
  const ComplexMatrix abs_t = absolute_value(t);
  const ComplexMatrix abs_ts = absolute_value(t.adjoint());
  const double rhs = detail::contraction_bracket(abs_t, nt, p) * detail::contraction_bracket(abs_ts, nt, p);
  BoundRecord r = make_record("cor5", std::pow(detail::radius_of(t), 2.0 * p), rhs);
  const auto printed = detail::cor5_printed_rhs(t, nt, p);
  append_note(r, printed ? "printed_form_rhs=" + format_real(*printed) : std::string("printed_form_rhs=undefined"));
  return r;
}

}  // namespace numrad
