#pragma once

// Numerical radius w(T) = max over θ of λ_max(H(θ)), H(θ) = (e^{iθ}T + e^{-iθ}T^*)/2.
//
// λ_max(H(θ)) is the support function h(θ) of the numerical range W(T). One Hermitian
// eigen-solve at θ yields h(θ) = λ_max and h(θ + π) = -λ_min, so only [0, π] is scanned.
// Each angular interval carries two upper bounds on max h over it:
//   * Lipschitz: h is ‖T‖-Lipschitz, so max ≤ (h(a) + h(b))/2 + ‖T‖(b - a)/2;
//   * support wedge: W(T) lies in the wedge cut by the support lines at a and b, so h on
//     [a, b] is below the support function of that wedge (its vertex).
// Intervals are bisected best-first until the largest upper bound is within tol of the best
// value found, then the maximizer is polished by golden-section search.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <queue>
#include <vector>

#include "numrad/error.hpp"
#include "numrad/linalg.hpp"
#include "numrad/matrix.hpp"
#include "numrad/rng.hpp"

namespace numrad {

struct RadiusEstimate {
  double value = 0.0;
  double certified_error = 0.0;
  double argmax_angle = 0.0;  // in [0, 2π)
  std::size_t iterations = 0;
};

/// Tolerance used by every bound evaluation in the library: 1e-9 (1 + ‖T‖).
inline double default_tolerance(double norm_t) { return 1e-9 * (1.0 + norm_t); }

namespace detail {

inline constexpr std::size_t radius_initial_intervals = 180;  // step π/180
inline constexpr std::size_t radius_max_evaluations = 4'000'000;
inline constexpr int radius_golden_steps = 80;

class SupportEvaluator {
 public:
  explicit SupportEvaluator(const ComplexMatrix& t) : n_(t.rows()), re_(n_ * n_), im_(n_ * n_) {
    const ComplexMatrix ta = t.adjoint();
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        re_[i * n_ + j] = 0.5 * (t(i, j) + ta(i, j));
        im_[i * n_ + j] = (t(i, j) - ta(i, j)) / Complex(0.0, 2.0);
      }
    buf_.resize(n_ * n_);
  }

  /// {h(θ), h(θ + π)} = {λ_max(H(θ)), -λ_min(H(θ))}.
  std::pair<double, double> operator()(double theta) {
    ++count_;
    const double c = std::cos(theta), s = std::sin(theta);
    for (std::size_t k = 0; k < buf_.size(); ++k) buf_[k] = c * re_[k] - s * im_[k];
    for (std::size_t i = 0; i < n_; ++i) {
      buf_[i * n_ + i] = buf_[i * n_ + i].real();
      for (std::size_t j = i + 1; j < n_; ++j) buf_[j * n_ + i] = std::conj(buf_[i * n_ + j]);
    }
    const auto vals = hermitian_eigenvalues_tridiagonal(buf_, n_);
    const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
    return {*hi, -*lo};
  }

  std::size_t evaluations() const { return count_; }

 private:
  std::size_t n_;
  std::vector<Complex> re_, im_, buf_;
  std::size_t count_ = 0;
};

// Upper bound on max_{θ∈[a,b]} of a support function with h(a) = fa, h(b) = fb, b - a < π.
// Direction convention: h(θ) = max_{z∈W} Re(e^{iθ} z) = max x cos θ - y sin θ.
inline double wedge_bound(double a, double b, double fa, double fb) {
  const double det = std::sin(a - b);
  if (det == 0.0) return std::max(fa, fb);
  const double x = (-fa * std::sin(b) + fb * std::sin(a)) / det;
  const double y = (std::cos(a) * fb - std::cos(b) * fa) / det;
  // g(θ) = x cos θ - y sin θ = ρ cos(θ - φ) with ρ = |(x, -y)|, φ = atan2(-y, x).
  const double rho = std::hypot(x, y);
  const double phi = std::atan2(-y, x);
  const double two_pi = 2.0 * std::numbers::pi;
  double off = std::fmod(phi - a, two_pi);
  if (off < 0.0) off += two_pi;
  if (off <= b - a) return std::max({rho, fa, fb});
  return std::max(fa, fb);
}

struct Interval {
  double a, b;
  double fa[2], fb[2];  // branch 0: angle θ, branch 1: angle θ + π
  double ub;
  bool operator<(const Interval& o) const {
    if (ub != o.ub) return ub < o.ub;
    return a > o.a;  // deterministic: smaller start angle first on ties
  }
};

inline double interval_bound(Interval& iv, double lipschitz) {
  double ub = 0.0;
  bool first = true;
  for (int br = 0; br < 2; ++br) {
    const double shift = br == 0 ? 0.0 : std::numbers::pi;
    const double lip = 0.5 * (iv.fa[br] + iv.fb[br]) + 0.5 * lipschitz * (iv.b - iv.a);
    const double wedge = wedge_bound(iv.a + shift, iv.b + shift, iv.fa[br], iv.fb[br]);
    const double v = std::min(lip, wedge);
    ub = first ? v : std::max(ub, v);
    first = false;
  }
  iv.ub = ub;
  return ub;
}

}  // namespace detail

/// w(T) with a certificate: value ≤ w(T) ≤ value + certified_error, certified_error ≤ tol.
inline RadiusEstimate numerical_radius(const ComplexMatrix& t, double tol) {
  if (!t.is_square()) throw Error(ErrorCode::NonSquare, "numerical radius needs a square matrix");
  if (!(tol > 0.0) || !std::isfinite(tol)) throw Error(ErrorCode::InvalidTolerance, "tol must be positive");
  const double lip = operator_norm(t);
  if (t.empty() || lip == 0.0) return {};

  constexpr double pi = std::numbers::pi;
  detail::SupportEvaluator eval(t);

  double best = -1.0, best_angle = 0.0;
  auto offer = [&](double v, double angle) {
    if (angle >= 2.0 * pi) angle -= 2.0 * pi;
    if (v > best || (v == best && angle < best_angle)) {
      best = v;
      best_angle = angle;
    }
  };
  auto sample = [&](double theta) {
    const auto [top, bottom] = eval(theta);
    offer(top, theta);
    offer(bottom, theta + pi);
    return std::pair{top, bottom};
  };

  const std::size_t n0 = detail::radius_initial_intervals;
  std::vector<std::pair<double, double>> grid(n0 + 1);
  for (std::size_t k = 0; k < n0; ++k) grid[k] = sample(pi * static_cast<double>(k) / n0);
  grid[n0] = {grid[0].second, grid[0].first};  // H(π) = -H(0)

  std::priority_queue<detail::Interval> queue;
  double min_width = pi / n0;
  for (std::size_t k = 0; k < n0; ++k) {
    detail::Interval iv{pi * k / n0, pi * (k + 1) / n0, {grid[k].first, grid[k].second},
                        {grid[k + 1].first, grid[k + 1].second}, 0.0};
    detail::interval_bound(iv, lip);
    queue.push(iv);
  }

  while (!queue.empty() && queue.top().ub - best > tol) {
    if (eval.evaluations() >= detail::radius_max_evaluations)
      throw ConvergenceError("numerical radius refinement cap reached", queue.top().ub - best, best);
    detail::Interval iv = queue.top();
    queue.pop();
    const double mid = 0.5 * (iv.a + iv.b);
    if (!(mid > iv.a && mid < iv.b)) continue;  // interval exhausted at machine precision
    const auto [top, bottom] = sample(mid);
    detail::Interval left{iv.a, mid, {iv.fa[0], iv.fa[1]}, {top, bottom}, 0.0};
    detail::Interval right{mid, iv.b, {top, bottom}, {iv.fb[0], iv.fb[1]}, 0.0};
    detail::interval_bound(left, lip);
    detail::interval_bound(right, lip);
    queue.push(left);
    queue.push(right);
    min_width = std::min(min_width, mid - iv.a);
  }

  // Golden-section polish of the maximizer; only ever raises `best`.
  {
    const bool lower_branch = best_angle >= pi;
    const double center = lower_branch ? best_angle - pi : best_angle;
    auto branch_value = [&](double theta) {
      const auto [top, bottom] = sample(theta);
      return lower_branch ? bottom : top;
    };
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = center - min_width, hi = center + min_width;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = branch_value(x1), f2 = branch_value(x2);
    for (int it = 0; it < detail::radius_golden_steps && hi - lo > 1e-15; ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = branch_value(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = branch_value(x1);
      }
    }
  }
  // Angles produced by the polish may fall outside [0, 2π).
  best_angle = std::fmod(best_angle, 2.0 * pi);
  if (best_angle < 0.0) best_angle += 2.0 * pi;

  const double global_ub = queue.empty() ? best : std::max(queue.top().ub, best);
  return {std::max(best, 0.0), std::max(global_ub - best, 0.0), best_angle, eval.evaluations()};
}

/// w(T) at the library default tolerance 1e-9 (1 + ‖T‖).
inline RadiusEstimate numerical_radius(const ComplexMatrix& t) {
  if (!t.is_square()) throw Error(ErrorCode::NonSquare, "numerical radius needs a square matrix");
  return numerical_radius(t, default_tolerance(operator_norm(t)));
}

/// λ_max(H(θ)), the support function of W(T) in direction θ.
inline double support_function(const ComplexMatrix& t, double theta) {
  if (!t.is_square()) throw Error(ErrorCode::NonSquare, "support function needs a square matrix");
  if (t.empty()) return 0.0;
  detail::SupportEvaluator eval(t);
  return eval(theta).first;
}

/// k Rayleigh quotients ⟨T x_j, x_j⟩ at seeded pseudo-random unit vectors.
inline std::vector<Complex> rayleigh_samples(const ComplexMatrix& t, std::size_t k, std::uint64_t seed) {
  if (!t.is_square()) throw Error(ErrorCode::NonSquare, "Rayleigh samples need a square matrix");
  if (k == 0) throw Error(ErrorCode::InvalidParameters, "sample count must be >= 1");
  SplitMix64 rng(seed);
  std::vector<Complex> out;
  out.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    const Vector x = rng.unit_vector(t.rows());
    out.push_back(quadratic_form(t, x));
  }
  return out;
}

}  // namespace numrad
