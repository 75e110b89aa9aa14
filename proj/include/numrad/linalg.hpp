#pragma once

// Dense complex linear algebra: Hermitian eigensolver (cyclic Jacobi), general eigenvalues
// (Householder Hessenberg + shifted QR), and the spectral functions built on them.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

#include "numrad/error.hpp"
#include "numrad/matrix.hpp"

namespace numrad {

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k pairs with values[k]
};

struct PolarParts {
  ComplexMatrix unitary;
  ComplexMatrix modulus;
};

/// f(t) = t^exponent on [0, inf), with 0^0 = 1.
struct PowerFunction {
  double exponent = 1.0;

  explicit PowerFunction(double e = 1.0) : exponent(e) {
    if (!(e >= 0.0) || !std::isfinite(e))
      throw Error(ErrorCode::InvalidExponent, "power exponent must be finite and >= 0");
  }

  double operator()(double t) const { return std::pow(t, exponent); }
};

namespace linalg_tol {
inline constexpr double hermitian_rel = 1e-10;
inline constexpr double jacobi_offdiag_rel = 1e-13;
inline constexpr int jacobi_max_sweeps = 100;
inline constexpr double qr_deflation = 1e-13;
inline constexpr double clamp_negative = 1e-10;
inline constexpr double negative_eigen_rel = 1e-8;
}  // namespace linalg_tol

namespace detail {

inline void require_square(const ComplexMatrix& m, const char* what) {
  if (!m.is_square()) throw Error(ErrorCode::NonSquare, what);
}

// Returns (H + H^*)/2 after checking the asymmetry against the tolerance. Frobenius norms are
// used for both sides of the check.
inline ComplexMatrix symmetrized(const ComplexMatrix& h) {
  require_square(h, "Hermitian eigensolver needs a square matrix");
  const ComplexMatrix ha = h.adjoint();
  const double asym = (h - ha).frobenius_norm();
  const double scale = h.frobenius_norm();
  if (asym > linalg_tol::hermitian_rel * (1.0 + scale))
    throw Error(ErrorCode::NotHermitian, "asymmetry " + std::to_string(asym) + " exceeds tolerance");
  return 0.5 * (h + ha);
}

// Cyclic Jacobi on a Hermitian matrix stored row-major in `a` (overwritten). When `v` is
// non-null it accumulates the rotations (must start as the identity).
inline void jacobi_sweeps(std::size_t n, std::vector<Complex>& a, std::vector<Complex>* v) {
  auto at = [&](std::size_t i, std::size_t j) -> Complex& { return a[i * n + j]; };
  double frob2 = 0.0;
  for (const auto& z : a) frob2 += std::norm(z);
  const double threshold = linalg_tol::jacobi_offdiag_rel * std::sqrt(frob2);

  for (std::size_t i = 0; i < n; ++i) at(i, i) = at(i, i).real();

  double off = 0.0;
  for (int sweep = 0; sweep <= linalg_tol::jacobi_max_sweeps; ++sweep) {
    off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * std::norm(at(p, q));
    off = std::sqrt(off);
    if (off <= threshold) return;
    if (sweep == linalg_tol::jacobi_max_sweeps) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = at(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const double app = at(p, p).real();
        const double aqq = at(q, q).real();
        // Skip rotations that cannot change the diagonal in floating point.
        if (std::abs(app) + 100.0 * r == std::abs(app) && std::abs(aqq) + 100.0 * r == std::abs(aqq)) {
          at(p, q) = at(q, p) = 0.0;
          continue;
        }
        const Complex phase = apq / r;  // e^{i phi}
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex jpq = s * phase;             // J(p,q)
        const Complex jqp = -s * std::conj(phase);  // J(q,p)

        // A <- A J
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = at(k, p);
          const Complex akq = at(k, q);
          at(k, p) = akp * c + akq * jqp;
          at(k, q) = akp * jpq + akq * c;
        }
        // A <- J^* A
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = at(p, k);
          const Complex aqk = at(q, k);
          at(p, k) = c * apk + std::conj(jqp) * aqk;
          at(q, k) = std::conj(jpq) * apk + c * aqk;
        }
        at(p, p) = app - t * r;
        at(q, q) = aqq + t * r;
        at(p, q) = at(q, p) = 0.0;

        if (v != nullptr) {
          auto& vm = *v;
          for (std::size_t k = 0; k < n; ++k) {
            const Complex vkp = vm[k * n + p];
            const Complex vkq = vm[k * n + q];
            vm[k * n + p] = vkp * c + vkq * jqp;
            vm[k * n + q] = vkp * jpq + vkq * c;
          }
        }
      }
    }
  }
  throw ConvergenceError("Jacobi sweep cap reached", off);
}

}  // namespace detail

/// Eigendecomposition of a Hermitian matrix; values ascending, deterministic ordering on ties.
inline HermitianEigen hermitian_eigen(const ComplexMatrix& h) {
  const ComplexMatrix hs = detail::symmetrized(h);
  const std::size_t n = hs.rows();
  std::vector<Complex> a(hs.entries().begin(), hs.entries().end());
  ComplexMatrix id = ComplexMatrix::identity(n);
  std::vector<Complex> v(id.entries().begin(), id.entries().end());
  detail::jacobi_sweeps(n, a, &v);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a[i * n + i].real() < a[j * n + j].real(); });

  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.values[k] = a[src * n + src].real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v[i * n + src];
  }
  return out;
}

/// Eigenvalues only (ascending). Skips the symmetry check; the caller guarantees Hermitian input.
inline std::vector<double> hermitian_eigenvalues_unchecked(std::vector<Complex> a, std::size_t n) {
  detail::jacobi_sweeps(n, a, nullptr);
  std::vector<double> vals(n);
  for (std::size_t i = 0; i < n; ++i) vals[i] = a[i * n + i].real();
  std::sort(vals.begin(), vals.end());
  return vals;
}

inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
  const ComplexMatrix hs = detail::symmetrized(h);
  return hermitian_eigenvalues_unchecked(std::vector<Complex>(hs.entries().begin(), hs.entries().end()),
                                         hs.rows());
}

namespace detail {

// Implicit QL on a real symmetric tridiagonal matrix; d = diagonal, e[i] couples i and i+1.
// Eigenvalues are left in d (unordered).
inline void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = d.size();
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m != l) {
        if (iter++ == 60) throw ConvergenceError("tridiagonal QL iteration cap reached", std::abs(e[l]));
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? r : -r));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (std::size_t i = m; i-- > l;) {
          const double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace detail

/// Eigenvalues (unordered) of a Hermitian matrix given row-major in `a` (overwritten), by
/// Householder reduction to real tridiagonal form and implicit QL. Values only; several times
/// cheaper than Jacobi, used by the numerical-radius angle scan.
inline std::vector<double> hermitian_eigenvalues_tridiagonal(std::vector<Complex>& a, std::size_t n) {
  auto at = [&](std::size_t i, std::size_t j) -> Complex& { return a[i * n + j]; };
  std::vector<Complex> v(n), p(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double xnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm2 += std::norm(at(i, k));
    const double tail2 = xnorm2 - std::norm(at(k + 1, k));
    if (tail2 == 0.0) continue;
    const double xnorm = std::sqrt(xnorm2);
    const Complex x0 = at(k + 1, k);
    const Complex ph = std::abs(x0) == 0.0 ? Complex(1.0) : x0 / std::abs(x0);
    const std::size_t m = n - k - 1;
    for (std::size_t i = 0; i < m; ++i) v[i] = at(k + 1 + i, k);
    v[0] += ph * xnorm;
    double vn2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) vn2 += std::norm(v[i]);
    const double tau = 2.0 / vn2;
    // p = tau A22 v, K = tau (v^* p) / 2, w = p - K v, A22 -= v w^* + w v^*.
    Complex vp{};
    for (std::size_t i = 0; i < m; ++i) {
      Complex s{};
      for (std::size_t j = 0; j < m; ++j) s += at(k + 1 + i, k + 1 + j) * v[j];
      p[i] = tau * s;
      vp += std::conj(v[i]) * p[i];
    }
    const double kk = 0.5 * tau * vp.real();
    for (std::size_t i = 0; i < m; ++i) p[i] -= kk * v[i];
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        at(k + 1 + i, k + 1 + j) -= v[i] * std::conj(p[j]) + p[i] * std::conj(v[j]);
    at(k + 1, k) = -ph * xnorm;
    at(k, k + 1) = std::conj(at(k + 1, k));
    for (std::size_t i = k + 2; i < n; ++i) at(i, k) = at(k, i) = 0.0;
  }
  std::vector<double> d(n), e(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i] = at(i, i).real();
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = std::abs(at(i + 1, i));
  detail::tridiagonal_ql(d, e);
  return d;
}

/// λ_min and λ_max of a Hermitian matrix.
inline std::pair<double, double> hermitian_extremes(const ComplexMatrix& h) {
  const auto vals = hermitian_eigenvalues(h);
  if (vals.empty()) return {0.0, 0.0};
  return {vals.front(), vals.back()};
}

/// T^* T with the Hermitian structure enforced exactly.
inline ComplexMatrix gram(const ComplexMatrix& t) { return hermitian_part(t.adjoint() * t); }

/// Singular values, descending. Computed from the Hermitian dilation [[0, T], [T^*, 0]] so
/// small singular values keep absolute accuracy.
inline std::vector<double> singular_values(const ComplexMatrix& t) {
  const std::size_t r = t.rows(), c = t.cols(), n = r + c;
  if (n == 0) return {};
  std::vector<Complex> d(n * n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      d[i * n + (r + j)] = t(i, j);
      d[(r + j) * n + i] = std::conj(t(i, j));
    }
  auto vals = hermitian_eigenvalues_unchecked(std::move(d), n);
  // The dilation spectrum is {±σ_k} plus |r - c| zeros; the top min(r, c) values are the σ_k.
  const std::size_t k = std::min(r, c);
  std::vector<double> sv(k);
  for (std::size_t i = 0; i < k; ++i) sv[i] = std::max(vals[n - 1 - i], 0.0);
  return sv;
}

/// ‖T‖ = σ_max(T).
inline double operator_norm(const ComplexMatrix& t) {
  if (t.empty()) return 0.0;
  const ComplexMatrix g = t.rows() < t.cols() ? hermitian_part(t * t.adjoint()) : gram(t);
  const auto vals = hermitian_eigenvalues_unchecked(std::vector<Complex>(g.entries().begin(), g.entries().end()),
                                                    g.rows());
  return std::sqrt(std::max(vals.back(), 0.0));
}

/// ℓ(T) = inf ‖Tx‖ over unit x, i.e. σ_min(T).
inline double min_gauge(const ComplexMatrix& t) {
  detail::require_square(t, "min_gauge needs a square matrix");
  if (t.empty()) return 0.0;
  return singular_values(t).back();
}

/// V diag(f(λ)) V^* for a positive semidefinite P. Eigenvalues in [-1e-8(1+‖P‖), 0) are clamped.
inline ComplexMatrix positive_power(const ComplexMatrix& p, PowerFunction f) {
  const HermitianEigen e = hermitian_eigen(p);
  const std::size_t n = e.values.size();
  if (n == 0) return p;
  const double pnorm = std::max(std::abs(e.values.front()), std::abs(e.values.back()));
  if (e.values.front() < -linalg_tol::negative_eigen_rel * (1.0 + pnorm))
    throw Error(ErrorCode::NegativeEigenvalue,
                "smallest eigenvalue " + std::to_string(e.values.front()) + " is not >= 0");
  std::vector<double> fv(n);
  for (std::size_t k = 0; k < n; ++k) fv[k] = f(std::max(e.values[k], 0.0));

  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Complex s{};
      for (std::size_t k = 0; k < n; ++k) s += e.vectors(i, k) * fv[k] * std::conj(e.vectors(j, k));
      out(i, j) = s;
      out(j, i) = std::conj(s);
    }
  for (std::size_t i = 0; i < n; ++i) out(i, i) = out(i, i).real();
  return out;
}

inline ComplexMatrix positive_power(const ComplexMatrix& p, double exponent) {
  return positive_power(p, PowerFunction(exponent));
}

/// |T| = (T^* T)^{1/2}.
inline ComplexMatrix absolute_value(const ComplexMatrix& t) {
  detail::require_square(t, "absolute value needs a square matrix");
  return positive_power(gram(t), 0.5);
}

namespace detail {

// Orthonormalizes `cols` in place against each other (two passes of modified Gram-Schmidt).
inline void reorthonormalize(std::vector<Vector>& cols) {
  for (std::size_t k = 0; k < cols.size(); ++k) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t j = 0; j < k; ++j) {
        const Complex proj = inner(cols[k], cols[j]);
        for (std::size_t i = 0; i < cols[k].size(); ++i) cols[k][i] -= proj * cols[j][i];
      }
    cols[k] = normalized(cols[k]);
  }
}

// Completes an orthonormal family to `count` additional orthonormal vectors by running
// Gram-Schmidt over e_1, e_2, ... in index order.
inline std::vector<Vector> orthogonal_complement(const std::vector<Vector>& basis, std::size_t n,
                                                 std::size_t count) {
  std::vector<Vector> all = basis;
  std::vector<Vector> extra;
  for (std::size_t e = 0; e < n && extra.size() < count; ++e) {
    Vector v(n);
    v[e] = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : all) {
        const Complex proj = inner(v, b);
        for (std::size_t i = 0; i < n; ++i) v[i] -= proj * b[i];
      }
    const double nv = norm(v);
    if (nv < 0.5 / std::sqrt(static_cast<double>(n))) continue;
    for (auto& z : v) z /= nv;
    all.push_back(v);
    extra.push_back(std::move(v));
  }
  return extra;
}

}  // namespace detail

/// Polar decomposition T = U |T|. For singular T the unitary maps ker|T| onto ran(T)^⊥, both
/// bases taken in index order.
inline PolarParts polar(const ComplexMatrix& t) {
  detail::require_square(t, "polar decomposition needs a square matrix");
  const std::size_t n = t.rows();
  const HermitianEigen e = hermitian_eigen(gram(t));
  std::vector<double> sv(n);
  for (std::size_t k = 0; k < n; ++k) sv[k] = std::sqrt(std::max(e.values[k], 0.0));
  const double smax = n == 0 ? 0.0 : sv.back();
  const double cutoff = 1e-12 * smax;

  // Range directions, largest singular value first so reorthonormalization disturbs least.
  std::vector<std::size_t> range_idx, kernel_idx;
  for (std::size_t k = n; k-- > 0;) {
    if (smax > 0.0 && sv[k] > cutoff)
      range_idx.push_back(k);
  }
  for (std::size_t k = 0; k < n; ++k)
    if (!(smax > 0.0 && sv[k] > cutoff)) kernel_idx.push_back(k);

  std::vector<Vector> us;
  us.reserve(n);
  for (std::size_t k : range_idx) {
    Vector u = t * e.vectors.column(k);
    for (auto& z : u) z /= sv[k];
    us.push_back(std::move(u));
  }
  detail::reorthonormalize(us);
  const auto completion = detail::orthogonal_complement(us, n, kernel_idx.size());

  PolarParts out{ComplexMatrix(n, n), ComplexMatrix(n, n)};
  auto add_outer = [&](const Vector& u, std::size_t vk) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out.unitary(i, j) += u[i] * std::conj(e.vectors(j, vk));
  };
  for (std::size_t m = 0; m < range_idx.size(); ++m) add_outer(us[m], range_idx[m]);
  for (std::size_t m = 0; m < kernel_idx.size(); ++m) add_outer(completion[m], kernel_idx[m]);

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Complex s{};
      for (std::size_t k = 0; k < n; ++k) s += e.vectors(i, k) * sv[k] * std::conj(e.vectors(j, k));
      out.modulus(i, j) = s;
      out.modulus(j, i) = std::conj(s);
    }
  for (std::size_t i = 0; i < n; ++i) out.modulus(i, i) = out.modulus(i, i).real();
  return out;
}

/// Aluthge transform |T|^{1/2} U |T|^{1/2}.
inline ComplexMatrix aluthge(const ComplexMatrix& t) {
  const PolarParts pp = polar(t);
  const ComplexMatrix root = positive_power(pp.modulus, 0.5);
  return root * pp.unitary * root;
}

/// Eigenvalues of a general square matrix: Householder reduction to upper Hessenberg form,
/// then single-shift complex QR with Wilkinson shifts and deflation.
inline std::vector<Complex> eigenvalues(const ComplexMatrix& t) {
  detail::require_square(t, "eigenvalues need a square matrix");
  const std::size_t n = t.rows();
  ComplexMatrix h = t;
  if (n == 0) return {};

  // Householder Hessenberg reduction.
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double alpha2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) alpha2 += std::norm(h(i, k));
    const double alpha = std::sqrt(alpha2);
    if (alpha == 0.0) continue;
    const Complex x0 = h(k + 1, k);
    const Complex ph = std::abs(x0) == 0.0 ? Complex(1.0) : x0 / std::abs(x0);
    Vector v(n - k - 1);
    for (std::size_t i = k + 1; i < n; ++i) v[i - k - 1] = h(i, k);
    v[0] += ph * alpha;
    const double vn2 = [&] {
      double s = 0.0;
      for (const auto& z : v) s += std::norm(z);
      return s;
    }();
    if (vn2 == 0.0) continue;
    // H <- (I - 2 v v^*/|v|^2) H (I - 2 v v^*/|v|^2)
    for (std::size_t j = 0; j < n; ++j) {
      Complex s{};
      for (std::size_t i = 0; i < v.size(); ++i) s += std::conj(v[i]) * h(k + 1 + i, j);
      s *= 2.0 / vn2;
      for (std::size_t i = 0; i < v.size(); ++i) h(k + 1 + i, j) -= v[i] * s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      Complex s{};
      for (std::size_t j = 0; j < v.size(); ++j) s += h(i, k + 1 + j) * v[j];
      s *= 2.0 / vn2;
      for (std::size_t j = 0; j < v.size(); ++j) h(i, k + 1 + j) -= s * std::conj(v[j]);
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }

  std::vector<Complex> eig(n);
  const double hnorm = h.frobenius_norm();
  const double tiny = std::numeric_limits<double>::min();
  const std::size_t max_iter = 200 * n;
  std::size_t iter_total = 0;
  std::size_t iter_since_deflation = 0;
  std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;

  while (hi >= 0) {
    // Find the start of the active unreduced block.
    std::ptrdiff_t lo = hi;
    while (lo > 0) {
      const double sub = std::abs(h(lo, lo - 1));
      double diag = std::abs(h(lo, lo)) + std::abs(h(lo - 1, lo - 1));
      if (diag == 0.0) diag = hnorm;
      if (sub <= linalg_tol::qr_deflation * diag || sub <= tiny) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      eig[hi] = h(hi, hi);
      --hi;
      iter_since_deflation = 0;
      continue;
    }
    if (++iter_total > max_iter) {
      double partial = 0.0;
      for (std::size_t k = static_cast<std::size_t>(hi) + 1; k < n; ++k) partial = std::max(partial, std::abs(eig[k]));
      throw ConvergenceError("shifted QR iteration cap reached", std::abs(h(hi, hi - 1)), partial);
    }
    ++iter_since_deflation;

    // Wilkinson shift from the trailing 2x2 block; exceptional shift on stagnation.
    Complex mu;
    const Complex a = h(hi - 1, hi - 1), b = h(hi - 1, hi), c = h(hi, hi - 1), d = h(hi, hi);
    if (iter_since_deflation % 11 == 10) {
      mu = d + 0.75 * std::abs(c);
    } else {
      const Complex tr2 = 0.5 * (a + d);
      const Complex disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
      const Complex l1 = tr2 + disc, l2 = tr2 - disc;
      mu = std::abs(l1 - d) <= std::abs(l2 - d) ? l1 : l2;
    }

    const auto ulo = static_cast<std::size_t>(lo), uhi = static_cast<std::size_t>(hi);
    for (std::size_t k = ulo; k <= uhi; ++k) h(k, k) -= mu;
    std::vector<Complex> cs(uhi - ulo), ss(uhi - ulo);
    for (std::size_t k = ulo; k < uhi; ++k) {
      const Complex x = h(k, k), y = h(k + 1, k);
      const double r = std::hypot(std::abs(x), std::abs(y));
      Complex cr = 1.0, sr = 0.0;
      if (r > 0.0) {
        cr = x / r;
        sr = y / r;
      }
      cs[k - ulo] = cr;
      ss[k - ulo] = sr;
      for (std::size_t j = k; j <= uhi; ++j) {
        const Complex hk = h(k, j), hk1 = h(k + 1, j);
        h(k, j) = std::conj(cr) * hk + std::conj(sr) * hk1;
        h(k + 1, j) = -sr * hk + cr * hk1;
      }
    }
    for (std::size_t k = ulo; k < uhi; ++k) {
      const Complex cr = cs[k - ulo], sr = ss[k - ulo];
      for (std::size_t i = ulo; i <= std::min(k + 1, uhi); ++i) {
        const Complex hk = h(i, k), hk1 = h(i, k + 1);
        h(i, k) = hk * cr + hk1 * sr;
        h(i, k + 1) = -hk * std::conj(sr) + hk1 * std::conj(cr);
      }
    }
    for (std::size_t k = ulo; k <= uhi; ++k) h(k, k) += mu;
  }
  return eig;
}

/// r(T) = max |λ| over the spectrum.
inline double spectral_radius(const ComplexMatrix& t) {
  double r = 0.0;
  for (const auto& z : eigenvalues(t)) r = std::max(r, std::abs(z));
  return r;
}

}  // namespace numrad
