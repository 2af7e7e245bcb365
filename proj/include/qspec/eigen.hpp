#pragma once

// Dense eigenvalue engine: balancing, Householder reduction to Hessenberg form
// and shifted complex QR with deflation for general matrices; Householder
// tridiagonalization with implicit QL for symmetric ones.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "qspec/error.hpp"
#include "qspec/matrix.hpp"

namespace qspec {

struct EigOptions {
  /// Total QR iterations allowed are sweeps_per_dim * n.
  std::size_t sweeps_per_dim = 100;
};

namespace detail {

inline double cabs1(const Complex& z) { return std::abs(z.real()) + std::abs(z.imag()); }

inline void require_finite(const ComplexMatrix& a) {
  for (const auto& z : a.raw())
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw NoConvergence("eigenvalue iteration met a non-finite entry");
}

// Parlett-Reinsch scaling by powers of two; a similarity, so eigenvalues are unchanged.
inline void balance(ComplexMatrix& a) {
  constexpr double radix = 2.0;
  constexpr double sqrdx = radix * radix;
  const std::size_t n = a.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += cabs1(a(j, i));
        r += cabs1(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        const double inv = 1.0 / f;
        for (std::size_t j = 0; j < n; ++j) a(i, j) *= inv;
        for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
}

inline void hessenberg(ComplexMatrix& a) {
  const std::size_t n = a.rows();
  if (n < 3) return;
  std::vector<Complex> v;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;
    double tail = 0.0;
    for (std::size_t i = 1; i < m; ++i) tail += std::norm(a(k + 1 + i, k));
    if (tail == 0.0) continue;
    const Complex x0 = a(k + 1, k);
    const double xnorm = std::sqrt(tail + std::norm(x0));
    const Complex phase = std::abs(x0) == 0.0 ? Complex(1.0) : x0 / std::abs(x0);
    const Complex alpha = -phase * xnorm;
    v.assign(m, Complex{});
    for (std::size_t i = 0; i < m; ++i) v[i] = a(k + 1 + i, k);
    v[0] -= alpha;
    double vnorm = 0.0;
    for (const auto& e : v) vnorm += std::norm(e);
    vnorm = std::sqrt(vnorm);
    for (auto& e : v) e /= vnorm;

    for (std::size_t j = k; j < n; ++j) {
      Complex s{};
      for (std::size_t i = 0; i < m; ++i) s += std::conj(v[i]) * a(k + 1 + i, j);
      s *= 2.0;
      for (std::size_t i = 0; i < m; ++i) a(k + 1 + i, j) -= v[i] * s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      Complex s{};
      for (std::size_t i = 0; i < m; ++i) s += a(r, k + 1 + i) * v[i];
      s *= 2.0;
      for (std::size_t i = 0; i < m; ++i) a(r, k + 1 + i) -= s * std::conj(v[i]);
    }
    a(k + 1, k) = alpha;
    for (std::size_t i = 1; i < m; ++i) a(k + 1 + i, k) = Complex{};
  }
}

inline Complex wilkinson_shift(const Complex& a, const Complex& b, const Complex& c, const Complex& d) {
  const Complex half = 0.5 * (a - d);
  const Complex disc = std::sqrt(half * half + b * c);
  const Complex mid = 0.5 * (a + d);
  const Complex mu1 = mid + disc;
  const Complex mu2 = mid - disc;
  return std::abs(mu1 - d) <= std::abs(mu2 - d) ? mu1 : mu2;
}

// Eigenvalues of an upper Hessenberg matrix, destroying it.
inline std::vector<Complex> hessenberg_qr(ComplexMatrix& h, const EigOptions& opt) {
  const std::size_t n = h.rows();
  std::vector<Complex> ev(n);
  if (n == 0) return ev;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double hnorm = 0.0;
  for (const auto& z : h.raw()) hnorm = std::max(hnorm, cabs1(z));

  const std::size_t cap = opt.sweeps_per_dim * n;
  std::size_t total = 0;
  std::size_t its = 0;
  std::vector<double> cs;
  std::vector<Complex> sn;

  std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
  while (hi >= 0) {
    std::ptrdiff_t l = hi;
    while (l > 0) {
      double s = cabs1(h(l - 1, l - 1)) + cabs1(h(l, l));
      if (s == 0.0) s = hnorm;
      if (cabs1(h(l, l - 1)) <= eps * s) {
        h(l, l - 1) = Complex{};
        break;
      }
      --l;
    }
    if (l == hi) {
      ev[hi] = h(hi, hi);
      --hi;
      its = 0;
      continue;
    }
    if (++total > cap)
      throw NoConvergence("QR iteration exceeded " + std::to_string(cap) + " iterations");
    ++its;

    Complex mu;
    if (its % 11 == 0) {
      // exceptional shift to break cycles
      mu = h(hi, hi) + Complex(0.75 * cabs1(h(hi, hi - 1)), 0.4375 * cabs1(h(hi, hi - 1)));
    } else {
      mu = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
    }

    const std::size_t lo = static_cast<std::size_t>(l);
    const std::size_t top = static_cast<std::size_t>(hi);
    for (std::size_t i = lo; i <= top; ++i) h(i, i) -= mu;
    cs.assign(top - lo, 0.0);
    sn.assign(top - lo, Complex{});
    for (std::size_t k = lo; k < top; ++k) {
      const Complex x = h(k, k), y = h(k + 1, k);
      const double ax = std::abs(x);
      const double r = std::hypot(ax, std::abs(y));
      double c;
      Complex s;
      if (r == 0.0) {
        c = 1.0;
        s = Complex{};
      } else if (ax == 0.0) {
        c = 0.0;
        s = std::conj(y) / std::abs(y);
      } else {
        c = ax / r;
        s = (x / ax) * std::conj(y) / r;
      }
      cs[k - lo] = c;
      sn[k - lo] = s;
      for (std::size_t j = k; j <= top; ++j) {
        const Complex u = h(k, j), w = h(k + 1, j);
        h(k, j) = c * u + s * w;
        h(k + 1, j) = -std::conj(s) * u + c * w;
      }
    }
    for (std::size_t k = lo; k < top; ++k) {
      const double c = cs[k - lo];
      const Complex s = sn[k - lo];
      const std::size_t last = std::min(k + 1, top);
      for (std::size_t i = lo; i <= last; ++i) {
        const Complex u = h(i, k), w = h(i, k + 1);
        h(i, k) = u * c + w * std::conj(s);
        h(i, k + 1) = -u * s + w * c;
      }
    }
    for (std::size_t i = lo; i <= top; ++i) h(i, i) += mu;
    for (std::size_t i = lo; i <= top; ++i)
      if (!std::isfinite(h(i, i).real()) || !std::isfinite(h(i, i).imag()))
        throw NoConvergence("QR iteration produced a non-finite value");
  }
  return ev;
}

}  // namespace detail

/// All eigenvalues of a square complex matrix, with algebraic multiplicity.
inline std::vector<Complex> eig(ComplexMatrix m, const EigOptions& opt = {}) {
  if (!m.square()) throw DimensionMismatch("eig requires a square matrix");
  detail::require_finite(m);
  detail::balance(m);
  detail::hessenberg(m);
  detail::require_finite(m);
  return detail::hessenberg_qr(m, opt);
}

inline std::vector<Complex> eig(const RealMatrix& m, const EigOptions& opt = {}) {
  return eig(to_complex(m), opt);
}

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  RealMatrix vectors;          // column k pairs with values[k]; empty unless requested
};

/// Symmetric eigen-decomposition: Householder tridiagonalization + implicit QL.
inline SymmetricEigen symmetric_eig(const RealMatrix& sym, bool want_vectors = false) {
  if (!sym.square()) throw DimensionMismatch("symmetric_eig requires a square matrix");
  const std::size_t n = sym.rows();
  SymmetricEigen out;
  if (n == 0) return out;
  RealMatrix a = sym;
  std::vector<double> d(n), e(n);

  for (std::size_t i = n - 1; i > 0; --i) {
    const std::size_t l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (std::size_t k = 0; k < i; ++k) scale += std::abs(a(i, k));
      if (scale == 0.0) {
        e[i] = a(i, l);
      } else {
        for (std::size_t k = 0; k < i; ++k) {
          a(i, k) /= scale;
          h += a(i, k) * a(i, k);
        }
        double f = a(i, l);
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        a(i, l) = f - g;
        f = 0.0;
        for (std::size_t j = 0; j < i; ++j) {
          if (want_vectors) a(j, i) = a(i, j) / h;
          g = 0.0;
          for (std::size_t k = 0; k <= j; ++k) g += a(j, k) * a(i, k);
          for (std::size_t k = j + 1; k < i; ++k) g += a(k, j) * a(i, k);
          e[j] = g / h;
          f += e[j] * a(i, j);
        }
        const double hh = f / (h + h);
        for (std::size_t j = 0; j < i; ++j) {
          f = a(i, j);
          e[j] = g = e[j] - hh * f;
          for (std::size_t k = 0; k <= j; ++k) a(j, k) -= (f * e[k] + g * a(i, k));
        }
      }
    } else {
      e[i] = a(i, l);
    }
    d[i] = h;
  }
  d[0] = 0.0;
  e[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (want_vectors) {
      if (d[i] != 0.0) {
        for (std::size_t j = 0; j < i; ++j) {
          double g = 0.0;
          for (std::size_t k = 0; k < i; ++k) g += a(i, k) * a(k, j);
          for (std::size_t k = 0; k < i; ++k) a(k, j) -= g * a(k, i);
        }
      }
      d[i] = a(i, i);
      a(i, i) = 1.0;
      for (std::size_t j = 0; j < i; ++j) a(j, i) = a(i, j) = 0.0;
    } else {
      d[i] = a(i, i);
    }
  }

  // implicit QL on the tridiagonal (d, e)
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == 60) throw NoConvergence("symmetric QL iteration did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::abs(r) : -std::abs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        bool early = false;
        for (std::size_t ii = m; ii-- > l;) {
          double f = s * e[ii];
          const double b = c * e[ii];
          e[ii + 1] = (r = std::hypot(f, g));
          if (r == 0.0) {
            d[ii + 1] -= p;
            e[m] = 0.0;
            early = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[ii + 1] - p;
          r = (d[ii] - g) * s + 2.0 * c * b;
          d[ii + 1] = g + (p = s * r);
          g = c * r - b;
          if (want_vectors) {
            for (std::size_t k = 0; k < n; ++k) {
              f = a(k, ii + 1);
              a(k, ii + 1) = s * a(k, ii) + c * f;
              a(k, ii) = c * a(k, ii) - s * f;
            }
          }
        }
        if (early) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }

  std::vector<std::size_t> order(n);
  for (std::size_t k = 0; k < n; ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });
  out.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.values[k] = d[order[k]];
  if (want_vectors) {
    out.vectors = RealMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = a(r, order[k]);
  }
  return out;
}

/// M^T M.
inline RealMatrix gram(const RealMatrix& m) {
  const std::size_t n = m.cols();
  RealMatrix g(n, n);
  for (std::size_t k = 0; k < m.rows(); ++k)
    for (std::size_t i = 0; i < n; ++i) {
      const double mki = m(k, i);
      if (mki == 0.0) continue;
      for (std::size_t j = i; j < n; ++j) g(i, j) += mki * m(k, j);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i);
  return g;
}

/// Real symmetric embedding [[X, -Y], [Y, X]] of the Hermitian Gram matrix M^H M = X + iY.
inline RealMatrix gram_embedded(const ComplexMatrix& m) {
  const std::size_t n = m.cols();
  RealMatrix g(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex s{};
      for (std::size_t k = 0; k < m.rows(); ++k) s += std::conj(m(k, i)) * m(k, j);
      g(i, j) = s.real();
      g(n + i, n + j) = s.real();
      g(i, n + j) = -s.imag();
      g(n + i, j) = s.imag();
    }
  return g;
}

/// Smallest singular value via the smallest eigenvalue of the Gram matrix.
inline double min_singular(const RealMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  const auto ev = symmetric_eig(gram(m));
  return std::sqrt(std::max(0.0, ev.values.front()));
}

inline double min_singular(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  const auto ev = symmetric_eig(gram_embedded(m));
  return std::sqrt(std::max(0.0, ev.values.front()));
}

inline double max_singular(const RealMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  const auto ev = symmetric_eig(gram(m));
  return std::sqrt(std::max(0.0, ev.values.back()));
}

/// Operator norm sup_{|phi|=1} |A phi| of a quaternionic matrix.
inline double operator_norm(const QMatrix& a) { return max_singular(real_rep(a)); }

/// Unit minimizer of |M v| together with the attained value.
struct SingularPair {
  double value = 0.0;
  std::vector<double> vector;
};

inline SingularPair min_singular_pair(const RealMatrix& m) {
  SingularPair out;
  if (m.cols() == 0) return out;
  const auto ev = symmetric_eig(gram(m), true);
  out.value = std::sqrt(std::max(0.0, ev.values.front()));
  out.vector.resize(m.cols());
  for (std::size_t r = 0; r < m.cols(); ++r) out.vector[r] = ev.vectors(r, 0);
  return out;
}

}  // namespace qspec
