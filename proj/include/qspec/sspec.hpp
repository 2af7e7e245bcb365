#pragma once

// S-spectrum of a quaternionic matrix. For a real matrix M and q = a + b u
// (u a unit imaginary), det(M^2 - 2aM + (a^2+b^2)I) = |det(M - (a+bi)I)|^2,
// so R_q(A) is singular exactly when a+bi is an eigenvalue of the real form of
// A, equivalently of its complex adjoint matrix.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qspec/eigen.hpp"
#include "qspec/error.hpp"
#include "qspec/matrix.hpp"
#include "qspec/parallel.hpp"
#include "qspec/quaternion.hpp"

namespace qspec {

/// Eigensphere {p : Re p = a, |Im p| = r}; mult counts a conjugate pair once.
struct SpectralSphere {
  double a = 0.0;
  double r = 0.0;
  int mult = 1;
};

enum class SpectralClass { point, regular, residual, continuous };

inline const char* to_string(SpectralClass c) {
  switch (c) {
    case SpectralClass::point: return "point";
    case SpectralClass::regular: return "regular";
    case SpectralClass::residual: return "residual";
    case SpectralClass::continuous: return "continuous";
  }
  return "unknown";
}

struct SpectrumReport {
  std::vector<SpectralSphere> spheres;
  std::vector<SpectralClass> classes;  // parallel to spheres
  double operator_norm = 0.0;
  double tol = 0.0;

  int total_multiplicity() const {
    int m = 0;
    for (const auto& s : spheres) m += s.mult;
    return m;
  }
};

struct PseudoResolvent {
  QMatrix matrix;
  Quaternion q;
  QMatrix source;
};

/// R_q(A) = A^2 - 2 Re(q) A + |q|^2 I. Only real coefficients appear.
inline PseudoResolvent pseudo_resolvent(const QMatrix& a, const Quaternion& q) {
  if (!a.square()) throw DimensionMismatch("pseudo-resolvent of a non-square matrix");
  QMatrix r = a * a - (2.0 * q.real()) * a;
  const double q2 = q.norm2();
  for (std::size_t i = 0; i < a.rows(); ++i) r(i, i) += Quaternion(q2);
  return {std::move(r), q, a};
}

struct SpectrumOptions {
  /// Sphere merge tolerance; default 1e-6 * (1 + |A|).
  std::optional<double> merge_tol;
  EigOptions eig;
};

/// How eigenvalues of a representation are weighted into sphere multiplicities.
enum class SphereWeighting {
  complex_adjoint,  // every eigenvalue counts one half: a quaternionic sphere shows up twice
  real_pairs,       // real eigenvalue counts one, a conjugate pair counts one
};

namespace detail {

struct ClusterPoint {
  double a, r;
  int halves;
};

inline std::vector<SpectralSphere> cluster_spheres(std::vector<ClusterPoint> pts, double tol) {
  std::sort(pts.begin(), pts.end(), [](const ClusterPoint& x, const ClusterPoint& y) {
    return x.a != y.a ? x.a < y.a : x.r < y.r;
  });
  struct Acc {
    double a0, r0, asum, rsum;
    int count, halves;
  };
  std::vector<Acc> acc;
  for (const auto& p : pts) {
    auto it = std::find_if(acc.begin(), acc.end(), [&](const Acc& c) {
      return std::abs(c.a0 - p.a) <= tol && std::abs(c.r0 - p.r) <= tol;
    });
    if (it == acc.end()) {
      acc.push_back({p.a, p.r, p.a, p.r, 1, p.halves});
    } else {
      it->asum += p.a;
      it->rsum += p.r;
      it->count += 1;
      it->halves += p.halves;
    }
  }
  std::vector<SpectralSphere> out;
  out.reserve(acc.size());
  for (const auto& c : acc) out.push_back({c.asum / c.count, c.rsum / c.count, (c.halves + 1) / 2});
  std::sort(out.begin(), out.end(), [](const SpectralSphere& x, const SpectralSphere& y) {
    return x.a != y.a ? x.a < y.a : x.r < y.r;
  });
  return out;
}

}  // namespace detail

/// Groups complex eigenvalues into spheres (Re, |Im|), merged within tol.
inline std::vector<SpectralSphere> spheres_from_eigenvalues(const std::vector<Complex>& ev, double tol,
                                                            SphereWeighting weighting) {
  std::vector<detail::ClusterPoint> pts;
  pts.reserve(ev.size());
  for (const auto& z : ev) {
    const bool real = std::abs(z.imag()) <= tol;
    const double r = real ? 0.0 : std::abs(z.imag());
    const int halves = weighting == SphereWeighting::complex_adjoint ? 1 : (real ? 2 : 1);
    pts.push_back({z.real(), r, halves});
  }
  return detail::cluster_spheres(std::move(pts), tol);
}

inline double default_merge_tol(double norm) { return 1e-6 * (1.0 + norm); }

/// Spheres of a real matrix, a conjugate pair counted once.
inline std::vector<SpectralSphere> real_matrix_spheres(const RealMatrix& m, double tol, const EigOptions& opt = {}) {
  return spheres_from_eigenvalues(eig(m, opt), tol, SphereWeighting::real_pairs);
}

inline SpectrumReport s_spectrum(const QMatrix& a, const SpectrumOptions& opt = {}) {
  if (!a.square() || a.rows() == 0) throw DimensionMismatch("S-spectrum needs a non-empty square matrix");
  SpectrumReport rep;
  rep.operator_norm = operator_norm(a);
  rep.tol = opt.merge_tol.value_or(default_merge_tol(rep.operator_norm));
  rep.spheres = spheres_from_eigenvalues(eig(complex_adjoint_rep(a), opt.eig), rep.tol,
                                         SphereWeighting::complex_adjoint);
  // Every finite-dimensional spectral point has a nontrivial kernel.
  rep.classes.assign(rep.spheres.size(), SpectralClass::point);
  return rep;
}

struct Membership {
  bool member = false;
  double margin = 0.0;
};

/// margin = sigma_min(real_rep(R_q(A))); member iff margin <= tol (1 + |A|^2).
inline Membership membership(const QMatrix& a, const Quaternion& q, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("membership tolerance must be positive");
  const double margin = min_singular(real_rep(pseudo_resolvent(a, q).matrix));
  const double nrm = operator_norm(a);
  return {margin <= tol * (1.0 + nrm * nrm), margin};
}

/// Point if R_q(A) is rank deficient, regular otherwise. At finite dimension an
/// injective R_q(A) is onto, so residual and continuous never occur.
inline SpectralClass classify(const QMatrix& a, const Quaternion& q, double tol = 1e-6) {
  return membership(a, q, tol).member ? SpectralClass::point : SpectralClass::regular;
}

struct ApoSusMargins {
  double apo_margin = 0.0;
  double sus_margin = 0.0;
};

/// Bounded-below constants of R_q(A) and R_q(A^dagger); approximate point and
/// surjectivity spectra are where they vanish.
inline ApoSusMargins apo_sus_certificates(const QMatrix& a, const Quaternion& q) {
  return {min_singular(real_rep(pseudo_resolvent(a, q).matrix)),
          min_singular(real_rep(pseudo_resolvent(adjoint(a), q).matrix))};
}

// ---- sphere-set arithmetic --------------------------------------------------

struct Band {
  double a = 0.0;
  double rmin = 0.0;
  double rmax = 0.0;
};

struct BandSet {
  std::vector<Band> bands;

  bool contains(double a, double r, double tol) const {
    return std::any_of(bands.begin(), bands.end(), [&](const Band& b) {
      return std::abs(a - b.a) <= tol && r >= b.rmin - tol && r <= b.rmax + tol;
    });
  }
  bool contains(const Quaternion& q, double tol) const { return contains(q.real(), q.imag_abs(), tol); }
};

enum class BandOp { sum, diff };

/// Minkowski sum or difference of two sphere sets. Spheres (a1, r1), (a2, r2)
/// combine into {Re = a1 +- a2, |r1 - r2| <= |Im| <= r1 + r2}: imaginary parts
/// are 3-vectors of fixed lengths, so every intermediate length is attained.
inline BandSet band_arithmetic(BandOp op, const std::vector<SpectralSphere>& s1,
                               const std::vector<SpectralSphere>& s2) {
  BandSet out;
  out.bands.reserve(s1.size() * s2.size());
  for (const auto& x : s1)
    for (const auto& y : s2)
      out.bands.push_back({op == BandOp::sum ? x.a + y.a : x.a - y.a, std::abs(x.r - y.r), x.r + y.r});
  return out;
}

// ---- grid scans of the bounded-below margin ---------------------------------

struct GridScan {
  double step = 0.0;
  std::vector<double> a_values;
  std::vector<double> r_values;
  std::vector<double> margin;  // margin[ia * r_values.size() + ir]

  double at(std::size_t ia, std::size_t ir) const { return margin[ia * r_values.size() + ir]; }
};

/// sigma_min(real_rep(R_q(A))) on the grid a in [a_lo, a_hi], r in [0, r_hi].
inline GridScan grid_scan(const QMatrix& a, double step, double a_lo, double a_hi, double r_hi) {
  if (!(step > 0.0)) throw InvalidArgument("grid step must be positive");
  GridScan g;
  g.step = step;
  const auto na = static_cast<std::size_t>(std::floor((a_hi - a_lo) / step + 1e-9)) + 1;
  const auto nr = static_cast<std::size_t>(std::floor(r_hi / step + 1e-9)) + 1;
  for (std::size_t i = 0; i < na; ++i) g.a_values.push_back(a_lo + step * static_cast<double>(i));
  for (std::size_t i = 0; i < nr; ++i) g.r_values.push_back(step * static_cast<double>(i));
  g.margin.assign(na * nr, 0.0);
  const QMatrix a2 = a * a;
  parallel_for(na * nr, [&](std::size_t idx) {
    const double re = g.a_values[idx / nr];
    const double im = g.r_values[idx % nr];
    QMatrix r = a2 - (2.0 * re) * a;
    for (std::size_t k = 0; k < a.rows(); ++k) r(k, k) += Quaternion(re * re + im * im);
    g.margin[idx] = min_singular(real_rep(r));
  });
  return g;
}

/// Interior grid points no larger than any of their eight neighbours. The
/// margin is even in r, so the row r = 0 is compared against its mirror image.
inline std::vector<SphereCoord> local_minima(const GridScan& g) {
  std::vector<SphereCoord> out;
  const std::size_t na = g.a_values.size(), nr = g.r_values.size();
  for (std::size_t ia = 1; ia + 1 < na; ++ia)
    for (std::size_t ir = 0; ir + 1 < nr; ++ir) {
      const double v = g.at(ia, ir);
      bool is_min = true;
      for (int da = -1; da <= 1 && is_min; ++da)
        for (int dr = -1; dr <= 1 && is_min; ++dr) {
          if (da == 0 && dr == 0) continue;
          const long jr = std::labs(static_cast<long>(ir) + dr);
          const std::size_t ja = ia + da;
          if (g.at(ja, static_cast<std::size_t>(jr)) < v) is_min = false;
        }
      if (is_min) out.push_back({g.a_values[ia], g.r_values[ir]});
    }
  return out;
}

}  // namespace qspec
