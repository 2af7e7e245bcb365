#pragma once

// Elementary operators on the matrix space H^{n x n}: L_S(A) = S A,
// R_T(A) = A T and C(S, T) = L_S - R_T. H^{n x n} carries no chosen right
// module structure here; superoperators live in their real representation on
// coordinates (i n + j) * 4 + c, which is all the pseudo-resolvent needs.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qspec/eigen.hpp"
#include "qspec/error.hpp"
#include "qspec/matrix.hpp"
#include "qspec/sspec.hpp"

namespace qspec {

enum class SuperopKind { lmul, rmul, commutator, combination };

inline const char* to_string(SuperopKind k) {
  switch (k) {
    case SuperopKind::lmul: return "lmul";
    case SuperopKind::rmul: return "rmul";
    case SuperopKind::commutator: return "commutator";
    case SuperopKind::combination: return "combination";
  }
  return "?";
}

struct Superoperator {
  SuperopKind kind = SuperopKind::combination;
  std::size_t n = 0;
  RealMatrix real_rep;           // 4n^2 x 4n^2
  std::vector<QMatrix> sources;  // S for lmul, T for rmul, (S, T) for the commutator
};

struct SuperopOptions {
  std::size_t max_n = 4;  // 4n^2 <= 64 keeps eigenvalues inside the QR accuracy budget
};

namespace detail {

inline void check_superop_size(const QMatrix& s, const SuperopOptions& opt) {
  if (!s.square()) throw DimensionMismatch("superoperator source must be square");
  if (s.rows() == 0) throw DimensionMismatch("superoperator source is empty");
  if (s.rows() > opt.max_n)
    throw InvalidArgument("superoperator dimension " + std::to_string(s.rows()) + " exceeds the cap " +
                          std::to_string(opt.max_n));
}

inline void put_block(RealMatrix& m, std::size_t row, std::size_t col, const RealMatrix& b) {
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) m(4 * row + r, 4 * col + c) += b(r, c);
}

}  // namespace detail

/// Coordinates of A in H^{n x n}, entry (i, j) at slots (i n + j) * 4 ...
inline std::vector<double> matrix_coords(const QMatrix& a) {
  std::vector<double> out(4 * a.rows() * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto c = a(i, j).coords();
      std::copy(c.begin(), c.end(), out.begin() + 4 * (i * a.cols() + j));
    }
  return out;
}

inline QMatrix matrix_from_coords(std::span<const double> c, std::size_t n) {
  if (c.size() != 4 * n * n) throw DimensionMismatch("coordinate length does not match n");
  QMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t o = 4 * (i * n + j);
      a(i, j) = {c[o], c[o + 1], c[o + 2], c[o + 3]};
    }
  return a;
}

/// Image of A under the superoperator, through its real representation.
inline QMatrix apply(const Superoperator& op, const QMatrix& a) {
  if (a.rows() != op.n || a.cols() != op.n) throw DimensionMismatch("matrix does not match superoperator size");
  const auto x = matrix_coords(a);
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t r = 0; r < y.size(); ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < x.size(); ++c) acc += op.real_rep(r, c) * x[c];
    y[r] = acc;
  }
  return matrix_from_coords(y, op.n);
}

/// (S A)_ij = sum_k s_ik a_kj: block ((i, j), (k, j)) is left multiplication by s_ik.
inline Superoperator lmul_superop(const QMatrix& s, const SuperopOptions& opt = {}) {
  detail::check_superop_size(s, opt);
  const std::size_t n = s.rows();
  Superoperator op{SuperopKind::lmul, n, RealMatrix(4 * n * n, 4 * n * n), {s}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (s(i, k).is_zero()) continue;
      const RealMatrix b = left_mult_block(s(i, k));
      for (std::size_t j = 0; j < n; ++j) detail::put_block(op.real_rep, i * n + j, k * n + j, b);
    }
  return op;
}

/// (A T)_ij = sum_k a_ik t_kj: block ((i, j), (i, k)) is right multiplication by t_kj.
inline Superoperator rmul_superop(const QMatrix& t, const SuperopOptions& opt = {}) {
  detail::check_superop_size(t, opt);
  const std::size_t n = t.rows();
  Superoperator op{SuperopKind::rmul, n, RealMatrix(4 * n * n, 4 * n * n), {t}};
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) {
      if (t(k, j).is_zero()) continue;
      const RealMatrix b = right_mult_block(t(k, j));
      for (std::size_t i = 0; i < n; ++i) detail::put_block(op.real_rep, i * n + j, i * n + k, b);
    }
  return op;
}

/// C(S, T) = L_S - R_T.
inline Superoperator commutator_superop(const QMatrix& s, const QMatrix& t, const SuperopOptions& opt = {}) {
  if (s.rows() != t.rows() || s.cols() != t.cols())
    throw DimensionMismatch("commutator needs S and T of the same size");
  const Superoperator l = lmul_superop(s, opt), r = rmul_superop(t, opt);
  return {SuperopKind::commutator, l.n, l.real_rep - r.real_rep, {s, t}};
}

/// alpha X + beta Y.
inline Superoperator combine(double alpha, const Superoperator& x, double beta, const Superoperator& y) {
  if (x.n != y.n) throw DimensionMismatch("superoperators act on different matrix spaces");
  std::vector<QMatrix> src = x.sources;
  src.insert(src.end(), y.sources.begin(), y.sources.end());
  return {SuperopKind::combination, x.n, alpha * x.real_rep + beta * y.real_rep, std::move(src)};
}

/// R_q(M) = M^2 - 2 Re(q) M + |q|^2 I on the real representation.
inline RealMatrix superop_pseudo_resolvent(const Superoperator& op, const Quaternion& q) {
  RealMatrix r = op.real_rep * op.real_rep - (2.0 * q.real()) * op.real_rep;
  for (std::size_t k = 0; k < r.rows(); ++k) r(k, k) += q.norm2();
  return r;
}

/// Spheres from the complex eigenvalues of the real representation. Real
/// eigenvalues count one each, conjugate pairs count one per pair.
inline SpectrumReport superop_s_spectrum(const Superoperator& op, const SpectrumOptions& opt = {}) {
  SpectrumReport rep;
  rep.operator_norm = max_singular(op.real_rep);
  rep.tol = opt.merge_tol.value_or(default_merge_tol(rep.operator_norm));
  rep.spheres = spheres_from_eigenvalues(eig(op.real_rep, opt.eig), rep.tol, SphereWeighting::real_pairs);
  rep.classes.assign(rep.spheres.size(), SpectralClass::point);
  return rep;
}

// ---- theorem checks ------------------------------------------------------------

struct CheckReport {
  bool inclusion = true;
  bool endpoint = true;
  bool equality = true;
  std::vector<SpectralSphere> witnesses;  // spheres outside the band set
  std::vector<Band> uncovered;            // bands not exhausted by the spectrum
  std::vector<SpectralSphere> spectrum;
  double tol = 0.0;
};

namespace detail {

inline double check_tol(double scale) { return 1e-6 * (1.0 + scale); }

// The band set is exhausted only when every band is a single sphere that the
// spectrum hits; a band of positive width is a continuum no finite set covers.
inline std::vector<Band> uncovered_bands(const BandSet& bands, const std::vector<SpectralSphere>& spheres,
                                         double tol) {
  std::vector<Band> out;
  for (const auto& b : bands.bands) {
    const bool degenerate = b.rmax - b.rmin <= tol;
    const bool hit = std::any_of(spheres.begin(), spheres.end(), [&](const SpectralSphere& s) {
      return std::abs(s.a - b.a) <= tol && std::abs(s.r - b.rmin) <= tol;
    });
    if (!degenerate || !hit) out.push_back(b);
  }
  return out;
}

}  // namespace detail

/// sigma_S(C(S, T)) against sigma_S(S) - sigma_S(T): inclusion in the band set,
/// endpoint form (each sphere is [lambda - mu] for complex eigenvalues of the
/// complex adjoints), and whether the spectrum exhausts the band set.
inline CheckReport ct1_check(const QMatrix& s, const QMatrix& t, std::optional<double> tol = {},
                             const SuperopOptions& opt = {}) {
  const Superoperator c = commutator_superop(s, t, opt);
  const auto ss = s_spectrum(s), ts = s_spectrum(t);
  CheckReport rep;
  rep.tol = tol.value_or(detail::check_tol(ss.operator_norm + ts.operator_norm));
  rep.spectrum = superop_s_spectrum(c).spheres;
  const BandSet bands = band_arithmetic(BandOp::diff, ss.spheres, ts.spheres);
  const auto ls = eig(complex_adjoint_rep(s)), mt = eig(complex_adjoint_rep(t));
  for (const auto& sph : rep.spectrum) {
    if (!bands.contains(sph.a, sph.r, rep.tol)) {
      rep.inclusion = false;
      rep.witnesses.push_back(sph);
    }
    bool found = false;
    for (const auto& l : ls)
      for (const auto& m : mt) {
        const Complex d = l - m;
        if (std::abs(d.real() - sph.a) <= rep.tol && std::abs(std::abs(d.imag()) - sph.r) <= rep.tol) found = true;
      }
    if (!found) rep.endpoint = false;
  }
  rep.uncovered = detail::uncovered_bands(bands, rep.spectrum, rep.tol);
  rep.equality = rep.inclusion && rep.uncovered.empty();
  return rep;
}

struct Cop1Report {
  bool commuting = true;
  bool inclusion = true;  // sigma_S(A + B) within sigma_S(A) + sigma_S(B)
  bool apo = true;        // every sphere of A + B has vanishing bounded-below margin, and lies in the band set
  bool sus = true;        // same for the adjoints
  std::vector<SpectralSphere> witnesses;
  std::vector<SpectralSphere> spectrum;
  double tol = 0.0;

  bool passed() const { return inclusion && apo && sus; }
};

inline bool commute(const QMatrix& a, const QMatrix& b, double rel = 1e-10) {
  const double scale = operator_norm(a) * operator_norm(b);
  return operator_norm(a * b - b * a) <= rel * scale;
}

/// Spheres of A + B inside the Minkowski sum for commuting A, B.
inline Cop1Report cop1_check(const QMatrix& a, const QMatrix& b, std::optional<double> tol = {}) {
  if (a.rows() != b.rows() || !a.square() || !b.square())
    throw DimensionMismatch("cop1 check needs square matrices of equal size");
  if (!commute(a, b)) throw NotCommuting("AB - BA exceeds 1e-10 |A| |B|");
  const QMatrix sum = a + b;
  const auto sa = s_spectrum(a), sb = s_spectrum(b), ssum = s_spectrum(sum);
  Cop1Report rep;
  rep.tol = tol.value_or(detail::check_tol(sa.operator_norm + sb.operator_norm));
  rep.spectrum = ssum.spheres;
  const BandSet bands = band_arithmetic(BandOp::sum, sa.spheres, sb.spheres);
  const double nrm = ssum.operator_norm;
  const double margin_tol = rep.tol * (1.0 + nrm * nrm);
  for (const auto& sph : rep.spectrum) {
    if (!bands.contains(sph.a, sph.r, rep.tol)) {
      rep.inclusion = false;
      rep.witnesses.push_back(sph);
    }
    const Quaternion q(sph.a, sph.r, 0.0, 0.0);
    const auto m = apo_sus_certificates(sum, q);
    if (!(m.apo_margin <= margin_tol) || !bands.contains(sph.a, sph.r, rep.tol)) rep.apo = false;
    if (!(m.sus_margin <= margin_tol)) rep.sus = false;
  }
  const BandSet adj_bands = band_arithmetic(BandOp::sum, s_spectrum(adjoint(a)).spheres, s_spectrum(adjoint(b)).spheres);
  for (const auto& sph : s_spectrum(adjoint(sum)).spheres)
    if (!adj_bands.contains(sph.a, sph.r, rep.tol)) rep.sus = false;
  return rep;
}

}  // namespace qspec
