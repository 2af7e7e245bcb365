#pragma once

// Sequence-space extension of a quaternionic operator. Bounded vector
// sequences are paired through a constructive generalized limit; sequences of
// zero self-pairing form the null space, and an operator acts on classes
// componentwise. On the quotient, approximate point spectrum becomes point
// spectrum, which the certificates below exhibit on the unilateral shift.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qspec/eigen.hpp"
#include "qspec/error.hpp"
#include "qspec/leftmult.hpp"
#include "qspec/matrix.hpp"
#include "qspec/quaternion.hpp"
#include "qspec/sspec.hpp"

namespace qspec {

// ---- generalized limit ------------------------------------------------------

struct GeneralizedLimitConfig {
  std::size_t horizon = 100000;  // terms inspected
  int depth = 2;                 // nested window means
  double tol = 1e-6;             // agreement required between horizons

  void validate() const {
    if (horizon < 100) throw InvalidArgument("generalized-limit horizon must be at least 100");
    if (depth < 1 || depth > 4) throw InvalidArgument("generalized-limit depth must lie in [1, 4]");
    if (!(tol > 0.0)) throw InvalidArgument("generalized-limit tolerance must be positive");
  }
};

/// Bounded quaternion sequence q_1, q_2, ... given by a pure rule.
class ScalarSequence {
 public:
  using Generator = std::function<Quaternion(std::size_t)>;

  ScalarSequence(Generator gen, double bound) : gen_(std::move(gen)), bound_(bound) {
    if (!(bound >= 0.0) || !std::isfinite(bound)) throw InvalidArgument("sequence bound must be finite");
  }

  /// q_n = terms[n - 1].
  static ScalarSequence from_terms(std::vector<Quaternion> terms, double bound) {
    auto data = std::make_shared<const std::vector<Quaternion>>(std::move(terms));
    return ScalarSequence(
        [data](std::size_t n) {
          if (n == 0 || n > data->size()) throw InvalidArgument("tabulated sequence index out of range");
          return (*data)[n - 1];
        },
        bound);
  }

  double bound() const { return bound_; }

  Quaternion term(std::size_t n) const {
    const Quaternion q = gen_(n);
    if (!(q.abs() <= bound_ * (1.0 + 1e-12)))
      throw BoundViolation("term " + std::to_string(n) + " exceeds the declared bound");
    return q;
  }

  /// Terms 1..count, each evaluated once.
  std::vector<Quaternion> terms(std::size_t count) const {
    std::vector<Quaternion> out(count);
    for (std::size_t n = 1; n <= count; ++n) out[n - 1] = term(n);
    return out;
  }

 private:
  Generator gen_;
  double bound_;
};

namespace detail {

// Nested window means ending at index `end` (1-based); window length
// max(1, end / (2 depth)) keeps every term used inside [end / 2, end].
inline Quaternion window_estimate(const std::vector<Quaternion>& x, std::size_t end, int depth) {
  const std::size_t w = std::max<std::size_t>(1, end / (2 * static_cast<std::size_t>(depth)));
  const std::size_t span = static_cast<std::size_t>(depth) * (w - 1) + 1;
  std::vector<Quaternion> level(x.begin() + static_cast<std::ptrdiff_t>(end - span),
                                x.begin() + static_cast<std::ptrdiff_t>(end));
  // extended-precision prefix sums; differencing double prefixes costs
  // several digits over a 1e5-term horizon
  using Acc = std::array<long double, 4>;
  std::vector<Acc> prefix;
  for (int d = 0; d < depth; ++d) {
    prefix.assign(level.size() + 1, Acc{});
    for (std::size_t i = 0; i < level.size(); ++i) {
      const auto c = level[i].coords();
      for (int t = 0; t < 4; ++t) prefix[i + 1][t] = prefix[i][t] + c[t];
    }
    std::vector<Quaternion> next(level.size() - (w - 1));
    const auto lw = static_cast<long double>(w);
    for (std::size_t i = 0; i < next.size(); ++i) {
      double m[4];
      for (int t = 0; t < 4; ++t) m[t] = static_cast<double>((prefix[i + w][t] - prefix[i][t]) / lw);
      next[i] = Quaternion(m[0], m[1], m[2], m[3]);
    }
    level = std::move(next);
  }
  return level.front();
}

}  // namespace detail

struct GlimResult {
  Quaternion value;
  double spread = 0.0;     // largest disagreement between horizon estimates
  double allowance = 0.0;  // tol plus single-window edge leakage
};

/// Constructive generalized limit: nested window means evaluated at the
/// horizons K/2, 5K/8, ..., K. The value at K is returned when all estimates
/// agree within tol + 2 bound / w (w the shortest window); otherwise the
/// sequence is reported as outside the almost-convergent domain. The value is
/// a positive, real-weighted average of terms, so it is additive, commutes with
/// quaternion scalars on either side and with conjugation, and fixes constants.
inline GlimResult glim_detailed(const ScalarSequence& s, const GeneralizedLimitConfig& cfg) {
  cfg.validate();
  const std::size_t k = cfg.horizon;
  const auto x = s.terms(k);
  std::vector<Quaternion> est;
  for (int j = 0; j <= 4; ++j) {
    const std::size_t end = k / 2 + (k / 2) * static_cast<std::size_t>(j) / 4;
    est.push_back(detail::window_estimate(x, j == 4 ? k : end, cfg.depth));
  }
  GlimResult out;
  out.value = est.back();
  for (const auto& e : est) out.spread = std::max(out.spread, (e - out.value).abs());
  const std::size_t w_min = std::max<std::size_t>(1, (k / 2) / (2 * static_cast<std::size_t>(cfg.depth)));
  out.allowance = cfg.tol + 2.0 * s.bound() / static_cast<double>(w_min);
  if (out.spread > out.allowance)
    throw NotAlmostConvergent("window means disagree by " + std::to_string(out.spread) + " (allowed " +
                              std::to_string(out.allowance) + ")");
  return out;
}

inline Quaternion glim(const ScalarSequence& s, const GeneralizedLimitConfig& cfg) {
  return glim_detailed(s, cfg).value;
}

// ---- vector sequences -------------------------------------------------------

namespace detail {

// Finitely supported vectors of differing length are zero padded.
inline Quaternion padded_inner(const QVector& a, const QVector& b) {
  Quaternion acc;
  const std::size_t n = std::min(a.dim(), b.dim());
  for (std::size_t k = 0; k < n; ++k) acc += a[k].conj() * b[k];
  return acc;
}

inline QVector padded_combine(const QVector& a, const QVector& b, double sign) {
  QVector out(std::max(a.dim(), b.dim()));
  for (std::size_t k = 0; k < a.dim(); ++k) out[k] = a[k];
  for (std::size_t k = 0; k < b.dim(); ++k) out[k] += b[k] * sign;
  return out;
}

}  // namespace detail

inline double padded_distance(const QVector& a, const QVector& b) {
  return norm(detail::padded_combine(a, b, -1.0));
}

/// Bounded sequence phi_1, phi_2, ... of finitely supported vectors.
class VectorSequence {
 public:
  using Generator = std::function<QVector(std::size_t)>;

  VectorSequence(Generator gen, double bound) : gen_(std::move(gen)), bound_(bound) {
    if (!(bound >= 0.0) || !std::isfinite(bound)) throw InvalidArgument("sequence bound must be finite");
  }

  double bound() const { return bound_; }

  QVector term(std::size_t n) const {
    QVector v = gen_(n);
    if (!(norm(v) <= bound_ * (1.0 + 1e-12) + 1e-300))
      throw BoundViolation("vector term " + std::to_string(n) + " exceeds the declared bound");
    return v;
  }
  QVector operator()(std::size_t n) const { return term(n); }

  /// Same sequence with per-index memoization, shared by copies and guarded by a mutex.
  VectorSequence memoized() const {
    struct Cache {
      std::mutex mutex;
      std::unordered_map<std::size_t, QVector> values;
    };
    auto cache = std::make_shared<Cache>();
    auto gen = gen_;
    return VectorSequence(
        [cache, gen](std::size_t n) {
          {
            std::lock_guard lock(cache->mutex);
            if (auto it = cache->values.find(n); it != cache->values.end()) return it->second;
          }
          QVector v = gen(n);
          std::lock_guard lock(cache->mutex);
          return cache->values.emplace(n, std::move(v)).first->second;
        },
        bound_);
  }

  static VectorSequence constant(QVector v) {
    const double b = norm(v);
    return VectorSequence([v = std::move(v)](std::size_t) { return v; }, b);
  }

  friend VectorSequence operator+(const VectorSequence& s, const VectorSequence& t) {
    return VectorSequence([s, t](std::size_t n) { return detail::padded_combine(s.term(n), t.term(n), 1.0); },
                          s.bound() + t.bound());
  }
  friend VectorSequence operator-(const VectorSequence& s, const VectorSequence& t) {
    return VectorSequence([s, t](std::size_t n) { return detail::padded_combine(s.term(n), t.term(n), -1.0); },
                          s.bound() + t.bound());
  }
  /// Right scalar multiple {phi_n q}.
  friend VectorSequence operator*(const VectorSequence& s, const Quaternion& q) {
    return VectorSequence([s, q](std::size_t n) { return s.term(n) * q; }, s.bound() * q.abs());
  }

 private:
  Generator gen_;
  double bound_;
};

/// Phi(s, t) = glim <phi_n | psi_n>, the inner product of the classes [s], [t].
inline Quaternion quotient_inner(const VectorSequence& s, const VectorSequence& t, const GeneralizedLimitConfig& cfg) {
  ScalarSequence pairing([s, t](std::size_t n) { return detail::padded_inner(s.term(n), t.term(n)); },
                         s.bound() * t.bound());
  return glim(pairing, cfg);
}

/// [s] is the zero class iff Phi(s, s) = 0.
inline bool in_null_space(const VectorSequence& s, const GeneralizedLimitConfig& cfg, double tol) {
  return quotient_inner(s, s, cfg).real() <= tol;
}

// ---- banded operators on l2(N) ----------------------------------------------

enum class RuleKind { unilateral_shift, weighted_shift, matrix, generic };

/// Operator on finitely supported sequences with entry(i, j) = 0 for |i - j| > bandwidth.
class BandedOperatorRule {
 public:
  using Entry = std::function<Quaternion(std::size_t, std::size_t)>;

  BandedOperatorRule(Entry entry, std::size_t bandwidth, double norm_bound, std::optional<std::size_t> dim = {},
                     RuleKind kind = RuleKind::generic, std::string name = "generic")
      : entry_(std::move(entry)),
        bandwidth_(bandwidth),
        norm_bound_(norm_bound),
        dim_(dim),
        kind_(kind),
        name_(std::move(name)) {}

  /// (S phi)_{k+1} = phi_k.
  static BandedOperatorRule unilateral_shift() {
    return BandedOperatorRule([](std::size_t i, std::size_t j) { return Quaternion(i == j + 1 ? 1.0 : 0.0); }, 1,
                              1.0, std::nullopt, RuleKind::unilateral_shift, "unilateral-shift");
  }

  /// e_k -> e_{k+1} w_n with w_n = 1 - 1/n, n = k + 2.
  static BandedOperatorRule weighted_shift() {
    return BandedOperatorRule(
        [](std::size_t i, std::size_t j) {
          return Quaternion(i == j + 1 ? 1.0 - 1.0 / static_cast<double>(j + 2) : 0.0);
        },
        1, 1.0, std::nullopt, RuleKind::weighted_shift, "weighted-shift w_n=1-1/n");
  }

  /// Finite matrix acting on the first n coordinates.
  static BandedOperatorRule from_matrix(const QMatrix& a) {
    if (!a.square() || a.rows() == 0) throw DimensionMismatch("banded rule needs a non-empty square matrix");
    const std::size_t n = a.rows();
    return BandedOperatorRule([a](std::size_t i, std::size_t j) { return a(i, j); }, n - 1, operator_norm(a), n,
                              RuleKind::matrix, "matrix");
  }

  static BandedOperatorRule by_name(const std::string& name) {
    if (name == "unilateral-shift") return unilateral_shift();
    if (name == "weighted-shift" || name == "weighted-shift w_n=1-1/n") return weighted_shift();
    throw UnsupportedRule("unknown operator rule '" + name + "'");
  }

  std::size_t bandwidth() const { return bandwidth_; }
  double norm_bound() const { return norm_bound_; }
  std::optional<std::size_t> dim() const { return dim_; }
  RuleKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  bool is_shift() const { return kind_ == RuleKind::unilateral_shift || kind_ == RuleKind::weighted_shift; }

  Quaternion at(std::size_t i, std::size_t j) const {
    if ((i > j ? i - j : j - i) > bandwidth_) return {};
    if (dim_ && (i >= *dim_ || j >= *dim_)) return {};
    return entry_(i, j);
  }

  /// Exact image of a finitely supported vector; the result is finitely supported.
  QVector apply(const QVector& v) const {
    std::size_t len = v.dim() + bandwidth_;
    if (dim_) len = std::min(len, *dim_);
    QVector out(len);
    for (std::size_t i = 0; i < len; ++i) {
      const std::size_t lo = i > bandwidth_ ? i - bandwidth_ : 0;
      const std::size_t hi = std::min(v.dim(), i + bandwidth_ + 1);
      Quaternion acc;
      for (std::size_t j = lo; j < hi; ++j) acc += at(i, j) * v[j];
      out[i] = acc;
    }
    return out;
  }

  /// Leading n x n section.
  QMatrix section(std::size_t n) const {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t lo = i > bandwidth_ ? i - bandwidth_ : 0;
      const std::size_t hi = std::min(n, i + bandwidth_ + 1);
      for (std::size_t j = lo; j < hi; ++j) m(i, j) = at(i, j);
    }
    return m;
  }

 private:
  Entry entry_;
  std::size_t bandwidth_;
  double norm_bound_;
  std::optional<std::size_t> dim_;
  RuleKind kind_;
  std::string name_;
};

/// R_q(A) = A^2 - 2 Re(q) A + |q|^2 I as a banded rule of twice the bandwidth.
inline BandedOperatorRule pseudo_resolvent(const BandedOperatorRule& a, const Quaternion& q) {
  const double re = q.real(), q2 = q.norm2();
  const std::size_t b = a.bandwidth();
  auto entry = [a, re, q2, b](std::size_t i, std::size_t j) {
    Quaternion acc;
    const std::size_t lo = std::max(i > b ? i - b : 0, j > b ? j - b : 0);
    const std::size_t hi = std::min(i + b, j + b);
    for (std::size_t k = lo; k <= hi; ++k) acc += a.at(i, k) * a.at(k, j);
    acc -= a.at(i, j) * (2.0 * re);
    if (i == j) acc += Quaternion(q2);
    return acc;
  };
  const double nb = a.norm_bound();
  return BandedOperatorRule(entry, 2 * b, nb * nb + 2.0 * std::abs(re) * nb + q2, a.dim());
}

/// Componentwise action {phi_n} -> {A phi_n}, the extension applied to a representative.
inline VectorSequence lift(const BandedOperatorRule& a, const VectorSequence& s) {
  return VectorSequence([a, s](std::size_t n) { return a.apply(s.term(n)); }, s.bound() * a.norm_bound());
}

inline VectorSequence lift(const QMatrix& a, const VectorSequence& s) {
  return lift(BandedOperatorRule::from_matrix(a), s);
}

// ---- Weyl sequences for shifts ----------------------------------------------

inline void require_unit(const Quaternion& q) {
  if (std::abs(q.abs() - 1.0) > 1e-12) throw InvalidArgument("Weyl construction needs |q| = 1");
}

/// psi_n = n^{-1/2} sum_{k<n} e_k conj(q)^k, unit vectors with |S psi_n - psi_n q| = sqrt(2/n).
inline VectorSequence weyl_sequence(const BandedOperatorRule& shift, const Quaternion& q) {
  if (!shift.is_shift()) throw UnsupportedRule("Weyl construction is defined for shift rules only");
  require_unit(q);
  const Quaternion qc = q.conj();
  return VectorSequence(
      [qc](std::size_t n) {
        if (n == 0) throw InvalidArgument("sequence indices start at 1");
        QVector v(n);
        Quaternion p(1.0);
        const double scale = 1.0 / std::sqrt(static_cast<double>(n));
        for (std::size_t k = 0; k < n; ++k) {
          v[k] = p * scale;
          p = p * qc;
        }
        return v;
      },
      1.0 + 1e-12);
}

/// |R_q(S) psi_n| for n = 1..count, maintained incrementally: psi_{n+1} adds
/// one coordinate, which touches at most 4b+1 coordinates of the image.
inline std::vector<double> weyl_residual_norms(const BandedOperatorRule& shift, const Quaternion& q,
                                               std::size_t count) {
  if (!shift.is_shift()) throw UnsupportedRule("Weyl construction is defined for shift rules only");
  require_unit(q);
  const BandedOperatorRule r = pseudo_resolvent(shift, q);
  const std::size_t b = r.bandwidth();
  const Quaternion qc = q.conj();
  std::vector<Quaternion> image(count + b + 1);
  std::vector<double> out(count);
  double norm2 = 0.0;
  Quaternion coeff(1.0);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t lo = k > b ? k - b : 0;
    for (std::size_t i = lo; i <= k + b; ++i) {
      const double before = image[i].norm2();
      image[i] += r.at(i, k) * coeff;
      norm2 += image[i].norm2() - before;
    }
    if ((k + 1) % 4096 == 0) {
      norm2 = 0.0;
      for (std::size_t i = 0; i <= k + b; ++i) norm2 += image[i].norm2();
    }
    out[k] = std::sqrt(std::max(0.0, norm2) / static_cast<double>(k + 1));
    coeff = coeff * qc;
  }
  return out;
}

// ---- truncations -------------------------------------------------------------

namespace detail {

inline bool real_entries(const QMatrix& m) {
  return std::all_of(m.raw().begin(), m.raw().end(),
                     [](const Quaternion& q) { return q.x == 0.0 && q.y == 0.0 && q.z == 0.0; });
}

inline RealMatrix real_part(const QMatrix& m) {
  RealMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).w;
  return out;
}

// For real entries real_rep(M) is a coordinate permutation of four copies of
// M, so the N x N real matrix carries the same singular values.
inline SingularPair min_singular_pair_q(const QMatrix& m) {
  if (real_entries(m)) {
    auto p = min_singular_pair(real_part(m));
    std::vector<double> coords(4 * m.cols(), 0.0);
    for (std::size_t k = 0; k < m.cols(); ++k) coords[4 * k] = p.vector[k];
    p.vector = std::move(coords);
    return p;
  }
  return min_singular_pair(real_rep(m));
}

inline double min_singular_q(const QMatrix& m) {
  return real_entries(m) ? min_singular(real_part(m)) : min_singular(real_rep(m));
}

}  // namespace detail

struct DecayPoint {
  std::size_t n = 0;
  double value = 0.0;
};

/// sigma_min(R_q(A_N)) for the leading sections A_N.
inline std::vector<DecayPoint> truncation_margins(const BandedOperatorRule& a, const Quaternion& q,
                                                  const std::vector<std::size_t>& sizes) {
  std::vector<DecayPoint> out;
  for (std::size_t n : sizes) out.push_back({n, detail::min_singular_q(pseudo_resolvent(a.section(n), q).matrix)});
  return out;
}

/// 1, 2, 5, 10, 20, 50, ... up to limit, with limit itself appended.
inline std::vector<std::size_t> decade_points(std::size_t limit) {
  std::vector<std::size_t> pts;
  for (std::size_t base = 1; base <= limit; base *= 10)
    for (std::size_t m : {1, 2, 5})
      if (base * m <= limit) pts.push_back(base * m);
  if (pts.empty() || pts.back() != limit) pts.push_back(limit);
  return pts;
}

struct CertOptions {
  double cert_tol = 1e-4;                 // glim threshold for the point-spectrum verdict
  std::size_t decay_max = 0;              // decay table extent; 0 means the glim horizon
  std::size_t truncation_max = 200;       // sections N = 1..truncation_max on the truncation route
  std::vector<std::size_t> section_probe = {25, 50, 100, 200};
};

struct CertReport {
  Quaternion q;
  std::string route;                     // "weyl" or "truncation"
  std::vector<DecayPoint> decay_table;   // (n, |R_q(A) phi_n|)
  double glim = 0.0;                     // glim |R_q(A) phi_n|^2
  std::vector<DecayPoint> section_margins;
  double min_section_margin = 0.0;
  bool point_of_extension = false;
  std::string verdict;                   // "pass" or "rejected"
};

/// Decides whether q is an exact point-spectrum element of the extension: the
/// class of a unit witness sequence {phi_n} is an eigenvector iff
/// glim |R_q(A) phi_n|^2 = 0. Shifts at |q| = 1 use the explicit Weyl vectors;
/// otherwise the witnesses are minimizing unit vectors of R_q(A_N), applied to
/// the full operator.
inline CertReport tc1_certificate(const BandedOperatorRule& a, const Quaternion& q, const GeneralizedLimitConfig& cfg,
                                  const CertOptions& opt = {}) {
  cfg.validate();
  CertReport rep;
  rep.q = q;
  const BandedOperatorRule r = pseudo_resolvent(a, q);
  const double term_bound = r.norm_bound() * r.norm_bound();

  if (a.is_shift() && std::abs(q.abs() - 1.0) <= 1e-12) {
    rep.route = "weyl";
    const std::size_t decay_max = opt.decay_max == 0 ? cfg.horizon : opt.decay_max;
    const auto norms = weyl_residual_norms(a, q, std::max(cfg.horizon, decay_max));
    for (std::size_t n : decade_points(decay_max)) rep.decay_table.push_back({n, norms[n - 1]});
    std::vector<Quaternion> sq(cfg.horizon);
    for (std::size_t n = 0; n < cfg.horizon; ++n) sq[n] = Quaternion(norms[n] * norms[n]);
    rep.glim = glim(ScalarSequence::from_terms(std::move(sq), term_bound), cfg).real();
    rep.section_margins = truncation_margins(a, q, opt.section_probe);
  } else {
    rep.route = "truncation";
    const std::size_t nmax = opt.truncation_max;
    std::vector<Quaternion> sq(nmax);
    std::vector<DecayPoint> residuals;
    std::optional<SingularPair> fixed;  // sections stop changing past a finite dimension
    for (std::size_t n = 1; n <= nmax; ++n) {
      SingularPair p;
      if (a.dim() && n >= *a.dim() && fixed) {
        p = *fixed;
      } else {
        p = detail::min_singular_pair_q(pseudo_resolvent(a.section(n), q).matrix);
        if (a.dim() && n >= *a.dim()) fixed = p;
      }
      rep.section_margins.push_back({n, p.value});
      const double res = norm(r.apply(from_real_coords(p.vector)));
      residuals.push_back({n, res});
      sq[n - 1] = Quaternion(res * res);
    }
    for (std::size_t n : decade_points(nmax)) rep.decay_table.push_back(residuals[n - 1]);
    GeneralizedLimitConfig tcfg = cfg;
    tcfg.horizon = nmax;
    rep.glim = glim(ScalarSequence::from_terms(std::move(sq), term_bound), tcfg).real();
  }
  rep.min_section_margin = rep.section_margins.empty() ? 0.0 : rep.section_margins.front().value;
  for (const auto& p : rep.section_margins) rep.min_section_margin = std::min(rep.min_section_margin, p.value);
  rep.point_of_extension = rep.glim <= opt.cert_tol;
  rep.verdict = rep.point_of_extension ? "pass" : "rejected";
  return rep;
}

// ---- algebraic checks on sampled classes --------------------------------------

struct ExtensionCheck {
  bool sum = true;
  bool product = true;
  bool identity = true;
  bool left_scalar = true;
  bool adjoint = true;
  bool norm_bound = true;
  double worst_residual = 0.0;

  bool passed() const { return sum && product && identity && left_scalar && adjoint && norm_bound; }
};

/// Homomorphism, left-scalar, adjoint and norm laws of the extension, pointwise
/// on n = 1..horizon for every sample and through the quotient inner product.
inline ExtensionCheck extension_algebra_check(const QMatrix& a, const QMatrix& b,
                                              const std::vector<VectorSequence>& samples,
                                              const GeneralizedLimitConfig& cfg, double tol = 1e-10,
                                              const Quaternion& scalar = Quaternion(0.5, -0.25, 0.75, 1.0)) {
  if (!a.square() || a.rows() != b.rows() || b.cols() != b.rows())
    throw DimensionMismatch("extension check needs square matrices of equal size");
  cfg.validate();
  ExtensionCheck out;
  const std::size_t dim = a.rows();
  const QMatrix sum = a + b, prod = a * b, adj = adjoint(a);
  const auto ctx = LeftMultContext::standard(dim);
  const QMatrix qa = left_mul_op(ctx, scalar, a);
  const double anorm = operator_norm(a);
  auto note = [&](bool& flag, double residual) {
    out.worst_residual = std::max(out.worst_residual, residual);
    if (!(residual <= tol)) flag = false;
  };

  for (std::size_t idx = 0; idx < samples.size(); ++idx) {
    const auto s = samples[idx].memoized();
    for (std::size_t n = 1; n <= cfg.horizon; ++n) {
      const QVector phi = s.term(n);
      if (phi.dim() != dim) throw DimensionMismatch("sample vector does not match the operator size");
      const QVector aphi = a * phi, bphi = b * phi;
      note(out.sum, max_abs_diff(sum * phi, aphi + bphi));
      note(out.product, max_abs_diff(prod * phi, a * bphi));
      note(out.identity, max_abs_diff(QMatrix::identity(dim) * phi, phi));
      note(out.left_scalar, max_abs_diff(qa * phi, left_mul_vec(ctx, scalar, aphi)));
    }
    const auto t = samples[(idx + 1) % samples.size()].memoized();
    const Quaternion lhs = quotient_inner(lift(adj, s), t, cfg);
    const Quaternion rhs = quotient_inner(s, lift(a, t), cfg);
    note(out.adjoint, max_abs_diff(lhs, rhs));
    const double ss = quotient_inner(s, s, cfg).real();
    const auto as = lift(a, s);
    const double image = quotient_inner(as, as, cfg).real();
    const double excess = image - (anorm + tol) * (anorm + tol) * ss;
    if (excess > tol) out.norm_bound = false;
  }
  return out;
}

struct PositivityCheck {
  double min_value = 0.0;  // smallest Re glim <A phi_n | phi_n>
  double max_imag = 0.0;
  bool passed = true;
};

/// <A deg u | u> = glim <A phi_n | phi_n> for each sample class u.
inline PositivityCheck positivity_transfer(const QMatrix& a, const std::vector<VectorSequence>& samples,
                                           const GeneralizedLimitConfig& cfg, double floor = -1e-12) {
  PositivityCheck out;
  bool first = true;
  for (const auto& sample : samples) {
    const auto s = sample.memoized();
    const Quaternion v = quotient_inner(lift(a, s), s, cfg);
    out.min_value = first ? v.real() : std::min(out.min_value, v.real());
    out.max_imag = std::max(out.max_imag, v.imag_abs());
    first = false;
  }
  out.passed = out.min_value >= floor;
  return out;
}

}  // namespace qspec
