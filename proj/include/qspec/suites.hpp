#pragma once

// Property suites behind `qspec check --suite NAME` and the acceptance run.
// Every tolerance and trial count is fixed here; the seed only selects the
// random instances.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qspec/berberian.hpp"
#include "qspec/commutator.hpp"
#include "qspec/eigen.hpp"
#include "qspec/leftmult.hpp"
#include "qspec/matrix.hpp"
#include "qspec/random.hpp"
#include "qspec/sspec.hpp"

namespace qspec {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;  // wall time; kept out of serialized reports
};

namespace suite_detail {

inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// Runs body, records the wall time and fails the criterion past the limit.
inline CriterionResult timed(int id, std::string name, double limit_seconds,
                             const std::function<bool(std::string&)>& body) {
  CriterionResult res{id, std::move(name), false, {}, 0.0};
  const auto t0 = std::chrono::steady_clock::now();
  try {
    res.passed = body(res.detail);
  } catch (const std::exception& e) {
    res.passed = false;
    res.detail += std::string(res.detail.empty() ? "" : "; ") + "error: " + e.what();
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_seconds > 0.0 && res.seconds > limit_seconds) {
    res.passed = false;
    res.detail += "; over the time limit of " + std::to_string(static_cast<int>(limit_seconds)) + " s";
  }
  return res;
}

// Each target is consumed by its nearest unused candidate.
inline double multiset_distance(const std::vector<Complex>& targets, std::vector<Complex> pool) {
  double worst = 0.0;
  for (const auto& t : targets) {
    if (pool.empty()) return INFINITY;
    std::size_t best = 0;
    for (std::size_t k = 1; k < pool.size(); ++k)
      if (std::abs(pool[k] - t) < std::abs(pool[best] - t)) best = k;
    worst = std::max(worst, std::abs(pool[best] - t));
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return pool.empty() ? worst : INFINITY;
}

// Sphere sets with multiplicities; `scale` multiplies the multiplicities of `b`.
inline bool same_spheres(const std::vector<SpectralSphere>& a, const std::vector<SpectralSphere>& b, double tol,
                         int scale = 1, double* worst = nullptr) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = std::max(std::abs(a[k].a - b[k].a), std::abs(a[k].r - b[k].r));
    if (worst) *worst = std::max(*worst, d);
    if (d > tol || a[k].mult != scale * b[k].mult) return false;
  }
  return true;
}

inline std::size_t dim_cycle(std::size_t trial, std::size_t max_n) { return 1 + trial % max_n; }

// A random imaginary unit.
inline Quaternion unit_imag(Rng& rng) {
  Quaternion u{0.0, rng.normal(), rng.normal(), rng.normal()};
  return u / u.abs();
}

}  // namespace suite_detail

// ---- 1: real and complex-adjoint representations agree -----------------------

inline CriterionResult criterion_representations(std::uint64_t seed) {
  using namespace suite_detail;
  return timed(1, "representation consistency", 10.0, [seed](std::string& detail) {
    Rng rng(seed ^ 0x1001);
    double worst_rel = 0.0;
    bool ok = true;
    for (std::size_t t = 0; t < 100; ++t) {
      const QMatrix a = rng.matrix(dim_cycle(t, 4));
      const auto chi = eig(complex_adjoint_rep(a));
      std::vector<Complex> doubled;
      for (const auto& z : chi) doubled.insert(doubled.end(), {z, z});
      const double d = multiset_distance(doubled, eig(real_rep(a)));
      const double rel = d / (1.0 + operator_norm(a));
      worst_rel = std::max(worst_rel, rel);
      if (!(rel <= 1e-8)) ok = false;
    }
    detail = "100 matrices, n in 1..4, worst mismatch " + sci(worst_rel) + " (1+|A|) (limit 1e-8)";
    return ok;
  });
}

// ---- 2: grid-scan minima sit on the reported spheres --------------------------

inline CriterionResult criterion_grid_oracle(std::uint64_t seed) {
  using namespace suite_detail;
  return timed(2, "spectrum-oracle agreement", 30.0, [seed](std::string& detail) {
    Rng rng(seed ^ 0x2002);
    constexpr double h = 0.05;
    std::size_t stray = 0, unmatched = 0, minima = 0, spheres = 0;
    for (std::size_t t = 0; t < 20; ++t) {
      const QMatrix a = rng.matrix(dim_cycle(t, 3));
      const auto rep = s_spectrum(a);
      const double nrm = rep.operator_norm;
      const auto scan = grid_scan(a, h, -nrm - 2 * h, nrm + 2 * h, nrm + 2 * h);
      const auto mins = local_minima(scan);
      auto near = [&](const SphereCoord& p, const SpectralSphere& s) {
        return std::abs(p.a - s.a) <= h * (1 + 1e-9) && std::abs(p.r - s.r) <= h * (1 + 1e-9);
      };
      for (const auto& p : mins)
        if (std::none_of(rep.spheres.begin(), rep.spheres.end(), [&](const SpectralSphere& s) { return near(p, s); }))
          ++stray;
      for (const auto& s : rep.spheres)
        if (std::none_of(mins.begin(), mins.end(), [&](const SphereCoord& p) { return near(p, s); })) ++unmatched;
      minima += mins.size();
      spheres += rep.spheres.size();
    }
    detail = "20 matrices, " + std::to_string(spheres) + " spheres, " + std::to_string(minima) + " grid minima; " +
             std::to_string(stray) + " minima off-sphere, " + std::to_string(unmatched) + " spheres without a minimum";
    return stray == 0 && unmatched == 0;
  });
}

// ---- 3: adjoint identities ------------------------------------------------------

inline CriterionResult criterion_adjoint(std::uint64_t seed) {
  using namespace suite_detail;
  return timed(3, "adjoint identities", 0.0, [seed](std::string& detail) {
    Rng rng(seed ^ 0x3003);
    double worst = 0.0;
    for (std::size_t t = 0; t < 200; ++t) {
      const std::size_t n = dim_cycle(t, 4);
      const QMatrix a = rng.matrix(n), b = rng.matrix(n);
      const QVector phi = rng.vector(n), psi = rng.vector(n);
      const Quaternion q = rng.quaternion();
      const LeftMultContext ctx(rng.unitary(n));
      worst = std::max(worst, max_abs_diff(adjoint(a + b), adjoint(a) + adjoint(b)));
      worst = std::max(worst, max_abs_diff(adjoint(a * b), adjoint(b) * adjoint(a)));
      worst = std::max(worst, max_abs_diff(inner(psi, a * phi), inner(adjoint(a) * psi, phi)));
      worst = std::max(worst, max_abs_diff(adjoint(left_mul_op(ctx, q, a)), right_mul_op(ctx, adjoint(a), q.conj())));
    }
    detail = "200 instances, worst residual " + sci(worst) + " (limit 1e-12)";
    return worst <= 1e-12;
  });
}

// ---- 4: adjoint symmetry of the spectrum, classification collapse ------------

inline CriterionResult criterion_adjoint_spectrum(std::uint64_t seed) {
  using namespace suite_detail;
  return timed(4, "spectrum of the adjoint and classification", 0.0, [seed](std::string& detail) {
    Rng rng(seed ^ 0x4004);
    bool ok = true;
    double worst = 0.0;
    for (std::size_t t = 0; t < 50; ++t) {
      const QMatrix a = rng.matrix(dim_cycle(t, 4));
      if (!same_spheres(s_spectrum(a).spheres, s_spectrum(adjoint(a)).spheres, 1e-8, 1, &worst)) ok = false;
    }
    std::size_t point = 0, regular = 0, other = 0, missed = 0;
    for (std::size_t t = 0; t < 500; ++t) {
      const QMatrix a = rng.matrix(dim_cycle(t, 3));
      Quaternion q = rng.quaternion(2.0);
      bool on_sphere = false;
      if (t % 2 == 0) {  // half the probes sit on a sphere of A
        const auto sph = s_spectrum(a).spheres;
        const auto& s = sph[rng.index(sph.size())];
        q = Quaternion(s.a) + unit_imag(rng) * s.r;
        on_sphere = true;
      }
      const SpectralClass c = classify(a, q);
      if (c == SpectralClass::point) ++point;
      else if (c == SpectralClass::regular) ++regular;
      else ++other;
      if (on_sphere && c != SpectralClass::point) ++missed;
    }
    detail = "50 spheres-of-adjoint comparisons, worst offset " + sci(worst) + " (limit 1e-8); 500 classifications: " +
             std::to_string(point) + " point, " + std::to_string(regular) + " regular, " + std::to_string(other) +
             " other, " + std::to_string(missed) + " on-sphere probes not point";
    return ok && other == 0 && missed == 0;
  });
}

// ---- 5: left scalar multiplication ---------------------------------------------

inline CriterionResult criterion_left_mult(std::uint64_t seed) {
  using namespace suite_detail;
  return timed(5, "left-multiplication suite", 0.0, [seed](std::string& detail) {
    Rng rng(seed ^ 0x5005);
    double worst = 0.0;
    auto note = [&worst](double d) { worst = std::max(worst, d); };
    for (std::size_t t = 0; t < 100; ++t) {
      const std::size_t n = dim_cycle(t, 4);
      const LeftMultContext ctx(rng.unitary(n));
      const Quaternion q = rng.quaternion(), p = rng.quaternion();
      const QVector phi = rng.vector(n), psi = rng.vector(n);
      const double r = rng.uniform(-2.0, 2.0);
      auto lm = [&ctx](const Quaternion& s, const QVector& v) { return left_mul_vec(ctx, s, v); };
      note(max_abs_diff(lm(q, phi + psi), lm(q, phi) + lm(q, psi)));                     // (a)
      note(max_abs_diff(lm(q, phi * p), lm(q, phi) * p));                                // (a)
      note(std::abs(norm(lm(q, phi)) - q.abs() * norm(phi)));                            // (b)
      note(max_abs_diff(lm(q, lm(p, phi)), lm(q * p, phi)));                             // (c)
      note(max_abs_diff(inner(lm(q.conj(), phi), psi), inner(phi, lm(q, psi))));         // (d)
      note(max_abs_diff(lm(Quaternion(r), phi), phi * r));                               // (e)
      for (std::size_t k = 0; k < n; ++k)
        note(max_abs_diff(lm(q, ctx.basis_vector(k)), ctx.basis_vector(k) * q));       // (f)
      note(max_abs_diff(lm(p + q, phi), lm(p, phi) + lm(q, phi)));
    }
    // Basis dependence: phi_1 = e1 (1 + i) / sqrt 2 turns j e1 into k e1.
    QMatrix u = QMatrix::identity(2);
    u(0, 0) = Quaternion(1.0, 1.0, 0.0, 0.0) / std::sqrt(2.0);
    const LeftMultContext bent(u), standard = LeftMultContext::standard(2);
    const QVector e1 = QVector::basis(2, 0);
    const double gap = norm(left_mul_vec(bent, Quaternion::j(), e1) - left_mul_vec(standard, Quaternion::j(), e1));
    bool spheres_ok = true;
    for (std::size_t t = 0; t < 20; ++t) {
      const std::size_t n = dim_cycle(t, 4);
      const LeftMultContext ctx(rng.unitary(n));
      const Quaternion q = rng.quaternion();
      const auto sph = s_spectrum(left_mul_matrix(ctx, q)).spheres;
      const SphereCoord c = canonical_rep(q);
      if (sph.size() != 1 || std::abs(sph[0].a - c.a) > 1e-6 || std::abs(sph[0].r - c.r) > 1e-6 ||
          sph[0].mult != static_cast<int>(n))
        spheres_ok = false;
    }
    detail = "100 instances of (a)-(f), worst residual " + sci(worst) + " (limit 1e-12); basis-dependence gap " +
             sci(gap) + " (needs > 0.1); 20 left-multiplication spectra " + (spheres_ok ? "single sphere" : "WRONG");
    return worst <= 1e-12 && gap > 0.1 && spheres_ok;
  });
}

// ---- 6: generalized limit ---------------------------------------------------------

inline CriterionResult criterion_glim(std::uint64_t seed) {
  using namespace suite_detail;
  return timed(6, "generalized-limit suite", 0.0, [seed](std::string& detail) {
    Rng rng(seed ^ 0x6006);
    const GeneralizedLimitConfig cfg;  // K = 1e5
    double conv = 0.0;
    for (int t = 0; t < 5; ++t) {
      const Quaternion c = rng.quaternion(), d = rng.quaternion();
      const Quaternion rho = rng.unit_quaternion() * 0.9;
      const double b = c.abs() + d.abs();
      conv = std::max(conv, max_abs_diff(glim(ScalarSequence([c](std::size_t) { return c; }, c.abs()), cfg), c));
      Quaternion pw(1.0);
      std::vector<Quaternion> geo;
      for (std::size_t n = 1; n <= cfg.horizon; ++n) {
        pw = pw * rho;
        geo.push_back(c + d * pw);
      }
      conv = std::max(conv, max_abs_diff(glim(ScalarSequence::from_terms(geo, b), cfg), c));
      conv = std::max(conv, max_abs_diff(glim(ScalarSequence([c, d](std::size_t n) {
                                                return c + d / static_cast<double>(n * n);
                                              }, b), cfg), c));
    }
    const Quaternion alt =
        glim(ScalarSequence([](std::size_t n) { return Quaternion(n % 2 == 0 ? 1.0 : -1.0); }, 1.0), cfg);

    double lowest = INFINITY;
    const std::vector<std::function<Quaternion(std::size_t)>> nonneg = {
        [](std::size_t n) { return Quaternion(1.0 + (n % 2 == 0 ? 1.0 : -1.0)); },
        [](std::size_t n) { return Quaternion(static_cast<double>(n % 3) / 2.0); },
        [](std::size_t n) { return Quaternion(std::abs(std::sin(static_cast<double>(n)))); },
        [](std::size_t n) { return Quaternion(1.0 / static_cast<double>(n)); }};
    for (const auto& g : nonneg) lowest = std::min(lowest, glim(ScalarSequence(g, 2.0), cfg).real());

    double conj_err = 0.0;
    for (int t = 0; t < 5; ++t) {
      const Quaternion c = rng.quaternion(), d = rng.quaternion(), e = rng.quaternion();
      auto g = [c, d, e](std::size_t n) {
        return c + d * (n % 2 == 0 ? 1.0 : -1.0) + e / static_cast<double>(n * n);
      };
      const double b = c.abs() + d.abs() + e.abs();
      const Quaternion direct = glim(ScalarSequence(g, b), cfg);
      const Quaternion conj = glim(ScalarSequence([g](std::size_t n) { return g(n).conj(); }, b), cfg);
      conj_err = std::max(conj_err, max_abs_diff(conj, direct.conj()));
    }

    bool rejected = false;
    try {
      glim(ScalarSequence([](std::size_t n) {
             // blocks of length 1, 2, 4, ... alternating 0 and 1
             const auto k = static_cast<unsigned>(std::floor(std::log2(static_cast<double>(n))));
             return Quaternion(k % 2 == 0 ? 0.0 : 1.0);
           }, 1.0), cfg);
    } catch (const NotAlmostConvergent&) {
      rejected = true;
    }
    detail = "convergent error " + sci(conv) + " (limit 1e-8); (-1)^n -> " + sci(alt.abs()) +
             " (limit 1e-4); smallest nonneg glim " + sci(lowest) + "; conjugation error " + sci(conj_err) +
             " (limit 1e-10); doubling blocks " + (rejected ? "rejected" : "NOT rejected");
    return conv <= 1e-8 && alt.abs() <= 1e-4 && lowest >= 0.0 && conj_err <= 1e-10 && rejected;
  });
}

// ---- 7: sequence-space extension of the shift ------------------------------------

inline CriterionResult criterion_berberian(std::uint64_t seed) {
  using namespace suite_detail;
  return timed(7, "extension and shift certificates", 30.0, [seed](std::string& detail) {
    Rng rng(seed ^ 0x7007);
    const auto shift = BandedOperatorRule::unilateral_shift();
    const GeneralizedLimitConfig cfg;
    bool ok = true;
    double worst_ratio = 0.0, worst_glim = 0.0;
    for (const Quaternion& q : {Quaternion::i(), Quaternion(1.0), Quaternion(0.5, 0.5, 0.5, 0.5)}) {
      const auto norms = weyl_residual_norms(shift, q, 10000);
      for (std::size_t n = 1; n <= norms.size(); ++n)
        worst_ratio = std::max(worst_ratio, norms[n - 1] * std::sqrt(static_cast<double>(n)));
      const auto cert = tc1_certificate(shift, q, cfg);
      worst_glim = std::max(worst_glim, cert.glim);
      if (cert.verdict != "pass") ok = false;
    }
    const auto three = tc1_certificate(shift, Quaternion(3.0), cfg);
    const bool three_ok = three.verdict == "rejected" && three.section_margins.size() == 200 &&
                          three.min_section_margin >= 3.0;

    GeneralizedLimitConfig scfg;
    scfg.horizon = 10000;
    const QMatrix a = rng.matrix(2), b = rng.matrix(2), c = rng.matrix(2);
    std::vector<VectorSequence> samples;
    for (int k = 0; k < 20; ++k) samples.push_back(random_sample_sequence(rng, 2));
    const auto ext = extension_algebra_check(a, b, samples, scfg, 1e-10, rng.quaternion());
    const auto pos = positivity_transfer(adjoint(c) * c, samples, scfg);
    detail = "worst sqrt(n)|R_q(S) psi_n| " + sci(worst_ratio) + " (limit 3); worst certificate glim " +
             sci(worst_glim) + " (limit 1e-4); q = 3 " + three.verdict + " with section margin " +
             sci(three.min_section_margin) + " (needs >= 3); algebra check " + (ext.passed() ? "pass" : "FAIL") +
             " worst " + sci(ext.worst_residual) + "; positivity min " + sci(pos.min_value);
    return ok && worst_ratio <= 3.0 && worst_glim <= 1e-4 && three_ok && ext.passed() && pos.passed;
  });
}

// ---- 8: commutator superoperators ---------------------------------------------------

inline CriterionResult criterion_commutator(std::uint64_t seed) {
  using namespace suite_detail;
  return timed(8, "commutator suite", 60.0, [seed](std::string& detail) {
    Rng rng(seed ^ 0x8008);
    std::size_t lr_fail = 0, ct_fail = 0, cop_fail = 0;
    for (std::size_t t = 0; t < 20; ++t) {
      const QMatrix s = rng.matrix(2), tm = rng.matrix(2);
      const double tol = 1e-6;
      const auto ls = superop_s_spectrum(lmul_superop(s)).spheres;
      const auto rs = superop_s_spectrum(rmul_superop(tm)).spheres;
      const auto ref_s = real_matrix_spheres(real_rep(s), default_merge_tol(operator_norm(s)));
      const auto ref_t = real_matrix_spheres(real_rep(tm), default_merge_tol(operator_norm(tm)));
      if (!same_spheres(ls, ref_s, tol, 2) || !same_spheres(rs, ref_t, tol, 2)) ++lr_fail;
      // the same sphere sets as the quaternionic spectra
      const auto qs = s_spectrum(s).spheres, qt = s_spectrum(tm).spheres;
      auto as_set = [](std::vector<SpectralSphere> v) {
        for (auto& x : v) x.mult = 1;
        return v;
      };
      if (!same_spheres(as_set(ls), as_set(qs), tol) || !same_spheres(as_set(rs), as_set(qt), tol)) ++lr_fail;
    }
    for (std::size_t t = 0; t < 20; ++t) {
      const std::size_t n = dim_cycle(t, 2);
      const auto rep = ct1_check(rng.matrix(n), rng.matrix(n));
      if (!rep.inclusion || !rep.endpoint) ++ct_fail;
    }
    QMatrix si(1, 1), tj(1, 1);
    si(0, 0) = Quaternion::i();
    tj(0, 0) = Quaternion::j();
    const auto fixture = ct1_check(si, tj);
    const bool fixture_ok = fixture.spectrum.size() == 2 && std::abs(fixture.spectrum[0].a) <= 1e-8 &&
                            std::abs(fixture.spectrum[0].r) <= 1e-8 && fixture.spectrum[0].mult == 2 &&
                            std::abs(fixture.spectrum[1].a) <= 1e-8 && std::abs(fixture.spectrum[1].r - 2.0) <= 1e-8 &&
                            fixture.spectrum[1].mult == 1 && fixture.inclusion && !fixture.equality;
    for (std::size_t t = 0; t < 20; ++t) {
      const QMatrix a = rng.matrix(2);
      const QMatrix b = rng.uniform(-1, 1) * (a * a) + rng.uniform(-1, 1) * a +
                        rng.uniform(-1, 1) * QMatrix::identity(2);
      if (!cop1_check(a, b).passed()) ++cop_fail;
    }
    detail = std::to_string(lr_fail) + " multiplication-spectrum mismatches; " + std::to_string(ct_fail) +
             " difference-theorem failures; C(i,j) fixture " + (fixture_ok ? "reproduced" : "WRONG") +
             " with equality " + (fixture.equality ? "true" : "false") + "; " + std::to_string(cop_fail) +
             " sum-inclusion failures";
    return lr_fail == 0 && ct_fail == 0 && fixture_ok && cop_fail == 0;
  });
}

// ---- suites --------------------------------------------------------------------------

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"adjoint", "spheres", "leftmult", "glim", "berberian", "commutator"};
  return names;
}

inline std::vector<CriterionResult> run_suite(const std::string& name, std::uint64_t seed) {
  if (name == "adjoint") return {criterion_adjoint(seed)};
  if (name == "spheres")
    return {criterion_representations(seed), criterion_grid_oracle(seed), criterion_adjoint_spectrum(seed)};
  if (name == "leftmult") return {criterion_left_mult(seed)};
  if (name == "glim") return {criterion_glim(seed)};
  if (name == "berberian") return {criterion_berberian(seed)};
  if (name == "commutator") return {criterion_commutator(seed)};
  throw InvalidArgument("unknown suite '" + name + "'");
}

}  // namespace qspec
