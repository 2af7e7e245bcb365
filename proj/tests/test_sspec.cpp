#include <gtest/gtest.h>

#include "helpers.hpp"
#include "qspec/random.hpp"
#include "qspec/sspec.hpp"

using namespace qspec;
using testing_support::eigen_eigenvalues;
using testing_support::to_eigen;

namespace {

QMatrix one(const Quaternion& q) {
  QMatrix m(1, 1);
  m(0, 0) = q;
  return m;
}

QMatrix diag2(const Quaternion& p, const Quaternion& q) {
  QMatrix m(2, 2);
  m(0, 0) = p;
  m(1, 1) = q;
  return m;
}

Quaternion random_imag_unit(Rng& rng) {
  Quaternion u{0.0, rng.normal(), rng.normal(), rng.normal()};
  return u / u.abs();
}

Quaternion on_sphere(const SpectralSphere& s, Rng& rng) { return Quaternion(s.a) + random_imag_unit(rng) * s.r; }

}  // namespace

TEST(PseudoResolvent, Examples) {
  EXPECT_EQ(pseudo_resolvent(one(Quaternion::i()), Quaternion::k()).matrix, one(Quaternion()));
  EXPECT_EQ(pseudo_resolvent(one(Quaternion::i()), Quaternion()).matrix, one(Quaternion(-1.0)));
  Rng rng(51);
  for (int t = 0; t < 20; ++t) {
    const QMatrix a = rng.matrix(3);
    const double s = rng.uniform(-2, 2);
    const QMatrix shifted = a - s * QMatrix::identity(3);
    EXPECT_LE(max_abs_diff(pseudo_resolvent(a, Quaternion(s)).matrix, shifted * shifted), 1e-12);
  }
}

TEST(PseudoResolvent, DependsOnRealPartAndModulusOnly) {
  Rng rng(52);
  for (int t = 0; t < 20; ++t) {
    const QMatrix a = rng.matrix(3);
    const Quaternion q = rng.quaternion();
    const Quaternion rotated = Quaternion(q.w) + random_imag_unit(rng) * q.imag_abs();
    EXPECT_LE(max_abs_diff(pseudo_resolvent(a, q).matrix, pseudo_resolvent(a, rotated).matrix), 1e-12);
    QMatrix expected = a * a - (2.0 * q.w) * a;
    for (std::size_t i = 0; i < 3; ++i) expected(i, i) += Quaternion(q.norm2());
    EXPECT_LE(max_abs_diff(pseudo_resolvent(a, q).matrix, expected), 1e-12);
  }
}

TEST(SSpectrum, Examples) {
  auto rep = s_spectrum(one(Quaternion::i()));
  ASSERT_EQ(rep.spheres.size(), 1u);
  EXPECT_NEAR(rep.spheres[0].a, 0.0, 1e-14);
  EXPECT_NEAR(rep.spheres[0].r, 1.0, 1e-14);
  EXPECT_EQ(rep.spheres[0].mult, 1);

  rep = s_spectrum(diag2(Quaternion::i(), Quaternion::j()));
  ASSERT_EQ(rep.spheres.size(), 1u);
  EXPECT_NEAR(rep.spheres[0].r, 1.0, 1e-12);
  EXPECT_EQ(rep.spheres[0].mult, 2);

  QMatrix nil(2, 2);
  nil(0, 1) = Quaternion(1.0);
  rep = s_spectrum(nil);
  ASSERT_EQ(rep.spheres.size(), 1u);
  EXPECT_NEAR(rep.spheres[0].a, 0.0, 1e-7);
  EXPECT_NEAR(rep.spheres[0].r, 0.0, 1e-7);
  EXPECT_EQ(rep.spheres[0].mult, 2);
  EXPECT_EQ(rep.classes[0], SpectralClass::point);
}

TEST(SSpectrum, RealDiagonalEntriesAreRealSpheres) {
  QMatrix a(3, 3);
  a(0, 0) = Quaternion(2.0);
  a(1, 1) = Quaternion(2.0);
  a(2, 2) = Quaternion(-1.0, 0.0, 0.0, 3.0);
  const auto rep = s_spectrum(a);
  ASSERT_EQ(rep.spheres.size(), 2u);
  EXPECT_NEAR(rep.spheres[0].a, -1.0, 1e-12);
  EXPECT_NEAR(rep.spheres[0].r, 3.0, 1e-12);
  EXPECT_EQ(rep.spheres[0].mult, 1);
  EXPECT_NEAR(rep.spheres[1].a, 2.0, 1e-12);
  EXPECT_NEAR(rep.spheres[1].r, 0.0, 1e-12);
  EXPECT_EQ(rep.spheres[1].mult, 2);
}

TEST(SSpectrum, MultiplicitiesSumToDimensionAndSpheresLieInNormBall) {
  Rng rng(53);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + t % 5;
    const auto rep = s_spectrum(rng.matrix(n));
    EXPECT_FALSE(rep.spheres.empty());
    EXPECT_EQ(rep.total_multiplicity(), static_cast<int>(n));
    for (const auto& s : rep.spheres) {
      EXPECT_GE(s.r, 0.0);
      EXPECT_LE(s.a * s.a + s.r * s.r, rep.operator_norm * rep.operator_norm + rep.tol);
    }
  }
}

TEST(SSpectrum, MatchesEigenvaluesOfRealForm) {
  Rng rng(54);
  for (int t = 0; t < 30; ++t) {
    const QMatrix a = rng.matrix(1 + t % 4);
    const auto rep = s_spectrum(a);
    for (const auto& z : eigen_eigenvalues(real_rep(a))) {
      const bool hit = std::any_of(rep.spheres.begin(), rep.spheres.end(), [&](const SpectralSphere& s) {
        return std::abs(s.a - z.real()) <= 1e-8 && std::abs(s.r - std::abs(z.imag())) <= 1e-8;
      });
      EXPECT_TRUE(hit);
    }
  }
}

TEST(SSpectrum, DeterminantIdentityBehindTheEigenvalueRoute) {
  // det R_q(M) = |det(M - z I)|^2 for real M and z = Re q + |Im q| i.
  Rng rng(55);
  for (int t = 0; t < 20; ++t) {
    const QMatrix a = rng.matrix(2);
    const Quaternion q = rng.quaternion();
    const Eigen::MatrixXd m = to_eigen(real_rep(a));
    const Eigen::MatrixXd r = to_eigen(real_rep(pseudo_resolvent(a, q).matrix));
    const Complex z(q.w, q.imag_abs());
    const Eigen::MatrixXcd shifted = m.cast<Complex>() - z * Eigen::MatrixXcd::Identity(8, 8);
    const double lhs = r.determinant(), rhs = std::norm(shifted.determinant());
    EXPECT_NEAR(lhs, rhs, 1e-9 * (1.0 + std::abs(rhs)));
  }
}

TEST(SSpectrum, AdjointHasTheSameSpheres) {
  Rng rng(56);
  for (int t = 0; t < 30; ++t) {
    const QMatrix a = rng.matrix(1 + t % 4);
    const auto s1 = s_spectrum(a).spheres, s2 = s_spectrum(adjoint(a)).spheres;
    ASSERT_EQ(s1.size(), s2.size());
    for (std::size_t k = 0; k < s1.size(); ++k) {
      EXPECT_NEAR(s1[k].a, s2[k].a, 1e-8);
      EXPECT_NEAR(s1[k].r, s2[k].r, 1e-8);
      EXPECT_EQ(s1[k].mult, s2[k].mult);
    }
  }
}

TEST(SSpectrum, PropagatesNoConvergence) {
  Rng rng(57);
  SpectrumOptions opt;
  opt.eig.sweeps_per_dim = 1;
  EXPECT_THROW(s_spectrum(rng.matrix(6), opt), NoConvergence);
}

TEST(Membership, Examples) {
  auto m = membership(one(Quaternion::i()), Quaternion::k(), 1e-6);
  EXPECT_TRUE(m.member);
  EXPECT_NEAR(m.margin, 0.0, 1e-15);
  m = membership(one(Quaternion::i()), Quaternion(2.0), 1e-6);
  EXPECT_FALSE(m.member);
  EXPECT_NEAR(m.margin, 5.0, 1e-12);
  EXPECT_THROW(membership(one(Quaternion::i()), Quaternion(2.0), 0.0), InvalidArgument);
  EXPECT_THROW(membership(one(Quaternion::i()), Quaternion(2.0), -1.0), InvalidArgument);
}

TEST(Membership, AgreesWithSphereDistanceOnGrid) {
  Rng rng(58);
  constexpr double h = 0.05;
  for (int t = 0; t < 5; ++t) {
    const QMatrix a = rng.matrix(2);
    const auto rep = s_spectrum(a);
    for (const auto& s : rep.spheres) EXPECT_TRUE(membership(a, on_sphere(s, rng), 1e-6).member);
    const double nrm = rep.operator_norm;
    for (double re = -nrm; re <= nrm; re += h)
      for (double im = 0.0; im <= nrm; im += h) {
        double dist = INFINITY;
        for (const auto& s : rep.spheres) dist = std::min(dist, std::hypot(re - s.a, im - s.r));
        if (dist > h / 2) {
          EXPECT_FALSE(membership(a, Quaternion(re, im, 0, 0), 1e-6).member);
        }
      }
  }
}

TEST(Membership, AxiallySymmetric) {
  Rng rng(59);
  const QMatrix a = rng.matrix(3);
  const Quaternion q = rng.quaternion();
  const double base = membership(a, q, 1e-6).margin;
  for (int t = 0; t < 100; ++t) {
    const Quaternion rotated = Quaternion(q.w) + random_imag_unit(rng) * q.imag_abs();
    EXPECT_NEAR(membership(a, rotated, 1e-6).margin, base, 1e-10);
  }
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(one(Quaternion::i()), Quaternion::k()), SpectralClass::point);
  EXPECT_EQ(classify(one(Quaternion::i()), Quaternion(5.0)), SpectralClass::regular);
  Rng rng(60);
  for (int t = 0; t < 500; ++t) {
    const SpectralClass c = classify(rng.matrix(1 + t % 3), rng.quaternion(2.0));
    EXPECT_TRUE(c == SpectralClass::point || c == SpectralClass::regular);
  }
}

TEST(ApoSus, Examples) {
  const auto m = apo_sus_certificates(one(Quaternion::i()), Quaternion::k());
  EXPECT_NEAR(m.apo_margin, 0.0, 1e-15);
  EXPECT_NEAR(m.sus_margin, 0.0, 1e-15);
  Rng rng(61);
  for (int t = 0; t < 20; ++t) {
    const QMatrix a = rng.matrix(3);
    const Quaternion q = rng.quaternion();
    EXPECT_EQ(apo_sus_certificates(a, q).apo_margin, apo_sus_certificates(adjoint(a), q).sus_margin);
  }
}

TEST(ApoSus, CollapseToMembershipAtFiniteDimension) {
  Rng rng(62);
  for (int t = 0; t < 5; ++t) {
    const QMatrix a = rng.matrix(2);
    const auto rep = s_spectrum(a);
    const double nrm = rep.operator_norm, thresh = 1e-6 * (1.0 + nrm * nrm);
    for (int k = 0; k < 50; ++k) {
      // a mix of on-sphere and generic probes
      const Quaternion q = k % 5 == 0 ? on_sphere(rep.spheres[rng.index(rep.spheres.size())], rng)
                                      : Quaternion(rng.uniform(-nrm, nrm), rng.uniform(0, nrm), 0, 0);
      const auto m = apo_sus_certificates(a, q);
      const bool member = membership(a, q, 1e-6).member;
      EXPECT_EQ(m.apo_margin <= thresh, member);
      EXPECT_EQ(m.sus_margin <= thresh, member);
    }
  }
}

TEST(BandArithmetic, Examples) {
  const std::vector<SpectralSphere> unit = {{0.0, 1.0, 1}}, three = {{3.0, 0.0, 1}};
  auto b = band_arithmetic(BandOp::diff, unit, unit);
  ASSERT_EQ(b.bands.size(), 1u);
  EXPECT_EQ(b.bands[0].a, 0.0);
  EXPECT_EQ(b.bands[0].rmin, 0.0);
  EXPECT_EQ(b.bands[0].rmax, 2.0);
  b = band_arithmetic(BandOp::sum, unit, three);
  ASSERT_EQ(b.bands.size(), 1u);
  EXPECT_EQ(b.bands[0].a, 3.0);
  EXPECT_EQ(b.bands[0].rmin, 1.0);
  EXPECT_EQ(b.bands[0].rmax, 1.0);
  EXPECT_TRUE(b.contains(Quaternion(3.0, 0.0, 1.0, 0.0), 1e-12));
  EXPECT_FALSE(b.contains(Quaternion(3.0, 0.0, 1.1, 0.0), 1e-12));
}

TEST(BandArithmetic, MonteCarloMinkowskiSamplesFallInside) {
  Rng rng(63);
  std::vector<SpectralSphere> s1, s2;
  for (int k = 0; k < 3; ++k) {
    s1.push_back({rng.uniform(-1, 1), rng.uniform(0, 1), 1});
    s2.push_back({rng.uniform(-1, 1), rng.uniform(0, 1), 1});
  }
  for (const BandOp op : {BandOp::sum, BandOp::diff}) {
    const BandSet bands = band_arithmetic(op, s1, s2);
    int misses = 0;
    for (int t = 0; t < 10000; ++t) {
      const Quaternion p = on_sphere(s1[rng.index(3)], rng), q = on_sphere(s2[rng.index(3)], rng);
      if (!bands.contains(op == BandOp::sum ? p + q : p - q, 1e-12)) ++misses;
    }
    EXPECT_EQ(misses, 0);
  }
}

TEST(BandArithmetic, EveryRadiusInTheBandIsAttained) {
  // |u r1 - v r2| sweeps [|r1 - r2|, r1 + r2] as the angle between u and v varies.
  const double r1 = 0.7, r2 = 0.3;
  for (double target = std::abs(r1 - r2); target <= r1 + r2; target += 0.05) {
    const double cosang = (r1 * r1 + r2 * r2 - target * target) / (2 * r1 * r2);
    const double ang = std::acos(std::clamp(cosang, -1.0, 1.0));
    const Quaternion p(0.0, r1, 0.0, 0.0), q(0.0, r2 * std::cos(ang), r2 * std::sin(ang), 0.0);
    EXPECT_NEAR((p - q).imag_abs(), target, 1e-12);
  }
}

TEST(GridScan, MinimaSitNextToSpheres) {
  const QMatrix a = one(Quaternion::i());
  const auto g = grid_scan(a, 0.05, -1.1, 1.1, 1.1);
  const auto mins = local_minima(g);
  ASSERT_EQ(mins.size(), 1u);
  EXPECT_NEAR(mins[0].a, 0.0, 1e-12);
  EXPECT_NEAR(mins[0].r, 1.0, 1e-12);
}

TEST(GridScan, MarginNearSpheresObeysPerturbationBound) {
  // sigma_min(R_q) <= sigma_min(R_q0) + 2 |dRe| |A| + | |q|^2 - |q0|^2 |
  Rng rng(64);
  constexpr double h = 0.05;
  for (int t = 0; t < 5; ++t) {
    const QMatrix a = rng.matrix(2);
    const auto rep = s_spectrum(a);
    const double nrm = rep.operator_norm;
    const auto g = grid_scan(a, h, -nrm - h, nrm + h, nrm + h);
    double far_min = INFINITY;
    for (std::size_t ia = 0; ia < g.a_values.size(); ++ia)
      for (std::size_t ir = 0; ir < g.r_values.size(); ++ir) {
        const double re = g.a_values[ia], im = g.r_values[ir];
        double cheb = INFINITY;
        for (const auto& s : rep.spheres) {
          const double d = std::max(std::abs(re - s.a), std::abs(im - s.r));
          cheb = std::min(cheb, d);
          if (d <= h) {
            const double base = membership(a, Quaternion(s.a, s.r, 0, 0), 1e-6).margin;
            const double bound = base + 2 * std::abs(re - s.a) * nrm +
                                 std::abs(re * re + im * im - s.a * s.a - s.r * s.r) + 1e-9;
            EXPECT_LE(g.at(ia, ir), bound);
          }
        }
        if (cheb > 4 * h) far_min = std::min(far_min, g.at(ia, ir));
      }
    EXPECT_GT(far_min, 1e-6);
  }
}

TEST(GridScan, DeterministicAcrossRuns) {
  Rng rng(65);
  const QMatrix a = rng.matrix(3);
  const auto g1 = grid_scan(a, 0.1, -2, 2, 2), g2 = grid_scan(a, 0.1, -2, 2, 2);
  EXPECT_EQ(g1.margin, g2.margin);
  EXPECT_THROW(grid_scan(a, 0.0, -1, 1, 1), InvalidArgument);
}
