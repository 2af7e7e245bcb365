#include <gtest/gtest.h>

#include "helpers.hpp"
#include "qspec/commutator.hpp"
#include "qspec/random.hpp"

using namespace qspec;
using testing_support::eigen_eigenvalues;
using testing_support::match_distance;

namespace {

QMatrix one(const Quaternion& q) {
  QMatrix m(1, 1);
  m(0, 0) = q;
  return m;
}

QMatrix diag2(const Quaternion& a, const Quaternion& b) {
  QMatrix m(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

double max_abs(const RealMatrix& m) {
  double out = 0.0;
  for (double v : m.raw()) out = std::max(out, std::abs(v));
  return out;
}

bool sphere_near(const SpectralSphere& s, double a, double r, int mult, double tol = 1e-8) {
  return std::abs(s.a - a) <= tol && std::abs(s.r - r) <= tol && s.mult == mult;
}

}  // namespace

TEST(Superop, OneByOneBlocksAreMultiplicationMatrices) {
  EXPECT_EQ(lmul_superop(one(Quaternion::i())).real_rep, left_mult_block(Quaternion::i()));
  EXPECT_EQ(rmul_superop(one(Quaternion::j())).real_rep, right_mult_block(Quaternion::j()));
  EXPECT_EQ(lmul_superop(QMatrix::identity(3)).real_rep, RealMatrix::identity(36));
  const RealMatrix rj = rmul_superop(one(Quaternion::j())).real_rep;
  EXPECT_EQ(rj * rj, RealMatrix::identity(4) * -1.0);
  EXPECT_EQ(transpose(left_mult_block(Quaternion::k())), left_mult_block(Quaternion::k()) * -1.0);
}

TEST(Superop, ActionMatchesMatrixProducts) {
  Rng rng(91);
  for (std::size_t n = 1; n <= 3; ++n) {
    const QMatrix s = rng.matrix(n), t = rng.matrix(n), a = rng.matrix(n);
    EXPECT_LE(max_abs_diff(apply(lmul_superop(s), a), s * a), 1e-14);
    EXPECT_LE(max_abs_diff(apply(rmul_superop(t), a), a * t), 1e-14);
    EXPECT_LE(max_abs_diff(apply(commutator_superop(s, t), a), s * a - a * t), 1e-14);
    EXPECT_EQ(matrix_from_coords(matrix_coords(a), n), a);
  }
}

TEST(Superop, LeftAndRightMultiplicationsCommute) {
  Rng rng(92);
  const QMatrix s = rng.matrix(2), t = rng.matrix(2);
  const RealMatrix l = lmul_superop(s).real_rep, r = rmul_superop(t).real_rep;
  EXPECT_LE(max_abs(l * r - r * l), 1e-13);
  const RealMatrix c = commutator_superop(s, t).real_rep;
  EXPECT_EQ(c, l - r);
  EXPECT_EQ(combine(1.0, lmul_superop(s), -1.0, rmul_superop(t)).real_rep, c);
}

TEST(Superop, PseudoResolventsCommuteWithTheConstruction) {
  Rng rng(93);
  const QMatrix s = rng.matrix(2), t = rng.matrix(2), a = rng.matrix(2);
  const Quaternion q = rng.quaternion();
  const RealMatrix rr = superop_pseudo_resolvent(rmul_superop(t), q);
  const auto x = matrix_coords(a);
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += rr(i, j) * x[j];
  EXPECT_LE(max_abs_diff(matrix_from_coords(y, 2), a * pseudo_resolvent(t, q).matrix), 1e-12);
  const RealMatrix lr = superop_pseudo_resolvent(lmul_superop(s), q);
  EXPECT_LE(max_abs(lr - lmul_superop(pseudo_resolvent(s, q).matrix).real_rep), 1e-12);
}

TEST(Superop, KernelExamples) {
  Rng rng(94);
  const QMatrix s = rng.matrix(2);
  // C(S, S) annihilates the identity and every polynomial in S
  const auto css = commutator_superop(s, s);
  EXPECT_LE(max_abs_diff(apply(css, QMatrix::identity(2)), QMatrix(2, 2)), 1e-14);
  EXPECT_LE(max_abs_diff(apply(css, s * s - s * 3.0), QMatrix(2, 2)), 1e-12);
  EXPECT_EQ(commutator_superop(s, QMatrix(2, 2)).real_rep, lmul_superop(s).real_rep);
  // C(i, j) acts on H as x -> ix - xj; its kernel is spanned by 1 - k and i + j
  const RealMatrix c = commutator_superop(one(Quaternion::i()), one(Quaternion::j())).real_rep;
  int zero = 0;
  for (double v : symmetric_eig(transpose(c) * c).values)
    if (std::abs(v) <= 1e-12) ++zero;
  EXPECT_EQ(zero, 2);
  for (const Quaternion& x : {Quaternion(1, 0, 0, -1), Quaternion(0, 1, 1, 0)})
    EXPECT_LE(max_abs_diff(apply(commutator_superop(one(Quaternion::i()), one(Quaternion::j())), one(x)), one(Quaternion())), 1e-15);
  // an intertwiner X with S X = X T is annihilated
  const QMatrix u = rng.unitary(2);
  const QMatrix t = adjoint(u) * s * u;
  EXPECT_LE(max_abs_diff(apply(commutator_superop(s, t), u), QMatrix(2, 2)), 1e-13);
}

TEST(Superop, SpectraMatchAnIndependentEigensolver) {
  Rng rng(95);
  for (int trial = 0; trial < 4; ++trial) {
    const QMatrix s = rng.matrix(2), t = rng.matrix(2);
    const RealMatrix c = commutator_superop(s, t).real_rep;
    const double scale = 1.0 + operator_norm(s) + operator_norm(t);
    EXPECT_LE(match_distance(eig(c), eigen_eigenvalues(c)) / scale, 1e-8);
  }
}

TEST(Superop, MultiplicationSpectraAreTheSphericalSpectra) {
  Rng rng(96);
  for (std::size_t n = 1; n <= 3; ++n) {
    const QMatrix s = rng.matrix(n);
    const auto ls = superop_s_spectrum(lmul_superop(s)).spheres;
    const auto rs = superop_s_spectrum(rmul_superop(s)).spheres;
    const auto ref = s_spectrum(s).spheres;
    ASSERT_EQ(ls.size(), ref.size());
    ASSERT_EQ(rs.size(), ref.size());
    int total = 0;
    for (std::size_t k = 0; k < ref.size(); ++k) {
      EXPECT_NEAR(ls[k].a, ref[k].a, 1e-6);
      EXPECT_NEAR(ls[k].r, ref[k].r, 1e-6);
      EXPECT_NEAR(rs[k].a, ref[k].a, 1e-6);
      EXPECT_NEAR(rs[k].r, ref[k].r, 1e-6);
      total += ls[k].mult;
    }
    // 4n^2 real dimensions: 2n^2 conjugate pairs, real eigenvalues counted singly
    EXPECT_GE(total, static_cast<int>(2 * n * n));
  }
  const auto li = superop_s_spectrum(lmul_superop(one(Quaternion::i()))).spheres;
  ASSERT_EQ(li.size(), 1u);
  EXPECT_TRUE(sphere_near(li[0], 0.0, 1.0, 2));
}

TEST(Ct1, TheIJFixture) {
  const auto rep = ct1_check(one(Quaternion::i()), one(Quaternion::j()));
  ASSERT_EQ(rep.spectrum.size(), 2u);
  EXPECT_TRUE(sphere_near(rep.spectrum[0], 0.0, 0.0, 2));
  EXPECT_TRUE(sphere_near(rep.spectrum[1], 0.0, 2.0, 1));
  EXPECT_TRUE(rep.inclusion);
  EXPECT_TRUE(rep.endpoint);
  // the band {0} x [0, 2] is met only at its ends
  EXPECT_FALSE(rep.equality);
  ASSERT_EQ(rep.uncovered.size(), 1u);
  EXPECT_NEAR(rep.uncovered[0].rmin, 0.0, 1e-12);
  EXPECT_NEAR(rep.uncovered[0].rmax, 2.0, 1e-12);
  EXPECT_TRUE(rep.witnesses.empty());
}

TEST(Ct1, EqualImaginaryDiagonals) {
  const QMatrix d = diag2(Quaternion::i(), Quaternion::i());
  const auto rep = ct1_check(d, d);
  EXPECT_TRUE(rep.inclusion);
  EXPECT_TRUE(rep.endpoint);
  for (const auto& s : rep.spectrum) {
    EXPECT_NEAR(s.a, 0.0, 1e-8);
    EXPECT_GE(s.r, -1e-8);
    EXPECT_LE(s.r, 2.0 + 1e-8);
  }
}

TEST(Ct1, DegenerateCasesReachEquality) {
  Rng rng(97);
  const QMatrix s = rng.matrix(2);
  const auto zero_t = ct1_check(s, QMatrix(2, 2));
  EXPECT_TRUE(zero_t.inclusion);
  EXPECT_TRUE(zero_t.equality);
  QMatrix real_t = QMatrix::identity(2) * 0.7;
  const auto real = ct1_check(s, real_t);
  EXPECT_TRUE(real.inclusion);
  EXPECT_TRUE(real.equality);
}

TEST(Ct1, RandomPairsSatisfyInclusionAndEndpoints) {
  Rng rng(98);
  for (std::size_t n = 1; n <= 2; ++n)
    for (int t = 0; t < 5; ++t) {
      const auto rep = ct1_check(rng.matrix(n), rng.matrix(n));
      EXPECT_TRUE(rep.inclusion) << n << "/" << t;
      EXPECT_TRUE(rep.endpoint) << n << "/" << t;
      EXPECT_TRUE(rep.witnesses.empty());
    }
}

TEST(Cop1, SumInclusion) {
  Rng rng(99);
  const QMatrix a = rng.matrix(2);
  EXPECT_TRUE(cop1_check(a, QMatrix(2, 2)).passed());
  EXPECT_TRUE(cop1_check(one(Quaternion::i()), one(Quaternion::i())).passed());
  for (int t = 0; t < 5; ++t) {
    const QMatrix x = rng.matrix(2);
    const QMatrix y = x * x * rng.uniform(-1, 1) + x * rng.uniform(-1, 1) + QMatrix::identity(2) * rng.uniform(-1, 1);
    const auto rep = cop1_check(x, y);
    EXPECT_TRUE(rep.passed()) << t;
    EXPECT_TRUE(rep.witnesses.empty());
  }
}

TEST(Cop1, RejectsNonCommutingPairs) {
  EXPECT_FALSE(commute(one(Quaternion::i()), one(Quaternion::j())));
  EXPECT_THROW(cop1_check(one(Quaternion::i()), one(Quaternion::j())), NotCommuting);
}

TEST(Superop, ErrorConditions) {
  Rng rng(100);
  EXPECT_THROW(lmul_superop(rng.matrix(5)), InvalidArgument);
  SuperopOptions wide;
  wide.max_n = 5;
  EXPECT_NO_THROW(lmul_superop(rng.matrix(5), wide));
  EXPECT_THROW(commutator_superop(rng.matrix(2), rng.matrix(3)), DimensionMismatch);
  EXPECT_THROW(ct1_check(rng.matrix(2), rng.matrix(3)), DimensionMismatch);
  EXPECT_THROW(cop1_check(rng.matrix(2), rng.matrix(3)), DimensionMismatch);
}
