#pragma once

// Seeded generators for test instances. Uniform doubles are built from raw
// mt19937_64 output, so streams are identical across standard libraries.

#include <cmath>
#include <cstdint>
#include <random>

#include "qspec/berberian.hpp"
#include "qspec/matrix.hpp"
#include "qspec/quaternion.hpp"

namespace qspec {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n; }

  /// Standard normal by Box-Muller.
  double normal() {
    const double u = 1.0 - uniform();
    const double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * v);
  }

  Quaternion quaternion(double scale = 1.0) {
    return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)};
  }

  /// Uniform on the unit sphere of H.
  Quaternion unit_quaternion() {
    Quaternion q{normal(), normal(), normal(), normal()};
    return q / q.abs();
  }

  QMatrix matrix(std::size_t rows, std::size_t cols, double scale = 1.0) {
    QMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = quaternion(scale);
    return m;
  }
  QMatrix matrix(std::size_t n, double scale = 1.0) { return matrix(n, n, scale); }

  QVector vector(std::size_t n, double scale = 1.0) {
    QVector v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = quaternion(scale);
    return v;
  }

  /// Columns from Gram-Schmidt on a random matrix.
  QMatrix unitary(std::size_t n) {
    QMatrix u(n, n);
    std::vector<QVector> cols;
    for (std::size_t k = 0; k < n; ++k) {
      QVector v = vector(n);
      for (const auto& c : cols) v = v - c * inner(c, v);
      for (const auto& c : cols) v = v - c * inner(c, v);
      v = v * (1.0 / norm(v));
      cols.push_back(v);
      for (std::size_t r = 0; r < n; ++r) u(r, k) = v[r];
    }
    return u;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// phi_n = c + d (-1)^n + e / n with random c, d, e in H^n: bounded, and every
/// pairing of two such sequences is almost convergent.
inline VectorSequence random_sample_sequence(Rng& rng, std::size_t dim) {
  const QVector c = rng.vector(dim), d = rng.vector(dim), e = rng.vector(dim);
  const double bound = norm(c) + norm(d) + norm(e);
  return VectorSequence(
      [c, d, e](std::size_t n) {
        const double sign = n % 2 == 0 ? 1.0 : -1.0;
        return c + d * sign + e * (1.0 / static_cast<double>(n));
      },
      bound);
}

}  // namespace qspec
