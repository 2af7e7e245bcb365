#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qspec/matrix.hpp"

namespace testing_support {

inline Eigen::MatrixXd to_eigen(const qspec::RealMatrix& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

inline Eigen::MatrixXcd to_eigen(const qspec::ComplexMatrix& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

inline std::vector<std::complex<double>> eigen_eigenvalues(const qspec::ComplexMatrix& m) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m), false);
  const auto& v = solver.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

inline std::vector<std::complex<double>> eigen_eigenvalues(const qspec::RealMatrix& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(to_eigen(m), false);
  const auto& v = solver.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

// Largest distance under greedy nearest matching; infinity on a size mismatch.
inline double match_distance(const std::vector<std::complex<double>>& a, std::vector<std::complex<double>> b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  for (const auto& z : a) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < b.size(); ++k)
      if (std::abs(b[k] - z) < std::abs(b[best] - z)) best = k;
    worst = std::max(worst, std::abs(b[best] - z));
    b.erase(b.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return worst;
}

}  // namespace testing_support
