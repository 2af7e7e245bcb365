#pragma once

// Left scalar multiplication on a right quaternionic space, induced by a chosen
// orthonormal basis {phi_k}: q phi = sum_k phi_k q <phi_k | phi>. The basis is
// held as the columns of a unitary matrix U, so q phi = U diag(q) U^dagger phi.

#include <cmath>
#include <string>

#include "qspec/error.hpp"
#include "qspec/matrix.hpp"
#include "qspec/quaternion.hpp"

namespace qspec {

class LeftMultContext {
 public:
  static constexpr double unitarity_tol = 1e-10;

  /// Throws InvalidArgument unless U^dagger U = I to unitarity_tol.
  explicit LeftMultContext(QMatrix basis) : basis_(std::move(basis)) {
    if (!basis_.square() || basis_.rows() == 0) throw InvalidArgument("left-multiplication basis must be square");
    const double defect = max_abs_diff(adjoint(basis_) * basis_, QMatrix::identity(basis_.rows()));
    if (!(defect <= unitarity_tol))
      throw InvalidArgument("left-multiplication basis is not orthonormal (defect " + std::to_string(defect) + ")");
  }

  static LeftMultContext standard(std::size_t n) { return LeftMultContext(QMatrix::identity(n)); }

  std::size_t dim() const { return basis_.rows(); }
  const QMatrix& basis() const { return basis_; }
  QVector basis_vector(std::size_t k) const { return basis_.column(k); }

 private:
  QMatrix basis_;
};

inline QVector left_mul_vec(const LeftMultContext& ctx, const Quaternion& q, const QVector& phi) {
  if (phi.dim() != ctx.dim()) throw DimensionMismatch("vector does not match the left-multiplication basis");
  QVector out(ctx.dim());
  for (std::size_t k = 0; k < ctx.dim(); ++k) {
    const QVector bk = ctx.basis_vector(k);
    out += bk * (q * inner(bk, phi));
  }
  return out;
}

/// The matrix M_q = U diag(q) U^dagger of phi -> q phi.
inline QMatrix left_mul_matrix(const LeftMultContext& ctx, const Quaternion& q) {
  const std::size_t n = ctx.dim();
  const QMatrix& u = ctx.basis();
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Quaternion acc;
      for (std::size_t k = 0; k < n; ++k) acc += u(i, k) * q * u(j, k).conj();
      m(i, j) = acc;
    }
  return m;
}

/// (qA) phi = q (A phi).
inline QMatrix left_mul_op(const LeftMultContext& ctx, const Quaternion& q, const QMatrix& a) {
  if (a.rows() != ctx.dim()) throw DimensionMismatch("operator does not match the left-multiplication basis");
  return left_mul_matrix(ctx, q) * a;
}

/// (Aq) phi = A (q phi).
inline QMatrix right_mul_op(const LeftMultContext& ctx, const QMatrix& a, const Quaternion& q) {
  if (a.cols() != ctx.dim()) throw DimensionMismatch("operator does not match the left-multiplication basis");
  return a * left_mul_matrix(ctx, q);
}

}  // namespace qspec
