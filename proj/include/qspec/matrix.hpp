#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "qspec/error.hpp"
#include "qspec/quaternion.hpp"

namespace qspec {

using Complex = std::complex<double>;

inline double conj_value(double v) { return v; }
inline Complex conj_value(const Complex& v) { return std::conj(v); }
inline Quaternion conj_value(const Quaternion& v) { return v.conj(); }

inline double modulus(double v) { return std::abs(v); }
inline double modulus(const Complex& v) { return std::abs(v); }
inline double modulus(const Quaternion& v) { return v.abs(); }

/// Column vector over a (possibly non-commutative) scalar ring.
template <typename T>
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n) : data_(n) {}
  Vector(std::initializer_list<T> init) : data_(init) {}
  explicit Vector(std::vector<T> data) : data_(std::move(data)) {}

  std::size_t dim() const { return data_.size(); }
  std::size_t size() const { return data_.size(); }
  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }
  std::span<const T> components() const { return data_; }
  std::vector<T>& raw() { return data_; }
  const std::vector<T>& raw() const { return data_; }

  static Vector basis(std::size_t n, std::size_t k) {
    Vector v(n);
    v[k] = T(1);
    return v;
  }

  Vector& operator+=(const Vector& o) {
    check_same(o);
    for (std::size_t i = 0; i < dim(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Vector& operator-=(const Vector& o) {
    check_same(o);
    for (std::size_t i = 0; i < dim(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator-(Vector a) {
    for (auto& v : a.data_) v = -v;
    return a;
  }

  /// Right scalar multiplication: components times s, s on the right.
  friend Vector operator*(Vector a, const T& s) {
    for (auto& v : a.data_) v = v * s;
    return a;
  }
  friend Vector operator*(Vector a, double s) requires(!std::is_same_v<T, double>) {
    for (auto& v : a.data_) v = v * s;
    return a;
  }

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  void check_same(const Vector& o) const {
    if (o.dim() != dim()) throw DimensionMismatch("vector dimensions differ");
  }
  std::vector<T> data_;
};

/// Dense row-major matrix. Entries multiply vector components from the left.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw DimensionMismatch("matrix data size does not match shape");
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionMismatch("ragged initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix diagonal(std::span<const T> d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<T>& raw() const { return data_; }

  Vector<T> column(std::size_t j) const {
    Vector<T> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(double s) {
    for (auto& v : data_) v = v * s;
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, double s) { return a *= s; }
  friend Matrix operator*(double s, Matrix a) { return a *= s; }
  friend Matrix operator-(Matrix a) { return a *= -1.0; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Vector<T> operator*(const Matrix& a, const Vector<T>& v) {
    if (a.cols_ != v.dim()) throw DimensionMismatch("matrix-vector shape mismatch");
    Vector<T> out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      T acc{};
      for (std::size_t j = 0; j < a.cols_; ++j) acc += a(i, j) * v[j];
      out[i] = acc;
    }
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  void check_same(const Matrix& o) const {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw DimensionMismatch("matrix shapes differ");
  }
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<Complex>;
using QMatrix = Matrix<Quaternion>;
using QVector = Vector<Quaternion>;

template <typename T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

/// Conjugate transpose; for a quaternionic matrix this is the Hilbert-space adjoint.
template <typename T>
Matrix<T> adjoint(const Matrix<T>& a) {
  Matrix<T> t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = conj_value(a(i, j));
  return t;
}

/// <phi|psi> = sum_k conj(phi_k) psi_k: right-linear in psi, left-antilinear in phi.
template <typename T>
T inner(const Vector<T>& phi, const Vector<T>& psi) {
  if (phi.dim() != psi.dim()) throw DimensionMismatch("inner product of vectors of different dimension");
  T acc{};
  for (std::size_t k = 0; k < phi.dim(); ++k) acc += conj_value(phi[k]) * psi[k];
  return acc;
}

template <typename T>
double norm(const Vector<T>& v) {
  double s = 0.0;
  for (const auto& c : v.components()) s += modulus(c) * modulus(c);
  return std::sqrt(s);
}

template <typename T>
double max_abs_diff(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix shapes differ");
  double m = 0.0;
  for (std::size_t k = 0; k < a.raw().size(); ++k) m = std::max(m, modulus(a.raw()[k] - b.raw()[k]));
  return m;
}

template <typename T>
double max_abs_diff(const Vector<T>& a, const Vector<T>& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("vector dimensions differ");
  double m = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k) m = std::max(m, modulus(a[k] - b[k]));
  return m;
}

template <typename T>
double frobenius_norm(const Matrix<T>& a) {
  double s = 0.0;
  for (const auto& v : a.raw()) s += modulus(v) * modulus(v);
  return std::sqrt(s);
}

// ---- real and complex forms of quaternionic objects -------------------------

/// 4x4 real matrix of p -> q p on coordinates (1, i, j, k).
inline RealMatrix left_mult_block(const Quaternion& q) {
  RealMatrix m(4, 4);
  const Quaternion basis[4] = {Quaternion(1), Quaternion::i(), Quaternion::j(), Quaternion::k()};
  for (std::size_t c = 0; c < 4; ++c) {
    const auto col = (q * basis[c]).coords();
    for (std::size_t r = 0; r < 4; ++r) m(r, c) = col[r];
  }
  return m;
}

/// 4x4 real matrix of p -> p q on coordinates (1, i, j, k).
inline RealMatrix right_mult_block(const Quaternion& q) {
  RealMatrix m(4, 4);
  const Quaternion basis[4] = {Quaternion(1), Quaternion::i(), Quaternion::j(), Quaternion::k()};
  for (std::size_t c = 0; c < 4; ++c) {
    const auto col = (basis[c] * q).coords();
    for (std::size_t r = 0; r < 4; ++r) m(r, c) = col[r];
  }
  return m;
}

/// Real coordinates of a quaternionic vector, component k occupying slots 4k..4k+3.
inline std::vector<double> real_coords(const QVector& v) {
  std::vector<double> out(4 * v.dim());
  for (std::size_t k = 0; k < v.dim(); ++k) {
    const auto c = v[k].coords();
    std::copy(c.begin(), c.end(), out.begin() + 4 * k);
  }
  return out;
}

inline QVector from_real_coords(std::span<const double> c) {
  if (c.size() % 4 != 0) throw DimensionMismatch("real coordinate length is not a multiple of 4");
  QVector v(c.size() / 4);
  for (std::size_t k = 0; k < v.dim(); ++k) v[k] = {c[4 * k], c[4 * k + 1], c[4 * k + 2], c[4 * k + 3]};
  return v;
}

/// 4n x 4n real representation: block (i, j) is left multiplication by a_ij.
inline RealMatrix real_rep(const QMatrix& a) {
  RealMatrix m(4 * a.rows(), 4 * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto& q = a(i, j);
      if (q.is_zero()) continue;
      const RealMatrix b = left_mult_block(q);
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) m(4 * i + r, 4 * j + c) = b(r, c);
    }
  return m;
}

/// Complex adjoint matrix [[A1, A2], [-conj(A2), conj(A1)]] of A = A1 + A2 j,
/// with q = (w + x i) + (y + z i) j.
inline ComplexMatrix complex_adjoint_rep(const QMatrix& a) {
  const std::size_t n = a.rows(), m = a.cols();
  ComplexMatrix c(2 * n, 2 * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const auto& q = a(i, j);
      const Complex a1(q.w, q.x), a2(q.y, q.z);
      c(i, j) = a1;
      c(i, m + j) = a2;
      c(n + i, j) = -std::conj(a2);
      c(n + i, m + j) = std::conj(a1);
    }
  return c;
}

inline ComplexMatrix to_complex(const RealMatrix& a) {
  ComplexMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  return c;
}

inline bool all_finite(const QMatrix& a) {
  return std::all_of(a.raw().begin(), a.raw().end(), [](const Quaternion& q) {
    return std::isfinite(q.w) && std::isfinite(q.x) && std::isfinite(q.y) && std::isfinite(q.z);
  });
}

}  // namespace qspec
