#pragma once

#include <Eigen/Core>
#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cox {

// Coxeter label for m(s,t) = infinity.
constexpr long kInfinity = 0;

struct DegreeOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Q(theta) with theta = 2cos(pi/N), kept in the power basis 1, theta, ..., theta^(d-1).
class Field {
 public:
  static const Field* get(long N, int degree_cap = 48);

  long N() const { return N_; }
  int degree() const { return degree_; }
  // Monic integer polynomial of theta, lowest coefficient first.
  const std::vector<mpz_class>& minimal_polynomial() const { return minpoly_; }
  // Rational value of theta when the degree is 1.
  const mpq_class& rational_theta() const { return rational_theta_; }

  // Reduces a coefficient vector of arbitrary length modulo the minimal polynomial.
  void reduce(std::vector<mpq_class>& c) const;

 private:
  Field(long N, int degree_cap);
  long N_;
  int degree_;
  std::vector<mpz_class> minpoly_;
  mpq_class rational_theta_;
};

// Integer polynomials, lowest coefficient first.
using IntPoly = std::vector<mpz_class>;
IntPoly cyclotomic_polynomial(long m);
IntPoly theta_minimal_polynomial(long N);
long euler_phi(long m);

class Scalar {
 public:
  Scalar() = default;
  Scalar(int v) : Scalar(mpq_class(v)) {}
  Scalar(long v) : Scalar(mpq_class(v)) {}
  Scalar(const mpq_class& q);
  Scalar(const Field* f, std::vector<mpq_class> coeffs);

  static Scalar theta(const Field* f);

  const Field* field() const { return field_; }
  bool is_zero() const { return c_.empty(); }
  bool is_rational() const { return c_.size() <= 1; }
  mpq_class coeff(int k) const;
  const std::vector<mpq_class>& coeffs() const { return c_; }

  int sign() const;
  double to_double() const;
  std::string str() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar inverse() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  friend bool operator<(const Scalar& a, const Scalar& b) { return (a - b).sign() < 0; }
  friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return !(b < a); }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return !(a < b); }

 private:
  void normalize();
  const Field* field_ = nullptr;
  std::vector<mpq_class> c_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& x);

inline int sign(const Scalar& x) { return x.sign(); }
inline int sign(const mpq_class& x) { return sgn(x); }
inline int sign(const mpz_class& x) { return sgn(x); }
inline bool is_zero(const Scalar& x) { return x.is_zero(); }
inline bool is_zero(const mpq_class& x) { return sgn(x) == 0; }
inline bool is_zero(const mpz_class& x) { return sgn(x) == 0; }

}  // namespace cox

namespace Eigen {

template <>
struct NumTraits<cox::Scalar> : GenericNumTraits<cox::Scalar> {
  typedef cox::Scalar Real;
  typedef cox::Scalar NonInteger;
  typedef cox::Scalar Nested;
  typedef cox::Scalar Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 32,
    MulCost = 96
  };
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  typedef mpq_class Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 16,
    MulCost = 32
  };
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  typedef mpz_class Real;
  typedef mpq_class NonInteger;
  typedef mpz_class Nested;
  typedef mpz_class Literal;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 8,
    MulCost = 16
  };
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace cox {

template <class T>
using MatrixX = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using VectorX = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using Mat = MatrixX<Scalar>;
using Vec = VectorX<Scalar>;
using QMat = MatrixX<mpq_class>;
using ZMat = MatrixX<mpz_class>;

// Field generated by every 2cos(pi/m) for the finite labels; kInfinity entries need no extension.
const Field* field_for_labels(const std::vector<long>& labels, int degree_cap = 48);

// cos(pi/m) in the field; for m = kInfinity returns 1 so that the Gram entry -cos is -1.
Scalar cos_pi_over(const Field* f, long m);

// Chebyshev-type polynomial D_k with D_k(2cos x) = 2cos(kx), lowest coefficient first.
IntPoly dickson_polynomial(long k);

struct Signature {
  int plus = 0;
  int minus = 0;
  int zero = 0;
  friend bool operator==(const Signature& a, const Signature& b) {
    return a.plus == b.plus && a.minus == b.minus && a.zero == b.zero;
  }
};

// Sylvester inertia by symmetric pivoting; congruences only, so the counts are exact.
template <class T>
Signature signature(MatrixX<T> A) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n) throw std::invalid_argument("signature: matrix is not square");
  Signature s;
  Eigen::Index k = 0;
  while (k < n) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = k; i < n; ++i)
      if (!is_zero(A(i, i))) {
        piv = i;
        break;
      }
    if (piv < 0) {
      Eigen::Index pi = -1, pj = -1;
      for (Eigen::Index i = k; i < n && pi < 0; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
          if (!is_zero(A(i, j))) {
            pi = i;
            pj = j;
            break;
          }
      if (pi < 0) {
        s.zero += int(n - k);
        break;
      }
      A.row(pi) += A.row(pj).eval();
      A.col(pi) += A.col(pj).eval();
      piv = pi;
    }
    if (piv != k) {
      A.row(piv).swap(A.row(k));
      A.col(piv).swap(A.col(k));
    }
    const T p = A(k, k);
    if (sign(p) > 0)
      ++s.plus;
    else
      ++s.minus;
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (is_zero(A(i, k))) continue;
      const T f = A(i, k) / p;
      for (Eigen::Index j = k + 1; j < n; ++j) A(i, j) -= f * A(k, j);
    }
    ++k;
  }
  return s;
}

// Reduced row echelon form; returns pivot columns.
template <class T>
std::vector<Eigen::Index> row_reduce(MatrixX<T>& A) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < A.cols() && r < A.rows(); ++c) {
    Eigen::Index p = -1;
    for (Eigen::Index i = r; i < A.rows(); ++i)
      if (!is_zero(A(i, c))) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r) A.row(p).swap(A.row(r));
    const T inv = T(1) / A(r, c);
    for (Eigen::Index j = c; j < A.cols(); ++j) A(r, j) *= inv;
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      if (i == r || is_zero(A(i, c))) continue;
      const T f = A(i, c);
      for (Eigen::Index j = c; j < A.cols(); ++j) A(i, j) -= f * A(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class T>
int rank(MatrixX<T> A) {
  return int(row_reduce(A).size());
}

// Columns form a basis of the right kernel.
template <class T>
MatrixX<T> kernel_basis(MatrixX<T> A) {
  auto piv = row_reduce(A);
  std::vector<char> is_piv(A.cols(), 0);
  for (auto c : piv) is_piv[c] = 1;
  std::vector<Eigen::Index> free;
  for (Eigen::Index c = 0; c < A.cols(); ++c)
    if (!is_piv[c]) free.push_back(c);
  MatrixX<T> K(A.cols(), Eigen::Index(free.size()));
  for (Eigen::Index i = 0; i < K.rows(); ++i)
    for (Eigen::Index j = 0; j < K.cols(); ++j) K(i, j) = T(0);
  for (size_t f = 0; f < free.size(); ++f) {
    K(free[f], Eigen::Index(f)) = T(1);
    for (size_t r = 0; r < piv.size(); ++r) K(piv[r], Eigen::Index(f)) = -A(Eigen::Index(r), free[f]);
  }
  return K;
}

template <class T>
MatrixX<T> inverse_matrix(const MatrixX<T>& A) {
  const Eigen::Index n = A.rows();
  MatrixX<T> M(n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      M(i, j) = A(i, j);
      M(i, n + j) = T(i == j ? 1 : 0);
    }
  auto piv = row_reduce(M);
  if (Eigen::Index(piv.size()) < n || piv[n - 1] != n - 1)
    throw std::domain_error("inverse_matrix: matrix is singular");
  return M.rightCols(n);
}

template <class T>
MatrixX<T> identity(Eigen::Index n) {
  MatrixX<T> I(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) I(i, j) = T(i == j ? 1 : 0);
  return I;
}

template <class T>
MatrixX<T> zeros(Eigen::Index r, Eigen::Index c) {
  MatrixX<T> Z(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) Z(i, j) = T(0);
  return Z;
}

template <class T>
bool is_identity(const MatrixX<T>& A) {
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      if (A(i, j) != T(i == j ? 1 : 0)) return false;
  return true;
}

// Canonical text key of an exact matrix; equal keys iff equal matrices.
std::string matrix_key(const Mat& M);
Eigen::MatrixXd to_double(const Mat& M);
Eigen::VectorXd to_double(const Vec& v);

}  // namespace cox
