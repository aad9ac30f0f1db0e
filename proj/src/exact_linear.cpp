#include "cox/exact_linear.hpp"

#include <mpfr.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

namespace cox {

namespace {

IntPoly poly_divide_exact(IntPoly num, const IntPoly& den) {
  const size_t dn = den.size() - 1;
  IntPoly q(num.size() - dn, 0);
  for (size_t k = num.size(); k-- > dn;) {
    mpz_class c = num[k];
    if (c == 0) continue;
    q[k - dn] = c;
    for (size_t j = 0; j <= dn; ++j) num[k - dn + j] -= c * den[j];
  }
  return q;
}

}  // namespace

long euler_phi(long m) {
  long r = m;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    r -= r / p;
  }
  if (m > 1) r -= r / m;
  return r;
}

IntPoly cyclotomic_polynomial(long m) {
  static std::map<long, IntPoly> memo;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
  }
  IntPoly p(m + 1, 0);
  p[0] = -1;
  p[m] = 1;
  for (long d = 1; d < m; ++d)
    if (m % d == 0) p = poly_divide_exact(p, cyclotomic_polynomial(d));
  std::lock_guard<std::mutex> lk(mu);
  memo[m] = p;
  return p;
}

IntPoly dickson_polynomial(long k) {
  IntPoly prev{2}, cur{0, 1};
  if (k == 0) return prev;
  for (long j = 1; j < k; ++j) {
    IntPoly next(cur.size() + 1, 0);
    for (size_t i = 0; i < cur.size(); ++i) next[i + 1] += cur[i];
    for (size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

IntPoly theta_minimal_polynomial(long N) {
  if (N < 1) throw std::invalid_argument("theta_minimal_polynomial: N must be positive");
  if (N == 1) return {2, 1};
  // Phi_{2N} is palindromic of even degree 2k; write z^{-k} Phi(z) in x = z + 1/z.
  const IntPoly phi = cyclotomic_polynomial(2 * N);
  const long k = long(phi.size() - 1) / 2;
  IntPoly psi(k + 1, 0);
  psi[0] += phi[k];
  for (long j = 1; j <= k; ++j) {
    const IntPoly D = dickson_polynomial(j);
    for (size_t i = 0; i < D.size(); ++i) psi[i] += phi[k + j] * D[i];
  }
  return psi;
}

Field::Field(long N, int degree_cap) : N_(N) {
  degree_ = N <= 2 ? 1 : int(euler_phi(2 * N) / 2);
  if (degree_ > degree_cap)
    throw DegreeOverflow("field degree " + std::to_string(degree_) + " for N = " +
                         std::to_string(N) + " exceeds cap " + std::to_string(degree_cap));
  minpoly_ = theta_minimal_polynomial(N);
  if (degree_ == 1) rational_theta_ = mpq_class(-minpoly_[0]);
}

const Field* Field::get(long N, int degree_cap) {
  static std::map<long, std::unique_ptr<Field>> table;
  static std::mutex mu;
  const int deg = N <= 2 ? 1 : int(euler_phi(2 * N) / 2);
  if (deg > degree_cap)
    throw DegreeOverflow("field degree " + std::to_string(deg) + " for N = " + std::to_string(N) +
                         " exceeds cap " + std::to_string(degree_cap));
  std::lock_guard<std::mutex> lk(mu);
  auto& slot = table[N];
  if (!slot) slot.reset(new Field(N, degree_cap));
  return slot.get();
}

void Field::reduce(std::vector<mpq_class>& c) const {
  const size_t d = size_t(degree_);
  if (d == 1) {
    mpq_class v = 0, p = 1;
    for (auto& x : c) {
      v += x * p;
      p *= rational_theta_;
    }
    c.assign(1, v);
    return;
  }
  for (size_t k = c.size(); k-- > d;) {
    if (c[k] == 0) continue;
    const mpq_class q = c[k];
    for (size_t j = 0; j < d; ++j) c[k - d + j] -= q * minpoly_[j];
    c[k] = 0;
  }
  if (c.size() > d) c.resize(d);
}

const Field* field_for_labels(const std::vector<long>& labels, int degree_cap) {
  long N = 1;
  for (long m : labels) {
    if (m == kInfinity) continue;
    if (m < 2) throw std::invalid_argument("Coxeter label must be at least 2");
    N = std::lcm(N, m);
  }
  return Field::get(N, degree_cap);
}

Scalar cos_pi_over(const Field* f, long m) {
  if (m == kInfinity) return Scalar(1);
  if (m < 2 || f->N() % m != 0)
    throw std::domain_error("cos_pi_over: " + std::to_string(m) + " does not divide N = " +
                            std::to_string(f->N()));
  const IntPoly D = dickson_polynomial(f->N() / m);
  std::vector<mpq_class> c(D.begin(), D.end());
  f->reduce(c);
  for (auto& x : c) x /= 2;
  return Scalar(f, std::move(c));
}

Scalar::Scalar(const mpq_class& q) {
  if (q != 0) c_.push_back(q);
}

Scalar::Scalar(const Field* f, std::vector<mpq_class> coeffs) : field_(f), c_(std::move(coeffs)) {
  if (f && c_.size() > size_t(f->degree())) f->reduce(c_);
  if (f && f->degree() == 1) f->reduce(c_);
  normalize();
}

Scalar Scalar::theta(const Field* f) {
  if (f->degree() == 1) return Scalar(f->rational_theta());
  return Scalar(f, {mpq_class(0), mpq_class(1)});
}

void Scalar::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
  if (c_.size() <= 1) field_ = nullptr;
}

mpq_class Scalar::coeff(int k) const { return size_t(k) < c_.size() ? c_[k] : mpq_class(0); }

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.c_.empty()) return *this;
  if (!field_) field_ = o.field_;
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (o.c_.empty()) return *this;
  if (!field_) field_ = o.field_;
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  normalize();
  return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.c_.empty() || b.c_.empty()) return Scalar();
  if (a.c_.size() == 1 || b.c_.size() == 1) {
    const Scalar& big = a.c_.size() == 1 ? b : a;
    const mpq_class& q = a.c_.size() == 1 ? a.c_[0] : b.c_[0];
    Scalar r = big;
    for (auto& x : r.c_) x *= q;
    return r;
  }
  const Field* f = a.field_ ? a.field_ : b.field_;
  std::vector<mpq_class> c(a.c_.size() + b.c_.size() - 1, 0);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return Scalar(f, std::move(c));
}

Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }

Scalar Scalar::inverse() const {
  if (c_.empty()) throw std::domain_error("Scalar: division by zero");
  if (c_.size() == 1) return Scalar(mpq_class(1) / c_[0]);
  const int d = field_->degree();
  QMat M(d, d + 1);
  for (int j = 0; j < d; ++j) {
    std::vector<mpq_class> col(size_t(d), 0);
    col[j] = 1;
    Scalar basis(field_, col);
    Scalar prod = *this * basis;
    for (int i = 0; i < d; ++i) M(i, j) = prod.coeff(i);
  }
  for (int i = 0; i < d; ++i) M(i, d) = i == 0 ? 1 : 0;
  row_reduce(M);
  std::vector<mpq_class> y(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) y[i] = M(i, d);
  return Scalar(field_, std::move(y));
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this = *this * o.inverse(); }

double Scalar::to_double() const {
  if (c_.empty()) return 0.0;
  if (c_.size() == 1) return c_[0].get_d();
  const long double th = 2.0L * std::cos(3.14159265358979323846264338327950288L / field_->N());
  long double v = 0;
  for (size_t k = c_.size(); k-- > 0;) v = v * th + c_[k].get_d();
  return double(v);
}

int Scalar::sign() const {
  if (c_.empty()) return 0;
  if (c_.size() == 1) return sgn(c_[0]);
  const size_t d = c_.size();
  double scale = 0, p2 = 1;
  for (size_t k = 0; k < d; ++k, p2 *= 2) scale += std::fabs(c_[k].get_d()) * p2;
  const double slack = scale * double(4 * d + 8);
  const double v = to_double();
  if (std::isfinite(v) && std::fabs(v) > slack * std::ldexp(1.0, -48)) return v > 0 ? 1 : -1;

  // The value is nonzero because theta has degree d; refine until the error bound clears it.
  for (mpfr_prec_t prec = 128; prec <= (mpfr_prec_t(1) << 20); prec *= 2) {
    mpfr_t th, acc, cq, bound;
    mpfr_inits2(prec, th, acc, cq, bound, (mpfr_ptr)0);
    mpfr_const_pi(th, MPFR_RNDN);
    mpfr_div_si(th, th, field_->N(), MPFR_RNDN);
    mpfr_cos(th, th, MPFR_RNDN);
    mpfr_mul_ui(th, th, 2, MPFR_RNDN);
    mpfr_set_zero(acc, 1);
    for (size_t k = d; k-- > 0;) {
      mpfr_mul(acc, acc, th, MPFR_RNDN);
      mpfr_set_q(cq, c_[k].get_mpq_t(), MPFR_RNDN);
      mpfr_add(acc, acc, cq, MPFR_RNDN);
    }
    mpfr_set_d(bound, slack, MPFR_RNDU);
    mpfr_mul_2si(bound, bound, -long(prec) + 4, MPFR_RNDU);
    int s = 0;
    if (mpfr_cmpabs(acc, bound) > 0) s = mpfr_sgn(acc);
    mpfr_clears(th, acc, cq, bound, (mpfr_ptr)0);
    if (s != 0) return s;
  }
  throw std::runtime_error("Scalar::sign: precision limit reached");
}

std::string Scalar::str() const {
  if (c_.empty()) return "0";
  if (c_.size() == 1) return c_[0].get_str();
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    mpq_class q = c_[k];
    if (!first) os << (q < 0 ? "-" : "+");
    else if (q < 0) os << "-";
    first = false;
    q = abs(q);
    if (k == 0) {
      os << q.get_str();
      continue;
    }
    if (q != 1) os << q.get_str() << "*";
    os << "t";
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.str(); }

std::string matrix_key(const Mat& M) {
  std::string s;
  s.reserve(size_t(M.size()) * 4);
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      const auto& c = M(i, j).coeffs();
      for (size_t k = 0; k < c.size(); ++k) {
        if (k) s += ',';
        s += c[k].get_str();
      }
      s += ';';
    }
  return s;
}

Eigen::MatrixXd to_double(const Mat& M) {
  Eigen::MatrixXd D(M.rows(), M.cols());
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j) D(i, j) = M(i, j).to_double();
  return D;
}

Eigen::VectorXd to_double(const Vec& v) {
  Eigen::VectorXd D(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) D(i) = v(i).to_double();
  return D;
}

}  // namespace cox
