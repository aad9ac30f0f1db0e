#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cox/coxeter_core.hpp"

#include <cmath>
#include <random>

using namespace cox;

namespace {

// Minimal polynomials of 2cos(pi/N) from an independent computer-algebra run.
const std::vector<std::pair<long, std::vector<long>>> kMinpolyOracle = {
    {4, {-2, 0, 1}},
    {5, {-1, -1, 1}},
    {7, {1, -2, -1, 1}},
    {12, {1, 0, -4, 0, 1}},
    {30, {1, 0, -8, 0, 14, 0, -7, 0, 1}},
    {60, {1, 0, -96, 0, 440, 0, -784, 0, 714, 0, -364, 0, 105, 0, -16, 0, 1}},
};

Scalar random_scalar(const Field* f, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  std::vector<mpq_class> c;
  for (int k = 0; k < f->degree(); ++k) {
    mpq_class q(num(rng), den(rng));
    q.canonicalize();
    c.push_back(q);
  }
  return Scalar(f, c);
}

mpz_class fib(int k) {
  mpz_class a = 0, b = 1;
  for (int i = 0; i < k; ++i) {
    mpz_class t = a + b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

TEST_CASE("minimal polynomials agree with the frozen oracle") {
  for (const auto& [N, coeffs] : kMinpolyOracle) {
    const Field* f = Field::get(N);
    REQUIRE(f->minimal_polynomial().size() == coeffs.size());
    for (size_t k = 0; k < coeffs.size(); ++k) CHECK(f->minimal_polynomial()[k] == coeffs[k]);
    CHECK(f->degree() == int(coeffs.size()) - 1);
  }
}

TEST_CASE("field_for_labels") {
  CHECK(field_for_labels({3})->degree() == 1);
  CHECK(field_for_labels({kInfinity})->degree() == 1);
  const Field* f = field_for_labels({2, 3, 4, 5, 6});
  CHECK(f->N() == 60);
  CHECK(f->degree() == euler_phi(120) / 2);
  CHECK(f->degree() == 16);

  const double th = 2 * std::cos(M_PI / 60);
  double v = 0;
  for (size_t k = f->minimal_polynomial().size(); k-- > 0;)
    v = v * th + f->minimal_polynomial()[k].get_d();
  CHECK(std::fabs(v) < 1e-6);

  CHECK(field_for_labels({97})->degree() == 48);
  CHECK_THROWS_AS(field_for_labels({101}), DegreeOverflow);
  CHECK_THROWS_AS(field_for_labels({1}), std::invalid_argument);
}

TEST_CASE("cos_pi_over") {
  const Field* f = field_for_labels({2, 3, 4, 5, 6});
  CHECK(cos_pi_over(f, 2) == Scalar(0));
  CHECK(cos_pi_over(f, 3) == Scalar(mpq_class(1, 2)));
  CHECK(cos_pi_over(f, kInfinity) == Scalar(1));
  for (const Field* g : {Field::get(5), f}) {
    const Scalar x = cos_pi_over(g, 5);
    CHECK(Scalar(16) * x * x - Scalar(8) * x - Scalar(4) == Scalar(0));
    CHECK(x.sign() > 0);
    CHECK(std::fabs(x.to_double() - (1 + std::sqrt(5.0)) / 4) < 1e-12);
  }
  for (long m : {2, 3, 4, 5, 6, 10, 12, 15, 20, 30, 60})
    CHECK(std::fabs(cos_pi_over(f, m).to_double() - std::cos(M_PI / m)) < 1e-12);
  CHECK_THROWS_AS(cos_pi_over(f, 7), std::domain_error);
}

TEST_CASE("field axioms on random scalars") {
  std::mt19937 rng(20240611);
  for (long N : {5L, 12L, 60L}) {
    const Field* f = Field::get(N);
    for (int t = 0; t < 40; ++t) {
      const Scalar x = random_scalar(f, rng), y = random_scalar(f, rng), z = random_scalar(f, rng);
      CHECK((x + y) + z == x + (y + z));
      CHECK((x * y) * z == x * (y * z));
      CHECK(x * y == y * x);
      CHECK(x * (y + z) == x * y + x * z);
      if (!x.is_zero()) CHECK(x * x.inverse() == Scalar(1));
      const double dx = x.to_double(), dy = y.to_double();
      CHECK(std::fabs((x * y).to_double() - dx * dy) < 1e-8 * (1 + std::fabs(dx * dy)));
      if (std::fabs(dx) > 1e-9) CHECK(x.sign() == (dx > 0 ? 1 : -1));
    }
  }
}

TEST_CASE("sign refinement on near cancellations") {
  // Consecutive Fibonacci ratios straddle the golden ratio 2cos(pi/5) with gaps near 1e-33.
  const Field* f = Field::get(5);
  const Scalar th = Scalar::theta(f);
  CHECK((Scalar(mpq_class(fib(81), fib(80))) - th).sign() == 1);
  CHECK((Scalar(mpq_class(fib(80), fib(79))) - th).sign() == -1);
  CHECK((th * th - th - Scalar(1)).sign() == 0);
}

TEST_CASE("signature examples") {
  CHECK(signature(build_system("A2").gram) == Signature{2, 0, 0});
  CHECK(signature(build_system("affine:A2").gram) == Signature{2, 0, 1});
  CHECK(signature(build_system("triangle:4,3,3").gram) == Signature{2, 1, 0});
  QMat H(2, 2);
  H << 0, 1, 1, 0;
  CHECK(signature(H) == Signature{1, 1, 0});
  QMat Z = zeros<mpq_class>(3, 3);
  CHECK(signature(Z) == Signature{0, 0, 3});
}

TEST_CASE("signature is invariant under unimodular congruence") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> pick(0, 3), coef(-2, 2);
  for (std::string g : {"A3", "affine:A2", "triangle:4,3,3", "H3", "universal:3", "D4"}) {
    auto sys = build_system(g);
    const int n = sys.rank();
    for (int t = 0; t < 5; ++t) {
      Mat P = identity<Scalar>(n);
      for (int k = 0; k < 6; ++k) {
        int i = pick(rng) % n, j = pick(rng) % n;
        if (i == j) continue;
        Mat E = identity<Scalar>(n);
        E(i, j) = Scalar(coef(rng));
        P = P * E;
      }
      Mat C = P.transpose() * sys.gram * P;
      CHECK(signature(C) == sys.sig);
    }
  }
}

TEST_CASE("exact linear algebra helpers") {
  QMat A(3, 3);
  A << 2, 1, 0, 1, 1, 0, 0, 0, 3;
  QMat Ai = inverse_matrix(A);
  CHECK(is_identity<mpq_class>(QMat(A * Ai)));
  QMat B(2, 3);
  B << 1, 2, 3, 2, 4, 6;
  CHECK(rank(B) == 1);
  QMat K = kernel_basis(B);
  CHECK(K.cols() == 2);
  QMat BK = B * K;
  for (Eigen::Index i = 0; i < BK.rows(); ++i)
    for (Eigen::Index j = 0; j < BK.cols(); ++j) CHECK(BK(i, j) == 0);
  Mat S = build_system("H3").gram;
  CHECK(is_identity<Scalar>(Mat(S * inverse_matrix(S))));
}
