#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cox/axial_geometry.hpp"
#include "cox/dual_interval.hpp"

#include <algorithm>
#include <cmath>
#include <set>

using namespace cox;

namespace {

std::vector<int> subset_below(const LabeledInterval& P) {
  std::set<int> s;
  for (const auto& c : P.covers) s.insert(c.label);
  return {s.begin(), s.end()};
}

int position(const AxialOrdering& o, int r) {
  return int(std::find(o.order.begin(), o.order.end(), r) - o.order.begin());
}

}  // namespace

TEST_CASE("spectral reports") {
  struct Row {
    std::string g;
    std::vector<int> e;
    long h;
  };
  for (const auto& [g, e, h] : std::vector<Row>{{"A3", {1, 2, 3}, 4},
                                                {"H3", {1, 5, 9}, 10},
                                                {"G2", {1, 5}, 6},
                                                {"D4", {1, 3, 3, 5}, 6},
                                                {"B3", {1, 3, 5}, 6}}) {
    auto sys = build_system(g);
    auto rep = spectral_report(sys, coxeter_element(sys));
    CHECK(rep.exponents == e);
    CHECK(rep.coxeter_number == h);
    CHECK(rep.max_residual < kAxialTolerance);
    std::vector<int> mirrored;
    for (int x : rep.exponents) mirrored.push_back(int(h) - x);
    std::sort(mirrored.begin(), mirrored.end());
    CHECK(mirrored == rep.exponents);
  }
  CHECK_THROWS_AS(spectral_report(build_system("affine:A2"), coxeter_element(build_system("affine:A2"))),
                  NotSpherical);
}

TEST_CASE("reference Coxeter data rows") {
  for (std::string g : {"A2", "A3", "B2", "B3", "D4", "G2", "H3", "I2:5", "I2:7", "I2:12"}) {
    auto c = verify_table1(g);
    INFO(c.summary);
    CHECK(c.enumerated);
    CHECK(c.exponents_match);
    CHECK(c.h_match);
    CHECK(c.order_match);
    CHECK(c.order == c.product_formula);
  }
  CHECK(verify_table1("H3").summary == "h = 10, exponents 1,5,9, |W| = 120: MATCH");
  auto f4 = verify_table1("F4");
  CHECK(f4.order == 1152);
  CHECK(f4.printed.order == 48);
  CHECK_FALSE(f4.order_match);
  CHECK(f4.summary.find("MISMATCH") != std::string::npos);
  CHECK(f4.summary.find("48") != std::string::npos);
  CHECK(f4.summary.find("1152") != std::string::npos);
  CHECK_FALSE(table1_row("affine:A2").has_value());
}

TEST_CASE("spherical axis is the rotation plane") {
  auto sys = build_system("A3");
  auto w = coxeter_element(sys).matrix;
  auto ax = axis(sys, w);
  CHECK(ax.kind == AxisKind::spherical);
  CHECK(ax.coxeter_number == 4);
  CHECK(ax.invariance_error < kAxialTolerance);
  const Eigen::MatrixXd B = to_double(sys.gram);
  Eigen::MatrixXd G = ax.plane.transpose() * B * ax.plane;
  CHECK((G - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("displacement sampling check") {
  for (std::string g : {"A3", "B3"}) {
    auto sys = build_system(g);
    auto rep = lemma_check(sys, coxeter_element(sys).matrix, 1000, 20240611);
    CHECK(rep.samples == 1000);
    CHECK(rep.violations == 0);
    CHECK(rep.axis_spread < 1e-10);
    CHECK(rep.axis_displacement == doctest::Approx(2 * M_PI / (g == "A3" ? 4 : 6)));
  }
}

TEST_CASE("affine axis") {
  auto sys = build_system("affine:A2");
  auto w = coxeter_element(sys).matrix;
  auto ax = axis(sys, w);
  CHECK(ax.kind == AxisKind::euclidean);
  CHECK(ax.invariance_error < kAxialTolerance);
  CHECK(ax.point(0) == doctest::Approx(0.25));
  CHECK(ax.point(1) == doctest::Approx(0.5));
  CHECK(ax.point(2) == doctest::Approx(0.25));
  const Eigen::VectorXd moved = ax.dual_action * ax.point - ax.point;
  CHECK((moved - ax.translation * ax.direction).norm() < 1e-10);
  auto seg = fundamental_segment(ax);
  CHECK(seg.first < 0);
  CHECK(seg.second > 0);
}

TEST_CASE("hyperbolic axis") {
  auto sys = build_system("triangle:4,3,3");
  auto ax = axis(sys, coxeter_element(sys).matrix);
  CHECK(ax.kind == AxisKind::hyperbolic);
  CHECK(ax.lambda > 1);
  CHECK(ax.invariance_error < 1e-6);
  // Power iteration reaches the same attracting ray.
  Eigen::VectorXd v = Eigen::VectorXd::Ones(3);
  for (int k = 0; k < 200; ++k) v = (ax.dual_action * v).normalized();
  CHECK(std::min((v - ax.ray_plus).norm(), (v + ax.ray_plus).norm()) < 1e-8);
}

TEST_CASE("chamber location is exact") {
  auto sys = build_system("A3");
  auto E = enumerate(sys);
  for (size_t k = 0; k < E.size(); k += 3) {
    // An interior point of g C0: g^{-T} applied to (1,2,3).
    const Mat& g = E.elements[k].matrix;
    Vec F = Vec::Constant(3, Scalar(0));
    F << Scalar(1), Scalar(2), Scalar(3);
    Vec gF = inverse_matrix<Scalar>(g).transpose() * F;
    CHECK(locate_chamber(sys, gF).matrix == g);
  }
}

TEST_CASE("axial chambers") {
  auto a2 = build_system("I2:3");
  auto R = enumerate_reflections(a2);
  auto ax = axis(a2, coxeter_element(a2).matrix);
  auto ch = axial_chambers(a2, ax, R, 0, 2 * M_PI);
  CHECK(ch.size() % 2 == 0);
  CHECK(ch.size() == 6);
  for (size_t k = 0; k < ch.size(); ++k) {
    const Mat& g = ch[k].element.matrix;
    const Mat& h = ch[(k + 1) % ch.size()].element.matrix;
    CHECK(R.find(Mat(inverse_matrix<Scalar>(g) * h)) >= 0);
    Mat d = inverse_matrix<Scalar>(g) * h;
    bool simple = false;
    for (const auto& s : a2.simple) simple = simple || d == s;
    CHECK(simple);
  }

  auto a3 = build_system("A3");
  auto ch3 = axial_chambers(a3, axis(a3, coxeter_element(a3).matrix), enumerate_reflections(a3), 0,
                            2 * M_PI);
  CHECK(ch3.size() == 8);

  auto aff = build_system("affine:A2");
  auto w = coxeter_element(aff).matrix;
  auto axa = axis(aff, w);
  auto cha = axial_chambers(aff, axa, enumerate_reflections(aff), -3, 3);
  bool has_fundamental = false;
  for (const auto& c : cha) has_fundamental = has_fundamental || is_identity<Scalar>(c.element.matrix);
  CHECK(has_fundamental);
  // w translates the axial chambers along the axis.
  for (const auto& c : cha) {
    Mat moved = w * c.element.matrix;
    CHECK(locate_chamber(aff, rationalize(axis_point(axa, c.parameter + axa.translation))).matrix == moved);
  }
}

TEST_CASE("axial factorization check") {
  auto a3 = build_system("A3");
  auto w = coxeter_element(a3).matrix;
  CHECK(axial_factorization_check(a3, w, {a3.identity(), {}}).found);

  auto aff = build_system("affine:A2");
  auto wa = coxeter_element(aff).matrix;
  auto axa = axis(aff, wa);
  for (const auto& c : axial_chambers(aff, axa, enumerate_reflections(aff), -3, 3))
    CHECK(axial_factorization_check(aff, wa, c.element).found);

  auto a2 = build_system("A2");
  GroupElement across_a{a2.simple[0], {0}};
  auto w2 = coxeter_element(a2).matrix;
  auto r1 = axial_factorization_check(a2, w2, across_a, {0, 1});
  auto r2 = axial_factorization_check(a2, w2, across_a, {1, 0});
  CHECK(r1.found == r2.found);
}

TEST_CASE("axial ordering of S4") {
  auto sys = build_system("triangle:2,3,3");
  auto R = enumerate_reflections(sys);
  auto w = coxeter_element(sys).matrix;
  auto o = axial_ordering(sys, w, R);
  auto lab = [&](std::vector<int> word) { return R.find(sys.word_matrix(word)); };
  const int a = lab({0}), b = lab({1}), c = lab({2}), d = lab({0, 2, 1, 2, 0}), e = lab({2, 0, 2}),
            f = lab({2, 1, 2});
  CHECK(std::max(position(o, a), position(o, b)) < position(o, d));
  CHECK(position(o, d) < std::min(position(o, e), position(o, f)));
  CHECK(std::max(position(o, e), position(o, f)) < position(o, c));
  std::set<std::set<int>> ties;
  for (auto& t : o.tie_classes) ties.insert({t.begin(), t.end()});
  CHECK(ties == std::set<std::set<int>>{{a, b}, {e, f}});

  auto P = build_interval(sys, w, R);
  auto res = tie_resolutions(o);
  CHECK(res.size() == 4);
  for (const auto& r : res) CHECK(el_check(P, r).ok);
}

TEST_CASE("axial orderings pass el_check for every tie resolution") {
  for (std::string g : {"A2", "A3", "B3"}) {
    INFO(g);
    auto sys = build_system(g);
    auto R = enumerate_reflections(sys);
    auto w = coxeter_element(sys).matrix;
    auto P = build_interval(sys, w, R);
    auto o = axial_ordering(sys, w, R);
    CHECK(axial_factorization_check(sys, w, o.base_chamber).found);
    for (const auto& r : tie_resolutions(o)) CHECK(el_check(P, r).ok);
  }
  auto a2 = build_system("A2");
  auto R = enumerate_reflections(a2);
  auto o = axial_ordering(a2, coxeter_element(a2).matrix, R);
  CHECK(o.tie_classes.empty());
  CHECK(o.order.size() == 3);
}

TEST_CASE("base point perturbation leaves the ordering unchanged") {
  for (std::string g : {"A3", "B3", "affine:A2"}) {
    auto sys = build_system(g);
    auto R = enumerate_reflections(sys);
    auto w = coxeter_element(sys).matrix;
    std::vector<int> sub;
    if (sys.classification != Geometry::spherical) sub = subset_below(build_interval(sys, w, R));
    auto o = axial_ordering(sys, w, R, sub);
    auto ax = axis(sys, w);
    auto [lo, hi] = chamber_segment(ax, o.base_chamber.matrix);
    for (double f : {0.1, 0.3, 0.7, 0.9}) {
      auto q = axial_ordering(sys, w, R, sub, o.base_chamber, lo + f * (hi - lo));
      CHECK(q.order == o.order);
    }
    CHECK_THROWS_AS(axial_ordering(sys, w, R, sub, o.base_chamber, hi + 1), std::invalid_argument);
  }
}

TEST_CASE("affine axial ordering sides") {
  auto sys = build_system("affine:A2");
  auto R = enumerate_reflections(sys);
  auto w = coxeter_element(sys).matrix;
  auto P = build_interval(sys, w, R);
  auto o = axial_ordering(sys, w, R, subset_below(P));
  const int b = R.find(sys.simple[1]);
  CHECK(o.side[b] == Side::horizontal);
  CHECK(o.side[R.find(sys.simple[0])] == Side::above);
  CHECK(o.side[R.find(sys.simple[2])] == Side::below);
  // Above reflections are met ahead of p in increasing distance.
  auto ax = axis(sys, w);
  double last = 0;
  for (int r : o.order) {
    if (o.side[r] != Side::above) break;
    const Eigen::VectorXd beta = to_double(R.roots[r]);
    const double t = -o.base_point.dot(beta) / ax.direction.dot(beta);
    CHECK(t > last);
    last = t;
  }
  auto j = ordering_to_json(o, R);
  CHECK(j["schema"] == 1);
  CHECK(j["order"].size() == o.order.size());
}
