#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cox/dual_interval.hpp"

#include <algorithm>
#include <numeric>
#include <set>

using namespace cox;

namespace {

// Noncrossing set partitions of {0..n-1}, counted by brute force over restricted growth strings.
long count_noncrossing(int n) {
  std::vector<int> block(n, 0);
  long count = 0;
  auto crossing = [&]() {
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c)
          for (int d = c + 1; d < n; ++d)
            if (block[a] == block[c] && block[b] == block[d] && block[a] != block[b]) return true;
    return false;
  };
  auto rec = [&](auto&& self, int i, int used) -> void {
    if (i == n) {
      if (!crossing()) ++count;
      return;
    }
    for (int b = 0; b <= used; ++b) {
      block[i] = b;
      self(self, i + 1, std::max(used, b + 1));
    }
  };
  rec(rec, 0, 0);
  return count;
}

using Perm = std::vector<int>;

Perm compose(const Perm& p, const Perm& q) {  // p after q
  Perm r(p.size());
  for (size_t i = 0; i < p.size(); ++i) r[i] = p[q[i]];
  return r;
}

// Ordered triples of transpositions of S_4 whose product is the 4-cycle (0 1 2 3).
long count_a3_factorizations() {
  std::vector<Perm> T;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      Perm t{0, 1, 2, 3};
      std::swap(t[i], t[j]);
      T.push_back(t);
    }
  Perm target{1, 2, 3, 0};
  long c = 0;
  for (auto& x : T)
    for (auto& y : T)
      for (auto& z : T)
        if (compose(compose(x, y), z) == target) ++c;
  return c;
}

struct Fixture {
  CoxeterSystem sys;
  ReflectionSet refl;
  Mat w;
  LabeledInterval P;
  explicit Fixture(const std::string& g)
      : sys(build_system(g)), refl(enumerate_reflections(sys)), w(coxeter_element(sys).matrix),
        P(build_interval(sys, w, refl)) {}
};

int label_of(const ReflectionSet& R, const std::string& name) {
  auto it = std::find(R.names.begin(), R.names.end(), name);
  REQUIRE(it != R.names.end());
  return int(it - R.names.begin());
}

void check_invariants(const LabeledInterval& P) {
  for (const auto& c : P.covers) {
    CHECK(P.rank[c.upper] == P.rank[c.lower] + 1);
    CHECK(Mat(P.elements[c.lower].matrix * P.label_matrices[c.label]) ==
          P.elements[c.upper].matrix);
  }
  CHECK(is_identity<Scalar>(P.elements[P.bottom].matrix));
  for (int k = 0; k < P.size(); ++k) {
    if (k != P.bottom) CHECK_FALSE(P.down[k].empty());
    if (k != P.top) CHECK_FALSE(P.up[k].empty());
  }
}

}  // namespace

TEST_CASE("noncrossing oracle") {
  CHECK(count_noncrossing(3) == 5);
  CHECK(count_noncrossing(4) == 14);
  CHECK(count_noncrossing(5) == 42);
  CHECK(count_a3_factorizations() == 16);
}

TEST_CASE("interval sizes match noncrossing partition counts") {
  Fixture a2("A2");
  CHECK(a2.P.size() == 5);
  CHECK(long(a2.P.covers.size()) == 6);
  CHECK(a2.P.elements[a2.P.top].matrix == a2.w);
  CHECK(Fixture("A3").P.size() == count_noncrossing(4));
  CHECK(Fixture("A4").P.size() == count_noncrossing(5));
  auto a1 = Fixture("A1");
  CHECK(a1.P.size() == 2);
  CHECK(a1.P.covers.size() == 1);
}

TEST_CASE("graded and label-correct on every built interval") {
  for (std::string g : {"A1", "A2", "A3", "A4", "B2", "B3", "D4", "G2", "H3", "I2:5"}) {
    INFO(g);
    Fixture f(g);
    CHECK_FALSE(f.P.truncated);
    check_invariants(f.P);
  }
}

TEST_CASE("top-down and bottom-up builds agree") {
  for (std::string g : {"A3", "B3", "H3"}) {
    Fixture f(g);
    auto Q = build_interval_bottom_up(f.sys, f.w, f.refl);
    std::set<std::string> a, b;
    for (auto& e : f.P.elements) a.insert(e.key());
    for (auto& e : Q.elements) b.insert(e.key());
    CHECK(a == b);
    CHECK(f.P.covers.size() == Q.covers.size());
  }
}

TEST_CASE("moved-space and product backends agree") {
  Fixture f("B3");
  auto Q = build_interval(f.sys, f.w, f.refl, LengthMode::bfs);
  REQUIRE(Q.size() == f.P.size());
  for (int k = 0; k < Q.size(); ++k) CHECK(Q.elements[k].key() == f.P.elements[k].key());
}

TEST_CASE("lattice check") {
  for (std::string g : {"A2", "A3", "B3", "H3"}) {
    auto rep = lattice_check(Fixture(g).P);
    CHECK(rep.is_lattice);
    CHECK_FALSE(rep.witness.has_value());
  }
  auto bow = bowtie_fixture();
  auto rep = lattice_check(bow);
  CHECK_FALSE(rep.is_lattice);
  REQUIRE(rep.witness.has_value());
  CHECK(rep.witness_verified);
  CHECK(rep.witness->upper);
  CHECK(rep.witness->u == 1);
  CHECK(rep.witness->v == 2);
  CHECK(rep.witness->bounds == std::vector<int>{3, 4});
  CHECK_FALSE(verify_witness(bow, LatticeWitness{1, 2, true, {3, 5}}));
}

TEST_CASE("maximal chains") {
  Fixture a2("A2");
  auto ch = maximal_chains(a2.P);
  std::set<std::string> seqs;
  for (auto& c : ch.chains) {
    std::string s;
    for (int r : c.factors) s += a2.refl.names[r] + " ";
    seqs.insert(s);
  }
  // c = bab
  CHECK(seqs == std::set<std::string>{"a b ", "b bab ", "bab a "});
  CHECK(maximal_chains(Fixture("A1").P).chains.size() == 1);
  CHECK(long(maximal_chains(Fixture("A3").P).chains.size()) == count_a3_factorizations());
  CHECK(maximal_chains(Fixture("A3").P, 10).overflow);
}

TEST_CASE("Hurwitz moves") {
  Fixture a2("A2");
  const int a = label_of(a2.refl, "a"), b = label_of(a2.refl, "b"), c = label_of(a2.refl, "bab");
  Factorization ab{a2.w, {a, b}};
  auto bc = hurwitz_move(ab, 1, HurwitzDirection::fwd, a2.refl);
  CHECK(bc.factors == std::vector<int>{b, c});
  CHECK(hurwitz_move(bc, 1, HurwitzDirection::fwd, a2.refl).factors == std::vector<int>{c, a});
  CHECK(hurwitz_move(hurwitz_move(ab, 1, HurwitzDirection::inv, a2.refl), 1,
                     HurwitzDirection::fwd, a2.refl)
            .factors == ab.factors);
  CHECK_THROWS_AS(hurwitz_move(ab, 2, HurwitzDirection::fwd, a2.refl), std::out_of_range);
  CHECK_THROWS_AS(hurwitz_move(ab, 0, HurwitzDirection::fwd, a2.refl), std::out_of_range);

  auto aff = build_system("affine:A2");
  auto R1 = enumerate_reflections(aff, 1);
  Factorization f{aff.identity(), {0, 1}};
  CHECK_THROWS_AS(hurwitz_move(f, 1, HurwitzDirection::fwd, R1), TruncationError);
}

TEST_CASE("Hurwitz moves preserve products") {
  Fixture a3("A3");
  for (const auto& f : maximal_chains(a3.P).chains)
    for (int i = 1; i < 3; ++i)
      for (auto d : {HurwitzDirection::fwd, HurwitzDirection::inv}) {
        auto g = hurwitz_move(f, i, d, a3.refl);
        Mat prod = a3.sys.identity();
        for (int r : g.factors) prod = prod * a3.refl.reflections[r].matrix;
        CHECK(prod == f.target);
      }
}

TEST_CASE("Hurwitz orbits") {
  Fixture a2("A2");
  auto ch = maximal_chains(a2.P).chains;
  auto rep = hurwitz_orbits(ch, a2.refl);
  CHECK(rep.transitive);
  CHECK(rep.orbits.size() == 1);
  CHECK(rep.orbits[0].size() == 3);

  Factorization single{a2.refl.reflections[0].matrix, {0}};
  auto one = hurwitz_orbits({single}, a2.refl);
  CHECK(one.orbits[0].size() == 1);

  Fixture a3("A3");
  auto ch3 = maximal_chains(a3.P).chains;
  auto r3 = hurwitz_orbits({ch3.front()}, a3.refl);
  CHECK(r3.transitive);
  REQUIRE(r3.orbits.size() == 1);
  CHECK(long(r3.orbits[0].size()) == count_a3_factorizations());
  std::vector<std::vector<int>> all;
  for (auto& f : ch3) all.push_back(f.factors);
  std::sort(all.begin(), all.end());
  CHECK(r3.orbits[0] == all);
}

TEST_CASE("EL check") {
  Fixture a2("A2");
  const int a = label_of(a2.refl, "a"), b = label_of(a2.refl, "b"), c = label_of(a2.refl, "bab");
  // With a < b < c both ab and bc increase, so the top element fails.
  auto naive = el_check(a2.P, {a, b, c});
  CHECK_FALSE(naive.ok);
  REQUIRE(naive.failures.size() == 1);
  CHECK(naive.failures[0].element == a2.P.top);
  CHECK(naive.failures[0].increasing_chains == 2);
  auto rep = el_check(a2.P, {a, c, b});
  CHECK(rep.ok);
  CHECK(rep.failures.empty());

  // Either a unique increasing chain everywhere or an explicit failure.
  auto other = el_check(a2.P, {b, a, c});
  CHECK(other.ok == other.failures.empty());
  for (const auto& f : other.failures)
    CHECK((f.increasing_chains != 1 || !f.increasing_is_lex_first));

  CHECK_THROWS_AS(el_check(a2.P, {a, b}), std::invalid_argument);

  // Axial order on the triangle labeling of A3.
  auto sys = build_system("triangle:2,3,3");
  auto R = enumerate_reflections(sys);
  auto P = build_interval(sys, coxeter_element(sys).matrix, R);
  std::vector<int> fig6;
  // Roots d = a+b+c, e = a+c, f = b+c.
  auto lab = [&](std::vector<int> word) { return R.find(sys.word_matrix(word)); };
  fig6 = {lab({0}), lab({1}), lab({0, 2, 1, 2, 0}), lab({2, 0, 2}), lab({2, 1, 2}), lab({2})};
  for (int x : fig6) REQUIRE(x >= 0);
  CHECK(el_check(P, fig6).ok);
}

TEST_CASE("factorization subgroups") {
  Fixture a2("A2");
  auto ch = maximal_chains(a2.P).chains;
  CHECK(factorization_subgroup(ch[0], a2.refl).size() == 6);
  Factorization single{a2.refl.reflections[1].matrix, {1}};
  CHECK(factorization_subgroup(single, a2.refl).size() == 2);
  auto cmp = compare_factorization_subgroups(ch, a2.refl);
  CHECK(cmp.all_equal);
  CHECK(cmp.complete);
  CHECK(cmp.sizes == std::vector<size_t>{6, 6, 6});
  CHECK_THROWS(factorization_subgroup(single, a2.refl, 0, 10));
}

TEST_CASE("every element tops the interval of its own reflection subgroup") {
  for (std::string g : {"A2", "B2", "G2", "I2:5", "A3", "B3", "H3", "D4"}) {
    CAPTURE(g);
    Fixture f(g);
    auto rep = subgroup_top_check(f.sys, f.P, f.refl);
    CHECK(rep.ok);
    CHECK(rep.complete);
    CHECK(rep.checked == f.P.size() - 1);
  }
  auto sys = build_system("affine:A2");
  auto R = enumerate_reflections(sys);
  CHECK_THROWS_AS(subgroup_top_check(sys, build_interval(sys, coxeter_element(sys).matrix, R), R),
                  TruncationError);
}

TEST_CASE("affine interval is flagged truncated") {
  auto sys = build_system("affine:A2");
  auto R = enumerate_reflections(sys);
  auto P = build_interval(sys, coxeter_element(sys).matrix, R);
  CHECK(P.truncated);
  check_invariants(P);
  CHECK(P.rank[P.top] == 3);
  CHECK(lattice_check(P).truncation_caveat);
}

TEST_CASE("exports") {
  Fixture a2("A2");
  auto j = interval_to_json(a2.P);
  CHECK(j["schema"] == 1);
  CHECK(j["elements"].size() == 5);
  CHECK(j["covers"].size() == 6);
  CHECK(interval_to_dot(a2.P).find("digraph") == 0);
  CHECK(interval_to_json(a2.P).dump() == j.dump());
}
