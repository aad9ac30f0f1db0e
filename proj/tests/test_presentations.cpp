#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cox/presentations.hpp"

using namespace cox;

namespace {

LabeledInterval dual(const std::string& g) {
  auto sys = build_system(g);
  return build_interval(sys, coxeter_element(sys).matrix, enumerate_reflections(sys));
}

// Label sequences of the saturated chains from u up to v.
void chains_between(const LabeledInterval& P, int u, int v, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
  if (u == v) {
    out.push_back(cur);
    return;
  }
  for (int ci : P.up[u]) {
    const Cover& c = P.covers[ci];
    if (P.rank[c.upper] > P.rank[v]) continue;
    cur.push_back(c.label);
    chains_between(P, c.upper, v, cur, out);
    cur.pop_back();
  }
}

Word to_word(const Presentation& pres, const LabeledInterval& P, const std::vector<int>& labels) {
  Word w;
  for (int l : labels)
    w.push_back(int(std::find(pres.generators.begin(), pres.generators.end(), P.label_names[l]) -
                    pres.generators.begin()));
  return w;
}

// Every relation read inside a proper subinterval [u,v] follows from the top-level ones.
bool subinterval_relations_derivable(const LabeledInterval& P) {
  const auto pres = interval_group_presentation(P);
  for (int u = 0; u < P.size(); ++u)
    for (int v = 0; v < P.size(); ++v) {
      if (P.rank[v] - P.rank[u] < 2 || (u == P.bottom && v == P.top)) continue;
      std::vector<int> cur;
      std::vector<std::vector<int>> mid, pre, post;
      chains_between(P, u, v, cur, mid);
      if (mid.size() < 2) continue;
      chains_between(P, P.bottom, u, cur, pre);
      chains_between(P, v, P.top, cur, post);
      if (pre.empty() || post.empty()) continue;
      for (size_t i = 1; i < mid.size(); ++i)
        if (!derivable_with_context(pres, to_word(pres, P, pre[0]), to_word(pres, P, mid[0]),
                                    to_word(pres, P, mid[i]), to_word(pres, P, post[0])))
          return false;
    }
  return true;
}

}  // namespace

TEST_CASE("standard A2 presentation") {
  auto P = weak_order_interval(build_system("A2"));
  auto pres = interval_group_presentation(P);
  CHECK(presentation_text(pres) == "gen: a b\nrel: a b a = b a b\n");
  CHECK(relations_sound(pres, P));
  CHECK(to_string(abelianization(pres)) == "Z^1");
}

TEST_CASE("dual A2 presentation") {
  auto P = dual("A2");
  auto full = interval_group_presentation(P, false);
  CHECK(full.relations.size() == 3);
  auto pres = interval_group_presentation(P);
  CHECK(presentation_text(pres) == "gen: a b bab\nrel: a b = b bab\nrel: a b = bab a\n");
  CHECK(pres.removed.size() == 1);
  for (const auto& [l, r] : pres.removed) CHECK(derivable(pres, l, r, 2));
  CHECK(relations_sound(pres, P));
  auto ab = abelianization(pres);
  CHECK(ab.free_rank == 1);
  CHECK(ab.torsion.empty());
}

TEST_CASE("A1 and free groups") {
  auto pres = interval_group_presentation(weak_order_interval(build_system("A1")));
  CHECK(presentation_text(pres) == "gen: a\n");
  CHECK(abelianization(pres).free_rank == 1);
  Presentation free2{{"a", "b"}, {}, {}};
  CHECK(abelianization(free2).free_rank == 2);
  Presentation torsion{{"a"}, {{{0, 0, 0, 0}, {}}}, {}};
  CHECK(to_string(abelianization(torsion)) == "Z^0 + Z/4");
}

TEST_CASE("standard and dual abelianizations agree") {
  const std::vector<std::pair<std::string, long>> expected{
      {"A1", 1}, {"A2", 1}, {"B2", 2}, {"G2", 2}, {"I2:5", 1}, {"A3", 1}, {"B3", 2}, {"H3", 1}};
  for (const auto& [g, rank] : expected) {
    CAPTURE(g);
    auto sys = build_system(g);
    auto S = interval_group_presentation(weak_order_interval(sys));
    auto D = interval_group_presentation(dual(g));
    CHECK(abelianization(S).free_rank == rank);
    CHECK(abelianization(D).free_rank == rank);
    CHECK(abelianization(S).torsion.empty());
    CHECK(abelianization(D).torsion.empty());
  }
}

TEST_CASE("subinterval relations are derivable") {
  for (std::string g : {"A2", "B2"}) {
    CAPTURE(g);
    CHECK(subinterval_relations_derivable(weak_order_interval(build_system(g))));
    CHECK(subinterval_relations_derivable(dual(g)));
  }
  CHECK(subinterval_relations_derivable(dual("A3")));
  CHECK(subinterval_relations_derivable(weak_order_interval(build_system("A3"))));
}

TEST_CASE("text round trip") {
  auto pres = interval_group_presentation(dual("A3"));
  auto back = parse_presentation(presentation_text(pres));
  CHECK(back.generators == pres.generators);
  CHECK(back.relations == pres.relations);
  CHECK(pres.relations.size() == 15);
  CHECK(relations_sound(pres, dual("A3")));
  CHECK_THROWS_AS(parse_presentation("gen: a\nrel: a = b\n"), std::invalid_argument);
}

TEST_CASE("truncated intervals are refused") {
  CHECK_THROWS_AS(interval_group_presentation(dual("affine:A2")), std::invalid_argument);
}
