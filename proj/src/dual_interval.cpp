#include "cox/dual_interval.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace cox {

namespace {

class LengthOracle {
 public:
  LengthOracle(const CoxeterSystem& sys, const ReflectionSet& refl, LengthMode mode)
      : mode_(mode), prod_(refl, sys.rank()) {
    if (mode_ == LengthMode::automatic)
      mode_ = sys.classification == Geometry::spherical ? LengthMode::moved_space : LengthMode::bfs;
  }

  int length(const Mat& g) {
    if (mode_ == LengthMode::moved_space) return moved_space(g).moved_dim;
    auto l = prod_.length(g);
    if (!l) throw CapExceeded("reflection length unknown at cutoff");
    return *l;
  }

  // True iff l_R(g) <= k with matching parity, which in context pins l_R(g) = k.
  bool at_most(const Mat& g, int k) {
    if (mode_ == LengthMode::moved_space) return moved_space(g).moved_dim == k;
    return prod_.is_product(g, k);
  }

  bool exactly(const Mat& g, int k) {
    if (mode_ == LengthMode::moved_space) return moved_space(g).moved_dim == k;
    return prod_.is_product(g, k) && !prod_.is_product(g, k - 2);
  }

 private:
  LengthMode mode_;
  ReflectionProducts prod_;
};

struct RawInterval {
  std::vector<Mat> mats;
  std::vector<int> rank;
  std::vector<Cover> covers;
  std::unordered_map<std::string, int> index;

  int add(const Mat& M, int r) {
    auto [it, fresh] = index.emplace(matrix_key(M), int(mats.size()));
    if (fresh) {
      mats.push_back(M);
      rank.push_back(r);
    }
    return it->second;
  }
};

LabeledInterval finish(RawInterval raw, const ReflectionSet& refl) {
  LabeledInterval P;
  const int n = int(raw.mats.size());
  std::vector<std::string> keys(n);
  std::vector<int> order(n);
  for (int k = 0; k < n; ++k) {
    order[k] = k;
    keys[k] = matrix_key(raw.mats[k]);
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (raw.rank[a] != raw.rank[b]) return raw.rank[a] < raw.rank[b];
    return keys[a] < keys[b];
  });
  std::vector<int> where(n);
  for (int k = 0; k < n; ++k) where[order[k]] = k;

  for (int k : order) {
    P.elements.push_back({raw.mats[k], {}});
    P.rank.push_back(raw.rank[k]);
  }
  for (auto c : raw.covers) P.covers.push_back({where[c.lower], where[c.upper], c.label});
  std::sort(P.covers.begin(), P.covers.end(), [](const Cover& a, const Cover& b) {
    return std::tie(a.lower, a.upper, a.label) < std::tie(b.lower, b.upper, b.label);
  });
  P.label_names = refl.names;
  for (const auto& r : refl.reflections) P.label_matrices.push_back(r.matrix);
  P.truncated = !refl.complete;
  P.rebuild_adjacency();

  P.bottom = -1;
  P.top = 0;
  for (int k = 0; k < n; ++k) {
    if (P.rank[k] == 0) P.bottom = k;
    if (P.rank[k] > P.rank[P.top]) P.top = k;
  }
  if (P.bottom < 0) throw std::logic_error("interval has no bottom element");
  for (int k = 0; k < n; ++k) {
    if (P.down[k].empty()) continue;
    const Cover& c = P.covers[P.down[k].front()];
    P.elements[k].word = P.elements[c.lower].word;
    const auto& rw = refl.reflections[c.label].word;
    P.elements[k].word.insert(P.elements[k].word.end(), rw.begin(), rw.end());
  }
  return P;
}

using Bits = std::vector<uint64_t>;

void set_bit(Bits& b, int i) { b[i >> 6] |= uint64_t(1) << (i & 63); }
bool test_bit(const Bits& b, int i) { return (b[i >> 6] >> (i & 63)) & 1; }

// Closed up-sets and down-sets as bitsets.
void closures(const LabeledInterval& P, std::vector<Bits>& up, std::vector<Bits>& down) {
  const int n = P.size();
  const size_t words = (n + 63) / 64;
  up.assign(n, Bits(words, 0));
  down.assign(n, Bits(words, 0));
  std::vector<int> order = P.sorted_by_rank();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int i = *it;
    set_bit(up[i], i);
    for (int c : P.up[i])
      for (size_t w = 0; w < words; ++w) up[i][w] |= up[P.covers[c].upper][w];
  }
  for (int i : order) {
    set_bit(down[i], i);
    for (int c : P.down[i])
      for (size_t w = 0; w < words; ++w) down[i][w] |= down[P.covers[c].lower][w];
  }
}

// Minimal elements of S, where below[m] is the closed down-set of m.
std::vector<int> extremal(const Bits& S, const std::vector<Bits>& below, int n) {
  std::vector<int> out;
  for (int m = 0; m < n; ++m) {
    if (!test_bit(S, m)) continue;
    int cnt = 0;
    for (size_t w = 0; w < S.size(); ++w) cnt += std::popcount(S[w] & below[m][w]);
    if (cnt == 1) out.push_back(m);
  }
  return out;
}

}  // namespace

LabeledInterval build_interval(const CoxeterSystem& sys, const Mat& w, const ReflectionSet& refl,
                               LengthMode mode) {
  LengthOracle L(sys, refl, mode);
  const int lw = L.length(w);
  RawInterval raw;
  std::vector<int> level{raw.add(w, lw)};
  for (int k = lw; k >= 1; --k) {
    std::vector<int> next;
    for (int u : level) {
      const Mat U = raw.mats[u];
      for (int r = 0; r < refl.size(); ++r) {
        Mat x = U * refl.reflections[r].matrix;
        if (!L.at_most(x, k - 1)) continue;
        const size_t before = raw.mats.size();
        int id = raw.add(x, k - 1);
        if (raw.mats.size() != before) next.push_back(id);
        raw.covers.push_back({id, u, r});
      }
    }
    level = std::move(next);
  }
  return finish(std::move(raw), refl);
}

LabeledInterval build_interval_bottom_up(const CoxeterSystem& sys, const Mat& w,
                                         const ReflectionSet& refl, LengthMode mode) {
  LengthOracle L(sys, refl, mode);
  const int lw = L.length(w);
  RawInterval raw;
  std::vector<int> level{raw.add(sys.identity(), 0)};
  for (int k = 0; k < lw; ++k) {
    std::vector<int> next;
    for (int u : level) {
      const Mat U = raw.mats[u];
      for (int r = 0; r < refl.size(); ++r) {
        Mat x = refl.reflections[r].matrix * U;
        if (!L.exactly(x, k + 1)) continue;
        if (!L.at_most(Mat(inverse_matrix<Scalar>(x) * w), lw - k - 1)) continue;
        const size_t before = raw.mats.size();
        int id = raw.add(x, k + 1);
        if (raw.mats.size() != before) next.push_back(id);
        // u^-1 x = u^-1 r u is a reflection; find its label.
        int lab = refl.find(Mat(inverse_matrix<Scalar>(U) * x));
        if (lab < 0) throw TruncationError("conjugate reflection outside the table");
        raw.covers.push_back({u, id, lab});
      }
    }
    level = std::move(next);
  }
  // Drop duplicate covers reached through different left factors.
  std::set<std::tuple<int, int, int>> uniq;
  std::vector<Cover> covers;
  for (auto c : raw.covers)
    if (uniq.insert({c.lower, c.upper, c.label}).second) covers.push_back(c);
  raw.covers = std::move(covers);
  return finish(std::move(raw), refl);
}

std::vector<std::string> element_names(const LabeledInterval& P) {
  std::vector<std::string> names(P.size());
  for (int k : P.sorted_by_rank()) {
    if (k == P.bottom) {
      names[k] = "1";
      continue;
    }
    if (P.down[k].empty()) {
      names[k] = "#" + std::to_string(k);
      continue;
    }
    const Cover& c = P.covers[P.down[k].front()];
    const std::string& lab = P.label_names[c.label];
    names[k] = P.rank[c.lower] == 0 ? lab : names[c.lower] + "." + lab;
  }
  return names;
}

LatticeReport lattice_check(const LabeledInterval& P) {
  LatticeReport rep;
  rep.truncation_caveat = P.truncated;
  const int n = P.size();
  std::vector<Bits> up, down;
  closures(P, up, down);
  const std::vector<int> order = P.sorted_by_rank();
  for (size_t a = 0; a < order.size(); ++a) {
    for (size_t b = a + 1; b < order.size(); ++b) {
      const int u = order[a], v = order[b];
      if (test_bit(up[u], v) || test_bit(up[v], u)) continue;
      for (bool upper : {true, false}) {
        const auto& sets = upper ? up : down;
        Bits S(sets[u].size());
        for (size_t w = 0; w < S.size(); ++w) S[w] = sets[u][w] & sets[v][w];
        auto ext = extremal(S, upper ? down : up, n);
        if (ext.size() < 2) continue;
        rep.is_lattice = false;
        std::sort(ext.begin(), ext.end(), [&](int x, int y) {
          return std::find(order.begin(), order.end(), x) <
                 std::find(order.begin(), order.end(), y);
        });
        rep.witness = LatticeWitness{u, v, upper, ext};
        rep.witness_verified = verify_witness(P, *rep.witness);
        return rep;
      }
    }
  }
  return rep;
}

bool verify_witness(const LabeledInterval& P, const LatticeWitness& w) {
  if (w.bounds.size() < 2) return false;
  std::vector<Bits> up, down;
  closures(P, up, down);
  const auto& towards = w.upper ? up : down;
  for (int b : w.bounds)
    if (!test_bit(towards[w.u], b) || !test_bit(towards[w.v], b)) return false;
  for (int b : w.bounds)
    for (int c : w.bounds)
      if (b != c && test_bit(up[b], c)) return false;
  return true;
}

LabeledInterval bowtie_fixture() {
  LabeledInterval P;
  const char* names[] = {"0", "x", "y", "p", "q", "1"};
  const int ranks[] = {0, 1, 1, 2, 2, 3};
  for (int k = 0; k < 6; ++k) {
    Mat M(1, 1);
    M(0, 0) = Scalar(k);
    P.elements.push_back({M, {}});
    P.rank.push_back(ranks[k]);
    P.label_names.push_back(names[k]);
    P.label_matrices.push_back(M);
  }
  P.covers = {{0, 1, 1}, {0, 2, 2}, {1, 3, 3}, {1, 4, 4}, {2, 3, 3}, {2, 4, 4}, {3, 5, 5}, {4, 5, 5}};
  P.bottom = 0;
  P.top = 5;
  P.rebuild_adjacency();
  return P;
}

std::vector<std::vector<int>> chain_labels_below(const LabeledInterval& P, int u, size_t cap) {
  std::vector<std::vector<int>> out;
  std::vector<int> path;
  auto dfs = [&](auto&& self, int v) -> void {
    if (out.size() > cap) return;
    if (v == P.bottom) {
      out.emplace_back(path.rbegin(), path.rend());
      return;
    }
    for (int c : P.down[v]) {
      path.push_back(P.covers[c].label);
      self(self, P.covers[c].lower);
      path.pop_back();
    }
  };
  dfs(dfs, u);
  if (out.size() > cap) throw CapExceeded("chain count exceeds cap");
  return out;
}

ChainList maximal_chains(const LabeledInterval& P, size_t cap) {
  ChainList res;
  std::vector<std::vector<int>> seqs;
  try {
    seqs = chain_labels_below(P, P.top, cap);
  } catch (const CapExceeded&) {
    res.overflow = true;
    return res;
  }
  std::sort(seqs.begin(), seqs.end());
  const Mat& target = P.elements[P.top].matrix;
  for (auto& s : seqs) {
    Mat prod = identity<Scalar>(int(target.rows()));
    for (int r : s) prod = prod * P.label_matrices[r];
    if (prod != target) throw std::logic_error("maximal chain does not multiply to the top");
    res.chains.push_back({target, std::move(s)});
  }
  return res;
}

Factorization hurwitz_move(const Factorization& f, int i, HurwitzDirection dir,
                           const ReflectionSet& refl) {
  const int len = int(f.factors.size());
  if (i < 1 || i >= len) throw std::out_of_range("hurwitz_move: position out of range");
  const int a = f.factors[i - 1], b = f.factors[i];
  const Mat& A = refl.reflections[a].matrix;
  const Mat& B = refl.reflections[b].matrix;
  Factorization g = f;
  if (dir == HurwitzDirection::fwd) {
    int c = refl.find(Mat(B * A * B));
    if (c < 0) throw TruncationError("hurwitz_move: conjugate reflection not in the table");
    g.factors[i - 1] = b;
    g.factors[i] = c;
  } else {
    int c = refl.find(Mat(A * B * A));
    if (c < 0) throw TruncationError("hurwitz_move: conjugate reflection not in the table");
    g.factors[i - 1] = c;
    g.factors[i] = a;
  }
  return g;
}

OrbitReport hurwitz_orbits(const std::vector<Factorization>& facts, const ReflectionSet& refl,
                           size_t cap) {
  OrbitReport rep;
  std::map<std::vector<int>, int> orbit_of;
  size_t visited = 0;
  for (const auto& f : facts) {
    if (orbit_of.count(f.factors)) {
      rep.orbit_of_input.push_back(orbit_of[f.factors]);
      continue;
    }
    const int id = int(rep.orbits.size());
    std::vector<std::vector<int>> orbit;
    std::deque<Factorization> queue{f};
    orbit_of[f.factors] = id;
    while (!queue.empty()) {
      Factorization g = std::move(queue.front());
      queue.pop_front();
      orbit.push_back(g.factors);
      if (++visited > cap) {
        rep.overflow = true;
        break;
      }
      for (int i = 1; i < int(g.factors.size()); ++i)
        for (auto dir : {HurwitzDirection::fwd, HurwitzDirection::inv}) {
          Factorization h = hurwitz_move(g, i, dir, refl);
          if (orbit_of.emplace(h.factors, id).second) queue.push_back(std::move(h));
        }
    }
    std::sort(orbit.begin(), orbit.end());
    rep.orbits.push_back(std::move(orbit));
    rep.orbit_of_input.push_back(id);
    if (rep.overflow) break;
  }
  rep.transitive = !rep.overflow && rep.orbits.size() == 1;
  return rep;
}

ELReport el_check(const LabeledInterval& P, const std::vector<int>& ordering) {
  ELReport rep;
  rep.ordering = ordering;
  std::unordered_map<int, int> pos;
  for (size_t k = 0; k < ordering.size(); ++k) pos[ordering[k]] = int(k);
  for (const auto& c : P.covers)
    if (!pos.count(c.label))
      throw std::invalid_argument("el_check: label " + P.label_names[c.label] + " is unordered");
  for (int u : P.sorted_by_rank()) {
    auto seqs = chain_labels_below(P, u);
    std::vector<std::vector<int>> keyed;
    for (const auto& s : seqs) {
      std::vector<int> k;
      for (int r : s) k.push_back(pos[r]);
      keyed.push_back(std::move(k));
    }
    int inc = 0;
    const std::vector<int>* first_inc = nullptr;
    for (const auto& k : keyed)
      if (std::adjacent_find(k.begin(), k.end(), std::greater_equal<int>()) == k.end()) {
        ++inc;
        first_inc = &k;
      }
    bool lex_first = inc == 1 && *first_inc == *std::min_element(keyed.begin(), keyed.end());
    if (inc != 1 || !lex_first) rep.failures.push_back({u, inc, lex_first});
  }
  rep.ok = rep.failures.empty();
  return rep;
}

GroupEnumeration factorization_subgroup(const Factorization& f, const ReflectionSet& refl,
                                        long length_cap, long size_cap) {
  if (length_cap <= 0 || size_cap <= 0)
    throw std::invalid_argument("factorization_subgroup: caps must be positive");
  std::vector<Mat> gens;
  for (int r : f.factors) gens.push_back(refl.reflections[r].matrix);
  return enumerate_generated(identity<Scalar>(int(f.target.rows())), gens, length_cap, size_cap);
}

SubgroupComparison compare_factorization_subgroups(const std::vector<Factorization>& facts,
                                                   const ReflectionSet& refl, long length_cap,
                                                   long size_cap) {
  SubgroupComparison cmp;
  std::set<std::string> first;
  for (size_t k = 0; k < facts.size(); ++k) {
    auto E = factorization_subgroup(facts[k], refl, length_cap, size_cap);
    cmp.complete = cmp.complete && E.complete;
    cmp.sizes.push_back(E.size());
    std::set<std::string> keys;
    for (const auto& [key, idx] : E.index) keys.insert(key);
    if (k == 0)
      first = std::move(keys);
    else if (keys != first)
      cmp.all_equal = false;
  }
  return cmp;
}

SubgroupTopReport subgroup_top_check(const CoxeterSystem& sys, const LabeledInterval& P,
                                     const ReflectionSet& refl, long length_cap, long size_cap) {
  if (P.truncated) throw TruncationError("subgroup_top_check: interval is truncated");
  SubgroupTopReport rep;
  for (int u = 0; u < P.size(); ++u) {
    if (u == P.bottom) continue;
    ++rep.checked;
    const int k = P.rank[u];
    Factorization f{P.elements[u].matrix, {}};
    for (int x = u; x != P.bottom;) {
      const Cover& c = P.covers[P.down[x].front()];
      f.factors.push_back(c.label);
      x = c.lower;
    }
    std::reverse(f.factors.begin(), f.factors.end());

    Mat roots(sys.rank(), k);
    for (int j = 0; j < k; ++j) roots.col(j) = refl.roots[f.factors[j]];
    bool good = rank(roots) == k;

    auto E = factorization_subgroup(f, refl, length_cap, size_cap);
    rep.complete = rep.complete && E.complete;
    ReflectionSet sub;
    sub.complete = E.complete;
    for (int r = 0; r < refl.size(); ++r) {
      if (E.find(refl.reflections[r].matrix) < 0) continue;
      sub.index.emplace(matrix_key(refl.reflections[r].matrix), sub.size());
      sub.reflections.push_back(refl.reflections[r]);
      sub.roots.push_back(refl.roots[r]);
      sub.depth.push_back(refl.depth[r]);
      sub.names.push_back(refl.names[r]);
    }
    if (good) {
      auto Q = build_interval(sys, f.target, sub, LengthMode::moved_space);
      int below = 0;
      for (int x = 0; x < P.size(); ++x)
        if (Q.find(P.elements[x].matrix) >= 0) ++below;
      good = Q.rank[Q.top] == k && Q.find(f.target) == Q.top && below == Q.size();
    }
    if (!good) rep.failures.push_back(u);
  }
  rep.ok = rep.failures.empty();
  return rep;
}

nlohmann::ordered_json interval_to_json(const LabeledInterval& P) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  const auto names = element_names(P);
  auto& els = j["elements"] = nlohmann::ordered_json::array();
  for (int k = 0; k < P.size(); ++k)
    els.push_back({{"id", k}, {"rank", P.rank[k]}, {"name", names[k]}, {"word", P.elements[k].word}});
  auto& cov = j["covers"] = nlohmann::ordered_json::array();
  for (const auto& c : P.covers)
    cov.push_back({{"lower", c.lower}, {"upper", c.upper}, {"label", P.label_names[c.label]}});
  j["bottom"] = P.bottom;
  j["top"] = P.top;
  j["truncated"] = P.truncated;
  return j;
}

std::string interval_to_dot(const LabeledInterval& P) {
  const auto names = element_names(P);
  std::ostringstream os;
  os << "digraph interval {\n  rankdir=BT;\n";
  for (int k = 0; k < P.size(); ++k) os << "  n" << k << " [label=\"" << names[k] << "\"];\n";
  for (const auto& c : P.covers)
    os << "  n" << c.lower << " -> n" << c.upper << " [label=\"" << P.label_names[c.label]
       << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace cox
