#include "cox/complexes.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace cox {

namespace {

// Memoized products of interval elements; -1 when the product leaves the interval.
class Products {
 public:
  explicit Products(const LabeledInterval& P) : P_(P) {}

  int operator()(int x, int y) {
    const uint64_t k = (uint64_t(uint32_t(x)) << 32) | uint32_t(y);
    auto it = memo_.find(k);
    if (it != memo_.end()) return it->second;
    const int r = P_.find(P_.elements[x].matrix * P_.elements[y].matrix);
    memo_.emplace(k, r);
    return r;
  }

 private:
  const LabeledInterval& P_;
  std::unordered_map<uint64_t, int> memo_;
};

std::vector<std::string> display_names(const LabeledInterval& P, const CoxeterSystem* sys) {
  std::vector<std::string> names = element_names(P);
  if (!sys || sys->rank() > 12) return names;
  const int n = sys->rank();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    Mat M = sys->identity();
    std::string nm;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) {
        M = sys->right_mul_simple(M, i);
        nm += sys->matrix.names[i];
      }
    const int k = P.find(M);
    if (k >= 0) names[k] = nm;
  }
  bool simple_labels = true;
  for (const auto& l : P.label_names) simple_labels &= l.size() == 1;
  if (simple_labels)
    for (auto& s : names) s.erase(std::remove(s.begin(), s.end(), '.'), s.end());
  return names;
}

void build_faces(DeltaComplex& K, Products& mul) {
  K.index.assign(K.cells.size(), {});
  K.faces.assign(K.cells.size(), {});
  for (size_t d = 0; d < K.cells.size(); ++d)
    for (size_t k = 0; k < K.cells[d].size(); ++k) K.index[d][K.cells[d][k]] = int(k);
  for (size_t d = 1; d < K.cells.size(); ++d) {
    K.faces[d].resize(K.cells[d].size());
    for (size_t k = 0; k < K.cells[d].size(); ++k) {
      const Simplex& t = K.cells[d][k];
      auto& f = K.faces[d][k];
      f.push_back(K.find(Simplex(t.begin() + 1, t.end())));
      for (size_t i = 0; i + 1 < d; ++i) {
        Simplex s(t.begin(), t.begin() + i);
        s.push_back(mul(t[i], t[i + 1]));
        s.insert(s.end(), t.begin() + i + 2, t.end());
        f.push_back(K.find(s));
      }
      f.push_back(K.find(Simplex(t.begin(), t.end() - 1)));
      for (int x : f)
        if (x < 0) throw std::logic_error("interval complex: face outside the complex");
    }
  }
}

}  // namespace

std::vector<size_t> DeltaComplex::counts() const {
  std::vector<size_t> c;
  for (const auto& v : cells) c.push_back(v.size());
  return c;
}

int DeltaComplex::find(const Simplex& s) const {
  if (s.size() >= index.size()) return -1;
  auto it = index[s.size()].find(s);
  return it == index[s.size()].end() ? -1 : it->second;
}

std::string DeltaComplex::name(const Simplex& s) const {
  std::string out = "[";
  for (size_t i = 0; i < s.size(); ++i) out += (i ? "|" : "") + element_names[s[i]];
  return out + "]";
}

DeltaComplex interval_complex(std::shared_ptr<const LabeledInterval> P, const CoxeterSystem* sys,
                              size_t cap) {
  DeltaComplex K;
  K.interval = P;
  K.truncated = P->truncated;
  K.element_names = display_names(*P, sys);
  Products mul(*P);

  std::vector<int> nontrivial;
  for (int k : P->sorted_by_rank())
    if (P->rank[k] > 0) nontrivial.push_back(k);

  K.cells.push_back({Simplex{}});
  size_t total = 1;
  // Each partial simplex carries the products of all its suffixes.
  std::function<void(Simplex&, std::vector<int>&)> extend = [&](Simplex& t, std::vector<int>& suffix) {
    for (int x : nontrivial) {
      std::vector<int> next;
      next.reserve(suffix.size() + 1);
      bool ok = true;
      for (size_t i = 0; i < suffix.size() && ok; ++i) {
        const int p = mul(suffix[i], x);
        ok = p >= 0 && P->rank[p] == P->rank[suffix[i]] + P->rank[x];
        next.push_back(p);
      }
      if (!ok) continue;
      next.push_back(x);
      t.push_back(x);
      if (K.cells.size() <= t.size()) K.cells.resize(t.size() + 1);
      K.cells[t.size()].push_back(t);
      if (++total > cap) throw CapExceeded("interval complex exceeds the cell cap");
      extend(t, next);
      t.pop_back();
    }
  };
  Simplex t;
  std::vector<int> suffix;
  extend(t, suffix);
  for (auto& c : K.cells) std::sort(c.begin(), c.end());
  build_faces(K, mul);
  return K;
}

DeltaComplex subcomplex(const DeltaComplex& K, const std::vector<std::vector<bool>>& keep) {
  DeltaComplex S;
  S.interval = K.interval;
  S.element_names = K.element_names;
  S.truncated = K.truncated;
  for (size_t d = 0; d < K.cells.size() && d < keep.size(); ++d) {
    std::vector<Simplex> c;
    for (size_t k = 0; k < K.cells[d].size(); ++k)
      if (keep[d][k]) c.push_back(K.cells[d][k]);
    if (c.empty()) break;
    S.cells.push_back(std::move(c));
  }
  Products mul(*K.interval);
  build_faces(S, mul);
  return S;
}

DualSalvetti dual_salvetti(const CoxeterSystem& sys, const DeltaComplex& K,
                           const std::vector<int>& coxeter_order, int root_depth) {
  DualSalvetti out;
  const int n = sys.rank();
  std::vector<std::vector<bool>> keep(K.cells.size());
  for (size_t d = 0; d < K.cells.size(); ++d) keep[d].assign(K.cells[d].size(), false);
  keep[0][0] = true;
  out.parabolics.push_back({});
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> T;
    for (int i : coxeter_order)
      if (mask >> i & 1) T.push_back(i);
    std::vector<int> sorted_T = T;
    std::sort(sorted_T.begin(), sorted_T.end());
    if (!standard_parabolic(sys, sorted_T).finite) continue;
    out.parabolics.push_back(sorted_T);
    const ReflectionSet refl = enumerate_reflections(sys, root_depth, sorted_T);
    const GroupElement wT{sys.word_matrix(T), T};
    auto PT = std::make_shared<LabeledInterval>(build_interval(sys, wT.matrix, refl, LengthMode::moved_space));
    const DeltaComplex KT = interval_complex(PT);
    for (size_t d = 0; d < KT.cells.size(); ++d)
      for (const Simplex& s : KT.cells[d]) {
        Simplex mapped;
        for (int x : s) mapped.push_back(K.interval->find(PT->elements[x].matrix));
        const bool inside = std::all_of(mapped.begin(), mapped.end(), [](int x) { return x >= 0; });
        const int k = inside ? K.find(mapped) : -1;
        if (k < 0) {
          ++out.cells_outside_truncation;
          continue;
        }
        keep[d][k] = true;
      }
  }
  out.X = subcomplex(K, keep);
  return out;
}

bool check_simplicial_identities(const DeltaComplex& K) {
  // d_i d_j = d_{j-1} d_i for i < j
  for (size_t d = 2; d < K.cells.size(); ++d)
    for (size_t k = 0; k < K.cells[d].size(); ++k)
      for (size_t j = 1; j <= d; ++j)
        for (size_t i = 0; i < j; ++i) {
          const int a = K.faces[d - 1][K.faces[d][k][j]][i];
          const int b = K.faces[d - 1][K.faces[d][k][i]][j - 1];
          if (a != b) return false;
        }
  return true;
}

std::optional<long> euler_characteristic_checked(const DeltaComplex& K) {
  if (K.truncated) return std::nullopt;
  long chi = 0;
  for (size_t d = 0; d < K.cells.size(); ++d) chi += (d % 2 ? -1 : 1) * long(K.cells[d].size());
  return chi;
}

long euler_characteristic(const DeltaComplex& K) {
  auto chi = euler_characteristic_checked(K);
  if (!chi) throw std::domain_error("Euler characteristic of a truncated complex is not meaningful");
  return *chi;
}

std::optional<CellRef> MorseMatching::partner(const CellRef& c) const {
  for (const auto& p : pairs) {
    if (p.lower == c) return p.upper;
    if (p.upper == c) return p.lower;
  }
  return std::nullopt;
}

MorseMatching morse_matching(const DeltaComplex& K, const DeltaComplex& X, const AxialOrdering& ord,
                             bool stage1) {
  const LabeledInterval& P = *K.interval;
  Products mul(P);
  MorseMatching M;

  // Rank-one elements are reflections; pos follows the axial order of their labels.
  std::vector<int> label_of(P.size(), -1);
  for (const auto& c : P.covers)
    if (c.lower == P.bottom) label_of[c.upper] = c.label;
  std::vector<int> label_pos(P.label_names.size(), -1);
  for (size_t i = 0; i < ord.order.size(); ++i)
    if (ord.order[i] < int(label_pos.size())) label_pos[ord.order[i]] = int(i);
  std::vector<int> atoms;
  for (int k = 0; k < P.size(); ++k)
    if (P.rank[k] == 1) {
      if (label_pos[label_of[k]] < 0) throw std::invalid_argument("morse: reflection missing from the ordering");
      atoms.push_back(k);
    }
  auto pos = [&](int x) { return label_pos[label_of[x]]; };
  auto side = [&](int x) { return ord.side[label_of[x]]; };

  std::vector<std::vector<int>> below_memo(P.size());
  std::vector<bool> below_done(P.size(), false);
  auto below = [&](int x) -> const std::vector<int>& {
    if (!below_done[x]) {
      for (int r : atoms) {
        const int y = mul(r, x);
        if (y >= 0 && P.rank[y] == P.rank[x] - 1) below_memo[x].push_back(r);
      }
      below_done[x] = true;
    }
    return below_memo[x];
  };

  // Global cell ids.
  std::vector<int> offset(K.cells.size() + 1, 0);
  for (size_t d = 0; d < K.cells.size(); ++d) offset[d + 1] = offset[d] + int(K.cells[d].size());
  const int N = offset.back();
  auto id_of = [&](const Simplex& s) {
    const int k = K.find(s);
    return k < 0 ? -1 : offset[s.size()] + k;
  };
  auto ref_of = [&](int id) {
    int d = int(std::upper_bound(offset.begin(), offset.end(), id) - offset.begin()) - 1;
    return CellRef{d, id - offset[d]};
  };
  auto simplex_of = [&](int id) -> const Simplex& {
    auto r = ref_of(id);
    return K.cells[r.dim][r.index];
  };
  std::vector<bool> inX(N, false);
  for (size_t d = 0; d < X.cells.size(); ++d)
    for (const auto& s : X.cells[d]) {
      const int id = id_of(s);
      if (id < 0) throw std::invalid_argument("morse: X is not a subcomplex of K");
      inX[id] = true;
    }

  enum class Step { none, boundary, up, down };
  auto stage2 = [&](const Simplex& t, Simplex& partner) {
    for (size_t i = 0; i < t.size(); ++i) {
      const int x = t[i];
      if (P.rank[x] > 1) {
        const auto& bl = below(x);
        if (bl.empty()) return Step::boundary;
        const int r = *std::min_element(bl.begin(), bl.end(), [&](int a, int b) { return pos(a) < pos(b); });
        partner.assign(t.begin(), t.begin() + i);
        partner.push_back(r);
        partner.push_back(mul(r, x));
        partner.insert(partner.end(), t.begin() + i + 1, t.end());
        return Step::up;
      }
      if (i + 1 < t.size()) {
        const auto& bl = below(t[i + 1]);
        if (std::all_of(bl.begin(), bl.end(), [&](int k) { return pos(x) < pos(k); })) {
          const int p = mul(x, t[i + 1]);
          if (p < 0) return Step::boundary;
          partner.assign(t.begin(), t.begin() + i);
          partner.push_back(p);
          partner.insert(partner.end(), t.begin() + i + 2, t.end());
          return Step::down;
        }
      }
    }
    return Step::none;
  };

  std::vector<int> f2(N, -1);
  for (int id = 0; id < N; ++id) {
    if (inX[id]) continue;
    Simplex p;
    const Step s = stage2(simplex_of(id), p);
    if (s != Step::up && s != Step::down) continue;
    const int q = id_of(p);
    if (q >= 0 && !inX[q]) f2[id] = q;
  }
  std::vector<bool> s2ok(N, false);
  for (int id = 0; id < N; ++id) s2ok[id] = f2[id] >= 0 && f2[f2[id]] == id;

  // Stage 1 on the simplices whose product is the top.
  auto classify = [&](int x) {
    bool up = false, dn = false;
    auto visit = [&](int r) {
      up |= side(r) == Side::above;
      dn |= side(r) == Side::below;
    };
    if (P.rank[x] > 1)
      for (int r : below(x)) visit(r);
    else
      visit(x);
    if (up && dn) return std::string("mixed");
    if (up) return std::string("last");
    if (dn) return std::string("first");
    return std::string();
  };
  std::vector<int> m1(N, -1);
  std::vector<int> tops;
  for (size_t d = 2; stage1 && d < K.cells.size(); ++d)
    for (size_t k = 0; k < K.cells[d].size(); ++k) {
      const Simplex& T = K.cells[d][k];
      int prod = T[0];
      for (size_t i = 1; i < T.size() && prod >= 0; ++i) prod = mul(prod, T[i]);
      if (prod == P.top) tops.push_back(offset[d] + int(k));
    }
  for (int id : tops) {
    const Simplex& T = simplex_of(id);
    std::string rule = "none";
    for (auto it = T.rbegin(); it != T.rend(); ++it) {
      std::string c = classify(*it);
      if (!c.empty()) {
        rule = c;
        break;
      }
    }
    ++M.stage1_outcomes[rule];
    if (rule != "last" && rule != "first") continue;
    const Simplex tau = rule == "last" ? Simplex(T.begin(), T.end() - 1) : Simplex(T.begin() + 1, T.end());
    const int t = id_of(tau);
    if (t < 0 || inX[t]) continue;
    if (m1[t] >= 0) {
      M.diagnostics.push_back("stage 1 conflict: " + K.name(T) + " and " + K.name(simplex_of(m1[t])) +
                              " both claim " + K.name(tau));
      continue;
    }
    m1[id] = t;
    m1[t] = id;
  }
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<int> drop;
    for (int id = 0; id < N; ++id) {
      if (m1[id] < 0) continue;
      for (int x : {id, m1[id]})
        if (s2ok[x] && m1[f2[x]] < 0) {
          drop.push_back(id);
          break;
        }
    }
    for (int id : drop) {
      if (m1[id] < 0) continue;
      m1[m1[id]] = -1;
      m1[id] = -1;
      ++M.stage1_outcomes["defer"];
      changed = true;
    }
  }
  for (int id : tops)
    if (m1[id] < 0) M.exceptional.push_back(ref_of(id));

  // Stage 2 on what is left of K minus X.
  std::vector<int> m = m1;
  std::vector<int> stage(N, 0);
  for (int id = 0; id < N; ++id)
    if (m1[id] >= 0) stage[id] = 1;
  for (int id = 0; id < N; ++id) {
    if (inX[id] || m[id] >= 0) continue;
    Simplex p;
    const Step s = stage2(simplex_of(id), p);
    if (s == Step::none) continue;
    const int q = s == Step::boundary ? -1 : id_of(p);
    if (q < 0) {
      M.diagnostics.push_back("stage 2 partner outside the complex: " + K.name(simplex_of(id)));
      continue;
    }
    if (m1[q] >= 0 || inX[q]) {
      M.diagnostics.push_back("stage 2 partner unavailable: " + K.name(simplex_of(id)) + " -> " +
                              K.name(simplex_of(q)));
      continue;
    }
    m[id] = q;
    stage[id] = 2;
  }
  for (int id = 0; id < N; ++id) {
    if (m[id] < 0) continue;
    if (m[m[id]] != id) {
      M.involution = false;
      M.diagnostics.push_back("not an involution at " + K.name(simplex_of(id)));
      continue;
    }
    if (id > m[id]) continue;
    CellRef a = ref_of(id), b = ref_of(m[id]);
    if (a.dim > b.dim) std::swap(a, b);
    const auto& fs = K.faces[b.dim][b.index];
    if (b.dim != a.dim + 1 || std::find(fs.begin(), fs.end(), a.index) == fs.end()) {
      M.involution = false;
      M.diagnostics.push_back("matched cells are not incident: " + K.name(simplex_of(id)));
    }
    M.pairs.push_back({a, b, std::max(stage[id], stage[m[id]])});
  }
  std::sort(M.pairs.begin(), M.pairs.end(), [](const MorsePair& x, const MorsePair& y) {
    return std::tie(x.lower, x.upper) < std::tie(y.lower, y.upper);
  });
  for (int id = 0; id < N; ++id)
    if (m[id] < 0) {
      M.critical.push_back(ref_of(id));
      if (!inX[id]) M.critical_outside.push_back(ref_of(id));
    }

  // Modified Hasse diagram: matched faces point up, all other faces point down.
  std::vector<std::vector<int>> adj(N);
  for (size_t d = 1; d < K.cells.size(); ++d)
    for (size_t k = 0; k < K.cells[d].size(); ++k) {
      const int id = offset[d] + int(k);
      for (int f : K.faces[d][k]) {
        const int fid = offset[d - 1] + f;
        if (m[id] == fid)
          adj[fid].push_back(id);
        else
          adj[id].push_back(fid);
      }
    }
  std::vector<char> color(N, 0);
  for (int s = 0; s < N && M.acyclic; ++s) {
    if (color[s]) continue;
    std::vector<std::pair<int, size_t>> st{{s, 0}};
    color[s] = 1;
    while (!st.empty() && M.acyclic) {
      auto& [u, i] = st.back();
      if (i < adj[u].size()) {
        const int v = adj[u][i++];
        if (color[v] == 1) {
          M.acyclic = false;
          M.diagnostics.push_back("cycle through " + K.name(simplex_of(v)));
        } else if (!color[v]) {
          color[v] = 1;
          st.push_back({v, 0});
        }
      } else {
        color[u] = 2;
        st.pop_back();
      }
    }
  }
  return M;
}

void IntMatrix::add(int r, int c, const mpz_class& v) {
  mpz_class& e = data[r][c];
  e += v;
  if (e == 0) data[r].erase(c);
}

mpz_class IntMatrix::at(int r, int c) const {
  auto it = data[r].find(c);
  return it == data[r].end() ? mpz_class(0) : it->second;
}

ZMat IntMatrix::dense() const {
  ZMat M = ZMat::Constant(rows, cols, mpz_class(0));
  for (int r = 0; r < rows; ++r)
    for (const auto& [c, v] : data[r]) M(r, c) = v;
  return M;
}

IntMatrix IntMatrix::from_dense(const ZMat& M) {
  IntMatrix S(int(M.rows()), int(M.cols()));
  for (int r = 0; r < S.rows; ++r)
    for (int c = 0; c < S.cols; ++c)
      if (M(r, c) != 0) S.data[r][c] = M(r, c);
  return S;
}

IntMatrix operator*(const IntMatrix& A, const IntMatrix& B) {
  if (A.cols != B.rows) throw std::invalid_argument("IntMatrix product: shape mismatch");
  IntMatrix C(A.rows, B.cols);
  for (int r = 0; r < A.rows; ++r)
    for (const auto& [k, a] : A.data[r])
      for (const auto& [c, b] : B.data[k]) C.add(r, c, a * b);
  return C;
}

namespace {

std::vector<mpz_class> dense_invariants(ZMat A) {
  std::vector<mpz_class> diag;
  const Eigen::Index R = A.rows(), C = A.cols();
  for (Eigen::Index t = 0; t < std::min(R, C); ++t) {
    for (;;) {
      Eigen::Index pi = -1, pj = -1;
      for (Eigen::Index i = t; i < R; ++i)
        for (Eigen::Index j = t; j < C; ++j)
          if (A(i, j) != 0 && (pi < 0 || abs(A(i, j)) < abs(A(pi, pj)))) pi = i, pj = j;
      if (pi < 0) goto done;
      A.row(t).swap(A.row(pi));
      A.col(t).swap(A.col(pj));
      bool clean = true;
      for (Eigen::Index i = t + 1; i < R; ++i) {
        if (A(i, t) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), A(i, t).get_mpz_t(), A(t, t).get_mpz_t());
        for (Eigen::Index j = t; j < C; ++j) A(i, j) -= q * A(t, j);
        clean &= A(i, t) == 0;
      }
      for (Eigen::Index j = t + 1; j < C; ++j) {
        if (A(t, j) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), A(t, j).get_mpz_t(), A(t, t).get_mpz_t());
        for (Eigen::Index i = t; i < R; ++i) A(i, j) -= q * A(i, t);
        clean &= A(t, j) == 0;
      }
      if (clean) break;
    }
    diag.push_back(abs(A(t, t)));
  }
done:
  // A diagonal matrix is equivalent to the one with entries gcd and lcm in place of any two.
  for (size_t i = 0; i < diag.size(); ++i)
    for (size_t j = i + 1; j < diag.size(); ++j) {
      mpz_class g, l;
      mpz_gcd(g.get_mpz_t(), diag[i].get_mpz_t(), diag[j].get_mpz_t());
      mpz_lcm(l.get_mpz_t(), diag[i].get_mpz_t(), diag[j].get_mpz_t());
      diag[i] = g;
      diag[j] = l;
    }
  return diag;
}

}  // namespace

std::vector<mpz_class> smith_normal_form(const IntMatrix& M) {
  std::vector<std::map<int, mpz_class>> rows = M.data;
  std::vector<std::set<int>> col_rows(M.cols);
  for (int r = 0; r < M.rows; ++r)
    for (const auto& [c, v] : rows[r]) col_rows[c].insert(r);

  // Unit pivots first: clear the pivot column with row operations, then the
  // pivot row only meets columns that column operations can clear for free.
  std::vector<mpz_class> factors;
  std::vector<bool> row_done(M.rows, false);
  for (bool progress = true; progress;) {
    progress = false;
    for (int r = 0; r < M.rows; ++r) {
      if (row_done[r] || rows[r].empty()) continue;
      int pc = -1;
      for (const auto& [c, v] : rows[r])
        if (abs(v) == 1 && (pc < 0 || col_rows[c].size() < col_rows[pc].size())) pc = c;
      if (pc < 0) continue;
      const mpz_class pv = rows[r][pc];
      const std::vector<int> others(col_rows[pc].begin(), col_rows[pc].end());
      for (int o : others) {
        if (o == r) continue;
        const mpz_class f = rows[o][pc] * pv;  // pv is its own inverse
        for (const auto& [c, v] : rows[r]) {
          mpz_class& e = rows[o][c];
          e -= f * v;
          if (e == 0) {
            rows[o].erase(c);
            col_rows[c].erase(o);
          } else {
            col_rows[c].insert(o);
          }
        }
      }
      for (const auto& [c, v] : rows[r]) col_rows[c].erase(r);
      rows[r].clear();
      row_done[r] = true;
      factors.push_back(1);
      progress = true;
    }
  }

  std::vector<int> rest_rows, rest_cols;
  std::map<int, int> col_at;
  for (int r = 0; r < M.rows; ++r)
    if (!rows[r].empty()) {
      rest_rows.push_back(r);
      for (const auto& [c, v] : rows[r])
        if (!col_at.count(c)) col_at[c] = 0;
    }
  int ci = 0;
  for (auto& [c, i] : col_at) i = ci++;
  ZMat D = ZMat::Constant(Eigen::Index(rest_rows.size()), ci, mpz_class(0));
  for (size_t i = 0; i < rest_rows.size(); ++i)
    for (const auto& [c, v] : rows[rest_rows[i]]) D(Eigen::Index(i), col_at[c]) = v;
  for (auto& d : dense_invariants(D))
    if (d != 0) factors.push_back(d);
  std::sort(factors.begin(), factors.end());
  return factors;
}

std::vector<mpz_class> smith_normal_form(const ZMat& M) {
  return smith_normal_form(IntMatrix::from_dense(M));
}

std::vector<IntMatrix> boundary_matrices(const DeltaComplex& K) {
  std::vector<IntMatrix> bd;
  bd.emplace_back(0, int(K.cells.empty() ? 0 : K.cells[0].size()));
  for (size_t d = 1; d < K.cells.size(); ++d) {
    IntMatrix B(int(K.cells[d - 1].size()), int(K.cells[d].size()));
    for (size_t k = 0; k < K.cells[d].size(); ++k)
      for (size_t i = 0; i < K.faces[d][k].size(); ++i) B.add(K.faces[d][k][i], int(k), i % 2 ? -1 : 1);
    bd.push_back(std::move(B));
  }
  return bd;
}

std::vector<HomologyGroup> homology(const DeltaComplex& K) {
  const auto bd = boundary_matrices(K);
  std::vector<std::vector<mpz_class>> snf;
  for (const auto& B : bd) snf.push_back(smith_normal_form(B));
  std::vector<HomologyGroup> H(K.cells.size());
  for (size_t d = 0; d < K.cells.size(); ++d) {
    const long rank_out = long(snf[d].size());
    const long rank_in = d + 1 < snf.size() ? long(snf[d + 1].size()) : 0;
    H[d].betti = long(K.cells[d].size()) - rank_out - rank_in;
    if (d + 1 < snf.size())
      for (const auto& f : snf[d + 1])
        if (f > 1) H[d].torsion.push_back(f);
  }
  return H;
}

std::string to_string(const std::vector<HomologyGroup>& H) {
  std::ostringstream os;
  for (size_t d = 0; d < H.size(); ++d) {
    os << (d ? ", " : "") << "H" << d << " = ";
    bool any = false;
    if (H[d].betti) {
      os << "Z";
      if (H[d].betti > 1) os << "^" << H[d].betti;
      any = true;
    }
    for (const auto& t : H[d].torsion) {
      os << (any ? " + " : "") << "Z/" << t.get_str();
      any = true;
    }
    if (!any) os << "0";
  }
  return os.str();
}

nlohmann::ordered_json complex_to_json(const DeltaComplex& K, const MorseMatching* m) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["dims"] = K.counts();
  j["truncated"] = K.truncated;
  auto& cells = j["simplices"] = nlohmann::ordered_json::array();
  for (size_t d = 0; d < K.cells.size(); ++d)
    for (size_t k = 0; k < K.cells[d].size(); ++k) {
      auto faces = nlohmann::ordered_json::array();
      if (d > 0)
        for (int f : K.faces[d][k]) faces.push_back(K.name(K.cells[d - 1][f]));
      cells.push_back({{"dim", d}, {"name", K.name(K.cells[d][k])}, {"faces", faces}});
    }
  if (m) {
    auto nm = [&](const CellRef& c) { return K.name(K.cells[c.dim][c.index]); };
    auto& pairs = j["pairs"] = nlohmann::ordered_json::array();
    for (const auto& p : m->pairs) pairs.push_back({nm(p.lower), nm(p.upper), p.stage});
    auto& crit = j["critical"] = nlohmann::ordered_json::array();
    for (const auto& c : m->critical) crit.push_back(nm(c));
    j["involution"] = m->involution;
    j["acyclic"] = m->acyclic;
    j["stage1_outcomes"] = m->stage1_outcomes;
    j["diagnostics"] = m->diagnostics;
  }
  return j;
}

std::string boundary_csv(const std::vector<IntMatrix>& bd) {
  std::ostringstream os;
  os << "dim,row,col,value\n";
  for (size_t d = 1; d < bd.size(); ++d)
    for (int r = 0; r < bd[d].rows; ++r)
      for (const auto& [c, v] : bd[d].data[r]) os << d << "," << r << "," << c << "," << v.get_str() << "\n";
  return os.str();
}

}  // namespace cox
