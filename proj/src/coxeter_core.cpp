#include "cox/coxeter_core.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>

namespace cox {

std::vector<std::string> default_names(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i)
    out.push_back(i < 26 ? std::string(1, char('a' + i)) : "g" + std::to_string(i));
  return out;
}

void CoxeterMatrix::validate() const {
  if (n < 1) throw std::invalid_argument("Coxeter matrix must have rank at least 1");
  if (int(m.size()) != n) throw std::invalid_argument("Coxeter matrix has wrong row count");
  if (int(names.size()) != n) throw std::invalid_argument("Coxeter matrix needs n generator names");
  for (int i = 0; i < n; ++i) {
    if (int(m[i].size()) != n) throw std::invalid_argument("Coxeter matrix row has wrong length");
    if (m[i][i] != 1) throw std::invalid_argument("Coxeter matrix diagonal must be 1");
    for (int j = 0; j < n; ++j) {
      if (m[i][j] != m[j][i]) throw std::invalid_argument("Coxeter matrix must be symmetric");
      if (i != j && m[i][j] != kInfinity && m[i][j] < 2)
        throw std::invalid_argument("off-diagonal Coxeter labels must be >= 2 or inf");
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (names[i] == names[j]) throw std::invalid_argument("generator names must be distinct");
}

std::vector<long> CoxeterMatrix::labels() const {
  std::vector<long> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.push_back(m[i][j]);
  return out;
}

std::string CoxeterMatrix::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < n; ++i) {
    if (i) os << ';';
    for (int j = 0; j < n; ++j) {
      if (j) os << ',';
      if (m[i][j] == kInfinity)
        os << "inf";
      else
        os << m[i][j];
    }
  }
  return os.str();
}

std::string to_string(Geometry g) {
  switch (g) {
    case Geometry::spherical: return "spherical";
    case Geometry::affine: return "affine";
    case Geometry::lorentzian: return "lorentzian";
    case Geometry::higher_rank: return "higher-rank";
  }
  return "?";
}

Mat CoxeterSystem::identity() const { return cox::identity<Scalar>(rank()); }

Mat CoxeterSystem::right_mul_simple(const Mat& M, int i) const {
  Mat R = M;
  const int n = rank();
  for (int j = 0; j < n; ++j) {
    if (j == i || gram(i, j).is_zero()) continue;
    const Scalar f = gram(i, j) * Scalar(2);
    for (int r = 0; r < n; ++r)
      if (!M(r, i).is_zero()) R(r, j) -= f * M(r, i);
  }
  for (int r = 0; r < n; ++r) R(r, i) = -M(r, i);
  return R;
}

Mat CoxeterSystem::left_mul_simple(int i, const Mat& M) const {
  Mat R = M;
  const int n = rank();
  for (int c = 0; c < n; ++c) {
    Scalar acc = -M(i, c);
    for (int j = 0; j < n; ++j) {
      if (j == i || gram(i, j).is_zero() || M(j, c).is_zero()) continue;
      acc -= Scalar(2) * gram(i, j) * M(j, c);
    }
    R(i, c) = acc;
  }
  return R;
}

Mat CoxeterSystem::word_matrix(const std::vector<int>& word) const {
  Mat M = identity();
  for (int i : word) M = right_mul_simple(M, i);
  return M;
}

std::string CoxeterSystem::word_string(const std::vector<int>& word) const {
  std::string s;
  for (int i : word) s += matrix.names[i];
  return s.empty() ? "1" : s;
}

int GroupEnumeration::find(const Mat& M) const {
  auto it = index.find(matrix_key(M));
  return it == index.end() ? -1 : it->second;
}

namespace {

bool graph_connected(const CoxeterMatrix& cm) {
  std::vector<char> seen(cm.n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    for (int j = 0; j < cm.n; ++j)
      if (!seen[j] && (cm.m[i][j] == kInfinity || cm.m[i][j] >= 3)) {
        seen[j] = 1;
        ++count;
        stack.push_back(j);
      }
  }
  return count == cm.n;
}

void check_relations(const CoxeterSystem& sys) {
  const int n = sys.rank();
  for (int i = 0; i < n; ++i) {
    if (!is_identity<Scalar>(Mat(sys.simple[i] * sys.simple[i])))
      throw std::logic_error("simple reflection is not an involution");
    for (int j = i + 1; j < n; ++j) {
      const long m = sys.matrix(i, j);
      const Mat g = sys.simple[i] * sys.simple[j];
      const long cap = m == kInfinity ? 64 : m;
      auto ord = element_order(g, cap);
      if (m == kInfinity ? ord.has_value() : ord != m)
        throw std::logic_error("relation order mismatch for generators " + sys.matrix.names[i] +
                               "," + sys.matrix.names[j]);
    }
  }
}

using Step = std::function<Mat(const Mat&, int)>;

GroupEnumeration bfs(const Mat& I, int ngens, const Step& step, long length_cap, long size_cap) {
  GroupEnumeration E;
  E.length_cap = length_cap;
  E.size_cap = size_cap;
  E.elements.push_back({I, {}});
  E.length.push_back(0);
  E.index.emplace(matrix_key(I), 0);
  size_t begin = 0, end = 1;
  long level = 0;
  while (true) {
    bool grew = false;
    for (size_t k = begin; k < end; ++k) {
      for (int i = 0; i < ngens; ++i) {
        Mat N = step(E.elements[k].matrix, i);
        std::string key = matrix_key(N);
        if (E.index.count(key)) continue;
        if (level + 1 > length_cap || long(E.elements.size()) >= size_cap) {
          E.complete = false;
          return E;
        }
        auto word = E.elements[k].word;
        word.push_back(i);
        E.index.emplace(std::move(key), int(E.elements.size()));
        E.elements.push_back({std::move(N), std::move(word)});
        E.length.push_back(int(level + 1));
        grew = true;
      }
    }
    if (!grew) {
      E.complete = true;
      return E;
    }
    begin = end;
    end = E.elements.size();
    ++level;
  }
}

}  // namespace

CoxeterSystem build_system(const CoxeterMatrix& cm, int degree_cap) {
  cm.validate();
  CoxeterSystem sys;
  sys.matrix = cm;
  sys.field = field_for_labels(cm.labels(), degree_cap);
  const int n = cm.n;
  sys.gram = Mat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      sys.gram(i, j) = i == j ? Scalar(1) : -cos_pi_over(sys.field, cm.m[i][j]);
  for (int i = 0; i < n; ++i) {
    Mat S = sys.identity();
    for (int j = 0; j < n; ++j) S(i, j) -= Scalar(2) * sys.gram(i, j);
    sys.simple.push_back(std::move(S));
  }
  sys.sig = signature(sys.gram);
  if (sys.sig.minus == 0 && sys.sig.zero == 0)
    sys.classification = Geometry::spherical;
  else if (sys.sig.minus == 0)
    sys.classification = Geometry::affine;
  else if (sys.sig.minus == 1)
    sys.classification = Geometry::lorentzian;
  else
    sys.classification = Geometry::higher_rank;
  sys.irreducible = graph_connected(cm);
  check_relations(sys);
  return sys;
}

CoxeterSystem build_system(const std::string& catalog, int degree_cap) {
  return build_system(parse_group(catalog), degree_cap);
}

GroupEnumeration enumerate(const CoxeterSystem& sys, long length_cap, long size_cap) {
  if (length_cap < 1 || size_cap < 1) throw std::invalid_argument("enumerate: caps must be positive");
  return bfs(
      sys.identity(), sys.rank(),
      [&](const Mat& M, int i) { return sys.right_mul_simple(M, i); }, length_cap, size_cap);
}

GroupEnumeration enumerate_generated(const Mat& identity, const std::vector<Mat>& gens,
                                     long length_cap, long size_cap) {
  return bfs(
      identity, int(gens.size()), [&](const Mat& M, int i) { return Mat(M * gens[i]); },
      length_cap, size_cap);
}

GroupElement coxeter_element(const CoxeterSystem& sys, const std::vector<int>& ordering) {
  std::vector<int> sorted = ordering;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < sys.rank(); ++i)
    if (int(sorted.size()) != sys.rank() || sorted[i] != i)
      throw std::invalid_argument("coxeter_element: ordering is not a permutation of the generators");
  return {sys.word_matrix(ordering), ordering};
}

GroupElement coxeter_element(const CoxeterSystem& sys) {
  std::vector<int> ord(sys.rank());
  for (int i = 0; i < sys.rank(); ++i) ord[i] = i;
  return coxeter_element(sys, ord);
}

std::optional<long> element_order(const Mat& g, long cap) {
  Mat P = g;
  for (long k = 1; k <= cap; ++k) {
    if (is_identity<Scalar>(P)) return k;
    P = P * g;
  }
  return std::nullopt;
}

GroupElement longest_element(const CoxeterSystem& sys) {
  if (sys.classification != Geometry::spherical)
    throw NotSpherical("longest_element requires a finite Coxeter group");
  auto E = enumerate(sys);
  if (!E.complete) throw CapExceeded("longest_element: enumeration did not complete");
  const int top = *std::max_element(E.length.begin(), E.length.end());
  int found = -1;
  for (size_t k = 0; k < E.size(); ++k)
    if (E.length[k] == top) {
      if (found >= 0) throw std::logic_error("longest element is not unique");
      found = int(k);
    }
  return E.elements[found];
}

int LabeledInterval::find(const Mat& M) const {
  auto it = index.find(matrix_key(M));
  return it == index.end() ? -1 : it->second;
}

void LabeledInterval::rebuild_adjacency() {
  up.assign(elements.size(), {});
  down.assign(elements.size(), {});
  for (size_t c = 0; c < covers.size(); ++c) {
    up[covers[c].lower].push_back(int(c));
    down[covers[c].upper].push_back(int(c));
  }
  index.clear();
  for (size_t k = 0; k < elements.size(); ++k) index.emplace(elements[k].key(), int(k));
}

std::vector<int> LabeledInterval::sorted_by_rank() const {
  std::vector<int> idx(elements.size());
  std::vector<std::string> keys(elements.size());
  for (size_t k = 0; k < idx.size(); ++k) {
    idx[k] = int(k);
    keys[k] = elements[k].key();
  }
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (rank[a] != rank[b]) return rank[a] < rank[b];
    return keys[a] < keys[b];
  });
  return idx;
}

LabeledInterval weak_order_interval(const CoxeterSystem& sys) {
  if (sys.classification != Geometry::spherical)
    throw NotSpherical("weak_order_interval requires a finite Coxeter group");
  auto E = enumerate(sys);
  if (!E.complete) throw CapExceeded("weak_order_interval: enumeration did not complete");
  LabeledInterval P;
  P.elements = E.elements;
  P.rank = E.length;
  P.label_names = sys.matrix.names;
  P.label_matrices = sys.simple;
  for (size_t k = 0; k < E.size(); ++k)
    for (int i = 0; i < sys.rank(); ++i) {
      int j = E.find(sys.right_mul_simple(E.elements[k].matrix, i));
      if (E.length[j] == E.length[k] + 1) P.covers.push_back({int(k), j, i});
    }
  P.bottom = 0;
  P.top = int(std::max_element(E.length.begin(), E.length.end()) - E.length.begin());
  P.rebuild_adjacency();
  return P;
}

Parabolic standard_parabolic(const CoxeterSystem& sys, const std::vector<int>& T) {
  if (T.empty()) throw std::invalid_argument("standard_parabolic: T must be nonempty");
  CoxeterMatrix cm;
  cm.n = int(T.size());
  cm.m.assign(cm.n, std::vector<long>(cm.n));
  for (int i = 0; i < cm.n; ++i) {
    cm.names.push_back(sys.matrix.names[T[i]]);
    for (int j = 0; j < cm.n; ++j) cm.m[i][j] = sys.matrix(T[i], T[j]);
  }
  Parabolic out{build_system(cm), T, false};
  out.finite = out.system.classification == Geometry::spherical;
  return out;
}

std::optional<std::pair<std::vector<int>, std::vector<int>>> coxeter_graph_bipartition(
    const CoxeterSystem& sys) {
  const int n = sys.rank();
  std::vector<int> color(n, -1);
  for (int s = 0; s < n; ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int i = q.front();
      q.pop();
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const long m = sys.matrix(i, j);
        if (m != kInfinity && m < 3) continue;
        if (color[j] < 0) {
          color[j] = 1 - color[i];
          q.push(j);
        } else if (color[j] == color[i]) {
          return std::nullopt;
        }
      }
    }
  }
  std::pair<std::vector<int>, std::vector<int>> parts;
  for (int i = 0; i < n; ++i) (color[i] == 0 ? parts.first : parts.second).push_back(i);
  return parts;
}

std::optional<BipartiteResult> bipartite_coxeter_element(const CoxeterSystem& sys) {
  auto parts = coxeter_graph_bipartition(sys);
  if (!parts) return std::nullopt;
  std::vector<int> ord = parts->first;
  ord.insert(ord.end(), parts->second.begin(), parts->second.end());
  return BipartiteResult{coxeter_element(sys, ord), parts->first, parts->second};
}

}  // namespace cox
