#include "cox/roots_reflections.hpp"

#include <limits>

#include <algorithm>

namespace cox {

int ReflectionSet::find(const Mat& M) const {
  auto it = index.find(matrix_key(M));
  return it == index.end() ? -1 : it->second;
}

Mat reflection_matrix(const CoxeterSystem& sys, const Vec& root) {
  const int n = sys.rank();
  Vec Bb = sys.gram * root;
  Mat R = sys.identity();
  for (int i = 0; i < n; ++i) {
    if (root(i).is_zero()) continue;
    const Scalar f = Scalar(2) * root(i);
    for (int j = 0; j < n; ++j)
      if (!Bb(j).is_zero()) R(i, j) -= f * Bb(j);
  }
  return R;
}

namespace {

bool is_positive(const Vec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i).sign() < 0) return false;
  return true;
}

std::string vec_key(const Vec& v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    for (const auto& c : v(i).coeffs()) s += c.get_str() + ",";
    s += ';';
  }
  return s;
}

}  // namespace

ReflectionSet enumerate_reflections(const CoxeterSystem& sys, int depth_cutoff,
                                    const std::vector<int>& generators) {
  if (depth_cutoff < 0) throw std::invalid_argument("enumerate_reflections: negative cutoff");
  const int n = sys.rank();
  std::vector<int> gens = generators;
  if (gens.empty())
    for (int i = 0; i < n; ++i) gens.push_back(i);

  ReflectionSet R;
  R.depth_cutoff = depth_cutoff;
  std::unordered_set<std::string> seen;
  std::vector<std::vector<int>> conj;  // g with root = g alpha_s, as a word
  std::vector<int> base;

  auto add = [&](Vec root, int depth, std::vector<int> g, int s) {
    std::vector<int> word = g;
    word.push_back(s);
    word.insert(word.end(), g.rbegin(), g.rend());
    Mat M = reflection_matrix(sys, root);
    R.index.emplace(matrix_key(M), int(R.reflections.size()));
    R.names.push_back(sys.word_string(word));
    R.reflections.push_back({std::move(M), std::move(word)});
    R.roots.push_back(std::move(root));
    R.depth.push_back(depth);
    conj.push_back(std::move(g));
    base.push_back(s);
  };

  if (depth_cutoff == 0) {
    R.complete = false;
    return R;
  }
  // A finite root system is exhausted by the search, so only infinite groups are cut off.
  const bool finite = generators.empty() ? sys.classification == Geometry::spherical
                                         : standard_parabolic(sys, gens).finite;
  if (finite) depth_cutoff = std::numeric_limits<int>::max();
  for (int s : gens) {
    Vec a = Vec::Constant(n, Scalar(0));
    a(s) = Scalar(1);
    seen.insert(vec_key(a));
    add(a, 1, {}, s);
  }
  size_t begin = 0, end = R.roots.size();
  int depth = 1;
  while (true) {
    bool grew = false;
    for (size_t k = begin; k < end; ++k) {
      for (int i : gens) {
        Scalar pair(0);
        for (int j = 0; j < n; ++j)
          if (!R.roots[k](j).is_zero()) pair += sys.gram(i, j) * R.roots[k](j);
        if (pair.sign() >= 0) continue;
        Vec b = R.roots[k];
        b(i) -= Scalar(2) * pair;
        if (!is_positive(b)) continue;
        std::string key = vec_key(b);
        if (seen.count(key)) continue;
        if (depth == depth_cutoff) {
          R.complete = false;
          return R;
        }
        seen.insert(std::move(key));
        std::vector<int> g{i};
        g.insert(g.end(), conj[k].begin(), conj[k].end());
        add(std::move(b), depth + 1, std::move(g), base[k]);
        grew = true;
      }
    }
    if (!grew) {
      R.complete = true;
      return R;
    }
    begin = end;
    end = R.roots.size();
    ++depth;
  }
}

MovedSpaceData moved_space(const Mat& g) {
  const int n = int(g.rows());
  Mat D = g - identity<Scalar>(n);
  MovedSpaceData out;
  out.moved_dim = rank(D);
  out.fixed_dim = n - out.moved_dim;
  return out;
}

ReflectionProducts::ReflectionProducts(const ReflectionSet& refl, int max_length)
    : refl_(refl), max_length_(max_length) {}

void ReflectionProducts::ensure_layer(int j) {
  while (int(layers_.size()) <= j) {
    const int k = int(layers_.size());
    std::vector<Mat> layer;
    std::unordered_set<std::string> keys;
    if (k == 0) {
      const int n = refl_.reflections.empty() ? 0 : int(refl_.reflections[0].matrix.rows());
      layer.push_back(identity<Scalar>(n));
      keys.insert(matrix_key(layer.back()));
    } else {
      for (const auto& P : layers_[k - 1])
        for (const auto& r : refl_.reflections) {
          Mat Q = P * r.matrix;
          if (keys.insert(matrix_key(Q)).second) layer.push_back(std::move(Q));
        }
    }
    layers_.push_back(std::move(layer));
    layer_keys_.push_back(std::move(keys));
  }
}

bool ReflectionProducts::is_product(const Mat& g, int k) {
  if (k < 0) return false;
  if (k == 0) return is_identity<Scalar>(g);
  if (k == 1) return refl_.find(g) >= 0;
  const int k1 = k / 2, k2 = k - k1;
  ensure_layer(k2);
  for (const auto& y : layers_[k1])
    if (layer_keys_[k2].count(matrix_key(Mat(y * g)))) return true;
  return false;
}

std::optional<int> ReflectionProducts::length(const Mat& g) {
  for (int k = 0; k <= max_length_; ++k)
    if (is_product(g, k)) return k;
  return std::nullopt;
}

std::optional<int> reflection_length(const CoxeterSystem& sys, const Mat& g, LengthBackend backend,
                                     const ReflectionSet& refl) {
  if (backend == LengthBackend::fixed_space) {
    if (sys.classification != Geometry::spherical)
      throw NotSpherical("fixed_space reflection length requires a finite Coxeter group");
    return moved_space(g).moved_dim;
  }
  ReflectionProducts P(refl, sys.rank());
  return P.length(g);
}

std::optional<bool> divides(const CoxeterSystem& sys, const Mat& u, const Mat& w,
                            const ReflectionSet& refl, LengthBackend backend) {
  const Mat rest = inverse_matrix<Scalar>(u) * w;
  auto lu = reflection_length(sys, u, backend, refl);
  auto lr = reflection_length(sys, rest, backend, refl);
  auto lw = reflection_length(sys, w, backend, refl);
  if (!lu || !lr || !lw) return std::nullopt;
  return *lu + *lr == *lw;
}

std::optional<bool> divides(const CoxeterSystem& sys, const Mat& u, const Mat& w,
                            const ReflectionSet& refl) {
  return divides(sys, u, w, refl,
                 sys.classification == Geometry::spherical ? LengthBackend::fixed_space
                                                           : LengthBackend::bfs);
}

}  // namespace cox
