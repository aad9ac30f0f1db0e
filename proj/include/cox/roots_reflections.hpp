#pragma once

#include "cox/coxeter_core.hpp"

#include <optional>
#include <unordered_set>

namespace cox {

struct ReflectionSet {
  std::vector<GroupElement> reflections;  // witness word g s g^-1
  std::vector<Vec> roots;                 // positive roots in the simple-root basis
  std::vector<int> depth;
  std::vector<std::string> names;
  int depth_cutoff = 0;
  bool complete = false;
  std::unordered_map<std::string, int> index;

  int find(const Mat& M) const;
  int size() const { return int(reflections.size()); }
};

constexpr int kDefaultRootDepth = 8;

// Orbit of the simple roots under the simple reflections, up to the given root depth.
// Finite groups always get every reflection; the cutoff bounds infinite ones.
// A nonempty `generators` restricts to the standard parabolic subgroup they generate.
ReflectionSet enumerate_reflections(const CoxeterSystem& sys, int depth_cutoff = kDefaultRootDepth,
                                    const std::vector<int>& generators = {});

Mat reflection_matrix(const CoxeterSystem& sys, const Vec& root);

struct MovedSpaceData {
  int fixed_dim = 0;
  int moved_dim = 0;
};
MovedSpaceData moved_space(const Mat& g);

enum class LengthBackend { fixed_space, bfs };

// Products of up to ceil(n/2) reflections, cached for meet-in-the-middle membership tests.
class ReflectionProducts {
 public:
  ReflectionProducts(const ReflectionSet& refl, int max_length);
  // True iff g is a product of exactly k reflections from the table.
  bool is_product(const Mat& g, int k);
  // Least k <= max_length with is_product(g, k).
  std::optional<int> length(const Mat& g);
  int max_length() const { return max_length_; }

 private:
  void ensure_layer(int j);
  const ReflectionSet& refl_;
  int max_length_;
  std::vector<std::vector<Mat>> layers_;
  std::vector<std::unordered_set<std::string>> layer_keys_;
};

// nullopt means "unknown at cutoff".
std::optional<int> reflection_length(const CoxeterSystem& sys, const Mat& g, LengthBackend backend,
                                     const ReflectionSet& refl);

std::optional<bool> divides(const CoxeterSystem& sys, const Mat& u, const Mat& w,
                            const ReflectionSet& refl, LengthBackend backend);
std::optional<bool> divides(const CoxeterSystem& sys, const Mat& u, const Mat& w,
                            const ReflectionSet& refl);

}  // namespace cox
