#pragma once

#include "cox/exact_linear.hpp"

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace cox {

struct CoxeterMatrix {
  int n = 0;
  std::vector<std::vector<long>> m;  // kInfinity marks an infinite label
  std::vector<std::string> names;

  long operator()(int i, int j) const { return m[i][j]; }
  void validate() const;
  std::vector<long> labels() const;
  std::string to_string() const;
};

// Generator names a, b, c, ... (then g26, g27, ...).
std::vector<std::string> default_names(int n);

// Catalog strings: An, Bn, Dn, E6..E8, F4, G2, H3, H4, I2:m, affine:An, affine:Bn, affine:Cn,
// affine:Dn, affine:G2, affine:F4, triangle:p,q,r, universal:n, matrix:r0;r1;... (entries "inf").
CoxeterMatrix parse_group(const std::string& spec);

enum class Geometry { spherical, affine, lorentzian, higher_rank };
std::string to_string(Geometry g);

struct CoxeterSystem {
  CoxeterMatrix matrix;
  const Field* field = nullptr;
  Mat gram;
  std::vector<Mat> simple;
  Signature sig;
  Geometry classification = Geometry::spherical;
  bool irreducible = true;

  int rank() const { return matrix.n; }
  Mat identity() const;
  // M * rho(s_i), touching only the columns that change.
  Mat right_mul_simple(const Mat& M, int i) const;
  // rho(s_i) * M, touching only row i.
  Mat left_mul_simple(int i, const Mat& M) const;
  Mat word_matrix(const std::vector<int>& word) const;
  std::string word_string(const std::vector<int>& word) const;
};

struct GroupElement {
  Mat matrix;
  std::vector<int> word;  // witness only; empty when unknown or identity

  std::string key() const { return matrix_key(matrix); }
  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.matrix == b.matrix;
  }
};

struct GroupEnumeration {
  std::vector<GroupElement> elements;
  std::vector<int> length;
  std::unordered_map<std::string, int> index;
  bool complete = false;
  long length_cap = 0;
  long size_cap = 0;

  int find(const Mat& M) const;
  size_t size() const { return elements.size(); }
};

constexpr long kDefaultLengthCap = 64;
constexpr long kDefaultSizeCap = 2000000;

CoxeterSystem build_system(const CoxeterMatrix& cm, int degree_cap = 48);
CoxeterSystem build_system(const std::string& catalog, int degree_cap = 48);

GroupEnumeration enumerate(const CoxeterSystem& sys, long length_cap = kDefaultLengthCap,
                           long size_cap = kDefaultSizeCap);

// Breadth-first closure under right multiplication by arbitrary generator matrices.
GroupEnumeration enumerate_generated(const Mat& identity, const std::vector<Mat>& gens,
                                     long length_cap, long size_cap);

GroupElement coxeter_element(const CoxeterSystem& sys, const std::vector<int>& ordering);
GroupElement coxeter_element(const CoxeterSystem& sys);

// Least k <= cap with g^k = 1.
std::optional<long> element_order(const Mat& g, long cap);

struct NotSpherical : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

GroupElement longest_element(const CoxeterSystem& sys);

struct Cover {
  int lower;
  int upper;
  int label;
};

// Finite graded poset with labeled covers; elements are group elements.
struct LabeledInterval {
  std::vector<GroupElement> elements;
  std::vector<int> rank;
  std::vector<Cover> covers;
  std::vector<std::string> label_names;
  std::vector<Mat> label_matrices;
  int bottom = 0;
  int top = 0;
  bool truncated = false;

  std::unordered_map<std::string, int> index;
  std::vector<std::vector<int>> up;    // cover indices with lower = i
  std::vector<std::vector<int>> down;  // cover indices with upper = i

  int find(const Mat& M) const;
  int size() const { return int(elements.size()); }
  void rebuild_adjacency();
  // Element indices sorted by rank then key.
  std::vector<int> sorted_by_rank() const;
};

LabeledInterval weak_order_interval(const CoxeterSystem& sys);

struct Parabolic {
  CoxeterSystem system;
  std::vector<int> generators;
  bool finite = false;
};

Parabolic standard_parabolic(const CoxeterSystem& sys, const std::vector<int>& T);

// Edge iff m >= 3 (or infinite).
std::optional<std::pair<std::vector<int>, std::vector<int>>> coxeter_graph_bipartition(
    const CoxeterSystem& sys);
struct BipartiteResult {
  GroupElement element;
  std::vector<int> part1;
  std::vector<int> part2;
};
std::optional<BipartiteResult> bipartite_coxeter_element(const CoxeterSystem& sys);

}  // namespace cox
