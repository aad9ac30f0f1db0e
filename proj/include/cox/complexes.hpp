#pragma once

#include "cox/axial_geometry.hpp"
#include "cox/dual_interval.hpp"

#include <json.hpp>

#include <map>
#include <memory>

namespace cox {

// A simplex [x1|...|xd] as indices of non-identity elements of the source interval.
using Simplex = std::vector<int>;

struct DeltaComplex {
  std::shared_ptr<const LabeledInterval> interval;
  std::vector<std::string> element_names;
  std::vector<std::vector<Simplex>> cells;              // cells[d] sorted
  std::vector<std::vector<std::vector<int>>> faces;     // faces[d][k]: d+1 indices into cells[d-1]
  std::vector<std::map<Simplex, int>> index;
  bool truncated = false;

  int dim() const { return int(cells.size()) - 1; }
  std::vector<size_t> counts() const;
  int find(const Simplex& s) const;
  std::string name(const Simplex& s) const;  // "[a|bc]"
};

constexpr size_t kDefaultCellCap = 2000000;

// Face i of [x1|...|xd]: i = 0 drops x1, 0 < i < d merges x_i x_{i+1}, i = d drops xd.
DeltaComplex interval_complex(std::shared_ptr<const LabeledInterval> P, const CoxeterSystem* sys = nullptr,
                              size_t cap = kDefaultCellCap);

// Subcomplex of K spanned by the given simplices (closed under faces by construction).
DeltaComplex subcomplex(const DeltaComplex& K, const std::vector<std::vector<bool>>& keep);

struct DualSalvetti {
  DeltaComplex X;
  std::vector<std::vector<int>> parabolics;  // generator subsets T with W_T finite
  size_t cells_outside_truncation = 0;
};

// Union inside K of the interval complexes of w_T for all T with W_T finite,
// where w_T multiplies the generators of T in the given Coxeter order.
DualSalvetti dual_salvetti(const CoxeterSystem& sys, const DeltaComplex& K,
                           const std::vector<int>& coxeter_order, int root_depth = kDefaultRootDepth);

bool check_simplicial_identities(const DeltaComplex& K);

std::optional<long> euler_characteristic_checked(const DeltaComplex& K);
long euler_characteristic(const DeltaComplex& K);  // throws on truncated complexes

struct CellRef {
  int dim = 0;
  int index = 0;
  friend bool operator==(const CellRef& a, const CellRef& b) {
    return a.dim == b.dim && a.index == b.index;
  }
  friend bool operator<(const CellRef& a, const CellRef& b) {
    return std::tie(a.dim, a.index) < std::tie(b.dim, b.index);
  }
};

struct MorsePair {
  CellRef lower;
  CellRef upper;
  int stage = 0;
};

struct MorseMatching {
  std::vector<MorsePair> pairs;
  std::vector<CellRef> critical;        // every unmatched cell
  std::vector<CellRef> critical_outside;  // unmatched cells of K minus X
  std::vector<CellRef> exceptional;     // top cells left unmatched by stage 1
  std::map<std::string, int> stage1_outcomes;
  std::vector<std::string> diagnostics;
  bool involution = true;
  bool acyclic = true;

  std::optional<CellRef> partner(const CellRef& c) const;
};

// Without stage 1 only the lexicographic second stage runs.
MorseMatching morse_matching(const DeltaComplex& K, const DeltaComplex& X, const AxialOrdering& ord,
                             bool stage1 = true);

// Sparse integer matrix in row-major maps.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::map<int, mpz_class>> data;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), data(r) {}
  void add(int r, int c, const mpz_class& v);
  mpz_class at(int r, int c) const;
  ZMat dense() const;
  static IntMatrix from_dense(const ZMat& M);
};

IntMatrix operator*(const IntMatrix& A, const IntMatrix& B);

// Nonzero invariant factors d1 | d2 | ... (positive).
std::vector<mpz_class> smith_normal_form(const IntMatrix& M);
std::vector<mpz_class> smith_normal_form(const ZMat& M);

// boundary[d] maps C_d to C_{d-1} (rows indexed by cells[d-1]); boundary[0] is 0 x |C_0|.
std::vector<IntMatrix> boundary_matrices(const DeltaComplex& K);

struct HomologyGroup {
  long betti = 0;
  std::vector<mpz_class> torsion;
  friend bool operator==(const HomologyGroup& a, const HomologyGroup& b) {
    return a.betti == b.betti && a.torsion == b.torsion;
  }
};

std::vector<HomologyGroup> homology(const DeltaComplex& K);
std::string to_string(const std::vector<HomologyGroup>& H);

nlohmann::ordered_json complex_to_json(const DeltaComplex& K, const MorseMatching* m = nullptr);
std::string boundary_csv(const std::vector<IntMatrix>& bd);

}  // namespace cox
