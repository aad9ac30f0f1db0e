#pragma once

#include "cox/roots_reflections.hpp"

#include <json.hpp>

#include <optional>

namespace cox {

enum class LengthMode { automatic, moved_space, bfs };

// [1,w] in absolute order, built level by level downward from w.
// Cover labels index into refl; a cover (u, v, r) satisfies u^-1 v = r.
LabeledInterval build_interval(const CoxeterSystem& sys, const Mat& w, const ReflectionSet& refl,
                               LengthMode mode = LengthMode::automatic);

// Same element set grown upward from 1 with a divisibility test against w.
LabeledInterval build_interval_bottom_up(const CoxeterSystem& sys, const Mat& w,
                                         const ReflectionSet& refl,
                                         LengthMode mode = LengthMode::automatic);

// Display name of each element: labels along the first maximal chain from the bottom.
std::vector<std::string> element_names(const LabeledInterval& P);

struct LatticeWitness {
  int u = -1;
  int v = -1;
  bool upper = true;        // minimal upper bounds when true, maximal lower bounds otherwise
  std::vector<int> bounds;  // at least two
};

struct LatticeReport {
  bool is_lattice = true;
  std::optional<LatticeWitness> witness;
  bool witness_verified = false;
  bool truncation_caveat = false;
};

LatticeReport lattice_check(const LabeledInterval& P);
bool verify_witness(const LabeledInterval& P, const LatticeWitness& w);
// Graded bowtie 0 < x,y < p,q < 1: x and y have two minimal upper bounds.
LabeledInterval bowtie_fixture();

struct Factorization {
  Mat target;
  std::vector<int> factors;  // reflection indices
};

struct ChainList {
  std::vector<Factorization> chains;
  bool overflow = false;
};

constexpr size_t kDefaultChainCap = 1000000;

ChainList maximal_chains(const LabeledInterval& P, size_t cap = kDefaultChainCap);
// Label sequences (bottom to u) of the maximal chains of [bottom, u].
std::vector<std::vector<int>> chain_labels_below(const LabeledInterval& P, int u,
                                                 size_t cap = kDefaultChainCap);

struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class HurwitzDirection { fwd, inv };

// Position i is 1-based and acts on factors i and i+1.
Factorization hurwitz_move(const Factorization& f, int i, HurwitzDirection dir,
                           const ReflectionSet& refl);

struct OrbitReport {
  std::vector<std::vector<std::vector<int>>> orbits;  // factor sequences, sorted
  std::vector<int> orbit_of_input;
  bool transitive = false;
  bool overflow = false;
};

OrbitReport hurwitz_orbits(const std::vector<Factorization>& facts, const ReflectionSet& refl,
                           size_t cap = kDefaultChainCap);

struct ELFailure {
  int element = -1;
  int increasing_chains = 0;
  bool increasing_is_lex_first = false;
};

struct ELReport {
  std::vector<int> ordering;  // labels from smallest to largest
  bool ok = true;
  std::vector<ELFailure> failures;
};

ELReport el_check(const LabeledInterval& P, const std::vector<int>& ordering);

GroupEnumeration factorization_subgroup(const Factorization& f, const ReflectionSet& refl,
                                        long length_cap = kDefaultLengthCap,
                                        long size_cap = kDefaultSizeCap);

struct SubgroupComparison {
  bool all_equal = true;
  bool complete = true;
  std::vector<size_t> sizes;
};

SubgroupComparison compare_factorization_subgroups(const std::vector<Factorization>& facts,
                                                   const ReflectionSet& refl,
                                                   long length_cap = kDefaultLengthCap,
                                                   long size_cap = kDefaultSizeCap);

// For each u in P: the reflections along one chain to u span a rank(u)-dimensional root space,
// and the interval of u built over the reflections of the subgroup they generate has u on top
// with the same size as [1,u] in P.
struct SubgroupTopReport {
  bool ok = true;
  int checked = 0;
  std::vector<int> failures;  // element indices
  bool complete = true;
};

SubgroupTopReport subgroup_top_check(const CoxeterSystem& sys, const LabeledInterval& P,
                                     const ReflectionSet& refl, long length_cap = kDefaultLengthCap,
                                     long size_cap = kDefaultSizeCap);

nlohmann::ordered_json interval_to_json(const LabeledInterval& P);
std::string interval_to_dot(const LabeledInterval& P);

}  // namespace cox
