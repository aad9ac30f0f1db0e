#pragma once

#include "cox/complexes.hpp"

namespace cox {

using Word = std::vector<int>;  // label indices

struct Presentation {
  std::vector<std::string> generators;
  std::vector<std::pair<Word, Word>> relations;
  std::vector<std::pair<Word, Word>> removed;  // dropped by the reduction pass

  std::string word_string(const Word& w) const;
};

// Generators are the cover labels; relations equate maximal-chain words of the whole interval.
// With reduce, each chain word is tied to the first one only.
Presentation interval_group_presentation(const LabeledInterval& P, bool reduce = true,
                                         size_t chain_cap = kDefaultChainCap);

// Bounded search for a rewriting path u -> v using relations in either direction.
bool derivable(const Presentation& pres, const Word& u, const Word& v, size_t max_len, size_t max_words = 200000);

// The same, after padding both sides with a common prefix and suffix (cancellation in the group).
bool derivable_with_context(const Presentation& pres, const Word& prefix, const Word& u, const Word& v,
                            const Word& suffix, size_t max_words = 200000);

struct Abelianization {
  long free_rank = 0;
  std::vector<mpz_class> torsion;
};

Abelianization abelianization(const Presentation& pres);
std::string to_string(const Abelianization& a);

std::string presentation_text(const Presentation& pres);
Presentation parse_presentation(const std::string& text);

// Each relation multiplies out to the same element on both sides.
bool relations_sound(const Presentation& pres, const LabeledInterval& P);

}  // namespace cox
