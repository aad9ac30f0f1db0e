#include "cox/presentations.hpp"

#include <queue>
#include <set>
#include <sstream>

namespace cox {

std::string Presentation::word_string(const Word& w) const {
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + generators[w[i]];
  return s;
}

Presentation interval_group_presentation(const LabeledInterval& P, bool reduce, size_t chain_cap) {
  if (P.truncated) throw std::invalid_argument("presentation: interval is truncated");
  std::vector<int> compact(P.label_names.size(), -1);
  Presentation pres;
  std::set<int> used;
  for (const auto& c : P.covers) used.insert(c.label);
  for (int l : used) {
    compact[l] = int(pres.generators.size());
    pres.generators.push_back(P.label_names[l]);
  }
  const ChainList chains = maximal_chains(P, chain_cap);
  if (chains.overflow) throw CapExceeded("presentation: too many maximal chains");
  std::vector<Word> words;
  for (const auto& c : chains.chains) {
    Word w;
    for (int l : c.factors) w.push_back(compact[l]);
    words.push_back(std::move(w));
  }
  for (size_t i = 0; i < words.size(); ++i)
    for (size_t j = i + 1; j < words.size(); ++j)
      (reduce && i > 0 ? pres.removed : pres.relations).push_back({words[i], words[j]});
  return pres;
}

bool derivable(const Presentation& pres, const Word& u, const Word& v, size_t max_len, size_t max_words) {
  std::set<Word> seen{u};
  std::queue<Word> q;
  q.push(u);
  while (!q.empty()) {
    const Word x = q.front();
    q.pop();
    if (x == v) return true;
    for (const auto& [l, r] : pres.relations)
      for (int dir = 0; dir < 2; ++dir) {
        const Word& from = dir ? r : l;
        const Word& to = dir ? l : r;
        if (from.size() > x.size()) continue;
        for (size_t p = 0; p + from.size() <= x.size(); ++p) {
          if (!std::equal(from.begin(), from.end(), x.begin() + p)) continue;
          Word y(x.begin(), x.begin() + p);
          y.insert(y.end(), to.begin(), to.end());
          y.insert(y.end(), x.begin() + p + from.size(), x.end());
          if (y.size() > max_len || seen.count(y)) continue;
          if (seen.size() >= max_words) return false;
          seen.insert(y);
          q.push(std::move(y));
        }
      }
  }
  return false;
}

bool derivable_with_context(const Presentation& pres, const Word& prefix, const Word& u, const Word& v,
                            const Word& suffix, size_t max_words) {
  Word a = prefix, b = prefix;
  a.insert(a.end(), u.begin(), u.end());
  a.insert(a.end(), suffix.begin(), suffix.end());
  b.insert(b.end(), v.begin(), v.end());
  b.insert(b.end(), suffix.begin(), suffix.end());
  return derivable(pres, a, b, std::max(a.size(), b.size()), max_words);
}

Abelianization abelianization(const Presentation& pres) {
  const int n = int(pres.generators.size());
  IntMatrix M(int(pres.relations.size()), n);
  for (size_t i = 0; i < pres.relations.size(); ++i) {
    for (int g : pres.relations[i].first) M.add(int(i), g, 1);
    for (int g : pres.relations[i].second) M.add(int(i), g, -1);
  }
  Abelianization a;
  const auto snf = smith_normal_form(M);
  a.free_rank = n - long(snf.size());
  for (const auto& d : snf)
    if (d > 1) a.torsion.push_back(d);
  return a;
}

std::string to_string(const Abelianization& a) {
  std::ostringstream os;
  os << "Z^" << a.free_rank;
  for (const auto& t : a.torsion) os << " + Z/" << t.get_str();
  return os.str();
}

std::string presentation_text(const Presentation& pres) {
  std::ostringstream os;
  os << "gen:";
  for (const auto& g : pres.generators) os << " " << g;
  os << "\n";
  for (const auto& [l, r] : pres.relations) os << "rel: " << pres.word_string(l) << " = " << pres.word_string(r) << "\n";
  return os.str();
}

Presentation parse_presentation(const std::string& text) {
  Presentation pres;
  std::istringstream in(text);
  std::string line;
  auto parse_word = [&](const std::string& s) {
    std::istringstream ws(s);
    Word w;
    std::string tok;
    while (ws >> tok) {
      auto it = std::find(pres.generators.begin(), pres.generators.end(), tok);
      if (it == pres.generators.end()) throw std::invalid_argument("presentation: unknown generator " + tok);
      w.push_back(int(it - pres.generators.begin()));
    }
    return w;
  };
  while (std::getline(in, line)) {
    if (line.rfind("gen:", 0) == 0) {
      std::istringstream gs(line.substr(4));
      std::string g;
      while (gs >> g) pres.generators.push_back(g);
    } else if (line.rfind("rel:", 0) == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("presentation: relation without '='");
      pres.relations.push_back({parse_word(line.substr(4, eq - 4)), parse_word(line.substr(eq + 1))});
    } else if (!line.empty()) {
      throw std::invalid_argument("presentation: unexpected line: " + line);
    }
  }
  return pres;
}

bool relations_sound(const Presentation& pres, const LabeledInterval& P) {
  auto eval = [&](const Word& w) -> std::optional<Mat> {
    Mat M = P.elements[P.bottom].matrix;
    for (int g : w) {
      auto it = std::find(P.label_names.begin(), P.label_names.end(), pres.generators[g]);
      if (it == P.label_names.end()) return std::nullopt;
      M = M * P.label_matrices[it - P.label_names.begin()];
    }
    return M;
  };
  for (const auto& [l, r] : pres.relations) {
    auto a = eval(l), b = eval(r);
    if (!a || !b || *a != *b) return false;
    const int k = P.find(*a);
    if (k < 0 || P.rank[k] != int(l.size()) || P.rank[k] != int(r.size())) return false;
  }
  return true;
}

}  // namespace cox
