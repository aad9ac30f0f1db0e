#include "cox/coxeter_core.hpp"

#include <cctype>
#include <sstream>

namespace cox {

namespace {

struct Builder {
  CoxeterMatrix cm;
  explicit Builder(int n) {
    if (n < 1) throw std::invalid_argument("catalog: rank must be positive");
    cm.n = n;
    cm.m.assign(n, std::vector<long>(n, 2));
    for (int i = 0; i < n; ++i) cm.m[i][i] = 1;
    cm.names = default_names(n);
  }
  Builder& edge(int i, int j, long m = 3) {
    cm.m[i][j] = cm.m[j][i] = m;
    return *this;
  }
  Builder& path(int from, int to) {
    for (int i = from; i < to; ++i) edge(i, i + 1);
    return *this;
  }
};

long parse_label(const std::string& s) {
  if (s == "inf" || s == "oo" || s == "infinity") return kInfinity;
  size_t pos = 0;
  long v = std::stol(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("catalog: bad label '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

int parse_rank(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("catalog: missing rank");
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("catalog: bad rank '" + s + "'");
  return std::stoi(s);
}

CoxeterMatrix finite_type(char type, int n) {
  switch (type) {
    case 'A': return Builder(n).path(0, n - 1).cm;
    case 'B':
    case 'C':
      if (n < 2) throw std::invalid_argument("catalog: B_n needs n >= 2");
      return Builder(n).path(0, n - 1).edge(0, 1, 4).cm;
    case 'D':
      if (n < 4) throw std::invalid_argument("catalog: D_n needs n >= 4");
      return Builder(n).path(0, n - 2).edge(n - 3, n - 1).cm;
    case 'E': {
      if (n < 6 || n > 8) throw std::invalid_argument("catalog: E_n needs 6 <= n <= 8");
      Builder b(n);
      b.edge(0, 2).edge(1, 3);
      for (int i = 2; i + 1 < n; ++i) b.edge(i, i + 1);
      return b.cm;
    }
    case 'F':
      if (n != 4) throw std::invalid_argument("catalog: only F4 exists");
      return Builder(4).path(0, 3).edge(1, 2, 4).cm;
    case 'G':
      if (n != 2) throw std::invalid_argument("catalog: only G2 exists");
      return Builder(2).edge(0, 1, 6).cm;
    case 'H':
      if (n != 3 && n != 4) throw std::invalid_argument("catalog: H_n needs n in {3,4}");
      return Builder(n).path(0, n - 1).edge(0, 1, 5).cm;
  }
  throw std::invalid_argument(std::string("catalog: unknown type '") + type + "'");
}

CoxeterMatrix affine_type(char type, int n) {
  switch (type) {
    case 'A':
      if (n == 1) return Builder(2).edge(0, 1, kInfinity).cm;
      if (n < 2) throw std::invalid_argument("catalog: affine A_n needs n >= 1");
      return Builder(n + 1).path(0, n).edge(n, 0).cm;
    case 'B':
      if (n < 3) throw std::invalid_argument("catalog: affine B_n needs n >= 3");
      return Builder(n + 1).path(1, n).edge(0, 2).edge(n - 1, n, 4).cm;
    case 'C':
      if (n < 2) throw std::invalid_argument("catalog: affine C_n needs n >= 2");
      return Builder(n + 1).path(0, n).edge(0, 1, 4).edge(n - 1, n, 4).cm;
    case 'D':
      if (n < 4) throw std::invalid_argument("catalog: affine D_n needs n >= 4");
      return Builder(n + 1).path(1, n - 1).edge(0, 2).edge(n - 2, n).cm;
    case 'F':
      if (n != 4) throw std::invalid_argument("catalog: only affine F4 exists");
      return Builder(5).path(0, 4).edge(2, 3, 4).cm;
    case 'G':
      if (n != 2) throw std::invalid_argument("catalog: only affine G2 exists");
      return Builder(3).path(0, 2).edge(1, 2, 6).cm;
  }
  throw std::invalid_argument(std::string("catalog: unknown affine type '") + type + "'");
}

}  // namespace

CoxeterMatrix parse_group(const std::string& spec) {
  auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string tail = colon == std::string::npos ? "" : spec.substr(colon + 1);

  if (head == "I2") {
    long m = parse_label(tail);
    if (m != kInfinity && m < 2) throw std::invalid_argument("catalog: I2:m needs m >= 2");
    return Builder(2).edge(0, 1, m).cm;
  }
  if (head == "affine") {
    if (tail.size() < 2) throw std::invalid_argument("catalog: affine:<type><rank> expected");
    return affine_type(tail[0], parse_rank(tail.substr(1)));
  }
  if (head == "triangle") {
    auto parts = split(tail, ',');
    if (parts.size() != 3) throw std::invalid_argument("catalog: triangle:p,q,r expected");
    return Builder(3)
        .edge(0, 1, parse_label(parts[0]))
        .edge(0, 2, parse_label(parts[1]))
        .edge(1, 2, parse_label(parts[2]))
        .cm;
  }
  if (head == "universal") {
    Builder b(parse_rank(tail));
    for (int i = 0; i < b.cm.n; ++i)
      for (int j = i + 1; j < b.cm.n; ++j) b.edge(i, j, kInfinity);
    return b.cm;
  }
  if (head == "matrix") {
    auto rows = split(tail, ';');
    Builder b(int(rows.size()));
    for (size_t i = 0; i < rows.size(); ++i) {
      auto cells = split(rows[i], ',');
      if (cells.size() != rows.size()) throw std::invalid_argument("catalog: matrix must be square");
      for (size_t j = 0; j < cells.size(); ++j) b.cm.m[i][j] = parse_label(cells[j]);
    }
    b.cm.validate();
    return b.cm;
  }
  if (colon == std::string::npos && spec.size() >= 2 && std::isupper(static_cast<unsigned char>(spec[0])))
    return finite_type(spec[0], parse_rank(spec.substr(1)));
  throw std::invalid_argument("catalog: unrecognized group '" + spec + "'");
}

}  // namespace cox
