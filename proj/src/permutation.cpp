#include "orbiteq/permutation.hpp"

#include <cctype>
#include <numeric>
#include <stdexcept>

namespace orbiteq {

Permutation identity_permutation(std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), Vertex{0});
  return p;
}

bool is_identity(const Permutation& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

bool is_bijection(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  for (Vertex v : p) {
    if (v >= p.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw std::invalid_argument("compose: degree mismatch");
  Permutation r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
  return r;
}

Permutation inverse(const Permutation& p) {
  Permutation r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<Vertex>(i);
  return r;
}

Permutation parse_cycles(std::string_view text, std::size_t degree) {
  Permutation p = identity_permutation(degree);
  std::vector<bool> used(degree, false);
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
      ++i;
  };
  skip_space();
  while (i < text.size()) {
    if (text[i] != '(') throw std::invalid_argument("cycle notation: expected '(' in \"" + std::string(text) + "\"");
    ++i;
    std::vector<Vertex> cycle;
    for (;;) {
      skip_space();
      if (i >= text.size()) throw std::invalid_argument("cycle notation: unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw std::invalid_argument("cycle notation: unexpected character '" + std::string(1, text[i]) + "'");
      std::size_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<std::size_t>(text[i] - '0');
        if (v > degree) break;
        ++i;
      }
      if (v >= degree)
        throw std::invalid_argument("cycle notation: point " + std::to_string(v) +
                                    " out of range for degree " + std::to_string(degree));
      if (used[v]) throw std::invalid_argument("cycle notation: point " + std::to_string(v) + " repeated");
      used[v] = true;
      cycle.push_back(static_cast<Vertex>(v));
    }
    for (std::size_t c = 0; c < cycle.size(); ++c) p[cycle[c]] = cycle[(c + 1) % cycle.size()];
    skip_space();
  }
  return p;
}

std::vector<Permutation> parse_generators(std::string_view text, std::size_t degree) {
  std::vector<Permutation> gens;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view piece = text.substr(start, end - start);
    bool blank = true;
    for (char c : piece)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (!blank) gens.push_back(parse_cycles(piece, degree));
    start = end + 1;
  }
  return gens;
}

std::string to_cycle_string(const Permutation& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) continue;
    out += '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out += ' ';
      out += std::to_string(j);
      first = false;
      j = p[j];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

}  // namespace orbiteq
