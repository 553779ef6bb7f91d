#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

// A visitation configuration: event i (1-based in time, 0-based in storage)
// pins agent b[i] to vertex rho[i] of the n-gon.  rho is a permutation of
// {0, ..., n-1}; the other agent's position at that event stays free.
//
// Rotating vertex labels or mirroring the polygon yields an equivalent
// instance, so canonical configurations fix rho[0] = 0 and keep the
// lexicographically smaller of a reflection pair.

namespace wgs {

struct Configuration {
  int n = 0;
  std::vector<int> rho;      // visitation order, a permutation of 0..n-1
  std::vector<uint8_t> b;    // visiting agent per event, entries in {0, 1}

  bool operator==(const Configuration&) const = default;
};

// Lexicographic (rho, b) order; used for deterministic tie-breaking.
inline bool lex_less(const Configuration& a, const Configuration& c) {
  if (a.rho != c.rho) return a.rho < c.rho;
  return a.b < c.b;
}

inline void validate(const Configuration& c) {
  if (c.n < 3) throw std::invalid_argument("configuration needs n >= 3");
  if (static_cast<int>(c.rho.size()) != c.n ||
      static_cast<int>(c.b.size()) != c.n)
    throw std::invalid_argument("configuration arrays must have length n");
  std::vector<char> seen(c.n, 0);
  for (int v : c.rho) {
    if (v < 0 || v >= c.n || seen[v])
      throw std::invalid_argument("rho is not a permutation of 0..n-1");
    seen[v] = 1;
  }
  for (uint8_t a : c.b)
    if (a > 1) throw std::invalid_argument("b entries must be 0 or 1");
}

// Relabel vertices so the first visited one is vertex 0.
inline Configuration rotate_to_zero(const Configuration& c) {
  Configuration out = c;
  const int shift = c.rho.at(0);
  for (int& v : out.rho) v = (v - shift + c.n) % c.n;
  return out;
}

// Mirror the polygon: vertex i -> (n - i) mod n.  The visiting agents are
// untouched; only the geometry flips.
inline Configuration reflect(const Configuration& c) {
  Configuration out = c;
  for (int& v : out.rho) v = (c.n - v) % c.n;
  return out;
}

// Swap the two agents' roles.  Only an equivalence when the cost treats the
// agents symmetrically (MaxNorm).
inline Configuration swap_agents(const Configuration& c) {
  Configuration out = c;
  for (uint8_t& a : out.b) a = static_cast<uint8_t>(1 - a);
  return out;
}

// Canonical representative under rotation + reflection (and optionally agent
// swap).  Reflection never fixes a permutation with rho[0] = 0 for n >= 3,
// so comparing rho alone decides the pair.
inline Configuration canonical(const Configuration& c,
                               bool agent_symmetric = false) {
  Configuration r = rotate_to_zero(c);
  Configuration m = rotate_to_zero(reflect(r));
  Configuration best = (m.rho < r.rho) ? m : r;
  if (agent_symmetric) {
    Configuration s = swap_agents(best);
    if (lex_less(s, best)) best = s;
  }
  return best;
}

// Text form "r0,r1,...;b0,b1,...".  Vertex indexing is auto-detected on
// parse: a 0 entry means 0-indexed, an entry equal to n means 1-indexed,
// anything else is rejected as ambiguous.
inline std::string format_config(const Configuration& c,
                                 bool one_indexed = false) {
  std::ostringstream os;
  for (int i = 0; i < c.n; ++i)
    os << (i ? "," : "") << c.rho[i] + (one_indexed ? 1 : 0);
  os << ';';
  for (int i = 0; i < c.n; ++i) os << (i ? "," : "") << int(c.b[i]);
  return os.str();
}

namespace detail {
inline std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("bad integer: " + tok);
    out.push_back(v);
  }
  return out;
}
}  // namespace detail

inline Configuration parse_config(const std::string& text, int n) {
  const auto semi = text.find(';');
  if (semi == std::string::npos)
    throw std::invalid_argument("configuration needs 'rho;b' with a ';'");
  std::vector<int> rho = detail::parse_int_list(text.substr(0, semi));
  std::vector<int> bs = detail::parse_int_list(text.substr(semi + 1));
  if (static_cast<int>(rho.size()) != n || static_cast<int>(bs.size()) != n)
    throw std::invalid_argument("configuration arrays must have length n");

  const bool has_zero = std::find(rho.begin(), rho.end(), 0) != rho.end();
  const bool has_n = std::find(rho.begin(), rho.end(), n) != rho.end();
  if (has_zero && has_n)
    throw std::invalid_argument("rho mixes 0-indexed and 1-indexed entries");
  if (!has_zero && !has_n)
    throw std::invalid_argument(
        "cannot tell if rho is 0- or 1-indexed (contains neither 0 nor n)");
  if (has_n)
    for (int& v : rho) --v;

  Configuration c;
  c.n = n;
  c.rho = std::move(rho);
  c.b.reserve(n);
  for (int v : bs) {
    if (v != 0 && v != 1)
      throw std::invalid_argument("b entries must be 0 or 1");
    c.b.push_back(static_cast<uint8_t>(v));
  }
  validate(c);
  return c;
}

}  // namespace wgs
