#pragma once

// Pregroup types, their textual form ("n^r s n^l"), and reduction of a
// concatenated type sequence to a target by planar contractions.

#include <cctype>
#include <compare>
#include <cstdlib>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "densem/errors.hpp"

namespace densem {

// A basic type with adjoint order z: z = -1 is the left adjoint a^l,
// z = +1 the right adjoint a^r, |z| > 1 iterated adjoints.
struct SimpleType {
  std::string base;
  int z = 0;

  auto operator<=>(const SimpleType&) const = default;
};

struct PregroupType {
  std::vector<SimpleType> simples;  // empty = monoid unit

  std::size_t size() const noexcept { return simples.size(); }
  bool empty() const noexcept { return simples.empty(); }
  const SimpleType& operator[](std::size_t i) const { return simples[i]; }

  auto operator<=>(const PregroupType&) const = default;
};

// a^(z) a^(z+1) -> 1, covering both a^l a <= 1 and a a^r <= 1.
inline bool contracts(const SimpleType& left, const SimpleType& right) {
  return left.base == right.base && right.z == left.z + 1;
}

inline PregroupType parse_type(std::string_view text) {
  PregroupType out;
  std::size_t i = 0;
  const auto is_atom_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  const auto is_atom_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (!is_atom_start(text[i])) {
      throw ParseError(text[i] == '^' ? "adjoint suffix without an atom"
                                      : std::string("unexpected character '") + text[i] + "'",
                       i);
    }
    SimpleType st;
    const std::size_t start = i;
    while (i < text.size() && is_atom_char(text[i])) ++i;
    st.base = std::string(text.substr(start, i - start));
    while (i < text.size() && text[i] == '^') {
      if (i + 1 >= text.size()) throw ParseError("dangling '^'", i);
      const char suffix = text[i + 1];
      if (suffix == 'l') --st.z;
      else if (suffix == 'r') ++st.z;
      else throw ParseError(std::string("adjoint suffix must be ^l or ^r, got ^") + suffix, i + 1);
      i += 2;
    }
    if (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) {
      throw ParseError(std::string("unexpected character '") + text[i] + "'", i);
    }
    out.simples.push_back(std::move(st));
  }
  return out;
}

inline std::string format_type(const SimpleType& st) {
  std::string s = st.base;
  for (int k = 0; k < std::abs(st.z); ++k) s += st.z < 0 ? "^l" : "^r";
  return s;
}

inline std::string format_type(const PregroupType& t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ' ';
    s += format_type(t[i]);
  }
  return s;
}

inline PregroupType concat(std::span<const PregroupType> seq) {
  PregroupType out;
  for (const auto& t : seq) out.simples.insert(out.simples.end(), t.simples.begin(), t.simples.end());
  return out;
}

// Links (i, j), i < j, over the concatenated sequence; residual positions
// carry the target type through to the output.
struct ReductionDiagram {
  PregroupType source;
  PregroupType target;
  std::vector<std::pair<std::size_t, std::size_t>> links;  // sorted by left end
  std::vector<std::size_t> residuals;                      // ascending

  bool operator==(const ReductionDiagram&) const = default;
};

// Checks every structural invariant: links pair contractible types, do not
// cross, and leave no residual underneath; each position is used exactly once;
// residuals spell the target.
inline bool is_valid_diagram(const ReductionDiagram& d) {
  const std::size_t m = d.source.size();
  std::vector<int> used(m, 0);
  for (auto [i, j] : d.links) {
    if (!(i < j && j < m)) return false;
    if (!contracts(d.source[i], d.source[j])) return false;
    ++used[i];
    ++used[j];
  }
  for (std::size_t r : d.residuals) {
    if (r >= m) return false;
    ++used[r];
  }
  for (int u : used)
    if (u != 1) return false;
  for (std::size_t a = 0; a < d.links.size(); ++a)
    for (std::size_t b = 0; b < d.links.size(); ++b) {
      const auto [i, j] = d.links[a];
      const auto [k, l] = d.links[b];
      if (i < k && k < j && j < l) return false;
    }
  for (std::size_t r : d.residuals)
    for (auto [i, j] : d.links)
      if (i < r && r < j) return false;
  if (d.residuals.size() != d.target.size()) return false;
  for (std::size_t k = 0; k < d.residuals.size(); ++k) {
    if (k && d.residuals[k - 1] >= d.residuals[k]) return false;
    if (d.source[d.residuals[k]] != d.target[k]) return false;
  }
  return true;
}

namespace detail {

// Interval tables over the concatenated sequence, O(m^3) to fill.
class Reducer {
 public:
  Reducer(const PregroupType& source, const PregroupType& target)
      : src_(source), tgt_(target), m_(source.size()), t_(target.size()) {
    vanish_.assign((m_ + 1) * (m_ + 1), 0);
    for (std::size_t a = 0; a <= m_; ++a) vanish_[index(a, a)] = 1;
    for (std::size_t len = 2; len <= m_; len += 2) {
      for (std::size_t a = 0; a + len <= m_; ++a) {
        const std::size_t b = a + len;
        for (std::size_t j = a + 1; j < b; j += 2) {
          if (contracts(src_[a], src_[j]) && vanishes(a + 1, j) && vanishes(j + 1, b)) {
            vanish_[index(a, b)] = 1;
            break;
          }
        }
      }
    }
    // feasible_[q][t]: suffix [q, m) reduces to target suffix [t, T).
    feasible_.assign((m_ + 1) * (t_ + 1), 0);
    feasible_[fidx(m_, t_)] = 1;
    for (std::size_t q = m_; q-- > 0;) {
      for (std::size_t t = 0; t <= t_; ++t) {
        bool ok = t < t_ && src_[q] == tgt_[t] && feasible(q + 1, t + 1);
        for (std::size_t j = q + 1; !ok && j < m_; j += 2) {
          ok = contracts(src_[q], src_[j]) && vanishes(q + 1, j) && feasible(j + 1, t);
        }
        feasible_[fidx(q, t)] = ok;
      }
    }
  }

  bool vanishes(std::size_t a, std::size_t b) const { return vanish_[index(a, b)] != 0; }
  bool feasible(std::size_t q, std::size_t t) const { return feasible_[fidx(q, t)] != 0; }

  // Lexicographically least link list: choose the first link (smallest left
  // end, then smallest right end) that admits a completion, then recurse into
  // its interior and the remainder independently.
  void build(ReductionDiagram& d) const {
    std::size_t q = 0, t = 0;
    while (q < m_) {
      if (m_ - q == t_ - t) {
        for (; q < m_; ++q, ++t) d.residuals.push_back(q);
        break;
      }
      bool placed = false;
      for (std::size_t p = q; !placed && p < m_; ++p) {
        const std::size_t lead = p - q;
        if (lead > 0) {
          if (t + lead > t_ || src_[p - 1] != tgt_[t + lead - 1]) break;
        }
        for (std::size_t j = p + 1; j < m_; j += 2) {
          if (contracts(src_[p], src_[j]) && vanishes(p + 1, j) && feasible(j + 1, t + lead)) {
            for (std::size_t r = q; r < p; ++r) d.residuals.push_back(r);
            d.links.emplace_back(p, j);
            build_vanishing(p + 1, j, d);
            t += lead;
            q = j + 1;
            placed = true;
            break;
          }
        }
      }
      if (!placed) return;  // unreachable when feasible(0, 0)
    }
  }

 private:
  void build_vanishing(std::size_t a, std::size_t b, ReductionDiagram& d) const {
    while (a < b) {
      std::size_t j = a + 1;
      while (!(contracts(src_[a], src_[j]) && vanishes(a + 1, j) && vanishes(j + 1, b))) j += 2;
      d.links.emplace_back(a, j);
      build_vanishing(a + 1, j, d);
      a = j + 1;
    }
  }

  std::size_t index(std::size_t a, std::size_t b) const { return a * (m_ + 1) + b; }
  std::size_t fidx(std::size_t q, std::size_t t) const { return q * (t_ + 1) + t; }

  const PregroupType& src_;
  const PregroupType& tgt_;
  std::size_t m_, t_;
  std::vector<char> vanish_;
  std::vector<char> feasible_;
};

}  // namespace detail

// Contraction-only reduction of the concatenated word types to `target`, or
// nullopt. Among valid diagrams the lexicographically least link list wins.
inline std::optional<ReductionDiagram> reduce(std::span<const PregroupType> seq, const PregroupType& target) {
  ReductionDiagram d;
  d.source = concat(seq);
  d.target = target;
  if (d.source.size() < target.size() || (d.source.size() - target.size()) % 2 != 0) return std::nullopt;
  const detail::Reducer reducer(d.source, d.target);
  if (!reducer.feasible(0, 0)) return std::nullopt;
  reducer.build(d);
  return d;
}

inline std::optional<ReductionDiagram> reduce(std::initializer_list<PregroupType> seq,
                                              const PregroupType& target) {
  return reduce(std::span<const PregroupType>(seq.begin(), seq.size()), target);
}

inline bool is_grammatical(std::span<const PregroupType> seq, const PregroupType& sentence = parse_type("s")) {
  return reduce(seq, sentence).has_value();
}

}  // namespace densem
