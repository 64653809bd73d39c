#pragma once

// Random operators and brute-force oracles shared by the unit tests and the
// acceptance binary. The oracles deliberately avoid the library's own
// algorithms: plain loops over every index assignment and every matching.

#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "densem/densem.hpp"

namespace densem::testing {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kSeed = 20161019;

inline std::vector<double> gaussian_vector(Rng& rng, std::size_t d) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> v(d);
  for (auto& x : v) x = g(rng);
  return v;
}

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Sum of `rank` random outer products.
inline SymMatrix random_psd_op(Rng& rng, std::size_t d, std::size_t rank) {
  SymMatrix m(d);
  for (std::size_t k = 0; k < rank; ++k) m += outer(gaussian_vector(rng, d));
  return m;
}

inline DensityMatrix random_psd(Rng& rng, std::size_t d, std::size_t rank) {
  return DensityMatrix(random_psd_op(rng, d, rank));
}

inline DensityMatrix random_full_rank(Rng& rng, std::size_t d) {
  return DensityMatrix(random_psd_op(rng, d, d) + 0.05 * SymMatrix::identity(d));
}

inline SymMatrix random_symmetric(Rng& rng, std::size_t d) {
  Matrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto row = gaussian_vector(rng, d);
    for (std::size_t j = 0; j < d; ++j) m(i, j) = row[j];
  }
  return SymMatrix(m + m.transpose());
}

// P A P for the support projector P of `sigma`: supported inside supp(sigma).
inline DensityMatrix psd_inside(Rng& rng, const DensityMatrix& sigma) {
  const Matrix p = support_projector(sigma.op()).matrix();
  const Matrix a = random_psd_op(rng, sigma.dim(), sigma.dim()).matrix();
  return DensityMatrix(SymMatrix(p * a * p));
}

// sigma = p rho + rho' with p > 0: a witness of rho preceding sigma.
inline DensityMatrix dominating(Rng& rng, const DensityMatrix& rho) {
  std::uniform_real_distribution<double> u(0.1, 2.0);
  return DensityMatrix(u(rng) * rho.op() + random_psd_op(rng, rho.dim(), uniform(rng, 0, rho.dim())));
}

// ---------------------------------------------------------------- contraction

// Naive contraction: enumerate every (row, col) index tuple over all wires of
// the concatenated words, keep those that agree across each link, and
// accumulate the product of word entries into the residual output entry.
inline SymMatrix naive_contract(std::span<const WordMeaning> words, const ReductionDiagram& d) {
  std::vector<std::size_t> dims, owner;
  for (std::size_t w = 0; w < words.size(); ++w)
    for (std::size_t k : words[w].wire_dims) {
      dims.push_back(k);
      owner.push_back(w);
    }
  const std::size_t m = dims.size();
  std::size_t out_n = 1;
  for (std::size_t r : d.residuals) out_n *= dims[r];
  Matrix out(out_n, out_n);

  std::vector<std::size_t> row(m, 0), col(m, 0);
  const auto next = [&](std::vector<std::size_t>& v) {
    for (std::size_t k = m; k-- > 0;) {
      if (++v[k] < dims[k]) return true;
      v[k] = 0;
    }
    return false;
  };
  const auto agrees = [&](const std::vector<std::size_t>& v) {
    for (auto [i, j] : d.links)
      if (v[i] != v[j]) return false;
    return true;
  };
  const auto word_index = [&](const std::vector<std::size_t>& v, std::size_t w) {
    std::size_t idx = 0;
    for (std::size_t p = 0; p < m; ++p)
      if (owner[p] == w) idx = idx * dims[p] + v[p];
    return idx;
  };
  const auto out_index = [&](const std::vector<std::size_t>& v) {
    std::size_t idx = 0;
    for (std::size_t r : d.residuals) idx = idx * dims[r] + v[r];
    return idx;
  };
  do {
    if (!agrees(row)) continue;
    std::fill(col.begin(), col.end(), 0);
    do {
      if (!agrees(col)) continue;
      double term = 1.0;
      for (std::size_t w = 0; w < words.size(); ++w) term *= words[w].op(word_index(row, w), word_index(col, w));
      out(out_index(row), out_index(col)) += term;
    } while (next(col));
  } while (next(row));
  return SymMatrix(out);
}

// ------------------------------------------------------------------- pregroup

// Every planar partial matching of `src` whose links contract and whose
// unmatched positions are not enclosed by a link, as (links, residuals).
inline std::vector<std::pair<std::vector<std::pair<std::size_t, std::size_t>>, std::vector<std::size_t>>>
all_planar_reductions(const PregroupType& src) {
  using Links = std::vector<std::pair<std::size_t, std::size_t>>;
  std::vector<std::pair<Links, std::vector<std::size_t>>> found;
  const std::size_t m = src.size();
  std::vector<int> partner(m, -1);
  std::function<void(std::size_t)> go = [&](std::size_t p) {
    if (p == m) {
      Links links;
      std::vector<std::size_t> residuals;
      for (std::size_t i = 0; i < m; ++i) {
        if (partner[i] < 0) residuals.push_back(i);
        else if (static_cast<std::size_t>(partner[i]) > i) links.emplace_back(i, partner[i]);
      }
      for (auto [i, j] : links) {
        for (auto [k, l] : links)
          if (i < k && k < j && j < l) return;
        for (std::size_t r : residuals)
          if (i < r && r < j) return;
      }
      found.emplace_back(links, residuals);
      return;
    }
    if (partner[p] >= 0) return go(p + 1);
    go(p + 1);  // p stays unmatched
    for (std::size_t q = p + 1; q < m; ++q) {
      if (partner[q] < 0 && contracts(src[p], src[q])) {
        partner[p] = static_cast<int>(q);
        partner[q] = static_cast<int>(p);
        go(p + 1);
        partner[p] = partner[q] = -1;
      }
    }
  };
  go(0);
  return found;
}

// Least link list (lexicographic) among brute-force reductions to `target`.
inline std::optional<std::vector<std::pair<std::size_t, std::size_t>>> brute_force_reduce(
    const PregroupType& src, const PregroupType& target) {
  std::optional<std::vector<std::pair<std::size_t, std::size_t>>> best;
  for (const auto& [links, residuals] : all_planar_reductions(src)) {
    if (residuals.size() != target.size()) continue;
    bool spells = true;
    for (std::size_t k = 0; k < residuals.size(); ++k) spells = spells && src[residuals[k]] == target[k];
    if (spells && (!best || links < *best)) best = links;
  }
  return best;
}

inline SimpleType random_simple(Rng& rng) {
  static const char* atoms[] = {"n", "s"};
  return SimpleType{atoms[uniform(rng, 0, 1)], static_cast<int>(uniform(rng, 0, 2)) - 1};
}

// All targets of length <= 2 over {n, s} x {-1, 0, 1}.
inline std::vector<PregroupType> small_targets() {
  std::vector<SimpleType> simples;
  for (const char* a : {"n", "s"})
    for (int z = -1; z <= 1; ++z) simples.push_back({a, z});
  std::vector<PregroupType> out{PregroupType{}};
  for (const auto& a : simples) out.push_back(PregroupType{{a}});
  for (const auto& a : simples)
    for (const auto& b : simples) out.push_back(PregroupType{{a, b}});
  return out;
}

// Split a flat sequence into random word types.
inline std::vector<PregroupType> random_words(Rng& rng, const PregroupType& flat) {
  std::vector<PregroupType> words;
  for (std::size_t i = 0; i < flat.size();) {
    const std::size_t len = uniform(rng, 1, std::min<std::size_t>(3, flat.size() - i));
    words.push_back(PregroupType{{flat.simples.begin() + i, flat.simples.begin() + i + len}});
    i += len;
  }
  return words;
}

// A random grammatical instance: word meanings (random symmetric operators,
// or random PSD ones when `psd`) and a reduction diagram to n or s, with the
// total dimension of all wires at most `max_total`.
struct Instance {
  std::vector<WordMeaning> words;
  ReductionDiagram diagram;
};

inline Instance random_instance(Rng& rng, bool psd, std::size_t max_total = 64) {
  for (;;) {
    SpaceRegistry reg;
    reg.add("n", uniform(rng, 1, 3));
    reg.add("s", uniform(rng, 1, 3));
    PregroupType flat;
    const std::size_t len = uniform(rng, 2, 7);
    for (std::size_t k = 0; k < len; ++k) flat.simples.push_back(random_simple(rng));
    const auto types = random_words(rng, flat);
    const PregroupType target = parse_type(uniform(rng, 0, 1) ? "s" : "n");
    const auto d = reduce(types, target);
    if (!d) continue;
    std::size_t total = 1;
    for (const auto& st : flat.simples) total *= reg.dim(st.base);
    if (total > max_total) continue;
    Instance inst{{}, *d};
    for (std::size_t w = 0; w < types.size(); ++w) {
      const std::size_t dim = product(reg.wire_dims(types[w]));
      SymMatrix op = psd ? random_psd_op(rng, dim, uniform(rng, 1, dim)) : random_symmetric(rng, dim);
      inst.words.push_back(make_word("w" + std::to_string(w), types[w], std::move(op), reg));
    }
    return inst;
  }
}

}  // namespace densem::testing
