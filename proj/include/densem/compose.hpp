#pragma once

// Sentence meaning by contraction: word operators are laid side by side and
// every link of a pregroup reduction contracts its two wires (row with row,
// column with column). Residual wires form the sentence operator.

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "densem/density.hpp"
#include "densem/errors.hpp"
#include "densem/pregroup.hpp"
#include "densem/specmat.hpp"

namespace densem {

struct Space {
  std::vector<std::string> labels;

  std::size_t dim() const noexcept { return labels.size(); }

  std::size_t index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == label) return i;
    throw LookupError("unknown basis label '" + label + "'");
  }

  // Dense coordinates from (label, coefficient) pairs; repeated labels add.
  std::vector<double> vector(std::span<const std::pair<std::string, double>> coeffs) const {
    std::vector<double> v(dim(), 0.0);
    for (const auto& [label, c] : coeffs) v[index_of(label)] += c;
    return v;
  }
  std::vector<double> vector(std::initializer_list<std::pair<std::string, double>> coeffs) const {
    return vector(std::span<const std::pair<std::string, double>>(coeffs.begin(), coeffs.size()));
  }

  std::vector<double> basis(const std::string& label) const {
    std::vector<double> v(dim(), 0.0);
    v[index_of(label)] = 1.0;
    return v;
  }

  bool operator==(const Space&) const = default;
};

// Basic-type atom -> meaning space. Adjoints share the space of their base.
class SpaceRegistry {
 public:
  void add(const std::string& atom, std::vector<std::string> labels) {
    if (atom.empty()) throw std::invalid_argument("space name must be nonempty");
    if (labels.empty()) throw ShapeError("space '" + atom + "' must have dimension >= 1");
    for (std::size_t i = 0; i < labels.size(); ++i)
      for (std::size_t j = i + 1; j < labels.size(); ++j)
        if (labels[i] == labels[j]) {
          throw ShapeError("space '" + atom + "' repeats basis label '" + labels[i] + "'");
        }
    spaces_[atom] = Space{std::move(labels)};
  }

  // Labels default to "0", "1", ...
  void add(const std::string& atom, std::size_t dim) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < dim; ++i) labels.push_back(std::to_string(i));
    add(atom, std::move(labels));
  }

  bool contains(const std::string& atom) const { return spaces_.count(atom) != 0; }

  const Space& space(const std::string& atom) const {
    const auto it = spaces_.find(atom);
    if (it == spaces_.end()) throw LookupError("no meaning space registered for type '" + atom + "'");
    return it->second;
  }

  std::size_t dim(const std::string& atom) const { return space(atom).dim(); }

  std::vector<std::size_t> wire_dims(const PregroupType& t) const {
    std::vector<std::size_t> dims;
    for (const auto& st : t.simples) dims.push_back(dim(st.base));
    return dims;
  }

  const std::map<std::string, Space>& spaces() const noexcept { return spaces_; }

  bool operator==(const SpaceRegistry&) const = default;

 private:
  std::map<std::string, Space> spaces_;
};

inline std::size_t product(std::span<const std::size_t> dims) {
  std::size_t p = 1;
  for (std::size_t d : dims) p *= d;
  return p;
}

// A typed operator over the product of its wires' spaces, wires in type
// order, row-major. The operator is symmetric but need not be PSD (some
// hand-built verbs are indefinite); density() checks positivity.
struct WordMeaning {
  std::string word;
  PregroupType type;
  SymMatrix op;
  std::vector<std::size_t> wire_dims;

  DensityMatrix density(const Tolerance& tol = {}) const { return DensityMatrix(op, tol); }

  bool operator==(const WordMeaning&) const = default;
};

inline WordMeaning make_word(std::string word, PregroupType type, SymMatrix op, const SpaceRegistry& reg) {
  std::vector<std::size_t> dims = reg.wire_dims(type);
  if (op.dim() != product(dims)) {
    throw ShapeError("word '" + word + "' of type '" + format_type(type) + "' needs a " +
                     std::to_string(product(dims)) + "-dimensional operator, got " +
                     std::to_string(op.dim()));
  }
  return WordMeaning{std::move(word), std::move(type), std::move(op), std::move(dims)};
}

inline WordMeaning make_word(std::string word, PregroupType type, const DensityMatrix& dm,
                             const SpaceRegistry& reg) {
  return make_word(std::move(word), std::move(type), dm.op(), reg);
}

// Doubled cup on a wire of dimension d: |Omega><Omega| with Omega = sum_i |i>|i>.
inline SymMatrix eta_operator(std::size_t d) {
  std::vector<double> omega(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) omega[i * d + i] = 1.0;
  return outer(omega);
}

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw ShapeError(what);
}

// Mixed-radix counter; returns false after wrapping around.
inline bool advance(std::vector<std::size_t>& digits, std::span<const std::size_t> radix) {
  for (std::size_t k = digits.size(); k-- > 0;) {
    if (++digits[k] < radix[k]) return true;
    digits[k] = 0;
  }
  return false;
}

}  // namespace detail

// Contract the word operators along `diagram`. The summation order is fixed,
// so results are reproducible bit for bit. No normalization is applied.
inline WordMeaning compose(std::span<const WordMeaning> words, const ReductionDiagram& diagram) {
  std::vector<PregroupType> types;
  for (const auto& w : words) types.push_back(w.type);
  detail::require(concat(types) == diagram.source,
                  "word types '" + format_type(concat(types)) + "' do not match the diagram source '" +
                      format_type(diagram.source) + "'");
  detail::require(is_valid_diagram(diagram), "reduction diagram is not valid");

  // Per global wire: owning word, stride inside that word's index, dimension.
  struct Wire {
    std::size_t word, stride, dim;
  };
  std::vector<Wire> wires;
  for (std::size_t w = 0; w < words.size(); ++w) {
    const auto& wm = words[w];
    detail::require(wm.wire_dims.size() == wm.type.size(),
                    "word '" + wm.word + "' has " + std::to_string(wm.wire_dims.size()) +
                        " wire dimensions for a type of length " + std::to_string(wm.type.size()));
    detail::require(wm.op.dim() == product(wm.wire_dims),
                    "word '" + wm.word + "' operator dimension does not match its wires");
    std::size_t stride = wm.op.dim();
    for (std::size_t k = 0; k < wm.wire_dims.size(); ++k) {
      stride /= wm.wire_dims[k];
      wires.push_back({w, stride, wm.wire_dims[k]});
    }
  }

  // Slots: residuals first (output index digits), then one per link.
  const std::size_t n_res = diagram.residuals.size();
  const std::size_t n_links = diagram.links.size();
  std::vector<std::size_t> slot_of(wires.size());
  std::vector<std::size_t> slot_dim(n_res + n_links);
  for (std::size_t k = 0; k < n_res; ++k) {
    slot_of[diagram.residuals[k]] = k;
    slot_dim[k] = wires[diagram.residuals[k]].dim;
  }
  for (std::size_t l = 0; l < n_links; ++l) {
    const auto [p, q] = diagram.links[l];
    detail::require(wires[p].dim == wires[q].dim,
                    "link (" + std::to_string(p) + ", " + std::to_string(q) + ") joins wires of dimension " +
                        std::to_string(wires[p].dim) + " and " + std::to_string(wires[q].dim));
    slot_of[p] = slot_of[q] = n_res + l;
    slot_dim[n_res + l] = wires[p].dim;
  }

  std::vector<std::size_t> out_dims(slot_dim.begin(), slot_dim.begin() + n_res);
  const std::size_t out_n = product(out_dims);
  std::vector<std::size_t> link_radix;  // row values then column values
  for (std::size_t l = 0; l < n_links; ++l) link_radix.push_back(slot_dim[n_res + l]);
  for (std::size_t l = 0; l < n_links; ++l) link_radix.push_back(slot_dim[n_res + l]);

  Matrix out(out_n, out_n);
  std::vector<std::size_t> row_val(n_res + n_links), col_val(n_res + n_links);
  std::vector<std::size_t> res_row(n_res, 0);
  for (std::size_t r = 0; r < out_n; ++r) {
    std::vector<std::size_t> res_col(n_res, 0);
    for (std::size_t c = 0; c < out_n; ++c) {
      std::copy(res_row.begin(), res_row.end(), row_val.begin());
      std::copy(res_col.begin(), res_col.end(), col_val.begin());
      double acc = 0.0;
      std::vector<std::size_t> link_val(2 * n_links, 0);
      do {
        for (std::size_t l = 0; l < n_links; ++l) {
          row_val[n_res + l] = link_val[l];
          col_val[n_res + l] = link_val[n_links + l];
        }
        double term = 1.0;
        std::vector<std::size_t> wr(words.size(), 0), wc(words.size(), 0);
        for (std::size_t p = 0; p < wires.size(); ++p) {
          wr[wires[p].word] += row_val[slot_of[p]] * wires[p].stride;
          wc[wires[p].word] += col_val[slot_of[p]] * wires[p].stride;
        }
        for (std::size_t w = 0; w < words.size() && term != 0.0; ++w) term *= words[w].op(wr[w], wc[w]);
        acc += term;
      } while (detail::advance(link_val, link_radix));
      out(r, c) = acc;
      detail::advance(res_col, out_dims);
    }
    detail::advance(res_row, out_dims);
  }

  std::string label;
  for (const auto& w : words) label += (label.empty() ? "" : " ") + w.word;
  return WordMeaning{label, diagram.target, SymMatrix(std::move(out)), out_dims};
}

inline WordMeaning compose(std::initializer_list<WordMeaning> words, const ReductionDiagram& diagram) {
  return compose(std::span<const WordMeaning>(words.begin(), words.size()), diagram);
}

// Subject-verb-object closed form:
//   S[j, j'] = sum subj[i, i'] verb[(i, j, k), (i', j', k')] obj[k, k'].
inline WordMeaning compose_transitive(const WordMeaning& subj, const WordMeaning& verb, const WordMeaning& obj) {
  detail::require(subj.type.size() == 1 && subj.type[0].z == 0,
                  "subject must have a single plain type, got '" + format_type(subj.type) + "'");
  detail::require(obj.type.size() == 1 && obj.type[0].z == 0,
                  "object must have a single plain type, got '" + format_type(obj.type) + "'");
  detail::require(verb.type.size() == 3 && verb.type[0] == SimpleType{subj.type[0].base, 1} &&
                      verb.type[1].z == 0 && verb.type[2] == SimpleType{obj.type[0].base, -1},
                  "verb type '" + format_type(verb.type) + "' is not transitive for '" +
                      format_type(subj.type) + "' and '" + format_type(obj.type) + "'");
  detail::require(verb.wire_dims.size() == 3 && verb.op.dim() == product(verb.wire_dims),
                  "verb wire dimensions do not match its operator");
  const std::size_t ds = verb.wire_dims[0], dsent = verb.wire_dims[1], dobj = verb.wire_dims[2];
  detail::require(subj.op.dim() == ds && obj.op.dim() == dobj,
                  "subject/object dimensions do not match the verb's wires");

  const auto vidx = [&](std::size_t i, std::size_t j, std::size_t k) { return (i * dsent + j) * dobj + k; };
  Matrix out(dsent, dsent);
  for (std::size_t j = 0; j < dsent; ++j)
    for (std::size_t jp = 0; jp < dsent; ++jp) {
      double acc = 0.0;
      for (std::size_t i = 0; i < ds; ++i)
        for (std::size_t ip = 0; ip < ds; ++ip) {
          const double s = subj.op(i, ip);
          if (s == 0.0) continue;
          for (std::size_t k = 0; k < dobj; ++k)
            for (std::size_t kp = 0; kp < dobj; ++kp)
              acc += s * verb.op(vidx(i, j, k), vidx(ip, jp, kp)) * obj.op(k, kp);
        }
      out(j, jp) = acc;
    }
  return WordMeaning{subj.word + " " + verb.word + " " + obj.word, PregroupType{{verb.type[1]}},
                     SymMatrix(std::move(out)), {dsent}};
}

// Which table axis indexes the subject.
enum class VerbAxes { kRowsAreSubjects, kRowsAreObjects };

// pure(flatten(table)) entrywise-times (subj ⊗ obj); flatten is subject
// index major, object index minor.
inline DensityMatrix compose_kronecker(const Matrix& table, const DensityMatrix& subj, const DensityMatrix& obj,
                                       VerbAxes axes = VerbAxes::kRowsAreSubjects) {
  const Matrix t = axes == VerbAxes::kRowsAreSubjects ? table : table.transpose();
  detail::require(t.rows() == subj.dim() && t.cols() == obj.dim(),
                  "verb table " + t.shape_string() + " does not fit subject dimension " +
                      std::to_string(subj.dim()) + " and object dimension " + std::to_string(obj.dim()));
  std::vector<double> flat(t.data().begin(), t.data().end());
  return DensityMatrix(hadamard(outer(flat), kron(subj.op(), obj.op())));
}

}  // namespace densem
