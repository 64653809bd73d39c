#pragma once

// Word operators estimated from co-occurrence data, verb tables from
// subject/object pairs, and the JSON lexicon file that holds them.
//
// Lexicon document:
//   {
//     "spaces": { "<atom>": { "dim": 3, "labels": ["pub", "pitcher", "tonic"] } },
//     "words": {
//       "<word>": { "type": "n", "kind": "pure",     "data": {"pub": 6, "pitcher": 5} },
//       "<word>": { "type": "n", "kind": "subsets",  "data": [{"features": ["pub"], "count": 6}] },
//       "<word>": { "type": "n", "kind": "matrix",   "data": [[1, 0], [0, 0]] },
//       "<word>": { "type": "n", "kind": "mixture",  "data": [{"word": "lager", "weight": 0.5}] }
//     },
//     "verbs": { "<verb>": { "subject_space": "n", "object_space": "n", "rows": [[4, 5], [6, 3]] } }
//   }
// "pure" data is either a flat array over the word's full space or an object
// keyed by basis labels (comma-joined per wire for multi-wire types).

#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "densem/compose.hpp"
#include "densem/density.hpp"
#include "densem/errors.hpp"
#include "densem/pregroup.hpp"
#include "densem/specmat.hpp"

namespace densem {

struct SubsetRecord {
  std::string word;
  std::vector<std::string> features;
  double count = 0.0;
};

struct PairRecord {
  std::string verb;
  std::vector<double> subj;
  std::vector<double> obj;
  double count = 0.0;
};

struct VerbTable {
  std::string subject_space;
  std::string object_space;
  Matrix rows;  // subject basis x object basis

  bool operator==(const VerbTable&) const = default;
};

// sum over records of count * |psi_B><psi_B|, psi_B = sum_{b in B} |b>.
inline DensityMatrix build_from_subsets(const Space& space, std::span<const SubsetRecord> records) {
  if (records.empty()) throw DegenerateInputError("no subset records");
  SymMatrix acc(space.dim());
  for (const auto& rec : records) {
    if (rec.word != records.front().word) {
      throw ShapeError("subset records mix words '" + records.front().word + "' and '" + rec.word + "'");
    }
    if (rec.features.empty()) throw DegenerateInputError("subset record for '" + rec.word + "' has no features");
    if (!(rec.count > 0.0)) throw std::invalid_argument("subset record counts must be positive");
    std::vector<double> psi(space.dim(), 0.0);
    for (const auto& f : rec.features) psi[space.index_of(f)] = 1.0;
    acc += rec.count * outer(psi);
  }
  return DensityMatrix(std::move(acc));
}

// sum over records of count * subj ⊗ obj, as a d_subj x d_obj table.
inline Matrix build_verb_from_pairs(std::span<const PairRecord> records) {
  if (records.empty()) throw DegenerateInputError("no pair records");
  const std::size_t ds = records.front().subj.size(), dobj = records.front().obj.size();
  Matrix table(ds, dobj);
  for (const auto& rec : records) {
    if (rec.verb != records.front().verb) {
      throw ShapeError("pair records mix verbs '" + records.front().verb + "' and '" + rec.verb + "'");
    }
    if (rec.subj.size() != ds || rec.obj.size() != dobj) throw ShapeError("pair record vector sizes differ");
    if (!(rec.count > 0.0)) throw std::invalid_argument("pair record counts must be positive");
    for (std::size_t i = 0; i < ds; ++i)
      for (std::size_t j = 0; j < dobj; ++j) table(i, j) += rec.count * rec.subj[i] * rec.obj[j];
  }
  return table;
}

enum class EntryKind { kPure, kSubsets, kMatrix, kMixture };

inline std::string to_string(EntryKind k) {
  switch (k) {
    case EntryKind::kPure: return "pure";
    case EntryKind::kSubsets: return "subsets";
    case EntryKind::kMatrix: return "matrix";
    case EntryKind::kMixture: return "mixture";
  }
  return "?";
}

struct LexiconEntry {
  WordMeaning meaning;
  EntryKind kind = EntryKind::kMatrix;
  nlohmann::json data;  // as written to the lexicon file
};

class Lexicon {
 public:
  SpaceRegistry& registry() noexcept { return registry_; }
  const SpaceRegistry& registry() const noexcept { return registry_; }

  void add_space(const std::string& atom, std::vector<std::string> labels) {
    registry_.add(atom, std::move(labels));
  }

  void add_pure(const std::string& word, const std::string& type, std::vector<double> coords) {
    const PregroupType t = parse_type(type);
    const DensityMatrix dm = pure(coords);
    put(word, LexiconEntry{make_word(word, t, dm, registry_), EntryKind::kPure, nlohmann::json(coords)});
  }

  void add_subsets(const std::string& word, const std::string& type, std::vector<SubsetRecord> records) {
    const PregroupType t = parse_type(type);
    if (t.size() != 1) throw ShapeError("subset records need a single-wire type, got '" + type + "'");
    for (auto& r : records) r.word = word;
    const DensityMatrix dm = build_from_subsets(registry_.space(t[0].base), records);
    nlohmann::json data = nlohmann::json::array();
    for (const auto& r : records) data.push_back({{"features", r.features}, {"count", r.count}});
    put(word, LexiconEntry{make_word(word, t, dm, registry_), EntryKind::kSubsets, std::move(data)});
  }

  // Any symmetric operator; positivity is checked when a measure needs it.
  void add_matrix(const std::string& word, const std::string& type, const SymMatrix& op) {
    const PregroupType t = parse_type(type);
    put(word, LexiconEntry{make_word(word, t, op, registry_), EntryKind::kMatrix,
                           nlohmann::json(op.matrix().to_rows())});
  }

  // Weighted mixture of normalized children; all children share one type.
  void add_mixture(const std::string& word, const std::vector<std::pair<std::string, double>>& children) {
    const DensityMatrix dm = taxonomy_mix(children);
    const PregroupType t = this->word(children.front().first).type;
    nlohmann::json data = nlohmann::json::array();
    for (const auto& [child, w] : children) data.push_back({{"word", child}, {"weight", w}});
    put(word, LexiconEntry{make_word(word, t, dm, registry_), EntryKind::kMixture, std::move(data)});
  }

  void add_verb(const std::string& verb, VerbTable table) {
    const Space& s = registry_.space(table.subject_space);
    const Space& o = registry_.space(table.object_space);
    if (table.rows.rows() != s.dim() || table.rows.cols() != o.dim()) {
      throw ShapeError("verb '" + verb + "' table is " + table.rows.shape_string() + ", spaces need " +
                       std::to_string(s.dim()) + "x" + std::to_string(o.dim()));
    }
    verbs_[verb] = std::move(table);
  }

  DensityMatrix taxonomy_mix(const std::vector<std::pair<std::string, double>>& children) const {
    if (children.empty()) throw DegenerateInputError("taxonomy mixture without children");
    std::vector<double> weights;
    std::vector<DensityMatrix> parts;
    const PregroupType& t = word(children.front().first).type;
    for (const auto& [child, w] : children) {
      const WordMeaning& m = word(child);
      if (m.type != t) {
        throw ShapeError("taxonomy child '" + child + "' has type '" + format_type(m.type) + "', expected '" +
                         format_type(t) + "'");
      }
      weights.push_back(w);
      parts.push_back(normalize(m.density()));
    }
    return mixture(weights, parts);
  }

  bool contains(const std::string& word) const { return words_.count(word) != 0; }

  const WordMeaning& word(const std::string& name) const { return entry(name).meaning; }

  const LexiconEntry& entry(const std::string& name) const {
    const auto it = words_.find(name);
    if (it == words_.end()) throw LookupError("word '" + name + "' is not in the lexicon");
    return it->second;
  }

  const VerbTable& verb(const std::string& name) const {
    const auto it = verbs_.find(name);
    if (it == verbs_.end()) throw LookupError("verb '" + name + "' has no table in the lexicon");
    return it->second;
  }

  const std::map<std::string, LexiconEntry>& words() const noexcept { return words_; }
  const std::map<std::string, VerbTable>& verbs() const noexcept { return verbs_; }

 private:
  void put(const std::string& word, LexiconEntry e) {
    if (word.empty()) throw std::invalid_argument("word names must be nonempty");
    words_[word] = std::move(e);
  }

  SpaceRegistry registry_;
  std::map<std::string, LexiconEntry> words_;
  std::map<std::string, VerbTable> verbs_;
};

// Standalone form of Lexicon::taxonomy_mix.
inline DensityMatrix taxonomy_mix(const std::vector<std::pair<std::string, double>>& children, const Lexicon& lex) {
  return lex.taxonomy_mix(children);
}

inline nlohmann::json to_json(const Lexicon& lex) {
  nlohmann::json doc;
  doc["spaces"] = nlohmann::json::object();
  for (const auto& [atom, space] : lex.registry().spaces()) {
    doc["spaces"][atom] = {{"dim", space.dim()}, {"labels", space.labels}};
  }
  doc["words"] = nlohmann::json::object();
  for (const auto& [name, e] : lex.words()) {
    doc["words"][name] = {{"type", format_type(e.meaning.type)}, {"kind", to_string(e.kind)}, {"data", e.data}};
  }
  doc["verbs"] = nlohmann::json::object();
  for (const auto& [name, v] : lex.verbs()) {
    doc["verbs"][name] = {
        {"subject_space", v.subject_space}, {"object_space", v.object_space}, {"rows", v.rows.to_rows()}};
  }
  return doc;
}

namespace detail {

using nlohmann::json;

inline const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "." + key, "missing");
  return *it;
}

inline double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw SchemaError(path, "expected a number");
  return v.get<double>();
}

inline std::string text(const json& v, const std::string& path) {
  if (!v.is_string()) throw SchemaError(path, "expected a string");
  return v.get<std::string>();
}

inline Matrix rows_of(const json& v, const std::string& path) {
  if (!v.is_array()) throw SchemaError(path, "expected an array of rows");
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string rp = path + "[" + std::to_string(i) + "]";
    if (!v[i].is_array()) throw SchemaError(rp, "expected an array");
    std::vector<double> row;
    for (std::size_t j = 0; j < v[i].size(); ++j) row.push_back(number(v[i][j], rp + "[" + std::to_string(j) + "]"));
    if (!rows.empty() && row.size() != rows.front().size()) throw SchemaError(rp, "ragged row");
    rows.push_back(std::move(row));
  }
  return Matrix::from_rows(rows);
}

inline std::vector<std::string> split_labels(const std::string& key) {
  std::vector<std::string> parts;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, ',')) parts.push_back(part);
  return parts;
}

// Flat coordinates of a pure word over its (possibly multi-wire) space.
inline std::vector<double> pure_coords(const json& data, const PregroupType& type, const SpaceRegistry& reg,
                                       const std::string& path) {
  const std::vector<std::size_t> dims = reg.wire_dims(type);
  const std::size_t n = product(dims);
  std::vector<double> coords(n, 0.0);
  if (data.is_array()) {
    if (data.size() != n) {
      throw SchemaError(path, "expected " + std::to_string(n) + " coordinates, got " + std::to_string(data.size()));
    }
    for (std::size_t i = 0; i < n; ++i) coords[i] = number(data[i], path + "[" + std::to_string(i) + "]");
    return coords;
  }
  if (!data.is_object()) throw SchemaError(path, "expected an array or an object of label coefficients");
  for (const auto& [key, value] : data.items()) {
    const std::string kp = path + "." + key;
    const auto labels = split_labels(key);
    if (labels.size() != type.size()) {
      throw SchemaError(kp, "key needs " + std::to_string(type.size()) + " comma-separated labels");
    }
    std::size_t flat = 0;
    for (std::size_t w = 0; w < labels.size(); ++w) {
      try {
        flat = flat * dims[w] + reg.space(type[w].base).index_of(labels[w]);
      } catch (const LookupError& e) {
        throw SchemaError(kp, e.what());
      }
    }
    coords[flat] += number(value, kp);
  }
  return coords;
}

}  // namespace detail

// Validating loader; every violation names its path in the document.
inline Lexicon lexicon_from_json(const nlohmann::json& doc) {
  using detail::field;
  using detail::number;
  using detail::text;
  using nlohmann::json;

  if (!doc.is_object()) throw SchemaError("$", "lexicon must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "spaces" && key != "words" && key != "verbs") throw SchemaError(key, "unknown top-level key");
  }
  Lexicon lex;

  const json& spaces = field(doc, "spaces", "$");
  if (!spaces.is_object()) throw SchemaError("spaces", "expected an object");
  for (const auto& [atom, sp] : spaces.items()) {
    const std::string p = "spaces." + atom;
    const double dim = number(field(sp, "dim", p), p + ".dim");
    std::vector<std::string> labels;
    if (sp.contains("labels")) {
      const json& ls = sp["labels"];
      if (!ls.is_array()) throw SchemaError(p + ".labels", "expected an array");
      for (std::size_t i = 0; i < ls.size(); ++i) labels.push_back(text(ls[i], p + ".labels[" + std::to_string(i) + "]"));
    } else {
      for (int i = 0; i < static_cast<int>(dim); ++i) labels.push_back(std::to_string(i));
    }
    if (dim < 1 || dim != static_cast<double>(labels.size())) {
      throw SchemaError(p + ".dim", "must be a positive integer equal to the number of labels");
    }
    try {
      lex.add_space(atom, std::move(labels));
    } catch (const Error& e) {
      throw SchemaError(p, e.what());
    }
  }

  const json empty = json::object();
  const json& words = doc.contains("words") ? doc["words"] : empty;
  if (!words.is_object()) throw SchemaError("words", "expected an object");

  // Mixtures may refer to words defined later in the document.
  std::set<std::string> visiting;
  std::function<void(const std::string&)> define = [&](const std::string& name) {
    if (lex.contains(name)) return;
    const std::string p = "words." + name;
    if (!words.contains(name)) throw SchemaError(p, "referenced but not defined");
    if (!visiting.insert(name).second) throw SchemaError(p, "cyclic mixture definition");
    const json& w = words[name];
    const std::string kind = text(field(w, "kind", p), p + ".kind");
    const json& data = field(w, "data", p);
    const std::string dp = p + ".data";
    try {
      if (kind == "mixture") {
        if (!data.is_array() || data.empty()) throw SchemaError(dp, "expected a nonempty array");
        std::vector<std::pair<std::string, double>> children;
        for (std::size_t i = 0; i < data.size(); ++i) {
          const std::string cp = dp + "[" + std::to_string(i) + "]";
          const std::string child = text(field(data[i], "word", cp), cp + ".word");
          const double weight = number(field(data[i], "weight", cp), cp + ".weight");
          if (!(weight > 0.0)) throw SchemaError(cp + ".weight", "must be positive");
          define(child);
          children.emplace_back(child, weight);
        }
        lex.add_mixture(name, children);
        if (w.contains("type") && parse_type(text(w["type"], p + ".type")) != lex.word(name).type) {
          throw SchemaError(p + ".type", "does not match the children's type");
        }
      } else {
        const std::string type_text = text(field(w, "type", p), p + ".type");
        PregroupType type;
        try {
          type = parse_type(type_text);
        } catch (const ParseError& e) {
          throw SchemaError(p + ".type", e.what());
        }
        if (kind == "pure") {
          lex.add_pure(name, type_text, detail::pure_coords(data, type, lex.registry(), dp));
        } else if (kind == "subsets") {
          if (!data.is_array() || data.empty()) throw SchemaError(dp, "expected a nonempty array");
          if (type.size() != 1) throw SchemaError(p + ".type", "subset words need a single-wire type");
          const Space& space = lex.registry().space(type[0].base);
          std::vector<SubsetRecord> records;
          for (std::size_t i = 0; i < data.size(); ++i) {
            const std::string rp = dp + "[" + std::to_string(i) + "]";
            SubsetRecord rec{name, {}, number(field(data[i], "count", rp), rp + ".count")};
            if (!(rec.count > 0.0)) throw SchemaError(rp + ".count", "must be positive");
            const json& fs = field(data[i], "features", rp);
            if (!fs.is_array() || fs.empty()) throw SchemaError(rp + ".features", "expected a nonempty array");
            for (std::size_t k = 0; k < fs.size(); ++k) {
              const std::string fp = rp + ".features[" + std::to_string(k) + "]";
              const std::string label = text(fs[k], fp);
              try {
                space.index_of(label);
              } catch (const LookupError& e) {
                throw SchemaError(fp, e.what());
              }
              rec.features.push_back(label);
            }
            records.push_back(std::move(rec));
          }
          lex.add_subsets(name, type_text, std::move(records));
        } else if (kind == "matrix") {
          const Matrix m = detail::rows_of(data, dp);
          if (!m.square()) throw SchemaError(dp, "matrix must be square");
          if (max_abs_diff(m, m.transpose()) > 1e-9 * std::max(1.0, m.max_abs())) {
            throw SchemaError(dp, "matrix must be symmetric");
          }
          lex.add_matrix(name, type_text, SymMatrix(m));
        } else {
          throw SchemaError(p + ".kind", "must be one of pure, subsets, matrix, mixture");
        }
      }
    } catch (const SchemaError&) {
      throw;
    } catch (const Error& e) {
      throw SchemaError(p, e.what());
    } catch (const std::invalid_argument& e) {
      throw SchemaError(p, e.what());
    }
    visiting.erase(name);
  };
  for (const auto& [name, _] : words.items()) define(name);

  const json& verbs = doc.contains("verbs") ? doc["verbs"] : empty;
  if (!verbs.is_object()) throw SchemaError("verbs", "expected an object");
  for (const auto& [name, v] : verbs.items()) {
    const std::string p = "verbs." + name;
    VerbTable table{text(field(v, "subject_space", p), p + ".subject_space"),
                    text(field(v, "object_space", p), p + ".object_space"),
                    detail::rows_of(field(v, "rows", p), p + ".rows")};
    try {
      lex.add_verb(name, std::move(table));
    } catch (const Error& e) {
      throw SchemaError(p, e.what());
    }
  }
  return lex;
}

inline void save(const Lexicon& lex, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << to_json(lex).dump(2) << '\n';
  if (!out) throw Error("failed writing '" + path + "'");
}

inline Lexicon load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LookupError("cannot open lexicon '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("$", std::string("not valid JSON: ") + e.what());
  }
  return lexicon_from_json(doc);
}

}  // namespace densem
