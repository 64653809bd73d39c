// densem: command-line front end for density-matrix word and sentence meanings.
//
//   densem sim LEXICON WORD_A WORD_B          fidelity, representativeness, verdict
//   densem entail ...                         alias of sim
//   densem reduce TYPE... --target s          pregroup reduction diagram
//   densem compose LEXICON WORD... [--against WORD...] [--kronecker VERB]
//   densem repro [CASE | --all]               reproduce the worked examples
//   densem lexicon validate LEXICON
//
// Exit codes: 0 success, 1 domain failure, 2 usage or parse error.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "densem/densem.hpp"

namespace {

using densem::DensityMatrix;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kDomainFailure = 1;
constexpr int kUsage = 2;

struct Globals {
  bool json = false;
  double tol = 1e-9;
  std::string log_base = "2";

  densem::MeasureOptions measures() const {
    return {densem::Tolerance{tol, tol}, log_base == "e" ? densem::LogBase::kE : densem::LogBase::kTwo};
  }
};

std::string fixed4(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

std::string diagram_text(const densem::ReductionDiagram& d) {
  std::string s = "links: [";
  for (std::size_t k = 0; k < d.links.size(); ++k) {
    s += (k ? ",[" : "[") + std::to_string(d.links[k].first) + "," + std::to_string(d.links[k].second) + "]";
  }
  s += "]; residuals: [";
  for (std::size_t k = 0; k < d.residuals.size(); ++k) s += (k ? "," : "") + std::to_string(d.residuals[k]);
  return s + "]";
}

json diagram_json(const densem::ReductionDiagram& d) {
  json links = json::array();
  for (auto [i, j] : d.links) links.push_back({i, j});
  return {{"links", links}, {"residuals", d.residuals}, {"target", densem::format_type(d.target)}};
}

void print_matrix(const densem::SymMatrix& m) {
  std::size_t width = 0;
  for (double x : m.matrix().data()) width = std::max(width, fixed4(x).size());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    std::cout << "  [";
    for (std::size_t j = 0; j < m.dim(); ++j) {
      const std::string cell = fixed4(m(i, j));
      std::cout << ' ' << std::string(width - cell.size(), ' ') << cell;
    }
    std::cout << " ]\n";
  }
}

struct Comparison {
  double fidelity, forward, backward;
  densem::Relation relation;
};

Comparison compare(const DensityMatrix& a, const DensityMatrix& b, double theta, const Globals& g) {
  const auto v = densem::classify(a, b, theta, g.measures());
  return {densem::fidelity(a, b, g.measures().tol), v.forward, v.backward, v.relation};
}

json comparison_json(const Comparison& c) {
  return {{"fidelity", c.fidelity},
          {"forward", c.forward},
          {"backward", c.backward},
          {"relation", std::string(densem::to_string(c.relation))}};
}

void print_comparison(const std::string& a, const std::string& b, const Comparison& c) {
  std::cout << "F(" << a << ", " << b << ") = " << fixed4(c.fidelity) << '\n'
            << "R(" << a << ", " << b << ") = " << fixed4(c.forward) << '\n'
            << "R(" << b << ", " << a << ") = " << fixed4(c.backward) << '\n'
            << "verdict: " << densem::to_string(c.relation) << '\n';
}

int cmd_sim(const Globals& g, const std::string& path, const std::string& a, const std::string& b, double theta) {
  const densem::Lexicon lex = densem::load(path);
  const auto c = compare(lex.word(a).density(), lex.word(b).density(), theta, g);
  if (g.json) {
    json out = comparison_json(c);
    out["a"] = a;
    out["b"] = b;
    out["log_base"] = g.log_base;
    std::cout << out.dump(2) << '\n';
  } else {
    print_comparison(a, b, c);
  }
  return kOk;
}

int cmd_reduce(const Globals& g, const std::vector<std::string>& types, const std::string& target) {
  std::vector<densem::PregroupType> seq;
  for (const auto& t : types) seq.push_back(densem::parse_type(t));
  const auto d = densem::reduce(seq, densem::parse_type(target));
  if (g.json) {
    std::cout << (d ? diagram_json(*d) : json{{"reduction", nullptr}}).dump(2) << '\n';
  } else {
    std::cout << (d ? diagram_text(*d) : "NO REDUCTION") << '\n';
  }
  return d ? kOk : kDomainFailure;
}

struct Sentence {
  DensityMatrix dm;
  std::optional<densem::ReductionDiagram> diagram;
  std::string type;
};

Sentence build_sentence(const densem::Lexicon& lex, const std::vector<std::string>& words, const std::string& target,
                        const std::string& kron_verb, densem::VerbAxes axes) {
  if (!kron_verb.empty()) {
    if (words.size() != 2) throw CLI::ValidationError("--kronecker takes exactly a subject and an object word");
    const auto& table = lex.verb(kron_verb);
    return {densem::compose_kronecker(table.rows, lex.word(words[0]).density(), lex.word(words[1]).density(), axes),
            std::nullopt, "(kronecker " + kron_verb + ")"};
  }
  std::vector<densem::WordMeaning> meanings;
  std::vector<densem::PregroupType> types;
  for (const auto& w : words) {
    meanings.push_back(lex.word(w));
    types.push_back(meanings.back().type);
  }
  const auto d = densem::reduce(types, densem::parse_type(target));
  if (!d) {
    throw densem::LookupError("NO REDUCTION: '" + densem::format_type(densem::concat(types)) + "' does not reduce to '" +
                              target + "'");
  }
  const densem::WordMeaning m = densem::compose(meanings, *d);
  return {m.density(), *d, densem::format_type(m.type)};
}

int cmd_compose(const Globals& g, const std::string& path, const std::vector<std::string>& words,
                const std::vector<std::string>& against, const std::string& target, const std::string& kron_verb,
                const std::string& verb_rows, double theta) {
  const densem::Lexicon lex = densem::load(path);
  const auto axes = verb_rows == "object" ? densem::VerbAxes::kRowsAreObjects : densem::VerbAxes::kRowsAreSubjects;
  const Sentence s = build_sentence(lex, words, target, kron_verb, axes);
  std::optional<Sentence> other;
  if (!against.empty()) other = build_sentence(lex, against, target, kron_verb, axes);

  const auto join = [](const std::vector<std::string>& ws) {
    std::string out;
    for (const auto& w : ws) out += (out.empty() ? "" : " ") + w;
    return out;
  };
  if (g.json) {
    json out{{"words", words}, {"type", s.type}, {"matrix", s.dm.op().matrix().to_rows()}, {"trace", s.dm.trace()}};
    if (s.diagram) out["diagram"] = diagram_json(*s.diagram);
    if (other) {
      out["against"] = {{"words", against}, {"matrix", other->dm.op().matrix().to_rows()}};
      out["comparison"] = comparison_json(compare(s.dm, other->dm, theta, g));
    }
    std::cout << out.dump(2) << '\n';
    return kOk;
  }
  std::cout << join(words) << " : " << s.type << '\n';
  if (s.diagram) std::cout << diagram_text(*s.diagram) << '\n';
  print_matrix(s.dm.op());
  std::cout << "trace = " << fixed4(s.dm.trace()) << '\n';
  if (other) {
    std::cout << '\n' << join(against) << '\n';
    print_matrix(other->dm.op());
    std::cout << '\n';
    print_comparison(join(words), join(against), compare(s.dm, other->dm, theta, g));
  }
  return kOk;
}

json repro_json(const densem::ReproResult& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"achieved", c.achieved},
                      {"expected", c.expected},
                      {"tol", c.tol},
                      {"required", c.required},
                      {"pass", c.pass()}});
  }
  return {{"id", r.id}, {"title", r.title}, {"pass", r.passed()}, {"checks", checks}, {"notes", r.notes}};
}

int cmd_repro(const Globals& g, const std::string& id, bool all) {
  std::vector<std::string> ids;
  if (all || id.empty()) ids = densem::repro_case_ids();
  else ids.push_back(id);
  std::vector<densem::ReproResult> results;
  for (const auto& i : ids) results.push_back(densem::run_repro_case(i));

  bool ok = true;
  json out = json::array();
  for (const auto& r : results) {
    ok = ok && r.passed();
    if (g.json) {
      out.push_back(repro_json(r));
      continue;
    }
    std::cout << (r.passed() ? "PASS  " : "FAIL  ") << r.id << "  (" << r.title << ")\n";
    for (const auto& c : r.checks) {
      const char* mark = c.pass() ? "ok  " : (c.required ? "FAIL" : "miss");
      char tol[32];
      std::snprintf(tol, sizeof tol, "%.0e", c.tol);
      std::cout << "    [" << mark << "] " << c.name << " = " << fixed4(c.achieved) << "  (expected "
                << fixed4(c.expected) << " +- " << (c.tol == 0 ? std::string("0") : std::string(tol))
                << (c.required ? "" : ", informational") << ")\n";
    }
    for (const auto& n : r.notes) std::cout << "    note: " << n << '\n';
  }
  if (g.json) std::cout << out.dump(2) << '\n';
  return ok ? kOk : kDomainFailure;
}

int cmd_validate(const Globals& g, const std::string& path) {
  const densem::Lexicon lex = densem::load(path);
  std::size_t non_psd = 0;
  for (const auto& [name, e] : lex.words()) {
    if (!densem::is_psd(e.meaning.op)) ++non_psd;
  }
  if (g.json) {
    std::cout << json{{"valid", true},
                      {"spaces", lex.registry().spaces().size()},
                      {"words", lex.words().size()},
                      {"verbs", lex.verbs().size()},
                      {"non_psd_words", non_psd}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << path << ": ok (" << lex.registry().spaces().size() << " spaces, " << lex.words().size()
              << " words, " << lex.verbs().size() << " verbs";
    if (non_psd) std::cout << ", " << non_psd << " indefinite operators";
    std::cout << ")\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"densem: density-matrix word meanings, entailment and sentence composition"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_flag("--json", g.json, "Machine-readable output, full precision");
  app.add_option("--tol", g.tol, "Rank cut and match tolerance")->check(CLI::Range(1e-300, 0.999999));
  app.add_option("--log-base", g.log_base, "Logarithm base for entropies")->check(CLI::IsMember({"2", "e"}));

  std::string lex_path, word_a, word_b, target = "s", kron_verb, verb_rows = "subject", case_id;
  std::vector<std::string> types, words, against;
  double theta = 0.0;
  bool all = false;

  std::function<int()> run;

  for (const char* name : {"sim", "entail"}) {
    auto* sim = app.add_subcommand(name, std::string(name) == "sim" ? "Compare two words" : "Alias of sim");
    sim->add_option("lexicon", lex_path, "Lexicon JSON file")->required();
    sim->add_option("word_a", word_a)->required();
    sim->add_option("word_b", word_b)->required();
    sim->add_option("--theta", theta, "Representativeness threshold")->check(CLI::Range(0.0, 0.999999));
    sim->callback([&] { run = [&] { return cmd_sim(g, lex_path, word_a, word_b, theta); }; });
  }

  auto* red = app.add_subcommand("reduce", "Reduce a sequence of pregroup types");
  red->add_option("types", types, "One pregroup type per word, e.g. 'n^r s n^l'")->required();
  red->add_option("--target", target, "Target type")->capture_default_str();
  red->callback([&] { run = [&] { return cmd_reduce(g, types, target); }; });

  auto* comp = app.add_subcommand("compose", "Compose a sentence from lexicon words");
  comp->add_option("lexicon", lex_path, "Lexicon JSON file")->required();
  comp->add_option("words", words, "Words of the sentence")->required();
  comp->add_option("--against", against, "Second sentence to compare with");
  comp->add_option("--target", target, "Sentence type")->capture_default_str();
  comp->add_option("--kronecker", kron_verb, "Compose subject and object through this verb table");
  comp->add_option("--verb-rows", verb_rows, "Which axis the verb table rows index")
      ->check(CLI::IsMember({"subject", "object"}))
      ->capture_default_str();
  comp->add_option("--theta", theta, "Representativeness threshold")->check(CLI::Range(0.0, 0.999999));
  comp->callback([&] { run = [&] { return cmd_compose(g, lex_path, words, against, target, kron_verb, verb_rows, theta); }; });

  auto* rep = app.add_subcommand("repro", "Reproduce the worked examples");
  rep->add_option("case", case_id, "Case id")->check(CLI::IsMember(densem::repro_case_ids()));
  rep->add_flag("--all", all, "Run every case");
  rep->callback([&] { run = [&] { return cmd_repro(g, case_id, all); }; });

  auto* lexcmd = app.add_subcommand("lexicon", "Lexicon file utilities");
  lexcmd->require_subcommand(1);
  auto* val = lexcmd->add_subcommand("validate", "Check a lexicon file against the schema");
  val->add_option("lexicon", lex_path, "Lexicon JSON file")->required();
  val->callback([&] { run = [&] { return cmd_validate(g, lex_path); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    return run();
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const densem::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const densem::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomainFailure;
  }
}
