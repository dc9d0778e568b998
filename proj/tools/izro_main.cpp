// Batch front-end. Exit codes: 0 success / property holds, 1 property
// fails (counterexample found), 2 usage or input error, 3 budget
// exhausted.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "izro/algebra.hpp"
#include "izro/congruence.hpp"
#include "izro/proof.hpp"
#include "izro/search.hpp"
#include "izro/term.hpp"
#include "izro/variety.hpp"

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

izro::FiniteAlgebra load_algebra(const std::string& arg) {
  if (std::filesystem::exists(arg)) return izro::load_algebra_json(arg);
  return izro::builtin_algebra(arg);
}

std::vector<izro::FiniteAlgebra> load_algebras(
    const std::vector<std::string>& args) {
  std::vector<izro::FiniteAlgebra> out;
  for (const auto& a : args) out.push_back(load_algebra(a));
  return out;
}

json counterexample_json(const izro::CheckResult& r) {
  json j;
  j["holds"] = r.holds;
  if (r.counterexample) {
    json cex;
    cex["assignment"] = r.counterexample->assignment;
    cex["lhs"] = r.counterexample->lhs_value;
    cex["rhs"] = r.counterexample->rhs_value;
    j["counterexample"] = cex;
  }
  return j;
}

std::string counterexample_text(const izro::CheckResult& r) {
  if (r.holds) return "holds";
  std::string out = "fails at";
  for (auto& [v, e] : r.counterexample->assignment)
    out += " " + v + "=" + std::to_string(e);
  out += ": lhs=" + std::to_string(r.counterexample->lhs_value) +
         " rhs=" + std::to_string(r.counterexample->rhs_value);
  return out;
}

// Label lists: comma separated, each token a label, a numeric range
// like L3.3.20-63, or "all".
std::vector<std::string> expand_labels(const std::string& spec) {
  const auto& catalog = izro::builtin_catalog();
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t comma = spec.find(',', start);
    if (comma == std::string::npos) comma = spec.size();
    std::string token = spec.substr(start, comma - start);
    start = comma + 1;
    if (token.empty()) continue;
    if (token == "all") {
      for (const auto& l : catalog.labels()) out.push_back(l);
      continue;
    }
    auto dash = token.find('-');
    if (dash != std::string::npos) {
      std::string left = token.substr(0, dash);
      std::string right = token.substr(dash + 1);
      auto digits = left.find_last_not_of("0123456789");
      std::string prefix = left.substr(0, digits + 1);
      int lo = std::stoi(left.substr(digits + 1));
      int hi = std::stoi(right);
      for (int i = lo; i <= hi; ++i)
        out.push_back(prefix + std::to_string(i));
      continue;
    }
    out.push_back(token);
  }
  return out;
}

int cmd_check(const std::string& algebra_arg, const std::string& id_arg,
              const std::string& format) {
  izro::FiniteAlgebra A = load_algebra(algebra_arg);
  izro::CheckResult r;
  std::string what;
  if (id_arg.find('=') != std::string::npos ||
      id_arg.find("≈") != std::string::npos ||
      id_arg.find("|-") != std::string::npos) {
    izro::ConditionalIdentity ci = izro::parse_identity(id_arg);
    r = ci.is_conditional() ? izro::check_conditional(A, ci)
                            : izro::check_identity(A, ci.conclusion);
    what = ci.str();
  } else {
    r = izro::check_label(A, id_arg);
    what = id_arg;
  }
  if (format == "json") {
    json j = counterexample_json(r);
    j["algebra"] = A.name();
    j["identity"] = what;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << A.name() << " | " << what << ": " << counterexample_text(r)
              << "\n";
  }
  return r.holds ? kOk : kFail;
}

int cmd_enumerate(int n, bool i20, bool simple_only, long long budget,
                  int threads, const std::string& format) {
  izro::SearchConfig cfg;
  cfg.n = n;
  if (i20) cfg.extra_identities.push_back("I20");
  cfg.simple_only = simple_only;
  if (budget > 0) cfg.budget = budget;
  cfg.threads = threads;
  izro::ModelCorpus corpus = izro::enumerate(cfg);
  if (format == "json") {
    std::cout << corpus.to_jsonl();
  } else {
    std::cout << corpus.models.size() << " model(s) of size " << n
              << (corpus.exhaustive ? "" : " (INCOMPLETE: budget exhausted)")
              << "\n";
    for (const auto& e : corpus.models) {
      std::cout << e.algebra.name() << ":";
      for (const auto& row : e.algebra.rows()) {
        std::cout << " [";
        for (std::size_t i = 0; i < row.size(); ++i)
          std::cout << (i ? "," : "") << row[i];
        std::cout << "]";
      }
      std::cout << (e.simple ? " simple" : "") << (e.in_i20 ? " i20" : "")
                << (e.in_dm ? " dm" : "") << "\n";
    }
  }
  return corpus.exhaustive ? kOk : kBudget;
}

int cmd_congruences(const std::string& algebra_arg,
                    const std::string& format) {
  izro::FiniteAlgebra A = load_algebra(algebra_arg);
  auto cons = izro::all_congruences(A);
  if (format == "json") {
    json j = json::array();
    for (const auto& p : cons) j.push_back(p.blocks());
    std::cout << j.dump() << "\n";
  } else {
    std::cout << cons.size() << " congruence(s) of " << A.name() << "\n";
    for (const auto& p : cons) std::cout << "  " << p.str() << "\n";
  }
  return kOk;
}

int cmd_simple(const std::string& algebra_arg, const std::string& format) {
  izro::FiniteAlgebra A = load_algebra(algebra_arg);
  bool simple = izro::is_simple(A);
  auto [si, monolith] = izro::is_subdirectly_irreducible(A);
  if (format == "json") {
    json j;
    j["algebra"] = A.name();
    j["simple"] = simple;
    j["subdirectly_irreducible"] = si;
    if (monolith) j["monolith"] = monolith->blocks();
    std::cout << j.dump() << "\n";
  } else {
    std::cout << A.name() << ": " << (simple ? "simple" : "not simple")
              << ", " << (si ? "subdirectly irreducible" : "not subdirectly irreducible");
    if (monolith) std::cout << ", monolith " << monolith->str();
    std::cout << "\n";
  }
  return simple ? kOk : kFail;
}

int cmd_relation(const std::string& algebra_arg, const std::string& kind_arg,
                 const std::string& format) {
  izro::FiniteAlgebra A = load_algebra(algebra_arg);
  izro::RelationKind kind = izro::relation_kind_from_string(kind_arg);
  izro::Relation rel = izro::derived_relation(A, kind);
  izro::CongruenceCheck cc = izro::is_congruence(A, rel);
  if (format == "json") {
    json j;
    j["algebra"] = A.name();
    j["kind"] = izro::to_string(kind);
    json pairs = json::array();
    for (auto& [a, b] : rel) pairs.push_back({a, b});
    j["pairs"] = pairs;
    j["equivalence"] = cc.is_equivalence;
    j["congruence"] = cc.is_congruence;
    if (!cc.diagnostic.empty()) j["diagnostic"] = cc.diagnostic;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << izro::to_string(kind) << " on " << A.name() << ": {";
    bool first = true;
    for (auto& [a, b] : rel) {
      std::cout << (first ? "" : ",") << "(" << a << "," << b << ")";
      first = false;
    }
    std::cout << "}\n  equivalence: " << (cc.is_equivalence ? "yes" : "no")
              << ", congruence: " << (cc.is_congruence ? "yes" : "no");
    if (!cc.diagnostic.empty()) std::cout << " (" << cc.diagnostic << ")";
    std::cout << "\n";
  }
  return cc.is_congruence ? kOk : kFail;
}

int cmd_free(const std::vector<std::string>& gen_args, int k,
             long long budget, const std::string& format) {
  auto K = load_algebras(gen_args);
  izro::FreeAlgebraResult f = izro::free_algebra(
      K, k, budget > 0 ? static_cast<std::size_t>(budget) : 1'000'000);
  if (format == "json") {
    json j;
    j["name"] = f.algebra.name();
    j["size"] = f.algebra.size();
    j["generators"] = f.generators;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << f.algebra.name() << ": " << f.algebra.size()
              << " element(s), generators at";
    for (int g : f.generators) std::cout << " " << g;
    std::cout << "\n";
  }
  return kOk;
}

int cmd_member(const std::string& a_arg,
               const std::vector<std::string>& in_args,
               const std::string& format) {
  izro::FiniteAlgebra A = load_algebra(a_arg);
  auto K = load_algebras(in_args);
  izro::MembershipVerdict v = izro::in_variety(A, K);
  std::string verdict =
      v.kind == izro::MembershipVerdict::Kind::Member      ? "member"
      : v.kind == izro::MembershipVerdict::Kind::NonMember ? "non-member"
                                                           : "unknown";
  if (format == "json") {
    json j;
    j["algebra"] = A.name();
    j["verdict"] = verdict;
    if (v.separating_identity)
      j["separating_identity"] = v.separating_identity->str();
    if (v.witness) {
      j["witness_factors"] = v.witness->factor_names;
      j["witness_size"] = v.witness->subuniverse.size();
    }
    std::cout << j.dump() << "\n";
  } else {
    std::cout << A.name() << ": " << verdict;
    if (v.separating_identity)
      std::cout << " (separated by " << v.separating_identity->str() << ")";
    if (v.witness)
      std::cout << " (image of a " << v.witness->subuniverse.size()
                << "-element subalgebra of a product of "
                << v.witness->factor_names.size() << " factor(s))";
    if (!v.note.empty()) std::cout << " [" << v.note << "]";
    std::cout << "\n";
  }
  switch (v.kind) {
    case izro::MembershipVerdict::Kind::Member:
      return kOk;
    case izro::MembershipVerdict::Kind::NonMember:
      return kFail;
    default:
      return kBudget;
  }
}

int cmd_lattice(const std::vector<std::string>& family_args,
                const std::string& format) {
  auto base = load_algebras(family_args);
  izro::VarietyPoset poset = izro::variety_poset(izro::all_subsets(base));
  if (format == "dot") {
    std::cout << poset.to_dot();
  } else if (format == "json") {
    std::cout << poset.to_json() << "\n";
  } else {
    std::cout << poset.nodes.size() << " node(s)\n";
    for (std::size_t i = 0; i < poset.nodes.size(); ++i) {
      std::cout << "  n" << i << " " << poset.nodes[i].label() << " covers";
      for (int c : poset.nodes[i].covers) std::cout << " n" << c;
      std::cout << "\n";
    }
    izro::LatticeShapeReport shape = izro::check_lattice_shape(poset);
    std::cout << "shape: " << (shape.ok ? "ok" : "MISMATCH") << " ("
              << shape.detail << ")\n";
  }
  return kOk;
}

int cmd_replay(const std::string& path, const std::string& format) {
  izro::ProofScript script = izro::load_script_file(path);
  izro::Verdict v = izro::replay(script);
  if (format == "json") {
    json j;
    j["proof"] = script.name;
    j["ok"] = v.ok;
    if (v.failing_step) j["failing_step"] = *v.failing_step;
    if (!v.diagnostic.empty()) j["diagnostic"] = v.diagnostic;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << script.name << ": " << (v.ok ? "ok" : "FAILED");
    if (!v.ok && v.failing_step)
      std::cout << " at step " << *v.failing_step;
    if (!v.diagnostic.empty()) std::cout << " (" << v.diagnostic << ")";
    std::cout << "\n";
  }
  return v.ok ? kOk : kFail;
}

int cmd_suite(const std::string& corpus_dir, const std::string& labels_spec,
              const std::string& format) {
  std::vector<izro::FiniteAlgebra> corpus;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(corpus_dir))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) corpus.push_back(izro::load_algebra_json(f));
  if (corpus.empty()) throw izro::Error("no .json algebras in " + corpus_dir);

  std::vector<std::string> labels = expand_labels(labels_spec);
  izro::SuiteReport report = izro::verify_suite(corpus, labels);
  if (format == "json") {
    json j;
    j["checks"] = report.cells.size();
    json fails = json::array();
    for (const auto* f : report.failures()) {
      json cell = counterexample_json(f->result);
      cell["algebra"] = f->algebra;
      cell["label"] = f->label;
      fails.push_back(cell);
    }
    j["failures"] = fails;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << report.summary() << "\n";
  }
  return report.all_pass() ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"implication zroupoid workbench"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "output format: text|json|dot")
      ->check(CLI::IsMember({"text", "json", "dot"}));

  std::string algebra_arg, id_arg, kind_arg, script_arg, corpus_arg,
      labels_arg = "all";
  std::vector<std::string> gen_args, in_args, family_args;
  int n = 2, k = 1, threads = 1;
  long long budget = 0;
  bool i20 = false, simple_only = false;

  auto* check = app.add_subcommand("check", "check an identity on an algebra");
  check->add_option("algebra", algebra_arg)->required();
  check->add_option("identity", id_arg, "catalog label or 'lhs = rhs'")
      ->required();

  auto* enumerate = app.add_subcommand("enumerate", "enumerate models");
  enumerate->add_option("--n", n, "cardinality")->required();
  enumerate->add_flag("--i20", i20, "impose x'' = x");
  enumerate->add_flag("--simple-only", simple_only, "keep simple models only");
  enumerate->add_option("--budget", budget, "search node limit");
  enumerate->add_option("--threads", threads, "worker threads");

  auto* congruences =
      app.add_subcommand("congruences", "list all congruences");
  congruences->add_option("algebra", algebra_arg)->required();

  auto* simple = app.add_subcommand("simple", "simplicity test");
  simple->add_option("algebra", algebra_arg)->required();

  auto* relation =
      app.add_subcommand("relation", "derived relation + congruence check");
  relation->add_option("algebra", algebra_arg)->required();
  relation->add_option("--kind", kind_arg, "r1|rpp|rp|rt")->required();

  auto* free_cmd = app.add_subcommand("free", "finitely generated free algebra");
  free_cmd->add_option("--gen", gen_args, "generating algebras")->required();
  free_cmd->add_option("--k", k, "generator count")->required();
  free_cmd->add_option("--budget", budget, "element budget");

  auto* member = app.add_subcommand("member", "variety membership");
  member->add_option("algebra", algebra_arg)->required();
  member->add_option("--in", in_args, "generating algebras")->required();

  auto* lattice = app.add_subcommand("lattice", "subvariety poset over all "
                                                "subsets of the family");
  lattice->add_option("--family", family_args, "base algebras")->required();

  auto* replay = app.add_subcommand("replay", "replay a proof script");
  replay->add_option("script", script_arg)->required();

  auto* suite = app.add_subcommand("suite", "identity suite over a corpus");
  suite->add_option("--corpus", corpus_arg, "directory of algebra .json")
      ->required();
  suite->add_option("--labels", labels_arg, "labels/ranges, e.g. L3.3.1-63");

  // Let --format appear after the subcommand too.
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*check) return cmd_check(algebra_arg, id_arg, format);
    if (*enumerate)
      return cmd_enumerate(n, i20, simple_only, budget, threads, format);
    if (*congruences) return cmd_congruences(algebra_arg, format);
    if (*simple) return cmd_simple(algebra_arg, format);
    if (*relation) return cmd_relation(algebra_arg, kind_arg, format);
    if (*free_cmd) return cmd_free(gen_args, k, budget, format);
    if (*member) return cmd_member(algebra_arg, in_args, format);
    if (*lattice) return cmd_lattice(family_args, format);
    if (*replay) return cmd_replay(script_arg, format);
    if (*suite) return cmd_suite(corpus_arg, labels_arg, format);
  } catch (const izro::BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const izro::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
