// Acceptance suite: each numbered criterion prints one PASS/FAIL line;
// the process exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "izro/congruence.hpp"
#include "izro/proof.hpp"
#include "izro/search.hpp"
#include "izro/variety.hpp"
#include "oracles.hpp"

using namespace izro;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(int number, const std::string& name, bool ok,
            double elapsed, const std::string& detail = {}) {
  std::printf("[%2d] %-34s %s (%.2fs)%s%s\n", number, name.c_str(),
              ok ? "PASS" : "FAIL", elapsed,
              detail.empty() ? "" : " — ", detail.c_str());
  if (!ok) ++g_failures;
}

std::string data(const std::string& rel) {
  return std::string(IZRO_DATA_DIR) + "/" + rel;
}

ModelCorpus corpus_of(int n, bool i20 = false) {
  SearchConfig cfg;
  cfg.n = n;
  if (i20) cfg.extra_identities.push_back("I20");
  return enumerate(cfg);
}

std::set<std::vector<std::uint8_t>> canonical_of_builtins() {
  std::set<std::vector<std::uint8_t>> out;
  for (const auto& name : builtin_algebra_names())
    out.insert(canonical_form(builtin_algebra(name)));
  return out;
}

// 1. Exactly three 2-element models, matching the three known tables.
void criterion_1() {
  auto start = Clock::now();
  ModelCorpus two = corpus_of(2);
  std::set<std::vector<std::uint8_t>> got;
  for (const auto& e : two.models) got.insert(e.algebra.flat_table());
  std::set<std::vector<std::uint8_t>> want{
      builtin_algebra("2z").flat_table(), builtin_algebra("2s").flat_table(),
      builtin_algebra("2b").flat_table()};
  double elapsed = seconds_since(start);
  bool ok = two.exhaustive && two.models.size() == 3 && got == want &&
            elapsed < 1.0;
  report(1, "size-2 census", ok, elapsed);
}

// 2. The five known simple models are the only ones up to size 5.
void criterion_2() {
  auto start = Clock::now();
  SimpleCensus to4 = classify_simples(4);
  double small_elapsed = seconds_since(start);

  auto start5 = Clock::now();
  SearchConfig cfg5;
  cfg5.n = 5;
  cfg5.simple_only = true;
  ModelCorpus five = enumerate(cfg5);
  double big_elapsed = seconds_since(start5);

  std::set<std::vector<std::uint8_t>> got;
  for (const auto& A : to4.simples) got.insert(A.flat_table());
  for (const auto& e : five.models) got.insert(e.algebra.flat_table());

  SimpleCensus full = classify_simples(5);
  std::set<std::vector<std::uint8_t>> from_census;
  for (const auto& A : full.simples) from_census.insert(A.flat_table());

  bool ok = to4.exhaustive() && five.exhaustive &&
            five.models.empty() && got == canonical_of_builtins() &&
            full.exhaustive() && from_census == canonical_of_builtins() &&
            small_elapsed < 10.0 && big_elapsed < 600.0;
  std::ostringstream detail;
  detail << to4.simples.size() + five.models.size() << " simple models; n<=4 in "
         << small_elapsed << "s, n=5 in " << big_elapsed << "s"
         << (five.exhaustive ? "" : " [n=5 INCOMPLETE]");
  report(2, "simple classification to n=5", ok,
         seconds_since(start), detail.str());
}

// 3. All 63 derived laws hold on every x''=x model of size <= 4.
void criterion_3() {
  auto start = Clock::now();
  std::vector<CorpusEntry> corpus;
  for (int n = 1; n <= 4; ++n)
    for (auto& e : corpus_of(n, true).models) corpus.push_back(e);
  std::vector<std::string> labels;
  for (int i = 1; i <= 63; ++i) labels.push_back("L3.3." + std::to_string(i));
  SuiteReport report_ = verify_suite(corpus, labels);
  bool ok = report_.all_pass() &&
            report_.cells.size() == corpus.size() * 63;
  report(3, "63-law suite on the I20 corpus", ok, seconds_since(start),
         std::to_string(report_.cells.size()) + " checks, " +
             std::to_string(report_.failures().size()) + " failures");
}

// 4. The four equivalent conditions agree on every model of size <= 4.
void criterion_4() {
  auto start = Clock::now();
  bool ok = true;
  int checked = 0;
  for (int n = 1; n <= 4; ++n) {
    EquivalenceReport rep = verify_equivalence_L32(corpus_of(n).models);
    ok = ok && rep.all_consistent();
    checked += static_cast<int>(rep.rows.size());
  }
  report(4, "four-way equivalence agreement", ok, seconds_since(start),
         std::to_string(checked) + " models");
}

// 5. The derived relations are congruences where claimed.
void criterion_5() {
  auto start = Clock::now();
  bool ok = true;
  for (int n = 1; n <= 4; ++n)
    for (const auto& e : corpus_of(n).models) {
      Relation rpp = derived_relation(e.algebra, RelationKind::Rdoubleprime);
      if (!is_congruence(e.algebra, rpp).is_congruence) ok = false;
    }
  for (int n = 1; n <= 4; ++n)
    for (const auto& e : corpus_of(n, true).models) {
      Relation r1 = derived_relation(e.algebra, RelationKind::R1);
      if (!is_congruence(e.algebra, r1).is_congruence) ok = false;
    }
  const FiniteAlgebra& z = builtin_algebra("2z");
  ok = ok && check_identity(z, parse_identity("x'' = y''").conclusion).holds;
  for (const char* text : {"x'' = 0", "(x -> y)' = 0", "(x -> y) -> z = 0"})
    ok = ok && check_identity(z, parse_identity(text).conclusion).holds;
  report(5, "congruence lemmas", ok, seconds_since(start));
}

// 6. Every simple model with at least 3 elements satisfies the De
// Morgan law and the involution law.
void criterion_6() {
  auto start = Clock::now();
  bool ok = true;
  int simples = 0;
  for (int n = 3; n <= 5; ++n) {
    SearchConfig cfg;
    cfg.n = n;
    cfg.simple_only = true;
    ModelCorpus corpus = enumerate(cfg);
    ok = ok && corpus.exhaustive;
    for (const auto& e : corpus.models) {
      ++simples;
      if (!e.in_dm || !e.in_i20) ok = false;
    }
  }
  report(6, "simple => De Morgan cross-check", ok, seconds_since(start),
         std::to_string(simples) + " simple models of size 3..5");
}

// 7. The sixteen-node lattice and its shape, golden diagram included.
void criterion_7() {
  auto start = Clock::now();
  std::vector<FiniteAlgebra> five;
  for (const auto& name : builtin_algebra_names())
    five.push_back(builtin_algebra(name));
  VarietyPoset poset = variety_poset(all_subsets(five));
  LatticeShapeReport shape = check_lattice_shape(poset);

  std::ifstream golden(data("lattice.dot"));
  std::stringstream buf;
  buf << golden.rdbuf();
  bool dot_matches = golden.good() && poset.to_dot() == buf.str();

  auto top = std::vector<FiniteAlgebra>{builtin_algebra("2z"),
                                        builtin_algebra("2s"),
                                        builtin_algebra("4d")};
  bool absorption = in_variety(builtin_algebra("2b"), top).is_member() &&
                    in_variety(builtin_algebra("3k"), top).is_member();

  double elapsed = seconds_since(start);
  bool ok = poset.nodes.size() == 16 && shape.ok && dot_matches &&
            absorption && elapsed < 300.0;
  report(7, "semisimple subvariety lattice", ok, elapsed,
         std::to_string(poset.nodes.size()) + " nodes; " + shape.detail);
}

// 8. Local finiteness soundings via free algebras.
void criterion_8() {
  auto start = Clock::now();
  bool ok = true;
  std::string detail;
  try {
    FreeAlgebraResult fb = free_algebra({builtin_algebra("2b")}, 1);
    FreeAlgebraResult fz = free_algebra({builtin_algebra("2z")}, 1);
    std::vector<FiniteAlgebra> five;
    for (const auto& name : builtin_algebra_names())
      five.push_back(builtin_algebra(name));
    FreeAlgebraResult fall = free_algebra(five, 1);
    ok = fb.algebra.size() == 4 && fz.algebra.size() == 2;
    detail = "F(2b;1)=" + std::to_string(fb.algebra.size()) +
             ", F(2z;1)=" + std::to_string(fz.algebra.size()) +
             ", F(all;1)=" + std::to_string(fall.algebra.size());
  } catch (const Error& e) {
    ok = false;
    detail = e.what();
  }
  report(8, "free algebra sanity", ok, seconds_since(start), detail);
}

// 9. Shipped proof scripts replay; mutants fail where expected;
// cross-checks agree with the models.
void criterion_9() {
  auto start = Clock::now();
  std::vector<FiniteAlgebra> corpus;
  for (int n = 1; n <= 4; ++n)
    for (auto& e : corpus_of(n, true).models) corpus.push_back(e.algebra);

  std::vector<std::string> files;
  for (const auto& entry :
       std::filesystem::directory_iterator(data("proofs")))
    if (entry.path().extension() == ".prf")
      files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());

  int replayed = 0, crosschecked = 0;
  bool ok = files.size() >= 44;
  std::string first_bad;
  std::set<std::string> names;
  for (const auto& path : files) {
    ProofScript script = load_script_file(path);
    names.insert(script.name);
    Verdict v = replay(script);
    if (v.ok)
      ++replayed;
    else if (first_bad.empty())
      first_bad = script.name + ": " + v.diagnostic;
    if (cross_check(script, corpus).all_hold())
      ++crosschecked;
    else if (first_bad.empty())
      first_bad = script.name + ": cross-check failed";
  }
  for (int i = 20; i <= 63; ++i)
    if (!names.count("L3.3." + std::to_string(i))) {
      ok = false;
      if (first_bad.empty())
        first_bad = "missing L3.3." + std::to_string(i);
    }
  ok = ok && replayed == static_cast<int>(files.size()) &&
       crosschecked == static_cast<int>(files.size());

  // Negative controls: a corrupted final term and a wrong citation must
  // fail at the expected steps.
  ProofScript base = load_script_file(data("proofs/L3.3.20.prf"));
  ProofScript mutant = base;
  mutant.steps.back().to = parse_term("(b -> a')");
  mutant.goal.rhs = parse_term("(b -> a')");
  Verdict mv = replay(mutant);
  bool controls = !mv.ok && mv.failing_step &&
                  *mv.failing_step == mutant.steps.size() - 1;
  ProofScript wrong_cite = base;
  wrong_cite.steps[0].justification = "L3.3.13";
  Verdict wv = replay(wrong_cite);
  controls = controls && !wv.ok && wv.failing_step && *wv.failing_step == 0;
  ok = ok && controls;

  report(9, "proof replay", ok, seconds_since(start),
         std::to_string(replayed) + "/" + std::to_string(files.size()) +
             " replayed, " + std::to_string(crosschecked) + " cross-checked" +
             (first_bad.empty() ? "" : "; first failure: " + first_bad));
}

// 10. Independent oracles agree with the optimized paths.
void criterion_10() {
  auto start = Clock::now();
  bool ok = true;

  // Principal congruences vs the intersection over the full lattice.
  for (int n = 2; n <= 4; ++n)
    for (const auto& e : corpus_of(n).models) {
      auto cons = all_congruences(e.algebra);
      for (int a = 0; a < n && ok; ++a)
        for (int b = a + 1; b < n && ok; ++b) {
          std::optional<Partition> meet;
          for (const Partition& c : cons)
            if (c.related(a, b)) meet = meet ? meet->meet(c) : c;
          if (!(meet && *meet == principal_congruence(e.algebra, a, b)))
            ok = false;
        }
    }

  // Search vs the filter-everything census.
  for (int n = 1; n <= 3 && ok; ++n) {
    std::set<std::vector<std::uint8_t>> a, b;
    for (const auto& e : corpus_of(n).models)
      a.insert(e.algebra.flat_table());
    for (const auto& A : enumerate_by_filter(n)) b.insert(A.flat_table());
    if (a != b) ok = false;
  }

  // Compiled evaluation vs the naive recursive evaluator.
  oracles::Fuzzer fuzz(777);
  for (int i = 0; i < 1000 && ok; ++i) {
    FiniteAlgebra A = fuzz.algebra();
    Term l = fuzz.term(4), r = fuzz.term(4);
    Identity id{l, r, {}};
    std::map<std::string, int> env;
    Assignment assignment;
    for (auto& t : {l, r})
      for (auto& v : t.variables())
        if (!env.count(v)) {
          int e = fuzz.pick(A.size());
          env[v] = e;
          assignment[v] = e;
        }
    if (evaluate(A, l, assignment) != oracles::naive_eval(A, l, env) ||
        evaluate(A, r, assignment) != oracles::naive_eval(A, r, env) ||
        check_identity(A, id).holds != oracles::naive_check(A, id))
      ok = false;
  }

  report(10, "oracle equivalences", ok, seconds_since(start));
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (g_failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criterion/criteria FAILED\n", g_failures);
  return 1;
}
