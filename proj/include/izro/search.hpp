#ifndef IZRO_SEARCH_HPP
#define IZRO_SEARCH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "izro/algebra.hpp"
#include "izro/congruence.hpp"

namespace izro {

struct SearchConfig {
  int n = 2;
  std::vector<std::string> extra_identities;  // catalog labels, e.g. "I20"
  long long budget = 200'000'000;             // search-node limit
  bool simple_only = false;
  int threads = 1;
};

struct CorpusEntry {
  FiniteAlgebra algebra;
  bool simple = false;
  bool subdirectly_irreducible = false;
  bool in_i20 = false;  // satisfies x'' = x
  bool in_dm = false;   // satisfies (x -> y) -> x = x
};

/// Enumeration result; `exhaustive` is false when the node budget ran
/// out, in which case the models present are valid but the census is
/// incomplete.
struct ModelCorpus {
  int n = 0;
  std::vector<CorpusEntry> models;
  bool exhaustive = true;
  long long nodes = 0;

  std::string to_jsonl() const;
};

/// All models of (I), (I0) and the extra identities of size cfg.n, up
/// to isomorphism. Backtracking over table cells in row-major order,
/// pruning on every fully instantiated axiom instance; canonical-form
/// deduplication. Output sorted by canonical table, so runs are
/// byte-identical regardless of thread count.
ModelCorpus enumerate(const SearchConfig& cfg);

/// Independent census oracle: filters all n^(n*n) tables. Practical for
/// n <= 3 only.
std::vector<FiniteAlgebra> enumerate_by_filter(
    int n, const std::vector<std::string>& extra_identities = {});

struct SuiteCell {
  std::string algebra;
  std::string label;
  CheckResult result;
};

struct SuiteReport {
  std::vector<SuiteCell> cells;  // all algebra x label combinations
  std::vector<const SuiteCell*> failures() const;
  bool all_pass() const;
  std::string summary() const;
};

/// Checks every labeled identity on every corpus member; conditional
/// entries use the hypothesis-respecting check.
SuiteReport verify_suite(const std::vector<CorpusEntry>& corpus,
                         const std::vector<std::string>& labels,
                         const IdentityCatalog& catalog = builtin_catalog());
SuiteReport verify_suite(const std::vector<FiniteAlgebra>& algebras,
                         const std::vector<std::string>& labels,
                         const IdentityCatalog& catalog = builtin_catalog());

struct EquivalenceReport {
  struct Row {
    std::string algebra;
    bool a, b, c, d;      // 0'->x = x, x'' = x, (x->x')' = x, x'->x = x
    bool consistent;      // all four agree
  };
  std::vector<Row> rows;
  bool all_consistent() const;
};

/// The four conditions L3.2a..L3.2d evaluated per algebra; they must be
/// all-true or all-false on every implication zroupoid.
EquivalenceReport verify_equivalence_L32(
    const std::vector<CorpusEntry>& corpus);

struct SimpleCensus {
  std::vector<FiniteAlgebra> simples;  // canonical tables, all sizes
  std::vector<int> incomplete_sizes;   // budget ran out at these sizes
  bool exhaustive() const { return incomplete_sizes.empty(); }
};

/// Enumerates sizes 2..max_n and keeps the simple models. max_n <= 6.
SimpleCensus classify_simples(int max_n,
                              long long budget_per_size = 200'000'000);

}  // namespace izro

#endif  // IZRO_SEARCH_HPP
