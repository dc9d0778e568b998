#ifndef IZRO_PROOF_HPP
#define IZRO_PROOF_HPP

#include <optional>
#include <string>
#include <vector>

#include "izro/algebra.hpp"
#include "izro/term.hpp"

namespace izro {

/// One rewrite: the subterm of `from` at `position` must be the cited
/// rule side instantiated by `substitution`, and replacing it by the
/// instantiated other side must give exactly `to`. `reverse` applies
/// the rule right-to-left. Position and substitution may be left empty
/// in script files, in which case the checker infers the first
/// (preorder) combination that works.
struct Step {
  Term from;
  Term to;
  std::string justification;  // catalog label, "hyp:<k>", or "defcomp"
  std::optional<Path> position;
  std::optional<Subst> substitution;
  bool reverse = false;
};

/// A named chain of equalities over proof constants (plain variables
/// the checker never instantiates), each step justified by a catalog
/// identity, a hypothesis, or the definitional unfolding t' = t -> 0.
struct ProofScript {
  std::string name;
  std::vector<Identity> hypotheses;  // ground over the proof constants
  std::vector<Step> steps;
  Identity goal;
};

struct Verdict {
  bool ok = true;
  std::optional<std::size_t> failing_step;
  std::string diagnostic;
};

/// Script file format (UTF-8, line oriented, `#` comments):
///
///   proof <name>
///   assume <lhs> = <rhs>          (zero or more)
///   goal <lhs> = <rhs>
///   start <term>
///   = <term> by <label> [rev] [at <path>] [with x=<term>, ...]
///
/// Paths are dot-separated child indices (`at 0.1`), `at root` for the
/// whole term. Structural validation (chaining against the goal) is
/// done here; per-step rule checking is deferred to replay.
ProofScript load_script(const std::string& text);
ProofScript load_script_file(const std::string& path);

/// Validates one rewrite against the catalog and hypotheses. Only the
/// cited position is interpreted; untouched context just has to match
/// between `from` and `to`.
Verdict check_step(const Step& step, const IdentityCatalog& catalog,
                   const std::vector<Identity>& hypotheses);

/// Checks every step, the chaining, and that the chain proves the goal.
/// Reports the first failure.
Verdict replay(const ProofScript& script,
               const IdentityCatalog& catalog = builtin_catalog());

struct CrossCheckRow {
  std::string algebra;
  CheckResult result;
};

struct CrossCheckReport {
  std::vector<CrossCheckRow> rows;
  bool all_hold() const;
  std::string summary() const;
};

/// Independent of replay: evaluates the script goal (hypotheses
/// included, constants read as variables) on every algebra. Catches a
/// transcription whose steps check but prove the wrong statement.
CrossCheckReport cross_check(const ProofScript& script,
                             const std::vector<FiniteAlgebra>& corpus);

}  // namespace izro

#endif  // IZRO_PROOF_HPP
