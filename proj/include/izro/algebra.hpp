#ifndef IZRO_ALGEBRA_HPP
#define IZRO_ALGEBRA_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "izro/term.hpp"

namespace izro {

/// Element indices of an assignment, keyed by variable name.
using Assignment = std::map<std::string, int>;

/// A finite groupoid-with-constant given by its n x n operation table.
/// table(a, b) stores a -> b (row operand first); element 0 is the
/// constant. Immutable after validation.
class FiniteAlgebra {
 public:
  FiniteAlgebra(std::vector<std::vector<int>> table, std::string name = {});

  int size() const { return n_; }
  int op(int a, int b) const { return table_[a * n_ + b]; }
  int comp(int a) const { return table_[a * n_]; }  // a -> 0
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  const std::vector<std::uint8_t>& flat_table() const { return table_; }
  std::vector<std::vector<int>> rows() const;

  bool operator==(const FiniteAlgebra& o) const {
    return n_ == o.n_ && table_ == o.table_;
  }

 private:
  int n_;
  std::vector<std::uint8_t> table_;  // row-major
  std::string name_;
};

/// Range-checks a square table and wraps it. Errors name the offending
/// cell.
FiniteAlgebra validate(const std::vector<std::vector<int>>& table,
                       std::string name = {});

/// The operation tables used throughout the test corpus: the three
/// 2-element implication zroupoids 2z, 2s, 2b, the 3-element Kleene
/// chain 3k and the 4-element De Morgan diamond 4d.
const FiniteAlgebra& builtin_algebra(const std::string& name);
std::vector<std::string> builtin_algebra_names();

/// Evaluates `t` under `a`; every variable of `t` must be bound.
/// t' evaluates as table(eval t, 0), 0 as the constant.
int evaluate(const FiniteAlgebra& A, const Term& t, const Assignment& a);

struct Counterexample {
  Assignment assignment;
  int lhs_value = 0;
  int rhs_value = 0;
};

struct CheckResult {
  bool holds = true;
  std::optional<Counterexample> counterexample;

  explicit operator bool() const { return holds; }
};

/// Exhaustive satisfaction check over all |A|^k assignments, variables
/// in sorted order, last variable varying fastest; reports the first
/// failing assignment in that order.
CheckResult check_identity(const FiniteAlgebra& A, const Identity& id);

/// As check_identity, but the conclusion is only required at assignments
/// satisfying every hypothesis pointwise.
CheckResult check_conditional(const FiniteAlgebra& A,
                              const ConditionalIdentity& c);

/// Shorthand: catalog entries check as plain or conditional as needed.
CheckResult check_label(const FiniteAlgebra& A, const std::string& label,
                        const IdentityCatalog& catalog = builtin_catalog());

/// Componentwise product; pair (a, b) is encoded as a * |B| + b, so the
/// constant is (0, 0).
FiniteAlgebra direct_product(const FiniteAlgebra& A, const FiniteAlgebra& B);

/// Least subset of A containing seed and 0 and closed under ->.
std::set<int> subuniverse_closure(const FiniteAlgebra& A,
                                  const std::set<int>& seed);

/// The algebra induced on a closed subset (elements reindexed in
/// ascending order; the subset must contain 0 and be closed).
FiniteAlgebra induced_algebra(const FiniteAlgebra& A,
                              const std::set<int>& subuniverse);

class Partition;  // congruence.hpp

/// Quotient by a congruence; blocks become elements, the block of 0 the
/// constant. Throws Error with a witness quadruple if `p` is not a
/// congruence.
FiniteAlgebra quotient(const FiniteAlgebra& A, const Partition& p);

/// Lexicographically least flat table over all permutations of 1..n-1
/// (element 0 is fixed, isomorphisms preserve the constant). Two
/// algebras are isomorphic iff their canonical forms are equal.
std::vector<std::uint8_t> canonical_form(const FiniteAlgebra& A);

bool isomorphic(const FiniteAlgebra& A, const FiniteAlgebra& B);

/// JSON {"name": str, "size": n, "table": [[int, ...], ...]}.
FiniteAlgebra load_algebra_json(const std::string& path);
std::string algebra_to_json(const FiniteAlgebra& A);
FiniteAlgebra algebra_from_json(const std::string& text);

}  // namespace izro

#endif  // IZRO_ALGEBRA_HPP
