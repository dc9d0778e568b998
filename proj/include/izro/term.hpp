#ifndef IZRO_TERM_HPP
#define IZRO_TERM_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace izro {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A work or element budget ran out (distinct so callers can map it to
/// their own exit contract).
struct BudgetError : Error {
  using Error::Error;
};

/// Syntax error in a term, identity or proof script. `offset` is the
/// 0-based byte offset into the offending text.
struct ParseError : Error {
  std::size_t offset;
  ParseError(const std::string& msg, std::size_t off);
};

class Term;
using Subst = std::map<std::string, Term>;
using Path = std::vector<int>;

/// Immutable term over one binary operation `->`, the constant `0`,
/// variables, and the postfix complement `'` (kept as its own node;
/// t' abbreviates t -> 0).
///
/// Terms are value types backed by shared immutable nodes, so copies are
/// cheap and sharing across threads is safe.
class Term {
 public:
  enum class Kind : std::uint8_t { Var, Zero, Comp, Arrow };

  Term();  // the constant 0

  static Term var(std::string name);
  static Term zero();
  static Term comp(Term inner);
  static Term arrow(Term lhs, Term rhs);

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return kind() == k; }

  const std::string& var_name() const;  // Kind::Var only
  Term inner() const;                   // Kind::Comp only
  Term lhs() const;                     // Kind::Arrow only
  Term rhs() const;                     // Kind::Arrow only

  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }

  /// Distinct variable names, sorted.
  std::vector<std::string> variables() const;

  /// Rewrites every t' node into t -> 0, bottom-up. Idempotent.
  Term normalize_comp() const;

  /// Simultaneous substitution; unmapped variables stay fixed.
  Term substitute(const Subst& sigma) const;

  /// Subterm at `path` (sequence of child indices; Comp has child 0,
  /// Arrow has children 0 and 1). Throws Error on an invalid path.
  Term at(const Path& path) const;

  /// Copy of this term with the subterm at `path` replaced.
  Term replace_at(const Path& path, const Term& replacement) const;

  std::size_t depth() const;
  std::size_t hash() const { return node_->hash_value; }
  std::string str() const;

 private:
  struct Node {
    Kind kind;
    std::string name;                    // Var
    std::shared_ptr<const Node> child0;  // Comp inner / Arrow lhs
    std::shared_ptr<const Node> child1;  // Arrow rhs
    std::size_t hash_value = 0;
  };

  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static bool node_equal(const Node* a, const Node* b);

  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

/// Parses the ASCII surface syntax. Grammar, loosely:
///
///   term    := primary [ "->" primary ]
///   primary := atom { "'" }
///   atom    := "0" | identifier | "(" term ")"
///
/// Whitespace is insignificant. `'` binds tighter than `->`. Nested
/// arrows must be parenthesized; one unparenthesized arrow is accepted
/// at top level. The Unicode forms "→" and "′" are aliases.
/// Throws ParseError with the byte offset of the problem.
Term parse_term(std::string_view text);

/// Canonical printing: every arrow wrapped in parentheses, postfix `'`,
/// single spaces around `->`. parse_term(format_term(t)) == t.
std::string format_term(const Term& t);

/// An identity lhs ~ rhs. Orientation is preserved as written; checkers
/// treat satisfaction symmetrically but proof replay does not.
struct Identity {
  Term lhs;
  Term rhs;
  std::string name;  // optional label

  bool operator==(const Identity& o) const {
    return lhs == o.lhs && rhs == o.rhs;
  }
  std::string str() const;
};

/// Identity with hypotheses: every assignment satisfying all hypotheses
/// pointwise must satisfy the conclusion. An unconditional identity is
/// the empty-hypothesis case.
struct ConditionalIdentity {
  std::vector<Identity> hypotheses;
  Identity conclusion;

  bool is_conditional() const { return !hypotheses.empty(); }
  std::string str() const;
};

/// Parses "lhs = rhs" or "hyp1, hyp2 |- lhs = rhs" ("≈" works for "=").
ConditionalIdentity parse_identity(std::string_view text,
                                   std::string name = {});

/// Ordered label -> identity map. Labels are unique.
class IdentityCatalog {
 public:
  void add(const std::string& label, ConditionalIdentity entry);
  bool contains(const std::string& label) const;
  const ConditionalIdentity& get(const std::string& label) const;
  /// Unconditional entry only; throws Error for conditional ones.
  const Identity& identity(const std::string& label) const;
  const std::vector<std::string>& labels() const { return order_; }
  std::size_t size() const { return order_.size(); }

 private:
  std::vector<std::string> order_;
  std::map<std::string, ConditionalIdentity> entries_;
};

/// The builtin catalog: the defining axioms (I, I0), the subvariety
/// axioms (I20, DM, KL1, KL2, BA), the two quasi-commutation laws
/// L3.1a/L3.1b, the four-way equivalence conditions L3.2a..L3.2d, and
/// the sixty-three derived laws L3.3.1..L3.3.63 (L3.3.44 conditional).
const IdentityCatalog& builtin_catalog();

/// Identity file format: one `label : lhs = rhs` per line, `#` comments,
/// conditional entries as `label : hyp1, hyp2 |- lhs = rhs`.
IdentityCatalog load_identity_file(const std::string& path);
void save_identity_file(const IdentityCatalog& catalog,
                        const std::string& path);

}  // namespace izro

#endif  // IZRO_TERM_HPP
