#ifndef IZRO_CONGRUENCE_HPP
#define IZRO_CONGRUENCE_HPP

#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "izro/algebra.hpp"

namespace izro {

/// Equivalence relation on 0..n-1 in canonical block form: disjoint
/// sorted blocks covering the universe, ordered by least element.
/// Equality of partitions is structural.
class Partition {
 public:
  static Partition identity(int n);       // delta
  static Partition full(int n);           // nabla
  static Partition from_blocks(int n, std::vector<std::vector<int>> blocks);
  /// From a representative map (element -> class id, ids arbitrary).
  static Partition from_classes(const std::vector<int>& class_of);

  int universe_size() const { return n_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  int block_of(int element) const { return block_index_[element]; }
  bool related(int a, int b) const {
    return block_index_[a] == block_index_[b];
  }
  bool is_identity() const { return block_count() == n_; }
  bool is_full() const { return block_count() == 1; }

  bool finer_or_equal(const Partition& other) const;
  Partition meet(const Partition& other) const;
  /// Transitive closure of the union.
  Partition join(const Partition& other) const;

  bool operator==(const Partition& o) const { return blocks_ == o.blocks_; }
  bool operator<(const Partition& o) const;

  /// Blocks as sorted lists of sorted lists, e.g. [[0,1],[2]].
  std::string str() const;

 private:
  int n_ = 0;
  std::vector<std::vector<int>> blocks_;
  std::vector<int> block_index_;
};

/// Binary relation as an explicit pair set.
using Relation = std::set<std::pair<int, int>>;

Relation partition_to_relation(const Partition& p);

/// The spot where an equivalence relation fails to be compatible with
/// ->: a ~ b and c ~ d but a->c !~ b->d. Empty when compatible.
std::optional<std::tuple<int, int, int, int>> congruence_witness(
    const FiniteAlgebra& A, const Partition& p);

struct CongruenceCheck {
  bool is_equivalence = false;
  bool is_congruence = false;
  std::string diagnostic;  // witness description when either fails
};

/// Verifies rel is an equivalence (reflexive, symmetric, transitive;
/// violations reported distinctly) and then compatibility with ->.
CongruenceCheck is_congruence(const FiniteAlgebra& A, const Relation& rel);

/// Least congruence containing (a, b): the pair is closed under the
/// one-step translations z -> c->z and z -> z->c for all c, interleaved
/// with transitive closure, to a fixpoint.
Partition principal_congruence(const FiniteAlgebra& A, int a, int b);

/// Every congruence of A, built by closing the principal ones under
/// join. Sorted with delta first and the full relation last. Guarded to
/// |A| <= 12.
std::vector<Partition> all_congruences(const FiniteAlgebra& A);

/// True iff Cg(a, b) is the full relation for every pair a != b.
/// The one-element algebra is rejected.
bool is_simple(const FiniteAlgebra& A);

/// True iff the intersection of all non-identity congruences is itself
/// non-identity; returns that monolith when present.
std::pair<bool, std::optional<Partition>> is_subdirectly_irreducible(
    const FiniteAlgebra& A);

enum class RelationKind { R1, Rdoubleprime, Rprime, RT };

RelationKind relation_kind_from_string(const std::string& s);
std::string to_string(RelationKind k);

/// The bespoke relations:
///   R1   x ~ y iff (x->y')->x = x and (y->x')->y = y   (needs x'' ~ x)
///   R''  x ~ y iff x'' = y''
///   R'   x ~ y iff x' = y'
///   RT   the partition {T, A\T} with T = {b : exists c, b->c != 0}
/// R1 on an algebra not satisfying x'' ~ x is refused with a diagnostic.
Relation derived_relation(const FiniteAlgebra& A, RelationKind kind);

}  // namespace izro

#endif  // IZRO_CONGRUENCE_HPP
