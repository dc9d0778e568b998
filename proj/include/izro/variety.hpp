#ifndef IZRO_VARIETY_HPP
#define IZRO_VARIETY_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "izro/algebra.hpp"

namespace izro {

struct FreeAlgebraResult {
  FiniteAlgebra algebra;        // element 0 is the constant
  std::vector<int> generators;  // element indices of the k generators
  /// Ambient product structure: one source algebra name per coordinate.
  std::vector<std::string> factor_names;
  /// Tuple carried by each element (coordinates as in factor_names).
  std::vector<std::vector<int>> elements;
};

/// Free algebra on k generators over the class K: the subalgebra of the
/// product of B^(|B|^k) over B in K generated by the k projection
/// tuples and the constant. Throws Error when the closure exceeds
/// `element_budget` (never truncates).
FreeAlgebraResult free_algebra(const std::vector<FiniteAlgebra>& K, int k,
                               std::size_t element_budget = 1'000'000);

struct MemberWitness {
  std::vector<std::string> factor_names;
  std::vector<std::vector<int>> subuniverse;  // closed set of tuples
  std::vector<int> map_to_a;                  // per tuple, its image in A
};

struct Effort {
  int max_power = 3;      // product size for embedding search
  int max_depth = 4;      // identity enumeration term depth
  int max_vars = 3;       // identity enumeration variables
  std::size_t free_budget = 1'000'000;  // free-algebra element budget
};

/// Decision for "A in V(K)". Member carries a surjective homomorphism
/// from a subalgebra of a finite product of members of K; NonMember
/// carries an identity holding in every member of K and failing in A;
/// Unknown means every budget ran out.
struct MembershipVerdict {
  enum class Kind { Member, NonMember, Unknown };
  Kind kind = Kind::Unknown;
  std::optional<MemberWitness> witness;
  std::optional<Identity> separating_identity;
  std::string note;

  bool is_member() const { return kind == Kind::Member; }
};

/// Semi-decision under `effort`, complete at desk scale: tries a short
/// battery of known separating identities, then embeddings into
/// products of at most max_power factors, then the free algebra on |A|
/// generators (a homomorphic image test that is exact when its budget
/// suffices), then depth-bounded identity enumeration.
MembershipVerdict in_variety(const FiniteAlgebra& A,
                             const std::vector<FiniteAlgebra>& K,
                             const Effort& effort = {});

/// Re-checks a Member witness: tuples closed under the product
/// operation, map operation- and constant-preserving, surjective.
bool validate_member_witness(const FiniteAlgebra& A,
                             const std::vector<FiniteAlgebra>& K,
                             const MemberWitness& w, std::string* why = nullptr);

struct VarietyNode {
  std::vector<std::string> canonical_key;  // maximal generators, sorted
  std::vector<std::vector<std::string>> families;  // inputs mapped here
  std::vector<int> covers;      // Hasse: nodes covered by this one
  std::vector<int> covered_by;  // Hasse: nodes covering this one

  std::string label() const;  // comma-joined key; "T" for the empty key
};

struct VarietyPoset {
  std::vector<VarietyNode> nodes;       // bottom-up deterministic order
  std::vector<std::vector<bool>> leq;   // leq[i][j]: node i below node j

  std::string to_dot() const;
  std::string to_json() const;
};

/// Orders the varieties generated by the given families. Families are
/// deduplicated by mutual containment; V(S) <= V(T) iff every member of
/// S lies in V(T). Throws Error listing any membership the effort
/// budget left undecided.
VarietyPoset variety_poset(const std::vector<std::vector<FiniteAlgebra>>& families,
                           const Effort& effort = {});

/// All 2^|base| subsets of `base` as families.
std::vector<std::vector<FiniteAlgebra>> all_subsets(
    const std::vector<FiniteAlgebra>& base);

struct LatticeShapeReport {
  bool ok = false;
  std::string detail;
};

/// Confirms the poset is a lattice isomorphic to the product of the
/// 4-element Boolean lattice and a 4-element chain. The witness route
/// goes through join-irreducibles: there must be exactly five, two
/// incomparable atoms plus a 3-chain, and (atoms below, chain height)
/// must be a bijective order-isomorphism onto 2^2 x {0..3}.
LatticeShapeReport check_lattice_shape(const VarietyPoset& poset);

}  // namespace izro

#endif  // IZRO_VARIETY_HPP
