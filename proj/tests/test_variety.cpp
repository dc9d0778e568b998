#include <doctest.h>

#include <fstream>
#include <sstream>

#include "izro/variety.hpp"

using namespace izro;

namespace {

std::vector<FiniteAlgebra> algebras(std::initializer_list<const char*> names) {
  std::vector<FiniteAlgebra> out;
  for (const char* n : names) out.push_back(builtin_algebra(n));
  return out;
}

const std::vector<FiniteAlgebra>& five() {
  static const std::vector<FiniteAlgebra> f =
      algebras({"2z", "2s", "2b", "3k", "4d"});
  return f;
}

}  // namespace

TEST_CASE("free algebras at small generator counts") {
  FreeAlgebraResult f1 = free_algebra(algebras({"2b"}), 1);
  CHECK(f1.algebra.size() == 4);
  REQUIRE(f1.generators.size() == 1);

  // The four elements are 0, g, g', g -> g.
  int g = f1.generators[0];
  int gp = f1.algebra.comp(g);
  int gg = f1.algebra.op(g, g);
  std::set<int> distinct{0, g, gp, gg};
  CHECK(distinct.size() == 4);

  CHECK(free_algebra(algebras({"2z"}), 1).algebra.size() == 2);
  CHECK(free_algebra(algebras({"2b"}), 0).algebra.size() == 2);

  // Universality at desk scale: every map {g} -> 2b extends to a
  // homomorphism.
  const FiniteAlgebra& b = builtin_algebra("2b");
  for (int target = 0; target < 2; ++target) {
    // Image of each free element under the extension determined by
    // evaluating its tuple coordinates: with one generator the value
    // columns are indexed by assignments, and the extension is
    // projection onto the column of `target`.
    std::vector<int> img(f1.algebra.size());
    for (int e = 0; e < f1.algebra.size(); ++e) {
      // Column layout for 2b, k=1: assignment x=0 first, x=1 second.
      img[e] = f1.elements[e][target];
    }
    for (int u = 0; u < f1.algebra.size(); ++u)
      for (int v = 0; v < f1.algebra.size(); ++v)
        CHECK(img[f1.algebra.op(u, v)] == b.op(img[u], img[v]));
    CHECK(img[f1.generators[0]] == target);
    CHECK(img[0] == 0);
  }
}

TEST_CASE("free algebra budget failure is explicit") {
  CHECK_THROWS_WITH_AS(free_algebra(five(), 1, 3),
                       doctest::Contains("budget"), Error);
}

TEST_CASE("membership fast paths") {
  // Identity: any algebra sits in the variety it generates.
  for (const FiniteAlgebra& A : five()) {
    MembershipVerdict v = in_variety(A, {A});
    CHECK(v.is_member());
    REQUIRE(v.witness.has_value());
    std::string why;
    CHECK(validate_member_witness(A, {A}, *v.witness, &why));
  }

  // 2b embeds into 3k.
  MembershipVerdict b_in_k = in_variety(builtin_algebra("2b"),
                                        algebras({"3k"}));
  CHECK(b_in_k.is_member());
  CHECK(validate_member_witness(builtin_algebra("2b"), algebras({"3k"}),
                                *b_in_k.witness));
  CHECK(b_in_k.witness->factor_names == std::vector<std::string>{"3k"});

  // 2s is separated from V(4d) by the De Morgan law.
  MembershipVerdict s_in_d = in_variety(builtin_algebra("2s"),
                                        algebras({"4d"}));
  CHECK(s_in_d.kind == MembershipVerdict::Kind::NonMember);
  REQUIRE(s_in_d.separating_identity.has_value());
  CHECK(s_in_d.separating_identity->name == "DM");
  CHECK(check_identity(builtin_algebra("4d"), *s_in_d.separating_identity)
            .holds);
  CHECK_FALSE(
      check_identity(builtin_algebra("2s"), *s_in_d.separating_identity)
          .holds);

  // 3k is separated from V(2b) by the Boolean law.
  MembershipVerdict k_in_b = in_variety(builtin_algebra("3k"),
                                        algebras({"2b"}));
  CHECK(k_in_b.kind == MembershipVerdict::Kind::NonMember);
  CHECK(k_in_b.separating_identity->name == "BA");

  // The trivial algebra belongs to every variety, including the empty
  // one; nothing else fits the trivial variety.
  FiniteAlgebra trivial = validate({{0}}, "T1");
  CHECK(in_variety(trivial, {}).is_member());
  CHECK(in_variety(trivial, algebras({"2z"})).is_member());
  CHECK(in_variety(builtin_algebra("2s"), {}).kind ==
        MembershipVerdict::Kind::NonMember);
}

TEST_CASE("membership witnesses validate both ways") {
  // A member decided by the free-algebra route: 2b x 2b in V(2b).
  FiniteAlgebra bb = direct_product(builtin_algebra("2b"),
                                    builtin_algebra("2b"));
  bb.set_name("2bx2b");
  MembershipVerdict v = in_variety(bb, algebras({"2b"}));
  CHECK(v.is_member());
  std::string why;
  CHECK(validate_member_witness(bb, algebras({"2b"}), *v.witness, &why));

  // Tampering with the map breaks validation.
  MemberWitness bad = *v.witness;
  bad.map_to_a[1] = (bad.map_to_a[1] + 1) % bb.size();
  CHECK_FALSE(validate_member_witness(bb, algebras({"2b"}), bad, &why));
  CHECK_FALSE(why.empty());

  // Every non-member verdict among the five comes with an identity that
  // re-checks on both sides.
  for (const FiniteAlgebra& A : five())
    for (const FiniteAlgebra& B : five()) {
      if (A.name() == B.name()) continue;
      MembershipVerdict mv = in_variety(A, {B});
      if (mv.kind != MembershipVerdict::Kind::NonMember) continue;
      REQUIRE(mv.separating_identity.has_value());
      CHECK(check_identity(B, *mv.separating_identity).holds);
      CHECK_FALSE(check_identity(A, *mv.separating_identity).holds);
    }
}

TEST_CASE("pairwise memberships among the five simple algebras") {
  // Containment table: exactly 2b < 3k < 4d, nothing else.
  for (const FiniteAlgebra& A : five())
    for (const FiniteAlgebra& B : five()) {
      bool expected = A.name() == B.name() ||
                      (A.name() == "2b" &&
                       (B.name() == "3k" || B.name() == "4d")) ||
                      (A.name() == "3k" && B.name() == "4d");
      MembershipVerdict mv = in_variety(A, {B});
      CHECK(mv.kind != MembershipVerdict::Kind::Unknown);
      CHECK(mv.is_member() == expected);
    }
}

TEST_CASE("monotonicity of membership verdicts") {
  // S subset of T forces V(S) subset of V(T) on the witnesses we track.
  auto zs = algebras({"2z", "2s"});
  auto zsb = algebras({"2z", "2s", "2b"});
  for (const FiniteAlgebra& A : five()) {
    if (in_variety(A, zs).is_member())
      CHECK(in_variety(A, zsb).is_member());
  }
}

TEST_CASE("absorption: V(2z,2s,4d) contains 2b and 3k") {
  auto top = algebras({"2z", "2s", "4d"});
  CHECK(in_variety(builtin_algebra("2b"), top).is_member());
  CHECK(in_variety(builtin_algebra("3k"), top).is_member());
}

TEST_CASE("variety poset over subsets of {2z, 2s}") {
  VarietyPoset poset = variety_poset(all_subsets(algebras({"2z", "2s"})));
  REQUIRE(poset.nodes.size() == 4);
  CHECK(poset.nodes[0].label() == "T");
  CHECK(poset.nodes[3].label() == "2s,2z");
  // A Boolean square: bottom covered by the two atoms, top covering
  // them.
  CHECK(poset.nodes[0].covered_by.size() == 2);
  CHECK(poset.nodes[3].covers.size() == 2);
  LatticeShapeReport shape = check_lattice_shape(poset);
  CHECK_FALSE(shape.ok);  // a square is not B_2^2 x C_4
}

TEST_CASE("duplicate-generating families collapse") {
  VarietyPoset poset =
      variety_poset(all_subsets(algebras({"2b", "3k", "4d"})));
  // V(2b) < V(3k) < V(4d) absorb each other: a 4-chain with T.
  REQUIRE(poset.nodes.size() == 4);
  CHECK(poset.nodes[0].label() == "T");
  CHECK(poset.nodes[1].label() == "2b");
  CHECK(poset.nodes[2].label() == "3k");
  CHECK(poset.nodes[3].label() == "4d");
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(poset.nodes[i].covers.size() == (i == 0 ? 0 : 1));
  CHECK_FALSE(check_lattice_shape(poset).ok);
}

TEST_CASE("the sixteen semisimple varieties") {
  VarietyPoset poset = variety_poset(all_subsets(five()));
  REQUIRE(poset.nodes.size() == 16);

  LatticeShapeReport shape = check_lattice_shape(poset);
  CHECK(shape.ok);

  // The golden Hasse diagram.
  std::ifstream golden(std::string(IZRO_DATA_DIR) + "/lattice.dot");
  REQUIRE(golden.good());
  std::stringstream buf;
  buf << golden.rdbuf();
  CHECK(poset.to_dot() == buf.str());
}
