#include <doctest.h>

#include <set>

#include "izro/algebra.hpp"
#include "izro/congruence.hpp"
#include "oracles.hpp"

using namespace izro;

TEST_CASE("validate checks the table") {
  FiniteAlgebra b = validate({{1, 1}, {0, 1}}, "2b");
  CHECK(b.size() == 2);
  CHECK(b.op(0, 0) == 1);

  CHECK_THROWS_WITH_AS(validate({{0, 2}, {0, 0}}),
                       doctest::Contains("(0,1)"), Error);
  CHECK_THROWS_AS(validate({{0, 0}, {0}}), Error);
  CHECK(validate({{0}}).size() == 1);
}

TEST_CASE("evaluate follows the table") {
  const FiniteAlgebra& k3 = builtin_algebra("3k");
  CHECK(evaluate(k3, parse_term("(x -> y) -> x"), {{"x", 2}, {"y", 0}}) == 2);

  const FiniteAlgebra& d4 = builtin_algebra("4d");
  CHECK(evaluate(d4, parse_term("x'"), {{"x", 3}}) == 3);

  const FiniteAlgebra& z2 = builtin_algebra("2z");
  oracles::Fuzzer fuzz(5);
  for (int i = 0; i < 100; ++i) {
    Term t = fuzz.term(4);
    if (t.kind() != Term::Kind::Arrow && t.kind() != Term::Kind::Comp)
      continue;
    Assignment a;
    for (auto& v : t.variables()) a[v] = fuzz.pick(2);
    CHECK(evaluate(z2, t, a) == 0);
  }

  CHECK_THROWS_AS(evaluate(k3, parse_term("x -> y"), {{"x", 1}}), Error);
}

TEST_CASE("check_identity finds the first counterexample") {
  const IdentityCatalog& cat = builtin_catalog();

  CheckResult r = check_identity(builtin_algebra("2s"), cat.identity("DM"));
  REQUIRE_FALSE(r.holds);
  REQUIRE(r.counterexample.has_value());
  CHECK(r.counterexample->assignment == Assignment{{"x", 0}, {"y", 1}});
  CHECK(r.counterexample->lhs_value == 1);
  CHECK(r.counterexample->rhs_value == 0);

  CHECK(check_identity(builtin_algebra("2b"), cat.identity("BA")).holds);
  for (const auto& name : builtin_algebra_names())
    CHECK(check_identity(builtin_algebra(name),
                         parse_identity("x = x").conclusion)
              .holds);
}

TEST_CASE("check_conditional respects hypotheses") {
  const IdentityCatalog& cat = builtin_catalog();
  CHECK(check_conditional(builtin_algebra("3k"), cat.get("L3.3.44")).holds);
  CHECK(check_conditional(builtin_algebra("2s"), cat.get("L3.3.44")).holds);

  // Vacuous: 0 = 0' never holds in 2b, so any conclusion passes.
  ConditionalIdentity vacuous = parse_identity("0 = 0' |- x = y");
  CHECK(builtin_algebra("2b").comp(0) == 1);
  CHECK(check_conditional(builtin_algebra("2b"), vacuous).holds);
  // ... and the same conclusion alone fails.
  CHECK_FALSE(
      check_identity(builtin_algebra("2b"), vacuous.conclusion).holds);
}

TEST_CASE("direct products") {
  const FiniteAlgebra& b = builtin_algebra("2b");
  FiniteAlgebra bb = direct_product(b, b);
  CHECK(bb.size() == 4);
  // (a1,b1) -> (a2,b2) componentwise under the pair encoding a*|B|+b.
  CHECK(bb.op(0 * 2 + 1, 1 * 2 + 0) == b.op(0, 1) * 2 + b.op(1, 0));

  FiniteAlgebra trivial = validate({{0}});
  CHECK(isomorphic(direct_product(b, trivial), b));

  FiniteAlgebra zs = direct_product(builtin_algebra("2z"),
                                    builtin_algebra("2s"));
  CHECK(check_identity(zs, builtin_catalog().identity("I")).holds);
  CHECK(check_identity(zs, builtin_catalog().identity("I0")).holds);
}

TEST_CASE("subuniverse closure and induced algebras") {
  const FiniteAlgebra& k3 = builtin_algebra("3k");
  std::set<int> s = subuniverse_closure(k3, {1});
  CHECK(s == std::set<int>{0, 1});
  CHECK(induced_algebra(k3, s).flat_table() ==
        builtin_algebra("2b").flat_table());

  const FiniteAlgebra& d4 = builtin_algebra("4d");
  std::set<int> t = subuniverse_closure(d4, {2});
  CHECK(t == std::set<int>{0, 1, 2});
  CHECK(induced_algebra(d4, t).flat_table() == k3.flat_table());

  std::set<int> all{0, 1, 2, 3};
  CHECK(subuniverse_closure(d4, all) == all);
}

TEST_CASE("quotients") {
  const FiniteAlgebra& b = builtin_algebra("2b");
  FiniteAlgebra bb = direct_product(b, b);

  // Kernel of the first projection: blocks by first coordinate.
  Partition kernel = Partition::from_blocks(4, {{0, 1}, {2, 3}});
  CHECK(isomorphic(quotient(bb, kernel), b));

  CHECK(isomorphic(quotient(bb, Partition::identity(4)), bb));
  CHECK(quotient(bb, Partition::full(4)).size() == 1);

  // {0,3} and {1,2} is not compatible with -> on 2b x 2b.
  Partition bad = Partition::from_blocks(4, {{0, 3}, {1, 2}});
  CHECK_THROWS_WITH_AS(quotient(bb, bad), doctest::Contains("not a congruence"),
                       Error);
}

TEST_CASE("canonical forms decide isomorphism") {
  const FiniteAlgebra& k3 = builtin_algebra("3k");
  CHECK(canonical_form(builtin_algebra("2b")) ==
        builtin_algebra("2b").flat_table());

  // Swap elements 1 and 2 of 3k.
  FiniteAlgebra swapped = validate({{2, 2, 2}, {1, 1, 2}, {0, 1, 2}});
  CHECK(canonical_form(swapped) == canonical_form(k3));
  CHECK(isomorphic(swapped, k3));

  CHECK(canonical_form(builtin_algebra("2s")) !=
        canonical_form(builtin_algebra("2b")));

  // Composing with any constant-fixing permutation leaves the canonical
  // form unchanged.
  const FiniteAlgebra& d4 = builtin_algebra("4d");
  std::vector<int> perm{0, 1, 3, 2};
  std::vector<std::vector<int>> permuted(4, std::vector<int>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      permuted[perm[i]][perm[j]] = perm[d4.op(i, j)];
  CHECK(canonical_form(validate(permuted)) == canonical_form(d4));
}

TEST_CASE("evaluation matches the naive oracle on fuzzed triples") {
  oracles::Fuzzer fuzz(12345);
  int checked = 0;
  while (checked < 1000) {
    FiniteAlgebra A = fuzz.algebra();
    Term l = fuzz.term(4), r = fuzz.term(4);
    Identity id{l, r, {}};
    std::map<std::string, int> env;
    Assignment a;
    for (auto& v : l.variables()) {
      int e = fuzz.pick(A.size());
      env[v] = e;
      a[v] = e;
    }
    for (auto& v : r.variables()) {
      if (env.count(v)) continue;
      int e = fuzz.pick(A.size());
      env[v] = e;
      a[v] = e;
    }
    CHECK(evaluate(A, l, a) == oracles::naive_eval(A, l, env));
    CHECK(evaluate(A, r, a) == oracles::naive_eval(A, r, env));
    CHECK(check_identity(A, id).holds == oracles::naive_check(A, id));
    ++checked;
  }
}

TEST_CASE("HSP constructions preserve catalog identities") {
  const IdentityCatalog& cat = builtin_catalog();
  std::vector<FiniteAlgebra> five;
  for (const auto& name : builtin_algebra_names())
    five.push_back(builtin_algebra(name));

  auto holds = [&](const FiniteAlgebra& A, const std::string& label) {
    return check_label(A, label).holds;
  };

  for (const auto& label : cat.labels()) {
    bool conditional = cat.get(label).is_conditional();
    // Products and subalgebras preserve identities and quasi-identities.
    for (const FiniteAlgebra& A : five) {
      if (!holds(A, label)) continue;
      for (const FiniteAlgebra& B : five) {
        if (!holds(B, label)) continue;
        CHECK(holds(direct_product(A, B), label));
      }
      for (int seed = 0; seed < A.size(); ++seed) {
        auto sub = subuniverse_closure(A, {seed});
        CHECK(holds(induced_algebra(A, sub), label));
      }
      // Quotients preserve plain identities.
      if (!conditional)
        for (const Partition& p : all_congruences(A))
          CHECK(holds(quotient(A, p), label));
    }
  }
}

TEST_CASE("json serialization") {
  for (const auto& name : builtin_algebra_names()) {
    FiniteAlgebra loaded = load_algebra_json(
        std::string(IZRO_DATA_DIR) + "/algebras/" + name + ".json");
    CHECK(loaded == builtin_algebra(name));
    CHECK(loaded.name() == name);
  }

  FiniteAlgebra round =
      algebra_from_json(algebra_to_json(builtin_algebra("3k")));
  CHECK(round == builtin_algebra("3k"));

  CHECK_THROWS_AS(
      algebra_from_json("{\"size\": 3, \"table\": [[0,0],[0,0]]}"), Error);
  CHECK_THROWS_AS(algebra_from_json("{\"table\": [[0,2],[0,0]]}"), Error);
  CHECK_THROWS_AS(algebra_from_json("not json"), Error);
}
