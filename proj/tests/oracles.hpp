// Test-only reference implementations, deliberately kept apart from the
// library code paths they are used to check.
#ifndef IZRO_TESTS_ORACLES_HPP
#define IZRO_TESTS_ORACLES_HPP

#include <map>
#include <random>
#include <string>
#include <vector>

#include "izro/algebra.hpp"
#include "izro/term.hpp"

namespace oracles {

// Straight-line recursive evaluator; no compilation, no sharing.
inline int naive_eval(const izro::FiniteAlgebra& A, const izro::Term& t,
                      const std::map<std::string, int>& env) {
  using K = izro::Term::Kind;
  switch (t.kind()) {
    case K::Zero:
      return 0;
    case K::Var:
      return env.at(t.var_name());
    case K::Comp:
      return A.op(naive_eval(A, t.inner(), env), 0);
    case K::Arrow:
      return A.op(naive_eval(A, t.lhs(), env),
                  naive_eval(A, t.rhs(), env));
  }
  return -1;
}

inline bool naive_check(const izro::FiniteAlgebra& A,
                        const izro::Identity& id) {
  std::vector<std::string> vars;
  {
    std::map<std::string, bool> seen;
    for (auto& v : id.lhs.variables()) seen[v] = true;
    for (auto& v : id.rhs.variables()) seen[v] = true;
    for (auto& [v, _] : seen) vars.push_back(v);
  }
  std::vector<int> vals(vars.size(), 0);
  for (;;) {
    std::map<std::string, int> env;
    for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = vals[i];
    if (naive_eval(A, id.lhs, env) != naive_eval(A, id.rhs, env))
      return false;
    int i = static_cast<int>(vals.size()) - 1;
    while (i >= 0 && vals[i] == A.size() - 1) vals[i--] = 0;
    if (i < 0) return true;
    ++vals[i];
  }
}

struct Fuzzer {
  std::mt19937 rng;

  explicit Fuzzer(unsigned seed) : rng(seed) {}

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  izro::Term term(int max_depth, int num_vars = 3) {
    static const char* names[] = {"x", "y", "z", "u", "v", "w"};
    int choice = max_depth == 0 ? pick(2) : pick(4);
    switch (choice) {
      case 0:
        return izro::Term::zero();
      case 1:
        return izro::Term::var(names[pick(num_vars)]);
      case 2:
        return izro::Term::comp(term(max_depth - 1, num_vars));
      default:
        return izro::Term::arrow(term(max_depth - 1, num_vars),
                                 term(max_depth - 1, num_vars));
    }
  }

  izro::FiniteAlgebra algebra(int max_n = 4) {
    int n = 2 + pick(max_n - 1);
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (auto& row : table)
      for (auto& cell : row) cell = pick(n);
    return izro::FiniteAlgebra(std::move(table));
  }
};

}  // namespace oracles

#endif
