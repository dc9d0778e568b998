#include "izro/algebra.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "izro/congruence.hpp"

namespace izro {

FiniteAlgebra::FiniteAlgebra(std::vector<std::vector<int>> table,
                             std::string name)
    : name_(std::move(name)) {
  n_ = static_cast<int>(table.size());
  if (n_ == 0) throw Error("empty operation table");
  table_.reserve(static_cast<std::size_t>(n_) * n_);
  for (int r = 0; r < n_; ++r) {
    if (static_cast<int>(table[r].size()) != n_)
      throw Error("table row " + std::to_string(r) + " has " +
                  std::to_string(table[r].size()) + " entries, expected " +
                  std::to_string(n_));
    for (int c = 0; c < n_; ++c) {
      int v = table[r][c];
      if (v < 0 || v >= n_)
        throw Error("table entry out of range at (" + std::to_string(r) +
                    "," + std::to_string(c) + "): " + std::to_string(v));
      table_.push_back(static_cast<std::uint8_t>(v));
    }
  }
}

std::vector<std::vector<int>> FiniteAlgebra::rows() const {
  std::vector<std::vector<int>> out(n_, std::vector<int>(n_));
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) out[r][c] = op(r, c);
  return out;
}

FiniteAlgebra validate(const std::vector<std::vector<int>>& table,
                       std::string name) {
  return FiniteAlgebra(table, std::move(name));
}

const FiniteAlgebra& builtin_algebra(const std::string& name) {
  static const std::map<std::string, FiniteAlgebra> algebras = [] {
    std::map<std::string, FiniteAlgebra> m;
    m.emplace("2z", FiniteAlgebra({{0, 0}, {0, 0}}, "2z"));
    m.emplace("2s", FiniteAlgebra({{0, 1}, {1, 1}}, "2s"));
    m.emplace("2b", FiniteAlgebra({{1, 1}, {0, 1}}, "2b"));
    m.emplace("3k", FiniteAlgebra({{1, 1, 1}, {0, 1, 2}, {2, 1, 2}}, "3k"));
    m.emplace("4d", FiniteAlgebra({{1, 1, 1, 1},
                                   {0, 1, 2, 3},
                                   {2, 1, 2, 1},
                                   {3, 1, 1, 3}},
                                  "4d"));
    return m;
  }();
  auto it = algebras.find(name);
  if (it == algebras.end()) throw Error("unknown builtin algebra " + name);
  return it->second;
}

std::vector<std::string> builtin_algebra_names() {
  return {"2z", "2s", "2b", "3k", "4d"};
}

int evaluate(const FiniteAlgebra& A, const Term& t, const Assignment& a) {
  switch (t.kind()) {
    case Term::Kind::Zero:
      return 0;
    case Term::Kind::Var: {
      auto it = a.find(t.var_name());
      if (it == a.end()) throw Error("unbound variable " + t.var_name());
      if (it->second < 0 || it->second >= A.size())
        throw Error("assignment out of range for " + t.var_name());
      return it->second;
    }
    case Term::Kind::Comp:
      return A.comp(evaluate(A, t.inner(), a));
    case Term::Kind::Arrow:
      return A.op(evaluate(A, t.lhs(), a), evaluate(A, t.rhs(), a));
  }
  throw Error("corrupt term");
}

namespace {

// Flat evaluator over a fixed variable ordering; avoids rebuilding maps
// in the n^k assignment loops.
struct Prog {
  // ops: -1 = zero, -2 = comp(top), -3 = arrow(two tops), else var index
  std::vector<int> code;

  static Prog compile(const Term& t, const std::vector<std::string>& vars) {
    Prog p;
    p.emit(t, vars);
    return p;
  }

  void emit(const Term& t, const std::vector<std::string>& vars) {
    switch (t.kind()) {
      case Term::Kind::Zero:
        code.push_back(-1);
        return;
      case Term::Kind::Var: {
        auto it = std::lower_bound(vars.begin(), vars.end(), t.var_name());
        code.push_back(static_cast<int>(it - vars.begin()));
        return;
      }
      case Term::Kind::Comp:
        emit(t.inner(), vars);
        code.push_back(-2);
        return;
      case Term::Kind::Arrow:
        emit(t.lhs(), vars);
        emit(t.rhs(), vars);
        code.push_back(-3);
        return;
    }
  }

  int run(const FiniteAlgebra& A, const std::vector<int>& vals,
          std::vector<int>& stack) const {
    stack.clear();
    for (int op : code) {
      if (op >= 0) {
        stack.push_back(vals[op]);
      } else if (op == -1) {
        stack.push_back(0);
      } else if (op == -2) {
        stack.back() = A.comp(stack.back());
      } else {
        int b = stack.back();
        stack.pop_back();
        stack.back() = A.op(stack.back(), b);
      }
    }
    return stack.back();
  }
};

std::vector<std::string> merged_variables(
    std::initializer_list<const Term*> terms) {
  std::set<std::string> vars;
  for (const Term* t : terms)
    for (auto& v : t->variables()) vars.insert(v);
  return {vars.begin(), vars.end()};
}

Assignment to_assignment(const std::vector<std::string>& vars,
                         const std::vector<int>& vals) {
  Assignment a;
  for (std::size_t i = 0; i < vars.size(); ++i) a[vars[i]] = vals[i];
  return a;
}

// Iterates assignments lexicographically (last variable fastest).
bool next_assignment(std::vector<int>& vals, int n) {
  for (int i = static_cast<int>(vals.size()) - 1; i >= 0; --i) {
    if (++vals[i] < n) return true;
    vals[i] = 0;
  }
  return false;
}

}  // namespace

CheckResult check_identity(const FiniteAlgebra& A, const Identity& id) {
  auto vars = merged_variables({&id.lhs, &id.rhs});
  Prog pl = Prog::compile(id.lhs, vars);
  Prog pr = Prog::compile(id.rhs, vars);
  std::vector<int> vals(vars.size(), 0), stack;
  do {
    int l = pl.run(A, vals, stack);
    int r = pr.run(A, vals, stack);
    if (l != r)
      return {false, Counterexample{to_assignment(vars, vals), l, r}};
  } while (next_assignment(vals, A.size()));
  return {};
}

CheckResult check_conditional(const FiniteAlgebra& A,
                              const ConditionalIdentity& c) {
  std::set<std::string> var_set;
  for (const Identity& h : c.hypotheses) {
    for (auto& v : h.lhs.variables()) var_set.insert(v);
    for (auto& v : h.rhs.variables()) var_set.insert(v);
  }
  for (auto& v : c.conclusion.lhs.variables()) var_set.insert(v);
  for (auto& v : c.conclusion.rhs.variables()) var_set.insert(v);
  std::vector<std::string> vars(var_set.begin(), var_set.end());

  std::vector<std::pair<Prog, Prog>> hyps;
  for (const Identity& h : c.hypotheses)
    hyps.emplace_back(Prog::compile(h.lhs, vars), Prog::compile(h.rhs, vars));
  Prog pl = Prog::compile(c.conclusion.lhs, vars);
  Prog pr = Prog::compile(c.conclusion.rhs, vars);

  std::vector<int> vals(vars.size(), 0), stack;
  do {
    bool applicable = true;
    for (auto& [hl, hr] : hyps) {
      if (hl.run(A, vals, stack) != hr.run(A, vals, stack)) {
        applicable = false;
        break;
      }
    }
    if (!applicable) continue;
    int l = pl.run(A, vals, stack);
    int r = pr.run(A, vals, stack);
    if (l != r)
      return {false, Counterexample{to_assignment(vars, vals), l, r}};
  } while (next_assignment(vals, A.size()));
  return {};
}

CheckResult check_label(const FiniteAlgebra& A, const std::string& label,
                        const IdentityCatalog& catalog) {
  const ConditionalIdentity& entry = catalog.get(label);
  if (entry.is_conditional()) return check_conditional(A, entry);
  return check_identity(A, entry.conclusion);
}

FiniteAlgebra direct_product(const FiniteAlgebra& A, const FiniteAlgebra& B) {
  int na = A.size(), nb = B.size(), n = na * nb;
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a1 = 0; a1 < na; ++a1)
    for (int b1 = 0; b1 < nb; ++b1)
      for (int a2 = 0; a2 < na; ++a2)
        for (int b2 = 0; b2 < nb; ++b2)
          table[a1 * nb + b1][a2 * nb + b2] =
              A.op(a1, a2) * nb + B.op(b1, b2);
  std::string name;
  if (!A.name().empty() && !B.name().empty())
    name = A.name() + "x" + B.name();
  return FiniteAlgebra(std::move(table), std::move(name));
}

std::set<int> subuniverse_closure(const FiniteAlgebra& A,
                                  const std::set<int>& seed) {
  for (int s : seed)
    if (s < 0 || s >= A.size())
      throw Error("seed element out of range: " + std::to_string(s));
  std::set<int> closed = seed;
  closed.insert(0);
  std::vector<int> work(closed.begin(), closed.end());
  while (!work.empty()) {
    int a = work.back();
    work.pop_back();
    for (int b : std::vector<int>(closed.begin(), closed.end())) {
      for (int v : {A.op(a, b), A.op(b, a)}) {
        if (closed.insert(v).second) work.push_back(v);
      }
    }
  }
  return closed;
}

FiniteAlgebra induced_algebra(const FiniteAlgebra& A,
                              const std::set<int>& subuniverse) {
  if (!subuniverse.count(0)) throw Error("subuniverse must contain 0");
  std::vector<int> elems(subuniverse.begin(), subuniverse.end());
  std::map<int, int> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = i;
  int m = static_cast<int>(elems.size());
  std::vector<std::vector<int>> table(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      int v = A.op(elems[i], elems[j]);
      auto it = index.find(v);
      if (it == index.end())
        throw Error("set is not closed: " + std::to_string(elems[i]) +
                    " -> " + std::to_string(elems[j]) + " = " +
                    std::to_string(v));
      table[i][j] = it->second;
    }
  }
  return FiniteAlgebra(std::move(table));
}

FiniteAlgebra quotient(const FiniteAlgebra& A, const Partition& p) {
  if (p.universe_size() != A.size())
    throw Error("partition is over " + std::to_string(p.universe_size()) +
                " elements, algebra has " + std::to_string(A.size()));
  auto compat = congruence_witness(A, p);
  if (compat) {
    auto [a, b, c, d] = *compat;
    throw Error("not a congruence: " + std::to_string(a) + "~" +
                std::to_string(b) + ", " + std::to_string(c) + "~" +
                std::to_string(d) + " but " + std::to_string(A.op(a, c)) +
                "!~" + std::to_string(A.op(b, d)));
  }
  int m = p.block_count();
  // Block of 0 becomes element 0: blocks are sorted by least element.
  std::vector<std::vector<int>> table(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      table[i][j] =
          p.block_of(A.op(p.blocks()[i][0], p.blocks()[j][0]));
  std::string name;
  if (!A.name().empty()) name = A.name() + "/~";
  return FiniteAlgebra(std::move(table), std::move(name));
}

std::vector<std::uint8_t> canonical_form(const FiniteAlgebra& A) {
  int n = A.size();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::uint8_t> best = A.flat_table();
  std::vector<std::uint8_t> candidate(best.size());
  std::vector<int> inv(n);
  // Permutations fixing 0.
  std::sort(perm.begin() + 1, perm.end());
  do {
    for (int i = 0; i < n; ++i) inv[perm[i]] = i;
    bool smaller_or_equal = true;
    for (int i = 0; i < n && smaller_or_equal; ++i) {
      for (int j = 0; j < n; ++j) {
        std::uint8_t v =
            static_cast<std::uint8_t>(perm[A.op(inv[i], inv[j])]);
        candidate[i * n + j] = v;
        if (v != best[i * n + j]) {
          if (v > best[i * n + j]) smaller_or_equal = false;
          else {
            // Strictly smaller so far; finish this candidate.
            for (int jj = j + 1; jj < n; ++jj)
              candidate[i * n + jj] = static_cast<std::uint8_t>(
                  perm[A.op(inv[i], inv[jj])]);
            for (int ii = i + 1; ii < n; ++ii)
              for (int jj = 0; jj < n; ++jj)
                candidate[ii * n + jj] = static_cast<std::uint8_t>(
                    perm[A.op(inv[ii], inv[jj])]);
            best = candidate;
          }
          break;
        }
      }
    }
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return best;
}

bool isomorphic(const FiniteAlgebra& A, const FiniteAlgebra& B) {
  return A.size() == B.size() && canonical_form(A) == canonical_form(B);
}

FiniteAlgebra load_algebra_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open algebra file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return algebra_from_json(buf.str());
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

FiniteAlgebra algebra_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("table"))
    throw Error("expected an object with a \"table\" field");
  std::vector<std::vector<int>> table;
  for (const auto& row : j.at("table")) {
    table.emplace_back();
    for (const auto& v : row) table.back().push_back(v.get<int>());
  }
  std::string name = j.value("name", std::string{});
  FiniteAlgebra A(std::move(table), name);
  if (j.contains("size") && j.at("size").get<int>() != A.size())
    throw Error("declared size " + std::to_string(j.at("size").get<int>()) +
                " does not match table size " + std::to_string(A.size()));
  return A;
}

std::string algebra_to_json(const FiniteAlgebra& A) {
  nlohmann::json j;
  j["name"] = A.name();
  j["size"] = A.size();
  j["table"] = A.rows();
  return j.dump();
}

}  // namespace izro
