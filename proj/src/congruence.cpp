#include "izro/congruence.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace izro {

namespace {

// Small union-find over 0..n-1.
struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  // Returns true if the classes were distinct.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

Partition partition_from_union_find(UnionFind& uf) {
  std::vector<int> cls(uf.parent.size());
  for (std::size_t i = 0; i < uf.parent.size(); ++i)
    cls[i] = uf.find(static_cast<int>(i));
  return Partition::from_classes(cls);
}

}  // namespace

Partition Partition::identity(int n) {
  std::vector<int> cls(n);
  std::iota(cls.begin(), cls.end(), 0);
  return from_classes(cls);
}

Partition Partition::full(int n) {
  return from_classes(std::vector<int>(n, 0));
}

Partition Partition::from_classes(const std::vector<int>& class_of) {
  Partition p;
  p.n_ = static_cast<int>(class_of.size());
  std::vector<std::pair<int, int>> tagged;  // (class id, element)
  for (int i = 0; i < p.n_; ++i) tagged.emplace_back(class_of[i], i);
  std::sort(tagged.begin(), tagged.end(),
            [](auto& a, auto& b) { return a.second < b.second; });
  std::map<int, int> first_seen;  // class id -> block index
  p.block_index_.assign(p.n_, -1);
  for (auto& [cls, elem] : tagged) {
    auto it = first_seen.find(cls);
    if (it == first_seen.end()) {
      it = first_seen.emplace(cls, static_cast<int>(p.blocks_.size())).first;
      p.blocks_.emplace_back();
    }
    p.blocks_[it->second].push_back(elem);
    p.block_index_[elem] = it->second;
  }
  return p;
}

Partition Partition::from_blocks(int n, std::vector<std::vector<int>> blocks) {
  std::vector<int> cls(n, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (int e : blocks[b]) {
      if (e < 0 || e >= n)
        throw Error("partition element out of range: " + std::to_string(e));
      if (cls[e] != -1)
        throw Error("partition blocks overlap at " + std::to_string(e));
      cls[e] = static_cast<int>(b);
    }
  }
  for (int i = 0; i < n; ++i)
    if (cls[i] == -1)
      throw Error("partition misses element " + std::to_string(i));
  return from_classes(cls);
}

bool Partition::finer_or_equal(const Partition& other) const {
  for (const auto& block : blocks_)
    for (std::size_t i = 1; i < block.size(); ++i)
      if (!other.related(block[0], block[i])) return false;
  return true;
}

Partition Partition::meet(const Partition& other) const {
  std::vector<int> cls(n_);
  for (int i = 0; i < n_; ++i)
    cls[i] = block_of(i) * other.block_count() + other.block_of(i);
  return from_classes(cls);
}

Partition Partition::join(const Partition& other) const {
  UnionFind uf(n_);
  for (const auto& block : blocks_)
    for (std::size_t i = 1; i < block.size(); ++i)
      uf.unite(block[0], block[i]);
  for (const auto& block : other.blocks())
    for (std::size_t i = 1; i < block.size(); ++i)
      uf.unite(block[0], block[i]);
  return partition_from_union_find(uf);
}

bool Partition::operator<(const Partition& o) const {
  if (block_count() != o.block_count())
    return block_count() > o.block_count();  // finer (more blocks) first
  return blocks_ < o.blocks_;
}

std::string Partition::str() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (b) out << ",";
    out << "[";
    for (std::size_t i = 0; i < blocks_[b].size(); ++i) {
      if (i) out << ",";
      out << blocks_[b][i];
    }
    out << "]";
  }
  out << "]";
  return out.str();
}

Relation partition_to_relation(const Partition& p) {
  Relation rel;
  for (const auto& block : p.blocks())
    for (int a : block)
      for (int b : block) rel.emplace(a, b);
  return rel;
}

std::optional<std::tuple<int, int, int, int>> congruence_witness(
    const FiniteAlgebra& A, const Partition& p) {
  int n = A.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!p.related(a, b)) continue;
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          if (!p.related(c, d)) continue;
          if (!p.related(A.op(a, c), A.op(b, d)))
            return std::tuple{a, b, c, d};
        }
    }
  return std::nullopt;
}

CongruenceCheck is_congruence(const FiniteAlgebra& A, const Relation& rel) {
  int n = A.size();
  CongruenceCheck out;
  for (int a = 0; a < n; ++a) {
    if (!rel.count({a, a})) {
      out.diagnostic =
          "not an equivalence: missing (" + std::to_string(a) + "," +
          std::to_string(a) + ")";
      return out;
    }
  }
  for (auto& [a, b] : rel) {
    if (a < 0 || a >= n || b < 0 || b >= n) {
      out.diagnostic = "pair out of range: (" + std::to_string(a) + "," +
                       std::to_string(b) + ")";
      return out;
    }
    if (!rel.count({b, a})) {
      out.diagnostic = "not an equivalence: missing (" + std::to_string(b) +
                       "," + std::to_string(a) + ")";
      return out;
    }
  }
  for (auto& [a, b] : rel)
    for (auto& [b2, c] : rel) {
      if (b2 != b) continue;
      if (!rel.count({a, c})) {
        out.diagnostic = "not an equivalence: missing (" + std::to_string(a) +
                         "," + std::to_string(c) + ") from (" +
                         std::to_string(a) + "," + std::to_string(b) +
                         ") and (" + std::to_string(b) + "," +
                         std::to_string(c) + ")";
        return out;
      }
    }
  out.is_equivalence = true;

  UnionFind uf(n);
  for (auto& [a, b] : rel) uf.unite(a, b);
  Partition p = partition_from_union_find(uf);
  if (auto w = congruence_witness(A, p)) {
    auto [a, b, c, d] = *w;
    out.diagnostic = "incompatible at (" + std::to_string(a) + "," +
                     std::to_string(b) + "," + std::to_string(c) + "," +
                     std::to_string(d) + "): " + std::to_string(A.op(a, c)) +
                     " !~ " + std::to_string(A.op(b, d));
    return out;
  }
  out.is_congruence = true;
  return out;
}

Partition principal_congruence(const FiniteAlgebra& A, int a, int b) {
  int n = A.size();
  if (a < 0 || a >= n || b < 0 || b >= n)
    throw Error("principal_congruence: element out of range");
  UnionFind uf(n);
  std::vector<std::pair<int, int>> work;
  if (uf.unite(a, b)) work.emplace_back(a, b);
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    for (int c = 0; c < n; ++c) {
      int l1 = A.op(c, x), r1 = A.op(c, y);
      if (uf.unite(l1, r1)) work.emplace_back(l1, r1);
      int l2 = A.op(x, c), r2 = A.op(y, c);
      if (uf.unite(l2, r2)) work.emplace_back(l2, r2);
    }
  }
  return partition_from_union_find(uf);
}

std::vector<Partition> all_congruences(const FiniteAlgebra& A) {
  int n = A.size();
  if (n > 12)
    throw BudgetError("all_congruences: size budget exceeded (|A| > 12)");
  std::set<Partition> found;
  found.insert(Partition::identity(n));
  std::vector<Partition> frontier;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      Partition p = principal_congruence(A, a, b);
      if (found.insert(p).second) frontier.push_back(p);
    }
  // Close under join; principal congruences generate the lattice.
  std::vector<Partition> all(found.begin(), found.end());
  while (!frontier.empty()) {
    Partition p = frontier.back();
    frontier.pop_back();
    for (std::size_t i = 0; i < all.size(); ++i) {
      Partition j = p.join(all[i]);
      if (found.insert(j).second) {
        all.push_back(j);
        frontier.push_back(j);
      }
    }
  }
  std::vector<Partition> out(found.begin(), found.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool is_simple(const FiniteAlgebra& A) {
  int n = A.size();
  if (n < 2) throw Error("simplicity is undefined for the trivial algebra");
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!principal_congruence(A, a, b).is_full()) return false;
  return true;
}

std::pair<bool, std::optional<Partition>> is_subdirectly_irreducible(
    const FiniteAlgebra& A) {
  int n = A.size();
  if (n < 2)
    throw Error("subdirect irreducibility is undefined for the trivial "
                "algebra");
  // The intersection of all non-identity congruences equals the
  // intersection of all principal congruences on distinct pairs.
  std::optional<Partition> monolith;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      Partition p = principal_congruence(A, a, b);
      monolith = monolith ? monolith->meet(p) : p;
      if (monolith->is_identity()) return {false, std::nullopt};
    }
  return {true, monolith};
}

RelationKind relation_kind_from_string(const std::string& s) {
  if (s == "r1" || s == "R1") return RelationKind::R1;
  if (s == "rpp" || s == "r''" || s == "Rpp") return RelationKind::Rdoubleprime;
  if (s == "rp" || s == "r'" || s == "Rp") return RelationKind::Rprime;
  if (s == "rt" || s == "RT") return RelationKind::RT;
  throw Error("unknown relation kind " + s + " (expected r1|rpp|rp|rt)");
}

std::string to_string(RelationKind k) {
  switch (k) {
    case RelationKind::R1: return "R1";
    case RelationKind::Rdoubleprime: return "R''";
    case RelationKind::Rprime: return "R'";
    case RelationKind::RT: return "RT";
  }
  return "?";
}

Relation derived_relation(const FiniteAlgebra& A, RelationKind kind) {
  int n = A.size();
  Relation rel;
  switch (kind) {
    case RelationKind::R1: {
      CheckResult i20 = check_identity(A, builtin_catalog().identity("I20"));
      if (!i20.holds) {
        std::string at;
        if (i20.counterexample)
          at = " (fails at x = " +
               std::to_string(i20.counterexample->assignment.begin()->second) +
               ")";
        throw Error("R1 requires x'' = x" + at);
      }
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          bool xy = A.op(A.op(x, A.comp(y)), x) == x;
          bool yx = A.op(A.op(y, A.comp(x)), y) == y;
          if (xy && yx) rel.emplace(x, y);
        }
      return rel;
    }
    case RelationKind::Rdoubleprime: {
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (A.comp(A.comp(x)) == A.comp(A.comp(y))) rel.emplace(x, y);
      return rel;
    }
    case RelationKind::Rprime: {
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (A.comp(x) == A.comp(y)) rel.emplace(x, y);
      return rel;
    }
    case RelationKind::RT: {
      std::vector<bool> in_t(n, false);
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (A.op(b, c) != 0) in_t[b] = true;
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (in_t[x] == in_t[y]) rel.emplace(x, y);
      return rel;
    }
  }
  throw Error("unknown relation kind");
}

}  // namespace izro
