#include "izro/variety.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace izro {

namespace {

struct TupleHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = v.size();
    for (int x : v) h = h * 1000003u + static_cast<std::size_t>(x) + 1;
    return h;
  }
};

// Product-of-powers scaffolding shared by the free-algebra closure and
// the identity-enumeration closure.
struct Ambient {
  std::vector<const FiniteAlgebra*> factors;  // one per coordinate
  std::vector<std::string> names;

  static Ambient powers(const std::vector<FiniteAlgebra>& K, int k) {
    Ambient a;
    for (const FiniteAlgebra& B : K) {
      long long cols = 1;
      for (int i = 0; i < k; ++i) cols *= B.size();
      for (long long c = 0; c < cols; ++c) {
        a.factors.push_back(&B);
        a.names.push_back(B.name());
      }
    }
    return a;
  }

  std::vector<int> zero() const {
    return std::vector<int>(factors.size(), 0);
  }

  // Generator i: its value at a coordinate is the i-th component of
  // that coordinate's assignment tuple (assignments in lexicographic
  // order, last generator varying fastest).
  std::vector<int> generator(const std::vector<FiniteAlgebra>& K, int k,
                             int i) const {
    std::vector<int> g;
    for (const FiniteAlgebra& B : K) {
      long long cols = 1;
      for (int j = 0; j < k; ++j) cols *= B.size();
      for (long long c = 0; c < cols; ++c) {
        long long rem = c;
        int value = 0;
        for (int j = k - 1; j >= 0; --j) {
          int comp = static_cast<int>(rem % B.size());
          rem /= B.size();
          if (j == i) value = comp;
        }
        g.push_back(value);
      }
    }
    return g;
  }

  std::vector<int> apply(const std::vector<int>& a,
                         const std::vector<int>& b) const {
    std::vector<int> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      out[i] = factors[i]->op(a[i], b[i]);
    return out;
  }
};

std::string gen_name(int i) {
  static const char* names[] = {"x", "y", "z", "u", "v", "w"};
  if (i < 6) return names[i];
  return "x" + std::to_string(i);
}

}  // namespace

FreeAlgebraResult free_algebra(const std::vector<FiniteAlgebra>& K, int k,
                               std::size_t element_budget) {
  if (K.empty()) throw Error("free_algebra: empty generating class");
  if (k < 0) throw Error("free_algebra: negative generator count");
  Ambient ambient = Ambient::powers(K, k);

  std::unordered_map<std::vector<int>, int, TupleHash> index;
  std::vector<std::vector<int>> elements;
  auto intern = [&](std::vector<int> t) {
    auto it = index.find(t);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(elements.size());
    if (elements.size() >= element_budget)
      throw BudgetError("free_algebra: element budget exceeded (" +
                        std::to_string(element_budget) + ")");
    index.emplace(t, id);
    elements.push_back(std::move(t));
    return id;
  };

  intern(ambient.zero());
  std::vector<int> generators;
  for (int i = 0; i < k; ++i)
    generators.push_back(intern(ambient.generator(K, k, i)));

  // Closure under the product operation, breadth-first.
  for (std::size_t lo = 0; lo < elements.size(); ++lo) {
    for (std::size_t hi = 0; hi <= lo; ++hi) {
      // Copies: intern may reallocate `elements`.
      std::vector<int> a = elements[lo];
      std::vector<int> b = elements[hi];
      intern(ambient.apply(a, b));
      if (hi != lo) intern(ambient.apply(b, a));
    }
  }

  int n = static_cast<int>(elements.size());
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      table[i][j] = index.at(ambient.apply(elements[i], elements[j]));

  FreeAlgebraResult out{FiniteAlgebra(std::move(table)), generators,
                        ambient.names, elements};
  std::string name = "F(";
  for (std::size_t i = 0; i < K.size(); ++i)
    name += (i ? "," : "") + K[i].name();
  name += ";" + std::to_string(k) + ")";
  out.algebra.set_name(name);
  return out;
}

namespace {

// Identities that witness the handful of separations arising between
// small implication zroupoids; tried before any search.
const std::vector<Identity>& separation_battery() {
  static const std::vector<Identity> battery = [] {
    std::vector<Identity> b;
    auto add = [&](const char* text, const char* name) {
      ConditionalIdentity ci = parse_identity(text, name);
      b.push_back(ci.conclusion);
    };
    add("((x -> y) -> x) = x", "DM");
    add("(x -> x) = 0'", "BA");
    add("((x -> x)' -> (y -> y)') = (x -> x)", "KL1");
    add("((y -> y) -> (x -> x)) = (x -> x)", "KL2");
    add("x'' = x", "I20");
    add("(0' -> x) = x", "L3.2a");
    add("(x -> y) = 0", "zero-arrow");
    add("(0 -> x) = (0 -> y)", "zero-row-constant");
    add("(x -> y) = (y -> x)", "commutativity");
    add("((x -> x) -> (y -> y)) = ((y -> y) -> (x -> x))", "height-commutativity");
    return b;
  }();
  return battery;
}

bool holds_in_all(const Identity& id, const std::vector<FiniteAlgebra>& K) {
  return std::all_of(K.begin(), K.end(), [&](const FiniteAlgebra& B) {
    return check_identity(B, id).holds;
  });
}

// Searches an embedding of A into B (injective, constant- and
// operation-preserving). Returns the image map A -> B.
std::optional<std::vector<int>> find_embedding(const FiniteAlgebra& A,
                                               const FiniteAlgebra& B) {
  if (A.size() > B.size()) return std::nullopt;
  std::vector<int> img(A.size(), -1);
  std::vector<bool> used(B.size(), false);
  img[0] = 0;
  used[0] = true;

  auto consistent = [&](int placed) {
    for (int a = 0; a <= placed; ++a) {
      for (int b = 0; b <= placed; ++b) {
        int ab = A.op(a, b);
        if (ab <= placed && B.op(img[a], img[b]) != img[ab]) return false;
        if (ab > placed) {
          // Image must stay inside the chosen prefix eventually; defer.
          continue;
        }
      }
    }
    return true;
  };

  std::function<bool(int)> place = [&](int a) -> bool {
    if (a == A.size()) {
      // Full check: the image set must be closed pointwise.
      for (int x = 0; x < A.size(); ++x)
        for (int y = 0; y < A.size(); ++y)
          if (B.op(img[x], img[y]) != img[A.op(x, y)]) return false;
      return true;
    }
    for (int b = 1; b < B.size(); ++b) {
      if (used[b]) continue;
      img[a] = b;
      used[b] = true;
      if (consistent(a) && place(a + 1)) return true;
      used[b] = false;
      img[a] = -1;
    }
    return false;
  };

  if (A.size() == 1 || place(1)) return img;
  return std::nullopt;
}

struct ProductView {
  std::vector<const FiniteAlgebra*> factors;
  std::vector<std::string> names;
  std::vector<int> sizes;

  int size() const {
    int n = 1;
    for (int s : sizes) n *= s;
    return n;
  }
  std::vector<int> decode(int code) const {
    std::vector<int> t(sizes.size());
    for (int i = static_cast<int>(sizes.size()) - 1; i >= 0; --i) {
      t[i] = code % sizes[i];
      code /= sizes[i];
    }
    return t;
  }
  int op(int a, int b) const {
    auto ta = decode(a), tb = decode(b);
    int code = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i)
      code = code * sizes[i] + factors[i]->op(ta[i], tb[i]);
    return code;
  }
  FiniteAlgebra materialize() const {
    int n = size();
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) table[i][j] = op(i, j);
    return FiniteAlgebra(std::move(table));
  }
};

// Closure over K-tuples with a parallel signature for A. Detects two
// construction terms that agree across K but not in A.
struct DivergenceSearch {
  struct Element {
    std::vector<int> k_tuple;
    std::vector<int> a_signature;
    Term term;
    int depth;
  };

  static std::optional<Identity> run(const FiniteAlgebra& A,
                                     const std::vector<FiniteAlgebra>& K,
                                     int vars, int max_depth,
                                     std::size_t budget) {
    Ambient ambient = Ambient::powers(K, vars);
    // A-signature: values over all |A|^vars assignments.
    long long a_cols = 1;
    for (int i = 0; i < vars; ++i) a_cols *= A.size();

    auto a_generator = [&](int i) {
      std::vector<int> sig(a_cols);
      for (long long c = 0; c < a_cols; ++c) {
        long long rem = c;
        int value = 0;
        for (int j = vars - 1; j >= 0; --j) {
          int comp = static_cast<int>(rem % A.size());
          rem /= A.size();
          if (j == i) value = comp;
        }
        sig[c] = value;
      }
      return sig;
    };
    auto a_apply = [&](const std::vector<int>& x, const std::vector<int>& y) {
      std::vector<int> out(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) out[i] = A.op(x[i], y[i]);
      return out;
    };

    std::unordered_map<std::vector<int>, int, TupleHash> index;
    std::vector<Element> elements;
    std::optional<Identity> found;

    auto intern = [&](std::vector<int> kt, std::vector<int> sig, Term term,
                      int depth) {
      auto it = index.find(kt);
      if (it != index.end()) {
        if (elements[it->second].a_signature != sig && !found)
          found = Identity{elements[it->second].term, term, {}};
        return;
      }
      if (elements.size() >= budget) return;
      index.emplace(kt, static_cast<int>(elements.size()));
      elements.push_back({std::move(kt), std::move(sig), std::move(term),
                          depth});
    };

    intern(ambient.zero(), std::vector<int>(a_cols, 0), Term::zero(), 0);
    for (int i = 0; i < vars && !found; ++i)
      intern(ambient.generator(K, vars, i), a_generator(i),
             Term::var(gen_name(i)), 0);

    for (std::size_t lo = 0; lo < elements.size() && !found; ++lo) {
      for (std::size_t hi = 0; hi <= lo && !found; ++hi) {
        Element a = elements[lo];
        Element b = elements[hi];
        int depth = std::max(a.depth, b.depth) + 1;
        if (depth > max_depth) continue;
        intern(ambient.apply(a.k_tuple, b.k_tuple),
               a_apply(a.a_signature, b.a_signature),
               Term::arrow(a.term, b.term), depth);
        if (hi != lo && !found)
          intern(ambient.apply(b.k_tuple, a.k_tuple),
                 a_apply(b.a_signature, a.a_signature),
                 Term::arrow(b.term, a.term), depth);
      }
    }
    return found;
  }
};

}  // namespace

bool validate_member_witness(const FiniteAlgebra& A,
                             const std::vector<FiniteAlgebra>& K,
                             const MemberWitness& w, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  std::map<std::string, const FiniteAlgebra*> by_name;
  for (const FiniteAlgebra& B : K) by_name[B.name()] = &B;
  std::vector<const FiniteAlgebra*> factors;
  for (const std::string& n : w.factor_names) {
    auto it = by_name.find(n);
    if (it == by_name.end()) return fail("factor " + n + " not in K");
    factors.push_back(it->second);
  }
  if (w.subuniverse.size() != w.map_to_a.size())
    return fail("map and subuniverse sizes differ");

  std::map<std::vector<int>, int> id_of;
  for (std::size_t i = 0; i < w.subuniverse.size(); ++i) {
    if (w.subuniverse[i].size() != factors.size())
      return fail("tuple arity mismatch");
    for (std::size_t c = 0; c < factors.size(); ++c)
      if (w.subuniverse[i][c] < 0 ||
          w.subuniverse[i][c] >= factors[c]->size())
        return fail("tuple coordinate out of range");
    id_of[w.subuniverse[i]] = static_cast<int>(i);
  }
  // Constant present and mapped to the constant.
  auto zit = id_of.find(std::vector<int>(factors.size(), 0));
  if (zit == id_of.end()) return fail("constant tuple missing");
  if (w.map_to_a[zit->second] != 0) return fail("constant not preserved");

  std::vector<bool> hit(A.size(), false);
  for (int v : w.map_to_a) {
    if (v < 0 || v >= A.size()) return fail("image out of range");
    hit[v] = true;
  }
  if (!std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }))
    return fail("map not surjective");

  for (std::size_t i = 0; i < w.subuniverse.size(); ++i)
    for (std::size_t j = 0; j < w.subuniverse.size(); ++j) {
      std::vector<int> prod(factors.size());
      for (std::size_t c = 0; c < factors.size(); ++c)
        prod[c] = factors[c]->op(w.subuniverse[i][c], w.subuniverse[j][c]);
      auto it = id_of.find(prod);
      if (it == id_of.end()) return fail("subuniverse not closed");
      if (w.map_to_a[it->second] !=
          A.op(w.map_to_a[i], w.map_to_a[j]))
        return fail("map not a homomorphism");
    }
  return true;
}

MembershipVerdict in_variety(const FiniteAlgebra& A,
                             const std::vector<FiniteAlgebra>& K,
                             const Effort& effort) {
  MembershipVerdict v;
  if (K.empty()) {
    if (A.size() == 1) {
      v.kind = MembershipVerdict::Kind::Member;
      v.witness = MemberWitness{{}, {{}}, {0}};
      return v;
    }
    v.kind = MembershipVerdict::Kind::NonMember;
    v.separating_identity = Identity{Term::var("x"), Term::var("y"), {}};
    return v;
  }

  // Trivial member: the one-element algebra lies in every variety.
  if (A.size() == 1) {
    v.kind = MembershipVerdict::Kind::Member;
    v.witness = MemberWitness{{K.front().name()}, {{0}}, {0}};
    return v;
  }

  // Known separating identities first: cheap and gives readable
  // witnesses.
  for (const Identity& id : separation_battery()) {
    if (!check_identity(A, id).holds && holds_in_all(id, K)) {
      v.kind = MembershipVerdict::Kind::NonMember;
      v.separating_identity = id;
      return v;
    }
  }

  // Member fast path: embeddings into single factors, then into small
  // products.
  for (const FiniteAlgebra& B : K) {
    if (auto img = find_embedding(A, B)) {
      MemberWitness w;
      w.factor_names = {B.name()};
      for (int a = 0; a < A.size(); ++a)
        w.subuniverse.push_back({(*img)[a]});
      // Close the image under B's operation (it already is; keep the
      // enumeration order stable) and invert.
      w.map_to_a.resize(A.size());
      std::iota(w.map_to_a.begin(), w.map_to_a.end(), 0);
      v.kind = MembershipVerdict::Kind::Member;
      v.witness = std::move(w);
      return v;
    }
  }
  for (int power = 2; power <= effort.max_power; ++power) {
    // Combinations with repetition of K factors.
    std::vector<int> pick(power, 0);
    for (;;) {
      ProductView pv;
      long long psize = 1;
      for (int i : pick) {
        pv.factors.push_back(&K[i]);
        pv.names.push_back(K[i].name());
        pv.sizes.push_back(K[i].size());
        psize *= K[i].size();
      }
      if (psize <= 64) {
        FiniteAlgebra P = pv.materialize();
        if (auto img = find_embedding(A, P)) {
          MemberWitness w;
          w.factor_names = pv.names;
          for (int a = 0; a < A.size(); ++a)
            w.subuniverse.push_back(pv.decode((*img)[a]));
          w.map_to_a.resize(A.size());
          std::iota(w.map_to_a.begin(), w.map_to_a.end(), 0);
          v.kind = MembershipVerdict::Kind::Member;
          v.witness = std::move(w);
          return v;
        }
      }
      int i = power - 1;
      while (i >= 0 && pick[i] == static_cast<int>(K.size()) - 1) --i;
      if (i < 0) break;
      int next = pick[i] + 1;
      for (int j = i; j < power; ++j) pick[j] = next;
    }
  }

  // Exact route: A is in V(K) iff A is a homomorphic image of the free
  // algebra on |A| generators, with the generators sent to the elements
  // of A. Build the free closure and watch for two construction terms
  // that collapse in K but not in A.
  {
    Ambient ambient = Ambient::powers(K, A.size());
    std::unordered_map<std::vector<int>, int, TupleHash> index;
    struct El {
      std::vector<int> tuple;
      int a_value;
      Term term;
    };
    std::vector<El> elements;
    std::optional<Identity> diverged;
    bool overflow = false;

    auto intern = [&](std::vector<int> t, int a_value, const Term& term) {
      auto it = index.find(t);
      if (it != index.end()) {
        if (elements[it->second].a_value != a_value && !diverged)
          diverged = Identity{elements[it->second].term, term, {}};
        return;
      }
      if (elements.size() >= effort.free_budget) {
        overflow = true;
        return;
      }
      index.emplace(t, static_cast<int>(elements.size()));
      elements.push_back({std::move(t), a_value, term});
    };

    intern(ambient.zero(), 0, Term::zero());
    for (int i = 0; i < A.size() && !diverged; ++i)
      intern(ambient.generator(K, A.size(), i), i, Term::var(gen_name(i)));

    for (std::size_t lo = 0; lo < elements.size() && !diverged && !overflow;
         ++lo) {
      for (std::size_t hi = 0; hi <= lo && !diverged; ++hi) {
        El a = elements[lo];
        El b = elements[hi];
        intern(ambient.apply(a.tuple, b.tuple), A.op(a.a_value, b.a_value),
               Term::arrow(a.term, b.term));
        if (hi != lo && !diverged)
          intern(ambient.apply(b.tuple, a.tuple), A.op(b.a_value, a.a_value),
                 Term::arrow(b.term, a.term));
      }
    }

    if (diverged) {
      v.kind = MembershipVerdict::Kind::NonMember;
      v.separating_identity = *diverged;
      return v;
    }
    if (!overflow) {
      // Closure completed with a consistent A-side: that is a
      // surjective homomorphism.
      MemberWitness w;
      w.factor_names = ambient.names;
      for (const El& e : elements) {
        w.subuniverse.push_back(e.tuple);
        w.map_to_a.push_back(e.a_value);
      }
      v.kind = MembershipVerdict::Kind::Member;
      v.witness = std::move(w);
      return v;
    }
  }

  // Depth-bounded identity enumeration as the last resort.
  if (auto id = DivergenceSearch::run(A, K, effort.max_vars,
                                      effort.max_depth, effort.free_budget)) {
    v.kind = MembershipVerdict::Kind::NonMember;
    v.separating_identity = *id;
    return v;
  }
  v.kind = MembershipVerdict::Kind::Unknown;
  v.note = "budgets exhausted (free_budget=" +
           std::to_string(effort.free_budget) + ")";
  return v;
}

std::string VarietyNode::label() const {
  if (canonical_key.empty()) return "T";
  std::string out;
  for (std::size_t i = 0; i < canonical_key.size(); ++i)
    out += (i ? "," : "") + canonical_key[i];
  return out;
}

std::vector<std::vector<FiniteAlgebra>> all_subsets(
    const std::vector<FiniteAlgebra>& base) {
  std::vector<std::vector<FiniteAlgebra>> out;
  std::size_t n = base.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<FiniteAlgebra> fam;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) fam.push_back(base[i]);
    out.push_back(std::move(fam));
  }
  return out;
}

VarietyPoset variety_poset(
    const std::vector<std::vector<FiniteAlgebra>>& families,
    const Effort& effort) {
  // Universe of distinct generators, by name.
  std::map<std::string, FiniteAlgebra> universe;
  for (const auto& fam : families)
    for (const FiniteAlgebra& A : fam) {
      if (A.name().empty())
        throw Error("variety_poset: generators need names");
      auto it = universe.find(A.name());
      if (it == universe.end())
        universe.emplace(A.name(), A);
      else if (!(it->second == A))
        throw Error("variety_poset: two different algebras named " +
                    A.name());
    }

  // Deduplicate families as name sets, keeping first-seen order.
  std::vector<std::vector<std::string>> fams;
  std::set<std::vector<std::string>> seen;
  for (const auto& fam : families) {
    std::set<std::string> names;
    for (const FiniteAlgebra& A : fam) names.insert(A.name());
    std::vector<std::string> key(names.begin(), names.end());
    if (seen.insert(key).second) fams.push_back(key);
  }

  // Membership matrix: algebra name x family index.
  auto family_algebras = [&](const std::vector<std::string>& fam) {
    std::vector<FiniteAlgebra> out;
    for (const std::string& n : fam) out.push_back(universe.at(n));
    return out;
  };
  std::map<std::pair<std::string, std::vector<std::string>>, bool> member;
  std::vector<std::string> undecided;
  for (const auto& [name, A] : universe) {
    for (const auto& fam : fams) {
      MembershipVerdict mv = in_variety(A, family_algebras(fam), effort);
      if (mv.kind == MembershipVerdict::Kind::Unknown) {
        std::string desc = name + " in V(";
        for (std::size_t i = 0; i < fam.size(); ++i)
          desc += (i ? "," : "") + fam[i];
        undecided.push_back(desc + ")");
        continue;
      }
      member[{name, fam}] = mv.is_member();
    }
  }
  if (!undecided.empty()) {
    std::string msg = "variety_poset: undecided memberships:";
    for (const auto& u : undecided) msg += " " + u;
    throw Error(msg);
  }

  // V(S) <= V(T) iff every generator of S is a member of V(T).
  auto contained = [&](const std::vector<std::string>& s,
                       const std::vector<std::string>& t) {
    return std::all_of(s.begin(), s.end(), [&](const std::string& a) {
      return member.at({a, t});
    });
  };

  // Group families by mutual containment.
  std::vector<int> group_of(fams.size(), -1);
  std::vector<std::vector<int>> groups;
  for (std::size_t i = 0; i < fams.size(); ++i) {
    if (group_of[i] != -1) continue;
    group_of[i] = static_cast<int>(groups.size());
    groups.push_back({static_cast<int>(i)});
    for (std::size_t j = i + 1; j < fams.size(); ++j) {
      if (group_of[j] == -1 && contained(fams[i], fams[j]) &&
          contained(fams[j], fams[i])) {
        group_of[j] = group_of[i];
        groups.back().push_back(static_cast<int>(j));
      }
    }
  }

  // Canonical key per group: maximal generators of the union of its
  // families, one least-named representative per mutual-membership
  // class.
  auto group_key = [&](const std::vector<int>& group) {
    std::set<std::string> gens;
    for (int f : group)
      for (const std::string& n : fams[f]) gens.insert(n);
    std::vector<std::string> names(gens.begin(), gens.end());
    std::vector<std::string> key;
    for (const std::string& a : names) {
      bool maximal = true;
      bool least_of_class = true;
      for (const std::string& b : names) {
        if (a == b) continue;
        bool ab = member.at({a, {b}});
        bool ba = member.at({b, {a}});
        if (ab && !ba) maximal = false;               // strictly below b
        if (ab && ba && b < a) least_of_class = false;  // tied, later name
      }
      if (maximal && least_of_class) key.push_back(a);
    }
    return key;
  };

  // The key computation needs singleton memberships; make sure they are
  // present even if the input families never listed singletons.
  {
    std::vector<std::string> all_names;
    for (auto& [name, A] : universe) all_names.push_back(name);
    for (const std::string& a : all_names)
      for (const std::string& b : all_names) {
        std::vector<std::string> fam{b};
        if (!member.count({a, fam})) {
          MembershipVerdict mv =
              in_variety(universe.at(a), {universe.at(b)}, effort);
          if (mv.kind == MembershipVerdict::Kind::Unknown)
            throw Error("variety_poset: undecided membership " + a +
                        " in V(" + b + ")");
          member[{a, fam}] = mv.is_member();
        }
      }
  }

  VarietyPoset poset;
  int g = static_cast<int>(groups.size());
  // Containment between groups via representatives.
  std::vector<std::vector<bool>> leq(g, std::vector<bool>(g, false));
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j)
      leq[i][j] = contained(fams[groups[i][0]], fams[groups[j][0]]);

  // Deterministic order: by number of groups below, then by label.
  std::vector<int> order(g);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::pair<int, std::string>> sort_key(g);
  std::vector<std::vector<std::string>> keys(g);
  for (int i = 0; i < g; ++i) {
    keys[i] = group_key(groups[i]);
    int below = 0;
    for (int j = 0; j < g; ++j)
      if (leq[j][i]) ++below;
    std::string label;
    for (auto& k : keys[i]) label += k + ",";
    sort_key[i] = {below, label};
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return sort_key[a] < sort_key[b];
  });
  std::vector<int> rank(g);
  for (int i = 0; i < g; ++i) rank[order[i]] = i;

  poset.nodes.resize(g);
  poset.leq.assign(g, std::vector<bool>(g, false));
  for (int i = 0; i < g; ++i) {
    VarietyNode& node = poset.nodes[rank[i]];
    node.canonical_key = keys[i];
    for (int f : groups[i]) node.families.push_back(fams[f]);
    for (int j = 0; j < g; ++j) poset.leq[rank[i]][rank[j]] = leq[i][j];
  }

  // Hasse edges by transitive reduction.
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      if (i == j || !poset.leq[i][j]) continue;
      bool covered = true;
      for (int k = 0; k < g; ++k) {
        if (k == i || k == j) continue;
        if (poset.leq[i][k] && poset.leq[k][j]) {
          covered = false;
          break;
        }
      }
      if (covered) {
        poset.nodes[j].covers.push_back(i);
        poset.nodes[i].covered_by.push_back(j);
      }
    }
  for (auto& node : poset.nodes) {
    std::sort(node.covers.begin(), node.covers.end());
    std::sort(node.covered_by.begin(), node.covered_by.end());
  }
  return poset;
}

std::string VarietyPoset::to_dot() const {
  std::ostringstream out;
  out << "digraph varieties {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < nodes.size(); ++i)
    out << "  n" << i << " [label=\"" << nodes[i].label() << "\"];\n";
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (int lower : nodes[i].covers)
      out << "  n" << lower << " -> n" << i << ";\n";
  out << "}\n";
  return out.str();
}

std::string VarietyPoset::to_json() const {
  nlohmann::json j;
  j["nodes"] = nlohmann::json::array();
  for (const auto& node : nodes) {
    nlohmann::json n;
    n["label"] = node.label();
    n["key"] = node.canonical_key;
    n["covers"] = node.covers;
    j["nodes"].push_back(n);
  }
  return j.dump(2);
}

LatticeShapeReport check_lattice_shape(const VarietyPoset& poset) {
  LatticeShapeReport report;
  int n = static_cast<int>(poset.nodes.size());
  auto fail = [&](std::string why) {
    report.detail = std::move(why);
    return report;
  };

  // Lattice check: unique join and meet for every pair.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<int> uppers, lowers;
      for (int c = 0; c < n; ++c) {
        if (poset.leq[a][c] && poset.leq[b][c]) uppers.push_back(c);
        if (poset.leq[c][a] && poset.leq[c][b]) lowers.push_back(c);
      }
      auto minimal = [&](const std::vector<int>& xs) {
        std::vector<int> out;
        for (int x : xs) {
          bool is_min = std::none_of(xs.begin(), xs.end(), [&](int y) {
            return y != x && poset.leq[y][x];
          });
          if (is_min) out.push_back(x);
        }
        return out;
      };
      auto maximal = [&](const std::vector<int>& xs) {
        std::vector<int> out;
        for (int x : xs) {
          bool is_max = std::none_of(xs.begin(), xs.end(), [&](int y) {
            return y != x && poset.leq[x][y];
          });
          if (is_max) out.push_back(x);
        }
        return out;
      };
      if (minimal(uppers).size() != 1)
        return fail("no unique join for nodes " + std::to_string(a) + "," +
                    std::to_string(b));
      if (maximal(lowers).size() != 1)
        return fail("no unique meet for nodes " + std::to_string(a) + "," +
                    std::to_string(b));
    }

  // Join-irreducibles: exactly one lower cover.
  std::vector<int> ji;
  for (int i = 0; i < n; ++i)
    if (poset.nodes[i].covers.size() == 1) ji.push_back(i);
  if (ji.size() != 5)
    return fail("expected 5 join-irreducibles, found " +
                std::to_string(ji.size()));

  // Shape of the join-irreducible poset: a 3-chain plus 2 elements
  // incomparable to everything else.
  std::vector<int> chain, isolated;
  for (int x : ji) {
    int comparable = 0;
    for (int y : ji)
      if (y != x && (poset.leq[x][y] || poset.leq[y][x])) ++comparable;
    if (comparable == 0)
      isolated.push_back(x);
    else
      chain.push_back(x);
  }
  if (isolated.size() != 2 || chain.size() != 3)
    return fail("join-irreducibles are not 2 isolated atoms plus a chain");
  std::sort(chain.begin(), chain.end(), [&](int a, int b) {
    return poset.leq[a][b] && a != b;
  });
  if (!(poset.leq[chain[0]][chain[1]] && poset.leq[chain[1]][chain[2]]))
    return fail("comparable join-irreducibles do not form a 3-chain");

  // The (atoms-below, chain-height) map must be an order-isomorphism
  // onto (4-element Boolean lattice) x (4-element chain).
  std::vector<std::pair<int, int>> coord(n);
  std::set<std::pair<int, int>> images;
  for (int x = 0; x < n; ++x) {
    int s = (poset.leq[isolated[0]][x] ? 1 : 0) |
            (poset.leq[isolated[1]][x] ? 2 : 0);
    int h = 0;
    for (int c : chain)
      if (poset.leq[c][x]) ++h;
    coord[x] = {s, h};
    images.insert(coord[x]);
  }
  if (static_cast<int>(images.size()) != n || n != 16)
    return fail("coordinate map is not a bijection onto 2^2 x 4");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      bool product_leq = ((coord[a].first & coord[b].first) ==
                          coord[a].first) &&
                         coord[a].second <= coord[b].second;
      if (product_leq != poset.leq[a][b])
        return fail("order disagrees with the product order at " +
                    std::to_string(a) + "," + std::to_string(b));
    }

  report.ok = true;
  report.detail = "lattice is isomorphic to B_2^2 x C_4";
  return report;
}

}  // namespace izro
