#include "izro/search.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

namespace izro {

namespace {

// Postfix program evaluated directly over a partial table; -1 cells are
// "not yet set" and abort the instance.
struct PartialProg {
  std::vector<int> code;  // >= 0 var slot, -1 zero, -2 comp, -3 arrow
  int var_count = 0;

  static PartialProg compile(const Identity& id, bool rhs) {
    PartialProg p;
    const Term& t = rhs ? id.rhs : id.lhs;
    std::set<std::string> vs;
    for (auto& v : id.lhs.variables()) vs.insert(v);
    for (auto& v : id.rhs.variables()) vs.insert(v);
    std::vector<std::string> vars(vs.begin(), vs.end());
    p.var_count = static_cast<int>(vars.size());
    p.emit(t, vars);
    return p;
  }

  void emit(const Term& t, const std::vector<std::string>& vars) {
    switch (t.kind()) {
      case Term::Kind::Zero:
        code.push_back(-1);
        return;
      case Term::Kind::Var:
        code.push_back(static_cast<int>(
            std::lower_bound(vars.begin(), vars.end(), t.var_name()) -
            vars.begin()));
        return;
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

  // Returns -1 when some needed cell is unset, else the value.
  int run(const std::vector<int>& table, int n, const int* vals,
          int* stack) const {
    int sp = 0;
    for (int op : code) {
      if (op >= 0) {
        stack[sp++] = vals[op];
      } else if (op == -1) {
        stack[sp++] = 0;
      } else if (op == -2) {
        int a = stack[sp - 1];
        int v = table[a * n];
        if (v < 0) return -1;
        stack[sp - 1] = v;
      } else {
        int b = stack[--sp];
        int a = stack[sp - 1];
        int v = table[a * n + b];
        if (v < 0) return -1;
        stack[sp - 1] = v;
      }
    }
    return stack[0];
  }
};

struct ExtraIdentity {
  PartialProg lhs, rhs;
};

// Backtracking search over table cells in row-major order. Axiom
// instances are tracked with a watch scheme: every undecided instance
// is parked on the first cell its evaluation needs but that is still
// unset; placing that cell re-evaluates exactly the parked instances.
// A trail restores parking on backtrack, so the pruning is sound for
// the whole subtree under each placement.
class Backtracker {
 public:
  Backtracker(int n, std::vector<ExtraIdentity> extras, long long budget,
              bool inline_canon)
      : n_(n),
        cells_(n * n),
        table_(n * n, -1),
        extras_(std::move(extras)),
        budget_(budget),
        inline_canon_(inline_canon) {
    // Fill the complement column and the 0-> row first: the constant
    // axiom and the two derived constraints live there, so conflicts
    // and forced values surface long before the table body.
    for (int r = 0; r < n_; ++r) order_.push_back(r * n_);
    for (int c = 1; c < n_; ++c) order_.push_back(c);
    for (int r = 1; r < n_; ++r)
      for (int c = 1; c < n_; ++c) order_.push_back(r * n_ + c);
    if (inline_canon_) {
      std::vector<int> perm(n_);
      for (int i = 0; i < n_; ++i) perm[i] = i;
      while (std::next_permutation(perm.begin() + 1, perm.end())) {
        std::vector<int> inverse(n_);
        for (int i = 0; i < n_; ++i) inverse[perm[i]] = i;
        perms_.push_back(perm);
        inverse_perms_.push_back(inverse);
      }
    }
    stack_.resize(64);
    vals_.resize(8);

    // Instance 0 is the constant axiom 0'' = 0; then the (x, y, z)
    // instances of the main axiom; then two of its consequences that
    // hold in every model and prune much earlier than the axiom
    // itself: x'''' = x'' and (x -> y)' = (x'' -> y)'.
    instance_count_ = 1 + n_ * n_ * n_ + n_ + n_ * n_;
    park_.assign(instance_count_, -1);
    watchers_.assign(cells_, {});
    forced_.assign(cells_, -1);
    for (int id = 0; id < instance_count_; ++id) {
      int f = -1;
      int result = eval_instance(id, &f);
      // Empty table: every instance is parked, none decided.
      park_[id] = result;
      watchers_[result].push_back(id);
    }
  }

  // first_cell_values: restriction for cell (0,0), used to split work
  // across threads; empty means all values.
  void run(const std::vector<int>& first_cell_values,
           std::set<std::vector<std::uint8_t>>& out) {
    out_ = &out;
    std::vector<int> allowed = first_cell_values;
    if (allowed.empty())
      for (int v = 0; v < n_; ++v) allowed.push_back(v);
    for (int v : allowed) {
      if (exhausted_) break;
      descend(0, v);
    }
  }

  bool exhausted() const { return exhausted_; }
  long long nodes() const { return nodes_; }

 private:
  // Evaluates one axiom instance against the partial table.
  // Returns the first unset cell it needs, or kOk / kConflict. The two
  // compared reads (the instance's left side and the final complement
  // on the right) do not feed later lookups, so when only one of them
  // is missing its value is pinned and reported through `forced`.
  static constexpr int kOk = -1;
  static constexpr int kConflict = -2;

  int eval_instance(int id, int* forced) const {
    const int* t = table_.data();
    *forced = -1;
    if (id == 0) {  // 0'' = 0
      int c = t[0];
      if (c < 0) return 0;
      int cc = t[c * n_];
      if (cc < 0) {
        *forced = 0;
        return c * n_;
      }
      return cc == 0 ? kOk : kConflict;
    }
    int rest = id - 1;
    if (rest < n_ * n_ * n_) {
      int z = rest % n_;
      int y = (rest / n_) % n_;
      int x = rest / (n_ * n_);
      // (x -> y) -> z = ((z' -> x) -> (y -> z)')'
      int xy = t[x * n_ + y];
      if (xy < 0) return x * n_ + y;
      int lhs_cell = xy * n_ + z;
      int lhs = t[lhs_cell];
      int zp = t[z * n_];
      if (zp < 0) return lhs < 0 ? lhs_cell : z * n_;
      int u = t[zp * n_ + x];
      if (u < 0) return lhs < 0 ? lhs_cell : zp * n_ + x;
      int yz = t[y * n_ + z];
      if (yz < 0) return lhs < 0 ? lhs_cell : y * n_ + z;
      int yzp = t[yz * n_];
      if (yzp < 0) return lhs < 0 ? lhs_cell : yz * n_;
      int w = t[u * n_ + yzp];
      if (w < 0) return lhs < 0 ? lhs_cell : u * n_ + yzp;
      int rhs_cell = w * n_;
      int rhs = t[rhs_cell];
      if (lhs < 0) {
        if (rhs >= 0) *forced = rhs;
        return lhs_cell;
      }
      if (rhs < 0) {
        *forced = lhs;
        return rhs_cell;
      }
      return lhs == rhs ? kOk : kConflict;
    }
    rest -= n_ * n_ * n_;
    if (rest < n_) {  // x'''' = x''
      int x = rest;
      int c1 = t[x * n_];
      if (c1 < 0) return x * n_;
      int c2 = t[c1 * n_];
      if (c2 < 0) return c1 * n_;
      int c3 = t[c2 * n_];
      if (c3 < 0) return c2 * n_;
      int c4 = t[c3 * n_];
      if (c4 < 0) {
        *forced = c2;
        return c3 * n_;
      }
      return c4 == c2 ? kOk : kConflict;
    }
    rest -= n_;
    {  // (x -> y)' = (x'' -> y)'
      int y = rest % n_;
      int x = rest / n_;
      int c1 = t[x * n_];
      if (c1 < 0) return x * n_;
      int c2 = t[c1 * n_];
      if (c2 < 0) return c1 * n_;
      if (c2 == x) return kOk;
      int a = t[x * n_ + y];
      if (a < 0) return x * n_ + y;
      int b = t[c2 * n_ + y];
      if (b < 0) return c2 * n_ + y;
      int ap_cell = a * n_, bp_cell = b * n_;
      int ap = t[ap_cell], bp = t[bp_cell];
      if (ap < 0) {
        if (bp >= 0) *forced = bp;
        return ap_cell;
      }
      if (bp < 0) {
        *forced = ap;
        return bp_cell;
      }
      return ap == bp ? kOk : kConflict;
    }
  }

  // Places a value at fill step `step`, repaints the watch lists, and
  // recurses. The trails of instance moves and forced values are
  // rewound before returning.
  void descend(int step, int v) {
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return;
    }
    int pos = order_[step];
    table_[pos] = v;
    std::size_t trail_mark = trail_.size();
    std::size_t forced_mark = forced_trail_.size();
    bool ok = propagate(pos);
    if (ok && !extras_.empty()) ok = extras_consistent();
    if (ok && inline_canon_) ok = prefix_canonical(step);
    if (ok) {
      if (step + 1 == cells_) {
        emit();
      } else {
        int f = forced_[order_[step + 1]];
        for (int w = f >= 0 ? f : 0; w < n_; ++w) {
          descend(step + 1, w);
          if (f >= 0 || exhausted_) break;
        }
      }
    }
    // Rewind: every instance moved in propagate() goes back to pos,
    // and its entry in the destination watch list is dropped so the
    // lists never accumulate dead entries.
    while (trail_.size() > trail_mark) {
      auto [id, target] = trail_.back();
      trail_.pop_back();
      if (target >= 0) {
        auto& lst = watchers_[target];
        for (std::size_t i = lst.size(); i-- > 0;) {
          if (lst[i] == id) {
            lst[i] = lst.back();
            lst.pop_back();
            break;
          }
        }
      }
      park_[id] = pos;
      watchers_[pos].push_back(id);
    }
    while (forced_trail_.size() > forced_mark) {
      forced_[forced_trail_.back()] = -1;
      forced_trail_.pop_back();
    }
    table_[pos] = -1;
  }

  bool propagate(int pos) {
    auto& parked = watchers_[pos];
    for (std::size_t i = 0; i < parked.size();) {
      int id = parked[i];
      if (park_[id] != pos) {  // stale entry
        parked[i] = parked.back();
        parked.pop_back();
        continue;
      }
      int f = -1;
      int result = eval_instance(id, &f);
      if (result == kConflict) return false;
      parked[i] = parked.back();
      parked.pop_back();
      if (result == kOk) {
        trail_.push_back({id, -1});
        park_[id] = kOk;  // decided for this subtree
      } else {
        trail_.push_back({id, result});
        park_[id] = result;
        watchers_[result].push_back(id);
        if (f >= 0) {
          int prior = forced_[result];
          if (prior < 0) {
            forced_[result] = f;
            forced_trail_.push_back(result);
          } else if (prior != f) {
            return false;  // two instances pin the cell differently
          }
        }
      }
    }
    return true;
  }

  bool extras_consistent() {
    for (const ExtraIdentity& e : extras_) {
      int k = e.lhs.var_count;
      int total = 1;
      for (int i = 0; i < k; ++i) total *= n_;
      for (int idx = 0; idx < total; ++idx) {
        int rem = idx;
        for (int i = k - 1; i >= 0; --i) {
          vals_[i] = rem % n_;
          rem /= n_;
        }
        int l = e.lhs.run(table_, n_, vals_.data(), stack_.data());
        if (l < 0) continue;
        int r = e.rhs.run(table_, n_, vals_.data(), stack_.data());
        if (r < 0) continue;
        if (l != r) return false;
      }
    }
    return true;
  }

  void emit() {
    std::vector<std::vector<int>> rows(n_, std::vector<int>(n_));
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c) rows[r][c] = table_[r * n_ + c];
    out_->insert(canonical_form(FiniteAlgebra(rows)));
  }

  // True unless some constant-fixing permutation certifies an image
  // that is lexicographically smaller along the fill order on the
  // filled prefix. Any pruned table still has its orbit minimum
  // enumerated elsewhere, so each isomorphism class survives.
  bool prefix_canonical(int last_step) const {
    for (std::size_t p = 0; p < perms_.size(); ++p) {
      const int* perm = perms_[p].data();
      const int* inv = inverse_perms_[p].data();
      for (int step = 0; step <= last_step; ++step) {
        int pos = order_[step];
        int v = table_[pos];
        if (v < 0) break;
        int w = table_[inv[pos / n_] * n_ + inv[pos % n_]];
        if (w < 0) break;  // inconclusive for this permutation
        int pw = perm[w];
        if (pw < v) return false;
        if (pw > v) break;
      }
    }
    return true;
  }

  int n_;
  int cells_;
  std::vector<int> order_;  // cell fill order
  std::vector<int> table_;
  std::vector<ExtraIdentity> extras_;
  long long budget_;
  bool inline_canon_;
  std::vector<std::vector<int>> perms_, inverse_perms_;
  std::set<std::vector<std::uint8_t>>* out_ = nullptr;
  long long nodes_ = 0;
  bool exhausted_ = false;
  std::vector<int> stack_, vals_;

  int instance_count_ = 0;
  std::vector<int> park_;                 // instance -> cell / kOk
  std::vector<std::vector<int>> watchers_;  // cell -> parked instances
  std::vector<std::pair<int, int>> trail_;  // (instance, destination)
  std::vector<int> forced_;        // cell -> pinned value, -1 if free
  std::vector<int> forced_trail_;
};

std::vector<ExtraIdentity> compile_extras(
    const std::vector<std::string>& labels) {
  std::vector<ExtraIdentity> extras;
  for (const std::string& label : labels) {
    const ConditionalIdentity& entry = builtin_catalog().get(label);
    if (entry.is_conditional())
      throw Error("conditional identity " + label +
                  " cannot constrain the search");
    extras.push_back({PartialProg::compile(entry.conclusion, false),
                      PartialProg::compile(entry.conclusion, true)});
  }
  return extras;
}

CorpusEntry make_entry(FiniteAlgebra algebra) {
  CorpusEntry e{std::move(algebra)};
  const auto& cat = builtin_catalog();
  e.in_i20 = check_identity(e.algebra, cat.identity("I20")).holds;
  e.in_dm = check_identity(e.algebra, cat.identity("DM")).holds;
  if (e.algebra.size() >= 2) {
    e.simple = is_simple(e.algebra);
    e.subdirectly_irreducible = is_subdirectly_irreducible(e.algebra).first;
  }
  return e;
}

std::string model_name(const FiniteAlgebra& A, int index) {
  for (const std::string& name : builtin_algebra_names()) {
    const FiniteAlgebra& b = builtin_algebra(name);
    if (A.size() == b.size() && A.flat_table() == canonical_form(b))
      return name;
  }
  return "A" + std::to_string(A.size()) + "_" + std::to_string(index);
}

}  // namespace

ModelCorpus enumerate(const SearchConfig& cfg) {
  if (cfg.n < 1) throw Error("enumerate: n must be positive");
  if (cfg.budget <= 0) throw Error("enumerate: budget must be positive");
  ModelCorpus corpus;
  corpus.n = cfg.n;
  if (cfg.n == 1) {
    corpus.models.push_back(make_entry(FiniteAlgebra({{0}}, "A1_0")));
    return corpus;
  }

  auto extras = compile_extras(cfg.extra_identities);
  bool inline_canon = cfg.n >= 5;
  int threads = std::max(1, std::min(cfg.threads, cfg.n));

  std::set<std::vector<std::uint8_t>> canon;
  if (threads == 1) {
    Backtracker bt(cfg.n, extras, cfg.budget, inline_canon);
    bt.run({}, canon);
    corpus.exhaustive = !bt.exhausted();
    corpus.nodes = bt.nodes();
  } else {
    std::vector<std::set<std::vector<std::uint8_t>>> parts(threads);
    std::vector<bool> exhausted(threads, false);
    std::vector<long long> nodes(threads, 0);
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        std::vector<int> mine;
        for (int v = w; v < cfg.n; v += threads) mine.push_back(v);
        Backtracker bt(cfg.n, extras, cfg.budget / threads, inline_canon);
        bt.run(mine, parts[w]);
        exhausted[w] = bt.exhausted();
        nodes[w] = bt.nodes();
      });
    }
    for (auto& t : pool) t.join();
    for (int w = 0; w < threads; ++w) {
      canon.insert(parts[w].begin(), parts[w].end());
      corpus.nodes += nodes[w];
      if (exhausted[w]) corpus.exhaustive = false;
    }
  }

  int index = 0;
  for (const auto& flat : canon) {
    std::vector<std::vector<int>> rows(cfg.n, std::vector<int>(cfg.n));
    for (int r = 0; r < cfg.n; ++r)
      for (int c = 0; c < cfg.n; ++c) rows[r][c] = flat[r * cfg.n + c];
    FiniteAlgebra A(rows);
    A.set_name(model_name(A, index++));
    corpus.models.push_back(make_entry(std::move(A)));
  }
  if (cfg.simple_only) {
    std::erase_if(corpus.models,
                  [](const CorpusEntry& e) { return !e.simple; });
  }
  return corpus;
}

std::vector<FiniteAlgebra> enumerate_by_filter(
    int n, const std::vector<std::string>& extra_identities) {
  if (n < 1) throw Error("enumerate_by_filter: n must be positive");
  if (n > 3) throw Error("enumerate_by_filter: oracle is practical for n <= 3");
  std::vector<ConditionalIdentity> extras;
  for (auto& label : extra_identities)
    extras.push_back(builtin_catalog().get(label));

  std::set<std::vector<std::uint8_t>> canon;
  int cells = n * n;
  long long total = 1;
  for (int i = 0; i < cells; ++i) total *= n;
  std::vector<std::vector<int>> rows(n, std::vector<int>(n));
  for (long long code = 0; code < total; ++code) {
    long long rem = code;
    for (int i = 0; i < cells; ++i) {
      rows[i / n][i % n] = static_cast<int>(rem % n);
      rem /= n;
    }
    FiniteAlgebra A(rows);
    // Direct transcriptions of (I) and (I0), kept separate from the
    // search's incremental checker on purpose.
    int zp = A.comp(0);
    if (A.comp(zp) != 0) continue;
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      for (int y = 0; y < n && ok; ++y)
        for (int z = 0; z < n && ok; ++z) {
          int lhs = A.op(A.op(x, y), z);
          int rhs = A.comp(A.op(A.op(A.comp(z), x), A.comp(A.op(y, z))));
          if (lhs != rhs) ok = false;
        }
    if (!ok) continue;
    for (const auto& e : extras) {
      CheckResult r = e.is_conditional() ? check_conditional(A, e)
                                         : check_identity(A, e.conclusion);
      if (!r.holds) {
        ok = false;
        break;
      }
    }
    if (ok) canon.insert(canonical_form(A));
  }

  std::vector<FiniteAlgebra> out;
  int index = 0;
  for (const auto& flat : canon) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) t[r][c] = flat[r * n + c];
    FiniteAlgebra A(t);
    A.set_name(model_name(A, index++));
    out.push_back(std::move(A));
  }
  return out;
}

std::vector<const SuiteCell*> SuiteReport::failures() const {
  std::vector<const SuiteCell*> out;
  for (const auto& c : cells)
    if (!c.result.holds) out.push_back(&c);
  return out;
}

bool SuiteReport::all_pass() const { return failures().empty(); }

std::string SuiteReport::summary() const {
  std::ostringstream out;
  auto fails = failures();
  out << cells.size() << " checks, " << fails.size() << " failures";
  for (const auto* f : fails) {
    out << "\n  " << f->algebra << " fails " << f->label;
    if (f->result.counterexample) {
      out << " at";
      for (auto& [v, e] : f->result.counterexample->assignment)
        out << " " << v << "=" << e;
      out << ": lhs=" << f->result.counterexample->lhs_value
          << " rhs=" << f->result.counterexample->rhs_value;
    }
  }
  return out.str();
}

SuiteReport verify_suite(const std::vector<FiniteAlgebra>& algebras,
                         const std::vector<std::string>& labels,
                         const IdentityCatalog& catalog) {
  SuiteReport report;
  for (const FiniteAlgebra& A : algebras) {
    for (const std::string& label : labels) {
      if (!catalog.contains(label)) throw Error("unknown label " + label);
      report.cells.push_back({A.name(), label, check_label(A, label, catalog)});
    }
  }
  return report;
}

SuiteReport verify_suite(const std::vector<CorpusEntry>& corpus,
                         const std::vector<std::string>& labels,
                         const IdentityCatalog& catalog) {
  std::vector<FiniteAlgebra> algebras;
  for (const auto& e : corpus) algebras.push_back(e.algebra);
  return verify_suite(algebras, labels, catalog);
}

bool EquivalenceReport::all_consistent() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const Row& r) { return r.consistent; });
}

EquivalenceReport verify_equivalence_L32(
    const std::vector<CorpusEntry>& corpus) {
  const auto& cat = builtin_catalog();
  EquivalenceReport report;
  for (const auto& e : corpus) {
    EquivalenceReport::Row row;
    row.algebra = e.algebra.name();
    row.a = check_identity(e.algebra, cat.identity("L3.2a")).holds;
    row.b = check_identity(e.algebra, cat.identity("L3.2b")).holds;
    row.c = check_identity(e.algebra, cat.identity("L3.2c")).holds;
    row.d = check_identity(e.algebra, cat.identity("L3.2d")).holds;
    row.consistent = (row.a == row.b && row.b == row.c && row.c == row.d);
    report.rows.push_back(row);
  }
  return report;
}

SimpleCensus classify_simples(int max_n, long long budget_per_size) {
  if (max_n > 6) throw Error("classify_simples: max_n <= 6 (budgeted)");
  SimpleCensus census;
  for (int n = 2; n <= max_n; ++n) {
    SearchConfig cfg;
    cfg.n = n;
    cfg.budget = budget_per_size;
    ModelCorpus corpus = enumerate(cfg);
    if (!corpus.exhaustive) census.incomplete_sizes.push_back(n);
    for (const auto& e : corpus.models)
      if (e.simple) census.simples.push_back(e.algebra);
  }
  return census;
}

std::string ModelCorpus::to_jsonl() const {
  std::ostringstream out;
  for (const auto& e : models) {
    nlohmann::json j;
    j["name"] = e.algebra.name();
    j["size"] = e.algebra.size();
    j["table"] = e.algebra.rows();
    j["simple"] = e.simple;
    j["si"] = e.subdirectly_irreducible;
    j["i20"] = e.in_i20;
    j["dm"] = e.in_dm;
    out << j.dump() << "\n";
  }
  return out.str();
}

}  // namespace izro
