#include "izro/proof.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace izro {

namespace {

// Pattern match `pattern` against `subject`, binding pattern variables.
// Returns false on clash. `binding` accumulates across calls.
bool match(const Term& pattern, const Term& subject, Subst& binding) {
  switch (pattern.kind()) {
    case Term::Kind::Var: {
      auto it = binding.find(pattern.var_name());
      if (it == binding.end()) {
        binding.emplace(pattern.var_name(), subject);
        return true;
      }
      return it->second == subject;
    }
    case Term::Kind::Zero:
      return subject.kind() == Term::Kind::Zero;
    case Term::Kind::Comp:
      return subject.kind() == Term::Kind::Comp &&
             match(pattern.inner(), subject.inner(), binding);
    case Term::Kind::Arrow:
      return subject.kind() == Term::Kind::Arrow &&
             match(pattern.lhs(), subject.lhs(), binding) &&
             match(pattern.rhs(), subject.rhs(), binding);
  }
  return false;
}

void collect_positions(const Term& t, Path& prefix,
                       std::vector<Path>& out) {
  out.push_back(prefix);
  switch (t.kind()) {
    case Term::Kind::Comp:
      prefix.push_back(0);
      collect_positions(t.inner(), prefix, out);
      prefix.pop_back();
      break;
    case Term::Kind::Arrow:
      prefix.push_back(0);
      collect_positions(t.lhs(), prefix, out);
      prefix.pop_back();
      prefix.push_back(1);
      collect_positions(t.rhs(), prefix, out);
      prefix.pop_back();
      break;
    default:
      break;
  }
}

std::vector<Path> positions_of(const Term& t) {
  std::vector<Path> out;
  Path prefix;
  collect_positions(t, prefix, out);
  return out;
}

std::string path_str(const Path& p) {
  if (p.empty()) return "root";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i)
    out += (i ? "." : "") + std::to_string(p[i]);
  return out;
}

// Tries the rewrite at one specific position with a fixed or inferred
// substitution. On success returns true.
bool try_rewrite_at(const Step& step, const Term& rule_from,
                    const Term& rule_to, const Path& pos,
                    const std::optional<Subst>& given_subst,
                    std::string& why) {
  Term sub = [&]() -> Term {
    try {
      return step.from.at(pos);
    } catch (const Error&) {
      return Term::var("\x01invalid");
    }
  }();
  if (sub.kind() == Term::Kind::Var && sub.var_name() == "\x01invalid") {
    why = "position " + path_str(pos) + " is not valid in the source term";
    return false;
  }

  Subst binding;
  if (given_subst) {
    binding = *given_subst;
    Term expected = rule_from.substitute(binding);
    if (!(expected == sub)) {
      why = "instance mismatch at " + path_str(pos) + ": rule side gives " +
            expected.str() + " but the term has " + sub.str();
      return false;
    }
  } else {
    if (!match(rule_from, sub, binding)) {
      why = "no match at " + path_str(pos);
      return false;
    }
  }
  Term rewritten = step.from.replace_at(pos, rule_to.substitute(binding));
  if (!(rewritten == step.to)) {
    why = "rewrite at " + path_str(pos) + " yields " + rewritten.str() +
          ", expected " + step.to.str();
    return false;
  }
  return true;
}

// defcomp folds/unfolds t' = t -> 0 at the position (either direction).
bool try_defcomp_at(const Step& step, const Path& pos, std::string& why) {
  Term sub = [&]() -> Term {
    try {
      return step.from.at(pos);
    } catch (const Error&) {
      return Term::var("\x01invalid");
    }
  }();
  if (sub.kind() == Term::Kind::Var && sub.var_name() == "\x01invalid") {
    why = "position " + path_str(pos) + " is not valid in the source term";
    return false;
  }
  std::vector<Term> images;
  if (sub.kind() == Term::Kind::Comp)
    images.push_back(Term::arrow(sub.inner(), Term::zero()));
  if (sub.kind() == Term::Kind::Arrow &&
      sub.rhs().kind() == Term::Kind::Zero)
    images.push_back(Term::comp(sub.lhs()));
  for (const Term& image : images)
    if (step.from.replace_at(pos, image) == step.to) return true;
  why = "defcomp does not apply at " + path_str(pos);
  return false;
}

}  // namespace

Verdict check_step(const Step& step, const IdentityCatalog& catalog,
                   const std::vector<Identity>& hypotheses) {
  Verdict v;
  auto fail = [&](std::string why) {
    v.ok = false;
    v.diagnostic = std::move(why);
    return v;
  };

  std::vector<Path> candidates =
      step.position ? std::vector<Path>{*step.position}
                    : positions_of(step.from);

  if (step.justification == "defcomp") {
    std::string why, first_why;
    for (const Path& pos : candidates) {
      if (try_defcomp_at(step, pos, why)) return v;
      if (first_why.empty()) first_why = why;
    }
    return fail(first_why.empty() ? "defcomp does not apply" : first_why);
  }

  Term rule_lhs, rule_rhs;
  if (step.justification.rfind("hyp:", 0) == 0) {
    std::size_t k = 0;
    try {
      k = std::stoul(step.justification.substr(4));
    } catch (...) {
      return fail("bad hypothesis reference " + step.justification);
    }
    if (k >= hypotheses.size())
      return fail("hypothesis index " + std::to_string(k) +
                  " out of range (" + std::to_string(hypotheses.size()) +
                  " hypotheses)");
    rule_lhs = hypotheses[k].lhs;
    rule_rhs = hypotheses[k].rhs;
    if (step.substitution && !step.substitution->empty())
      return fail("hypotheses are ground; no substitution allowed");
  } else {
    if (!catalog.contains(step.justification))
      return fail("unresolvable citation " + step.justification);
    const ConditionalIdentity& entry = catalog.get(step.justification);
    if (entry.is_conditional())
      return fail("conditional identity " + step.justification +
                  " cannot justify a rewrite");
    rule_lhs = entry.conclusion.lhs;
    rule_rhs = entry.conclusion.rhs;
  }
  if (step.reverse) std::swap(rule_lhs, rule_rhs);

  std::string first_why;
  for (const Path& pos : candidates) {
    std::string why;
    if (try_rewrite_at(step, rule_lhs, rule_rhs, pos, step.substitution,
                       why))
      return v;
    if (first_why.empty() || step.position) first_why = why;
  }
  return fail("citation " + step.justification +
              (step.reverse ? " (reversed)" : "") + ": " +
              (first_why.empty() ? "no applicable position" : first_why));
}

Verdict replay(const ProofScript& script, const IdentityCatalog& catalog) {
  Verdict v;
  auto fail = [&](std::optional<std::size_t> idx, std::string why) {
    v.ok = false;
    v.failing_step = idx;
    v.diagnostic = std::move(why);
    return v;
  };

  if (script.steps.empty()) {
    if (script.goal.lhs == script.goal.rhs) return v;
    return fail(std::nullopt, "empty proof of a non-reflexive goal");
  }
  if (!(script.steps.front().from == script.goal.lhs))
    return fail(0, "first term " + script.steps.front().from.str() +
                       " is not the goal left side " +
                       script.goal.lhs.str());
  for (std::size_t i = 0; i + 1 < script.steps.size(); ++i) {
    if (!(script.steps[i].to == script.steps[i + 1].from))
      return fail(i + 1, "chain break: step " + std::to_string(i) +
                             " ends with " + script.steps[i].to.str() +
                             " but step " + std::to_string(i + 1) +
                             " starts from " +
                             script.steps[i + 1].from.str());
  }
  if (!(script.steps.back().to == script.goal.rhs))
    return fail(script.steps.size() - 1,
                "last term " + script.steps.back().to.str() +
                    " is not the goal right side " + script.goal.rhs.str());

  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    Verdict sv = check_step(script.steps[i], catalog, script.hypotheses);
    if (!sv.ok)
      return fail(i, "step " + std::to_string(i) + ": " + sv.diagnostic);
  }
  return v;
}

// ---------------------------------------------------------------------------
// Script files

namespace {

std::string strip(std::string s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

Path parse_path(const std::string& text) {
  if (text == "root") return {};
  Path p;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t j = text.find('.', i);
    if (j == std::string::npos) j = text.size();
    std::string piece = text.substr(i, j - i);
    if (piece.empty() || piece.find_first_not_of("0123456789") !=
                             std::string::npos)
      throw Error("bad path component '" + piece + "'");
    p.push_back(std::stoi(piece));
    i = j + 1;
  }
  return p;
}

Subst parse_subst(const std::string& text) {
  Subst sigma;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] == '(') ++depth;
    if (i < text.size() && text[i] == ')') --depth;
    if (i == text.size() || (depth == 0 && text[i] == ',')) {
      std::string piece = strip(text.substr(start, i - start));
      if (!piece.empty()) {
        auto eq = piece.find('=');
        if (eq == std::string::npos)
          throw Error("bad substitution entry '" + piece + "'");
        std::string var = strip(piece.substr(0, eq));
        sigma.emplace(var, parse_term(piece.substr(eq + 1)));
      }
      start = i + 1;
    }
  }
  return sigma;
}

}  // namespace

ProofScript load_script(const std::string& text) {
  ProofScript script;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  bool have_goal = false, have_start = false;
  std::optional<Term> current;

  auto ctx = [&](const std::string& msg) {
    return Error("line " + std::to_string(lineno) + ": " + msg);
  };

  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::string line = strip(raw);
    if (line.empty()) continue;

    if (line.rfind("proof ", 0) == 0) {
      script.name = strip(line.substr(6));
    } else if (line.rfind("assume ", 0) == 0) {
      ConditionalIdentity ci = parse_identity(line.substr(7));
      if (ci.is_conditional()) throw ctx("assume takes a plain identity");
      script.hypotheses.push_back(ci.conclusion);
    } else if (line.rfind("goal ", 0) == 0) {
      ConditionalIdentity ci = parse_identity(line.substr(5));
      if (ci.is_conditional()) throw ctx("goal must be a plain identity");
      script.goal = ci.conclusion;
      script.goal.name = script.name;
      have_goal = true;
    } else if (line.rfind("start ", 0) == 0) {
      current = parse_term(line.substr(6));
      have_start = true;
    } else if (line.rfind("=", 0) == 0) {
      if (!current) throw ctx("step before 'start'");
      std::string rest = strip(line.substr(1));
      auto by = rest.rfind(" by ");
      if (by == std::string::npos) throw ctx("step needs 'by <label>'");
      Step step;
      step.from = *current;
      step.to = parse_term(rest.substr(0, by));
      std::string just = strip(rest.substr(by + 4));

      // Optional clauses come as 'by <label> [at ...] [with ...] [rev]';
      // strip them back to front.
      if (just.size() > 4 && just.rfind(" rev") == just.size() - 4) {
        step.reverse = true;
        just = strip(just.substr(0, just.size() - 4));
      }
      auto with_pos = just.find(" with ");
      if (with_pos != std::string::npos) {
        step.substitution = parse_subst(just.substr(with_pos + 6));
        just = strip(just.substr(0, with_pos));
      }
      auto at_pos = just.find(" at ");
      if (at_pos != std::string::npos) {
        step.position = parse_path(strip(just.substr(at_pos + 4)));
        just = strip(just.substr(0, at_pos));
      }
      if (just.empty()) throw ctx("missing citation label");
      step.justification = just;
      current = step.to;
      script.steps.push_back(std::move(step));
    } else {
      throw ctx("unrecognized directive: " + line);
    }
  }

  if (script.name.empty()) throw Error("script has no 'proof <name>' header");
  if (!have_goal) throw Error(script.name + ": missing goal");
  if (!have_start && !script.steps.empty())
    throw Error(script.name + ": missing start");

  // Structural chain validation; step-rule validity is replay's job.
  if (have_start && script.steps.empty() &&
      !(script.goal.lhs == script.goal.rhs) && current &&
      !(*current == script.goal.lhs))
    throw Error(script.name + ": start does not match the goal");
  for (std::size_t i = 0; i + 1 < script.steps.size(); ++i)
    if (!(script.steps[i].to == script.steps[i + 1].from))
      throw Error(script.name + ": chain break between steps " +
                  std::to_string(i) + " and " + std::to_string(i + 1) +
                  ": " + script.steps[i].to.str() + " vs " +
                  script.steps[i + 1].from.str());
  return script;
}

ProofScript load_script_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open proof script " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return load_script(buf.str());
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

bool CrossCheckReport::all_hold() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const CrossCheckRow& r) { return r.result.holds; });
}

std::string CrossCheckReport::summary() const {
  std::ostringstream out;
  int fails = 0;
  for (const auto& r : rows)
    if (!r.result.holds) ++fails;
  out << rows.size() << " algebras, " << fails << " failures";
  for (const auto& r : rows) {
    if (r.result.holds) continue;
    out << "\n  fails on " << r.algebra;
  }
  return out.str();
}

CrossCheckReport cross_check(const ProofScript& script,
                             const std::vector<FiniteAlgebra>& corpus) {
  ConditionalIdentity goal{script.hypotheses, script.goal};
  CrossCheckReport report;
  for (const FiniteAlgebra& A : corpus) {
    CheckResult r = goal.is_conditional() ? check_conditional(A, goal)
                                          : check_identity(A, goal.conclusion);
    report.rows.push_back({A.name(), r});
  }
  return report;
}

}  // namespace izro
