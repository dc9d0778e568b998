#include "izro/term.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace izro {

ParseError::ParseError(const std::string& msg, std::size_t off)
    : Error(msg + " (byte " + std::to_string(off) + ")"), offset(off) {}

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term::Term() : node_(Term::zero().node_) {}

Term Term::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->name = std::move(name);
  n->hash_value = mix(1, std::hash<std::string>{}(n->name));
  return Term(std::move(n));
}

Term Term::zero() {
  static const Term z = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Zero;
    n->hash_value = 2;
    return Term(std::move(n));
  }();
  return z;
}

Term Term::comp(Term inner) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Comp;
  n->hash_value = mix(3, inner.hash());
  n->child0 = std::move(inner.node_);
  return Term(std::move(n));
}

Term Term::arrow(Term lhs, Term rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Arrow;
  n->hash_value = mix(mix(4, lhs.hash()), rhs.hash());
  n->child0 = std::move(lhs.node_);
  n->child1 = std::move(rhs.node_);
  return Term(std::move(n));
}

const std::string& Term::var_name() const {
  if (kind() != Kind::Var) throw Error("var_name() on non-variable term");
  return node_->name;
}

Term Term::inner() const {
  if (kind() != Kind::Comp) throw Error("inner() on non-complement term");
  return Term(node_->child0);
}

Term Term::lhs() const {
  if (kind() != Kind::Arrow) throw Error("lhs() on non-arrow term");
  return Term(node_->child0);
}

Term Term::rhs() const {
  if (kind() != Kind::Arrow) throw Error("rhs() on non-arrow term");
  return Term(node_->child1);
}

bool Term::node_equal(const Node* a, const Node* b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->hash_value != b->hash_value) return false;
  switch (a->kind) {
    case Kind::Var:
      return a->name == b->name;
    case Kind::Zero:
      return true;
    case Kind::Comp:
      return node_equal(a->child0.get(), b->child0.get());
    case Kind::Arrow:
      return node_equal(a->child0.get(), b->child0.get()) &&
             node_equal(a->child1.get(), b->child1.get());
  }
  return false;
}

bool Term::operator==(const Term& other) const {
  return node_equal(node_.get(), other.node_.get());
}

std::vector<std::string> Term::variables() const {
  std::set<std::string> vars;
  std::function<void(const Node*)> walk = [&](const Node* n) {
    switch (n->kind) {
      case Kind::Var:
        vars.insert(n->name);
        break;
      case Kind::Zero:
        break;
      case Kind::Comp:
        walk(n->child0.get());
        break;
      case Kind::Arrow:
        walk(n->child0.get());
        walk(n->child1.get());
        break;
    }
  };
  walk(node_.get());
  return {vars.begin(), vars.end()};
}

Term Term::normalize_comp() const {
  switch (kind()) {
    case Kind::Var:
    case Kind::Zero:
      return *this;
    case Kind::Comp:
      return Term::arrow(inner().normalize_comp(), Term::zero());
    case Kind::Arrow:
      return Term::arrow(lhs().normalize_comp(), rhs().normalize_comp());
  }
  throw Error("corrupt term");
}

Term Term::substitute(const Subst& sigma) const {
  switch (kind()) {
    case Kind::Var: {
      auto it = sigma.find(var_name());
      return it == sigma.end() ? *this : it->second;
    }
    case Kind::Zero:
      return *this;
    case Kind::Comp:
      return Term::comp(inner().substitute(sigma));
    case Kind::Arrow:
      return Term::arrow(lhs().substitute(sigma), rhs().substitute(sigma));
  }
  throw Error("corrupt term");
}

Term Term::at(const Path& path) const {
  Term cur = *this;
  for (std::size_t i = 0; i < path.size(); ++i) {
    int c = path[i];
    if (cur.kind() == Kind::Comp && c == 0) {
      cur = cur.inner();
    } else if (cur.kind() == Kind::Arrow && c == 0) {
      cur = cur.lhs();
    } else if (cur.kind() == Kind::Arrow && c == 1) {
      cur = cur.rhs();
    } else {
      throw Error("invalid position: child " + std::to_string(c) +
                  " at path step " + std::to_string(i));
    }
  }
  return cur;
}

Term Term::replace_at(const Path& path, const Term& replacement) const {
  if (path.empty()) return replacement;
  Path rest(path.begin() + 1, path.end());
  int c = path.front();
  if (kind() == Kind::Comp && c == 0)
    return Term::comp(inner().replace_at(rest, replacement));
  if (kind() == Kind::Arrow && c == 0)
    return Term::arrow(lhs().replace_at(rest, replacement), rhs());
  if (kind() == Kind::Arrow && c == 1)
    return Term::arrow(lhs(), rhs().replace_at(rest, replacement));
  throw Error("invalid position: child " + std::to_string(c));
}

std::size_t Term::depth() const {
  switch (kind()) {
    case Kind::Var:
    case Kind::Zero:
      return 0;
    case Kind::Comp:
      return 1 + inner().depth();
    case Kind::Arrow:
      return 1 + std::max(lhs().depth(), rhs().depth());
  }
  throw Error("corrupt term");
}

std::string Term::str() const { return format_term(*this); }

// ---------------------------------------------------------------------------
// Parsing

namespace {

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  Term parse_toplevel() {
    Term t = parse_term();
    skip_ws();
    if (!eof())
      throw ParseError("syntax error: unexpected trailing input", pos_);
    return t;
  }

  // Shared with the identity parser: parse one term, leave the rest.
  Term parse_term() {
    Term first = parse_primary();
    skip_ws();
    if (try_arrow()) {
      Term second = parse_primary();
      return Term::arrow(std::move(first), std::move(second));
    }
    return first;
  }

  std::size_t pos() const { return pos_; }
  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  bool eof() const { return pos_ >= text_.size(); }

 private:
  Term parse_primary() {
    skip_ws();
    Term t = parse_atom();
    for (;;) {
      skip_ws();
      if (!eof() && text_[pos_] == '\'') {
        ++pos_;
        t = Term::comp(std::move(t));
      } else if (try_prefix("′")) {  // ′
        t = Term::comp(std::move(t));
      } else {
        break;
      }
    }
    return t;
  }

  Term parse_atom() {
    skip_ws();
    if (eof()) throw ParseError("syntax error: expected a term", pos_);
    char c = text_[pos_];
    if (c == '0') {
      ++pos_;
      return Term::zero();
    }
    if (c == '(') {
      ++pos_;
      Term inner = parse_term();
      skip_ws();
      if (eof() || text_[pos_] != ')')
        throw ParseError("syntax error: expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (!eof() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                        text_[pos_] == '_'))
        ++pos_;
      return Term::var(std::string(text_.substr(start, pos_ - start)));
    }
    if (c == '-' || try_peek_arrow())
      throw ParseError("syntax error: expected a term before '->'", pos_);
    if (static_cast<unsigned char>(c) < 0x80)
      throw ParseError(std::string("unknown character '") + c + "'", pos_);
    throw ParseError("unknown character", pos_);
  }

  bool try_arrow() {
    skip_ws();
    if (try_prefix("->")) return true;
    if (try_prefix("→")) return true;  // →
    return false;
  }

  bool try_peek_arrow() const {
    return text_.substr(pos_).starts_with("->") ||
           text_.substr(pos_).starts_with("→");
  }

  bool try_prefix(std::string_view p) {
    if (text_.substr(pos_).starts_with(p)) {
      pos_ += p.size();
      return true;
    }
    return false;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text) {
  return TermParser(text).parse_toplevel();
}

std::string format_term(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t.var_name();
    case Term::Kind::Zero:
      return "0";
    case Term::Kind::Comp:
      return format_term(t.inner()) + "'";
    case Term::Kind::Arrow:
      return "(" + format_term(t.lhs()) + " -> " + format_term(t.rhs()) + ")";
  }
  throw Error("corrupt term");
}

std::string Identity::str() const {
  return format_term(lhs) + " = " + format_term(rhs);
}

std::string ConditionalIdentity::str() const {
  if (!is_conditional()) return conclusion.str();
  std::string out;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    if (i) out += ", ";
    out += hypotheses[i].str();
  }
  return out + " |- " + conclusion.str();
}

namespace {

// Splits on the first "=" or "≈" that is not inside parentheses.
Identity parse_plain_identity(std::string_view text, std::string name,
                              std::size_t base_offset) {
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    bool eq = false;
    std::size_t eq_len = 1;
    if (depth == 0 && c == '=') eq = true;
    if (depth == 0 && text.substr(i).starts_with("≈")) {  // ≈
      eq = true;
      eq_len = std::string_view("≈").size();
    }
    if (eq) {
      Term l = parse_term(text.substr(0, i));
      Term r = parse_term(text.substr(i + eq_len));
      return Identity{std::move(l), std::move(r), std::move(name)};
    }
  }
  throw ParseError("expected '=' in identity", base_offset + text.size());
}

}  // namespace

ConditionalIdentity parse_identity(std::string_view text, std::string name) {
  auto turnstile = text.find("|-");
  if (turnstile == std::string_view::npos) {
    return ConditionalIdentity{
        {}, parse_plain_identity(text, std::move(name), 0)};
  }
  ConditionalIdentity out;
  std::string_view hyps = text.substr(0, turnstile);
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= hyps.size(); ++i) {
    if (i < hyps.size() && hyps[i] == '(') ++depth;
    if (i < hyps.size() && hyps[i] == ')') --depth;
    if (i == hyps.size() || (depth == 0 && hyps[i] == ',')) {
      std::string_view piece = hyps.substr(start, i - start);
      if (piece.find_first_not_of(" \t") != std::string_view::npos)
        out.hypotheses.push_back(parse_plain_identity(piece, {}, start));
      start = i + 1;
    }
  }
  out.conclusion = parse_plain_identity(text.substr(turnstile + 2),
                                        std::move(name), turnstile + 2);
  return out;
}

// ---------------------------------------------------------------------------
// Catalog

void IdentityCatalog::add(const std::string& label,
                          ConditionalIdentity entry) {
  if (entries_.count(label)) throw Error("duplicate catalog label " + label);
  entry.conclusion.name = label;
  order_.push_back(label);
  entries_.emplace(label, std::move(entry));
}

bool IdentityCatalog::contains(const std::string& label) const {
  return entries_.count(label) != 0;
}

const ConditionalIdentity& IdentityCatalog::get(
    const std::string& label) const {
  auto it = entries_.find(label);
  if (it == entries_.end()) throw Error("unknown catalog label " + label);
  return it->second;
}

const Identity& IdentityCatalog::identity(const std::string& label) const {
  const ConditionalIdentity& e = get(label);
  if (e.is_conditional())
    throw Error("catalog label " + label +
                " is conditional; no plain identity form");
  return e.conclusion;
}

namespace {

struct CatalogLine {
  const char* label;
  const char* text;
};

// L3.3.28 and KL1 follow the derivations rather than the display forms,
// whose printed prime placement does not hold (KL1 as displayed fails in
// the three-element Kleene chain, 28 as displayed fails in the
// two-element Boolean algebra).
constexpr CatalogLine kCatalog[] = {
    {"I", "((x -> y) -> z) = ((z' -> x) -> (y -> z)')'"},
    {"I0", "0'' = 0"},
    {"I20", "x'' = x"},
    {"DM", "((x -> y) -> x) = x"},
    {"KL1", "((x -> x)' -> (y -> y)') = (x -> x)"},
    {"KL2", "((y -> y) -> (x -> x)) = (x -> x)"},
    {"BA", "(x -> x) = 0'"},
    {"L3.1a", "(x' -> 0') = (0 -> x)"},
    {"L3.1b", "(0 -> x') = (x -> 0')"},
    {"L3.2a", "(0' -> x) = x"},
    {"L3.2b", "x'' = x"},
    {"L3.2c", "(x -> x')' = x"},
    {"L3.2d", "(x' -> x) = x"},
    {"L3.3.1", "((x -> 0') -> y) = ((x -> y') -> y)"},
    {"L3.3.2", "((0 -> x') -> (y -> x)) = (y -> x)"},
    {"L3.3.3", "(x -> (0 -> x)') = x'"},
    {"L3.3.4", "(y -> x)' = ((0 -> x) -> (y -> x)')"},
    {"L3.3.5", "(x -> (y -> x)')' = ((x -> y) -> x)"},
    {"L3.3.6", "((y -> x) -> y) = ((0 -> x) -> y)"},
    {"L3.3.7", "(0 -> x) = (0 -> (0 -> x))"},
    {"L3.3.8", "(0 -> (x -> y')') = (0 -> (x' -> y))"},
    {"L3.3.9", "(((x -> y) -> x) -> ((y -> x) -> y)) = (x -> y)"},
    {"L3.3.10", "(x' -> (0 -> y))' = ((0 -> x) -> (0 -> y)')"},
    {"L3.3.11", "(0 -> (0 -> x)') = (0 -> x')"},
    {"L3.3.12", "(0 -> (x' -> y)') = (x -> (0 -> y'))"},
    {"L3.3.13", "(0 -> (x -> y)) = (x -> (0 -> y))"},
    {"L3.3.14", "(((0 -> x) -> y) -> x) = ((y -> x) -> (0 -> x)')'"},
    {"L3.3.15", "((x -> y) -> (0 -> y)') = (x -> y)'"},
    {"L3.3.16", "(x -> ((y -> z') -> x)') = ((0 -> y) -> ((0 -> z) -> x'))"},
    {"L3.3.17", "((x -> y) -> y') = (y -> (x -> y)')"},
    {"L3.3.18", "(0 -> ((0 -> x) -> y')) = (x -> (0 -> y'))"},
    {"L3.3.19", "((x -> 0') -> y)' = ((0 -> x) -> y')"},
    {"L3.3.20", "(((0 -> x) -> y) -> x) = (y -> x)"},
    {"L3.3.21", "((0 -> x) -> (0 -> y)) = (x -> (0 -> y))"},
    {"L3.3.22", "(0 -> ((x -> y) -> z')') = ((x -> y)' -> (0 -> z))"},
    {"L3.3.23", "(((x' -> y') -> (y -> x)') -> (y -> x)) = (y -> x)"},
    {"L3.3.24", "((0 -> (x' -> y')') -> (y -> x)) = (y -> x)"},
    {"L3.3.25", "((0 -> (x -> y)) -> x) = ((0 -> y) -> x)"},
    {"L3.3.26", "((0 -> x) -> (x -> y)) = (x -> (x -> y))"},
    {"L3.3.27", "((0 -> x) -> (y -> (0 -> x))') = (y -> (0 -> x))'"},
    {"L3.3.28", "((x -> y) -> (0 -> x))' = ((0 -> x) -> (y -> (0 -> x))')"},
    {"L3.3.29", "((x -> y) -> (0 -> x)) = (y -> (0 -> x))"},
    {"L3.3.30", "(y -> (y -> x)) = ((x -> (0 -> y)) -> (y -> x))"},
    {"L3.3.31", "(x -> y) = (x -> (x -> y))"},
    {"L3.3.32", "((x -> (0 -> y)) -> z)' = (z -> ((x -> y) -> z)')"},
    {"L3.3.33", "((0 -> (x -> y)') -> y) = ((0 -> x) -> y)"},
    {"L3.3.34",
     "((x -> (0 -> (y -> z)')) -> z)' = ((z' -> x) -> (z -> (y -> z)'))"},
    {"L3.3.35",
     "(x -> ((y -> (z -> x)') -> x)') = ((x' -> y) -> (x -> (z -> x)'))"},
    {"L3.3.36", "((0 -> (x -> y)) -> y') = (y -> (x -> y)')"},
    {"L3.3.37",
     "((x' -> y) -> (x -> (z -> x)')) = ((0 -> y) -> (x -> (z -> x)'))"},
    {"L3.3.38",
     "((x' -> (y -> z)) -> (x -> (y -> x)')) = (x -> ((z -> y) -> x)')"},
    {"L3.3.39",
     "(x -> ((y -> z) -> x)') = ((0 -> (z -> y)) -> (x -> (z -> x)'))"},
    {"L3.3.40",
     "((0 -> (x -> y)) -> (z -> (x -> z)')) = ((0 -> y) -> (z -> (x -> z)'))"},
    {"L3.3.41", "(x -> ((y -> z) -> x)') = ((0 -> y) -> (x -> (z -> x)'))"},
    {"L3.3.42", "(0 -> ((0 -> x) -> y)) = (x -> (0 -> y))"},
    {"L3.3.43", "(x -> (y -> x)') = ((y -> 0') -> x')"},
    {"L3.3.44", "((x -> y') -> x) = x |- ((x' -> y) -> x') = x'"},
    {"L3.3.45",
     "(((0 -> x') -> y) -> (0 -> (z -> x)')) = "
     "(((y -> (0 -> z)) -> (x -> 0')')')"},
    {"L3.3.46", "((x -> (0 -> y)) -> z)' = ((0 -> x) -> (z -> (y -> z)'))"},
    {"L3.3.47",
     "(((0 -> x') -> y) -> (0 -> (z -> x)')) = (y -> (0 -> (z -> x)'))"},
    {"L3.3.48", "(((0 -> x) -> y) -> (0 -> z)) = (0 -> ((x -> y) -> z))"},
    {"L3.3.49",
     "((x' -> y) -> (0 -> (z -> x)')) = (y -> (0 -> (z -> x)'))"},
    {"L3.3.50", "(y -> (0 -> (z -> x)')) = (0 -> ((x' -> y) -> (z -> x)'))"},
    {"L3.3.51",
     "((0 -> x) -> ((0 -> (y -> z)) -> u')) = ((0 -> ((x -> y) -> z)) -> u')"},
    {"L3.3.52",
     "(0 -> ((x -> y) -> z))' = ((0 -> x) -> ((0 -> y') -> (0 -> z)'))"},
    {"L3.3.53", "(0 -> ((x -> y) -> (z -> x')')) = (0 -> (y -> (z' -> x)))"},
    {"L3.3.54", "(0 -> ((x -> y)' -> z)) = (0 -> (x -> (y' -> z)))"},
    {"L3.3.55",
     "((((x -> y) -> z) -> (0 -> (y -> z))') -> ((x -> y) -> z)) = "
     "((x -> y) -> z)"},
    {"L3.3.56", "((0 -> (x -> y)') -> (z -> y)) = ((0 -> x) -> (z -> y))"},
    {"L3.3.57",
     "((x -> (y' -> z)') -> x) = ((y -> (0 -> (0 -> z)')) -> x)"},
    {"L3.3.58", "(((0 -> x) -> y) -> (z -> x)) = (y -> (z -> x))"},
    {"L3.3.59", "(x -> ((y -> x) -> y)) = (x -> y)"},
    {"L3.3.60", "((x -> y) -> (y -> z))' = ((0 -> x) -> (y -> z)')"},
    {"L3.3.61", "((x -> y) -> (y -> x)) = (y -> x)"},
    {"L3.3.62",
     "((((x -> y) -> z) -> (z' -> x)') -> ((x -> y) -> z)) = "
     "((x -> y) -> z)"},
    {"L3.3.63",
     "((((x -> y) -> z) -> (z' -> (y -> x))') -> ((x -> y) -> z)) = "
     "((x -> y) -> z)"},
};

}  // namespace

const IdentityCatalog& builtin_catalog() {
  static const IdentityCatalog catalog = [] {
    IdentityCatalog c;
    for (const CatalogLine& line : kCatalog)
      c.add(line.label, parse_identity(line.text, line.label));
    return c;
  }();
  return catalog;
}

IdentityCatalog load_identity_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open identity file " + path);
  IdentityCatalog catalog;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw Error(path + ":" + std::to_string(lineno) +
                  ": expected 'label : identity'");
    std::string label = line.substr(0, colon);
    label.erase(0, label.find_first_not_of(" \t"));
    label.erase(label.find_last_not_of(" \t") + 1);
    try {
      catalog.add(label, parse_identity(
                             std::string_view(line).substr(colon + 1), label));
    } catch (const ParseError& e) {
      throw Error(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return catalog;
}

void save_identity_file(const IdentityCatalog& catalog,
                        const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write identity file " + path);
  for (const std::string& label : catalog.labels())
    out << label << " : " << catalog.get(label).str() << "\n";
}

}  // namespace izro
