#pragma once

// First-order formulas over unary/binary relation symbols with equality:
// immutable AST, parser, printer (round-trips through the parser), free
// variables, and capture-avoiding substitution of defined predicates.

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "invfo/errors.hpp"

namespace invfo {

enum class Kind { False, True, Atom, Eq, Not, And, Or, Implies, Iff, Exists, Forall };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  Kind kind;
  std::string name;               // Atom: predicate name; quantifiers: bound variable
  std::vector<std::string> vars;  // Atom: argument variables; Eq: {lhs, rhs}
  FormulaPtr lhs;                 // unary ops and quantifiers use lhs only
  FormulaPtr rhs;
};

// --- constructors -----------------------------------------------------------

inline FormulaPtr f_false() { return std::make_shared<Formula>(Formula{Kind::False, "", {}, nullptr, nullptr}); }
inline FormulaPtr f_true() { return std::make_shared<Formula>(Formula{Kind::True, "", {}, nullptr, nullptr}); }

inline FormulaPtr f_atom(std::string pred, std::vector<std::string> args) {
  if (args.empty()) throw input_error("atom '" + pred + "' needs at least one argument");
  return std::make_shared<Formula>(Formula{Kind::Atom, std::move(pred), std::move(args), nullptr, nullptr});
}

inline FormulaPtr f_eq(std::string a, std::string b) {
  return std::make_shared<Formula>(
      Formula{Kind::Eq, "", {std::move(a), std::move(b)}, nullptr, nullptr});
}

inline FormulaPtr f_not(FormulaPtr f) {
  return std::make_shared<Formula>(Formula{Kind::Not, "", {}, std::move(f), nullptr});
}

inline FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(Formula{Kind::And, "", {}, std::move(a), std::move(b)});
}

inline FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(Formula{Kind::Or, "", {}, std::move(a), std::move(b)});
}

inline FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(Formula{Kind::Implies, "", {}, std::move(a), std::move(b)});
}

inline FormulaPtr f_iff(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(Formula{Kind::Iff, "", {}, std::move(a), std::move(b)});
}

inline FormulaPtr f_exists(std::string var, FormulaPtr body) {
  return std::make_shared<Formula>(
      Formula{Kind::Exists, std::move(var), {}, std::move(body), nullptr});
}

inline FormulaPtr f_forall(std::string var, FormulaPtr body) {
  return std::make_shared<Formula>(
      Formula{Kind::Forall, std::move(var), {}, std::move(body), nullptr});
}

// --- structural equality ----------------------------------------------------

inline bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name || a->vars != b->vars) return false;
  return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
}

// --- printing ---------------------------------------------------------------

namespace detail {

// binding strength: looser operators have smaller numbers
inline int precedence(Kind k) {
  switch (k) {
    case Kind::Iff: return 1;
    case Kind::Implies: return 2;
    case Kind::Or: return 3;
    case Kind::And: return 4;
    default: return 5;  // negation, quantifiers, atoms
  }
}

inline void print_formula(const FormulaPtr& f, int min_prec, std::ostream& os) {
  const int prec = precedence(f->kind);
  const bool parens = prec < min_prec;
  if (parens) os << "(";
  switch (f->kind) {
    case Kind::False:
      os << "false";
      break;
    case Kind::True:
      os << "true";
      break;
    case Kind::Atom: {
      os << f->name << "(";
      for (std::size_t i = 0; i < f->vars.size(); ++i) {
        if (i) os << ",";
        os << f->vars[i];
      }
      os << ")";
      break;
    }
    case Kind::Eq:
      os << f->vars[0] << " = " << f->vars[1];
      break;
    case Kind::Not:
      os << "!";
      print_formula(f->lhs, 5, os);
      break;
    case Kind::And:
      // left-associative: chain prints flat, right operand binds tighter
      print_formula(f->lhs, 4, os);
      os << " & ";
      print_formula(f->rhs, 5, os);
      break;
    case Kind::Or:
      print_formula(f->lhs, 3, os);
      os << " | ";
      print_formula(f->rhs, 4, os);
      break;
    case Kind::Implies:
      // right-associative: left operand binds tighter
      print_formula(f->lhs, 3, os);
      os << " -> ";
      print_formula(f->rhs, 2, os);
      break;
    case Kind::Iff:
      print_formula(f->lhs, 2, os);
      os << " <-> ";
      print_formula(f->rhs, 1, os);
      break;
    case Kind::Exists:
    case Kind::Forall:
      os << (f->kind == Kind::Exists ? "exists " : "forall ") << f->name << ". ";
      print_formula(f->lhs, 5, os);
      break;
  }
  if (parens) os << ")";
}

}  // namespace detail

inline std::string to_string(const FormulaPtr& f) {
  std::ostringstream os;
  detail::print_formula(f, 0, os);
  return os.str();
}

// --- parsing ----------------------------------------------------------------

namespace detail {

struct Token {
  enum Type { Ident, KwTrue, KwFalse, KwForall, KwExists, Amp, Pipe, Arrow, IffOp, Bang,
              Equals, LParen, RParen, Dot, Comma, End } type;
  std::string text;
  std::size_t pos;  // byte offset in the input
};

inline std::vector<Token> lex_formula(const std::string& src) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Token::Type t, std::string s, std::size_t p) { out.push_back({t, std::move(s), p}); };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      std::string word = src.substr(i, j - i);
      i = j;
      if (word == "true") push(Token::KwTrue, word, start);
      else if (word == "false") push(Token::KwFalse, word, start);
      else if (word == "forall") push(Token::KwForall, word, start);
      else if (word == "exists") push(Token::KwExists, word, start);
      else push(Token::Ident, word, start);
      continue;
    }
    switch (c) {
      case '&': push(Token::Amp, "&", start); ++i; break;
      case '|': push(Token::Pipe, "|", start); ++i; break;
      case '!':
      case '~': push(Token::Bang, std::string(1, c), start); ++i; break;
      case '=': push(Token::Equals, "=", start); ++i; break;
      case '(': push(Token::LParen, "(", start); ++i; break;
      case ')': push(Token::RParen, ")", start); ++i; break;
      case '.': push(Token::Dot, ".", start); ++i; break;
      case ',': push(Token::Comma, ",", start); ++i; break;
      case '-':
        if (i + 1 < src.size() && src[i + 1] == '>') {
          push(Token::Arrow, "->", start);
          i += 2;
          break;
        }
        throw parse_error("formula: stray '-' at offset " + std::to_string(start));
      case '<':
        if (i + 2 < src.size() && src[i + 1] == '-' && src[i + 2] == '>') {
          push(Token::IffOp, "<->", start);
          i += 3;
          break;
        }
        throw parse_error("formula: stray '<' at offset " + std::to_string(start));
      default:
        throw parse_error(std::string("formula: unexpected character '") + c + "' at offset " +
                          std::to_string(start));
    }
  }
  out.push_back({Token::End, "", src.size()});
  return out;
}

class FormulaParser {
 public:
  explicit FormulaParser(const std::string& src) : toks_(lex_formula(src)) {}

  FormulaPtr run() {
    FormulaPtr f = parse_iff();
    expect(Token::End, "end of input");
    return f;
  }

 private:
  std::vector<Token> toks_;
  std::size_t at_ = 0;

  const Token& cur() const { return toks_[at_]; }
  bool accept(Token::Type t) {
    if (cur().type != t) return false;
    ++at_;
    return true;
  }
  const Token& expect(Token::Type t, const std::string& what) {
    if (cur().type != t)
      throw parse_error("formula: expected " + what + " at offset " + std::to_string(cur().pos) +
                        ", found '" + (cur().type == Token::End ? "<end>" : cur().text) + "'");
    return toks_[at_++];
  }

  FormulaPtr parse_iff() {
    FormulaPtr lhs = parse_implies();
    if (accept(Token::IffOp)) return f_iff(std::move(lhs), parse_iff());  // right-assoc
    return lhs;
  }

  FormulaPtr parse_implies() {
    FormulaPtr lhs = parse_or();
    if (accept(Token::Arrow)) return f_implies(std::move(lhs), parse_implies());  // right-assoc
    return lhs;
  }

  FormulaPtr parse_or() {
    FormulaPtr f = parse_and();
    while (accept(Token::Pipe)) f = f_or(std::move(f), parse_and());
    return f;
  }

  FormulaPtr parse_and() {
    FormulaPtr f = parse_unary();
    while (accept(Token::Amp)) f = f_and(std::move(f), parse_unary());
    return f;
  }

  // negation and quantifiers bind one unary-level operand:
  // "forall x. P(x) & Q(x)" is "(forall x. P(x)) & Q(x)"
  FormulaPtr parse_unary() {
    if (accept(Token::Bang)) return f_not(parse_unary());
    if (cur().type == Token::KwForall || cur().type == Token::KwExists) {
      bool universal = cur().type == Token::KwForall;
      ++at_;
      std::string var = expect(Token::Ident, "a variable").text;
      expect(Token::Dot, "'.'");
      FormulaPtr body = parse_unary();
      return universal ? f_forall(std::move(var), std::move(body))
                       : f_exists(std::move(var), std::move(body));
    }
    return parse_primary();
  }

  FormulaPtr parse_primary() {
    if (accept(Token::KwTrue)) return f_true();
    if (accept(Token::KwFalse)) return f_false();
    if (accept(Token::LParen)) {
      FormulaPtr f = parse_iff();
      expect(Token::RParen, "')'");
      return f;
    }
    if (cur().type == Token::Ident) {
      std::string head = toks_[at_++].text;
      if (accept(Token::LParen)) {
        std::vector<std::string> args;
        args.push_back(expect(Token::Ident, "a variable").text);
        while (accept(Token::Comma)) args.push_back(expect(Token::Ident, "a variable").text);
        expect(Token::RParen, "')'");
        return f_atom(std::move(head), std::move(args));
      }
      if (accept(Token::Equals)) {
        std::string rhs = expect(Token::Ident, "a variable").text;
        return f_eq(std::move(head), std::move(rhs));
      }
      throw parse_error("formula: bare identifier '" + head + "' at offset " +
                        std::to_string(toks_[at_ - 1].pos) +
                        " (expected an atom P(...) or an equation x = y)");
    }
    throw parse_error("formula: expected a subformula at offset " + std::to_string(cur().pos) +
                      ", found '" + (cur().type == Token::End ? "<end>" : cur().text) + "'");
  }
};

}  // namespace detail

inline FormulaPtr parse_formula(const std::string& src) { return detail::FormulaParser(src).run(); }

// --- variables --------------------------------------------------------------

namespace detail {

inline void collect_vars(const FormulaPtr& f, std::set<std::string>& bound_here,
                         std::set<std::string>& free, std::set<std::string>* all) {
  if (!f) return;
  switch (f->kind) {
    case Kind::Atom:
    case Kind::Eq:
      for (const auto& v : f->vars) {
        if (all) all->insert(v);
        if (!bound_here.count(v)) free.insert(v);
      }
      break;
    case Kind::Exists:
    case Kind::Forall: {
      if (all) all->insert(f->name);
      bool fresh = bound_here.insert(f->name).second;
      collect_vars(f->lhs, bound_here, free, all);
      if (fresh) bound_here.erase(f->name);
      break;
    }
    default:
      collect_vars(f->lhs, bound_here, free, all);
      collect_vars(f->rhs, bound_here, free, all);
  }
}

}  // namespace detail

inline std::set<std::string> free_vars(const FormulaPtr& f) {
  std::set<std::string> bound, free;
  detail::collect_vars(f, bound, free, nullptr);
  return free;
}

// every variable name occurring anywhere (free, bound, or as a binder)
inline std::set<std::string> all_vars(const FormulaPtr& f) {
  std::set<std::string> bound, free, all;
  detail::collect_vars(f, bound, free, &all);
  return all;
}

// predicate names used by atoms
inline std::set<std::string> atom_names(const FormulaPtr& f) {
  std::set<std::string> out;
  std::function<void(const FormulaPtr&)> walk = [&](const FormulaPtr& g) {
    if (!g) return;
    if (g->kind == Kind::Atom) out.insert(g->name);
    walk(g->lhs);
    walk(g->rhs);
  };
  walk(f);
  return out;
}

// --- substitution -----------------------------------------------------------

namespace detail {

// generates names vN not present in `taken`
struct FreshNames {
  std::set<std::string> taken;
  int counter = 0;
  std::string next() {
    for (;;) {
      std::string cand = "v" + std::to_string(++counter);
      if (!taken.count(cand)) {
        taken.insert(cand);
        return cand;
      }
    }
  }
};

// rename free occurrences of variables per `map`; assumes no binder in f
// collides with any key or value of `map` (callers arrange this)
inline FormulaPtr rename_free(const FormulaPtr& f, const std::map<std::string, std::string>& map) {
  if (!f) return f;
  switch (f->kind) {
    case Kind::False:
    case Kind::True:
      return f;
    case Kind::Atom:
    case Kind::Eq: {
      std::vector<std::string> vars = f->vars;
      for (auto& v : vars) {
        auto it = map.find(v);
        if (it != map.end()) v = it->second;
      }
      return std::make_shared<Formula>(Formula{f->kind, f->name, std::move(vars), nullptr, nullptr});
    }
    case Kind::Exists:
    case Kind::Forall: {
      auto inner = map;
      inner.erase(f->name);  // binder shadows
      return std::make_shared<Formula>(
          Formula{f->kind, f->name, {}, rename_free(f->lhs, inner), nullptr});
    }
    default:
      return std::make_shared<Formula>(
          Formula{f->kind, f->name, f->vars, rename_free(f->lhs, map), rename_free(f->rhs, map)});
  }
}

// rename every bound variable of f to a fresh name
inline FormulaPtr freshen_bound(const FormulaPtr& f, FreshNames& fresh) {
  if (!f) return f;
  switch (f->kind) {
    case Kind::False:
    case Kind::True:
    case Kind::Atom:
    case Kind::Eq:
      return f;
    case Kind::Exists:
    case Kind::Forall: {
      std::string nv = fresh.next();
      FormulaPtr body = rename_free(f->lhs, {{f->name, nv}});
      return std::make_shared<Formula>(
          Formula{f->kind, std::move(nv), {}, freshen_bound(body, fresh), nullptr});
    }
    default:
      return std::make_shared<Formula>(Formula{f->kind, f->name, f->vars,
                                               freshen_bound(f->lhs, fresh),
                                               freshen_bound(f->rhs, fresh)});
  }
}

}  // namespace detail

// Replaces every atom pred(a1..an) in phi by def[params := (a1..an)].
// def's bound variables are renamed to fresh names at every substitution
// site, so argument variables are never captured.
inline FormulaPtr substitute_atom(const FormulaPtr& phi, const std::string& pred,
                                  const std::vector<std::string>& params, const FormulaPtr& def) {
  for (const auto& v : free_vars(def))
    if (std::find(params.begin(), params.end(), v) == params.end())
      throw input_error("substitute_atom: definition has unexpected free variable '" + v + "'");

  detail::FreshNames fresh;
  fresh.taken = all_vars(phi);
  for (const auto& v : all_vars(def)) fresh.taken.insert(v);

  std::function<FormulaPtr(const FormulaPtr&)> walk = [&](const FormulaPtr& f) -> FormulaPtr {
    if (!f) return f;
    switch (f->kind) {
      case Kind::Atom:
        if (f->name == pred) {
          if (f->vars.size() != params.size())
            throw input_error("substitute_atom: atom '" + pred + "' has arity " +
                              std::to_string(f->vars.size()) + ", definition expects " +
                              std::to_string(params.size()));
          FormulaPtr body = detail::freshen_bound(def, fresh);
          std::map<std::string, std::string> sub;
          for (std::size_t i = 0; i < params.size(); ++i) sub[params[i]] = f->vars[i];
          return detail::rename_free(body, sub);
        }
        return f;
      case Kind::False:
      case Kind::True:
      case Kind::Eq:
        return f;
      case Kind::Exists:
      case Kind::Forall:
        return std::make_shared<Formula>(Formula{f->kind, f->name, {}, walk(f->lhs), nullptr});
      default:
        return std::make_shared<Formula>(
            Formula{f->kind, f->name, f->vars, walk(f->lhs), walk(f->rhs)});
    }
  };
  return walk(phi);
}

}  // namespace invfo
