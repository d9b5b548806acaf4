#pragma once

// Finite relational structures: vocabulary, universe, relations, the text
// file format, Gaifman graphs, naive Tarskian evaluation, and the cyclic
// successor-relation checker.

#include <cctype>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "invfo/errors.hpp"
#include "invfo/formula.hpp"
#include "invfo/graph.hpp"

namespace invfo {

// `succ` and `leq` are claimed by the invariance machinery; base
// vocabularies read from files must not define them.
inline bool is_reserved_symbol(const std::string& name) { return name == "succ" || name == "leq"; }

struct Vocabulary {
  std::map<std::string, int> symbols;  // name -> arity (>= 1)

  void add(const std::string& name, int arity) {
    if (name.empty()) throw input_error("vocabulary: empty symbol name");
    if (arity < 1)
      throw input_error("vocabulary: symbol '" + name + "' needs arity >= 1, got " +
                        std::to_string(arity));
    if (!symbols.emplace(name, arity).second)
      throw input_error("vocabulary: duplicate symbol '" + name + "'");
  }

  bool has(const std::string& name) const { return symbols.count(name) != 0; }

  int arity(const std::string& name) const {
    auto it = symbols.find(name);
    if (it == symbols.end()) throw input_error("vocabulary: unknown symbol '" + name + "'");
    return it->second;
  }
};

struct Structure {
  Vocabulary vocab;
  std::set<int> universe;
  std::map<std::string, std::set<std::vector<int>>> relations;  // name -> tuple set

  // Inserts a tuple, enforcing arity and universe membership.
  void add_tuple(const std::string& name, const std::vector<int>& tuple) {
    int ar = vocab.arity(name);
    if (static_cast<int>(tuple.size()) != ar)
      throw input_error("relation '" + name + "': tuple of length " +
                        std::to_string(tuple.size()) + ", symbol has arity " + std::to_string(ar));
    for (int e : tuple)
      if (!universe.count(e))
        throw input_error("relation '" + name + "': element " + std::to_string(e) +
                          " outside the universe");
    relations[name].insert(tuple);
  }

  const std::set<std::vector<int>>& tuples(const std::string& name) const {
    static const std::set<std::vector<int>> empty;
    auto it = relations.find(name);
    return it == relations.end() ? empty : it->second;
  }
};

// Every atom of phi must name a vocabulary symbol of matching arity.
inline void check_formula(const Vocabulary& vocab, const FormulaPtr& phi) {
  std::function<void(const FormulaPtr&)> walk = [&](const FormulaPtr& f) {
    if (!f) return;
    if (f->kind == Kind::Atom) {
      if (!vocab.has(f->name)) throw input_error("formula uses unknown symbol '" + f->name + "'");
      int ar = vocab.arity(f->name);
      if (static_cast<int>(f->vars.size()) != ar)
        throw input_error("atom '" + f->name + "' has " + std::to_string(f->vars.size()) +
                          " arguments, symbol has arity " + std::to_string(ar));
    }
    walk(f->lhs);
    walk(f->rhs);
  };
  walk(phi);
}

// --- file format ------------------------------------------------------------
//
//   # comment
//   vocab R/2 P/1
//   universe <n>              (elements 1..n)
//   rel R: (1,2) (2,3)
//
// vocab and universe must precede rel lines; succ/leq are rejected.

namespace detail {

inline std::vector<int> parse_tuple_body(const std::string& body, const std::string& where) {
  std::vector<int> tuple;
  std::string num;
  for (char c : body) {
    if (c == ',') {
      if (num.empty()) throw parse_error(where + ": empty tuple component");
      tuple.push_back(std::stoi(num));
      num.clear();
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '-' && num.empty())) {
      num += c;
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      throw parse_error(where + ": bad character '" + std::string(1, c) + "' in tuple");
    }
  }
  if (num.empty()) throw parse_error(where + ": empty tuple component");
  tuple.push_back(std::stoi(num));
  return tuple;
}

}  // namespace detail

inline Structure parse_structure(std::istream& in) {
  Structure a;
  bool saw_vocab = false, saw_universe = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string where = "line " + std::to_string(lineno);
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "vocab") {
      if (saw_vocab) throw parse_error(where + ": duplicate vocab line");
      saw_vocab = true;
      std::string item;
      while (ls >> item) {
        auto slash = item.find('/');
        if (slash == std::string::npos || slash == 0 || slash + 1 == item.size())
          throw parse_error(where + ": expected '<name>/<arity>', got '" + item + "'");
        std::string name = item.substr(0, slash);
        int arity = 0;
        try {
          arity = std::stoi(item.substr(slash + 1));
        } catch (const std::exception&) {
          throw parse_error(where + ": bad arity in '" + item + "'");
        }
        if (is_reserved_symbol(name))
          throw parse_error(where + ": '" + name + "' is reserved and cannot be declared");
        try {
          a.vocab.add(name, arity);
        } catch (const input_error& e) {
          throw parse_error(where + ": " + e.what());
        }
      }
    } else if (tag == "universe") {
      if (!saw_vocab) throw parse_error(where + ": universe before vocab");
      if (saw_universe) throw parse_error(where + ": duplicate universe line");
      saw_universe = true;
      int n = -1;
      if (!(ls >> n) || n < 0) throw parse_error(where + ": expected 'universe <n>'");
      std::string junk;
      if (ls >> junk) throw parse_error(where + ": trailing tokens");
      for (int e = 1; e <= n; ++e) a.universe.insert(e);
    } else if (tag == "rel") {
      if (!saw_universe) throw parse_error(where + ": rel before universe");
      std::string rest;
      std::getline(ls, rest);
      auto colon = rest.find(':');
      if (colon == std::string::npos) throw parse_error(where + ": expected 'rel <name>: ...'");
      std::string name;
      {
        std::istringstream ns(rest.substr(0, colon));
        if (!(ns >> name)) throw parse_error(where + ": missing relation name");
        std::string junk;
        if (ns >> junk) throw parse_error(where + ": unexpected token before ':'");
      }
      if (!a.vocab.has(name))
        throw parse_error(where + ": relation '" + name + "' not declared in vocab");
      // tuples: (a,b) (c,d) ...
      std::string tail = rest.substr(colon + 1);
      std::size_t i = 0;
      while (i < tail.size()) {
        if (std::isspace(static_cast<unsigned char>(tail[i]))) {
          ++i;
          continue;
        }
        if (tail[i] != '(') throw parse_error(where + ": expected '(' starting a tuple");
        auto close = tail.find(')', i);
        if (close == std::string::npos) throw parse_error(where + ": unterminated tuple");
        std::vector<int> tuple = detail::parse_tuple_body(tail.substr(i + 1, close - i - 1), where);
        try {
          a.add_tuple(name, tuple);
        } catch (const input_error& e) {
          throw parse_error(where + ": " + e.what());
        }
        i = close + 1;
      }
    } else {
      throw parse_error(where + ": unknown directive '" + tag + "'");
    }
  }
  if (!saw_vocab) throw parse_error("missing vocab line");
  if (!saw_universe) throw parse_error("missing universe line");
  return a;
}

inline Structure parse_structure(const std::string& text) {
  std::istringstream in(text);
  return parse_structure(in);
}

// Inverse of parse_structure; requires universe elements 1..n. Relations are
// written in name order, tuples in set order, so output is deterministic.
inline std::string write_structure(const Structure& a) {
  int n = a.universe.empty() ? 0 : *a.universe.rbegin();
  if (static_cast<std::size_t>(n) != a.universe.size())
    throw input_error("structure file format requires universe 1..n");
  std::ostringstream out;
  out << "vocab";
  for (const auto& [name, arity] : a.vocab.symbols) out << ' ' << name << '/' << arity;
  out << '\n';
  out << "universe " << n << '\n';
  for (const auto& [name, tuples] : a.relations) {
    if (tuples.empty()) continue;
    out << "rel " << name << ':';
    for (const auto& t : tuples) {
      out << " (";
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out << ',';
        out << t[i];
      }
      out << ')';
    }
    out << '\n';
  }
  return out.str();
}

// --- Gaifman graph ----------------------------------------------------------

// Vertices are the universe; two distinct elements are adjacent iff they
// co-occur in some relation tuple.
inline Graph gaifman_graph(const Structure& a) {
  Graph g;
  for (int e : a.universe) g.add_vertex(e);
  for (const auto& [name, tuples] : a.relations)
    for (const auto& t : tuples)
      for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j)
          if (t[i] != t[j]) g.add_edge(t[i], t[j]);
  return g;
}

// --- evaluation -------------------------------------------------------------

namespace detail {

inline bool eval_rec(const Structure& a, const FormulaPtr& f, std::map<std::string, int>& env) {
  switch (f->kind) {
    case Kind::False:
      return false;
    case Kind::True:
      return true;
    case Kind::Atom: {
      int ar = a.vocab.arity(f->name);  // throws on unknown symbol
      if (static_cast<int>(f->vars.size()) != ar)
        throw input_error("atom '" + f->name + "' has " + std::to_string(f->vars.size()) +
                          " arguments, symbol has arity " + std::to_string(ar));
      std::vector<int> tuple;
      tuple.reserve(f->vars.size());
      for (const auto& v : f->vars) {
        auto it = env.find(v);
        if (it == env.end()) throw input_error("unbound variable '" + v + "'");
        tuple.push_back(it->second);
      }
      return a.tuples(f->name).count(tuple) != 0;
    }
    case Kind::Eq: {
      auto lt = env.find(f->vars[0]);
      auto rt = env.find(f->vars[1]);
      if (lt == env.end()) throw input_error("unbound variable '" + f->vars[0] + "'");
      if (rt == env.end()) throw input_error("unbound variable '" + f->vars[1] + "'");
      return lt->second == rt->second;
    }
    case Kind::Not:
      return !eval_rec(a, f->lhs, env);
    case Kind::And:
      return eval_rec(a, f->lhs, env) && eval_rec(a, f->rhs, env);
    case Kind::Or:
      return eval_rec(a, f->lhs, env) || eval_rec(a, f->rhs, env);
    case Kind::Implies:
      return !eval_rec(a, f->lhs, env) || eval_rec(a, f->rhs, env);
    case Kind::Iff:
      return eval_rec(a, f->lhs, env) == eval_rec(a, f->rhs, env);
    case Kind::Exists:
    case Kind::Forall: {
      const bool universal = f->kind == Kind::Forall;
      auto prev = env.find(f->name);
      std::optional<int> saved;
      if (prev != env.end()) saved = prev->second;
      for (int e : a.universe) {
        env[f->name] = e;
        bool sub = eval_rec(a, f->lhs, env);
        if (universal && !sub) {
          if (saved) env[f->name] = *saved; else env.erase(f->name);
          return false;
        }
        if (!universal && sub) {
          if (saved) env[f->name] = *saved; else env.erase(f->name);
          return true;
        }
      }
      if (saved) env[f->name] = *saved; else env.erase(f->name);
      return universal;  // empty universe: forall true, exists false
    }
  }
  return false;  // unreachable
}

}  // namespace detail

// Standard Tarskian semantics; asg must cover every free variable of phi.
inline bool evaluate(const Structure& a, const FormulaPtr& phi,
                     const std::map<std::string, int>& asg = {}) {
  for (const auto& [var, elem] : asg)
    if (!a.universe.count(elem))
      throw input_error("assignment sends '" + var + "' outside the universe");
  std::map<std::string, int> env = asg;
  return detail::eval_rec(a, phi, env);
}

// --- successor relations ------------------------------------------------------

using SuccessorRelation = std::set<std::pair<int, int>>;

// True iff `pairs` is the graph of a cyclic permutation of `universe`:
// out-degree and in-degree exactly 1 everywhere, one cycle covering all
// elements. The empty relation on the empty universe counts as valid.
inline bool check_successor_relation(const std::set<int>& universe, const SuccessorRelation& pairs) {
  if (universe.empty()) return pairs.empty();
  std::map<int, int> next;
  std::set<int> targets;
  for (auto [x, y] : pairs) {
    if (!universe.count(x) || !universe.count(y)) return false;
    if (!next.emplace(x, y).second) return false;    // out-degree > 1
    if (!targets.insert(y).second) return false;     // in-degree > 1
  }
  if (next.size() != universe.size()) return false;  // some element has no successor
  // follow the cycle from the least element; it must walk the whole universe
  int start = *universe.begin();
  int cur = start;
  std::size_t steps = 0;
  do {
    auto it = next.find(cur);
    if (it == next.end()) return false;
    cur = it->second;
    ++steps;
    if (steps > universe.size()) return false;
  } while (cur != start);
  return steps == universe.size();
}

// Extends a copy of `a` with a fresh binary symbol interpreted by `pairs`.
inline Structure with_binary_relation(const Structure& a, const std::string& name,
                                      const std::set<std::pair<int, int>>& pairs) {
  Structure b = a;
  if (b.vocab.has(name))
    throw input_error("structure already defines symbol '" + name + "'");
  b.vocab.symbols.emplace(name, 2);
  auto& rel = b.relations[name];
  for (auto [x, y] : pairs) {
    if (!b.universe.count(x) || !b.universe.count(y))
      throw input_error("relation '" + name + "' mentions elements outside the universe");
    rel.insert({x, y});
  }
  return b;
}

}  // namespace invfo
