#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "invfo/errors.hpp"
#include "invfo/formula.hpp"
#include "invfo/structure.hpp"

namespace invfo {

// A finite set with a reflexive partial order and an integer colour per
// element (elements without an entry wear colour 0).
struct ColouredPoset {
  std::set<int> elements;
  std::set<std::pair<int, int>> leq;
  std::map<int, int> colour;

  bool le(int a, int b) const { return leq.count({a, b}) != 0; }

  int colour_of(int v) const {
    auto it = colour.find(v);
    return it == colour.end() ? 0 : it->second;
  }

  // Distinct colours in use (colour 0 included for uncoloured elements).
  std::set<int> colours() const {
    std::set<int> out;
    for (int v : elements) out.insert(colour_of(v));
    return out;
  }
};

// Axiom-by-axiom check of the order relation, with a first witness for each
// failure.
struct PosetReport {
  bool domain_ok = true;
  std::optional<std::pair<int, int>> foreign_pair;
  bool reflexive_ok = true;
  std::optional<int> missing_reflexive;
  bool antisymmetric_ok = true;
  std::optional<std::pair<int, int>> antisymmetry_witness;
  bool transitive_ok = true;
  std::optional<std::array<int, 3>> transitivity_witness;

  bool valid() const {
    return domain_ok && reflexive_ok && antisymmetric_ok && transitive_ok;
  }

  std::string describe() const {
    if (valid()) return "valid poset";
    std::string s;
    if (!domain_ok)
      s += "pair (" + std::to_string(foreign_pair->first) + "," +
           std::to_string(foreign_pair->second) +
           ") mentions a non-element; ";
    if (!reflexive_ok)
      s += "missing reflexive pair for " +
           std::to_string(*missing_reflexive) + "; ";
    if (!antisymmetric_ok)
      s += "antisymmetry fails on " +
           std::to_string(antisymmetry_witness->first) + " and " +
           std::to_string(antisymmetry_witness->second) + "; ";
    if (!transitive_ok)
      s += "transitivity fails on (" +
           std::to_string((*transitivity_witness)[0]) + "," +
           std::to_string((*transitivity_witness)[1]) + "," +
           std::to_string((*transitivity_witness)[2]) + "); ";
    s.resize(s.size() - 2);
    return s;
  }
};

inline PosetReport validate_poset(const ColouredPoset& p) {
  PosetReport r;
  for (const auto& pr : p.leq) {
    if (!p.elements.count(pr.first) || !p.elements.count(pr.second)) {
      r.domain_ok = false;
      r.foreign_pair = pr;
      break;
    }
  }
  for (int v : p.elements) {
    if (!p.le(v, v)) {
      r.reflexive_ok = false;
      r.missing_reflexive = v;
      break;
    }
  }
  for (const auto& [a, b] : p.leq) {
    if (a != b && p.le(b, a)) {
      r.antisymmetric_ok = false;
      r.antisymmetry_witness = {std::min(a, b), std::max(a, b)};
      break;
    }
  }
  for (const auto& [a, b] : p.leq) {
    if (!r.transitive_ok) break;
    for (int c : p.elements) {
      if (p.le(b, c) && !p.le(a, c)) {
        r.transitive_ok = false;
        r.transitivity_witness = {{a, b, c}};
        break;
      }
    }
  }
  return r;
}

// Disjoint chains, each listed in increasing order, covering all elements.
struct ChainCover {
  std::vector<std::vector<int>> chains;
  int width() const { return static_cast<int>(chains.size()); }
};

struct WidthResult {
  int width = 0;
  ChainCover cover;
};

// Minimum chain cover of a valid poset, via maximum bipartite matching on
// the strict order (a minimum path cover of the comparability DAG): each
// matched pair (u, v) makes v follow u in its chain, so the number of chains
// is the element count minus the matching size, which Dilworth's theorem
// says equals the width.
inline WidthResult min_chain_cover(const ColouredPoset& p) {
  PosetReport rep = validate_poset(p);
  if (!rep.valid())
    throw input_error("width_and_chain_cover: " + rep.describe());

  std::vector<int> elems(p.elements.begin(), p.elements.end());
  std::map<int, int> follower;     // u -> matched v
  std::map<int, int> predecessor;  // v -> matched u
  std::function<bool(int, std::set<int>&)> augment =
      [&](int u, std::set<int>& visited) {
        for (int v : elems) {
          if (v == u || !p.le(u, v) || visited.count(v)) continue;
          visited.insert(v);
          auto pit = predecessor.find(v);
          if (pit == predecessor.end() || augment(pit->second, visited)) {
            follower[u] = v;
            predecessor[v] = u;
            return true;
          }
        }
        return false;
      };
  for (int u : elems) {
    std::set<int> visited;
    augment(u, visited);
  }

  WidthResult out;
  for (int v : elems) {
    if (predecessor.count(v)) continue;  // not a chain start
    std::vector<int> chain{v};
    int cur = v;
    while (true) {
      auto it = follower.find(cur);
      if (it == follower.end()) break;
      cur = it->second;
      chain.push_back(cur);
    }
    out.cover.chains.push_back(std::move(chain));
  }
  out.width = out.cover.width();

  std::set<int> covered;
  for (const auto& chain : out.cover.chains) {
    for (std::size_t i = 0; i < chain.size(); ++i) {
      if (!covered.insert(chain[i]).second)
        throw invariant_violation("width_and_chain_cover: chains overlap");
      if (i + 1 < chain.size() && !p.le(chain[i], chain[i + 1]))
        throw invariant_violation(
            "width_and_chain_cover: chain is not ordered");
    }
  }
  if (covered != p.elements)
    throw invariant_violation("width_and_chain_cover: chains miss elements");
  return out;
}

inline int max_antichain_size(const ColouredPoset& p, int max_elements);

// Minimum chain cover with the Dilworth cross-check: on small posets the
// chain count is verified against the exhaustive maximum-antichain size.
inline WidthResult width_and_chain_cover(const ColouredPoset& p) {
  WidthResult out = min_chain_cover(p);
  if (p.elements.size() <= 15) {
    int anti = max_antichain_size(p, 15);
    if (anti != out.width)
      throw invariant_violation(
          "width_and_chain_cover: chain count " + std::to_string(out.width) +
          " differs from the maximum antichain size " + std::to_string(anti));
  }
  return out;
}

// Largest pairwise-incomparable subset, by exhaustive enumeration. Guarded.
inline int max_antichain_size(const ColouredPoset& p, int max_elements = 15) {
  int n = static_cast<int>(p.elements.size());
  if (n > max_elements)
    throw capability_error("max_antichain_size: " + std::to_string(n) +
                           " elements exceed the exhaustive guard of " +
                           std::to_string(max_elements));
  std::vector<int> elems(p.elements.begin(), p.elements.end());
  int best = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    int size = 0;
    bool anti = true;
    for (int i = 0; i < n && anti; ++i) {
      if (!(mask & (1u << i))) continue;
      ++size;
      for (int j = i + 1; j < n && anti; ++j) {
        if (!(mask & (1u << j))) continue;
        if (p.le(elems[i], elems[j]) || p.le(elems[j], elems[i])) anti = false;
      }
    }
    if (anti) best = std::max(best, size);
  }
  return best;
}

// The poset with its colouring refined by chain membership: an element of
// chain j (1-based) wearing colour a now wears (a, j).
struct RecolouredPoset {
  std::set<int> elements;
  std::set<std::pair<int, int>> leq;
  std::map<int, std::pair<int, int>> colour;
  int width = 0;
};

inline RecolouredPoset recolour(const ColouredPoset& p,
                                const ChainCover& cover) {
  RecolouredPoset out;
  out.elements = p.elements;
  out.leq = p.leq;
  out.width = cover.width();
  std::set<int> seen;
  for (std::size_t j = 0; j < cover.chains.size(); ++j) {
    for (int v : cover.chains[j]) {
      if (!p.elements.count(v))
        throw input_error("recolour: chain element " + std::to_string(v) +
                          " is not in the poset");
      if (!seen.insert(v).second)
        throw input_error("recolour: element " + std::to_string(v) +
                          " appears in two chains");
      out.colour[v] = {p.colour_of(v), static_cast<int>(j + 1)};
    }
  }
  for (int v : p.elements) {
    if (!seen.count(v))
      throw input_error("recolour: element " + std::to_string(v) +
                        " lies outside every chain");
  }
  return out;
}

// Vocabulary symbols for posets rendered as structures: the order itself,
// plain colour tests, and chain-refined colour tests.
inline std::string poset_order_symbol() { return "po"; }
inline std::string colour_symbol(int lambda) {
  return "Lam_" + std::to_string(lambda);
}
inline std::string chain_colour_symbol(int lambda, int j) {
  return "Col_" + std::to_string(lambda) + "_" + std::to_string(j);
}

// The poset as a relational structure: binary `po` for the order and a unary
// colour predicate per colour in use.
inline Structure poset_structure(const ColouredPoset& p) {
  Structure st;
  st.vocab.add(poset_order_symbol(), 2);
  for (int lam : p.colours()) st.vocab.add(colour_symbol(lam), 1);
  st.universe = p.elements;
  for (const auto& [a, b] : p.leq)
    st.add_tuple(poset_order_symbol(), {a, b});
  for (int v : p.elements)
    st.add_tuple(colour_symbol(p.colour_of(v)), {v});
  return st;
}

// As above, further carrying the chain-refined colour predicates of a
// recoloured poset; every (colour, chain) pair in `lambdas` x [width] gets a
// symbol, interpreted by the recolouring (possibly empty).
inline Structure recoloured_structure(const ColouredPoset& p,
                                      const RecolouredPoset& rp) {
  Structure st = poset_structure(p);
  for (int lam : p.colours()) {
    for (int j = 1; j <= rp.width; ++j)
      st.vocab.add(chain_colour_symbol(lam, j), 1);
  }
  for (const auto& [v, lj] : rp.colour)
    st.add_tuple(chain_colour_symbol(lj.first, lj.second), {v});
  return st;
}

// Formula over the chain-refined colour predicates and `po` defining a
// linear order on every poset recoloured with `width` chains over colour set
// `lambdas`: x comes before y when x's chain index is smaller, and within
// one chain the poset order decides. An empty poset yields the always-false
// formula (the empty order is linear).
inline FormulaPtr build_phi_leq(const std::set<int>& lambdas, int width) {
  if (width < 0) throw input_error("build_phi_leq: negative width");
  if (lambdas.empty() || width == 0) return f_false();

  auto in_chain = [&](int j, const std::string& var) {
    FormulaPtr f;
    for (int lam : lambdas) {
      FormulaPtr atom = f_atom(chain_colour_symbol(lam, j), {var});
      f = f ? f_or(f, atom) : atom;
    }
    return f;
  };

  FormulaPtr earlier;  // x in an earlier chain than y
  for (int i = 1; i <= width; ++i) {
    for (int j = i + 1; j <= width; ++j) {
      FormulaPtr both = f_and(in_chain(i, "x"), in_chain(j, "y"));
      earlier = earlier ? f_or(earlier, both) : both;
    }
  }
  FormulaPtr same;  // x and y in one chain
  for (int j = 1; j <= width; ++j) {
    FormulaPtr both = f_and(in_chain(j, "x"), in_chain(j, "y"));
    same = same ? f_or(same, both) : both;
  }
  FormulaPtr within =
      f_and(same, f_atom(poset_order_symbol(), {"x", "y"}));
  return earlier ? f_or(earlier, within) : within;
}

// The pairs the defining formula accepts on the given poset.
inline std::set<std::pair<int, int>> defined_order_pairs(
    const ColouredPoset& p) {
  WidthResult wr = width_and_chain_cover(p);
  RecolouredPoset rp = recolour(p, wr.cover);
  Structure st = recoloured_structure(p, rp);
  FormulaPtr phi = build_phi_leq(p.colours(), rp.width);
  std::set<std::pair<int, int>> out;
  for (int a : p.elements) {
    for (int b : p.elements) {
      if (evaluate(st, phi, {{"x", a}, {"y", b}})) out.emplace(a, b);
    }
  }
  return out;
}

// Is `pairs` a linear order of `universe`: reflexive, antisymmetric,
// transitive, and total?
inline bool is_linear_order(const std::set<int>& universe,
                            const std::set<std::pair<int, int>>& pairs) {
  for (const auto& [a, b] : pairs) {
    if (!universe.count(a) || !universe.count(b)) return false;
  }
  auto has = [&](int a, int b) { return pairs.count({a, b}) != 0; };
  for (int a : universe) {
    if (!has(a, a)) return false;
    for (int b : universe) {
      if (a != b && !has(a, b) && !has(b, a)) return false;  // totality
      if (a != b && has(a, b) && has(b, a)) return false;    // antisymmetry
      for (int c : universe) {
        if (has(a, b) && has(b, c) && !has(a, c)) return false;
      }
    }
  }
  return true;
}

// Decide whether the poset satisfies phi, reading the reserved linear-order
// symbol `leq` through the defining formula: compute a minimum chain cover,
// refine the colouring, and evaluate phi with every leq atom replaced by the
// synthesized order. The verdict matches evaluation under any linear order
// whenever phi is order-invariant.
inline bool poset_model_check(const ColouredPoset& p, const FormulaPtr& phi) {
  PosetReport rep = validate_poset(p);
  if (!rep.valid()) throw input_error("poset_model_check: " + rep.describe());
  WidthResult wr = width_and_chain_cover(p);
  RecolouredPoset rp = recolour(p, wr.cover);
  Structure st = recoloured_structure(p, rp);
  FormulaPtr leq_def = build_phi_leq(p.colours(), rp.width);
  FormulaPtr replaced = substitute_atom(phi, "leq", {"x", "y"}, leq_def);
  return evaluate(st, replaced);
}

// --- poset file format ------------------------------------------------------
//
//   poset <n>            elements are 1..n
//   le <a> <b>           order pairs; the reflexive closure is implied
//   col <a> <colour>     colour assignment (default 0)
//
// '#' starts a comment; blank lines are skipped.

inline ColouredPoset parse_poset(std::istream& is) {
  ColouredPoset p;
  bool have_header = false;
  int n = 0;
  std::set<int> coloured;
  std::string line;
  int lineno = 0;
  auto want_element = [&](long long v, const char* what) {
    if (v < 1 || v > n)
      throw parse_error("line " + std::to_string(lineno) + ": " + what + " " +
                        std::to_string(v) + " out of range 1.." +
                        std::to_string(n));
    return static_cast<int>(v);
  };
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;  // blank
    if (!have_header) {
      if (tag != "poset")
        throw parse_error("line " + std::to_string(lineno) +
                          ": expected poset header");
      long long nn = -1;
      if (!(ls >> nn) || nn < 0)
        throw parse_error("line " + std::to_string(lineno) +
                          ": malformed poset header");
      std::string junk;
      if (ls >> junk)
        throw parse_error("line " + std::to_string(lineno) +
                          ": trailing tokens after poset header");
      n = static_cast<int>(nn);
      for (int v = 1; v <= n; ++v) {
        p.elements.insert(v);
        p.leq.emplace(v, v);
      }
      have_header = true;
      continue;
    }
    if (tag == "poset")
      throw parse_error("line " + std::to_string(lineno) +
                        ": duplicate poset header");
    if (tag == "le") {
      long long a = 0, b = 0;
      if (!(ls >> a >> b))
        throw parse_error("line " + std::to_string(lineno) +
                          ": malformed le line");
      std::string junk;
      if (ls >> junk)
        throw parse_error("line " + std::to_string(lineno) +
                          ": trailing tokens after le line");
      p.leq.emplace(want_element(a, "element"), want_element(b, "element"));
    } else if (tag == "col") {
      long long a = 0, c = -1;
      if (!(ls >> a >> c) || c < 0)
        throw parse_error("line " + std::to_string(lineno) +
                          ": malformed col line");
      std::string junk;
      if (ls >> junk)
        throw parse_error("line " + std::to_string(lineno) +
                          ": trailing tokens after col line");
      int a_el = want_element(a, "element");
      if (!coloured.insert(a_el).second)
        throw parse_error("line " + std::to_string(lineno) + ": element " +
                          std::to_string(a_el) + " coloured twice");
      p.colour[a_el] = static_cast<int>(c);
    } else {
      throw parse_error("line " + std::to_string(lineno) +
                        ": unknown line tag '" + tag + "'");
    }
  }
  if (!have_header) throw parse_error("missing poset header");
  return p;
}

inline ColouredPoset parse_poset(const std::string& text) {
  std::istringstream is(text);
  return parse_poset(is);
}

inline void write_poset(std::ostream& os, const ColouredPoset& p) {
  int n = static_cast<int>(p.elements.size());
  for (int v = 1; v <= n; ++v) {
    if (!p.elements.count(v))
      throw input_error("write_poset: elements must be exactly 1.." +
                        std::to_string(n));
  }
  os << "poset " << n << "\n";
  for (const auto& [a, b] : p.leq) {
    if (a != b) os << "le " << a << " " << b << "\n";
  }
  for (int v : p.elements) os << "col " << v << " " << p.colour_of(v) << "\n";
}

}  // namespace invfo
