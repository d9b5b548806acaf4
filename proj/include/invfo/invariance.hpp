#pragma once

// Does the truth of a sentence depend on which successor relation (or which
// linear order) interprets the reserved symbol? Exhaustive checkers
// enumerate all candidates at small sizes; sampled checkers draw seeded
// random candidates. Witnesses are reported deterministically: the
// lexicographically least satisfying and falsifying relations.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "invfo/errors.hpp"
#include "invfo/formula.hpp"
#include "invfo/structure.hpp"

namespace invfo {

struct InvarianceResult {
  bool invariant = true;  // exhaustive: proven; sampled: no violation found
  bool exhaustive = false;
  // (relation making phi true, relation making phi false); present iff a
  // violation was found
  std::optional<std::pair<std::set<std::pair<int, int>>, std::set<std::pair<int, int>>>> witness;
  std::uint64_t seed = 0;
  int samples = 0;  // candidates actually evaluated
};

struct SampleMode {
  std::uint64_t seed = 1;
  int count = 100;
};

namespace detail {

// small deterministic PRNG (splitmix64), identical on every platform
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

// Fisher-Yates over v[begin..], driven by SplitMix64 so results do not
// depend on the standard library in use.
inline void shuffle_tail(std::vector<int>& v, std::size_t begin, SplitMix64& rng) {
  if (v.size() <= begin + 1) return;
  for (std::size_t i = v.size() - 1; i > begin; --i) {
    std::size_t j = begin + static_cast<std::size_t>(rng.next() % (i - begin + 1));
    std::swap(v[i], v[j]);
  }
}

// successor pairs of the cycle elems[0] -> elems[1] -> ... -> elems[0]
inline std::set<std::pair<int, int>> cycle_pairs(const std::vector<int>& elems) {
  std::set<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < elems.size(); ++i)
    pairs.insert({elems[i], elems[(i + 1) % elems.size()]});
  return pairs;
}

// reflexive linear-order pairs of the order elems[0] < elems[1] < ...
inline std::set<std::pair<int, int>> order_pairs(const std::vector<int>& elems) {
  std::set<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i; j < elems.size(); ++j) pairs.insert({elems[i], elems[j]});
  return pairs;
}

// Feeds candidate interpretations of `symbol` to phi and reduces to an
// InvarianceResult. `next_candidate` yields relations until it returns
// nullopt; exhaustive mode scans everything and reports the least
// true/false relations, sampled mode stops at the first disagreement.
template <typename Gen>
inline InvarianceResult scan_candidates(const Structure& a, const FormulaPtr& phi,
                                        const std::string& symbol, bool exhaustive, Gen&& gen) {
  InvarianceResult res;
  res.exhaustive = exhaustive;
  std::optional<std::set<std::pair<int, int>>> least_true, least_false;
  while (auto cand = gen()) {
    ++res.samples;
    Structure b = with_binary_relation(a, symbol, *cand);
    bool val = evaluate(b, phi);
    auto& slot = val ? least_true : least_false;
    if (!slot || *cand < *slot) slot = *cand;
    if (!exhaustive && least_true && least_false) break;  // sampled: stop at first violation
  }
  if (least_true && least_false) {
    res.invariant = false;
    res.witness = std::make_pair(*least_true, *least_false);
  }
  return res;
}

}  // namespace detail

// --- successor invariance -----------------------------------------------------

// Exhaustive: evaluates phi under every cyclic successor relation on the
// universe ((n-1)! of them, so the universe is capped).
inline InvarianceResult check_successor_invariance(const Structure& a, const FormulaPtr& phi,
                                                   int max_exhaustive = 8) {
  const int n = static_cast<int>(a.universe.size());
  if (n > max_exhaustive)
    throw capability_error("exhaustive successor check limited to " +
                           std::to_string(max_exhaustive) + " elements, universe has " +
                           std::to_string(n));
  std::vector<int> elems(a.universe.begin(), a.universe.end());
  if (n == 0) {
    // only the empty relation exists
    InvarianceResult res;
    res.exhaustive = true;
    res.samples = 1;
    return res;
  }
  // fix the least element, permute the rest: each cyclic permutation once
  std::vector<int> rest(elems.begin() + 1, elems.end());
  bool more = true;
  auto gen = [&]() -> std::optional<std::set<std::pair<int, int>>> {
    if (!more) return std::nullopt;
    std::vector<int> cyc;
    cyc.push_back(elems[0]);
    cyc.insert(cyc.end(), rest.begin(), rest.end());
    more = std::next_permutation(rest.begin(), rest.end());
    return detail::cycle_pairs(cyc);
  };
  return detail::scan_candidates(a, phi, "succ", true, gen);
}

// Sampled: seeded random cyclic successors; finds violations without the
// factorial blow-up but cannot prove invariance.
inline InvarianceResult check_successor_invariance(const Structure& a, const FormulaPtr& phi,
                                                   SampleMode mode) {
  std::vector<int> elems(a.universe.begin(), a.universe.end());
  detail::SplitMix64 rng(mode.seed);
  int left = elems.empty() ? std::min(mode.count, 1) : mode.count;
  auto gen = [&]() -> std::optional<std::set<std::pair<int, int>>> {
    if (left <= 0) return std::nullopt;
    --left;
    detail::shuffle_tail(elems, 1, rng);  // keep the least element in front
    return detail::cycle_pairs(elems);
  };
  InvarianceResult res = detail::scan_candidates(a, phi, "succ", false, gen);
  res.seed = mode.seed;
  return res;
}

// --- order invariance ---------------------------------------------------------

// Exhaustive: evaluates phi under every linear order (n! of them).
inline InvarianceResult check_order_invariance(const Structure& a, const FormulaPtr& phi,
                                               int max_exhaustive = 6) {
  const int n = static_cast<int>(a.universe.size());
  if (n > max_exhaustive)
    throw capability_error("exhaustive order check limited to " + std::to_string(max_exhaustive) +
                           " elements, universe has " + std::to_string(n));
  std::vector<int> elems(a.universe.begin(), a.universe.end());
  bool more = true;
  auto gen = [&]() -> std::optional<std::set<std::pair<int, int>>> {
    if (!more) return std::nullopt;
    auto pairs = detail::order_pairs(elems);
    more = std::next_permutation(elems.begin(), elems.end());
    return pairs;
  };
  return detail::scan_candidates(a, phi, "leq", true, gen);
}

inline InvarianceResult check_order_invariance(const Structure& a, const FormulaPtr& phi,
                                               SampleMode mode) {
  std::vector<int> elems(a.universe.begin(), a.universe.end());
  detail::SplitMix64 rng(mode.seed);
  int left = mode.count;
  auto gen = [&]() -> std::optional<std::set<std::pair<int, int>>> {
    if (left <= 0) return std::nullopt;
    --left;
    detail::shuffle_tail(elems, 0, rng);
    return detail::order_pairs(elems);
  };
  InvarianceResult res = detail::scan_candidates(a, phi, "leq", false, gen);
  res.seed = mode.seed;
  return res;
}

}  // namespace invfo
