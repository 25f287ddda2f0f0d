#pragma once
// Shared fixtures and independent brute-force oracles for the test binaries.
// Everything here is deliberately written the dumb way (full enumeration,
// pair-by-pair counting) so that it cannot share a bug with the library code
// it checks.

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "invperm/counting.hpp"
#include "invperm/distribution.hpp"
#include "invperm/rng.hpp"
#include "invperm/traces.hpp"
#include "invperm/tree.hpp"

namespace oracle {

using invperm::bigint;
using invperm::ComparisonDAG;
using invperm::count_t;
using invperm::Ranking;
using invperm::SplitMix64;
using invperm::Tree;

// isolated leaf "u" with rank r next to a star of n-1 leaves; the optimal
// value is min(r-1, n-r)
inline std::pair<Tree, Ranking> rank_instance(int n, int r) {
  std::vector<Tree> star;
  std::map<std::string, int> ranks;
  for (int i = 1; i <= n - 1; ++i) {
    const std::string name = "v" + std::to_string(i);
    star.push_back(Tree::make_leaf(name));
    ranks[name] = i < r ? i : i + 1;
  }
  ranks["u"] = r;
  const Tree tree =
      Tree::make_internal({Tree::make_leaf("u"), Tree::make_internal(star)});
  return {tree, Ranking::from_rank_map(ranks)};
}

// the eight-leaf clustering example: (((knee thigh) toe) (chest waist))
// against ((cheek mouth) ear); head-to-toe ranks correlate perfectly
inline Tree body_parts_tree() {
  auto leaf = [](const char* s) { return Tree::make_leaf(s); };
  const Tree lower = Tree::make_internal(
      {Tree::make_internal(
           {Tree::make_internal({leaf("knee"), leaf("thigh")}), leaf("toe")}),
       Tree::make_internal({leaf("chest"), leaf("waist")})});
  const Tree upper = Tree::make_internal(
      {Tree::make_internal({leaf("cheek"), leaf("mouth")}), leaf("ear")});
  return Tree::make_internal({lower, upper});
}

inline Ranking body_parts_ranking() {
  return Ranking::from_order(
      {"ear", "cheek", "mouth", "chest", "waist", "thigh", "knee", "toe"});
}

// all subsets of {1..a+b} of size a, counted by the number of (x in A,
// y in B) pairs with x > y
inline std::vector<bigint> dist_bruteforce(int a, int b) {
  std::vector<bigint> counts(std::size_t(a) * b + 1, 0);
  std::vector<bool> pick(std::size_t(a + b), false);
  std::fill(pick.begin(), pick.begin() + a, true);
  std::sort(pick.begin(), pick.end());  // lowest combination for next_permutation
  do {
    int k = 0, b_seen = 0;
    for (int r = 0; r < a + b; ++r) {
      if (pick[std::size_t(r)])
        k += b_seen;  // A-item of rank r+1 over every lower-ranked B-item
      else
        ++b_seen;
    }
    counts[std::size_t(k)] += 1;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return counts;
}

inline Ranking random_ranking(std::vector<std::string> names, SplitMix64& rng) {
  rng.shuffle(names);
  return Ranking::from_order(names);
}

// comparison outcomes consistent with a hidden ranking: each unordered pair
// is "asked" with probability num/den and the edge oriented by the truth
inline ComparisonDAG random_dag(int n, SplitMix64& rng, std::uint64_t num = 1,
                                std::uint64_t den = 3) {
  std::vector<std::string> items;
  for (int i = 1; i <= n; ++i) items.push_back("x" + std::to_string(i));
  const std::vector<int> truth = rng.permutation(n);  // truth[i] = rank position
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform_below(den) < num)
        edges.push_back(truth[std::size_t(i)] < truth[std::size_t(j)]
                            ? std::make_pair(i, j)
                            : std::make_pair(j, i));
  return ComparisonDAG::from_items(items, edges);
}

}  // namespace oracle
