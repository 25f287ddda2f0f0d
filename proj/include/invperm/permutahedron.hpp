#pragma once
// Exhaustive small-n laboratory for comparison-model problems.  A Problem
// colors every ranking of n items with an output token; the permutahedron
// graph connects rankings differing by one adjacent transposition.  Edges
// whose endpoints share a color are monochromatic; restricting to them
// splits the rankings into components, and the average number of
// bichromatic edges at a ranking is the problem's average sensitivity.
// The analysis drives the structural checks: the binary-tree sensitivity
// criterion, root-sensitivity decomposition, subtree/Lipschitz bounds,
// successor graphs, the partition property, the parity condition on leaf
// child sets, and the two-block component-size formulas.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "invperm/counting.hpp"
#include "invperm/traces.hpp"
#include "invperm/tree.hpp"

namespace invperm {

using rational = boost::multiprecision::cpp_rational;

struct Problem {
  int n = 0;
  std::string name;
  std::vector<std::string> item_names;
  // order[p] = item index at rank p+1; the token is opaque but
  // equality-comparable, equal tokens <=> equal problem outputs
  std::function<std::uint64_t(const std::vector<int>&)> evaluate_order;

  std::uint64_t evaluate(const Ranking& ranking) const;
};

Problem problem_minv_on_tree(const Tree& tree);
// items = A then B; token = number of (a, b) pairs ranked a above b
Problem problem_xinv_partition(std::vector<std::string> a_items,
                               std::vector<std::string> b_items);
Problem problem_inversion_count(int n);
Problem problem_inversion_parity(int n);
Problem problem_selection(int n, int r);  // token = item of rank r
Problem problem_sorting(int n);           // token = the whole ranking

struct PermutahedronAnalysis {
  int n = 0;
  std::string problem;
  count_t total_rankings = 0;
  count_t mono_edges = 0;
  count_t bi_edges = 0;
  count_t components = 0;
  // (component size, number of components of that size), ascending
  std::vector<std::pair<count_t, count_t>> sizes_histogram;
  rational avg_sensitivity;  // 2 * bi_edges / n!
  std::vector<std::uint64_t> colors;        // ranking id (lex order) -> token
  std::vector<std::int32_t> component_of;   // ranking id -> component root id

  count_t component_size_of(count_t ranking_id) const;
  std::string to_json() const;
};

// full enumeration of all n! rankings; ids are lexicographic over the
// rank-to-item order
PermutahedronAnalysis analyze(const Problem& problem, int limit_n = 9);

// rank-r selection has exactly n * C(n-1, r-1) components
count_t component_count_selection(int n, int r);

// trace lower bound Gamma(s+2)/n from the average sensitivity
double sensitivity_lemma_bound(double s, int n);
double sensitivity_lemma_bound_log2(double s, int n);
// component count, itself a trace lower bound
count_t connectivity_bound(const PermutahedronAnalysis& analysis);

struct BinaryCriterion {
  bool insensitive = false;
  long long lhs = 0;  // signed cross-inversion difference of the side sets
  long long rhs = 0;  // |A_<| - |A_>| + |B_>| - |B_<|
};

// exact sensitivity test for one adjacent transposition on a binary tree:
// the objective is unchanged iff lhs == rhs
BinaryCriterion binary_criterion_check(const Tree& tree, const Ranking& ranking,
                                       Transposition t);

// probability, over a uniform ranking and a uniform adjacent transposition
// whose two items lie in different root subtrees, that the root's minimal
// cross-inversion count changes
rational root_sensitivity(const Tree& tree, int limit_n = 9);

struct DecompositionTerm {
  int node = -1;
  rational lca_probability;  // 2 * sum_{i<j} n_i n_j / (n (n-1))
  rational sensitivity;      // root sensitivity of the subtree at node
};

struct DecompositionReport {
  rational avg_sensitivity;  // measured s
  rational combination;      // (n-1) * sum of probability-weighted terms
  bool equal = false;
  std::vector<DecompositionTerm> terms;
};

// verifies that the average sensitivity decomposes over the transposition's
// LCA node, exactly
DecompositionReport sensitivity_decomposition_check(const Tree& tree,
                                                    int limit_n = 8);

struct SubtreeBound {
  int node = -1;
  count_t leaves = 0;
  rational bound;  // l (n - l) / n - 1, a lower bound on avg sensitivity
};

SubtreeBound subtree_sensitivity_bound(const Tree& tree);

struct BalancedSubtree {
  int node = -1;
  rational alpha;  // leaf fraction, inside [1/(k+1), k/(k+1)] for max degree k
};

// descend-to-heaviest-child walk stopping at the first sufficiently light node
BalancedSubtree balanced_subtree(const Tree& tree);

struct LipschitzReport {
  rational s_before;
  rational s_after;
  rational bound;  // l (l - 1) / n
  bool ok = false;
};

// replacing a subtree by another with the same leaf count moves the average
// sensitivity by at most the bound
LipschitzReport lipschitz_check(const Tree& tree, int node, const Tree& replacement,
                                int limit_n = 8);

// ranks r in {1..n-1} whose adjacent transposition leaves the output unchanged
std::vector<int> successor_graph(const Problem& problem, const Ranking& ranking);

struct PartitionPropertyReport {
  bool holds = false;
  std::vector<std::vector<int>> classes;  // item indices, each class sorted
  // populated when holds == false:
  std::vector<int> counter_order;  // rank-to-item order of the witness ranking
  int counter_rank = 0;            // swapped ranks (counter_rank, counter_rank+1)
  bool counter_same_class = false;  // true: same class yet sensitive
  std::string detail;
};

// searches for a partition of the items such that, in every ranking, an
// adjacent swap preserves the output exactly when the two items share a class
PartitionPropertyReport partition_property_check(const Problem& problem,
                                                 int limit_n = 9);

// product of factorials of the successor-graph component sizes; requires the
// partition property, and then equals the true component size of the ranking
bigint component_size_from_successor(const Problem& problem, const Ranking& ranking,
                                     int limit_n = 9);

struct ParityCondition {
  bool satisfies = false;
  int max_class = 0;  // largest leaf child set size k
  bigint bound;       // ceil(n! / (2 (k!)^2)) when satisfied, else 0
};

// leaf child sets must have at most one odd size, and every proper ancestor
// of the node carrying the odd one must have no leaf children at all
ParityCondition parity_condition_check(const Tree& tree);

// adjacent-transposition path between two extensions of the dag such that
// every intermediate ranking is still an extension
std::vector<Transposition> monochromatic_path(const ComparisonDAG& dag,
                                              const Ranking& from, const Ranking& to);

// two-block problems: component size from the run lengths of same-side items
bigint mw_component_size(const Ranking& ranking, const std::vector<std::string>& a_items,
                         const std::vector<std::string>& b_items);

struct ChunkBounds {
  int m_star = 0;  // minimal k with Pr[every A-run <= k] >= 3/4
  int n_star = 0;  // same for B-runs
  double m_lower = 0, m_upper = 0;  // bracket for m_star
  double n_lower = 0, n_upper = 0;  // bracket for n_star
  bool within = false;
};

ChunkBounds mw_chunk_bounds(int a, int b);

}  // namespace invperm
