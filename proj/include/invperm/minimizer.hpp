#pragma once
// Solvers for the minimum-inversion objective: per-node optimal child
// permutations (exhaustive and subset-DP strategies) and the tree-level
// minimum obtained by optimizing every node independently.  A brute-force
// enumeration over whole orderings is included as the test oracle.
//
// Tie-breaking is deterministic everywhere: among optimal child
// permutations, the lexicographically smallest (over child slots) wins.

#include <vector>

#include "invperm/counting.hpp"
#include "invperm/tree.hpp"

namespace invperm {

struct NodeSolution {
  int node = -1;
  count_t mrinv = 0;
  std::vector<int> best_perm;  // child slots in visit order
};

// cost of one child permutation: sum over pairs placed (earlier, later) of
// xinv[earlier][later]
count_t rinv(const CrossInvMatrix& table, const std::vector<int>& child_perm);
count_t rinv(const Tree& tree, int node, const Ranking& ranking,
             const std::vector<int>& child_perm);

// minimum over all k! child permutations; degree must not exceed the limit
NodeSolution mrinv_exhaustive(const CrossInvMatrix& table, int factorial_limit = 8);
NodeSolution mrinv_exhaustive(const Tree& tree, int node, const Ranking& ranking,
                              int factorial_limit = 8);

// subset DP: Cost[S] = min over the last-placed child s of
//   Cost[S \ {s}] + sum_{j in S, j != s} xinv[j][s]
// with Cost[{}] = 0.  The inner sums are built incrementally,
//   g[s][S] = g[s][S \ lowest(S)] + xinv[lowest(S)][s],
// which needs a k * 2^k table; above degree 21 that table would break the
// 1 GiB memory guard, so degrees 22..24 recompute the sums directly.
NodeSolution mrinv_dp(const CrossInvMatrix& table, int degree_limit = 24);
NodeSolution mrinv_dp(const Tree& tree, int node, const Ranking& ranking,
                      int degree_limit = 24);

enum class Strategy { exhaustive, dp, auto_select };

struct MinvResult {
  count_t total = 0;
  Ordering ordering;
  std::vector<NodeSolution> per_node;  // one entry per internal node, document order
};

// total = sum of per-node minima; the returned ordering achieves it, i.e.
// inv(induced_ranking(tree, ordering), ranking) == total (checked internally)
MinvResult minv(const Tree& tree, const Ranking& ranking,
                Strategy strategy = Strategy::auto_select);

// minimum of inv(induced_ranking, ranking) over ALL global orderings; the
// number of orderings (product of per-node factorials) must stay within the
// guard.  Test oracle only.
count_t minv_bruteforce(const Tree& tree, const Ranking& ranking,
                        count_t ordering_guard = 10'000'000);

}  // namespace invperm
