#pragma once
// Inversion and cross-inversion counting, the Mann-Whitney / Wilcoxon
// statistics, and the per-node cross-inversion tables that every solver
// consumes.  Counts are 64-bit unsigned; additions and multiplications of
// counts are overflow-checked (pair counts stay far below 2^64 for any
// enumerable input, but the checks are kept unconditionally).

#include <cstdint>
#include <string>
#include <vector>

#include "invperm/errors.hpp"
#include "invperm/tree.hpp"

namespace invperm {

using count_t = std::uint64_t;

count_t checked_add(count_t a, count_t b);
count_t checked_mul(count_t a, count_t b);

// pairs (i < j) with values[i] > values[j]; merge counting, O(m log m)
count_t inv_sequence(std::vector<long long> values);
// O(m^2) reference path
count_t inv_sequence_bruteforce(const std::vector<long long>& values);

// inversions of sigma with respect to rho: pairs with rho(x) < rho(y) and
// sigma(x) > sigma(y); both rankings must share one domain
count_t inv(const Ranking& sigma, const Ranking& rho);
count_t inv_bruteforce(const Ranking& sigma, const Ranking& rho);

enum class XinvPath { auto_select, merge, binary_search, brute };

// |{(x,y) in A x B : rank(x) > rank(y)}| for disjoint rank lists.  The
// auto-selected path sorts the smaller side and binary-searches the larger
// when s <= L / log2(s+2) (s, L the two sizes), otherwise merges.
count_t xinv_ranks(const std::vector<int>& a_ranks, const std::vector<int>& b_ranks,
                   XinvPath path = XinvPath::auto_select);
count_t xinv(const std::vector<std::string>& a_items,
             const std::vector<std::string>& b_items, const Ranking& ranking,
             XinvPath path = XinvPath::auto_select);

// xinv(A,B) - xinv(B,A); always congruent to |A|*|B| mod 2
long long dinv(const std::vector<std::string>& a_items,
               const std::vector<std::string>& b_items, const Ranking& ranking);
long long dinv_ranks(const std::vector<int>& a_ranks, const std::vector<int>& b_ranks);

// min of the two cross-inversion counts; A and B must partition the domain
count_t mann_whitney_u(const std::vector<std::string>& a_items,
                       const std::vector<std::string>& b_items,
                       const Ranking& ranking);

// rank sum of B
count_t wilcoxon_w(const std::vector<std::string>& b_items, const Ranking& ranking);
// ab + b(b+1)/2 - W_B; W_B must lie in [b(b+1)/2, b(2a+b+1)/2]
count_t xinv_via_wilcoxon(count_t a, count_t b, count_t w_b);

// cross-inversion table over one internal node's children:
// xinv[i][j] = XInv(L_i, L_j), complementary entries sum to |L_i| * |L_j|
struct CrossInvMatrix {
  int node = -1;
  std::vector<count_t> sizes;
  std::vector<std::vector<count_t>> xinv;
  int k() const { return int(sizes.size()); }
  bool consistent() const;
};

CrossInvMatrix cross_inv_matrix(const Tree& tree, int node, const Ranking& ranking);
// one table per internal node (document order), built in a single bottom-up
// pass that merges the children's sorted rank lists
std::vector<CrossInvMatrix> all_cross_inv_matrices(const Tree& tree,
                                                   const Ranking& ranking);

}  // namespace invperm
