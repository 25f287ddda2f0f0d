// Exact per-node solvers and the tree-level minimizer.

#include "invperm/minimizer.hpp"

#include <algorithm>
#include <numeric>

#include "invperm/errors.hpp"

namespace invperm {

namespace {

void check_perm(const CrossInvMatrix& table, const std::vector<int>& perm) {
  const int k = table.k();
  require(static_cast<int>(perm.size()) == k, errc::bad_permutation,
          "child permutation has wrong length");
  std::vector<char> seen(k, 0);
  for (int s : perm) {
    require(s >= 0 && s < k && !seen[s], errc::bad_permutation,
            "child permutation is not a bijection on slots");
    seen[s] = 1;
  }
}

}  // namespace

count_t rinv(const CrossInvMatrix& table, const std::vector<int>& child_perm) {
  check_perm(table, child_perm);
  const int k = table.k();
  count_t total = 0;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      total = checked_add(total, table.xinv[child_perm[i]][child_perm[j]]);
  return total;
}

count_t rinv(const Tree& tree, int node, const Ranking& ranking,
             const std::vector<int>& child_perm) {
  return rinv(cross_inv_matrix(tree, node, ranking), child_perm);
}

NodeSolution mrinv_exhaustive(const CrossInvMatrix& table, int factorial_limit) {
  const int k = table.k();
  require(k <= factorial_limit, errc::limit_exceeded,
          "degree " + std::to_string(k) + " exceeds exhaustive limit " +
              std::to_string(factorial_limit));
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  NodeSolution best{table.node, rinv(table, perm), perm};
  while (std::next_permutation(perm.begin(), perm.end())) {
    count_t cost = 0;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) cost += table.xinv[perm[i]][perm[j]];
    // strict improvement keeps the first (lexicographically smallest) optimum
    if (cost < best.mrinv) {
      best.mrinv = cost;
      best.best_perm = perm;
    }
  }
  return best;
}

NodeSolution mrinv_exhaustive(const Tree& tree, int node, const Ranking& ranking,
                              int factorial_limit) {
  return mrinv_exhaustive(cross_inv_matrix(tree, node, ranking), factorial_limit);
}

NodeSolution mrinv_dp(const CrossInvMatrix& table, int degree_limit) {
  const int k = table.k();
  require(k <= degree_limit && k <= 24, errc::limit_exceeded,
          "degree " + std::to_string(k) + " exceeds DP limit " +
              std::to_string(std::min(degree_limit, 24)));
  if (k == 0) return {table.node, 0, {}};

  const std::size_t full = std::size_t{1} << k;
  std::vector<count_t> cost(full, 0);

  // g[s * full + S] = sum_{j in S} xinv[j][s]; only built when it fits
  const bool use_table = k <= 21;
  std::vector<count_t> g;
  if (use_table) {
    g.assign(static_cast<std::size_t>(k) * full, 0);
    for (std::size_t set = 1; set < full; ++set) {
      const int low = __builtin_ctzll(set);
      const std::size_t rest = set & (set - 1);
      for (int s = 0; s < k; ++s)
        g[s * full + set] = g[s * full + rest] + table.xinv[low][s];
    }
  }

  for (std::size_t set = 1; set < full; ++set) {
    count_t best = ~count_t{0};
    for (std::size_t bits = set; bits;) {
      const int s = __builtin_ctzll(bits);
      bits &= bits - 1;
      const std::size_t rest = set & ~(std::size_t{1} << s);
      count_t inner;
      if (use_table) {
        inner = g[static_cast<std::size_t>(s) * full + rest];
      } else {
        inner = 0;
        for (std::size_t jb = rest; jb;) {
          const int j = __builtin_ctzll(jb);
          jb &= jb - 1;
          inner += table.xinv[j][s];
        }
      }
      best = std::min(best, checked_add(cost[rest], inner));
    }
    cost[set] = best;
  }

  // forward reconstruction: placing c first costs sum_{j in rest} xinv[c][j]
  // on top of cost[rest]; taking the smallest feasible c at every step yields
  // the lexicographically smallest optimal permutation
  NodeSolution out{table.node, cost[full - 1], {}};
  std::size_t remaining = full - 1;
  while (remaining) {
    bool placed = false;
    for (std::size_t bits = remaining; bits && !placed;) {
      const int c = __builtin_ctzll(bits);
      bits &= bits - 1;
      const std::size_t rest = remaining & ~(std::size_t{1} << c);
      count_t first = 0;
      for (std::size_t jb = rest; jb;) {
        const int j = __builtin_ctzll(jb);
        jb &= jb - 1;
        first += table.xinv[c][j];
      }
      if (first + cost[rest] == cost[remaining]) {
        out.best_perm.push_back(c);
        remaining = rest;
        placed = true;
      }
    }
    require(placed, errc::internal_error, "DP reconstruction found no feasible child");
  }
  return out;
}

NodeSolution mrinv_dp(const Tree& tree, int node, const Ranking& ranking,
                      int degree_limit) {
  return mrinv_dp(cross_inv_matrix(tree, node, ranking), degree_limit);
}

MinvResult minv(const Tree& tree, const Ranking& ranking, Strategy strategy) {
  MinvResult result;
  result.ordering = Ordering::identity(tree);
  for (const CrossInvMatrix& table : all_cross_inv_matrices(tree, ranking)) {
    NodeSolution sol;
    switch (strategy) {
      case Strategy::exhaustive:
        sol = mrinv_exhaustive(table);
        break;
      case Strategy::dp:
        sol = mrinv_dp(table);
        break;
      case Strategy::auto_select:
        // tiny degrees are cheaper without the DP's table allocations
        sol = table.k() <= 3 ? mrinv_exhaustive(table) : mrinv_dp(table);
        break;
    }
    result.total = checked_add(result.total, sol.mrinv);
    result.ordering.set_perm(sol.node, sol.best_perm);
    result.per_node.push_back(std::move(sol));
  }
  // the per-node minima must be realized simultaneously by the ordering
  const count_t achieved =
      inv(induced_ranking(tree, result.ordering), ranking);
  require(achieved == result.total, errc::internal_error,
          "ordering does not realize the per-node minima");
  return result;
}

count_t minv_bruteforce(const Tree& tree, const Ranking& ranking,
                        count_t ordering_guard) {
  std::vector<int> internal = tree.internal_ids();
  count_t combos = 1;
  for (int id : internal) {
    count_t f = 1;
    for (int d = 2; d <= tree.degree(id); ++d) f = checked_mul(f, d);
    combos = checked_mul(combos, f);
    require(combos <= ordering_guard, errc::limit_exceeded,
            "ordering count exceeds brute-force guard");
  }

  Ordering ordering = Ordering::identity(tree);
  std::vector<std::vector<int>> perms;
  perms.reserve(internal.size());
  for (int id : internal) {
    std::vector<int> p(tree.degree(id));
    std::iota(p.begin(), p.end(), 0);
    perms.push_back(std::move(p));
  }

  count_t best = ~count_t{0};
  for (;;) {
    for (std::size_t i = 0; i < internal.size(); ++i)
      ordering.set_perm(internal[i], perms[i]);
    best = std::min(best, inv(induced_ranking(tree, ordering), ranking));

    // odometer step over the product of per-node permutations
    std::size_t i = 0;
    while (i < perms.size() && !std::next_permutation(perms[i].begin(), perms[i].end()))
      ++i;  // wrapped back to identity, carry into the next node
    if (i == perms.size()) break;
  }
  return best;
}

}  // namespace invperm
