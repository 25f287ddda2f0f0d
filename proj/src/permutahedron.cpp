// Permutahedron analysis engine and the structural checks built on it.

#include "invperm/permutahedron.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>

#include "invperm/errors.hpp"
#include "json.hpp"

namespace invperm {

namespace {

count_t factorial_u64(int n) {
  count_t f = 1;
  for (int i = 2; i <= n; ++i) f = checked_mul(f, static_cast<count_t>(i));
  return f;
}

bigint factorial_big(int n) {
  bigint f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

bigint binom_big(int n, int k) {
  if (k < 0 || k > n) return 0;
  bigint out = 1;
  for (int i = 1; i <= k; ++i) {
    out *= (n - k + i);
    out /= i;
  }
  return out;
}

// minimum arrangement cost for a flat k x k cross-inversion matrix
count_t mrinv_flat(int k, const count_t* x, std::vector<count_t>& dp) {
  if (k <= 1) return 0;
  if (k == 2) return std::min(x[1], x[2]);
  const std::size_t full = std::size_t{1} << k;
  dp.assign(full, 0);
  for (std::size_t set = 1; set < full; ++set) {
    count_t best = ~count_t{0};
    for (std::size_t bits = set; bits;) {
      const int s = __builtin_ctzll(bits);
      bits &= bits - 1;
      const std::size_t rest = set & ~(std::size_t{1} << s);
      count_t inner = 0;
      for (std::size_t jb = rest; jb;) {
        const int j = __builtin_ctzll(jb);
        jb &= jb - 1;
        inner += x[j * k + s];
      }
      best = std::min(best, dp[rest] + inner);
    }
    dp[set] = best;
  }
  return dp[full - 1];
}

// per-ranking tree objective: ascending-rank sweep accumulates every
// internal node's cross-inversion matrix, then each node contributes its
// minimal arrangement cost
struct TreeEval {
  int n = 0;
  struct NodeInfo {
    int k = 0;
    int xoff = 0;
    int coff = 0;
  };
  std::vector<NodeInfo> nodes;
  std::vector<std::pair<int, int>> chain_flat;  // (node index, child slot)
  std::vector<int> chain_off;                   // per leaf
  std::vector<count_t> xmat, cnt, dp;

  explicit TreeEval(const Tree& tree) {
    n = static_cast<int>(tree.leaf_count());
    std::vector<int> compact(tree.node_count(), -1);
    std::vector<int> slot_in_parent(tree.node_count(), -1);
    int xoff = 0, coff = 0;
    for (int id = 0; id < static_cast<int>(tree.node_count()); ++id) {
      if (tree.is_leaf(id)) continue;
      const auto& kids = tree.node(id).children;
      for (std::size_t s = 0; s < kids.size(); ++s)
        slot_in_parent[kids[s]] = static_cast<int>(s);
      const int k = static_cast<int>(kids.size());
      if (k < 2) continue;  // degree-1 nodes never contribute
      compact[id] = static_cast<int>(nodes.size());
      nodes.push_back({k, xoff, coff});
      xoff += k * k;
      coff += k;
    }
    xmat.assign(xoff, 0);
    cnt.assign(coff, 0);
    const std::vector<int> leaves = tree.leaf_ids();
    chain_off.assign(n + 1, 0);
    for (int i = 0; i < n; ++i) {
      int cur = leaves[i];
      while (tree.node(cur).parent != -1) {
        const int par = tree.node(cur).parent;
        if (compact[par] >= 0)
          chain_flat.emplace_back(compact[par], slot_in_parent[cur]);
        cur = par;
      }
      chain_off[i + 1] = static_cast<int>(chain_flat.size());
    }
  }

  count_t evaluate(const std::vector<int>& order) {
    std::fill(xmat.begin(), xmat.end(), 0);
    std::fill(cnt.begin(), cnt.end(), 0);
    for (int p = 0; p < n; ++p) {
      const int leaf = order[p];
      for (int e = chain_off[leaf]; e < chain_off[leaf + 1]; ++e) {
        const auto [j, s] = chain_flat[e];
        const NodeInfo& nd = nodes[j];
        count_t* x = xmat.data() + nd.xoff + s * nd.k;
        const count_t* c = cnt.data() + nd.coff;
        for (int s2 = 0; s2 < nd.k; ++s2)
          if (s2 != s) x[s2] += c[s2];
        cnt[nd.coff + s] += 1;
      }
    }
    count_t total = 0;
    for (const NodeInfo& nd : nodes)
      total += mrinv_flat(nd.k, xmat.data() + nd.xoff, dp);
    return total;
  }
};

count_t lehmer_rank(const std::vector<int>& order, const std::vector<count_t>& fact) {
  const int n = static_cast<int>(order.size());
  count_t id = 0;
  for (int p = 0; p < n; ++p) {
    int smaller = 0;
    for (int q = p + 1; q < n; ++q)
      if (order[q] < order[p]) ++smaller;
    id += smaller * fact[n - 1 - p];
  }
  return id;
}

// lexicographic id of the ranking obtained by swapping ranks p+1, p+2,
// relative to the current id; requires order[p] < order[p+1]
count_t neighbor_id(const std::vector<int>& order, int p, count_t id,
                    const std::vector<count_t>& fact) {
  const int n = static_cast<int>(order.size());
  const int a = order[p], b = order[p + 1];
  int ca = 0, cb = 0;
  for (int q = p + 2; q < n; ++q) {
    ca += order[q] < a;
    cb += order[q] < b;
  }
  return id + (1 + cb - ca) * fact[n - 1 - p] + (ca - cb) * fact[n - 2 - p];
}

struct UnionFind {
  std::vector<std::int32_t> parent;
  std::vector<std::int32_t> size;
  explicit UnionFind(std::size_t n) : parent(n), size(n, 1) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::int32_t find(std::int32_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
  }
};

std::vector<int> order_of(const Problem& problem, const Ranking& ranking) {
  require(ranking.n() == problem.n, errc::domain_mismatch,
          "ranking size does not match the problem");
  std::vector<int> order(problem.n, -1);
  for (int i = 0; i < problem.n; ++i) {
    require(ranking.contains(problem.item_names[i]), errc::domain_mismatch,
            "ranking is missing item '" + problem.item_names[i] + "'");
    order[ranking.rank_of(problem.item_names[i]) - 1] = i;
  }
  return order;
}

std::vector<std::string> indexed_names(int n, const std::string& prefix) {
  std::vector<std::string> names;
  names.reserve(n);
  for (int i = 1; i <= n; ++i) names.push_back(prefix + std::to_string(i));
  return names;
}

// probability that the root's minimal arrangement cost changes under an
// adjacent swap of items from two different root subtrees
rational cross_sensitivity(const Tree& tree, int limit_n) {
  const int n = static_cast<int>(tree.leaf_count());
  require(n <= limit_n, errc::limit_exceeded,
          "sensitivity enumeration limited to " + std::to_string(limit_n) +
              " leaves");
  const int root = tree.root();
  const int k = tree.degree(root);
  require(k >= 2, errc::internal_error, "cross sensitivity needs degree >= 2");

  // slot of each leaf under the root
  std::vector<int> slot(n, -1);
  const std::vector<int> leaves = tree.leaf_ids();
  for (int s = 0; s < k; ++s) {
    for (int leaf_id : tree.leaves_under(tree.node(root).children[s])) {
      const auto it = std::find(leaves.begin(), leaves.end(), leaf_id);
      slot[it - leaves.begin()] = s;
    }
  }

  std::vector<count_t> x(static_cast<std::size_t>(k) * k), cnt(k), dp;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  count_t sensitive = 0, qualifying = 0;
  do {
    std::fill(x.begin(), x.end(), 0);
    std::fill(cnt.begin(), cnt.end(), 0);
    for (int p = 0; p < n; ++p) {
      const int s = slot[order[p]];
      for (int s2 = 0; s2 < k; ++s2)
        if (s2 != s) x[s * k + s2] += cnt[s2];
      ++cnt[s];
    }
    const count_t base = mrinv_flat(k, x.data(), dp);
    for (int p = 0; p + 1 < n; ++p) {
      const int i = slot[order[p]], j = slot[order[p + 1]];
      if (i == j) continue;
      ++qualifying;
      x[i * k + j] += 1;
      x[j * k + i] -= 1;
      if (mrinv_flat(k, x.data(), dp) != base) ++sensitive;
      x[i * k + j] -= 1;
      x[j * k + i] += 1;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  require(qualifying > 0, errc::internal_error, "no qualifying transposition");
  return rational(sensitive, qualifying);
}

}  // namespace

std::uint64_t Problem::evaluate(const Ranking& ranking) const {
  return evaluate_order(order_of(*this, ranking));
}

Problem problem_minv_on_tree(const Tree& tree) {
  Problem p;
  p.n = static_cast<int>(tree.leaf_count());
  p.name = "minv-on-tree";
  p.item_names = tree.leaf_names();
  auto eval = std::make_shared<TreeEval>(tree);
  p.evaluate_order = [eval](const std::vector<int>& order) {
    return eval->evaluate(order);
  };
  return p;
}

Problem problem_xinv_partition(std::vector<std::string> a_items,
                               std::vector<std::string> b_items) {
  Problem p;
  p.name = "xinv-partition";
  const int a = static_cast<int>(a_items.size());
  p.item_names = std::move(a_items);
  p.item_names.insert(p.item_names.end(), b_items.begin(), b_items.end());
  p.n = static_cast<int>(p.item_names.size());
  require(a >= 1 && p.n - a >= 1, errc::not_a_partition,
          "both blocks must be non-empty");
  {
    std::vector<std::string> sorted = p.item_names;
    std::sort(sorted.begin(), sorted.end());
    require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
            errc::not_a_partition, "blocks must be disjoint");
  }
  p.evaluate_order = [a](const std::vector<int>& order) {
    std::uint64_t token = 0, seen_b = 0;
    for (int item : order) {
      if (item < a)
        token += seen_b;  // every earlier B item ranks below this A item
      else
        ++seen_b;
    }
    return token;
  };
  return p;
}

Problem problem_inversion_count(int n) {
  Problem p;
  p.n = n;
  p.name = "inversion-count";
  p.item_names = indexed_names(n, "x");
  p.evaluate_order = [](const std::vector<int>& order) {
    std::uint64_t token = 0;
    for (std::size_t q = 0; q < order.size(); ++q)
      for (std::size_t pp = 0; pp < q; ++pp) token += order[pp] > order[q];
    return token;
  };
  return p;
}

Problem problem_inversion_parity(int n) {
  Problem p = problem_inversion_count(n);
  p.name = "inversion-parity";
  auto base = p.evaluate_order;
  p.evaluate_order = [base](const std::vector<int>& order) {
    return base(order) & 1;
  };
  return p;
}

Problem problem_selection(int n, int r) {
  require(r >= 1 && r <= n, errc::out_of_range, "selection rank out of range");
  Problem p;
  p.n = n;
  p.name = "selection(" + std::to_string(r) + ")";
  p.item_names = indexed_names(n, "x");
  p.evaluate_order = [r](const std::vector<int>& order) {
    return static_cast<std::uint64_t>(order[r - 1]);
  };
  return p;
}

Problem problem_sorting(int n) {
  Problem p;
  p.n = n;
  p.name = "sorting";
  p.item_names = indexed_names(n, "x");
  std::vector<count_t> fact(n + 1, 1);
  for (int i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;
  p.evaluate_order = [fact](const std::vector<int>& order) {
    return lehmer_rank(order, fact);
  };
  return p;
}

count_t PermutahedronAnalysis::component_size_of(count_t ranking_id) const {
  require(ranking_id < total_rankings, errc::out_of_range,
          "ranking id out of range");
  const std::int32_t root = component_of[ranking_id];
  count_t size = 0;
  for (std::int32_t r : component_of) size += (r == root);
  return size;
}

std::string PermutahedronAnalysis::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["problem"] = problem;
  j["components"] = components;
  j["sizes_histogram"] = nlohmann::json::array();
  for (auto [size, freq] : sizes_histogram)
    j["sizes_histogram"].push_back({size, freq});
  j["avg_sensitivity"] = {
      {"num", numerator(avg_sensitivity).convert_to<std::uint64_t>()},
      {"den", denominator(avg_sensitivity).convert_to<std::uint64_t>()}};
  const double s = avg_sensitivity.convert_to<double>();
  j["bounds"] = {{"connectivity", components},
                 {"sensitivity_gamma_log2", sensitivity_lemma_bound_log2(s, n)}};
  return j.dump();
}

PermutahedronAnalysis analyze(const Problem& problem, int limit_n) {
  const int n = problem.n;
  require(n >= 1, errc::out_of_range, "problem needs at least one item");
  require(n <= limit_n && n <= 10, errc::limit_exceeded,
          "analysis limited to " + std::to_string(std::min(limit_n, 10)) +
              " items");
  PermutahedronAnalysis out;
  out.n = n;
  out.problem = problem.name;
  out.total_rankings = factorial_u64(n);

  std::vector<count_t> fact(n + 1, 1);
  for (int i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;

  out.colors.resize(out.total_rankings);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  count_t id = 0;
  do {
    out.colors[id++] = problem.evaluate_order(order);
  } while (std::next_permutation(order.begin(), order.end()));
  require(id == out.total_rankings, errc::internal_error, "enumeration drift");

  UnionFind uf(out.total_rankings);
  std::iota(order.begin(), order.end(), 0);
  id = 0;
  do {
    for (int p = 0; p + 1 < n; ++p) {
      if (order[p] > order[p + 1]) continue;  // visit each edge once
      const count_t nid = neighbor_id(order, p, id, fact);
      if (out.colors[id] == out.colors[nid]) {
        ++out.mono_edges;
        uf.unite(static_cast<std::int32_t>(id), static_cast<std::int32_t>(nid));
      } else {
        ++out.bi_edges;
      }
    }
    ++id;
  } while (std::next_permutation(order.begin(), order.end()));
  require(out.mono_edges + out.bi_edges ==
              out.total_rankings * (n - 1) / 2,
          errc::internal_error, "edge count drift");

  out.component_of.resize(out.total_rankings);
  std::map<std::int32_t, count_t> root_size;
  for (count_t i = 0; i < out.total_rankings; ++i) {
    out.component_of[i] = uf.find(static_cast<std::int32_t>(i));
    ++root_size[out.component_of[i]];
  }
  out.components = root_size.size();
  std::map<count_t, count_t> hist;
  for (auto [root, size] : root_size) ++hist[size];
  out.sizes_histogram.assign(hist.begin(), hist.end());
  out.avg_sensitivity = rational(2 * out.bi_edges, out.total_rankings);
  return out;
}

count_t component_count_selection(int n, int r) {
  require(n >= 1 && r >= 1 && r <= n, errc::out_of_range,
          "selection rank out of range");
  // n * C(n-1, r-1)
  const bigint value = n * binom_big(n - 1, r - 1);
  require(value <= bigint(~count_t{0}), errc::limit_exceeded,
          "component count overflows");
  return value.convert_to<count_t>();
}

double sensitivity_lemma_bound(double s, int n) {
  require(s >= 0 && n >= 1, errc::out_of_range, "bound needs s >= 0, n >= 1");
  return std::exp(std::lgamma(s + 2.0)) / n;
}

double sensitivity_lemma_bound_log2(double s, int n) {
  require(s >= 0 && n >= 1, errc::out_of_range, "bound needs s >= 0, n >= 1");
  return (std::lgamma(s + 2.0) - std::log(static_cast<double>(n))) / std::log(2.0);
}

count_t connectivity_bound(const PermutahedronAnalysis& analysis) {
  return analysis.components;
}

BinaryCriterion binary_criterion_check(const Tree& tree, const Ranking& ranking,
                                       Transposition t) {
  for (int id : tree.internal_ids())
    require(tree.degree(id) == 2, errc::not_binary,
            "criterion requires a binary tree");
  const int n = static_cast<int>(tree.leaf_count());
  require(ranking.n() == n, errc::domain_mismatch,
          "ranking size does not match the tree");
  require(t.r >= 1 && t.r < n, errc::out_of_range,
          "transposition rank out of range");

  const std::vector<std::string> order = ranking.order();
  const std::string& lo_name = order[t.r - 1];
  const std::string& hi_name = order[t.r];
  const int lo = tree.leaf_id_of(lo_name);
  const int hi = tree.leaf_id_of(hi_name);
  const int w = tree.lca(lo, hi);

  // child subtrees of the meeting node containing each affected leaf
  auto child_containing = [&](int leaf) {
    for (int c : tree.node(w).children) {
      const auto under = tree.leaves_under(c);
      if (std::find(under.begin(), under.end(), leaf) != under.end()) return c;
    }
    fail(errc::internal_error, "leaf not under its ancestor");
  };
  const int c_lo = child_containing(lo);
  const int c_hi = child_containing(hi);

  auto side_ranks = [&](int child, int excluded_leaf) {
    std::vector<int> ranks;
    for (int leaf_id : tree.leaves_under(child)) {
      if (leaf_id == excluded_leaf) continue;
      ranks.push_back(ranking.rank_of(tree.node(leaf_id).leaf_name));
    }
    std::sort(ranks.begin(), ranks.end());
    return ranks;
  };
  const std::vector<int> a_ranks = side_ranks(c_lo, lo);
  const std::vector<int> b_ranks = side_ranks(c_hi, hi);

  long long a_lt = 0, a_gt = 0, b_lt = 0, b_gt = 0;
  for (int rk : a_ranks) (rk < t.r ? a_lt : a_gt) += 1;
  for (int rk : b_ranks) (rk < t.r + 1 ? b_lt : b_gt) += 1;

  BinaryCriterion out;
  out.lhs = dinv_ranks(a_ranks, b_ranks);
  out.rhs = (a_lt - a_gt) + (b_gt - b_lt);
  out.insensitive = out.lhs == out.rhs;
  return out;
}

rational root_sensitivity(const Tree& tree, int limit_n) {
  require(tree.degree(tree.root()) == 2, errc::not_degree2,
          "root sensitivity requires a degree-2 root");
  return cross_sensitivity(tree, limit_n);
}

DecompositionReport sensitivity_decomposition_check(const Tree& tree, int limit_n) {
  const int n = static_cast<int>(tree.leaf_count());
  require(n >= 2 && n <= limit_n, errc::limit_exceeded,
          "decomposition check limited to " + std::to_string(limit_n) + " leaves");
  DecompositionReport report;
  report.avg_sensitivity = analyze(problem_minv_on_tree(tree), limit_n).avg_sensitivity;
  report.combination = 0;
  for (int id : tree.internal_ids()) {
    if (tree.degree(id) < 2) continue;
    // probability that a uniformly random ordered pair of distinct leaves
    // meets exactly at this node
    bigint cross_pairs = 0;
    const auto& kids = tree.node(id).children;
    for (std::size_t i = 0; i < kids.size(); ++i)
      for (std::size_t j = i + 1; j < kids.size(); ++j)
        cross_pairs += bigint(tree.subtree_leaf_count(kids[i])) *
                       bigint(tree.subtree_leaf_count(kids[j]));
    DecompositionTerm term;
    term.node = id;
    term.lca_probability =
        rational(2 * cross_pairs, bigint(n) * (n - 1));
    term.sensitivity = cross_sensitivity(tree.subtree(id), limit_n);
    report.combination += term.lca_probability * term.sensitivity;
    report.terms.push_back(std::move(term));
  }
  report.combination *= n - 1;
  report.equal = report.avg_sensitivity == report.combination;
  return report;
}

SubtreeBound subtree_sensitivity_bound(const Tree& tree) {
  const BalancedSubtree bs = balanced_subtree(tree);
  const int n = tree.leaf_count();
  const int l = tree.subtree_leaf_count(bs.node);
  SubtreeBound out;
  out.node = bs.node;
  out.leaves = static_cast<count_t>(l);
  out.bound = rational(bigint(l) * (n - l) - n, bigint(n));  // l(n-l)/n - 1
  return out;
}

BalancedSubtree balanced_subtree(const Tree& tree) {
  const int n = tree.leaf_count();
  require(n >= 2, errc::out_of_range, "balance walk needs at least two leaves");
  const int k = tree.max_degree();
  int v = tree.root();
  // descend to the heaviest child until the leaf fraction drops to k/(k+1)
  while (rational(tree.subtree_leaf_count(v), n) > rational(k, k + 1)) {
    const auto& kids = tree.node(v).children;
    int heaviest = kids[0];
    for (int c : kids)
      if (tree.subtree_leaf_count(c) > tree.subtree_leaf_count(heaviest))
        heaviest = c;
    v = heaviest;
  }
  BalancedSubtree out;
  out.node = v;
  out.alpha = rational(tree.subtree_leaf_count(v), n);
  require(out.alpha >= rational(1, k + 1) && out.alpha <= rational(k, k + 1),
          errc::internal_error, "balance walk left the guaranteed window");
  return out;
}

LipschitzReport lipschitz_check(const Tree& tree, int node, const Tree& replacement,
                                int limit_n) {
  const int n = tree.leaf_count();
  require(n <= limit_n, errc::limit_exceeded,
          "sensitivity enumeration limited to " + std::to_string(limit_n) +
              " leaves");
  const int l = tree.subtree_leaf_count(node);
  require(replacement.leaf_count() == l, errc::leaf_count_mismatch,
          "replacement must preserve the leaf count");
  // reuse the original leaf names so the surrounding tree stays valid
  std::vector<std::string> names;
  for (int leaf_id : tree.leaves_under(node))
    names.push_back(tree.node(leaf_id).leaf_name);
  const Tree after =
      tree.with_replaced_subtree(node, replacement.with_renamed_leaves(names));

  LipschitzReport report;
  report.s_before = analyze(problem_minv_on_tree(tree), limit_n).avg_sensitivity;
  report.s_after = analyze(problem_minv_on_tree(after), limit_n).avg_sensitivity;
  report.bound = rational(bigint(l) * (l - 1), bigint(n));
  report.ok = abs(report.s_before - report.s_after) <= report.bound;
  return report;
}

std::vector<int> successor_graph(const Problem& problem, const Ranking& ranking) {
  std::vector<int> order = order_of(problem, ranking);
  const std::uint64_t base = problem.evaluate_order(order);
  std::vector<int> out;
  for (int r = 1; r < problem.n; ++r) {
    std::swap(order[r - 1], order[r]);
    if (problem.evaluate_order(order) == base) out.push_back(r);
    std::swap(order[r - 1], order[r]);
  }
  return out;
}

PartitionPropertyReport partition_property_check(const Problem& problem,
                                                 int limit_n) {
  const int n = problem.n;
  const PermutahedronAnalysis analysis = analyze(problem, limit_n);
  PartitionPropertyReport report;
  if (n == 1) {
    report.holds = true;
    report.classes = {{0}};
    return report;
  }

  std::vector<count_t> fact(n + 1, 1);
  for (int i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;

  // pass 1: which unordered item pairs are ever sensitive when adjacent
  std::vector<char> ever_sensitive(static_cast<std::size_t>(n) * n, 0);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  count_t id = 0;
  do {
    for (int p = 0; p + 1 < n; ++p) {
      if (order[p] > order[p + 1]) continue;
      const count_t nid = neighbor_id(order, p, id, fact);
      if (analysis.colors[id] != analysis.colors[nid])
        ever_sensitive[static_cast<std::size_t>(order[p]) * n + order[p + 1]] = 1;
    }
    ++id;
  } while (std::next_permutation(order.begin(), order.end()));

  // candidate classes: closure of the always-insensitive relation
  UnionFind uf(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!ever_sensitive[static_cast<std::size_t>(a) * n + b]) uf.unite(a, b);

  // pass 2: the partition must explain every adjacent swap exactly
  std::iota(order.begin(), order.end(), 0);
  id = 0;
  do {
    for (int p = 0; p + 1 < n; ++p) {
      if (order[p] > order[p + 1]) continue;
      const count_t nid = neighbor_id(order, p, id, fact);
      const bool insensitive = analysis.colors[id] == analysis.colors[nid];
      const bool same_class = uf.find(order[p]) == uf.find(order[p + 1]);
      if (insensitive != same_class) {
        report.holds = false;
        report.counter_order = order;
        report.counter_rank = p + 1;
        report.counter_same_class = same_class;
        report.detail =
            same_class
                ? "items " + problem.item_names[order[p]] + ", " +
                      problem.item_names[order[p + 1]] +
                      " share a class but their swap changes the output"
                : "items " + problem.item_names[order[p]] + ", " +
                      problem.item_names[order[p + 1]] +
                      " are in different classes but their swap preserves the output";
        return report;
      }
    }
    ++id;
  } while (std::next_permutation(order.begin(), order.end()));

  report.holds = true;
  std::map<std::int32_t, std::vector<int>> by_root;
  for (int i = 0; i < n; ++i) by_root[uf.find(i)].push_back(i);
  for (auto& [root, members] : by_root) report.classes.push_back(members);
  std::sort(report.classes.begin(), report.classes.end());
  return report;
}

bigint component_size_from_successor(const Problem& problem, const Ranking& ranking,
                                     int limit_n) {
  const PartitionPropertyReport prop = partition_property_check(problem, limit_n);
  require(prop.holds, errc::partition_property_violated,
          "problem does not satisfy the partition property: " + prop.detail);
  const std::vector<int> succ = successor_graph(problem, ranking);
  std::vector<char> has_edge(problem.n + 1, 0);
  for (int r : succ) has_edge[r] = 1;
  bigint size = 1;
  count_t run = 1;
  for (int r = 1; r < problem.n; ++r) {
    if (has_edge[r]) {
      ++run;
    } else {
      size *= factorial_big(static_cast<int>(run));
      run = 1;
    }
  }
  size *= factorial_big(static_cast<int>(run));
  return size;
}

ParityCondition parity_condition_check(const Tree& tree) {
  const Tree tr = tree.normalized();
  ParityCondition out;
  int odd_node = -1, odd_count = 0;
  for (int id : tr.internal_ids()) {
    int leaf_children = 0;
    for (int c : tr.node(id).children) leaf_children += tr.is_leaf(c);
    out.max_class = std::max(out.max_class, leaf_children);
    if (leaf_children % 2 == 1) {
      ++odd_count;
      odd_node = id;
    }
  }
  out.satisfies = odd_count <= 1;
  if (out.satisfies && odd_node >= 0) {
    for (int u = tr.node(odd_node).parent; u != -1; u = tr.node(u).parent) {
      int leaf_children = 0;
      for (int c : tr.node(u).children) leaf_children += tr.is_leaf(c);
      if (leaf_children != 0) {
        out.satisfies = false;
        break;
      }
    }
  }
  if (out.satisfies) {
    // ceil(n! / (2 k!^2)); the bounded quantity is an integer
    const bigint num = factorial_big(static_cast<int>(tr.leaf_count()));
    const bigint den = 2 * factorial_big(out.max_class) * factorial_big(out.max_class);
    out.bound = (num + den - 1) / den;
  }
  return out;
}

std::vector<Transposition> monochromatic_path(const ComparisonDAG& dag,
                                              const Ranking& from, const Ranking& to) {
  degree_in_complement(from, dag);  // validates the extension property
  degree_in_complement(to, dag);
  const int n = dag.n();
  std::vector<int> cur(n), target(n), pos(n);
  for (int u = 0; u < n; ++u) {
    cur[from.rank_of(dag.items()[u]) - 1] = u;
    target[to.rank_of(dag.items()[u]) - 1] = u;
  }
  for (int p = 0; p < n; ++p) pos[cur[p]] = p;

  std::vector<Transposition> steps;
  for (int r = 0; r < n; ++r) {
    const int x = target[r];
    for (int s = pos[x]; s > r; --s) {
      const int y = cur[s - 1];
      // y ranks above x here but below x in the target, so no dag path
      // forces y before x and the swap stays inside the extensions
      require(!dag.reaches(y, x), errc::internal_error,
              "bubble step would violate the dag");
      std::swap(cur[s - 1], cur[s]);
      pos[y] = s;
      pos[x] = s - 1;
      steps.push_back(Transposition{s});
    }
  }
  require(cur == target, errc::internal_error, "path did not reach the target");
  return steps;
}

bigint mw_component_size(const Ranking& ranking, const std::vector<std::string>& a_items,
                         const std::vector<std::string>& b_items) {
  std::map<std::string, int> side;
  for (const std::string& s : a_items)
    require(side.emplace(s, 0).second, errc::not_a_partition,
            "duplicate item '" + s + "'");
  for (const std::string& s : b_items)
    require(side.emplace(s, 1).second, errc::not_a_partition,
            "duplicate item '" + s + "'");
  require(static_cast<int>(side.size()) == ranking.n(), errc::not_a_partition,
          "blocks must cover the ranking's domain");
  bigint size = 1;
  count_t run = 0;
  int prev = -1;
  for (const std::string& name : ranking.order()) {
    const auto it = side.find(name);
    require(it != side.end(), errc::not_a_partition,
            "ranking item '" + name + "' is in neither block");
    if (it->second == prev) {
      ++run;
    } else {
      size *= factorial_big(static_cast<int>(run));
      run = 1;
      prev = it->second;
    }
  }
  size *= factorial_big(static_cast<int>(run));
  return size;
}

namespace {

// exact probability that every run of the a-side, in a uniform interleaving
// of a + b items, has length at most k
rational all_runs_at_most(int a, int b, int k) {
  bigint favorable = 0;
  for (int j = 0; a - j * (k + 1) >= 0; ++j) {
    const bigint term = binom_big(b + 1, j) * binom_big(a - j * (k + 1) + b, b);
    favorable += (j % 2 == 0) ? term : -term;
  }
  return rational(favorable, binom_big(a + b, b));
}

int minimal_star(int a, int b) {
  const rational target(3, 4);
  for (int k = 1;; ++k)
    if (all_runs_at_most(a, b, k) >= target) return k;
}

}  // namespace

ChunkBounds mw_chunk_bounds(int a, int b) {
  require(a >= 1 && b >= 1, errc::out_of_range, "both block sizes must be positive");
  ChunkBounds out;
  out.m_star = minimal_star(a, b);
  out.n_star = minimal_star(b, a);
  out.m_lower = std::max(1.0, static_cast<double>(a) / (b + 1));
  out.m_upper = static_cast<double>(a + b) / b * std::log(4.0 * (b + 1));
  out.n_lower = std::max(1.0, static_cast<double>(b) / (a + 1));
  out.n_upper = static_cast<double>(a + b) / a * std::log(4.0 * (a + 1));
  out.within = out.m_star >= out.m_lower && out.m_star <= out.m_upper &&
               out.n_star >= out.n_lower && out.n_star <= out.n_upper;
  return out;
}

}  // namespace invperm
