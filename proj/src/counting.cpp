#include "invperm/counting.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

namespace invperm {

count_t checked_add(count_t a, count_t b) {
  count_t r;
  require(!__builtin_add_overflow(a, b, &r), errc::internal_error,
          "count overflow in addition");
  return r;
}

count_t checked_mul(count_t a, count_t b) {
  count_t r;
  require(!__builtin_mul_overflow(a, b, &r), errc::internal_error,
          "count overflow in multiplication");
  return r;
}

namespace {

count_t merge_count(std::vector<long long>& v, std::vector<long long>& tmp,
                    std::size_t lo, std::size_t hi) {
  if (hi - lo <= 1) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  count_t c = merge_count(v, tmp, lo, mid) + merge_count(v, tmp, mid, hi);
  std::size_t i = lo, j = mid, o = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      c += count_t(mid - i);  // v[i..mid) all exceed v[j]
      tmp[o++] = v[j++];
    } else {
      tmp[o++] = v[i++];
    }
  }
  while (i < mid) tmp[o++] = v[i++];
  while (j < hi) tmp[o++] = v[j++];
  std::copy(tmp.begin() + long(lo), tmp.begin() + long(hi), v.begin() + long(lo));
  return c;
}

// ranks within one ranking are distinct, so a repeated value across the two
// lists means the same item appears on both sides
void check_disjoint(const std::vector<int>& a_sorted, const std::vector<int>& b_sorted) {
  std::size_t i = 0, j = 0;
  while (i < a_sorted.size() && j < b_sorted.size()) {
    if (a_sorted[i] == b_sorted[j])
      fail(errc::overlap, "sides share rank " + std::to_string(a_sorted[i]));
    if (a_sorted[i] < b_sorted[j])
      ++i;
    else
      ++j;
  }
}

count_t xinv_sorted_merge(const std::vector<int>& a_sorted,
                          const std::vector<int>& b_sorted) {
  // pairs (x in A, y in B) with x > y: sweep B, count how many of A remain
  // strictly above each y
  count_t c = 0;
  std::size_t i = 0;
  for (int y : b_sorted) {
    while (i < a_sorted.size() && a_sorted[i] < y) ++i;
    c = checked_add(c, count_t(a_sorted.size() - i));
  }
  return c;
}

count_t xinv_sorted_binary_search(const std::vector<int>& small_sorted,
                                  const std::vector<int>& large,
                                  bool small_is_a) {
  count_t c = 0;
  if (small_is_a) {
    // for each y in B, count elements of A above y
    for (int y : large) {
      auto it = std::upper_bound(small_sorted.begin(), small_sorted.end(), y);
      c = checked_add(c, count_t(small_sorted.end() - it));
    }
  } else {
    // for each x in A, count elements of B below x
    for (int x : large) {
      auto it = std::lower_bound(small_sorted.begin(), small_sorted.end(), x);
      c = checked_add(c, count_t(it - small_sorted.begin()));
    }
  }
  return c;
}

std::vector<int> ranks_of(const std::vector<std::string>& items,
                          const Ranking& ranking) {
  std::vector<int> r;
  r.reserve(items.size());
  std::set<std::string> seen;
  for (const std::string& s : items) {
    require(seen.insert(s).second, errc::overlap, "item repeated: " + s);
    r.push_back(ranking.rank_of(s));
  }
  return r;
}

}  // namespace

count_t inv_sequence(std::vector<long long> values) {
  std::vector<long long> tmp(values.size());
  return merge_count(values, tmp, 0, values.size());
}

count_t inv_sequence_bruteforce(const std::vector<long long>& values) {
  count_t c = 0;
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j)
      if (values[i] > values[j]) ++c;
  return c;
}

namespace {

std::vector<long long> sigma_by_rho_order(const Ranking& sigma, const Ranking& rho) {
  require(sigma.n() == rho.n(), errc::domain_mismatch,
          "rankings have different sizes");
  std::vector<long long> values;
  values.reserve(std::size_t(rho.n()));
  for (int r = 1; r <= rho.n(); ++r) {
    const std::string& item = rho.item_at(r);
    require(sigma.contains(item), errc::domain_mismatch,
            "rankings have different domains: " + item);
    values.push_back(sigma.rank_of(item));
  }
  return values;
}

}  // namespace

count_t inv(const Ranking& sigma, const Ranking& rho) {
  return inv_sequence(sigma_by_rho_order(sigma, rho));
}

count_t inv_bruteforce(const Ranking& sigma, const Ranking& rho) {
  return inv_sequence_bruteforce(sigma_by_rho_order(sigma, rho));
}

count_t xinv_ranks(const std::vector<int>& a_ranks, const std::vector<int>& b_ranks,
                   XinvPath path) {
  if (a_ranks.empty() || b_ranks.empty()) return 0;
  if (path == XinvPath::brute) {
    count_t c = 0;
    std::set<int> seen(a_ranks.begin(), a_ranks.end());
    for (int y : b_ranks)
      require(!seen.count(y), errc::overlap, "sides share rank " + std::to_string(y));
    for (int x : a_ranks)
      for (int y : b_ranks)
        if (x > y) ++c;
    return c;
  }
  std::vector<int> a = a_ranks, b = b_ranks;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  check_disjoint(a, b);
  if (path == XinvPath::auto_select) {
    const double s = double(std::min(a.size(), b.size()));
    const double large = double(std::max(a.size(), b.size()));
    path = (s <= large / std::log2(s + 2)) ? XinvPath::binary_search
                                           : XinvPath::merge;
  }
  if (path == XinvPath::merge) return xinv_sorted_merge(a, b);
  // binary-search path: sorted smaller side, probe with the larger
  if (a.size() <= b.size()) return xinv_sorted_binary_search(a, b, /*small_is_a=*/true);
  return xinv_sorted_binary_search(b, a, /*small_is_a=*/false);
}

count_t xinv(const std::vector<std::string>& a_items,
             const std::vector<std::string>& b_items, const Ranking& ranking,
             XinvPath path) {
  for (const std::string& s : a_items)
    for (const std::string& t : b_items)
      if (s == t) fail(errc::overlap, "sides share item " + s);
  return xinv_ranks(ranks_of(a_items, ranking), ranks_of(b_items, ranking), path);
}

long long dinv_ranks(const std::vector<int>& a_ranks, const std::vector<int>& b_ranks) {
  return (long long)(xinv_ranks(a_ranks, b_ranks)) -
         (long long)(xinv_ranks(b_ranks, a_ranks));
}

long long dinv(const std::vector<std::string>& a_items,
               const std::vector<std::string>& b_items, const Ranking& ranking) {
  return (long long)(xinv(a_items, b_items, ranking)) -
         (long long)(xinv(b_items, a_items, ranking));
}

count_t mann_whitney_u(const std::vector<std::string>& a_items,
                       const std::vector<std::string>& b_items,
                       const Ranking& ranking) {
  require(int(a_items.size() + b_items.size()) == ranking.n(), errc::not_a_partition,
          "sides must cover the whole domain");
  std::vector<int> a, b;
  std::vector<bool> seen(std::size_t(ranking.n()) + 1, false);
  try {
    a = ranks_of(a_items, ranking);
    b = ranks_of(b_items, ranking);
  } catch (const error& e) {
    if (e.code() == errc::domain_mismatch || e.code() == errc::overlap)
      fail(errc::not_a_partition, "sides must partition the domain");
    throw;
  }
  for (const std::vector<int>* side : {&a, &b})
    for (int r : *side) {
      if (seen[std::size_t(r)])
        fail(errc::not_a_partition, "sides must partition the domain");
      seen[std::size_t(r)] = true;
    }
  const count_t ab = xinv_ranks(a, b);
  const count_t ba = xinv_ranks(b, a);
  return std::min(ab, ba);
}

count_t wilcoxon_w(const std::vector<std::string>& b_items, const Ranking& ranking) {
  count_t w = 0;
  std::set<std::string> seen;
  for (const std::string& s : b_items) {
    require(seen.insert(s).second, errc::overlap, "item repeated: " + s);
    w = checked_add(w, count_t(ranking.rank_of(s)));
  }
  return w;
}

count_t xinv_via_wilcoxon(count_t a, count_t b, count_t w_b) {
  const count_t lo = b * (b + 1) / 2;
  const count_t hi = b * (2 * a + b + 1) / 2;
  require(w_b >= lo && w_b <= hi, errc::invalid_rank_sum,
          "rank sum outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return checked_mul(a, b) + lo - w_b;
}

bool CrossInvMatrix::consistent() const {
  const int m = k();
  if (int(xinv.size()) != m) return false;
  for (int i = 0; i < m; ++i) {
    if (int(xinv[std::size_t(i)].size()) != m) return false;
    if (xinv[std::size_t(i)][std::size_t(i)] != 0) return false;
    for (int j = i + 1; j < m; ++j)
      if (xinv[std::size_t(i)][std::size_t(j)] + xinv[std::size_t(j)][std::size_t(i)] !=
          sizes[std::size_t(i)] * sizes[std::size_t(j)])
        return false;
  }
  return true;
}

namespace {

CrossInvMatrix matrix_from_sorted_lists(int node,
                                        const std::vector<std::vector<int>>& lists) {
  CrossInvMatrix m;
  m.node = node;
  const int k = int(lists.size());
  m.sizes.resize(std::size_t(k));
  m.xinv.assign(std::size_t(k), std::vector<count_t>(std::size_t(k), 0));
  for (int i = 0; i < k; ++i) m.sizes[std::size_t(i)] = lists[std::size_t(i)].size();
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      const count_t c = xinv_sorted_merge(lists[std::size_t(i)], lists[std::size_t(j)]);
      m.xinv[std::size_t(i)][std::size_t(j)] = c;
      m.xinv[std::size_t(j)][std::size_t(i)] =
          checked_mul(m.sizes[std::size_t(i)], m.sizes[std::size_t(j)]) - c;
    }
  return m;
}

// bottom-up pass: returns the sorted rank list of the subtree, collecting one
// table per internal node visited
std::vector<int> build_tables(const Tree& tree, int v, const Ranking& ranking,
                              std::vector<CrossInvMatrix>* out) {
  if (tree.is_leaf(v)) return {ranking.rank_of(tree.node(v).leaf_name)};
  std::vector<std::vector<int>> child_lists;
  child_lists.reserve(tree.node(v).children.size());
  for (int c : tree.node(v).children)
    child_lists.push_back(build_tables(tree, c, ranking, out));
  if (out) out->push_back(matrix_from_sorted_lists(v, child_lists));
  // merge children into the subtree's sorted list
  std::vector<int> merged;
  for (const std::vector<int>& l : child_lists) {
    std::vector<int> next;
    next.reserve(merged.size() + l.size());
    std::merge(merged.begin(), merged.end(), l.begin(), l.end(),
               std::back_inserter(next));
    merged = std::move(next);
  }
  return merged;
}

}  // namespace

CrossInvMatrix cross_inv_matrix(const Tree& tree, int node, const Ranking& ranking) {
  require(node >= 0 && node < tree.node_count(), errc::out_of_range, "no such node");
  require(!tree.is_leaf(node), errc::out_of_range, "node is a leaf");
  std::vector<std::vector<int>> child_lists;
  for (int c : tree.node(node).children)
    child_lists.push_back(build_tables(tree, c, ranking, nullptr));
  return matrix_from_sorted_lists(node, child_lists);
}

std::vector<CrossInvMatrix> all_cross_inv_matrices(const Tree& tree,
                                                   const Ranking& ranking) {
  std::vector<CrossInvMatrix> out;
  build_tables(tree, tree.root(), ranking, &out);
  std::sort(out.begin(), out.end(),
            [](const CrossInvMatrix& a, const CrossInvMatrix& b) {
              return a.node < b.node;
            });
  return out;
}

}  // namespace invperm
