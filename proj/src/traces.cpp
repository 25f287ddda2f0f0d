// Comparison-DAG machinery: closure, extension counting/enumeration, and the
// lucky-item encoding with its replay decoder.

#include "invperm/traces.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "invperm/errors.hpp"
#include "json.hpp"

namespace invperm {

namespace {

Ranking order_to_ranking(const ComparisonDAG& dag, const std::vector<int>& order) {
  std::vector<std::string> names;
  names.reserve(order.size());
  for (int u : order) names.push_back(dag.items()[u]);
  return Ranking::from_order(names);
}

// item index at each rank, validating that the ranking extends the dag
std::vector<int> extension_positions(const Ranking& ranking, const ComparisonDAG& dag) {
  require(ranking.n() == dag.n(), errc::not_an_extension,
          "ranking and dag have different ground sets");
  std::vector<int> at_rank(dag.n(), -1);
  for (int u = 0; u < dag.n(); ++u) {
    require(ranking.contains(dag.items()[u]), errc::not_an_extension,
            "ranking is missing item '" + dag.items()[u] + "'");
    at_rank[ranking.rank_of(dag.items()[u]) - 1] = u;
  }
  for (auto [u, v] : dag.edges())
    require(ranking.rank_of(dag.items()[u]) < ranking.rank_of(dag.items()[v]),
            errc::not_an_extension,
            "ranking violates edge " + dag.items()[u] + " -> " + dag.items()[v]);
  return at_rank;
}

}  // namespace

ComparisonDAG ComparisonDAG::parse(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail(errc::parse_error, std::string("invalid JSON: ") + e.what());
  }
  require(j.is_object() && j.contains("items") && j.contains("edges") &&
              j.size() == 2 && j["items"].is_array() && j["edges"].is_array(),
          errc::parse_error, "dag must be {\"items\": [...], \"edges\": [...]}");
  std::vector<std::string> items;
  for (const auto& it : j["items"]) {
    require(it.is_string() && !it.get<std::string>().empty(), errc::parse_error,
            "dag items must be non-empty strings");
    items.push_back(it.get<std::string>());
  }
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j["edges"]) {
    require(e.is_array() && e.size() == 2 && e[0].is_number_integer() &&
                e[1].is_number_integer(),
            errc::parse_error, "dag edges must be [u, v] index pairs");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return from_items(std::move(items), std::move(edges));
}

ComparisonDAG ComparisonDAG::from_items(std::vector<std::string> items,
                                        std::vector<std::pair<int, int>> edges) {
  ComparisonDAG dag;
  dag.items_ = std::move(items);
  dag.edges_ = std::move(edges);
  dag.finalize();
  return dag;
}

void ComparisonDAG::finalize() {
  const int n = static_cast<int>(items_.size());
  require(n >= 1, errc::parse_error, "dag needs at least one item");
  require(n <= 64, errc::limit_exceeded, "dag supports at most 64 items");
  {
    std::vector<std::string> sorted = items_;
    std::sort(sorted.begin(), sorted.end());
    require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
            errc::parse_error, "dag items must be distinct");
  }
  for (auto [u, v] : edges_) {
    require(u >= 0 && u < n && v >= 0 && v < n, errc::out_of_range,
            "dag edge endpoint out of range");
    require(u != v, errc::cyclic, "dag has a self-loop");
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  adj_.assign(n, 0);
  std::vector<int> indeg(n, 0);
  for (auto [u, v] : edges_) {
    adj_[u] |= std::uint64_t{1} << v;
    ++indeg[v];
  }
  // Kahn topological order; leftovers mean a cycle
  std::vector<int> topo;
  topo.reserve(n);
  for (int u = 0; u < n; ++u)
    if (indeg[u] == 0) topo.push_back(u);
  for (std::size_t head = 0; head < topo.size(); ++head) {
    for (std::uint64_t bits = adj_[topo[head]]; bits;) {
      const int v = __builtin_ctzll(bits);
      bits &= bits - 1;
      if (--indeg[v] == 0) topo.push_back(v);
    }
  }
  require(static_cast<int>(topo.size()) == n, errc::cyclic,
          "comparison graph contains a cycle");

  reach_.assign(n, 0);
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const int u = *it;
    for (std::uint64_t bits = adj_[u]; bits;) {
      const int v = __builtin_ctzll(bits);
      bits &= bits - 1;
      reach_[u] |= (std::uint64_t{1} << v) | reach_[v];
    }
  }
}

std::string ComparisonDAG::serialize() const {
  nlohmann::json j;
  j["items"] = items_;
  j["edges"] = nlohmann::json::array();
  for (auto [u, v] : edges_) j["edges"].push_back({u, v});
  return j.dump();
}

int ComparisonDAG::item_index(const std::string& name) const {
  auto it = std::find(items_.begin(), items_.end(), name);
  require(it != items_.end(), errc::missing_node, "dag has no item '" + name + "'");
  return static_cast<int>(it - items_.begin());
}

bool ComparisonDAG::has_edge(int u, int v) const {
  require(u >= 0 && u < n() && v >= 0 && v < n(), errc::out_of_range,
          "edge query out of range");
  return (adj_[u] >> v) & 1;
}

bool ComparisonDAG::reaches(int u, int v) const {
  require(u >= 0 && u < n() && v >= 0 && v < n(), errc::out_of_range,
          "reachability query out of range");
  return (reach_[u] >> v) & 1;
}

std::vector<int> ComparisonDAG::parents(int v) const {
  require(v >= 0 && v < n(), errc::out_of_range, "parent query out of range");
  std::vector<int> out;
  for (int u = 0; u < n(); ++u)
    if ((adj_[u] >> v) & 1) out.push_back(u);
  return out;
}

bigint linear_extensions(const ComparisonDAG& dag, int limit_n) {
  const int n = dag.n();
  require(n <= limit_n && n <= 20, errc::limit_exceeded,
          "extension counting limited to " +
              std::to_string(std::min(limit_n, 20)) + " items");
  // predecessor masks; a set S of placed items is feasible iff it is
  // downward closed, i.e. every member has all its parents in S
  std::vector<std::uint64_t> pred(n, 0);
  for (auto [u, v] : dag.edges()) pred[v] |= std::uint64_t{1} << u;
  const std::size_t full = std::size_t{1} << n;
  std::vector<bigint> ways(full);
  ways[0] = 1;
  for (std::size_t set = 0; set + 1 < full; ++set) {
    if (ways[set] == 0) continue;
    for (int v = 0; v < n; ++v) {
      if ((set >> v) & 1) continue;
      if ((pred[v] & ~set) == 0) ways[set | (std::size_t{1} << v)] += ways[set];
    }
  }
  return ways[full - 1];
}

namespace {

void extend_all(const ComparisonDAG& dag, const std::vector<std::uint64_t>& pred,
                std::uint64_t placed, std::vector<int>& order,
                std::vector<std::vector<int>>& out, count_t guard) {
  const int n = dag.n();
  if (static_cast<int>(order.size()) == n) {
    require(out.size() < guard, errc::limit_exceeded,
            "extension enumeration exceeds guard");
    out.push_back(order);
    return;
  }
  for (int v = 0; v < n; ++v) {
    if ((placed >> v) & 1) continue;
    if ((pred[v] & ~placed) != 0) continue;
    order.push_back(v);
    extend_all(dag, pred, placed | (std::uint64_t{1} << v), order, out, guard);
    order.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> all_extensions(const ComparisonDAG& dag, count_t guard) {
  std::vector<std::uint64_t> pred(dag.n(), 0);
  for (auto [u, v] : dag.edges()) pred[v] |= std::uint64_t{1} << u;
  std::vector<std::vector<int>> out;
  std::vector<int> order;
  extend_all(dag, pred, 0, order, out, guard);
  return out;  // ascending item choice at every level => lexicographic order
}

int degree_in_complement(const Ranking& ranking, const ComparisonDAG& dag) {
  const std::vector<int> at_rank = extension_positions(ranking, dag);
  int d = 0;
  for (int r = 1; r < dag.n(); ++r)
    if (dag.reaches(at_rank[r - 1], at_rank[r])) ++d;
  return d;
}

TraceEncoding encode(const Ranking& ranking, const ComparisonDAG& dag) {
  const std::vector<int> at_rank = extension_positions(ranking, dag);
  TraceEncoding enc;
  std::vector<char> is_lucky(dag.n(), 0);
  is_lucky[at_rank[0]] = 1;
  for (int r = 1; r < dag.n(); ++r)
    if (dag.reaches(at_rank[r - 1], at_rank[r])) is_lucky[at_rank[r]] = 1;
  for (int u = 0; u < dag.n(); ++u)
    if (is_lucky[u]) enc.lucky.push_back(u);
  for (int r = 0; r < dag.n(); ++r)
    if (!is_lucky[at_rank[r]]) enc.nonlucky_order.push_back(at_rank[r]);
  return enc;
}

Ranking decode(const TraceEncoding& enc, const ComparisonDAG& dag) {
  const int n = dag.n();
  require(!enc.lucky.empty(), errc::invalid_encoding, "lucky set must be non-empty");
  require(static_cast<int>(enc.lucky.size() + enc.nonlucky_order.size()) == n,
          errc::invalid_encoding, "encoding does not cover the ground set");
  std::vector<char> lucky(n, 0), covered(n, 0);
  for (int u : enc.lucky) {
    require(u >= 0 && u < n && !covered[u], errc::invalid_encoding,
            "encoding repeats or mis-indexes an item");
    covered[u] = lucky[u] = 1;
  }
  for (int u : enc.nonlucky_order) {
    require(u >= 0 && u < n && !covered[u], errc::invalid_encoding,
            "encoding repeats or mis-indexes an item");
    covered[u] = 1;
  }

  std::vector<std::uint64_t> pred(n, 0);
  for (auto [u, v] : dag.edges()) pred[v] |= std::uint64_t{1} << u;

  std::uint64_t placed = 0;
  std::size_t next_nonlucky = 0;
  std::vector<int> order;
  order.reserve(n);
  while (static_cast<int>(order.size()) < n) {
    int lucky_avail = -1;
    for (int v = 0; v < n; ++v) {
      if (!lucky[v] || ((placed >> v) & 1) || (pred[v] & ~placed) != 0) continue;
      require(lucky_avail < 0, errc::invalid_encoding,
              "two lucky items available at once");
      lucky_avail = v;
    }
    int choice;
    if (lucky_avail >= 0) {
      choice = lucky_avail;
    } else {
      require(next_nonlucky < enc.nonlucky_order.size(), errc::invalid_encoding,
              "ran out of non-lucky items with none available");
      choice = enc.nonlucky_order[next_nonlucky++];
      require(((placed >> choice) & 1) == 0 && (pred[choice] & ~placed) == 0,
              errc::invalid_encoding, "next non-lucky item is not available");
    }
    placed |= std::uint64_t{1} << choice;
    order.push_back(choice);
  }
  return order_to_ranking(dag, order);
}

EncodingCountCheck encoding_count_check(const ComparisonDAG& dag, int d, int limit_n) {
  const int n = dag.n();
  require(n <= limit_n, errc::limit_exceeded,
          "exhaustive check limited to " + std::to_string(limit_n) + " items");
  require(d >= 0 && d < n, errc::out_of_range, "degree must lie in [0, n)");
  EncodingCountCheck out;
  for (const std::vector<int>& order : all_extensions(dag)) {
    if (degree_in_complement(order_to_ranking(dag, order), dag) == d) ++out.actual;
  }
  out.bound = 1;
  for (int i = d + 2; i <= n; ++i) out.bound *= i;  // n!/(d+1)!
  require(bigint(out.actual) <= out.bound, errc::internal_error,
          "trace-count bound violated");
  return out;
}

}  // namespace invperm
