// Feedback-arc-set reductions and the NP-hardness gadget.

#include "invperm/reductions.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "invperm/errors.hpp"
#include "invperm/minimizer.hpp"
#include "json.hpp"

namespace invperm {

WeightedDigraph WeightedDigraph::parse(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail(errc::parse_error, std::string("invalid JSON: ") + e.what());
  }
  require(j.is_object() && j.contains("n") && j.contains("arcs") && j.size() == 2 &&
              j["n"].is_number_integer() && j["arcs"].is_array(),
          errc::parse_error, "digraph must be {\"n\": <int>, \"arcs\": [...]}");
  std::vector<Arc> arcs;
  for (const auto& e : j["arcs"]) {
    require(e.is_array() && (e.size() == 2 || e.size() == 3), errc::parse_error,
            "arc must be [u, v] or [u, v, w]");
    for (const auto& field : e)
      require(field.is_number_integer(), errc::parse_error,
              "arc fields must be integers");
    Arc arc;
    arc.u = e[0].get<int>();
    arc.v = e[1].get<int>();
    if (e.size() == 3) {
      require(e[2].get<long long>() >= 1, errc::parse_error,
              "arc weight must be >= 1");
      arc.w = e[2].get<count_t>();
    }
    arcs.push_back(arc);
  }
  return from_arcs(j["n"].get<int>(), std::move(arcs));
}

WeightedDigraph WeightedDigraph::from_arcs(int n, std::vector<Arc> arcs) {
  require(n >= 1, errc::parse_error, "digraph needs at least one vertex");
  for (const Arc& a : arcs) {
    require(a.u >= 0 && a.u < n && a.v >= 0 && a.v < n, errc::out_of_range,
            "arc endpoint out of range");
    require(a.u != a.v, errc::parse_error, "self-loops are not allowed");
    require(a.w >= 1, errc::parse_error, "arc weight must be >= 1");
  }
  std::sort(arcs.begin(), arcs.end(),
            [](const Arc& x, const Arc& y) { return std::tie(x.u, x.v) < std::tie(y.u, y.v); });
  for (std::size_t i = 1; i < arcs.size(); ++i)
    require(arcs[i - 1].u != arcs[i].u || arcs[i - 1].v != arcs[i].v,
            errc::parallel_arcs, "at most one arc per ordered pair");
  WeightedDigraph g;
  g.n_ = n;
  g.arcs_ = std::move(arcs);
  return g;
}

std::string WeightedDigraph::serialize() const {
  nlohmann::json j;
  j["n"] = n_;
  j["arcs"] = nlohmann::json::array();
  for (const Arc& a : arcs_) j["arcs"].push_back({a.u, a.v, a.w});
  return j.dump();
}

bool WeightedDigraph::has_arc(int u, int v) const {
  return std::any_of(arcs_.begin(), arcs_.end(),
                     [&](const Arc& a) { return a.u == u && a.v == v; });
}

MfasInstance mrinv_to_mfas(const CrossInvMatrix& table) {
  require(table.consistent(), errc::inconsistent_table,
          "cross-inversion table is inconsistent");
  const int k = table.k();
  MfasInstance out;
  std::vector<Arc> arcs;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const count_t ij = table.xinv[i][j], ji = table.xinv[j][i];
      out.offset = checked_add(out.offset, std::min(ij, ji));
      // the arc points toward the order that avoids the surplus
      if (ji > ij)
        arcs.push_back({i, j, ji - ij});
      else if (ij > ji)
        arcs.push_back({j, i, ij - ji});
    }
  }
  out.graph = WeightedDigraph::from_arcs(std::max(k, 1), std::move(arcs));
  return out;
}

count_t brute_force_mfas(const WeightedDigraph& graph, int limit_n) {
  const int n = graph.n();
  require(n <= limit_n, errc::limit_exceeded,
          "brute-force FAS limited to " + std::to_string(limit_n) + " vertices");
  std::vector<int> position(n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  count_t best = ~count_t{0};
  do {
    for (int p = 0; p < n; ++p) position[order[p]] = p;
    count_t cost = 0;
    for (const Arc& a : graph.arcs())
      if (position[a.u] > position[a.v]) cost += a.w;
    best = std::min(best, cost);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

count_t mfas(const WeightedDigraph& graph, int limit_n) {
  const int n = graph.n();
  require(n <= limit_n && n <= 24, errc::limit_exceeded,
          "FAS solver limited to " + std::to_string(std::min(limit_n, 24)) +
              " vertices");
  // reverse reduction: an arc u -> v becomes a pair where placing v first
  // costs the arc weight; the optimal arrangement cost is exactly MFAS
  CrossInvMatrix table;
  table.node = -1;
  table.sizes.assign(n, 1);
  table.xinv.assign(n, std::vector<count_t>(n, 0));
  for (const Arc& a : graph.arcs()) table.xinv[a.v][a.u] = a.w;
  return mrinv_dp(table).mrinv;
}

GadgetInstance mfas_to_tree_gadget(const WeightedDigraph& graph) {
  const int n = graph.n();
  const int m = static_cast<int>(graph.arcs().size());
  std::vector<char> touched(n, 0);
  for (const Arc& a : graph.arcs()) {
    require(a.w == 1, errc::out_of_range, "the gadget needs an unweighted graph");
    require(!graph.has_arc(a.v, a.u), errc::parallel_arcs,
            "at most one arc per unordered pair");
    touched[a.u] = touched[a.v] = 1;
  }
  for (int v = 0; v < n; ++v)
    require(touched[v], errc::isolated_vertex,
            "vertex " + std::to_string(v) + " is isolated");

  // per arc k (1-based): tail leaves at pre-ranks -2k and 2k-1, head leaves
  // at -2k+1 and 2k; compressing the pre-ranks to 1..4m preserves order
  std::vector<std::vector<Tree>> children(n);
  std::map<long long, std::string> by_prerank;
  for (int k = 1; k <= m; ++k) {
    const Arc& a = graph.arcs()[k - 1];
    const std::string base = "e" + std::to_string(k);
    const auto add = [&](int vertex, const std::string& name, long long prerank) {
      children[vertex].push_back(Tree::make_leaf(name));
      by_prerank.emplace(prerank, name);
    };
    add(a.u, base + "t1", -2 * k);
    add(a.u, base + "t2", 2 * k - 1);
    add(a.v, base + "h1", -2 * k + 1);
    add(a.v, base + "h2", 2 * k);
  }

  std::vector<Tree> vertex_nodes;
  vertex_nodes.reserve(n);
  for (int v = 0; v < n; ++v) vertex_nodes.push_back(Tree::make_internal(children[v]));

  GadgetInstance out;
  out.m = m;
  out.tree = Tree::make_internal(vertex_nodes);
  std::map<std::string, int> ranks;
  int next = 1;
  for (const auto& [prerank, name] : by_prerank) ranks[name] = next++;
  out.ranking = Ranking::from_rank_map(ranks);

  // base = 4m(m-1) - 2A + m with A = sum_v C(incident_v, 2); two distinct
  // arcs share at most one vertex, so the per-vertex sums count every
  // endpoint-sharing arc pair exactly once
  count_t shared_pairs = 0;
  std::vector<count_t> incident(n, 0);
  for (const Arc& a : graph.arcs()) {
    ++incident[a.u];
    ++incident[a.v];
  }
  for (int v = 0; v < n; ++v)
    shared_pairs =
        checked_add(shared_pairs, incident[v] * (incident[v] - 1) / 2);
  out.base = checked_add(checked_mul(checked_mul(4, static_cast<count_t>(m)),
                                     static_cast<count_t>(m - 1)),
                         static_cast<count_t>(m)) -
             2 * shared_pairs;
  return out;
}

count_t extract_fas(count_t minv_value, count_t base) {
  require(minv_value >= base, errc::infeasible,
          "value below the gadget floor " + std::to_string(base));
  require((minv_value - base) % 2 == 0, errc::infeasible,
          "value does not have the gadget parity");
  return (minv_value - base) / 2;
}

}  // namespace invperm
