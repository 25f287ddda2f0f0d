#pragma once
// Comparison DAGs and the execution-trace encoding of their linear
// extensions.  A DAG records comparison outcomes (edge u -> v means u is
// known to precede v); a ranking "extends" the DAG when every edge points
// from a smaller to a larger rank.  Each extension compresses to the set of
// its lucky items plus the remaining items in rank order, and decodes back
// by replaying the ranking-construction loop.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "invperm/counting.hpp"
#include "invperm/tree.hpp"

namespace invperm {

using bigint = boost::multiprecision::cpp_int;

class ComparisonDAG {
 public:
  // JSON: {"items": ["x", ...], "edges": [[u, v], ...]} with 0-based indices
  static ComparisonDAG parse(const std::string& json_text);
  static ComparisonDAG from_items(std::vector<std::string> items,
                                  std::vector<std::pair<int, int>> edges);
  std::string serialize() const;

  int n() const { return static_cast<int>(items_.size()); }
  const std::vector<std::string>& items() const { return items_; }
  // sorted, deduplicated
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  int item_index(const std::string& name) const;  // MissingNode if absent

  bool has_edge(int u, int v) const;
  // true when a directed path of length >= 1 exists
  bool reaches(int u, int v) const;
  // direct predecessors of v
  std::vector<int> parents(int v) const;

 private:
  ComparisonDAG() = default;
  void finalize();  // sorts edges, checks acyclicity, builds the closure

  std::vector<std::string> items_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::uint64_t> reach_;  // bit v of reach_[u]: u reaches v
  std::vector<std::uint64_t> adj_;    // direct successors
};

struct TraceEncoding {
  std::vector<int> lucky;           // sorted item indices, never empty
  std::vector<int> nonlucky_order;  // remaining items, increasing rank
};

// number of rankings extending the dag (subset DP)
bigint linear_extensions(const ComparisonDAG& dag, int limit_n = 12);

// all extensions as rank-to-item orders, lexicographically sorted;
// the count must not exceed the guard
std::vector<std::vector<int>> all_extensions(const ComparisonDAG& dag,
                                             count_t guard = 10'000'000);

// number of ranks r in {2..n} whose item is reachable from the item of
// rank r-1; these are exactly the comparisons the trace gets "for free"
int degree_in_complement(const Ranking& ranking, const ComparisonDAG& dag);

// lucky items = the rank-1 item plus every item reachable from its rank
// predecessor; |lucky| = degree_in_complement + 1
TraceEncoding encode(const Ranking& ranking, const ComparisonDAG& dag);
// replay: place the unique available lucky item when one exists, otherwise
// the first unused non-lucky item
Ranking decode(const TraceEncoding& enc, const ComparisonDAG& dag);

struct EncodingCountCheck {
  count_t actual = 0;  // extensions with degree_in_complement == d
  bigint bound;        // n!/(d+1)!
};

// exhaustively verifies the trace-counting bound for one degree value
EncodingCountCheck encoding_count_check(const ComparisonDAG& dag, int d,
                                        int limit_n = 8);

}  // namespace invperm
