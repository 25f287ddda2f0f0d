#pragma once
// Reductions between per-node inversion minimization and weighted minimum
// feedback arc set, in both directions: a node's cross-inversion table maps
// to a weighted digraph whose MFAS value completes the node minimum, and any
// simple digraph maps to a depth-2 tree instance whose global minimum
// encodes its (unweighted) MFAS value.

#include <string>
#include <vector>

#include "invperm/counting.hpp"
#include "invperm/tree.hpp"

namespace invperm {

struct Arc {
  int u = 0, v = 0;
  count_t w = 1;
};

class WeightedDigraph {
 public:
  // JSON: {"n": <int>, "arcs": [[u, v], [u, v, w], ...]}, weight defaults 1
  static WeightedDigraph parse(const std::string& json_text);
  static WeightedDigraph from_arcs(int n, std::vector<Arc> arcs);
  std::string serialize() const;

  int n() const { return n_; }
  const std::vector<Arc>& arcs() const { return arcs_; }  // sorted by (u, v)
  bool has_arc(int u, int v) const;

 private:
  int n_ = 0;
  std::vector<Arc> arcs_;
};

struct MfasInstance {
  WeightedDigraph graph;
  count_t offset = 0;  // sum over pairs of the smaller cross count
};

// arc i -> j with weight xinv(j,i) - xinv(i,j) when positive; the node
// minimum equals offset + MFAS(graph)
MfasInstance mrinv_to_mfas(const CrossInvMatrix& table);

// min over all vertex orderings of the total weight of backward arcs
count_t brute_force_mfas(const WeightedDigraph& graph, int limit_n = 10);
// exact solver via the reverse reduction into the subset DP
count_t mfas(const WeightedDigraph& graph, int limit_n = 24);

struct GadgetInstance {
  Tree tree;         // depth 2: one child per vertex, 4 leaves per arc
  Ranking ranking;   // compressed ranks 1..4m
  int m = 0;         // arc count
  count_t base = 0;  // ordering-independent inversions of the construction
};

// unweighted simple digraph (at most one arc per unordered vertex pair, no
// isolated vertices) -> tree instance with
//   minv(tree, ranking) = base + 2 * MFAS(graph)
// where base = 4m(m-1) - 2A + m and A counts unordered pairs of distinct
// arcs that share an endpoint.  Two vertex-disjoint arcs always force 8
// inversions between their leaf quadruples; a shared endpoint puts one of
// the four end-pair interactions inside a single node, where the leaves
// sort freely, so each such arc pair forces only 6.
GadgetInstance mfas_to_tree_gadget(const WeightedDigraph& graph);

// inverts the gadget guarantee: (minv_value - base) / 2
count_t extract_fas(count_t minv_value, count_t base);

}  // namespace invperm
