#pragma once
// Core model: rooted trees with named leaves, rankings (bijections from leaf
// names onto 1..n), per-node child orderings, and adjacent-rank
// transpositions.  All types are immutable value types after construction;
// every operation is a pure function, so instances can be shared freely
// between threads.
//
// Conventions fixed here and used everywhere else:
//   - ranks are 1-based,
//   - node ids are dense integers in document order (root = 0),
//   - a transposition (r, r+1) acts on ranks: the two items currently
//     holding ranks r and r+1 swap ranks,
//   - leaf names are unique; document order is the stable tie-break order.

#include <map>
#include <string>
#include <vector>

#include "invperm/errors.hpp"

namespace invperm {

struct TreeNode {
  int parent = -1;             // -1 for the root
  std::vector<int> children;   // empty iff leaf
  std::string leaf_name;       // nonempty iff leaf
};

class Tree {
 public:
  // JSON: {"leaf": <string>} | {"children": [<node>, ...]} with >= 1 child.
  static Tree parse(const std::string& json_text);
  static Tree make_leaf(const std::string& name);
  static Tree make_internal(const std::vector<Tree>& children);
  std::string serialize() const;  // same JSON shape as parse()

  int root() const { return 0; }
  int node_count() const { return int(nodes_.size()); }
  const TreeNode& node(int id) const { return nodes_[std::size_t(id)]; }
  bool is_leaf(int id) const { return nodes_[std::size_t(id)].children.empty(); }
  int degree(int id) const { return int(nodes_[std::size_t(id)].children.size()); }

  int leaf_count() const { return int(leaf_ids_.size()); }
  // leaves in document order; the i-th leaf is "item i" wherever leaves are
  // treated as abstract items
  const std::vector<int>& leaf_ids() const { return leaf_ids_; }
  const std::vector<std::string>& leaf_names() const { return leaf_names_; }
  int leaf_id_of(const std::string& name) const;       // node id
  int leaf_index_of(const std::string& name) const;    // position in document order
  const std::string& leaf_name_at(int leaf_index) const {
    return leaf_names_[std::size_t(leaf_index)];
  }

  std::vector<int> leaves_under(int id) const;         // leaf node ids, document order
  std::vector<int> leaf_indices_under(int id) const;   // document-order leaf positions
  int subtree_leaf_count(int id) const { return subtree_leaves_[std::size_t(id)]; }
  int depth(int id) const { return depth_[std::size_t(id)]; }
  int lca(int id_a, int id_b) const;
  std::vector<int> internal_ids() const;               // document order
  int max_degree() const;
  bool is_binary() const;      // every internal node has exactly two children
  bool is_normalized() const;  // no internal node with exactly one child

  Tree normalized() const;     // contract all single-child nodes
  Tree subtree(int id) const;  // copy of the subtree rooted at id
  Tree with_replaced_subtree(int id, const Tree& replacement) const;
  Tree with_renamed_leaves(const std::vector<std::string>& names) const;

  // shape key ignoring child order and leaf names; equal keys <=> isomorphic
  // as unordered rooted trees
  std::string canonical_shape() const;

  bool operator==(const Tree& other) const;

 private:
  void rebuild_caches();
  std::vector<TreeNode> nodes_;
  std::vector<int> leaf_ids_;
  std::vector<std::string> leaf_names_;
  std::vector<int> subtree_leaves_;
  std::vector<int> depth_;
  std::map<std::string, int> leaf_id_by_name_;
  std::map<std::string, int> leaf_index_by_name_;
};

struct Transposition {
  int r = 1;  // swaps ranks r and r+1; valid range 1..n-1
};

class Ranking {
 public:
  // JSON: {"ranks": {<leafname>: <int 1..n>, ...}}
  static Ranking parse(const std::string& json_text);
  static Ranking from_rank_map(const std::map<std::string, int>& rank_of);
  // names listed by increasing rank: names[0] gets rank 1, ...
  static Ranking from_order(const std::vector<std::string>& names_in_rank_order);
  std::string serialize() const;

  int n() const { return int(order_.size()); }
  bool contains(const std::string& name) const;
  int rank_of(const std::string& name) const;
  const std::string& item_at(int rank) const;  // 1-based
  // rank r -> name, index 0 holds rank 1
  const std::vector<std::string>& order() const { return order_; }

  bool operator==(const Ranking& other) const { return order_ == other.order_; }

 private:
  std::vector<std::string> order_;
  std::map<std::string, int> rank_by_name_;
};

// the items holding ranks t.r and t.r+1 exchange ranks
Ranking apply_transposition(const Ranking& ranking, Transposition t);

class Ordering {
 public:
  static Ordering identity(const Tree& tree);
  // perm[i] = child slot visited i-th (slots index the node's child list)
  void set_perm(int node, std::vector<int> perm);
  bool has_perm(int node) const { return perms_.count(node) != 0; }
  const std::vector<int>& perm_at(int node) const;
  const std::map<int, std::vector<int>>& perms() const { return perms_; }

 private:
  std::map<int, std::vector<int>> perms_;
};

// rank = 1-based position in the left-to-right leaf traversal under the
// per-node child permutations
Ranking induced_ranking(const Tree& tree, const Ordering& ordering);

}  // namespace invperm
