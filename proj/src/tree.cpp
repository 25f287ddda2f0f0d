#include "invperm/tree.hpp"

#include <algorithm>
#include <functional>

#include "json.hpp"

namespace invperm {

using nlohmann::json;

namespace {

// recursive structural check + node build; returns the new node's id
int build_from_json(const json& j, int parent, std::vector<TreeNode>& nodes) {
  require(j.is_object(), errc::parse_error, "tree node must be a JSON object");
  const bool has_leaf = j.contains("leaf");
  const bool has_children = j.contains("children");
  require(has_leaf != has_children, errc::parse_error,
          "tree node must have exactly one of \"leaf\" or \"children\"");
  require(j.size() == 1, errc::parse_error, "tree node has unexpected keys");
  const int id = int(nodes.size());
  nodes.emplace_back();
  nodes[std::size_t(id)].parent = parent;
  if (has_leaf) {
    require(j["leaf"].is_string(), errc::parse_error, "\"leaf\" must be a string");
    const std::string name = j["leaf"].get<std::string>();
    require(!name.empty(), errc::parse_error, "leaf name must be nonempty");
    nodes[std::size_t(id)].leaf_name = name;
  } else {
    require(j["children"].is_array() && !j["children"].empty(), errc::parse_error,
            "\"children\" must be a nonempty array");
    for (const json& c : j["children"]) {
      int cid = build_from_json(c, id, nodes);
      nodes[std::size_t(id)].children.push_back(cid);
    }
  }
  return id;
}

json node_to_json(const Tree& t, int id) {
  const TreeNode& nd = t.node(id);
  if (nd.children.empty()) return json{{"leaf", nd.leaf_name}};
  json arr = json::array();
  for (int c : nd.children) arr.push_back(node_to_json(t, c));
  return json{{"children", arr}};
}

// copies the subtree at src_id of src to dst (parent = dst_parent)
int copy_subtree(const std::vector<TreeNode>& src, int src_id, int dst_parent,
                 std::vector<TreeNode>& dst) {
  const int id = int(dst.size());
  dst.emplace_back();
  dst[std::size_t(id)].parent = dst_parent;
  dst[std::size_t(id)].leaf_name = src[std::size_t(src_id)].leaf_name;
  for (int c : src[std::size_t(src_id)].children) {
    int cid = copy_subtree(src, c, id, dst);
    dst[std::size_t(id)].children.push_back(cid);
  }
  return id;
}

}  // namespace

void Tree::rebuild_caches() {
  const int m = int(nodes_.size());
  leaf_ids_.clear();
  leaf_names_.clear();
  leaf_id_by_name_.clear();
  leaf_index_by_name_.clear();
  subtree_leaves_.assign(std::size_t(m), 0);
  depth_.assign(std::size_t(m), 0);
  for (int id = 0; id < m; ++id) {
    const TreeNode& nd = nodes_[std::size_t(id)];
    if (nd.parent >= 0) depth_[std::size_t(id)] = depth_[std::size_t(nd.parent)] + 1;
    if (nd.children.empty()) {
      require(!nd.leaf_name.empty(), errc::internal_error, "leaf without a name");
      auto [it, inserted] = leaf_id_by_name_.emplace(nd.leaf_name, id);
      (void)it;
      require(inserted, errc::duplicate_leaf, "leaf name repeated: " + nd.leaf_name);
      leaf_index_by_name_.emplace(nd.leaf_name, int(leaf_ids_.size()));
      leaf_ids_.push_back(id);
      leaf_names_.push_back(nd.leaf_name);
    }
  }
  // document order lists children after parents, so a reverse sweep
  // accumulates subtree leaf counts
  for (int id = m - 1; id >= 0; --id) {
    const TreeNode& nd = nodes_[std::size_t(id)];
    if (nd.children.empty()) subtree_leaves_[std::size_t(id)] = 1;
    if (nd.parent >= 0)
      subtree_leaves_[std::size_t(nd.parent)] += subtree_leaves_[std::size_t(id)];
  }
}

Tree Tree::parse(const std::string& json_text) {
  json j = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
  require(!j.is_discarded(), errc::parse_error, "malformed JSON");
  Tree t;
  build_from_json(j, -1, t.nodes_);
  t.rebuild_caches();
  return t;
}

Tree Tree::make_leaf(const std::string& name) {
  require(!name.empty(), errc::parse_error, "leaf name must be nonempty");
  Tree t;
  t.nodes_.emplace_back();
  t.nodes_[0].leaf_name = name;
  t.rebuild_caches();
  return t;
}

Tree Tree::make_internal(const std::vector<Tree>& children) {
  require(!children.empty(), errc::parse_error, "internal node needs children");
  Tree t;
  t.nodes_.emplace_back();  // root
  for (const Tree& c : children) {
    int cid = copy_subtree(c.nodes_, 0, 0, t.nodes_);
    t.nodes_[0].children.push_back(cid);
  }
  t.rebuild_caches();
  return t;
}

std::string Tree::serialize() const { return node_to_json(*this, 0).dump(); }

int Tree::leaf_id_of(const std::string& name) const {
  auto it = leaf_id_by_name_.find(name);
  require(it != leaf_id_by_name_.end(), errc::domain_mismatch,
          "unknown leaf: " + name);
  return it->second;
}

int Tree::leaf_index_of(const std::string& name) const {
  auto it = leaf_index_by_name_.find(name);
  require(it != leaf_index_by_name_.end(), errc::domain_mismatch,
          "unknown leaf: " + name);
  return it->second;
}

std::vector<int> Tree::leaves_under(int id) const {
  std::vector<int> out;
  std::function<void(int)> walk = [&](int v) {
    if (is_leaf(v)) {
      out.push_back(v);
      return;
    }
    for (int c : nodes_[std::size_t(v)].children) walk(c);
  };
  walk(id);
  return out;
}

std::vector<int> Tree::leaf_indices_under(int id) const {
  std::vector<int> out;
  for (int leaf : leaves_under(id))
    out.push_back(leaf_index_by_name_.at(nodes_[std::size_t(leaf)].leaf_name));
  return out;
}

int Tree::lca(int id_a, int id_b) const {
  int a = id_a, b = id_b;
  while (a != b) {
    if (depth(a) >= depth(b))
      a = nodes_[std::size_t(a)].parent;
    else
      b = nodes_[std::size_t(b)].parent;
  }
  return a;
}

std::vector<int> Tree::internal_ids() const {
  std::vector<int> out;
  for (int id = 0; id < node_count(); ++id)
    if (!is_leaf(id)) out.push_back(id);
  return out;
}

int Tree::max_degree() const {
  int d = 0;
  for (const TreeNode& nd : nodes_) d = std::max(d, int(nd.children.size()));
  return d;
}

bool Tree::is_binary() const {
  for (const TreeNode& nd : nodes_)
    if (!nd.children.empty() && nd.children.size() != 2) return false;
  return true;
}

bool Tree::is_normalized() const {
  for (const TreeNode& nd : nodes_)
    if (nd.children.size() == 1) return false;
  return true;
}

Tree Tree::normalized() const {
  // rebuild while short-cutting every single-child node
  Tree t;
  std::function<int(int, int)> walk = [&](int v, int parent) -> int {
    while (nodes_[std::size_t(v)].children.size() == 1)
      v = nodes_[std::size_t(v)].children[0];
    const int id = int(t.nodes_.size());
    t.nodes_.emplace_back();
    t.nodes_[std::size_t(id)].parent = parent;
    t.nodes_[std::size_t(id)].leaf_name = nodes_[std::size_t(v)].leaf_name;
    for (int c : nodes_[std::size_t(v)].children) {
      int cid = walk(c, id);
      t.nodes_[std::size_t(id)].children.push_back(cid);
    }
    return id;
  };
  walk(0, -1);
  t.rebuild_caches();
  return t;
}

Tree Tree::subtree(int id) const {
  Tree t;
  copy_subtree(nodes_, id, -1, t.nodes_);
  t.rebuild_caches();
  return t;
}

Tree Tree::with_replaced_subtree(int id, const Tree& replacement) const {
  require(id >= 0 && id < node_count(), errc::out_of_range, "no such node");
  if (id == 0) return replacement;
  Tree t;
  std::function<int(int, int)> walk = [&](int v, int parent) -> int {
    if (v == id) return copy_subtree(replacement.nodes_, 0, parent, t.nodes_);
    const int nid = int(t.nodes_.size());
    t.nodes_.emplace_back();
    t.nodes_[std::size_t(nid)].parent = parent;
    t.nodes_[std::size_t(nid)].leaf_name = nodes_[std::size_t(v)].leaf_name;
    for (int c : nodes_[std::size_t(v)].children) {
      int cid = walk(c, nid);
      t.nodes_[std::size_t(nid)].children.push_back(cid);
    }
    return nid;
  };
  walk(0, -1);
  t.rebuild_caches();  // throws DuplicateLeaf if names now clash
  return t;
}

Tree Tree::with_renamed_leaves(const std::vector<std::string>& names) const {
  require(int(names.size()) == leaf_count(), errc::leaf_count_mismatch,
          "need one name per leaf");
  Tree t = *this;
  for (int i = 0; i < leaf_count(); ++i)
    t.nodes_[std::size_t(leaf_ids_[std::size_t(i)])].leaf_name = names[std::size_t(i)];
  t.rebuild_caches();
  return t;
}

std::string Tree::canonical_shape() const {
  std::function<std::string(int)> walk = [&](int v) -> std::string {
    if (is_leaf(v)) return "L";
    std::vector<std::string> parts;
    for (int c : nodes_[std::size_t(v)].children) parts.push_back(walk(c));
    std::sort(parts.begin(), parts.end());
    std::string s = "(";
    for (const std::string& p : parts) s += p;
    s += ")";
    return s;
  };
  return walk(0);
}

bool Tree::operator==(const Tree& other) const {
  if (node_count() != other.node_count()) return false;
  for (int id = 0; id < node_count(); ++id) {
    const TreeNode& x = nodes_[std::size_t(id)];
    const TreeNode& y = other.nodes_[std::size_t(id)];
    if (x.parent != y.parent || x.children != y.children ||
        x.leaf_name != y.leaf_name)
      return false;
  }
  return true;
}

Ranking Ranking::parse(const std::string& json_text) {
  json j = json::parse(json_text, nullptr, false);
  require(!j.is_discarded(), errc::parse_error, "malformed JSON");
  require(j.is_object() && j.contains("ranks") && j["ranks"].is_object(),
          errc::parse_error, "expected {\"ranks\": {...}}");
  std::map<std::string, int> ranks;
  for (auto it = j["ranks"].begin(); it != j["ranks"].end(); ++it) {
    require(it.value().is_number_integer(), errc::parse_error,
            "rank must be an integer");
    ranks[it.key()] = it.value().get<int>();
  }
  return from_rank_map(ranks);
}

Ranking Ranking::from_rank_map(const std::map<std::string, int>& rank_of) {
  const int n = int(rank_of.size());
  require(n >= 1, errc::parse_error, "ranking must be nonempty");
  Ranking r;
  r.order_.assign(std::size_t(n), std::string());
  for (const auto& [name, rank] : rank_of) {
    require(rank >= 1 && rank <= n, errc::parse_error,
            "rank out of 1..n for " + name);
    require(r.order_[std::size_t(rank - 1)].empty(), errc::parse_error,
            "duplicate rank " + std::to_string(rank));
    r.order_[std::size_t(rank - 1)] = name;
    r.rank_by_name_[name] = rank;
  }
  return r;
}

Ranking Ranking::from_order(const std::vector<std::string>& names) {
  require(!names.empty(), errc::parse_error, "ranking must be nonempty");
  Ranking r;
  r.order_ = names;
  for (int i = 0; i < int(names.size()); ++i) {
    auto [it, inserted] = r.rank_by_name_.emplace(names[std::size_t(i)], i + 1);
    (void)it;
    require(inserted, errc::parse_error, "item repeated: " + names[std::size_t(i)]);
  }
  return r;
}

std::string Ranking::serialize() const {
  json ranks = json::object();
  for (const auto& [name, rank] : rank_by_name_) ranks[name] = rank;
  return json{{"ranks", ranks}}.dump();
}

bool Ranking::contains(const std::string& name) const {
  return rank_by_name_.count(name) != 0;
}

int Ranking::rank_of(const std::string& name) const {
  auto it = rank_by_name_.find(name);
  require(it != rank_by_name_.end(), errc::domain_mismatch,
          "item not ranked: " + name);
  return it->second;
}

const std::string& Ranking::item_at(int rank) const {
  require(rank >= 1 && rank <= n(), errc::out_of_range, "rank out of range");
  return order_[std::size_t(rank - 1)];
}

Ranking apply_transposition(const Ranking& ranking, Transposition t) {
  const int n = ranking.n();
  require(t.r >= 1 && t.r <= n - 1, errc::out_of_range,
          "transposition rank out of 1..n-1");
  std::vector<std::string> order = ranking.order();
  std::swap(order[std::size_t(t.r - 1)], order[std::size_t(t.r)]);
  return Ranking::from_order(order);
}

Ordering Ordering::identity(const Tree& tree) {
  Ordering o;
  for (int id : tree.internal_ids()) {
    std::vector<int> perm(std::size_t(tree.degree(id)));
    for (int i = 0; i < tree.degree(id); ++i) perm[std::size_t(i)] = i;
    o.perms_.emplace(id, std::move(perm));
  }
  return o;
}

void Ordering::set_perm(int node, std::vector<int> perm) {
  std::vector<bool> seen(perm.size(), false);
  for (int slot : perm) {
    require(slot >= 0 && slot < int(perm.size()) && !seen[std::size_t(slot)],
            errc::bad_permutation, "child permutation is not a bijection");
    seen[std::size_t(slot)] = true;
  }
  perms_[node] = std::move(perm);
}

const std::vector<int>& Ordering::perm_at(int node) const {
  auto it = perms_.find(node);
  require(it != perms_.end(), errc::missing_node,
          "ordering lacks node " + std::to_string(node));
  return it->second;
}

Ranking induced_ranking(const Tree& tree, const Ordering& ordering) {
  std::vector<std::string> order;
  std::function<void(int)> walk = [&](int v) {
    if (tree.is_leaf(v)) {
      order.push_back(tree.node(v).leaf_name);
      return;
    }
    const std::vector<int>& perm = ordering.perm_at(v);
    require(int(perm.size()) == tree.degree(v), errc::bad_permutation,
            "permutation size mismatch at node " + std::to_string(v));
    for (int slot : perm) walk(tree.node(v).children[std::size_t(slot)]);
  };
  walk(tree.root());
  return Ranking::from_order(order);
}

}  // namespace invperm
