// Shape enumeration: unordered multisets of child shapes, generated with the
// (subtree size, shape index) pairs in non-decreasing order so each
// isomorphism class appears exactly once.

#include "invperm/shapes.hpp"

#include <string>

#include "invperm/errors.hpp"

namespace invperm {

namespace {

struct Sh {
  std::vector<Sh> kids;  // empty = leaf
};

class ShapeGen {
 public:
  explicit ShapeGen(bool binary) : binary_(binary) {}

  const std::vector<Sh>& shapes(int leaves) {
    require(leaves >= 1, errc::out_of_range, "shape generator needs >= 1 leaf");
    while (static_cast<int>(memo_.size()) < leaves + 1) {
      const int n = static_cast<int>(memo_.size());
      std::vector<Sh> out;
      if (n == 0) {
        // unused slot so memo_[k] holds shapes with k leaves
      } else if (n == 1) {
        out.push_back(Sh{});
      } else {
        std::vector<Sh> cur;
        extend(n, 1, 0, cur, out);
      }
      memo_.push_back(std::move(out));
    }
    return memo_[leaves];
  }

 private:
  void extend(int remaining, int min_size, int min_idx, std::vector<Sh>& cur,
              std::vector<Sh>& out) {
    if (remaining == 0) {
      if (cur.size() >= 2 && (!binary_ || cur.size() == 2))
        out.push_back(Sh{cur});
      return;
    }
    if (binary_ && cur.size() >= 2) return;
    // the first child must leave room for a sibling (>= 2 children overall)
    const int max_size = cur.empty() ? remaining - 1 : remaining;
    for (int size = min_size; size <= max_size; ++size) {
      const std::size_t n_subs = shapes(size).size();
      for (std::size_t idx = (size == min_size ? min_idx : 0); idx < n_subs; ++idx) {
        cur.push_back(shapes(size)[idx]);
        extend(remaining - size, size, static_cast<int>(idx), cur, out);
        cur.pop_back();
      }
    }
  }

  bool binary_;
  std::vector<std::vector<Sh>> memo_;
};

std::string leaf_name(int index, int total) {
  if (total <= 26) return std::string(1, static_cast<char>('a' + index));
  return "x" + std::to_string(index + 1);
}

Tree to_tree(const Sh& sh, int total, int& next_leaf) {
  if (sh.kids.empty()) return Tree::make_leaf(leaf_name(next_leaf++, total));
  std::vector<Tree> kids;
  kids.reserve(sh.kids.size());
  for (const Sh& k : sh.kids) kids.push_back(to_tree(k, total, next_leaf));
  return Tree::make_internal(kids);
}

std::vector<Tree> materialize(const std::vector<Sh>& shapes, int leaves) {
  std::vector<Tree> out;
  out.reserve(shapes.size());
  for (const Sh& sh : shapes) {
    int next_leaf = 0;
    out.push_back(to_tree(sh, leaves, next_leaf));
  }
  return out;
}

}  // namespace

std::vector<Tree> series_reduced_shapes(int leaves) {
  ShapeGen gen(false);
  return materialize(gen.shapes(leaves), leaves);
}

std::vector<Tree> binary_shapes(int leaves) {
  ShapeGen gen(true);
  return materialize(gen.shapes(leaves), leaves);
}

}  // namespace invperm
