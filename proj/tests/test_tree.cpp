// Core model: parsing, normalization, induced rankings, transpositions.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "invperm/counting.hpp"
#include "invperm/minimizer.hpp"
#include "invperm/shapes.hpp"
#include "invperm/tree.hpp"
#include "oracle.hpp"

using namespace invperm;

namespace {

errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const error& e) {
    return e.code();
  }
  return errc::internal_error;  // "no error" marker for the checks below
}

std::vector<Ranking> all_rankings(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  std::vector<Ranking> out;
  do {
    out.push_back(Ranking::from_order(names));
  } while (std::next_permutation(names.begin(), names.end()));
  return out;
}

}  // namespace

TEST_CASE("tree parsing") {
  const Tree single = Tree::parse(R"({"leaf":"a"})");
  CHECK(single.leaf_count() == 1);
  CHECK(single.node_count() == 1);
  CHECK(single.is_leaf(single.root()));

  const Tree pair = Tree::parse(R"({"children":[{"leaf":"a"},{"leaf":"b"}]})");
  CHECK(pair.leaf_count() == 2);
  CHECK(pair.degree(pair.root()) == 2);
  CHECK(pair.leaf_names() == std::vector<std::string>{"a", "b"});

  CHECK(code_of([] { Tree::parse(R"({"children":[{"leaf":"a"},{"leaf":"a"}]})"); }) ==
        errc::duplicate_leaf);
  CHECK(code_of([] { Tree::parse("{"); }) == errc::parse_error);
  CHECK(code_of([] { Tree::parse(R"({"children":[]})"); }) == errc::parse_error);
  CHECK(code_of([] { Tree::parse(R"({"leaf":"a","children":[]})"); }) ==
        errc::parse_error);
  CHECK(code_of([] { Tree::parse(R"({"leaf":42})"); }) == errc::parse_error);
}

TEST_CASE("tree serialize round trip") {
  const std::vector<std::string> docs = {
      R"({"leaf":"a"})",
      R"({"children":[{"leaf":"a"},{"leaf":"b"}]})",
      R"({"children":[{"children":[{"leaf":"x"},{"leaf":"y"},{"leaf":"z"}]},{"leaf":"w"}]})",
  };
  for (const std::string& doc : docs) {
    const Tree t = Tree::parse(doc);
    CHECK(Tree::parse(t.serialize()) == t);
  }
  const Tree body = oracle::body_parts_tree();
  CHECK(Tree::parse(body.serialize()) == body);
  for (int n = 1; n <= 6; ++n)
    for (const Tree& t : series_reduced_shapes(n))
      CHECK(Tree::parse(t.serialize()) == t);
}

TEST_CASE("normalize") {
  // chain root -> u -> leaf collapses to the single leaf
  const Tree chain = Tree::make_internal({Tree::make_internal({Tree::make_leaf("a")})});
  const Tree flat = chain.normalized();
  CHECK(flat.node_count() == 1);
  CHECK(flat.leaf_count() == 1);
  CHECK_FALSE(chain.is_normalized());
  CHECK(flat.is_normalized());

  // idempotence and identity on already-normal trees
  const Tree body = oracle::body_parts_tree();
  CHECK(body.is_normalized());
  CHECK(body.normalized() == body);
  CHECK(flat.normalized() == flat);

  // degree-2 internal nodes are not degree-1 and stay
  const Tree two = Tree::make_internal(
      {Tree::make_internal({Tree::make_leaf("a"), Tree::make_leaf("b")}),
       Tree::make_leaf("c")});
  CHECK(two.normalized() == two);
}

TEST_CASE("normalize preserves the optimal value") {
  // wrap subtrees of small shapes in single-child chains and compare over all
  // rankings
  for (int n = 2; n <= 5; ++n) {
    for (const Tree& shape : series_reduced_shapes(n)) {
      const Tree wrapped = Tree::make_internal({Tree::make_internal({shape})});
      const Tree norm = wrapped.normalized();
      CHECK(norm == shape);
      for (const Ranking& rho : all_rankings(shape.leaf_names())) {
        CHECK(minv(wrapped, rho).total == minv(shape, rho).total);
      }
    }
  }
}

TEST_CASE("induced ranking") {
  const Tree pair = Tree::parse(R"({"children":[{"leaf":"a"},{"leaf":"b"}]})");
  const Ranking id = induced_ranking(pair, Ordering::identity(pair));
  CHECK(id.rank_of("a") == 1);
  CHECK(id.rank_of("b") == 2);

  Ordering swapped = Ordering::identity(pair);
  swapped.set_perm(pair.root(), {1, 0});
  const Ranking rev = induced_ranking(pair, swapped);
  CHECK(rev.rank_of("a") == 2);
  CHECK(rev.rank_of("b") == 1);

  Ordering empty;
  CHECK(code_of([&] { induced_ranking(pair, empty); }) == errc::missing_node);
}

TEST_CASE("depth-1 trees realize every ranking") {
  std::vector<Tree> leaves;
  for (const char* s : {"a", "b", "c", "d"}) leaves.push_back(Tree::make_leaf(s));
  const Tree star = Tree::make_internal(leaves);
  std::set<std::vector<std::string>> seen;
  std::vector<int> perm = {0, 1, 2, 3};
  do {
    Ordering o = Ordering::identity(star);
    o.set_perm(star.root(), perm);
    seen.insert(induced_ranking(star, o).order());
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(seen.size() == 24);
}

TEST_CASE("apply transposition") {
  const Ranking ab = Ranking::from_order({"a", "b"});
  const Ranking ba = apply_transposition(ab, Transposition{1});
  CHECK(ba.rank_of("a") == 2);
  CHECK(ba.rank_of("b") == 1);
  CHECK(apply_transposition(ba, Transposition{1}) == ab);

  const Ranking abc = Ranking::from_order({"a", "b", "c"});
  const Ranking acb = apply_transposition(abc, Transposition{2});
  CHECK(acb.rank_of("a") == 1);
  CHECK(acb.rank_of("b") == 3);
  CHECK(acb.rank_of("c") == 2);

  CHECK(code_of([&] { apply_transposition(abc, Transposition{3}); }) ==
        errc::out_of_range);
  CHECK(code_of([&] { apply_transposition(abc, Transposition{0}); }) ==
        errc::out_of_range);
}

TEST_CASE("adjacent transpositions generate the symmetric group") {
  for (int n = 2; n <= 6; ++n) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    const Ranking start = Ranking::from_order(names);
    std::set<std::vector<std::string>> seen = {start.order()};
    std::queue<Ranking> frontier;
    frontier.push(start);
    while (!frontier.empty()) {
      const Ranking cur = frontier.front();
      frontier.pop();
      for (int r = 1; r < n; ++r) {
        const Ranking next = apply_transposition(cur, Transposition{r});
        if (seen.insert(next.order()).second) frontier.push(next);
      }
    }
    std::uint64_t factorial = 1;
    for (int i = 2; i <= n; ++i) factorial *= std::uint64_t(i);
    CHECK(seen.size() == factorial);
  }
}

TEST_CASE("ranking parsing and round trip") {
  const Ranking r = Ranking::parse(R"({"ranks":{"a":2,"b":1,"c":3}})");
  CHECK(r.n() == 3);
  CHECK(r.item_at(1) == "b");
  CHECK(r.order() == std::vector<std::string>{"b", "a", "c"});
  CHECK(Ranking::parse(r.serialize()) == r);

  CHECK(code_of([] { Ranking::parse(R"({"ranks":{"a":1,"b":1}})"); }) ==
        errc::parse_error);
  CHECK(code_of([] { Ranking::parse(R"({"ranks":{"a":1,"b":3}})"); }) ==
        errc::parse_error);
  CHECK(code_of([] { Ranking::parse(R"({"ranks":{}})"); }) == errc::parse_error);
  CHECK(code_of([] { Ranking::parse("[]"); }) == errc::parse_error);

  const std::map<std::string, int> ranks = {{"p", 2}, {"q", 1}};
  CHECK(Ranking::from_rank_map(ranks).item_at(1) == "q");
  CHECK(code_of([] { Ranking::from_order({"p", "p"}); }) == errc::parse_error);
}

TEST_CASE("tree structure queries") {
  const Tree body = oracle::body_parts_tree();
  CHECK(body.leaf_count() == 8);
  CHECK(body.max_degree() == 2);
  CHECK(body.is_binary());
  CHECK(body.depth(body.root()) == 0);

  const int knee = body.leaf_id_of("knee");
  const int thigh = body.leaf_id_of("thigh");
  const int ear = body.leaf_id_of("ear");
  CHECK(body.lca(knee, thigh) == body.node(knee).parent);
  CHECK(body.lca(knee, ear) == body.root());
  CHECK(body.lca(knee, knee) == knee);

  const int lower = body.node(body.root()).children[0];
  CHECK(body.subtree_leaf_count(lower) == 5);
  const Tree sub = body.subtree(lower);
  CHECK(sub.leaf_count() == 5);
  CHECK(sub.leaf_names() ==
        std::vector<std::string>{"knee", "thigh", "toe", "chest", "waist"});

  // canonical shapes ignore child order and leaf names
  const Tree t1 = Tree::parse(R"({"children":[{"children":[{"leaf":"a"},{"leaf":"b"}]},{"leaf":"c"}]})");
  const Tree t2 = Tree::parse(R"({"children":[{"leaf":"z"},{"children":[{"leaf":"q"},{"leaf":"r"}]}]})");
  CHECK(t1.canonical_shape() == t2.canonical_shape());
  const Tree star3 = Tree::parse(R"({"children":[{"leaf":"a"},{"leaf":"b"},{"leaf":"c"}]})");
  CHECK(t1.canonical_shape() != star3.canonical_shape());
}

TEST_CASE("subtree replacement and renaming") {
  const Tree body = oracle::body_parts_tree();
  const int lower = body.node(body.root()).children[0];
  const Tree replacement = Tree::make_internal({Tree::make_leaf("p1"),
                                                Tree::make_leaf("p2"),
                                                Tree::make_leaf("p3"),
                                                Tree::make_leaf("p4"),
                                                Tree::make_leaf("p5")});
  const Tree replaced = body.with_replaced_subtree(lower, replacement);
  CHECK(replaced.leaf_count() == 8);
  CHECK(replaced.leaf_names()[0] == "p1");

  const Tree renamed = replacement.with_renamed_leaves({"a", "b", "c", "d", "e"});
  CHECK(renamed.leaf_names() == std::vector<std::string>{"a", "b", "c", "d", "e"});
  CHECK(code_of([&] { replacement.with_renamed_leaves({"a"}); }) ==
        errc::leaf_count_mismatch);
}
