// Reductions between per-node minimization and weighted minimum feedback
// arc set, in both directions, plus the depth-2 hardness gadget.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <functional>
#include <string>
#include <vector>

#include "doctest.h"
#include "invperm/counting.hpp"
#include "invperm/minimizer.hpp"
#include "invperm/reductions.hpp"
#include "invperm/rng.hpp"
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
  return errc::internal_error;
}

CrossInvMatrix random_table(int k, SplitMix64& rng) {
  CrossInvMatrix t;
  t.node = 0;
  t.sizes.resize(size_t(k));
  for (count_t& s : t.sizes) s = 1 + rng.uniform_below(4);
  t.xinv.assign(size_t(k), std::vector<count_t>(size_t(k), 0));
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      const count_t cap = t.sizes[size_t(i)] * t.sizes[size_t(j)];
      const count_t u = rng.uniform_below(cap + 1);
      t.xinv[size_t(i)][size_t(j)] = u;
      t.xinv[size_t(j)][size_t(i)] = cap - u;
    }
  return t;
}

// expected floor of the gadget objective: 4m(m-1) - 2A + m with A the number
// of arc pairs sharing an endpoint
count_t expected_base(const WeightedDigraph& g) {
  const count_t m = count_t(g.arcs().size());
  std::vector<count_t> incident(size_t(g.n()), 0);
  for (const Arc& a : g.arcs()) {
    ++incident[size_t(a.u)];
    ++incident[size_t(a.v)];
  }
  count_t shared = 0;
  for (count_t d : incident) shared += d * (d - 1) / 2;
  return 4 * m * (m - 1) - 2 * shared + m;
}

void check_round_trip(const WeightedDigraph& g) {
  const GadgetInstance gi = mfas_to_tree_gadget(g);
  CHECK(gi.m == int(g.arcs().size()));
  CHECK(gi.base == expected_base(g));
  CHECK(gi.tree.leaf_count() == 4 * gi.m);
  const count_t best = minv(gi.tree, gi.ranking).total;
  CHECK(extract_fas(best, gi.base) == brute_force_mfas(g));
}

}  // namespace

TEST_CASE("weighted digraph parsing") {
  const WeightedDigraph g = WeightedDigraph::parse(R"({"n":3,"arcs":[[1,2,5],[0,1]]})");
  CHECK(g.n() == 3);
  CHECK(g.arcs().size() == 2);
  CHECK(g.arcs()[0].u == 0);
  CHECK(g.arcs()[0].w == 1);  // default weight
  CHECK(g.arcs()[1].w == 5);
  CHECK(g.has_arc(1, 2));
  CHECK_FALSE(g.has_arc(2, 1));
  CHECK(WeightedDigraph::parse(g.serialize()).serialize() == g.serialize());

  CHECK(code_of([] { WeightedDigraph::parse("oops"); }) == errc::parse_error);
  CHECK(code_of([] { WeightedDigraph::parse(R"({"n":0,"arcs":[]})"); }) ==
        errc::parse_error);
  CHECK(code_of([] { WeightedDigraph::parse(R"({"n":2,"arcs":[[0,0]]})"); }) ==
        errc::parse_error);
  CHECK(code_of([] { WeightedDigraph::parse(R"({"n":2,"arcs":[[0,1,0]]})"); }) ==
        errc::parse_error);
  CHECK(code_of([] { WeightedDigraph::parse(R"({"n":2,"arcs":[[0,4]]})"); }) ==
        errc::out_of_range);
  CHECK(code_of([] {
          WeightedDigraph::parse(R"({"n":2,"arcs":[[0,1],[0,1,3]]})");
        }) == errc::parallel_arcs);
}

TEST_CASE("node tables reduce to weighted feedback arc set") {
  CrossInvMatrix two;
  two.node = 0;
  two.sizes = {2, 2};
  two.xinv = {{0, 1}, {3, 0}};
  const MfasInstance inst = mrinv_to_mfas(two);
  CHECK(inst.offset == 1);
  REQUIRE(inst.graph.arcs().size() == 1);
  CHECK(inst.graph.arcs()[0].u == 0);
  CHECK(inst.graph.arcs()[0].v == 1);
  CHECK(inst.graph.arcs()[0].w == 2);
  CHECK(inst.offset + brute_force_mfas(inst.graph) == mrinv_exhaustive(two).mrinv);

  // balanced tables leave nothing to orient
  CrossInvMatrix balanced;
  balanced.node = 0;
  balanced.sizes = {2, 2, 2};
  balanced.xinv = {{0, 2, 2}, {2, 0, 2}, {2, 2, 0}};
  const MfasInstance b = mrinv_to_mfas(balanced);
  CHECK(b.graph.arcs().empty());
  CHECK(b.offset == 6);
  CHECK(mrinv_exhaustive(balanced).mrinv == 6);

  // cyclic preferences force one feedback arc
  CrossInvMatrix cyc;
  cyc.node = 0;
  cyc.sizes = {1, 1, 1};
  cyc.xinv = {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
  const MfasInstance c = mrinv_to_mfas(cyc);
  CHECK(c.offset == 0);
  CHECK(brute_force_mfas(c.graph) == 1);
  CHECK(mrinv_exhaustive(cyc).mrinv == 1);

  CrossInvMatrix broken;
  broken.node = 0;
  broken.sizes = {2, 2};
  broken.xinv = {{0, 1}, {1, 0}};  // 1 + 1 != 4
  CHECK(code_of([&] { mrinv_to_mfas(broken); }) == errc::inconsistent_table);
}

TEST_CASE("reduction agrees with the exhaustive node solver") {
  SplitMix64 rng(5551212);
  for (int trial = 0; trial < 500; ++trial) {
    const int k = 2 + int(rng.uniform_below(6));  // degrees 2..7
    const CrossInvMatrix t = random_table(k, rng);
    const MfasInstance inst = mrinv_to_mfas(t);
    const count_t via_fas = checked_add(inst.offset, brute_force_mfas(inst.graph));
    CHECK(via_fas == mrinv_exhaustive(t, 8).mrinv);
    CHECK(checked_add(inst.offset, mfas(inst.graph)) == via_fas);
  }
}

TEST_CASE("brute force feedback arc set") {
  const WeightedDigraph dag =
      WeightedDigraph::from_arcs(4, {{0, 1, 1}, {0, 2, 1}, {1, 3, 7}});
  CHECK(brute_force_mfas(dag) == 0);
  CHECK(mfas(dag) == 0);

  const WeightedDigraph two_cycle = WeightedDigraph::from_arcs(2, {{0, 1, 3}, {1, 0, 5}});
  CHECK(brute_force_mfas(two_cycle) == 3);
  CHECK(mfas(two_cycle) == 3);

  const WeightedDigraph triangle =
      WeightedDigraph::from_arcs(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}});
  CHECK(brute_force_mfas(triangle) == 1);
  CHECK(mfas(triangle) == 1);

  SplitMix64 rng(8675309);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + int(rng.uniform_below(5));
    std::vector<Arc> arcs;
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (u != v && rng.uniform_below(3) == 0)
          arcs.push_back({u, v, 1 + rng.uniform_below(6)});
    const WeightedDigraph g = WeightedDigraph::from_arcs(n, arcs);
    CHECK(brute_force_mfas(g) == mfas(g));
  }

  std::vector<Arc> loop;
  for (int i = 0; i < 11; ++i) loop.push_back({i, (i + 1) % 11, 1});
  CHECK(code_of([&] { brute_force_mfas(WeightedDigraph::from_arcs(11, loop)); }) ==
        errc::limit_exceeded);
}

TEST_CASE("hardness gadget on the pinned instances") {
  // one arc: two blocks of two leaves, cheapest interleaving costs 1
  const WeightedDigraph edge = WeightedDigraph::from_arcs(2, {{0, 1, 1}});
  const GadgetInstance g1 = mfas_to_tree_gadget(edge);
  CHECK(g1.m == 1);
  CHECK(g1.base == 1);
  CHECK(g1.tree.leaf_count() == 4);
  CHECK(minv(g1.tree, g1.ranking).total == 1);
  CHECK(extract_fas(1, g1.base) == 0);

  // two disjoint arcs: the blocks interact only across arcs
  const WeightedDigraph disjoint =
      WeightedDigraph::from_arcs(4, {{0, 1, 1}, {2, 3, 1}});
  const GadgetInstance g2 = mfas_to_tree_gadget(disjoint);
  CHECK(g2.base == 10);
  CHECK(minv(g2.tree, g2.ranking).total == 10);

  // a shared endpoint saves one cross-pair per adjacent arc pair
  const WeightedDigraph path = WeightedDigraph::from_arcs(3, {{0, 1, 1}, {1, 2, 1}});
  const GadgetInstance g3 = mfas_to_tree_gadget(path);
  CHECK(g3.base == 8);
  CHECK(minv(g3.tree, g3.ranking).total == 8);

  // directed triangle: one unavoidable feedback arc, costing 2 on top
  const WeightedDigraph triangle =
      WeightedDigraph::from_arcs(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}});
  const GadgetInstance g4 = mfas_to_tree_gadget(triangle);
  CHECK(g4.base == 21);
  const count_t tri_min = minv(g4.tree, g4.ranking).total;
  CHECK(tri_min == 23);
  CHECK(extract_fas(tri_min, g4.base) == 1);
  CHECK(extract_fas(tri_min, g4.base) == brute_force_mfas(triangle));

  // structure: depth-2 tree, one root child per touched vertex, ranks 1..4m
  for (const GadgetInstance* gi : {&g1, &g2, &g3, &g4}) {
    for (int leaf_id : gi->tree.leaf_ids())
      CHECK(gi->tree.depth(leaf_id) == 2);
    CHECK(gi->ranking.n() == 4 * gi->m);
    for (int r = 1; r <= 4 * gi->m; ++r) gi->ranking.item_at(r);  // 1..4m all present
  }

  const WeightedDigraph isolated = WeightedDigraph::from_arcs(3, {{0, 1, 1}});
  CHECK(code_of([&] { mfas_to_tree_gadget(isolated); }) == errc::isolated_vertex);
  const WeightedDigraph anti = WeightedDigraph::from_arcs(2, {{0, 1, 1}, {1, 0, 1}});
  CHECK(code_of([&] { mfas_to_tree_gadget(anti); }) == errc::parallel_arcs);
  const WeightedDigraph weighted = WeightedDigraph::from_arcs(2, {{0, 1, 2}});
  CHECK(code_of([&] { mfas_to_tree_gadget(weighted); }) == errc::out_of_range);
}

TEST_CASE("extracting the feedback number") {
  CHECK(extract_fas(1, 1) == 0);
  CHECK(extract_fas(23, 21) == 1);
  CHECK(extract_fas(10, 10) == 0);
  CHECK(code_of([] { extract_fas(28, 21); }) == errc::infeasible);  // odd gap
  CHECK(code_of([] { extract_fas(20, 21); }) == errc::infeasible);  // below floor
}

TEST_CASE("gadget round trip on all small digraphs") {
  // every orientation pattern over the unordered pairs of 3 vertices
  for (int code = 1; code < 27; ++code) {
    int c = code;
    std::vector<Arc> arcs;
    const std::vector<std::pair<int, int>> pairs = {{0, 1}, {0, 2}, {1, 2}};
    for (const auto& [u, v] : pairs) {
      const int pick = c % 3;
      c /= 3;
      if (pick == 1) arcs.push_back({u, v, 1});
      if (pick == 2) arcs.push_back({v, u, 1});
    }
    if (arcs.empty()) continue;
    std::vector<bool> touched(3, false);
    for (const Arc& a : arcs) touched[size_t(a.u)] = touched[size_t(a.v)] = true;
    if (!touched[0] || !touched[1] || !touched[2]) continue;
    check_round_trip(WeightedDigraph::from_arcs(3, arcs));
  }

  // a spread of 4- and 5-vertex instances
  SplitMix64 rng(24601);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4 + int(rng.uniform_below(2));
    std::vector<Arc> arcs;
    std::vector<bool> touched(size_t(n), false);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        const count_t pick = rng.uniform_below(3);
        if (pick == 0) continue;
        if (pick == 1)
          arcs.push_back({u, v, 1});
        else
          arcs.push_back({v, u, 1});
        touched[size_t(u)] = touched[size_t(v)] = true;
      }
    if (arcs.empty()) continue;
    bool all = true;
    for (bool t : touched) all = all && t;
    if (!all) continue;
    check_round_trip(WeightedDigraph::from_arcs(n, arcs));
  }
}
