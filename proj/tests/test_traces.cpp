// Comparison DAGs, linear-extension counting, and the lucky-item trace
// encoding of extensions.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "invperm/rng.hpp"
#include "invperm/traces.hpp"
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

bigint factorial(int n) {
  bigint f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Ranking ranking_of(const ComparisonDAG& dag, const std::vector<int>& order) {
  std::vector<std::string> names;
  for (int idx : order) names.push_back(dag.items()[size_t(idx)]);
  return Ranking::from_order(names);
}

}  // namespace

TEST_CASE("dag construction and queries") {
  const ComparisonDAG dag =
      ComparisonDAG::from_items({"x1", "x2", "x3"}, {{0, 1}, {1, 2}});
  CHECK(dag.n() == 3);
  CHECK(dag.has_edge(0, 1));
  CHECK_FALSE(dag.has_edge(0, 2));
  CHECK(dag.reaches(0, 2));
  CHECK_FALSE(dag.reaches(2, 0));
  CHECK_FALSE(dag.reaches(0, 0));
  CHECK(dag.parents(2) == std::vector<int>{1});
  CHECK(dag.parents(0).empty());
  CHECK(dag.item_index("x2") == 1);
  CHECK(code_of([&] { dag.item_index("y"); }) == errc::missing_node);

  CHECK(ComparisonDAG::parse(dag.serialize()).serialize() == dag.serialize());
  const ComparisonDAG parsed =
      ComparisonDAG::parse(R"({"items":["a","b"],"edges":[[1,0]]})");
  CHECK(parsed.has_edge(1, 0));

  CHECK(code_of([] { ComparisonDAG::parse("nonsense"); }) == errc::parse_error);
  CHECK(code_of([] { ComparisonDAG::parse(R"({"items":[],"edges":[]})"); }) ==
        errc::parse_error);
  CHECK(code_of([] { ComparisonDAG::parse(R"({"items":["a","a"],"edges":[]})"); }) ==
        errc::parse_error);
  CHECK(code_of([] {
          ComparisonDAG::from_items({"a", "b"}, {{0, 1}, {1, 0}});
        }) == errc::cyclic);
  CHECK(code_of([] { ComparisonDAG::from_items({"a"}, {{0, 0}}); }) == errc::cyclic);
  CHECK(code_of([] { ComparisonDAG::from_items({"a", "b"}, {{0, 5}}); }) ==
        errc::out_of_range);
}

TEST_CASE("counting linear extensions") {
  const ComparisonDAG empty = ComparisonDAG::from_items({"a", "b", "c", "d"}, {});
  CHECK(linear_extensions(empty) == 24);

  const ComparisonDAG chain =
      ComparisonDAG::from_items({"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(linear_extensions(chain) == 1);

  const ComparisonDAG one = ComparisonDAG::from_items({"a", "b", "c"}, {{0, 1}});
  CHECK(linear_extensions(one) == 3);

  // counts match full enumeration on random dags
  SplitMix64 rng(1001);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + int(rng.uniform_below(6));
    const ComparisonDAG dag = oracle::random_dag(n, rng);
    const auto exts = all_extensions(dag);
    CHECK(bigint(exts.size()) == linear_extensions(dag));
    CHECK(std::is_sorted(exts.begin(), exts.end()));
    for (const auto& order : exts) {
      for (const auto& [u, v] : dag.edges()) {
        const auto pu = std::find(order.begin(), order.end(), u);
        const auto pv = std::find(order.begin(), order.end(), v);
        CHECK(pu < pv);
      }
    }
  }

  std::vector<std::string> many;
  for (int i = 0; i < 13; ++i) many.push_back("m" + std::to_string(i));
  const ComparisonDAG wide = ComparisonDAG::from_items(many, {});
  CHECK(code_of([&] { linear_extensions(wide); }) == errc::limit_exceeded);
  CHECK(code_of([&] { all_extensions(wide, 1000); }) == errc::limit_exceeded);
}

TEST_CASE("free comparisons along a ranking") {
  const ComparisonDAG empty = ComparisonDAG::from_items({"x1", "x2", "x3"}, {});
  CHECK(degree_in_complement(Ranking::from_order({"x2", "x1", "x3"}), empty) == 0);

  const ComparisonDAG chain =
      ComparisonDAG::from_items({"x1", "x2", "x3", "x4"}, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(degree_in_complement(Ranking::from_order({"x1", "x2", "x3", "x4"}), chain) == 3);

  const ComparisonDAG skip = ComparisonDAG::from_items({"x1", "x2", "x3"}, {{0, 2}});
  CHECK(degree_in_complement(Ranking::from_order({"x1", "x3", "x2"}), skip) == 1);
  CHECK(degree_in_complement(Ranking::from_order({"x1", "x2", "x3"}), skip) == 0);

  CHECK(code_of([&] {
          degree_in_complement(Ranking::from_order({"x3", "x2", "x1"}), skip);
        }) == errc::not_an_extension);
  CHECK(code_of([&] {
          degree_in_complement(Ranking::from_order({"x1", "x2"}), skip);
        }) == errc::not_an_extension);
}

TEST_CASE("trace encoding basics") {
  const ComparisonDAG empty = ComparisonDAG::from_items({"x1", "x2", "x3"}, {});
  const Ranking rho = Ranking::from_order({"x2", "x3", "x1"});
  const TraceEncoding enc = encode(rho, empty);
  CHECK(enc.lucky == std::vector<int>{1});  // only the rank-1 item is lucky
  CHECK(enc.nonlucky_order == std::vector<int>{2, 0});
  CHECK(decode(enc, empty) == rho);

  const ComparisonDAG chain =
      ComparisonDAG::from_items({"x1", "x2", "x3"}, {{0, 1}, {1, 2}});
  const Ranking only = Ranking::from_order({"x1", "x2", "x3"});
  const TraceEncoding full = encode(only, chain);
  CHECK(full.lucky == std::vector<int>{0, 1, 2});
  CHECK(full.nonlucky_order.empty());
  CHECK(decode(full, chain) == only);

  CHECK(code_of([&] { encode(Ranking::from_order({"x2", "x1", "x3"}), chain); }) ==
        errc::not_an_extension);
}

TEST_CASE("decode rejects malformed encodings") {
  const ComparisonDAG empty = ComparisonDAG::from_items({"x1", "x2", "x3"}, {});
  TraceEncoding bad;
  bad.lucky = {};
  bad.nonlucky_order = {0, 1, 2};
  CHECK(code_of([&] { decode(bad, empty); }) == errc::invalid_encoding);

  bad.lucky = {0};
  bad.nonlucky_order = {1};  // does not cover x3
  CHECK(code_of([&] { decode(bad, empty); }) == errc::invalid_encoding);

  bad.lucky = {0, 1};
  bad.nonlucky_order = {1, 2};  // overlap
  CHECK(code_of([&] { decode(bad, empty); }) == errc::invalid_encoding);

  bad.lucky = {0, 1};  // two lucky items available at once on the empty dag
  bad.nonlucky_order = {2};
  CHECK(code_of([&] { decode(bad, empty); }) == errc::invalid_encoding);
}

TEST_CASE("round trip over all extensions of random dags") {
  SplitMix64 rng(90210);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + int(rng.uniform_below(6));  // up to 7 items
    const ComparisonDAG dag = oracle::random_dag(n, rng);
    std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
    for (const auto& order : all_extensions(dag)) {
      const Ranking rho = ranking_of(dag, order);
      const TraceEncoding enc = encode(rho, dag);
      CHECK(int(enc.lucky.size()) == degree_in_complement(rho, dag) + 1);
      CHECK(std::is_sorted(enc.lucky.begin(), enc.lucky.end()));
      CHECK(enc.lucky.size() + enc.nonlucky_order.size() == size_t(n));
      CHECK(decode(enc, dag) == rho);
      CHECK(seen.emplace(enc.lucky, enc.nonlucky_order).second);  // injective
    }
  }
}

TEST_CASE("per degree extension counts obey the factorial bound") {
  const ComparisonDAG empty = ComparisonDAG::from_items({"a", "b", "c", "d"}, {});
  const EncodingCountCheck all = encoding_count_check(empty, 0);
  CHECK(all.actual == 24);
  CHECK(all.bound == 24);
  CHECK(encoding_count_check(empty, 2).actual == 0);

  const ComparisonDAG chain =
      ComparisonDAG::from_items({"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {2, 3}});
  const EncodingCountCheck tight = encoding_count_check(chain, 3);
  CHECK(tight.actual == 1);
  CHECK(tight.bound == 1);
  CHECK(encoding_count_check(chain, 0).actual == 0);

  SplitMix64 rng(31337);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 3 + int(rng.uniform_below(4));  // up to 6 items
    const ComparisonDAG dag = oracle::random_dag(n, rng);
    bigint total = 0;
    for (int d = 0; d < n; ++d) {
      const EncodingCountCheck c = encoding_count_check(dag, d);
      CHECK(bigint(c.actual) <= c.bound);
      CHECK(c.bound * factorial(d + 1) == factorial(n));
      total += c.actual;
    }
    CHECK(total == linear_extensions(dag));
  }

  std::vector<std::string> many;
  for (int i = 0; i < 9; ++i) many.push_back("m" + std::to_string(i));
  const ComparisonDAG wide = ComparisonDAG::from_items(many, {});
  CHECK(code_of([&] { encoding_count_check(wide, 0); }) == errc::limit_exceeded);
  CHECK(code_of([&] { encoding_count_check(empty, 4); }) == errc::out_of_range);
}
