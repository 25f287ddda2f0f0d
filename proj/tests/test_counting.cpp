// Inversion counts, cross-inversions, Mann-Whitney / Wilcoxon conversions,
// and the per-node cross-inversion tables.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "doctest.h"
#include "invperm/counting.hpp"
#include "invperm/rng.hpp"
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
  return errc::internal_error;
}

}  // namespace

TEST_CASE("inversion counts on sequences") {
  CHECK(inv_sequence({1, 2, 3, 4}) == 0);
  CHECK(inv_sequence({4, 3, 2, 1}) == 6);
  CHECK(inv_sequence({2, 1, 4, 3}) == 2);
  CHECK(inv_sequence({}) == 0);
  CHECK(inv_sequence({7}) == 0);

  SplitMix64 rng(20260815);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + int(rng.uniform_below(120));
    std::vector<long long> values(m);
    for (long long& v : values) v = (long long)rng.uniform_below(40) - 20;
    CHECK(inv_sequence(values) == inv_sequence_bruteforce(values));
  }
}

TEST_CASE("inversions between rankings") {
  const Ranking rho = Ranking::from_order({"a", "b", "c", "d"});
  CHECK(inv(rho, rho) == 0);
  CHECK(inv(Ranking::from_order({"d", "c", "b", "a"}), rho) == 6);
  CHECK(inv(Ranking::from_order({"b", "a", "d", "c"}), rho) == 2);
  CHECK(inv(rho, Ranking::from_order({"d", "c", "b", "a"})) == 6);

  const Ranking other = Ranking::from_order({"a", "b", "c", "e"});
  CHECK(code_of([&] { inv(rho, other); }) == errc::domain_mismatch);

  SplitMix64 rng(7);
  const std::vector<std::string> names = {"p", "q", "r", "s", "t", "u", "v"};
  for (int trial = 0; trial < 100; ++trial) {
    const Ranking s = oracle::random_ranking(names, rng);
    const Ranking r = oracle::random_ranking(names, rng);
    CHECK(inv(s, r) == inv_bruteforce(s, r));
    CHECK(inv(s, r) == inv(r, s));  // symmetric by pair reversal
  }
}

TEST_CASE("cross inversions on rank lists") {
  // A on ranks {2,4} against B on ranks {1,3}: three of the four pairs have
  // the A element ranked above the B element
  CHECK(xinv_ranks({2, 4}, {1, 3}) == 3);
  CHECK(xinv_ranks({1, 3}, {2, 4}) == 1);
  CHECK(xinv_ranks({}, {1, 2}) == 0);
  CHECK(xinv_ranks({1, 2}, {}) == 0);
  CHECK(xinv_ranks({1, 2}, {3, 4}) == 0);
  CHECK(xinv_ranks({3, 4}, {1, 2}) == 4);

  CHECK(dinv_ranks({2, 4}, {1, 3}) == 2);
  CHECK(dinv_ranks({1, 3}, {2, 4}) == -2);
  CHECK(dinv_ranks({3, 1}, {4, 2}) == -2);
}

TEST_CASE("cross inversion paths agree") {
  SplitMix64 rng(424242);
  for (int trial = 0; trial < 1000; ++trial) {
    const int a = 1 + int(rng.uniform_below(64));
    const int b = 1 + int(rng.uniform_below(64));
    std::vector<int> pool(size_t(a + b));
    std::iota(pool.begin(), pool.end(), 1);
    rng.shuffle(pool);
    const std::vector<int> a_ranks(pool.begin(), pool.begin() + a);
    const std::vector<int> b_ranks(pool.begin() + a, pool.end());

    const count_t brute = xinv_ranks(a_ranks, b_ranks, XinvPath::brute);
    CHECK(xinv_ranks(a_ranks, b_ranks, XinvPath::merge) == brute);
    CHECK(xinv_ranks(a_ranks, b_ranks, XinvPath::binary_search) == brute);
    CHECK(xinv_ranks(a_ranks, b_ranks) == brute);

    // complementary counts cover every pair exactly once
    const count_t rev = xinv_ranks(b_ranks, a_ranks);
    CHECK(brute + rev == count_t(a) * count_t(b));
    // difference has the parity of ab
    const long long d = dinv_ranks(a_ranks, b_ranks);
    CHECK(d == (long long)brute - (long long)rev);
    CHECK(((d % 2 + 2) % 2) == (long long)((count_t(a) * count_t(b)) % 2));
  }
}

TEST_CASE("concatenation identity") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const int a = int(rng.uniform_below(20));
    const int b = int(rng.uniform_below(20));
    std::vector<int> pool(size_t(a + b));
    std::iota(pool.begin(), pool.end(), 1);
    rng.shuffle(pool);
    const std::vector<int> av(pool.begin(), pool.begin() + a);
    const std::vector<int> bv(pool.begin() + a, pool.end());
    std::vector<long long> cat;
    for (int v : av) cat.push_back(v);
    for (int v : bv) cat.push_back(v);
    const count_t whole = inv_sequence(cat);
    const count_t ia = inv_sequence(std::vector<long long>(av.begin(), av.end()));
    const count_t ib = inv_sequence(std::vector<long long>(bv.begin(), bv.end()));
    CHECK(whole == ia + ib + xinv_ranks(av, bv));
  }
}

TEST_CASE("cross inversions by item names") {
  const Ranking rho = Ranking::parse(R"({"ranks":{"a":1,"b":2,"c":3,"d":4}})");
  CHECK(xinv({"b", "d"}, {"a", "c"}, rho) == 3);
  CHECK(xinv({"a", "c"}, {"b", "d"}, rho) == 1);
  CHECK(dinv({"b", "d"}, {"a", "c"}, rho) == 2);

  CHECK(code_of([&] { xinv({"a", "b"}, {"b", "c"}, rho); }) == errc::overlap);
  CHECK(code_of([&] { xinv({"a", "a"}, {"b"}, rho); }) == errc::overlap);
  CHECK(code_of([&] { xinv({"a", "z"}, {"b"}, rho); }) == errc::domain_mismatch);
}

TEST_CASE("mann whitney u") {
  const Ranking rho = Ranking::parse(R"({"ranks":{"a":1,"b":2,"c":3,"d":4}})");
  CHECK(mann_whitney_u({"a", "d"}, {"b", "c"}, rho) == 2);
  CHECK(mann_whitney_u({"a", "b"}, {"c", "d"}, rho) == 0);
  CHECK(mann_whitney_u({"c", "d"}, {"a", "b"}, rho) == 0);

  // the two sides must partition the whole domain
  CHECK(code_of([&] { mann_whitney_u({"a"}, {"b", "c"}, rho); }) ==
        errc::not_a_partition);
  CHECK(code_of([&] { mann_whitney_u({"a", "b"}, {"b", "c", "d"}, rho); }) ==
        errc::not_a_partition);

  // U is never above ab/2
  SplitMix64 rng(5150);
  const std::vector<std::string> names = {"x1", "x2", "x3", "x4", "x5", "x6"};
  for (int trial = 0; trial < 100; ++trial) {
    const Ranking r = oracle::random_ranking(names, rng);
    const std::vector<std::string> left = {"x1", "x2", "x3"};
    const std::vector<std::string> right = {"x4", "x5", "x6"};
    const count_t u = mann_whitney_u(left, right, r);
    CHECK(2 * u <= 9);
    CHECK(u == std::min(xinv(left, right, r), xinv(right, left, r)));
  }
}

TEST_CASE("wilcoxon rank sum conversion") {
  const Ranking rho = Ranking::parse(R"({"ranks":{"a":1,"b":2,"c":3,"d":4}})");
  CHECK(wilcoxon_w({"b", "c"}, rho) == 5);
  CHECK(xinv_via_wilcoxon(2, 2, 5) == 2);
  CHECK(xinv_via_wilcoxon(2, 2, 3) == 4);   // B holds the two lowest ranks
  CHECK(xinv_via_wilcoxon(2, 2, 7) == 0);   // B holds the two highest ranks
  CHECK(code_of([] { xinv_via_wilcoxon(2, 2, 2); }) == errc::invalid_rank_sum);
  CHECK(code_of([] { xinv_via_wilcoxon(2, 2, 8); }) == errc::invalid_rank_sum);
  CHECK(code_of([&] { wilcoxon_w({"z"}, rho); }) == errc::domain_mismatch);
}

TEST_CASE("wilcoxon conversion exhaustive") {
  // every bipartition of every size up to 8, a few rankings each: the rank-sum
  // route and the direct count must agree
  SplitMix64 rng(314159);
  for (int n = 2; n <= 8; ++n) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("i" + std::to_string(i));
    for (int rep = 0; rep < 3; ++rep) {
      const Ranking r = oracle::random_ranking(names, rng);
      for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        std::vector<std::string> a_items, b_items;
        for (int i = 0; i < n; ++i)
          (mask >> i & 1 ? b_items : a_items).push_back(names[size_t(i)]);
        const count_t direct = xinv(a_items, b_items, r);
        const count_t via = xinv_via_wilcoxon(a_items.size(), b_items.size(),
                                              wilcoxon_w(b_items, r));
        CHECK(direct == via);
      }
    }
  }
}

TEST_CASE("checked arithmetic") {
  const count_t big = std::numeric_limits<count_t>::max();
  CHECK(checked_add(big - 1, 1) == big);
  CHECK(checked_mul(1u << 31, 1u << 31) == (count_t(1) << 62));
  CHECK(code_of([&] { checked_add(big, 1); }) == errc::internal_error);
  CHECK(code_of([&] { checked_mul(big, 2); }) == errc::internal_error);
}

TEST_CASE("cross inversion tables") {
  const Tree body = oracle::body_parts_tree();
  const Ranking rho = oracle::body_parts_ranking();

  const CrossInvMatrix root_table = cross_inv_matrix(body, body.root(), rho);
  CHECK(root_table.k() == 2);
  CHECK(root_table.sizes == std::vector<count_t>{5, 3});
  CHECK(root_table.consistent());
  // entries match the direct cross counts over the children's leaf sets
  const int lower = body.node(body.root()).children[0];
  const int upper = body.node(body.root()).children[1];
  std::vector<std::string> lo_names, up_names;
  for (int id : body.leaves_under(lower)) lo_names.push_back(body.node(id).leaf_name);
  for (int id : body.leaves_under(upper)) up_names.push_back(body.node(id).leaf_name);
  CHECK(root_table.xinv[0][1] == xinv(lo_names, up_names, rho));
  CHECK(root_table.xinv[1][0] == xinv(up_names, lo_names, rho));
  CHECK(root_table.xinv[0][0] == 0);
  CHECK(root_table.xinv[0][1] + root_table.xinv[1][0] == 15);

  CHECK(code_of([&] { cross_inv_matrix(body, body.leaf_id_of("ear"), rho); }) ==
        errc::out_of_range);
  CHECK(code_of([&] { cross_inv_matrix(body, 999, rho); }) == errc::out_of_range);
}

TEST_CASE("bottom-up tables match per-node recomputation") {
  SplitMix64 rng(8086);
  for (int n = 2; n <= 6; ++n) {
    for (const Tree& shape : series_reduced_shapes(n)) {
      for (int rep = 0; rep < 3; ++rep) {
        const Ranking rho = oracle::random_ranking(shape.leaf_names(), rng);
        const std::vector<CrossInvMatrix> tables = all_cross_inv_matrices(shape, rho);
        CHECK(tables.size() == shape.internal_ids().size());
        for (const CrossInvMatrix& t : tables) {
          CHECK(t.consistent());
          const CrossInvMatrix direct = cross_inv_matrix(shape, t.node, rho);
          CHECK(t.sizes == direct.sizes);
          CHECK(t.xinv == direct.xinv);
        }
      }
    }
  }
}
