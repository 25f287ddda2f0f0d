#pragma once
// The cross-inversion distribution X_{a,b}: the number of inverted pairs
// between two blocks of sizes a and b in a uniformly random interleaving.
// Exact count tables (Gaussian-binomial coefficients), the maximum
// probability and its normalization, the characteristic function in closed
// form with removable singularities handled explicitly, inverse-Fourier
// recovery of individual probabilities, and the interval-matching /
// pole-reduction machinery that justifies the closed-form evaluation.

#include <complex>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "invperm/counting.hpp"
#include "invperm/permutahedron.hpp"  // bigint, rational

namespace invperm {

struct DistributionTable {
  int a = 0, b = 0;
  std::vector<bigint> counts;  // index k = 0..ab
  bigint total;                // C(a+b, a)
};

// production path: multiply the polynomial by (1 - q^(b+i)) and divide by
// (1 - q^i) for i = 1..a; O(a * ab) big-integer operations
DistributionTable cross_inv_counts(int a, int b, count_t table_guard = 1'000'000);
// reference path: the lattice recurrence
//   C(a, b, k) = C(a-1, b, k-b) + C(a, b-1, k)
// conditioning on whether the largest rank sits in the a-block (then it
// inverts all b items of the other block); quadratic in the table size
DistributionTable cross_inv_counts_recurrence(int a, int b,
                                              count_t table_guard = 10'000);

// permutations of [m] by inversion count (row of the triangle of Mahonian
// numbers), for the convolution identity tests
std::vector<bigint> inversion_number_counts(int m);

// rows "a,b,k,count,probability_num,probability_den" with a header line
std::string distribution_csv(const DistributionTable& table);

struct MaxProbability {
  rational p_max;
  int argmax_k = 0;        // smallest maximizing k
  double normalized = 0;   // p_max * sqrt(a b (a+b))
};

MaxProbability max_probability(int a, int b);

// closed form: phi(t) = prod_{j=1..a} u_{b+j}(t) / u_j(t) with u_k the
// characteristic function of the uniform distribution on {0..k-1}; near
// t = 0 (mod 2pi) each u_k is evaluated as a finite geometric sum, elsewhere
// the factors are paired through the interval-matching bijection so every
// ratio stays bounded by one and 0/0 points reduce to a cosine ratio
std::complex<double> charfn(int a, int b, double t);
double charfn_abs(int a, int b, double t);

// (1/2pi) * integral of phi(t) e^{-ikt} over [-pi, pi]
double probability_via_inverse_ft(int a, int b, int k, double tol);

struct IntegralAbs {
  double value = 0;       // integral of |phi| over [-pi, pi]
  double normalized = 0;  // value * b * sqrt(a)
};

IntegralAbs integral_abs_charfn(int a, int b, double tol);

// shared-cache evaluator: characteristic-function values are memoized per t,
// so sweeping many k against one (a, b) reuses every quadrature node
class CharfnIntegrator {
 public:
  CharfnIntegrator(int a, int b);
  double probability(int k, double tol, std::size_t eval_budget = 1'000'000);
  double integral_abs(double tol, std::size_t eval_budget = 1'000'000);
  std::complex<double> phi(double t);

 private:
  int a_, b_;
  std::vector<double> split_points_;  // zeros of the sine factors in [0, pi]
  std::unordered_map<std::uint64_t, std::complex<double>> cache_;
};

struct IntervalBijection {
  int a = 0, b = 0;
  double t = 0;          // reduced mod 1
  std::vector<int> map;  // map[k-1] = sigma(k) in {b+1..b+a}
  int sigma(int k) const { return map[std::size_t(k - 1)]; }
};

// the k-interval of t is [floor(kt)/k, (floor(kt)+1)/k); the bijection sends
// each k in {1..a} to a sigma(k) in {b+1..b+a} whose interval it encloses
IntervalBijection interval_matching(int a, int b, double t);

struct PoleReductionReport {
  int samples = 0;
  int violations = 0;
  double max_excess = 0;  // worst observed rhs - lhs
  double worst_t = 0;
  bool ok = true;
};

// checks |sin(kt)/k| >= |sin(sigma(k)t)/sigma(k)| - 1e-12 over sampled
// t in [0, pi], with sigma taken from interval_matching at t/pi
PoleReductionReport pole_reduction_check(int a, int b, int samples,
                                         std::uint64_t seed = 1);

}  // namespace invperm
