// Cross-inversion distribution: exact tables, closed-form characteristic
// function, quadrature, and the interval-matching support lemmas.

#include "invperm/distribution.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>

#include "invperm/errors.hpp"
#include "invperm/rng.hpp"

namespace invperm {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

bigint binom_big(int n, int k) {
  if (k < 0 || k > n) return 0;
  bigint out = 1;
  for (int i = 1; i <= k; ++i) {
    out *= (n - k + i);
    out /= i;
  }
  return out;
}

void check_table_guard(int a, int b, count_t guard) {
  require(a >= 0 && b >= 0, errc::out_of_range, "block sizes must be >= 0");
  require(checked_mul(static_cast<count_t>(a), static_cast<count_t>(b)) <= guard,
          errc::limit_exceeded,
          "table size a*b exceeds the guard " + std::to_string(guard));
}

// poly *= (1 - q^s)
void mul_one_minus_power(std::vector<bigint>& poly, int s) {
  poly.resize(poly.size() + s);
  for (std::size_t j = poly.size(); j-- > static_cast<std::size_t>(s);)
    poly[j] -= poly[j - s];
}

// poly /= (1 - q^s); exact for Gaussian-binomial partial products
void div_one_minus_power(std::vector<bigint>& poly, int s) {
  // (1 - q^s) * out = poly  =>  out[j] = poly[j] + out[j-s]
  const std::size_t out_len = poly.size() - s;
  for (std::size_t j = s; j < out_len; ++j) poly[j] += poly[j - s];
  for (std::size_t j = out_len; j < poly.size(); ++j)
    require(poly[j] + poly[j - s] == 0, errc::internal_error,
            "polynomial division left a remainder");
  poly.resize(out_len);
}

}  // namespace

DistributionTable cross_inv_counts(int a, int b, count_t table_guard) {
  check_table_guard(a, b, table_guard);
  DistributionTable table;
  table.a = a;
  table.b = b;
  table.counts.assign(1, 1);
  if (b > 0) {
    for (int i = 1; i <= a; ++i) {
      mul_one_minus_power(table.counts, b + i);
      div_one_minus_power(table.counts, i);
    }
  }
  table.total = binom_big(a + b, a);
  bigint sum = 0;
  for (const bigint& c : table.counts) sum += c;
  require(sum == table.total && static_cast<long long>(table.counts.size()) ==
                                    static_cast<long long>(a) * b + 1,
          errc::internal_error, "count table drifted from its invariants");
  return table;
}

DistributionTable cross_inv_counts_recurrence(int a, int b, count_t table_guard) {
  check_table_guard(a, b, table_guard);
  // rows[bb] = counts for (aa, bb), rolled over aa
  std::vector<std::vector<bigint>> rows(b + 1);
  for (int bb = 0; bb <= b; ++bb) rows[bb].assign(1, 1);  // aa = 0
  for (int aa = 1; aa <= a; ++aa) {
    std::vector<std::vector<bigint>> next(b + 1);
    next[0].assign(1, 1);
    for (int bb = 1; bb <= b; ++bb) {
      std::vector<bigint>& out = next[bb];
      out.assign(static_cast<std::size_t>(aa) * bb + 1, 0);
      for (std::size_t k = 0; k < out.size(); ++k) {
        if (k >= static_cast<std::size_t>(bb) &&
            k - bb < rows[bb].size())
          out[k] += rows[bb][k - bb];  // largest rank in the a-block
        if (k < next[bb - 1].size()) out[k] += next[bb - 1][k];
      }
    }
    rows = std::move(next);
  }
  DistributionTable table;
  table.a = a;
  table.b = b;
  table.counts = std::move(rows[b]);
  table.total = binom_big(a + b, a);
  return table;
}

std::vector<bigint> inversion_number_counts(int m) {
  require(m >= 0 && m <= 100, errc::limit_exceeded,
          "inversion-count table limited to 100 items");
  std::vector<bigint> poly(1, 1);
  for (int i = 2; i <= m; ++i) {
    // multiply by 1 + q + ... + q^(i-1)
    mul_one_minus_power(poly, i);
    div_one_minus_power(poly, 1);
  }
  return poly;
}

std::string distribution_csv(const DistributionTable& table) {
  std::string out = "a,b,k,count,probability_num,probability_den\n";
  for (std::size_t k = 0; k < table.counts.size(); ++k) {
    const bigint g = gcd(table.counts[k], table.total);
    out += std::to_string(table.a) + ',' + std::to_string(table.b) + ',' +
           std::to_string(k) + ',' + table.counts[k].str() + ',' +
           bigint(table.counts[k] / g).str() + ',' + bigint(table.total / g).str() +
           '\n';
  }
  return out;
}

MaxProbability max_probability(int a, int b) {
  require(a >= 1 && b >= 1, errc::out_of_range, "block sizes must be >= 1");
  const DistributionTable table = cross_inv_counts(a, b);
  MaxProbability out;
  std::size_t best = 0;
  for (std::size_t k = 1; k < table.counts.size(); ++k)
    if (table.counts[k] > table.counts[best]) best = k;
  out.argmax_k = static_cast<int>(best);
  out.p_max = rational(table.counts[best], table.total);
  out.normalized = out.p_max.convert_to<double>() *
                   std::sqrt(static_cast<double>(a) * b * (a + b));
  return out;
}

namespace {

// one uniform-distribution factor u_k(t) = (1/k) sum_{m<k} e^{imt}
std::complex<double> uniform_charfn_sum(int k, double t) {
  std::complex<double> sum = 0;
  for (int m = 0; m < k; ++m)
    sum += std::complex<double>(std::cos(m * t), std::sin(m * t));
  return sum / static_cast<double>(k);
}

std::complex<double> charfn_eval(int a, int b, double t) {
  if (a == 0 || b == 0) return 1.0;
  const double th = t / 2;
  if (std::abs(std::sin(th)) < 1e-8) {
    // near a multiple of 2pi every factor is close to 1; sum directly
    std::complex<double> out = 1.0;
    for (int j = 1; j <= a; ++j)
      out *= uniform_charfn_sum(b + j, t) / uniform_charfn_sum(j, t);
    return out;
  }
  // pair denominators with numerators so each ratio is bounded by one
  const IntervalBijection match = interval_matching(a, b, th / kPi);
  std::complex<double> out = 1.0;
  for (int k = 1; k <= a; ++k) {
    const int s = match.sigma(k);
    const double sk = std::sin(k * th), ss = std::sin(s * th);
    double mag;
    if (std::abs(sk) < 1e-12) {
      // zero of the denominator factor; the matched numerator vanishes too
      // and the limit is the cosine ratio
      mag = std::cos(s * th) / std::cos(k * th);
    } else {
      mag = (ss / sk) * (static_cast<double>(k) / s);
    }
    const double phase = (s - k) * th;
    out *= mag * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return out;
}

}  // namespace

std::complex<double> charfn(int a, int b, double t) {
  require(a >= 0 && b >= 0, errc::out_of_range, "block sizes must be >= 0");
  return charfn_eval(a, b, t);
}

double charfn_abs(int a, int b, double t) { return std::abs(charfn(a, b, t)); }

CharfnIntegrator::CharfnIntegrator(int a, int b) : a_(a), b_(b) {
  require(a >= 0 && b >= 0, errc::out_of_range, "block sizes must be >= 0");
  // zeros of every sine factor inside (0, pi): t = 2 pi m / j
  auto add_zeros = [&](int j) {
    for (int m = 1; 2 * m <= j; ++m)
      split_points_.push_back(2 * kPi * m / j);
  };
  for (int j = 1; j <= a; ++j) add_zeros(j);
  for (int j = b + 1; j <= b + a; ++j) add_zeros(j);
  add_zeros(a + b);
  split_points_.push_back(0.0);
  split_points_.push_back(kPi);
  std::sort(split_points_.begin(), split_points_.end());
  split_points_.erase(
      std::unique(split_points_.begin(), split_points_.end(),
                  [](double x, double y) { return std::abs(x - y) < 1e-13; }),
      split_points_.end());
}

std::complex<double> CharfnIntegrator::phi(double t) {
  const std::uint64_t key = std::bit_cast<std::uint64_t>(t);
  const auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  const std::complex<double> value = charfn_eval(a_, b_, t);
  cache_.emplace(key, value);
  return value;
}

namespace {

struct Quadrature {
  std::function<double(double)> f;
  std::size_t budget = 0;
  std::size_t used = 0;

  double eval(double t) {
    require(used < budget, errc::quadrature_failure,
            "quadrature evaluation budget exhausted");
    ++used;
    return f(t);
  }

  double simpson(double l, double r, double fl, double fm, double fr) const {
    return (r - l) / 6 * (fl + 4 * fm + fr);
  }

  double adaptive(double l, double r, double fl, double fm, double fr,
                  double whole, double tol, int depth) {
    const double m = (l + r) / 2;
    const double lm = (l + m) / 2, rm = (m + r) / 2;
    const double flm = eval(lm), frm = eval(rm);
    const double left = simpson(l, m, fl, flm, fm);
    const double right = simpson(m, r, fm, frm, fr);
    if (depth > 0 && std::abs(left + right - whole) <= 15 * tol)
      return left + right + (left + right - whole) / 15;
    require(depth < 48, errc::quadrature_failure,
            "quadrature failed to converge");
    return adaptive(l, m, fl, flm, fm, left, tol / 2, depth + 1) +
           adaptive(m, r, fm, frm, fr, right, tol / 2, depth + 1);
  }

  // integrates f over the sorted breakpoints to absolute tolerance tol
  double run(const std::vector<double>& points, double tol) {
    double total = 0;
    double f_right = eval(points.front());
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
      const double l = points[i], r = points[i + 1];
      const double fl = f_right;
      const double fm = eval((l + r) / 2);
      const double fr = eval(r);
      f_right = fr;
      const double seg_tol = tol * (r - l) / (points.back() - points.front());
      total += adaptive(l, r, fl, fm, fr, simpson(l, r, fl, fm, fr), seg_tol, 0);
    }
    return total;
  }
};

std::vector<double> with_oscillation_grid(const std::vector<double>& base,
                                          int oscillations) {
  // keep at most a few oscillations per initial segment
  std::vector<double> points = base;
  const int chunks = std::max(8, oscillations);
  for (int i = 1; i < chunks; ++i) points.push_back(kPi * i / chunks);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end(),
                           [](double x, double y) { return std::abs(x - y) < 1e-13; }),
               points.end());
  return points;
}

}  // namespace

double CharfnIntegrator::probability(int k, double tol, std::size_t eval_budget) {
  const long long ab = static_cast<long long>(a_) * b_;
  require(k >= 0 && k <= ab, errc::out_of_range,
          "k must lie in the support 0..ab");
  require(tol > 0, errc::out_of_range, "tolerance must be positive");
  Quadrature quad;
  quad.budget = eval_budget;
  quad.f = [this, k](double t) {
    const std::complex<double> v = phi(t);
    // real part of phi(t) e^{-ikt}
    return v.real() * std::cos(k * t) + v.imag() * std::sin(k * t);
  };
  // phi(-t) = conj(phi(t)), so the two-sided integral is twice the real part
  const std::vector<double> points =
      with_oscillation_grid(split_points_, static_cast<int>(ab) + 1);
  return quad.run(points, tol * kPi) / kPi;
}

double CharfnIntegrator::integral_abs(double tol, std::size_t eval_budget) {
  require(tol > 0, errc::out_of_range, "tolerance must be positive");
  Quadrature quad;
  quad.budget = eval_budget;
  quad.f = [this](double t) { return std::abs(phi(t)); };
  const std::vector<double> points =
      with_oscillation_grid(split_points_, a_ + b_);
  return 2 * quad.run(points, tol / 2);
}

double probability_via_inverse_ft(int a, int b, int k, double tol) {
  return CharfnIntegrator(a, b).probability(k, tol);
}

IntegralAbs integral_abs_charfn(int a, int b, double tol) {
  require(b >= a && a >= 2, errc::out_of_range,
          "the integral bound needs b >= a >= 2");
  IntegralAbs out;
  out.value = CharfnIntegrator(a, b).integral_abs(tol);
  out.normalized = out.value * b * std::sqrt(static_cast<double>(a));
  return out;
}

IntervalBijection interval_matching(int a, int b, double t) {
  require(a >= 1 && b >= 1, errc::out_of_range, "block sizes must be >= 1");
  IntervalBijection out;
  out.a = a;
  out.b = b;
  out.t = t - std::floor(t);

  // interval index floor(k x).  The floor must be exact with respect to the
  // double x itself: rounding k * x in floating point can flip the cell of
  // one factor but not another near a pole, yielding an enclosure graph that
  // corresponds to no real x at all (and then no perfect matching exists).
  // Decomposing x into its 53-bit mantissa makes every product exact.
  auto cell = [&](long long k) -> long long {
    if (out.t <= 0) return 0;
    int exp = 0;
    const double frac = std::frexp(out.t, &exp);
    const auto mant = static_cast<unsigned long long>(std::ldexp(frac, 53));
    const int shift = 53 - exp;  // k * x = k * mant / 2^shift, shift >= 53
    if (shift >= 128) return 0;  // x too small for k * x to reach 1
    const unsigned __int128 prod =
        static_cast<unsigned __int128>(mant) * static_cast<unsigned long long>(k);
    return std::min(static_cast<long long>(prod >> shift), k - 1);
  };
  std::vector<long long> cell_small(a + 1), cell_large(a + 1);
  for (int k = 1; k <= a; ++k) cell_small[k] = cell(k);
  for (int j = 1; j <= a; ++j) cell_large[j] = cell(b + j);
  // k encloses l  <=>  n_k/k <= n_l/l and (n_l+1)/l <= (n_k+1)/k
  auto encloses = [&](int k, int j) {
    const long long nk = cell_small[k], nl = cell_large[j];
    const long long l = b + j;
    return nk * l <= nl * k && (nl + 1) * k <= (nk + 1) * l;
  };

  out.map.assign(a, 0);
  std::vector<int> owner(a + 1, 0);  // numerator j -> matched k, 0 = free
  // cheap first pass: the canonical shift k -> b+k often already works
  for (int k = 1; k <= a; ++k) {
    if (encloses(k, k) && owner[k] == 0) {
      owner[k] = k;
      out.map[k - 1] = b + k;
    }
  }
  // augmenting paths for the rest
  std::vector<char> visited(a + 1);
  std::function<bool(int)> augment = [&](int k) -> bool {
    for (int j = 1; j <= a; ++j) {
      if (visited[j] || !encloses(k, j)) continue;
      visited[j] = 1;
      if (owner[j] == 0 || augment(owner[j])) {
        owner[j] = k;
        out.map[k - 1] = b + j;
        return true;
      }
    }
    return false;
  };
  for (int k = 1; k <= a; ++k) {
    if (out.map[k - 1] != 0) continue;
    std::fill(visited.begin(), visited.end(), 0);
    require(augment(k), errc::internal_error,
            "interval matching has no perfect matching");
  }
  return out;
}

PoleReductionReport pole_reduction_check(int a, int b, int samples,
                                         std::uint64_t seed) {
  require(a >= 1 && b >= 1 && samples >= 1, errc::out_of_range,
          "need positive block sizes and sample count");
  PoleReductionReport report;
  SplitMix64 rng(seed);
  std::vector<double> ts;
  ts.reserve(samples);
  // always exercise the removable singularities themselves
  for (int j = 1; j <= a && static_cast<int>(ts.size()) < samples; ++j)
    for (int m = 1; 2 * m <= j && static_cast<int>(ts.size()) < samples; ++m)
      ts.push_back(kPi * m / j);
  while (static_cast<int>(ts.size()) < samples) ts.push_back(kPi * rng.uniform01());

  for (double t : ts) {
    const IntervalBijection match = interval_matching(a, b, t / kPi);
    for (int k = 1; k <= a; ++k) {
      const int s = match.sigma(k);
      const double lhs = std::abs(std::sin(k * t)) / k;
      const double rhs = std::abs(std::sin(s * t)) / s;
      if (rhs > lhs + 1e-12) {
        ++report.violations;
        if (rhs - lhs > report.max_excess) {
          report.max_excess = rhs - lhs;
          report.worst_t = t;
        }
      }
    }
  }
  report.samples = static_cast<int>(ts.size());
  report.ok = report.violations == 0;
  return report;
}

}  // namespace invperm
