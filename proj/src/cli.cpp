// Subcommand dispatch for the invperm binary.  Handlers only orchestrate:
// they parse flags, read input files, call the library, and render the result
// in the requested format (json | csv | table).  JSON objects are emitted
// with sorted keys and two-space indentation, so identical invocations are
// byte-identical.  Exact counts that can exceed 64 bits travel as decimal
// strings.

#include "invperm/cli.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "invperm/counting.hpp"
#include "invperm/distribution.hpp"
#include "invperm/errors.hpp"
#include "invperm/minimizer.hpp"
#include "invperm/permutahedron.hpp"
#include "invperm/reductions.hpp"
#include "invperm/rng.hpp"
#include "invperm/shapes.hpp"
#include "invperm/traces.hpp"
#include "invperm/tree.hpp"

namespace invperm::cli {
namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(bool(in), errc::parse_error, "cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// comma-separated integers, e.g. "3,1,4"
std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    try {
      std::size_t used = 0;
      const int value = std::stoi(token, &used);
      require(used == token.size(), errc::usage_error,
              what + ": '" + token + "' is not an integer");
      out.push_back(value);
    } catch (const error&) {
      throw;
    } catch (const std::exception&) {
      fail(errc::usage_error, what + ": '" + token + "' is not an integer");
    }
  }
  require(!out.empty(), errc::usage_error, what + ": empty list");
  return out;
}

// built-in default cap, unless INVPERM_MAX_N overrides it
int default_cap(int builtin) {
  const char* env = std::getenv("INVPERM_MAX_N");
  if (env == nullptr || *env == '\0') return builtin;
  try {
    std::size_t used = 0;
    const int value = std::stoi(env, &used);
    require(used == std::string(env).size() && value >= 1, errc::usage_error,
            "INVPERM_MAX_N must be a positive integer");
    return value;
  } catch (const error&) {
    throw;
  } catch (const std::exception&) {
    fail(errc::usage_error, "INVPERM_MAX_N must be a positive integer");
  }
}

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::string join_ints(const std::vector<int>& v, const std::string& sep) {
  std::vector<std::string> parts;
  parts.reserve(v.size());
  for (int x : v) parts.push_back(std::to_string(x));
  return join(parts, sep);
}

// aligned ASCII table: numeric-looking columns are right-aligned
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) { rows_.push_back(std::move(header)); }

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string str() const {
    std::vector<std::size_t> width;
    for (const auto& row : rows_)
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c >= width.size()) width.push_back(0);
        width[c] = std::max(width[c], row[c].size());
      }
    std::vector<bool> numeric(width.size(), true);
    for (std::size_t r = 1; r < rows_.size(); ++r)
      for (std::size_t c = 0; c < rows_[r].size(); ++c)
        if (!looks_numeric(rows_[r][c])) numeric[c] = false;
    std::string out;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      out += render_row(rows_[r], width, numeric);
      if (r == 0) {
        std::string rule;
        for (std::size_t c = 0; c < width.size(); ++c) {
          if (c > 0) rule += "  ";
          rule += std::string(width[c], '-');
        }
        out += rule + '\n';
      }
    }
    return out;
  }

 private:
  static bool looks_numeric(const std::string& cell) {
    if (cell.empty()) return false;
    return cell.find_first_not_of("0123456789+-.eE/") == std::string::npos;
  }

  static std::string render_row(const std::vector<std::string>& row,
                                const std::vector<std::size_t>& width,
                                const std::vector<bool>& numeric) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) line += "  ";
      const std::size_t pad = width[c] - row[c].size();
      if (numeric[c])
        line += std::string(pad, ' ') + row[c];
      else if (c + 1 == row.size())
        line += row[c];  // last text column: no trailing spaces
      else
        line += row[c] + std::string(pad, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    return line + '\n';
  }

  std::vector<std::vector<std::string>> rows_;
};

void emit_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

void write_plot_data(const std::string& path, const std::string& csv) {
  std::ofstream f(path, std::ios::binary);
  require(bool(f), errc::parse_error, "cannot write file '" + path + "'");
  f << csv;
}

// ---------------------------------------------------------------- minv ----

struct MinvOpts {
  std::string tree_path, ranking_path;
  std::string strategy = "auto";
  std::string format = "table";
};

void run_minv(const MinvOpts& o, std::ostream& out) {
  const Tree tree = Tree::parse(slurp(o.tree_path));
  const Ranking rho = Ranking::parse(slurp(o.ranking_path));
  const Strategy strategy = o.strategy == "dp"           ? Strategy::dp
                            : o.strategy == "exhaustive" ? Strategy::exhaustive
                                                         : Strategy::auto_select;
  const MinvResult res = minv(tree, rho, strategy);
  const Ranking induced = induced_ranking(tree, res.ordering);
  if (o.format == "json") {
    json per = json::array();
    for (const NodeSolution& ns : res.per_node)
      per.push_back({{"node", ns.node}, {"mrinv", ns.mrinv}, {"perm", ns.best_perm}});
    emit_json(out, {{"minv", res.total},
                    {"n", tree.leaf_count()},
                    {"leaf_order", induced.order()},
                    {"per_node", per}});
  } else if (o.format == "csv") {
    out << "node,mrinv,perm\n";
    for (const NodeSolution& ns : res.per_node)
      out << ns.node << ',' << ns.mrinv << ',' << join_ints(ns.best_perm, " ") << '\n';
  } else {
    out << res.total << '\n';
    TextTable t({"node", "mrinv", "perm"});
    for (const NodeSolution& ns : res.per_node)
      t.add({std::to_string(ns.node), std::to_string(ns.mrinv),
             join_ints(ns.best_perm, " ")});
    out << '\n' << t.str();
    out << "\nleaf order: " << join(induced.order(), " ") << '\n';
  }
}

// ------------------------------------------------- xinv / mwu / wilcoxon --

struct RankPairOpts {
  std::string a_text, b_text;
  std::string format = "table";
};

void check_rank_lists(const std::vector<int>& a, const std::vector<int>& b,
                      bool pooled) {
  std::vector<int> all = a;
  all.insert(all.end(), b.begin(), b.end());
  for (int r : all)
    require(r >= 1, errc::out_of_range, "ranks must be >= 1");
  std::vector<int> sorted = all;
  std::sort(sorted.begin(), sorted.end());
  require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
          errc::overlap, "rank lists must be disjoint and duplicate-free");
  if (pooled)
    for (std::size_t i = 0; i < sorted.size(); ++i)
      require(sorted[i] == int(i) + 1, errc::not_a_partition,
              "pooled ranks must be exactly 1.." + std::to_string(sorted.size()));
}

void run_xinv(const RankPairOpts& o, std::ostream& out, bool as_mwu) {
  const std::vector<int> a = parse_int_list(o.a_text, "ranks of A");
  const std::vector<int> b = parse_int_list(o.b_text, "ranks of B");
  check_rank_lists(a, b, as_mwu);
  const count_t ab = xinv_ranks(a, b);
  const count_t ba = xinv_ranks(b, a);
  const long long d = dinv_ranks(a, b);
  const count_t pairs = checked_mul(a.size(), b.size());
  const count_t u = std::min(ab, ba);
  json j = {{"a_ranks", a}, {"b_ranks", b},      {"xinv_ab", ab},
            {"xinv_ba", ba}, {"dinv", d},         {"pairs", pairs}};
  if (as_mwu) {
    count_t w_b = 0;
    for (int r : b) w_b = checked_add(w_b, count_t(r));
    j["u"] = u;
    j["w_b"] = w_b;
  }
  if (o.format == "json") {
    emit_json(out, j);
  } else if (o.format == "csv") {
    if (as_mwu)
      out << "xinv_ab,xinv_ba,dinv,pairs,u,w_b\n"
          << ab << ',' << ba << ',' << d << ',' << pairs << ',' << u << ','
          << j["w_b"].get<count_t>() << '\n';
    else
      out << "xinv_ab,xinv_ba,dinv,pairs\n"
          << ab << ',' << ba << ',' << d << ',' << pairs << '\n';
  } else {
    out << "xinv(A,B) = " << ab << '\n';
    out << "xinv(B,A) = " << ba << '\n';
    out << "dinv      = " << d << '\n';
    out << "pairs     = " << pairs << '\n';
    if (as_mwu) {
      out << "U         = " << u << '\n';
      out << "W_B       = " << j["w_b"].get<count_t>() << '\n';
    }
  }
}

struct WilcoxonOpts {
  count_t a = 0, b = 0, w_b = 0;
  std::string format = "table";
};

void run_wilcoxon(const WilcoxonOpts& o, std::ostream& out) {
  const count_t x = xinv_via_wilcoxon(o.a, o.b, o.w_b);
  if (o.format == "json") {
    emit_json(out, {{"a", o.a}, {"b", o.b}, {"w_b", o.w_b}, {"xinv_ab", x}});
  } else if (o.format == "csv") {
    out << "a,b,w_b,xinv_ab\n" << o.a << ',' << o.b << ',' << o.w_b << ',' << x << '\n';
  } else {
    out << "xinv(A,B) = " << x << '\n';
  }
}

// ------------------------------------------------------------- analyze ----

struct AnalyzeOpts {
  std::string problem;
  int n = 0, r = 0, a = 0, b = 0;
  std::string tree_path;
  int limit_n = 0;
  std::string format = "table";
  std::string plot_path;
};

Problem make_problem(const AnalyzeOpts& o) {
  if (o.problem == "minv") {
    require(!o.tree_path.empty(), errc::usage_error,
            "--tree is required for --problem minv");
    return problem_minv_on_tree(Tree::parse(slurp(o.tree_path)));
  }
  if (o.problem == "xinv") {
    require(o.a >= 1 && o.b >= 1, errc::usage_error,
            "--a and --b are required for --problem xinv");
    std::vector<std::string> a_items, b_items;
    for (int i = 1; i <= o.a; ++i) a_items.push_back("a" + std::to_string(i));
    for (int i = 1; i <= o.b; ++i) b_items.push_back("b" + std::to_string(i));
    return problem_xinv_partition(a_items, b_items);
  }
  require(o.n >= 1, errc::usage_error,
          "--n is required for --problem " + o.problem);
  if (o.problem == "inversion-count") return problem_inversion_count(o.n);
  if (o.problem == "inversion-parity") return problem_inversion_parity(o.n);
  if (o.problem == "sorting") return problem_sorting(o.n);
  if (o.problem == "selection") {
    require(o.r >= 1, errc::usage_error, "--r is required for --problem selection");
    return problem_selection(o.n, o.r);
  }
  fail(errc::usage_error, "unknown --problem '" + o.problem + "'");
}

void run_analyze(const AnalyzeOpts& o, std::ostream& out) {
  const Problem problem = make_problem(o);
  const int limit = o.limit_n > 0 ? o.limit_n : default_cap(9);
  const PermutahedronAnalysis a = analyze(problem, limit);
  std::string hist_csv = "size,count\n";
  for (auto [size, freq] : a.sizes_histogram)
    hist_csv += std::to_string(size) + ',' + std::to_string(freq) + '\n';
  if (!o.plot_path.empty()) write_plot_data(o.plot_path, hist_csv);
  if (o.format == "json") {
    emit_json(out, json::parse(a.to_json()));
  } else if (o.format == "csv") {
    out << hist_csv;
  } else {
    const double s = a.avg_sensitivity.convert_to<double>();
    out << "problem          = " << a.problem << '\n';
    out << "n                = " << a.n << '\n';
    out << "rankings         = " << a.total_rankings << '\n';
    out << "components       = " << a.components << '\n';
    out << "mono edges       = " << a.mono_edges << '\n';
    out << "bi edges         = " << a.bi_edges << '\n';
    out << "s                = " << numerator(a.avg_sensitivity) << '/'
        << denominator(a.avg_sensitivity) << " = " << fmt_double(s) << '\n';
    out << "trace bound log2 = "
        << fmt_double(sensitivity_lemma_bound_log2(s, a.n)) << '\n';
    TextTable t({"component size", "count"});
    for (auto [size, freq] : a.sizes_histogram)
      t.add({std::to_string(size), std::to_string(freq)});
    out << '\n' << t.str();
  }
}

// ----------------------------------------------------------- criterion ----

struct CriterionOpts {
  std::string tree_path, ranking_path;
  int r = 0;
  std::string format = "table";
};

void run_criterion(const CriterionOpts& o, std::ostream& out) {
  const Tree tree = Tree::parse(slurp(o.tree_path));
  const Ranking rho = Ranking::parse(slurp(o.ranking_path));
  const int n = rho.n();
  require(o.r == 0 || (o.r >= 1 && o.r < n), errc::usage_error,
          "--r must lie in 1..n-1");
  const int lo = o.r > 0 ? o.r : 1;
  const int hi = o.r > 0 ? o.r : n - 1;
  json rows = json::array();
  TextTable t({"r", "items", "lhs", "rhs", "insensitive"});
  std::string csv = "r,item_lo,item_hi,lhs,rhs,insensitive\n";
  for (int r = lo; r <= hi; ++r) {
    const BinaryCriterion c = binary_criterion_check(tree, rho, Transposition{r});
    rows.push_back({{"r", r},
                    {"item_lo", rho.item_at(r)},
                    {"item_hi", rho.item_at(r + 1)},
                    {"lhs", c.lhs},
                    {"rhs", c.rhs},
                    {"insensitive", c.insensitive}});
    t.add({std::to_string(r), rho.item_at(r) + " " + rho.item_at(r + 1),
           std::to_string(c.lhs), std::to_string(c.rhs),
           c.insensitive ? "yes" : "no"});
    csv += std::to_string(r) + ',' + rho.item_at(r) + ',' + rho.item_at(r + 1) +
           ',' + std::to_string(c.lhs) + ',' + std::to_string(c.rhs) + ',' +
           (c.insensitive ? "true" : "false") + '\n';
  }
  if (o.format == "json")
    emit_json(out, {{"n", n}, {"rows", rows}});
  else if (o.format == "csv")
    out << csv;
  else
    out << t.str();
}

// ---------------------------------------------------------------- dist ----

struct DistOpts {
  int a = 0, b = 0;
  std::string format = "table";
  std::string plot_path;
};

void run_dist(const DistOpts& o, std::ostream& out) {
  const DistributionTable table = cross_inv_counts(o.a, o.b);
  const MaxProbability mp = max_probability(o.a, o.b);
  if (!o.plot_path.empty()) {
    std::string plot = "k,probability\n";
    for (std::size_t k = 0; k < table.counts.size(); ++k)
      plot += std::to_string(k) + ',' +
              fmt_double(rational(table.counts[k], table.total).convert_to<double>()) +
              '\n';
    write_plot_data(o.plot_path, plot);
  }
  if (o.format == "json") {
    json counts = json::array();
    for (const bigint& c : table.counts) counts.push_back(c.str());
    emit_json(out, {{"a", table.a},
                    {"b", table.b},
                    {"total", table.total.str()},
                    {"counts", counts},
                    {"max_probability",
                     {{"argmax_k", mp.argmax_k},
                      {"num", numerator(mp.p_max).str()},
                      {"den", denominator(mp.p_max).str()},
                      {"normalized", mp.normalized}}}});
  } else if (o.format == "csv") {
    out << distribution_csv(table);
  } else {
    TextTable t({"k", "count", "probability"});
    for (std::size_t k = 0; k < table.counts.size(); ++k)
      t.add({std::to_string(k), table.counts[k].str(),
             fmt_double(rational(table.counts[k], table.total).convert_to<double>())});
    out << t.str();
    out << "\ntotal      = " << table.total.str() << '\n';
    out << "p_max      = " << numerator(mp.p_max).str() << '/'
        << denominator(mp.p_max).str() << " at k = " << mp.argmax_k << '\n';
    out << "normalized = " << fmt_double(mp.normalized)
        << "  (p_max * sqrt(a b (a+b)))\n";
  }
}

// -------------------------------------------------- charfn-verify ---------

struct CharfnVerifyOpts {
  int a = 0, b = 0;
  double tol = 1e-8;
  std::string format = "table";
  std::string plot_path;
};

// the inverse transform must reproduce the exact distribution well below
// this published bound for any sane quadrature tolerance
constexpr double kVerifyBound = 1e-6;

void run_charfn_verify(const CharfnVerifyOpts& o, std::ostream& out) {
  const DistributionTable table = cross_inv_counts(o.a, o.b);
  CharfnIntegrator integ(o.a, o.b);
  double max_err = 0;
  int argmax_k = 0;
  std::string rows_csv = "k,exact,inverse_ft,abs_error\n";
  for (std::size_t k = 0; k < table.counts.size(); ++k) {
    const double exact = rational(table.counts[k], table.total).convert_to<double>();
    const double via_ft = integ.probability(int(k), o.tol);
    const double err = std::abs(via_ft - exact);
    rows_csv += std::to_string(k) + ',' + fmt_double(exact) + ',' +
                fmt_double(via_ft) + ',' + fmt_double(err) + '\n';
    if (err > max_err) {
      max_err = err;
      argmax_k = int(k);
    }
  }
  if (!o.plot_path.empty()) write_plot_data(o.plot_path, rows_csv);
  const bool ok = max_err <= kVerifyBound;
  if (o.format == "json") {
    emit_json(out, {{"a", o.a},
                    {"b", o.b},
                    {"tol", o.tol},
                    {"check_bound", kVerifyBound},
                    {"max_abs_error", max_err},
                    {"argmax_k", argmax_k},
                    {"ok", ok}});
  } else if (o.format == "csv") {
    out << rows_csv;
  } else {
    out << "a             = " << o.a << '\n';
    out << "b             = " << o.b << '\n';
    out << "quadrature tol= " << fmt_double(o.tol) << '\n';
    out << "max |error|   = " << fmt_double(max_err) << " at k = " << argmax_k
        << '\n';
    out << "within " << fmt_double(kVerifyBound) << "  = " << (ok ? "yes" : "no")
        << '\n';
  }
  require(ok, errc::quadrature_failure,
          "inverse transform misses the exact distribution by " +
              fmt_double(max_err));
}

// ------------------------------------------------------------ integral ----

struct IntegralOpts {
  int a = 0, b = 0;
  double tol = 1e-8;
  std::string format = "table";
};

void run_integral(const IntegralOpts& o, std::ostream& out) {
  const IntegralAbs res = integral_abs_charfn(o.a, o.b, o.tol);
  const MaxProbability mp = max_probability(o.a, o.b);
  const double two_pi_pmax = 2 * kPi * mp.p_max.convert_to<double>();
  const bool dominates = two_pi_pmax <= res.value + 1e-9;
  if (o.format == "json") {
    emit_json(out, {{"a", o.a},
                    {"b", o.b},
                    {"tol", o.tol},
                    {"value", res.value},
                    {"normalized", res.normalized},
                    {"two_pi_p_max", two_pi_pmax},
                    {"dominates_p_max", dominates}});
  } else if (o.format == "csv") {
    out << "a,b,value,normalized,two_pi_p_max\n"
        << o.a << ',' << o.b << ',' << fmt_double(res.value) << ','
        << fmt_double(res.normalized) << ',' << fmt_double(two_pi_pmax) << '\n';
  } else {
    out << "integral |phi|       = " << fmt_double(res.value) << '\n';
    out << "normalized (b sqrt a)= " << fmt_double(res.normalized) << '\n';
    out << "2 pi p_max           = " << fmt_double(two_pi_pmax) << '\n';
    out << "dominates p_max      = " << (dominates ? "yes" : "no") << '\n';
  }
}

// --------------------------------------------------------------- match ----

struct MatchOpts {
  int a = 0, b = 0;
  double t = 0;
  std::string format = "table";
};

void run_match(const MatchOpts& o, std::ostream& out) {
  const IntervalBijection bij = interval_matching(o.a, o.b, o.t);
  const double theta = kPi * bij.t;
  json rows = json::array();
  TextTable table({"k", "sigma", "|sin(k theta)|/k", "|sin(sigma theta)|/sigma", "ok"});
  std::string csv = "k,sigma,lhs,rhs,ok\n";
  bool all_ok = true;
  for (int k = 1; k <= o.a; ++k) {
    const int s = bij.sigma(k);
    const double lhs = std::abs(std::sin(k * theta)) / k;
    const double rhs = std::abs(std::sin(s * theta)) / s;
    const bool ok = lhs + 1e-12 >= rhs;
    all_ok = all_ok && ok;
    rows.push_back({{"k", k}, {"sigma", s}, {"lhs", lhs}, {"rhs", rhs}, {"ok", ok}});
    table.add({std::to_string(k), std::to_string(s), fmt_double(lhs),
               fmt_double(rhs), ok ? "yes" : "no"});
    csv += std::to_string(k) + ',' + std::to_string(s) + ',' + fmt_double(lhs) +
           ',' + fmt_double(rhs) + ',' + (ok ? "true" : "false") + '\n';
  }
  if (o.format == "json") {
    emit_json(out, {{"a", o.a},
                    {"b", o.b},
                    {"t", bij.t},
                    {"sigma", bij.map},
                    {"rows", rows},
                    {"pole_ok", all_ok}});
  } else if (o.format == "csv") {
    out << csv;
  } else {
    out << "t (mod 1) = " << fmt_double(bij.t) << '\n';
    out << table.str();
    out << "pole inequality holds: " << (all_ok ? "yes" : "no") << '\n';
  }
}

// ---------------------------------------------- gadget / extract-fas ------

struct GadgetOpts {
  std::string graph_path;
  std::string format = "table";
};

void run_gadget(const GadgetOpts& o, std::ostream& out) {
  const WeightedDigraph graph = WeightedDigraph::parse(slurp(o.graph_path));
  const GadgetInstance g = mfas_to_tree_gadget(graph);
  if (o.format == "json") {
    emit_json(out, {{"m", g.m},
                    {"leaves", 4 * g.m},
                    {"tree", json::parse(g.tree.serialize())},
                    {"ranking", json::parse(g.ranking.serialize())}});
  } else if (o.format == "csv") {
    out << "m,leaves\n" << g.m << ',' << 4 * g.m << '\n';
  } else {
    out << "m       = " << g.m << '\n';
    out << "leaves  = " << 4 * g.m << '\n';
    out << "tree    : " << g.tree.serialize() << '\n';
    out << "ranking : " << g.ranking.serialize() << '\n';
  }
}

void run_extract_fas(const GadgetOpts& o, std::ostream& out) {
  const WeightedDigraph graph = WeightedDigraph::parse(slurp(o.graph_path));
  const GadgetInstance g = mfas_to_tree_gadget(graph);
  const MinvResult res = minv(g.tree, g.ranking);
  const count_t fas = extract_fas(res.total, g.base);
  if (o.format == "json") {
    emit_json(out, {{"m", g.m}, {"minv", res.total}, {"mfas", fas}});
  } else if (o.format == "csv") {
    out << "m,minv,mfas\n" << g.m << ',' << res.total << ',' << fas << '\n';
  } else {
    out << "m    = " << g.m << '\n';
    out << "minv = " << res.total << '\n';
    out << "mfas = " << fas << '\n';
  }
}

// ------------------------------------------------------- encode-check -----

struct EncodeCheckOpts {
  std::string dag_path;
  int limit_n = 0;
  std::string format = "table";
};

void run_encode_check(const EncodeCheckOpts& o, std::ostream& out) {
  const ComparisonDAG dag = ComparisonDAG::parse(slurp(o.dag_path));
  const int limit = o.limit_n > 0 ? o.limit_n : default_cap(8);
  const int n = dag.n();
  require(n <= limit, errc::limit_exceeded,
          "exhaustive check limited to " + std::to_string(limit) + " items");

  json rows = json::array();
  TextTable t({"degree", "extensions", "bound", "ok"});
  std::string csv = "degree,extensions,bound,ok\n";
  bigint seen = 0;
  for (int d = 0; d < n; ++d) {
    const EncodingCountCheck c = encoding_count_check(dag, d, limit);
    seen += c.actual;
    const bool ok = bigint(c.actual) <= c.bound;
    rows.push_back({{"degree", d},
                    {"extensions", bigint(c.actual).str()},
                    {"bound", c.bound.str()},
                    {"ok", ok}});
    t.add({std::to_string(d), bigint(c.actual).str(), c.bound.str(),
           ok ? "yes" : "no"});
    csv += std::to_string(d) + ',' + bigint(c.actual).str() + ',' +
           c.bound.str() + ',' + (ok ? "true" : "false") + '\n';
  }
  const bigint total = linear_extensions(dag, std::max(limit, 12));
  require(seen == total, errc::internal_error,
          "per-degree extension counts do not add up");

  // every extension must survive an encode/decode round trip
  count_t round_trips = 0;
  for (const std::vector<int>& order : all_extensions(dag)) {
    std::vector<std::string> names;
    names.reserve(order.size());
    for (int idx : order) names.push_back(dag.items()[std::size_t(idx)]);
    const Ranking rho = Ranking::from_order(names);
    const Ranking back = decode(encode(rho, dag), dag);
    require(back == rho, errc::internal_error, "encode/decode round trip failed");
    ++round_trips;
  }

  if (o.format == "json") {
    emit_json(out, {{"n", n},
                    {"extensions", total.str()},
                    {"rows", rows},
                    {"round_trips", round_trips},
                    {"round_trip_ok", true}});
  } else if (o.format == "csv") {
    out << csv;
  } else {
    out << "items      = " << n << '\n';
    out << "extensions = " << total.str() << '\n';
    out << t.str();
    out << "round trips ok = " << round_trips << '\n';
  }
}

// ------------------------------------------------------------ selftest ----

struct SelftestOpts {
  std::uint64_t seed = 1;
};

// rank instance: an isolated leaf "u" of rank r next to a star of n-1 leaves
std::pair<Tree, Ranking> rank_instance(int n, int r) {
  std::vector<Tree> star;
  std::map<std::string, int> ranks;
  for (int i = 1; i <= n - 1; ++i) {
    const std::string name = "v" + std::to_string(i);
    star.push_back(Tree::make_leaf(name));
    ranks[name] = i < r ? i : i + 1;
  }
  ranks["u"] = r;
  const Tree tree =
      Tree::make_internal({Tree::make_leaf("u"), Tree::make_internal(star)});
  return {tree, Ranking::from_rank_map(ranks)};
}

Tree body_parts_tree() {
  auto leaf = [](const char* s) { return Tree::make_leaf(s); };
  const Tree lower = Tree::make_internal(
      {Tree::make_internal(
           {Tree::make_internal({leaf("knee"), leaf("thigh")}), leaf("toe")}),
       Tree::make_internal({leaf("chest"), leaf("waist")})});
  const Tree upper = Tree::make_internal(
      {Tree::make_internal({leaf("cheek"), leaf("mouth")}), leaf("ear")});
  return Tree::make_internal({lower, upper});
}

Ranking body_parts_ranking() {
  return Ranking::from_order(
      {"ear", "cheek", "mouth", "chest", "waist", "thigh", "knee", "toe"});
}

int run_selftest(const SelftestOpts& o, std::ostream& out) {
  int failures = 0;
  std::string pending_name;
  auto report = [&](const std::string& name, bool ok, const std::string& detail) {
    out << (ok ? "PASS " : "FAIL ") << name;
    if (!ok && !detail.empty()) out << ": " << detail;
    out << '\n';
    if (!ok) ++failures;
    pending_name.clear();
  };
  auto guarded = [&](const std::string& name, auto&& body) {
    pending_name = name;
    try {
      body();
      // the body reported for itself unless it threw
      if (!pending_name.empty()) report(name, false, "no result reported");
    } catch (const std::exception& e) {
      report(name, false, e.what());
    }
  };

  guarded("shape counts", [&] {
    bool ok = true;
    const std::size_t series[] = {1, 1, 2, 5, 12, 33, 90};
    for (int n = 1; n <= 7; ++n) ok = ok && series_reduced_shapes(n).size() == series[n - 1];
    const std::size_t binary[] = {1, 1, 1, 2, 3, 6, 11, 23};
    for (int n = 1; n <= 8; ++n) ok = ok && binary_shapes(n).size() == binary[n - 1];
    report("shape counts", ok, "");
  });
  guarded("rank instances", [&] {
    bool ok = true;
    std::string detail;
    for (int n = 2; n <= 10 && ok; ++n)
      for (int r = 1; r <= n && ok; ++r) {
        auto [tree, rho] = rank_instance(n, r);
        const count_t got = minv(tree, rho).total;
        const count_t want = count_t(std::min(r - 1, n - r));
        if (got != want) {
          ok = false;
          detail = "n=" + std::to_string(n) + " r=" + std::to_string(r) +
                   " got " + std::to_string(got);
        }
      }
    report("rank instances", ok, detail);
  });
  guarded("body parts order", [&] {
    const MinvResult res = minv(body_parts_tree(), body_parts_ranking());
    const Ranking induced = induced_ranking(body_parts_tree(), res.ordering);
    const bool ok = res.total == 0 && induced == body_parts_ranking();
    report("body parts order", ok, "minv=" + std::to_string(res.total));
  });
  guarded("solver vs brute force", [&] {
    bool ok = true;
    std::string detail;
    SplitMix64 rng(o.seed);
    int done = 0;
    for (int n = 2; n <= 6 && ok; ++n)
      for (const Tree& shape : series_reduced_shapes(n)) {
        for (int trial = 0; trial < 4 && ok; ++trial) {
          std::vector<std::string> order = shape.leaf_names();
          rng.shuffle(order);
          const Ranking rho = Ranking::from_order(order);
          const count_t fast = minv(shape, rho).total;
          const count_t brute = minv_bruteforce(shape, rho);
          if (fast != brute) {
            ok = false;
            detail = "n=" + std::to_string(n) + " trial " + std::to_string(trial);
          }
          ++done;
        }
      }
    report("solver vs brute force (" + std::to_string(done) + " instances)", ok,
           detail);
  });
  guarded("distribution recurrence", [&] {
    bool ok = true;
    std::string detail;
    for (int a = 1; a <= 4 && ok; ++a)
      for (int b = a; a + b <= 8 && ok; ++b) {
        const DistributionTable fast = cross_inv_counts(a, b);
        const DistributionTable slow = cross_inv_counts_recurrence(a, b);
        if (fast.counts != slow.counts) {
          ok = false;
          detail = "a=" + std::to_string(a) + " b=" + std::to_string(b);
        }
      }
    report("distribution recurrence", ok, detail);
  });
  guarded("inversion-count analysis", [&] {
    const PermutahedronAnalysis a = analyze(problem_inversion_count(4));
    const bool ok = a.components == 24 && a.avg_sensitivity == rational(3);
    report("inversion-count analysis", ok,
           "components=" + std::to_string(a.components));
  });
  guarded("cross-inversion sensitivity", [&] {
    const PermutahedronAnalysis a =
        analyze(problem_xinv_partition({"a1", "a2"}, {"b1", "b2"}));
    const bool ok = a.avg_sensitivity == rational(2);  // 2ab/(a+b)
    report("cross-inversion sensitivity", ok, "");
  });
  guarded("inverse transform a=b=3", [&] {
    CharfnIntegrator integ(3, 3);
    const DistributionTable table = cross_inv_counts(3, 3);
    double max_err = 0;
    for (std::size_t k = 0; k < table.counts.size(); ++k) {
      const double exact =
          rational(table.counts[k], table.total).convert_to<double>();
      max_err = std::max(max_err, std::abs(integ.probability(int(k), 1e-8) - exact));
    }
    report("inverse transform a=b=3", max_err <= 1e-6, fmt_double(max_err));
  });
  guarded("gadget round trip", [&] {
    const WeightedDigraph triangle =
        WeightedDigraph::from_arcs(3, {{0, 1}, {1, 2}, {2, 0}});
    const GadgetInstance g = mfas_to_tree_gadget(triangle);
    const count_t fas = extract_fas(minv(g.tree, g.ranking).total, g.base);
    report("gadget round trip", fas == brute_force_mfas(triangle),
           "fas=" + std::to_string(fas));
  });
  guarded("trace encoding counts", [&] {
    const ComparisonDAG dag = ComparisonDAG::from_items(
        {"p", "q", "r", "s", "t"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    bigint seen = 0;
    bool ok = true;
    for (int d = 0; d < dag.n(); ++d) {
      const EncodingCountCheck c = encoding_count_check(dag, d);
      seen += c.actual;
      ok = ok && bigint(c.actual) <= c.bound;
    }
    ok = ok && seen == linear_extensions(dag);
    report("trace encoding counts", ok, "");
  });
  guarded("pole reduction", [&] {
    const PoleReductionReport rep = pole_reduction_check(6, 9, 2000, o.seed);
    report("pole reduction", rep.ok, fmt_double(rep.max_excess));
  });
  out << (failures == 0 ? "selftest: all checks passed\n"
                        : "selftest: " + std::to_string(failures) + " failed\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact inversion minimization on rooted trees, with the "
               "statistics and diagnostics around it"};
  app.name("invperm");
  app.require_subcommand(1);

  MinvOpts minv_opts;
  auto* c_minv = app.add_subcommand(
      "minv", "minimum inversions of a tree against a ranking");
  c_minv->add_option("--tree", minv_opts.tree_path, "tree JSON file")->required();
  c_minv->add_option("--ranking", minv_opts.ranking_path, "ranking JSON file")
      ->required();
  c_minv->add_option("--strategy", minv_opts.strategy, "per-node solver")
      ->check(CLI::IsMember({"auto", "dp", "exhaustive"}));
  c_minv->add_option("--format", minv_opts.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "table"}));

  RankPairOpts xinv_opts;
  auto* c_xinv = app.add_subcommand(
      "xinv", "cross inversions between two comma-separated rank lists");
  c_xinv->add_option("a_ranks", xinv_opts.a_text, "ranks of the A items")->required();
  c_xinv->add_option("b_ranks", xinv_opts.b_text, "ranks of the B items")->required();
  c_xinv->add_option("--format", xinv_opts.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "table"}));

  RankPairOpts mwu_opts;
  auto* c_mwu = app.add_subcommand(
      "mwu", "Mann-Whitney U of two pooled comma-separated rank lists");
  c_mwu->add_option("a_ranks", mwu_opts.a_text, "ranks of the A items")->required();
  c_mwu->add_option("b_ranks", mwu_opts.b_text, "ranks of the B items")->required();
  c_mwu->add_option("--format", mwu_opts.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "table"}));

  WilcoxonOpts wilcoxon_opts;
  auto* c_wilcoxon = app.add_subcommand(
      "wilcoxon", "cross inversions from the Wilcoxon rank sum W_B");
  c_wilcoxon->add_option("a", wilcoxon_opts.a, "size of A")->required();
  c_wilcoxon->add_option("b", wilcoxon_opts.b, "size of B")->required();
  c_wilcoxon->add_option("w_b", wilcoxon_opts.w_b, "rank sum of B")->required();
  c_wilcoxon->add_option("--format", wilcoxon_opts.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "table"}));

  AnalyzeOpts analyze_opts;
  auto* c_analyze = app.add_subcommand(
      "analyze", "exhaustive permutahedron analysis of a problem");
  c_analyze
      ->add_option("--problem", analyze_opts.problem,
                   "minv | xinv | inversion-count | inversion-parity | "
                   "selection | sorting")
      ->required();
  c_analyze->add_option("--n", analyze_opts.n, "number of items");
  c_analyze->add_option("--r", analyze_opts.r, "selection rank");
  c_analyze->add_option("--a", analyze_opts.a, "size of block A");
  c_analyze->add_option("--b", analyze_opts.b, "size of block B");
  c_analyze->add_option("--tree", analyze_opts.tree_path, "tree JSON file");
  c_analyze->add_option("--limit-n", analyze_opts.limit_n, "enumeration cap");
  c_analyze->add_option("--format", analyze_opts.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  c_analyze->add_option("--emit-plot-data", analyze_opts.plot_path,
                        "write the component-size histogram as CSV");

  CriterionOpts criterion_opts;
  auto* c_criterion = app.add_subcommand(
      "criterion", "binary-tree sensitivity criterion for adjacent swaps");
  c_criterion->add_option("--tree", criterion_opts.tree_path, "tree JSON file")
      ->required();
  c_criterion
      ->add_option("--ranking", criterion_opts.ranking_path, "ranking JSON file")
      ->required();
  c_criterion->add_option("--r", criterion_opts.r,
                          "check only the swap of ranks r, r+1");
  c_criterion->add_option("--format", criterion_opts.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "table"}));

  DistOpts dist_opts;
  auto* c_dist = app.add_subcommand(
      "dist", "exact cross-inversion distribution for block sizes a, b");
  c_dist->add_option("a", dist_opts.a, "size of A")->required();
  c_dist->add_option("b", dist_opts.b, "size of B")->required();
  c_dist->add_option("--format", dist_opts.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  c_dist->add_option("--emit-plot-data", dist_opts.plot_path,
                     "write (k, probability) rows as CSV");

  CharfnVerifyOpts charfn_opts;
  auto* c_charfn = app.add_subcommand(
      "charfn-verify",
      "compare the inverse Fourier transform against the exact distribution");
  c_charfn->add_option("a", charfn_opts.a, "size of A")->required();
  c_charfn->add_option("b", charfn_opts.b, "size of B")->required();
  c_charfn->add_option("--tol", charfn_opts.tol, "quadrature tolerance");
  c_charfn->add_option("--format", charfn_opts.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  c_charfn->add_option("--emit-plot-data", charfn_opts.plot_path,
                       "write (k, abs_error) rows as CSV");

  IntegralOpts integral_opts;
  auto* c_integral = app.add_subcommand(
      "integral", "integral of |phi| over [-pi, pi] and its normalization");
  c_integral->add_option("a", integral_opts.a, "size of A (2 <= a <= b)")->required();
  c_integral->add_option("b", integral_opts.b, "size of B")->required();
  c_integral->add_option("--tol", integral_opts.tol, "quadrature tolerance");
  c_integral->add_option("--format", integral_opts.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "table"}));

  MatchOpts match_opts;
  auto* c_match = app.add_subcommand(
      "match", "interval matching sigma and the pole inequality at t");
  c_match->add_option("a", match_opts.a, "size of A")->required();
  c_match->add_option("b", match_opts.b, "size of B")->required();
  c_match->add_option("t", match_opts.t, "parameter, taken mod 1")->required();
  c_match->add_option("--format", match_opts.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "table"}));

  GadgetOpts gadget_opts;
  auto* c_gadget = app.add_subcommand(
      "gadget", "tree-plus-ranking instance encoding a feedback arc set");
  c_gadget->add_option("--graph", gadget_opts.graph_path, "digraph JSON file")
      ->required();
  c_gadget->add_option("--format", gadget_opts.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "table"}));

  GadgetOpts extract_opts;
  auto* c_extract = app.add_subcommand(
      "extract-fas", "solve the gadget and recover the minimum feedback arc set");
  c_extract->add_option("--graph", extract_opts.graph_path, "digraph JSON file")
      ->required();
  c_extract->add_option("--format", extract_opts.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "table"}));

  EncodeCheckOpts encode_opts;
  auto* c_encode = app.add_subcommand(
      "encode-check", "trace-encoding counts and round trips over a DAG");
  c_encode->add_option("--dag", encode_opts.dag_path, "comparison DAG JSON file")
      ->required();
  c_encode->add_option("--limit-n", encode_opts.limit_n, "enumeration cap");
  c_encode->add_option("--format", encode_opts.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "table"}));

  SelftestOpts selftest_opts;
  auto* c_selftest =
      app.add_subcommand("selftest", "run the built-in checks at desk scale");
  c_selftest->add_option("--seed", selftest_opts.seed, "PRNG seed");

  int rc = 0;
  c_minv->callback([&] { run_minv(minv_opts, out); });
  c_xinv->callback([&] { run_xinv(xinv_opts, out, false); });
  c_mwu->callback([&] { run_xinv(mwu_opts, out, true); });
  c_wilcoxon->callback([&] { run_wilcoxon(wilcoxon_opts, out); });
  c_analyze->callback([&] { run_analyze(analyze_opts, out); });
  c_criterion->callback([&] { run_criterion(criterion_opts, out); });
  c_dist->callback([&] { run_dist(dist_opts, out); });
  c_charfn->callback([&] { run_charfn_verify(charfn_opts, out); });
  c_integral->callback([&] { run_integral(integral_opts, out); });
  c_match->callback([&] { run_match(match_opts, out); });
  c_gadget->callback([&] { run_gadget(gadget_opts, out); });
  c_extract->callback([&] { run_extract_fas(extract_opts, out); });
  c_encode->callback([&] { run_encode_check(encode_opts, out); });
  c_selftest->callback([&] { rc = run_selftest(selftest_opts, out); });

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int cli_rc = app.exit(e, out, err);
    return cli_rc == 0 ? 0 : 2;
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return e.exit_code();
  }
  return rc;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(std::move(args), out, err);
}

}  // namespace invperm::cli
