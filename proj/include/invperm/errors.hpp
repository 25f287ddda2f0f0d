#pragma once
// Error taxonomy shared by the whole library.  Every failure carries a code;
// the CLI maps codes onto its exit convention: limit/resource errors exit 3,
// everything else (malformed input, precondition violations, usage) exits 2.

#include <stdexcept>
#include <string>

namespace invperm {

enum class errc {
  parse_error,
  duplicate_leaf,
  missing_node,
  out_of_range,
  domain_mismatch,
  overlap,
  not_a_partition,
  invalid_rank_sum,
  bad_permutation,
  limit_exceeded,
  not_binary,
  not_degree2,
  not_normalized,
  leaf_count_mismatch,
  partition_property_violated,
  not_an_extension,
  invalid_encoding,
  cyclic,
  quadrature_failure,
  inconsistent_table,
  isolated_vertex,
  parallel_arcs,
  infeasible,
  usage_error,
  internal_error,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg),
        code_(code) {}
  errc code() const { return code_; }
  int exit_code() const { return code_ == errc::limit_exceeded ? 3 : 2; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) {
  throw error(code, msg);
}

inline void require(bool cond, errc code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace invperm
