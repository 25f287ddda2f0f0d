#include "invperm/errors.hpp"

namespace invperm {

const char* errc_name(errc c) {
  switch (c) {
    case errc::parse_error: return "ParseError";
    case errc::duplicate_leaf: return "DuplicateLeaf";
    case errc::missing_node: return "MissingNode";
    case errc::out_of_range: return "OutOfRange";
    case errc::domain_mismatch: return "DomainMismatch";
    case errc::overlap: return "Overlap";
    case errc::not_a_partition: return "NotAPartition";
    case errc::invalid_rank_sum: return "InvalidRankSum";
    case errc::bad_permutation: return "BadPermutation";
    case errc::limit_exceeded: return "LimitExceeded";
    case errc::not_binary: return "NotBinary";
    case errc::not_degree2: return "NotDegree2";
    case errc::not_normalized: return "NotNormalized";
    case errc::leaf_count_mismatch: return "LeafCountMismatch";
    case errc::partition_property_violated: return "PartitionPropertyViolated";
    case errc::not_an_extension: return "NotAnExtension";
    case errc::invalid_encoding: return "InvalidEncoding";
    case errc::cyclic: return "Cyclic";
    case errc::quadrature_failure: return "QuadratureFailure";
    case errc::inconsistent_table: return "InconsistentTable";
    case errc::isolated_vertex: return "IsolatedVertex";
    case errc::parallel_arcs: return "ParallelArcs";
    case errc::infeasible: return "Infeasible";
    case errc::usage_error: return "UsageError";
    case errc::internal_error: return "InternalError";
  }
  return "UnknownError";
}

}  // namespace invperm
