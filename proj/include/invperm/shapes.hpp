#pragma once
// Generators for unordered rooted tree shapes with a given number of leaves,
// used by the analysis sweeps and the test suites.  Every internal node of a
// generated shape has at least two children (single-child chains carry no
// information for the objective).  Leaves are named "a", "b", ... in document
// order.

#include <vector>

#include "invperm/tree.hpp"

namespace invperm {

// every shape whose internal nodes all have degree >= 2, one representative
// per isomorphism class; counts by leaves start 1, 1, 2, 5, 12, 33, 90, 261
std::vector<Tree> series_reduced_shapes(int leaves);

// the binary subset; counts by leaves start 1, 1, 1, 2, 3, 6, 11, 23
std::vector<Tree> binary_shapes(int leaves);

}  // namespace invperm
