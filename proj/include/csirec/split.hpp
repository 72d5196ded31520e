#pragma once

#include <cstdint>
#include <vector>

#include "csirec/bipartite_graph.hpp"

namespace csirec {

/// Train/test division of a link set. Training links and test links are
/// disjoint and together recover the source graph. Entities that lose
/// every link to the test side stay in the index space with degree 0.
struct SplitDataset {
  BipartiteGraph training;
  std::vector<Link> test_links;  // sorted by (object, user)
  Index num_objects = 0;
  Index num_users = 0;
  std::uint64_t seed = 0;
};

/// Uniform random link split. round(test_fraction * |E|) links go to the
/// test set; identical (graph, fraction, seed) triples give identical
/// splits on every platform.
///
/// Throws DataError if either side of the split would be empty.
SplitDataset split(const BipartiteGraph& graph, double test_fraction,
                   std::uint64_t seed);

}  // namespace csirec
