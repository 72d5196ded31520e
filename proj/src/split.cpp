#include "csirec/split.hpp"

#include <algorithm>
#include <cmath>

#include "csirec/rng.hpp"

namespace csirec {

SplitDataset split(const BipartiteGraph& graph, double test_fraction,
                   std::uint64_t seed) {
  const std::size_t total = graph.num_links();
  if (total == 0) throw DataError("cannot split an empty graph");
  const auto test_size =
      static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(total)));
  if (test_size == 0 || test_size >= total) {
    throw DataError("test_fraction " + std::to_string(test_fraction) +
                    " leaves an empty training or test set for " +
                    std::to_string(total) + " links");
  }

  std::vector<Link> links = graph.links();
  Rng rng(seed);
  rng.partial_shuffle(links, test_size);

  SplitDataset ds;
  ds.num_objects = graph.num_objects();
  ds.num_users = graph.num_users();
  ds.seed = seed;
  ds.test_links.assign(links.begin(), links.begin() + static_cast<std::ptrdiff_t>(test_size));
  std::sort(ds.test_links.begin(), ds.test_links.end());
  std::vector<Link> train(links.begin() + static_cast<std::ptrdiff_t>(test_size), links.end());
  ds.training = BipartiteGraph::build(ds.num_objects, ds.num_users, std::move(train));
  return ds;
}

}  // namespace csirec
