#pragma once

// Shared fixtures and a dense brute-force reference used as the oracle
// for the sparse similarity pipeline. The reference works on an explicit
// adjacency matrix and deliberately shares no code with the library path.

#include <cmath>
#include <vector>

#include "csirec/bipartite_graph.hpp"
#include "csirec/rng.hpp"

namespace testutil {

using csirec::BipartiteGraph;
using csirec::Index;
using csirec::Link;

// Two objects, two users: u1 collected {o1, o2}, u2 collected {o2}.
inline BipartiteGraph t1_graph() {
  return BipartiteGraph::build(2, 2, {{0, 0}, {1, 0}, {1, 1}});
}

// Three objects, six users: u1 {o1}, u2 {o1,o2,o3}, u3..u5 {o2}, u6 {o2,o3}.
inline BipartiteGraph fig1_graph() {
  return BipartiteGraph::build(3, 6,
                               {{0, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2},
                                {1, 3}, {1, 4}, {1, 5}, {2, 5}});
}

inline BipartiteGraph random_graph(csirec::Rng& rng, Index max_n, Index max_m,
                                   int density_lo_permille, int density_hi_permille) {
  const Index n = 2 + static_cast<Index>(rng.below(max_n - 1));
  const Index m = 2 + static_cast<Index>(rng.below(max_m - 1));
  const int density =
      density_lo_permille + static_cast<int>(rng.below(static_cast<std::uint64_t>(
                                density_hi_permille - density_lo_permille + 1)));
  std::vector<Link> links;
  for (Index o = 0; o < n; ++o)
    for (Index u = 0; u < m; ++u)
      if (static_cast<int>(rng.below(1000)) < density) links.emplace_back(o, u);
  if (links.empty()) links.emplace_back(0, 0);
  return BipartiteGraph::build(n, m, std::move(links));
}

struct DenseMatrices {
  std::vector<std::vector<double>> w;    // diffusion weights
  std::vector<std::vector<double>> fsp;  // column-normalized forward read
  std::vector<std::vector<double>> bsp;  // column-normalized backward read
  std::vector<std::vector<double>> csi;  // sqrt(fsp_ij * bsp_ji)
};

inline DenseMatrices dense_reference(const BipartiteGraph& g) {
  const std::size_t n = g.num_objects();
  const std::size_t m = g.num_users();
  std::vector<std::vector<char>> a(n, std::vector<char>(m, 0));
  for (Index o = 0; o < g.num_objects(); ++o)
    for (Index u : g.users_of(o)) a[o][u] = 1;

  std::vector<std::size_t> ko(n, 0), ku(m, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < m; ++l)
      if (a[i][l]) {
        ++ko[i];
        ++ku[l];
      }

  DenseMatrices d;
  d.w.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (ko[j] == 0) continue;
      double sum = 0.0;
      for (std::size_t l = 0; l < m; ++l)
        if (a[i][l] && a[j][l]) sum += 1.0 / static_cast<double>(ku[l]);
      d.w[i][j] = sum / static_cast<double>(ko[j]);
    }

  std::vector<double> colsum(n, 0.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) colsum[j] += d.w[i][j];

  d.fsp.assign(n, std::vector<double>(n, 0.0));
  d.bsp.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (colsum[j] > 0.0) d.fsp[i][j] = d.w[i][j] / colsum[j];
      if (colsum[i] > 0.0) d.bsp[j][i] = d.w[j][i] / colsum[i];
    }

  d.csi.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      d.csi[i][j] = std::sqrt(d.fsp[i][j] * d.bsp[j][i]);
  return d;
}

}  // namespace testutil
