#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "csirec/bipartite_graph.hpp"

namespace csirec {

enum class SimilarityKind { NBI, FSP, BSP, CSI, ICNBI, UserCosine };

std::string to_string(SimilarityKind kind);

/// Sparse square similarity matrix stored column-wise: cols[j] holds the
/// nonzero entries (i, value(i, j)) sorted by row index. Absent entries
/// are zero. Objects (or users) with degree 0 have empty columns.
class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;
  SimilarityMatrix(SimilarityKind kind, std::size_t dim)
      : kind_(kind), cols_(dim) {}

  SimilarityKind kind() const { return kind_; }
  std::size_t dim() const { return cols_.size(); }

  double at(Index row, Index col) const;

  const std::vector<std::pair<Index, double>>& column(Index col) const { return cols_[col]; }
  std::vector<std::pair<Index, double>>& column(Index col) { return cols_[col]; }

  std::size_t nonzeros() const;

  /// Sorts every column by row index; call after out-of-order inserts.
  void sort_columns();

 private:
  SimilarityKind kind_ = SimilarityKind::NBI;
  std::vector<std::vector<std::pair<Index, double>>> cols_;
};

/// Two-step diffusion weights between objects:
///   w_ij = (1 / k(o_j)) * sum_l a_il a_jl / k(u_l).
/// Each column of a live object sums to 1; dead objects give zero columns.
SimilarityMatrix nbi_weights(const BipartiteGraph& graph);

/// Column-normalized read of W in the forward direction. Since live
/// columns of W already sum to 1 this equals W entrywise; kept as its own
/// step so the corrected similarity can be built exactly as defined.
SimilarityMatrix forward_proportions(const SimilarityMatrix& nbi);

/// Backward direction: entry (j, i) is w_ji / sum_j w_ji.
SimilarityMatrix backward_proportions(const SimilarityMatrix& nbi);

/// Corrected similarity s_ij = sqrt(fsp(i, j) * bsp(j, i)), computed once
/// per unordered pair so the result is exactly symmetric.
SimilarityMatrix csi_similarity(const SimilarityMatrix& fsp, const SimilarityMatrix& bsp);

/// Diffusion weights reweighted by the collected object's degree:
///   w_ij^IC = k(o_j)^beta * w_ij.
/// beta = 0 recovers plain NBI weights.
SimilarityMatrix icnbi_weights(const BipartiteGraph& graph, double beta);

/// Cosine similarity between users over their collected object sets.
SimilarityMatrix user_cosine(const BipartiteGraph& graph);

/// Text dump "row<TAB>col<TAB>weight" with 17 significant digits, sorted
/// by (col, row), for cross-implementation diffing.
void dump_matrix(std::ostream& out, const SimilarityMatrix& matrix);

}  // namespace csirec
