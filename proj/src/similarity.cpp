#include "csirec/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace csirec {

std::string to_string(SimilarityKind kind) {
  switch (kind) {
    case SimilarityKind::NBI: return "NBI";
    case SimilarityKind::FSP: return "FSP";
    case SimilarityKind::BSP: return "BSP";
    case SimilarityKind::CSI: return "CSI";
    case SimilarityKind::ICNBI: return "IC-NBI";
    case SimilarityKind::UserCosine: return "USER-COSINE";
  }
  return "?";
}

double SimilarityMatrix::at(Index row, Index col) const {
  const auto& c = cols_[col];
  auto it = std::lower_bound(c.begin(), c.end(), row,
                             [](const auto& e, Index r) { return e.first < r; });
  return (it != c.end() && it->first == row) ? it->second : 0.0;
}

std::size_t SimilarityMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : cols_) n += c.size();
  return n;
}

void SimilarityMatrix::sort_columns() {
  for (auto& c : cols_)
    std::sort(c.begin(), c.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
}

namespace {

/// Accumulates one column of the co-occurrence sum
/// C_ij = sum_l a_il a_jl / k(u_l) for fixed j, via the users of j.
/// scratch must be all-zero on entry, length num_objects; it is restored
/// to zero before returning. touched rows come out sorted.
void accumulate_column(const BipartiteGraph& graph, Index j,
                       std::vector<double>& scratch, std::vector<Index>& touched) {
  touched.clear();
  for (Index u : graph.users_of(j)) {
    const double inv_ku = 1.0 / static_cast<double>(graph.user_degree(u));
    for (Index i : graph.objects_of(u)) {
      if (scratch[i] == 0.0) touched.push_back(i);
      scratch[i] += inv_ku;
    }
  }
  std::sort(touched.begin(), touched.end());
}

}  // namespace

SimilarityMatrix nbi_weights(const BipartiteGraph& graph) {
  const Index n = graph.num_objects();
  SimilarityMatrix w(SimilarityKind::NBI, n);
  std::vector<double> scratch(n, 0.0);
  std::vector<Index> touched;
  for (Index j = 0; j < n; ++j) {
    const Index kj = graph.object_degree(j);
    if (kj == 0) continue;
    accumulate_column(graph, j, scratch, touched);
    auto& col = w.column(j);
    col.reserve(touched.size());
    const double inv_kj = 1.0 / static_cast<double>(kj);
    for (Index i : touched) {
      col.emplace_back(i, scratch[i] * inv_kj);
      scratch[i] = 0.0;
    }
  }
  return w;
}

namespace {

SimilarityMatrix column_normalized(const SimilarityMatrix& nbi, SimilarityKind kind) {
  SimilarityMatrix out(kind, nbi.dim());
  for (Index j = 0; j < static_cast<Index>(nbi.dim()); ++j) {
    const auto& col = nbi.column(j);
    if (col.empty()) continue;
    double sum = 0.0;
    for (const auto& [i, v] : col) sum += v;
    auto& dst = out.column(j);
    dst.reserve(col.size());
    for (const auto& [i, v] : col) dst.emplace_back(i, v / sum);
  }
  return out;
}

}  // namespace

SimilarityMatrix forward_proportions(const SimilarityMatrix& nbi) {
  return column_normalized(nbi, SimilarityKind::FSP);
}

SimilarityMatrix backward_proportions(const SimilarityMatrix& nbi) {
  // r^BSP_ji = w_ji / sum_j w_ji normalizes over the first index, which
  // is the column sum of column i; the storage layout is unchanged.
  return column_normalized(nbi, SimilarityKind::BSP);
}

SimilarityMatrix csi_similarity(const SimilarityMatrix& fsp, const SimilarityMatrix& bsp) {
  if (fsp.dim() != bsp.dim()) throw DataError("FSP/BSP dimension mismatch");
  const Index n = static_cast<Index>(fsp.dim());
  SimilarityMatrix s(SimilarityKind::CSI, n);
  for (Index j = 0; j < n; ++j) {
    for (const auto& [i, forward] : fsp.column(j)) {
      if (i > j) continue;  // one visit per unordered pair
      const double backward = bsp.at(j, i);  // r^BSP_ji
      const double value = std::sqrt(forward * backward);
      if (value == 0.0) continue;
      s.column(j).emplace_back(i, value);
      if (i != j) s.column(i).emplace_back(j, value);
    }
  }
  s.sort_columns();
  return s;
}

SimilarityMatrix icnbi_weights(const BipartiteGraph& graph, double beta) {
  SimilarityMatrix w = nbi_weights(graph);
  SimilarityMatrix out(SimilarityKind::ICNBI, w.dim());
  for (Index j = 0; j < static_cast<Index>(w.dim()); ++j) {
    const Index kj = graph.object_degree(j);
    if (kj == 0) continue;
    const double scale = std::pow(static_cast<double>(kj), beta);
    auto& dst = out.column(j);
    dst.reserve(w.column(j).size());
    for (const auto& [i, v] : w.column(j)) dst.emplace_back(i, scale * v);
  }
  return out;
}

SimilarityMatrix user_cosine(const BipartiteGraph& graph) {
  const Index m = graph.num_users();
  SimilarityMatrix s(SimilarityKind::UserCosine, m);
  std::vector<double> scratch(m, 0.0);
  std::vector<Index> touched;
  for (Index i = 0; i < m; ++i) {
    const Index ki = graph.user_degree(i);
    if (ki == 0) continue;
    touched.clear();
    for (Index o : graph.objects_of(i)) {
      for (Index l : graph.users_of(o)) {
        if (scratch[l] == 0.0) touched.push_back(l);
        scratch[l] += 1.0;  // common-object count
      }
    }
    std::sort(touched.begin(), touched.end());
    auto& col = s.column(i);
    col.reserve(touched.size());
    for (Index l : touched) {
      const double denom =
          std::sqrt(static_cast<double>(ki) * static_cast<double>(graph.user_degree(l)));
      col.emplace_back(l, scratch[l] / denom);
      scratch[l] = 0.0;
    }
  }
  return s;
}

void dump_matrix(std::ostream& out, const SimilarityMatrix& matrix) {
  char buf[64];
  for (Index j = 0; j < static_cast<Index>(matrix.dim()); ++j) {
    for (const auto& [i, v] : matrix.column(j)) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out << i << '\t' << j << '\t' << buf << '\n';
    }
  }
}

}  // namespace csirec
