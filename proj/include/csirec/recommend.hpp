#pragma once

#include <iosfwd>
#include <vector>

#include "csirec/bipartite_graph.hpp"
#include "csirec/similarity.hpp"

namespace csirec {

/// A user's training-time selections.
struct UserHistory {
  Index user = 0;
  std::vector<Index> collected;  // ascending object indices

  static UserHistory of(const BipartiteGraph& training, Index user) {
    return {user, training.objects_of(user)};
  }
};

/// Dense per-object scores for one user. Collected objects are excluded
/// from the candidate set and carry score 0.
struct ScoreVector {
  Index user = 0;
  std::vector<double> scores;     // length = num_objects
  std::vector<char> is_candidate; // 0 for collected objects

  std::size_t num_candidates() const;
};

/// One ranked recommendation, highest score first.
struct RecommendationList {
  Index user = 0;
  std::vector<std::pair<Index, double>> items;  // (object, score)
};

/// Matrix-propagation score: score(o_i) = sum over collected j of
/// matrix(i, j). Serves NBI, IC-NBI and CSI. Empty history gives all-zero
/// scores.
ScoreVector score_propagation(const SimilarityMatrix& matrix, const UserHistory& history,
                              Index num_objects);

/// User-based collaborative filtering score over uncollected objects:
/// v_ij = sum_{l != i} s_li a_jl / sum_{l != i} s_li, or 0 when the
/// denominator vanishes.
ScoreVector score_cf(const SimilarityMatrix& user_sim, const BipartiteGraph& graph,
                     Index user);

/// Global ranking: score(o_i) = training degree k(o_i).
ScoreVector score_grm(const BipartiteGraph& graph, Index user);

/// Top-L candidates under the total order: score descending, ties broken
/// by ascending object index. Fewer than L candidates gives a shorter
/// list.
RecommendationList top_l(const ScoreVector& scores, std::size_t L);

/// Per-user list dump: "userIndex<TAB>rank<TAB>objectIndex<TAB>score"
/// with 17 significant digits; rank is 1-based.
void dump_list(std::ostream& out, const RecommendationList& list);
std::vector<RecommendationList> load_lists(std::istream& in);

}  // namespace csirec
