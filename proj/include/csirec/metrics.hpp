#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "csirec/bipartite_graph.hpp"
#include "csirec/recommend.hpp"

namespace csirec {

/// One method's evaluation on one split (or the run-averaged values with
/// standard deviations filled in).
struct MetricReport {
  double ranking_score = 0.0;   // <r>, lower is better
  double precision = 0.0;       // P at the configured list length
  double auc = 0.0;
  double intra_similarity = 0.0;  // I, lower is better
  double hamming = 0.0;           // H, higher is better
  double popularity = 0.0;        // <k>, lower is better

  double ranking_score_std = 0.0;
  double precision_std = 0.0;
  double auc_std = 0.0;
  double intra_similarity_std = 0.0;
  double hamming_std = 0.0;
  double popularity_std = 0.0;
};

struct PRPoint {
  std::size_t L = 0;
  double precision = 0.0;
  double recall = 0.0;
};
using PRCurve = std::vector<PRPoint>;

/// Mean relative position of held-out links in their user's candidate
/// ranking. Tied scores get the mid-rank of the tie block, so the result
/// is invariant under any permutation of tied candidates.
///
/// scores is indexed by user and must cover every user with a test link;
/// a test link whose object is not a candidate raises DataError.
double ranking_score(const std::vector<ScoreVector>& scores,
                     const std::vector<Link>& test_links,
                     const BipartiteGraph& training);

/// Precision at L averaged over all m users; users without test links
/// contribute 0.
double precision_at(const std::vector<RecommendationList>& lists,
                    const std::vector<Link>& test_links, std::size_t L, Index num_users);

/// Sampled AUC: each comparison draws a uniform test link and a uniform
/// never-collected object of that link's user; ties get 0.5 credit.
/// Draws landing on a user with no never-collected objects are redrawn;
/// DataError if no valid comparison exists at all.
double auc_sampled(const std::vector<ScoreVector>& scores,
                   const std::vector<Link>& test_links, const BipartiteGraph& training,
                   std::size_t n_samples, std::uint64_t seed);

/// Exact counterpart of the sampler: the mean over test links of that
/// link's average credit against every never-collected object of its
/// user. Links whose user has no never-collected object are excluded,
/// matching the sampler's redraw rule.
double auc_exact(const std::vector<ScoreVector>& scores,
                 const std::vector<Link>& test_links, const BipartiteGraph& training);

/// Mean over users of the average pairwise object similarity
/// (co-selection cosine on training links) inside each list.
double intra_similarity(const std::vector<RecommendationList>& lists,
                        const BipartiteGraph& training);

/// Mean pairwise Hamming distance 1 - Q/L between full-length lists,
/// computed through the aggregate overlap identity
/// sum_{i<j} Q_ij = sum_o C(c_o, 2). Lists shorter than L are excluded;
/// absent when fewer than two lists qualify.
std::optional<double> hamming(const std::vector<RecommendationList>& lists, std::size_t L);

/// Mean training degree of all recommended objects.
double popularity(const std::vector<RecommendationList>& lists,
                  const BipartiteGraph& training);

/// Precision and recall at each list length in L_grid (ascending).
PRCurve pr_curve(const std::vector<ScoreVector>& scores,
                 const std::vector<Link>& test_links, Index num_users,
                 const std::vector<std::size_t>& L_grid);

namespace detail {
/// Positions (1-based, tie rule applied) of each test link's object in
/// its user's candidate ranking. The PR curve at every L follows from
/// this multiset. scores are indexed by user.
std::vector<std::size_t> hit_positions(const std::vector<ScoreVector>& scores,
                                       const std::vector<Link>& test_links);
}  // namespace detail

}  // namespace csirec
