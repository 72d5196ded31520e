#include "csirec/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "csirec/rng.hpp"

namespace csirec {

namespace {

/// Mid-rank position of object o among the candidates of one score
/// vector: (count of strictly higher scores) + (tie block size + 1) / 2,
/// where the tie block includes o itself.
double mid_rank(const ScoreVector& sv, Index o) {
  const double s = sv.scores[o];
  std::size_t higher = 0, tied = 0;
  for (Index i = 0; i < static_cast<Index>(sv.scores.size()); ++i) {
    if (!sv.is_candidate[i]) continue;
    if (sv.scores[i] > s)
      ++higher;
    else if (sv.scores[i] == s)
      ++tied;
  }
  return static_cast<double>(higher) + (static_cast<double>(tied) + 1.0) / 2.0;
}

}  // namespace

double ranking_score(const std::vector<ScoreVector>& scores,
                     const std::vector<Link>& test_links,
                     const BipartiteGraph& training) {
  if (test_links.empty()) throw DataError("ranking score needs a non-empty test set");
  double sum = 0.0;
  for (const auto& [o, u] : test_links) {
    const ScoreVector& sv = scores[u];
    if (!sv.is_candidate[o])
      throw DataError("test link (" + std::to_string(o) + ", " + std::to_string(u) +
                      ") is not a candidate; training and test sets overlap");
    const std::size_t candidates = sv.num_candidates();
    sum += mid_rank(sv, o) / static_cast<double>(candidates);
  }
  (void)training;
  return sum / static_cast<double>(test_links.size());
}

double precision_at(const std::vector<RecommendationList>& lists,
                    const std::vector<Link>& test_links, std::size_t L, Index num_users) {
  if (L == 0) throw DataError("precision needs L >= 1");
  // test sets per user
  std::vector<std::unordered_set<Index>> test_of(num_users);
  for (const auto& [o, u] : test_links) test_of[u].insert(o);

  double sum = 0.0;
  for (const RecommendationList& list : lists) {
    const auto& mine = test_of[list.user];
    if (mine.empty()) continue;
    std::size_t hits = 0;
    const std::size_t top = std::min(L, list.items.size());
    for (std::size_t r = 0; r < top; ++r)
      if (mine.count(list.items[r].first)) ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(L);
  }
  return sum / static_cast<double>(num_users);
}

namespace {

/// Sorted training+test objects per user: everything outside is the
/// never-collected pool the AUC draws irrelevant objects from.
std::vector<std::vector<Index>> known_objects(const std::vector<Link>& test_links,
                                              const BipartiteGraph& training) {
  std::vector<std::vector<Index>> known(training.num_users());
  for (Index u = 0; u < training.num_users(); ++u) known[u] = training.objects_of(u);
  for (const auto& [o, u] : test_links) known[u].push_back(o);
  for (auto& v : known) std::sort(v.begin(), v.end());
  return known;
}

bool contains(const std::vector<Index>& sorted, Index x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

}  // namespace

double auc_sampled(const std::vector<ScoreVector>& scores,
                   const std::vector<Link>& test_links, const BipartiteGraph& training,
                   std::size_t n_samples, std::uint64_t seed) {
  if (n_samples == 0) throw DataError("AUC needs n_samples >= 1");
  if (test_links.empty()) throw DataError("AUC needs a non-empty test set");
  const Index n = training.num_objects();
  const auto known = known_objects(test_links, training);

  bool any_valid = false;
  for (const auto& [o, u] : test_links) {
    if (known[u].size() < n) {
      any_valid = true;
      break;
    }
  }
  if (!any_valid) throw DataError("AUC: no user with a never-collected object");

  Rng rng(seed);
  double credit = 0.0;
  for (std::size_t t = 0; t < n_samples; ++t) {
    while (true) {
      const auto& [rel, u] = test_links[rng.below(test_links.size())];
      if (known[u].size() >= n) continue;  // nothing to compare against, redraw
      Index irr;
      do {
        irr = static_cast<Index>(rng.below(n));
      } while (contains(known[u], irr));
      const double sr = scores[u].scores[rel];
      const double si = scores[u].scores[irr];
      if (sr > si)
        credit += 1.0;
      else if (sr == si)
        credit += 0.5;
      break;
    }
  }
  return credit / static_cast<double>(n_samples);
}

double auc_exact(const std::vector<ScoreVector>& scores,
                 const std::vector<Link>& test_links, const BipartiteGraph& training) {
  if (test_links.empty()) throw DataError("AUC needs a non-empty test set");
  const Index n = training.num_objects();
  const auto known = known_objects(test_links, training);

  std::size_t links = 0;
  double total = 0.0;
  for (const auto& [rel, u] : test_links) {
    const double sr = scores[u].scores[rel];
    std::size_t pool = 0;
    double credit = 0.0;
    for (Index irr = 0; irr < n; ++irr) {
      if (contains(known[u], irr)) continue;
      ++pool;
      const double si = scores[u].scores[irr];
      if (sr > si)
        credit += 1.0;
      else if (sr == si)
        credit += 0.5;
    }
    if (pool == 0) continue;  // link can never be drawn by the sampler
    ++links;
    total += credit / static_cast<double>(pool);
  }
  if (links == 0) throw DataError("AUC: no (relevant, irrelevant) pair to compare");
  return total / static_cast<double>(links);
}

double intra_similarity(const std::vector<RecommendationList>& lists,
                        const BipartiteGraph& training) {
  if (lists.empty()) throw DataError("intra-similarity needs at least one list");
  const Index n = training.num_objects();
  const Index m = training.num_users();

  // Bit rows over users per object make each pairwise co-selection count
  // a short popcount scan.
  const std::size_t words = (static_cast<std::size_t>(m) + 63) / 64;
  std::vector<std::uint64_t> bits(static_cast<std::size_t>(n) * words, 0);
  for (Index o = 0; o < n; ++o)
    for (Index u : training.users_of(o))
      bits[static_cast<std::size_t>(o) * words + u / 64] |= (std::uint64_t{1} << (u % 64));

  const auto common = [&](Index a, Index b) {
    const std::uint64_t* pa = bits.data() + static_cast<std::size_t>(a) * words;
    const std::uint64_t* pb = bits.data() + static_cast<std::size_t>(b) * words;
    std::size_t c = 0;
    for (std::size_t w = 0; w < words; ++w) c += static_cast<std::size_t>(std::popcount(pa[w] & pb[w]));
    return c;
  };

  double total = 0.0;
  for (const RecommendationList& list : lists) {
    const std::size_t L = list.items.size();
    if (L < 2) continue;  // I_l undefined without a pair; contributes 0
    double pair_sum = 0.0;
    for (std::size_t a = 0; a < L; ++a) {
      const Index oa = list.items[a].first;
      const double ka = training.object_degree(oa);
      if (ka == 0) continue;
      for (std::size_t b = a + 1; b < L; ++b) {
        const Index ob = list.items[b].first;
        const double kb = training.object_degree(ob);
        if (kb == 0) continue;
        const std::size_t c = common(oa, ob);
        if (c) pair_sum += static_cast<double>(c) / std::sqrt(ka * kb);
      }
    }
    // ordered-pair sum is twice the unordered one
    total += 2.0 * pair_sum / (static_cast<double>(L) * static_cast<double>(L - 1));
  }
  return total / static_cast<double>(lists.size());
}

std::optional<double> hamming(const std::vector<RecommendationList>& lists, std::size_t L) {
  std::unordered_map<Index, std::size_t> containing;  // object -> #lists with it
  std::size_t qualifying = 0;
  for (const RecommendationList& list : lists) {
    if (list.items.size() != L) continue;
    ++qualifying;
    for (const auto& [o, s] : list.items) ++containing[o];
  }
  if (qualifying < 2) return std::nullopt;

  double overlap_sum = 0.0;  // sum over unordered list pairs of Q_ij
  for (const auto& [o, c] : containing)
    overlap_sum += static_cast<double>(c) * static_cast<double>(c - 1) / 2.0;
  const double pairs =
      static_cast<double>(qualifying) * static_cast<double>(qualifying - 1) / 2.0;
  return 1.0 - overlap_sum / (pairs * static_cast<double>(L));
}

double popularity(const std::vector<RecommendationList>& lists,
                  const BipartiteGraph& training) {
  std::size_t count = 0;
  double degree_sum = 0.0;
  for (const RecommendationList& list : lists) {
    for (const auto& [o, s] : list.items) {
      degree_sum += static_cast<double>(training.object_degree(o));
      ++count;
    }
  }
  if (count == 0) throw DataError("popularity needs non-empty lists");
  return degree_sum / static_cast<double>(count);
}

namespace detail {

std::vector<std::size_t> hit_positions(const std::vector<ScoreVector>& scores,
                                       const std::vector<Link>& test_links) {
  // Per user: sort that user's candidates once, then read off the
  // positions of all their test objects.
  std::vector<std::vector<Index>> test_of(scores.size());
  for (const auto& [o, u] : test_links) test_of[u].push_back(o);

  std::vector<std::size_t> positions;
  positions.reserve(test_links.size());
  std::vector<std::pair<Index, double>> ranked;
  for (std::size_t u = 0; u < scores.size(); ++u) {
    if (test_of[u].empty()) continue;
    const ScoreVector& sv = scores[u];
    ranked.clear();
    for (Index o = 0; o < static_cast<Index>(sv.scores.size()); ++o)
      if (sv.is_candidate[o]) ranked.emplace_back(o, sv.scores[o]);
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    std::unordered_map<Index, std::size_t> pos;
    pos.reserve(ranked.size());
    for (std::size_t r = 0; r < ranked.size(); ++r) pos[ranked[r].first] = r + 1;
    for (Index o : test_of[u]) {
      auto it = pos.find(o);
      if (it == pos.end())
        throw DataError("test object " + std::to_string(o) + " is not a candidate of user " +
                        std::to_string(u));
      positions.push_back(it->second);
    }
  }
  return positions;
}

}  // namespace detail

PRCurve pr_curve(const std::vector<ScoreVector>& scores,
                 const std::vector<Link>& test_links, Index num_users,
                 const std::vector<std::size_t>& L_grid) {
  if (L_grid.empty()) throw DataError("PR curve needs a non-empty L grid");
  auto positions = detail::hit_positions(scores, test_links);
  std::sort(positions.begin(), positions.end());

  PRCurve curve;
  curve.reserve(L_grid.size());
  for (std::size_t L : L_grid) {
    const auto hits = static_cast<std::size_t>(
        std::upper_bound(positions.begin(), positions.end(), L) - positions.begin());
    PRPoint p;
    p.L = L;
    p.precision = static_cast<double>(hits) /
                  (static_cast<double>(num_users) * static_cast<double>(L));
    p.recall = static_cast<double>(hits) / static_cast<double>(test_links.size());
    curve.push_back(p);
  }
  return curve;
}

}  // namespace csirec
