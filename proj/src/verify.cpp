#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

#include "csirec/experiment.hpp"
#include "csirec/rng.hpp"

namespace csirec {

namespace {

constexpr double kTol = 1e-12;

// -- independent dense reference ------------------------------------------
// Straight triple-loop evaluation of the diffusion weights and their
// corrected form on a dense adjacency; shares no code with the sparse path.

std::vector<std::vector<double>> dense_nbi(const std::vector<std::vector<char>>& adj) {
  const std::size_t n = adj.size();
  const std::size_t m = n ? adj[0].size() : 0;
  std::vector<std::size_t> ko(n, 0), ku(m, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < m; ++l)
      if (adj[i][l]) {
        ++ko[i];
        ++ku[l];
      }
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (ko[j] == 0) continue;
      double sum = 0.0;
      for (std::size_t l = 0; l < m; ++l)
        if (adj[i][l] && adj[j][l]) sum += 1.0 / static_cast<double>(ku[l]);
      w[i][j] = sum / static_cast<double>(ko[j]);
    }
  return w;
}

std::vector<std::vector<double>> dense_csi(const std::vector<std::vector<char>>& adj) {
  const auto w = dense_nbi(adj);
  const std::size_t n = w.size();
  std::vector<double> colsum(n, 0.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) colsum[j] += w[i][j];
  std::vector<std::vector<double>> s(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (colsum[j] == 0.0 || colsum[i] == 0.0) continue;
      const double fsp = w[i][j] / colsum[j];
      const double bsp = w[j][i] / colsum[i];
      s[i][j] = std::sqrt(fsp * bsp);
    }
  return s;
}

// -- fixtures --------------------------------------------------------------

BipartiteGraph toy_fig1() {
  return BipartiteGraph::build(3, 6, {{0, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2},
                                      {1, 3}, {1, 4}, {1, 5}, {2, 5}});
}

BipartiteGraph random_graph(Rng& rng, Index max_objects, Index max_users,
                            int density_permille_lo, int density_permille_hi) {
  const Index n = 2 + static_cast<Index>(rng.below(max_objects - 1));
  const Index m = 2 + static_cast<Index>(rng.below(max_users - 1));
  const auto density = density_permille_lo +
                       static_cast<int>(rng.below(static_cast<std::uint64_t>(
                           density_permille_hi - density_permille_lo + 1)));
  std::vector<Link> links;
  for (Index o = 0; o < n; ++o)
    for (Index u = 0; u < m; ++u)
      if (static_cast<int>(rng.below(1000)) < density) links.emplace_back(o, u);
  if (links.empty()) links.emplace_back(0, 0);
  return BipartiteGraph::build(n, m, std::move(links));
}

std::vector<std::vector<char>> dense_adjacency(const BipartiteGraph& g) {
  std::vector<std::vector<char>> adj(g.num_objects(),
                                     std::vector<char>(g.num_users(), 0));
  for (Index o = 0; o < g.num_objects(); ++o)
    for (Index u : g.users_of(o)) adj[o][u] = 1;
  return adj;
}

struct Check {
  std::ostream& out;
  bool all_ok = true;

  void report(const std::string& name, bool ok, const std::string& detail = "") {
    out << (ok ? "PASS" : "FAIL") << "  " << name;
    if (!ok && !detail.empty()) out << "  (" << detail << ")";
    out << "\n";
    all_ok = all_ok && ok;
  }
};

// -- individual checks -----------------------------------------------------

void check_fig1(Check& c) {
  const BipartiteGraph g = toy_fig1();
  const SimilarityMatrix w = nbi_weights(g);
  const bool tie = std::abs(w.at(1, 0) - 1.0 / 6.0) < kTol &&
                   std::abs(w.at(2, 0) - 1.0 / 6.0) < kTol;
  c.report("toy graph: diffusion weights tie (w21 = w31 = 1/6)", tie);

  const SimilarityMatrix s =
      csi_similarity(forward_proportions(w), backward_proportions(w));
  const bool corrected = std::abs(s.at(1, 0) - std::sqrt(1.0 / 90.0)) < kTol &&
                         std::abs(s.at(2, 0) - 1.0 / 6.0) < kTol &&
                         s.at(2, 0) > s.at(1, 0);
  c.report("toy graph: corrected similarity breaks the tie", corrected);
}

void check_structure(Check& c, const std::vector<BipartiteGraph>& graphs) {
  bool norm_ok = true, balance_ok = true, sym_ok = true, range_ok = true,
       pattern_ok = true;
  for (const BipartiteGraph& g : graphs) {
    const SimilarityMatrix w = nbi_weights(g);
    for (Index j = 0; j < g.num_objects(); ++j) {
      if (g.object_degree(j) == 0) {
        pattern_ok = pattern_ok && w.column(j).empty();
        continue;
      }
      double sum = 0.0;
      for (const auto& [i, v] : w.column(j)) sum += v;
      norm_ok = norm_ok && std::abs(sum - 1.0) < kTol;
    }
    for (Index j = 0; j < g.num_objects(); ++j)
      for (const auto& [i, v] : w.column(j)) {
        const double lhs = static_cast<double>(g.object_degree(j)) * v;
        const double rhs = static_cast<double>(g.object_degree(i)) * w.at(j, i);
        balance_ok = balance_ok && std::abs(lhs - rhs) < kTol;
      }
    const SimilarityMatrix s =
        csi_similarity(forward_proportions(w), backward_proportions(w));
    for (Index j = 0; j < g.num_objects(); ++j)
      for (const auto& [i, v] : s.column(j)) {
        sym_ok = sym_ok && s.at(j, i) == v;
        range_ok = range_ok && v >= 0.0 && v <= 1.0 + kTol;
        // nonzero iff the objects share a user
        bool share = false;
        for (Index u : g.users_of(i))
          if (g.has_link(j, u)) {
            share = true;
            break;
          }
        pattern_ok = pattern_ok && share;
      }
    const SimilarityMatrix uc = user_cosine(g);
    for (Index j = 0; j < g.num_users(); ++j)
      for (const auto& [i, v] : uc.column(j))
        range_ok = range_ok && v >= 0.0 && v <= 1.0 + kTol;
  }
  c.report("column normalization (live columns sum to 1)", norm_ok);
  c.report("degree balance identity k(o_j) w_ij = k(o_i) w_ji", balance_ok);
  c.report("corrected similarity is exactly symmetric", sym_ok);
  c.report("similarity values lie in [0, 1]", range_ok);
  c.report("sparsity pattern matches shared users", pattern_ok);
}

void check_dense_equivalence(Check& c) {
  Rng rng(20240901);
  bool pipeline_ok = true, closed_ok = true;
  for (int t = 0; t < 100; ++t) {
    const BipartiteGraph g = random_graph(rng, 30, 30, 100, 500);
    const auto adj = dense_adjacency(g);
    const auto ref = dense_csi(adj);
    const SimilarityMatrix w = nbi_weights(g);
    const SimilarityMatrix s =
        csi_similarity(forward_proportions(w), backward_proportions(w));
    for (Index i = 0; i < g.num_objects(); ++i)
      for (Index j = 0; j < g.num_objects(); ++j) {
        pipeline_ok = pipeline_ok && std::abs(s.at(i, j) - ref[i][j]) < kTol;
        // closed form: (sum_l a_il a_jl / k(u_l)) / sqrt(k_i k_j)
        if (g.object_degree(i) == 0 || g.object_degree(j) == 0) continue;
        double acc = 0.0;
        for (Index u : g.users_of(i))
          if (g.has_link(j, u)) acc += 1.0 / static_cast<double>(g.user_degree(u));
        const double closed = acc / std::sqrt(static_cast<double>(g.object_degree(i)) *
                                              static_cast<double>(g.object_degree(j)));
        closed_ok = closed_ok && std::abs(s.at(i, j) - closed) < kTol;
      }
  }
  c.report("sparse pipeline equals dense reference (100 random graphs)", pipeline_ok);
  c.report("corrected similarity equals its closed form", closed_ok);
}

void check_split(Check& c) {
  Rng rng(7);
  bool disjoint_ok = true, union_ok = true, repeat_ok = true, degree_ok = true;
  for (int t = 0; t < 20; ++t) {
    const BipartiteGraph g = random_graph(rng, 25, 25, 150, 400);
    if (g.num_links() < 10) continue;
    const SplitDataset a = split(g, 0.1, 42 + static_cast<std::uint64_t>(t));
    const SplitDataset b = split(g, 0.1, 42 + static_cast<std::uint64_t>(t));
    repeat_ok = repeat_ok && a.test_links == b.test_links &&
                a.training.links() == b.training.links();
    std::vector<Link> merged = a.training.links();
    merged.insert(merged.end(), a.test_links.begin(), a.test_links.end());
    std::sort(merged.begin(), merged.end());
    disjoint_ok = disjoint_ok &&
                  std::adjacent_find(merged.begin(), merged.end()) == merged.end();
    union_ok = union_ok && merged == g.links();
    for (Index o = 0; o < g.num_objects(); ++o) {
      std::size_t recount = a.training.users_of(o).size();
      degree_ok = degree_ok && recount == a.training.object_degree(o);
    }
  }
  c.report("split: training and test links are disjoint", disjoint_ok);
  c.report("split: union of parts recovers the graph", union_ok);
  c.report("split: identical seed reproduces the split", repeat_ok);
  c.report("degrees match a recount from the link lists", degree_ok);
}

void check_cf_range(Check& c) {
  Rng rng(99);
  bool ok = true;
  for (int t = 0; t < 30; ++t) {
    const BipartiteGraph g = random_graph(rng, 20, 20, 150, 500);
    const SimilarityMatrix uc = user_cosine(g);
    for (Index u = 0; u < g.num_users(); ++u) {
      const ScoreVector sv = score_cf(uc, g, u);
      for (Index o = 0; o < g.num_objects(); ++o)
        ok = ok && sv.scores[o] >= 0.0 && sv.scores[o] <= 1.0 + kTol;
    }
  }
  c.report("collaborative-filtering scores lie in [0, 1]", ok);
}

void check_metric_oracles(Check& c) {
  // Hamming aggregation identity against the O(m^2) pairwise count.
  Rng rng(555);
  bool hamming_ok = true;
  for (int t = 0; t < 25; ++t) {
    const std::size_t m = 2 + rng.below(49);
    const std::size_t L = 1 + rng.below(8);
    const Index n = static_cast<Index>(L + rng.below(20));
    std::vector<RecommendationList> lists;
    for (std::size_t u = 0; u < m; ++u) {
      std::vector<Index> objs(n);
      for (Index o = 0; o < n; ++o) objs[o] = o;
      rng.partial_shuffle(objs, L);
      RecommendationList list;
      list.user = static_cast<Index>(u);
      for (std::size_t r = 0; r < L; ++r) list.items.emplace_back(objs[r], 1.0);
      lists.push_back(std::move(list));
    }
    double brute = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        std::size_t q = 0;
        for (const auto& a : lists[i].items)
          for (const auto& b : lists[j].items)
            if (a.first == b.first) ++q;
        brute += 1.0 - static_cast<double>(q) / static_cast<double>(L);
        ++pairs;
      }
    brute /= static_cast<double>(pairs);
    const auto fast = hamming(lists, L);
    hamming_ok = hamming_ok && fast && std::abs(*fast - brute) < kTol;
  }
  c.report("Hamming aggregation identity equals pairwise brute force", hamming_ok);

  // Mid-rank: with every candidate tied the ranking score must be the
  // mean over all permutations, (c + 1) / (2c).
  {
    BipartiteGraph g = BipartiteGraph::build(5, 1, {{0, 0}});
    std::vector<ScoreVector> scores(1);
    scores[0].user = 0;
    scores[0].scores.assign(5, 0.0);
    scores[0].is_candidate.assign(5, 1);
    scores[0].is_candidate[0] = 0;
    const std::vector<Link> test = {{3, 0}};
    const double r = ranking_score(scores, test, g);
    c.report("mid-rank ranking score on a full tie block",
             std::abs(r - 0.625) < kTol);
  }

  // Sampled AUC against exact enumeration.
  {
    Rng rng2(31337);
    int inside = 0, total = 0;
    for (int t = 0; t < 40; ++t) {
      const BipartiteGraph g = random_graph(rng2, 15, 15, 200, 500);
      if (g.num_links() < 10) continue;
      const SplitDataset ds = split(g, 0.2, 11 + static_cast<std::uint64_t>(t));
      const SimilarityMatrix w = nbi_weights(ds.training);
      std::vector<ScoreVector> scores;
      for (Index u = 0; u < g.num_users(); ++u)
        scores.push_back(score_propagation(w, UserHistory::of(ds.training, u),
                                           g.num_objects()));
      double exact;
      try {
        exact = auc_exact(scores, ds.test_links, ds.training);
      } catch (const DataError&) {
        continue;
      }
      const std::size_t samples = 20000;
      const double approx = auc_sampled(scores, ds.test_links, ds.training, samples,
                                        1000 + static_cast<std::uint64_t>(t));
      const double sigma =
          std::sqrt(std::max(exact * (1.0 - exact), 1e-9) / static_cast<double>(samples));
      ++total;
      if (std::abs(approx - exact) <= 3.0 * sigma) ++inside;
    }
    c.report("sampled AUC stays within the 3-sigma band of exact AUC",
             total > 0 && inside * 100 >= total * 95);
  }
}

void check_grm_popularity(Check& c) {
  Rng rng(2718);
  bool ok = true;
  for (int t = 0; t < 20; ++t) {
    const BipartiteGraph g = random_graph(rng, 20, 20, 200, 500);
    const SimilarityMatrix w = nbi_weights(g);
    const SimilarityMatrix uc = user_cosine(g);
    std::vector<RecommendationList> grm, others;
    for (Index u = 0; u < g.num_users(); ++u) {
      grm.push_back(top_l(score_grm(g, u), 3));
      others.push_back(top_l(score_propagation(w, UserHistory::of(g, u), g.num_objects()), 3));
    }
    ok = ok && popularity(grm, g) >= popularity(others, g) - kTol;
  }
  c.report("degree ranking maximizes mean recommended degree", ok);
}

}  // namespace

bool verify(std::ostream& out) {
  Check c{out};
  check_fig1(c);

  std::vector<BipartiteGraph> graphs;
  graphs.push_back(toy_fig1());
  graphs.push_back(BipartiteGraph::build(2, 2, {{0, 0}, {1, 0}, {1, 1}}));
  Rng rng(4242);
  for (int t = 0; t < 30; ++t) graphs.push_back(random_graph(rng, 30, 30, 100, 500));
  check_structure(c, graphs);

  check_dense_equivalence(c);
  check_split(c);
  check_cf_range(c);
  check_metric_oracles(c);
  check_grm_popularity(c);

  out << (c.all_ok ? "all checks passed" : "CHECKS FAILED") << "\n";
  return c.all_ok;
}

}  // namespace csirec
