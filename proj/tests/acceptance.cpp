// Acceptance harness: one verdict line per criterion, exit 0 only if all
// pass. argv[1] must point at a MovieLens-formatted rating file
// (tab-separated user/object/rating/timestamp).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "csirec/experiment.hpp"
#include "csirec/ingest.hpp"
#include "csirec/metrics.hpp"
#include "csirec/split.hpp"
#include "helpers.hpp"

using namespace csirec;
namespace fs = std::filesystem;

namespace {

constexpr double kTol = 1e-12;

int g_failed = 0;

void verdict(int criterion, const std::string& label, bool pass,
             const std::string& detail = "") {
  std::printf("%s  criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion,
              label.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failed;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------- 1
void criterion_1() {
  BipartiteGraph g = testutil::fig1_graph();
  SimilarityMatrix w = nbi_weights(g);
  SimilarityMatrix s = csi_similarity(forward_proportions(w), backward_proportions(w));
  bool ok = std::abs(w.at(1, 0) - 1.0 / 6.0) < kTol &&
            std::abs(w.at(2, 0) - 1.0 / 6.0) < kTol &&
            std::abs(s.at(1, 0) - std::sqrt(1.0 / 90.0)) < kTol &&
            std::abs(s.at(2, 0) - 1.0 / 6.0) < kTol && s.at(2, 0) > s.at(1, 0);
  RecommendationList top =
      top_l(score_propagation(s, UserHistory::of(g, 0), g.num_objects()), 1);
  ok = ok && top.items.size() == 1 && top.items[0].first == 2;
  verdict(1, "toy-graph tie and its corrected resolution", ok);
}

// ---------------------------------------------------------------- 2
void criterion_2() {
  Rng rng(41);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    BipartiteGraph g = testutil::random_graph(rng, 30, 30, 100, 500);
    auto ref = testutil::dense_reference(g);
    SimilarityMatrix w = nbi_weights(g);
    SimilarityMatrix s = csi_similarity(forward_proportions(w), backward_proportions(w));
    for (Index i = 0; i < g.num_objects(); ++i)
      for (Index j = 0; j < g.num_objects(); ++j) {
        worst = std::max(worst, std::abs(w.at(i, j) - ref.w[i][j]));
        worst = std::max(worst, std::abs(s.at(i, j) - ref.csi[i][j]));
        if (g.object_degree(i) == 0 || g.object_degree(j) == 0) continue;
        double acc = 0.0;
        for (Index u : g.users_of(i))
          if (g.has_link(j, u)) acc += 1.0 / static_cast<double>(g.user_degree(u));
        const double closed =
            acc / std::sqrt(static_cast<double>(g.object_degree(i)) *
                            static_cast<double>(g.object_degree(j)));
        worst = std::max(worst, std::abs(s.at(i, j) - closed));
      }
  }
  char detail[64];
  std::snprintf(detail, sizeof(detail), "max deviation %.3g over 100 graphs", worst);
  verdict(2, "dense and closed-form oracle equivalence", worst < kTol, detail);
}

// ---------------------------------------------------------------- 3
bool matrix_invariants(const BipartiteGraph& g) {
  SimilarityMatrix w = nbi_weights(g);
  for (Index j = 0; j < g.num_objects(); ++j) {
    if (g.object_degree(j) == 0) {
      if (!w.column(j).empty()) return false;
      continue;
    }
    double sum = 0.0;
    for (const auto& [i, v] : w.column(j)) {
      sum += v;
      if (std::abs(static_cast<double>(g.object_degree(j)) * v -
                   static_cast<double>(g.object_degree(i)) * w.at(j, i)) >= kTol)
        return false;
    }
    if (std::abs(sum - 1.0) >= kTol) return false;
  }
  SimilarityMatrix s = csi_similarity(forward_proportions(w), backward_proportions(w));
  for (Index j = 0; j < g.num_objects(); ++j)
    for (const auto& [i, v] : s.column(j))
      if (std::abs(v - s.at(j, i)) >= kTol) return false;
  return true;
}

void criterion_3(const BipartiteGraph& movielens) {
  bool ok = true;
  Rng rng(42);
  for (int t = 0; t < 40 && ok; ++t)
    ok = matrix_invariants(testutil::random_graph(rng, 30, 30, 100, 500));
  // two training splits of the real dataset, same seeds the benchmark uses
  for (std::uint64_t seed : {2ULL, 3ULL})
    if (ok) ok = matrix_invariants(split(movielens, 0.1, seed).training);
  verdict(3, "normalization, degree balance and symmetry", ok);
}

// ---------------------------------------------------------------- 4
void criterion_4() {
  // (a) sampled AUC inside the 3-sigma binomial band of exact enumeration
  Rng rng(43);
  int inside = 0, total = 0;
  std::uint64_t seed = 0;
  while (total < 100 && seed < 2000) {
    ++seed;
    Rng gr(1000 + seed);
    BipartiteGraph g = testutil::random_graph(gr, 8, 8, 200, 500);
    if (g.num_links() < 5) continue;
    SplitDataset ds;
    try {
      ds = split(g, 0.2, seed);
    } catch (const DataError&) {
      continue;
    }
    std::size_t pairs = 0;
    for (const auto& [o, u] : ds.test_links) {
      std::size_t known = ds.training.objects_of(u).size();
      for (const auto& [o2, u2] : ds.test_links)
        if (u2 == u) ++known;
      pairs += g.num_objects() - known;
    }
    if (pairs == 0 || pairs > 200) continue;
    SimilarityMatrix w = nbi_weights(ds.training);
    std::vector<ScoreVector> scores;
    for (Index u = 0; u < g.num_users(); ++u)
      scores.push_back(score_propagation(w, UserHistory::of(ds.training, u), g.num_objects()));
    const double exact = auc_exact(scores, ds.test_links, ds.training);
    const std::size_t n = 20000;
    const double approx = auc_sampled(scores, ds.test_links, ds.training, n, seed);
    const double sigma = std::sqrt(std::max(exact * (1.0 - exact), 1e-9) / double(n));
    ++total;
    if (std::abs(approx - exact) <= 3.0 * sigma) ++inside;
  }
  const bool auc_ok = total == 100 && inside >= 99;

  // (b) Hamming aggregation identity vs O(m^2) brute force, m <= 50
  bool hamming_ok = true;
  for (int t = 0; t < 20 && hamming_ok; ++t) {
    const std::size_t m = 2 + rng.below(49);
    const std::size_t L = 1 + rng.below(6);
    const Index n = static_cast<Index>(L + rng.below(15));
    std::vector<RecommendationList> lists;
    for (std::size_t u = 0; u < m; ++u) {
      std::vector<Index> objs(n);
      for (Index o = 0; o < n; ++o) objs[o] = o;
      rng.partial_shuffle(objs, L);
      objs.resize(L);
      RecommendationList list;
      list.user = static_cast<Index>(u);
      for (Index o : objs) list.items.emplace_back(o, 1.0);
      lists.push_back(std::move(list));
    }
    double brute = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j, ++pairs) {
        std::size_t q = 0;
        for (const auto& a : lists[i].items)
          for (const auto& b : lists[j].items)
            if (a.first == b.first) ++q;
        brute += 1.0 - static_cast<double>(q) / static_cast<double>(L);
      }
    brute /= static_cast<double>(pairs);
    hamming_ok = std::abs(hamming(lists, L).value() - brute) < kTol;
  }

  // (c) mid-rank invariance under tie permutations
  BipartiteGraph g6 = BipartiteGraph::build(6, 1, {});
  ScoreVector sv;
  sv.user = 0;
  sv.scores = {0.9, 0.5, 0.5, 0.5, 0.2, 0.1};
  sv.is_candidate.assign(6, 1);
  const double a = ranking_score({sv}, {{1, 0}}, g6);
  const double b = ranking_score({sv}, {{2, 0}}, g6);
  const double c = ranking_score({sv}, {{3, 0}}, g6);
  const bool tie_ok = std::abs(a - b) < kTol && std::abs(b - c) < kTol &&
                      std::abs(a - 0.5) < kTol;

  char detail[96];
  std::snprintf(detail, sizeof(detail), "AUC band %d/%d, hamming %s, mid-rank %s", inside,
                total, hamming_ok ? "ok" : "bad", tie_ok ? "ok" : "bad");
  verdict(4, "metric oracles", auc_ok && hamming_ok && tie_ok, detail);
}

// ------------------------------------------------------------ 5/6/7
ExperimentConfig benchmark_config(const std::string& dataset, const fs::path& out) {
  ExperimentConfig c;
  c.dataset = dataset;
  c.threshold = 3.0;
  c.test_fraction = 0.1;
  c.runs = 10;
  c.base_seed = 1;
  c.list_length = 50;
  c.auc_samples = 1000000;
  // the reweighting exponent helps on this dataset only when it damps
  // popular objects, so the sweep covers the negative range
  c.beta_grid = {-1.2, -1.0, -0.8, -0.6, -0.4, -0.2};
  c.pr_grid = {10, 20, 50, 100};
  c.out_dir = out.string();
  return c;
}

bool strictly_increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) return false;
  return true;
}

void criteria_5_6_7(const std::string& dataset) {
  const fs::path base = fs::temp_directory_path() / "csirec_acceptance";
  fs::remove_all(base);
  ExperimentConfig config = benchmark_config(dataset, base / "a");

  const auto t0 = std::chrono::steady_clock::now();
  RunResult result = run_experiment(config);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const std::vector<Method> worst_to_best = {Method::GRM, Method::CF, Method::NBI,
                                             Method::ICNBI, Method::CSI};
  std::vector<double> r, p, auc;
  for (Method m : worst_to_best) {
    const MetricReport& agg = result.aggregate.at(m);
    r.push_back(-agg.ranking_score);  // lower is better
    p.push_back(agg.precision);
    auc.push_back(agg.auc);
  }
  const MetricReport& csi = result.aggregate.at(Method::CSI);
  bool diversity_ok = true;
  for (Method m : {Method::GRM, Method::CF, Method::NBI, Method::ICNBI}) {
    const MetricReport& other = result.aggregate.at(m);
    diversity_ok = diversity_ok && csi.hamming > other.hamming &&
                   csi.popularity < other.popularity;
  }
  const double nbi_r = result.aggregate.at(Method::NBI).ranking_score;
  const double csi_r = csi.ranking_score;
  const bool soft_ok =
      nbi_r >= 0.09 && nbi_r <= 0.13 && csi_r >= 0.08 && csi_r <= 0.12;
  const bool time_ok = elapsed < 600.0;

  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "<r> NBI %.4f CSI %.4f, orderings r/P/AUC %s/%s/%s, H+<k> %s, %.0fs",
                nbi_r, csi_r, strictly_increasing(r) ? "ok" : "bad",
                strictly_increasing(p) ? "ok" : "bad",
                strictly_increasing(auc) ? "ok" : "bad", diversity_ok ? "ok" : "bad",
                elapsed);
  verdict(5, "benchmark method ordering",
          strictly_increasing(r) && strictly_increasing(p) && strictly_increasing(auc) &&
              diversity_ok && soft_ok && time_ok,
          detail);

  // 6: the corrected method's PR points weakly dominate every baseline at
  // each configured list length
  bool dominant = true;
  const PRCurve& csi_curve = result.curves.at(Method::CSI);
  for (Method m : {Method::GRM, Method::CF, Method::NBI, Method::ICNBI}) {
    const PRCurve& other = result.curves.at(m);
    for (std::size_t i = 0; i < csi_curve.size(); ++i)
      dominant = dominant && csi_curve[i].precision >= other[i].precision - kTol &&
                 csi_curve[i].recall >= other[i].recall - kTol;
  }
  verdict(6, "precision-recall curve dominance", dominant);

  // 7: the identical config reproduces every artifact byte for byte
  config.out_dir = (base / "b").string();
  run_experiment(config);
  std::vector<std::string> files = {"manifest.json", "table.csv", "table.txt",
                                    "pr_curve.csv"};
  for (unsigned run = 1; run <= config.runs; ++run) {
    char name[48];
    std::snprintf(name, sizeof(name), "runs/run_%03u.csv", run);
    files.push_back(name);
  }
  bool identical = true;
  for (const std::string& f : files)
    identical = identical && slurp(base / "a" / f) == slurp(base / "b" / f) &&
                !slurp(base / "a" / f).empty();
  verdict(7, "byte-identical rerun", identical);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <rating-file>\n");
    return 2;
  }
  try {
    criterion_1();
    criterion_2();

    std::ifstream in(argv[1]);
    if (!in) {
      std::fprintf(stderr, "cannot open dataset '%s'\n", argv[1]);
      return 2;
    }
    auto records = parse_ratings(in, FileFormat::parse("tab:user,object,rating"));
    BipartiteGraph movielens = threshold_links(records, 3.0).graph;

    criterion_3(movielens);
    criterion_4();
    criteria_5_6_7(argv[1]);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance aborted: %s\n", e.what());
    return 2;
  }
  return g_failed == 0 ? 0 : 1;
}
