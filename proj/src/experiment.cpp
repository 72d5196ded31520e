#include "csirec/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "csirec/ingest.hpp"

namespace csirec {

namespace fs = std::filesystem;
using nlohmann::json;

static constexpr const char* kVersion = "csirec 0.1.0";

std::string to_string(Method method) {
  switch (method) {
    case Method::GRM: return "GRM";
    case Method::CF: return "CF";
    case Method::NBI: return "NBI";
    case Method::ICNBI: return "IC-NBI";
    case Method::CSI: return "CSI";
  }
  return "?";
}

Method method_from_string(const std::string& name) {
  if (name == "GRM") return Method::GRM;
  if (name == "CF") return Method::CF;
  if (name == "NBI") return Method::NBI;
  if (name == "IC-NBI" || name == "ICNBI") return Method::ICNBI;
  if (name == "CSI") return Method::CSI;
  throw DataError("unknown method '" + name + "'");
}

void ExperimentConfig::validate() const {
  if (dataset.empty()) throw DataError("config: dataset path is required");
  if (runs < 1) throw DataError("config: runs must be >= 1");
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw DataError("config: test_fraction must lie in (0, 1)");
  if (list_length < 1) throw DataError("config: list_length must be >= 1");
  if (auc_samples < 1) throw DataError("config: auc_samples must be >= 1");
  if (methods.empty()) throw DataError("config: at least one method is required");
  if (rating_min >= rating_max) throw DataError("config: bad rating scale");
  if (format != "links" && (threshold < rating_min || threshold > rating_max))
    throw DataError("config: threshold outside the rating scale");
}

std::vector<double> ExperimentConfig::effective_beta_grid() const {
  if (!beta_grid.empty()) return beta_grid;
  std::vector<double> grid;
  for (int i = 1; i <= 20; ++i) grid.push_back(0.1 * i);
  return grid;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError("config file '" + path + "': " + e.what());
  }
  ExperimentConfig c;
  c.dataset = j.value("dataset", c.dataset);
  c.format = j.value("format", c.format);
  if (j.contains("rating_scale")) {
    c.rating_min = j["rating_scale"].at(0).get<double>();
    c.rating_max = j["rating_scale"].at(1).get<double>();
  }
  c.threshold = j.value("threshold", c.threshold);
  if (j.contains("methods")) {
    c.methods.clear();
    for (const auto& name : j["methods"]) c.methods.push_back(method_from_string(name.get<std::string>()));
  }
  c.test_fraction = j.value("test_fraction", c.test_fraction);
  c.runs = j.value("runs", c.runs);
  c.base_seed = j.value("seed", c.base_seed);
  c.list_length = j.value("list_length", c.list_length);
  c.auc_samples = j.value("auc_samples", c.auc_samples);
  if (j.contains("beta_grid")) c.beta_grid = j["beta_grid"].get<std::vector<double>>();
  if (j.contains("pr_grid")) c.pr_grid = j["pr_grid"].get<std::vector<std::size_t>>();
  c.out_dir = j.value("out", c.out_dir);
  return c;
}

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

BipartiteGraph load_dataset(const ExperimentConfig& config, DatasetSummary* summary) {
  std::ifstream in(config.dataset);
  if (!in) throw DataError("cannot open dataset '" + config.dataset + "'");
  if (config.format == "links") {
    BipartiteGraph g = read_links(in);
    if (summary) {
      summary->objects = g.num_objects();
      summary->users = g.num_users();
      summary->links = g.num_links();
      summary->sparsity = g.num_links() == 0 ? 0.0
                                             : static_cast<double>(g.num_links()) /
                                                   (static_cast<double>(g.num_objects()) *
                                                    static_cast<double>(g.num_users()));
    }
    return g;
  }
  const FileFormat format = FileFormat::parse(config.format);
  auto records = parse_ratings(in, format);
  LikeGraph like = threshold_links(records, config.threshold);
  if (summary) *summary = like.summary;
  return like.graph;
}

/// Scores and top-L lists for every user under one method/matrix.
struct Scored {
  std::vector<ScoreVector> scores;  // indexed by user
  std::vector<RecommendationList> lists;
};

Scored score_all(const BipartiteGraph& training, std::size_t L,
                 const SimilarityMatrix* matrix, Method method) {
  const Index m = training.num_users();
  Scored out;
  out.scores.reserve(m);
  out.lists.reserve(m);
  for (Index u = 0; u < m; ++u) {
    ScoreVector sv;
    switch (method) {
      case Method::GRM:
        sv = score_grm(training, u);
        break;
      case Method::CF:
        sv = score_cf(*matrix, training, u);
        break;
      default:
        sv = score_propagation(*matrix, UserHistory::of(training, u), training.num_objects());
        break;
    }
    out.lists.push_back(top_l(sv, L));
    out.scores.push_back(std::move(sv));
  }
  return out;
}

struct AccuracyTriple {
  double ranking = 0.0;
  double precision = 0.0;
  double auc = 0.0;
};

AccuracyTriple accuracy_metrics(const Scored& scored, const SplitDataset& ds,
                                std::size_t L, std::size_t auc_samples,
                                std::uint64_t auc_seed) {
  AccuracyTriple a;
  a.ranking = ranking_score(scored.scores, ds.test_links, ds.training);
  a.precision = precision_at(scored.lists, ds.test_links, L, ds.num_users);
  a.auc = auc_sampled(scored.scores, ds.test_links, ds.training, auc_samples, auc_seed);
  return a;
}

void fill_secondary(MetricReport& r, const Scored& scored, const SplitDataset& ds,
                    std::size_t L) {
  r.intra_similarity = intra_similarity(scored.lists, ds.training);
  r.hamming = hamming(scored.lists, L).value_or(0.0);
  r.popularity = popularity(scored.lists, ds.training);
}

std::vector<std::size_t> default_pr_grid(std::size_t max_L) {
  std::vector<std::size_t> grid;
  for (std::size_t L = 1; L <= 100 && L <= max_L; ++L) grid.push_back(L);
  for (std::size_t L = 110; L <= 1000 && L <= max_L; L += 10) grid.push_back(L);
  for (std::size_t L = 1050; L <= max_L; L += 50) grid.push_back(L);
  if (!grid.empty() && grid.back() != max_L) grid.push_back(max_L);
  return grid;
}

std::uint64_t auc_seed_for(std::uint64_t run_seed, std::size_t method_index,
                           std::size_t beta_index) {
  // one documented stream per (run, method, beta) evaluation
  return run_seed * 1000003ULL + method_index * 1009ULL + beta_index * 13ULL;
}

MetricReport mean_and_std(const std::vector<MetricReport>& runs) {
  MetricReport agg;
  const double n = static_cast<double>(runs.size());
  for (const MetricReport& r : runs) {
    agg.ranking_score += r.ranking_score;
    agg.precision += r.precision;
    agg.auc += r.auc;
    agg.intra_similarity += r.intra_similarity;
    agg.hamming += r.hamming;
    agg.popularity += r.popularity;
  }
  agg.ranking_score /= n;
  agg.precision /= n;
  agg.auc /= n;
  agg.intra_similarity /= n;
  agg.hamming /= n;
  agg.popularity /= n;
  if (runs.size() > 1) {
    double sr = 0, sp = 0, sa = 0, si = 0, sh = 0, sk = 0;
    for (const MetricReport& r : runs) {
      sr += (r.ranking_score - agg.ranking_score) * (r.ranking_score - agg.ranking_score);
      sp += (r.precision - agg.precision) * (r.precision - agg.precision);
      sa += (r.auc - agg.auc) * (r.auc - agg.auc);
      si += (r.intra_similarity - agg.intra_similarity) * (r.intra_similarity - agg.intra_similarity);
      sh += (r.hamming - agg.hamming) * (r.hamming - agg.hamming);
      sk += (r.popularity - agg.popularity) * (r.popularity - agg.popularity);
    }
    const double d = n - 1.0;
    agg.ranking_score_std = std::sqrt(sr / d);
    agg.precision_std = std::sqrt(sp / d);
    agg.auc_std = std::sqrt(sa / d);
    agg.intra_similarity_std = std::sqrt(si / d);
    agg.hamming_std = std::sqrt(sh / d);
    agg.popularity_std = std::sqrt(sk / d);
  }
  return agg;
}

void write_manifest(const fs::path& dir, const ExperimentConfig& config,
                    const DatasetSummary& summary, const std::vector<std::uint64_t>& seeds) {
  json j;
  j["version"] = kVersion;
  j["dataset"] = config.dataset;
  j["format"] = config.format;
  j["rating_scale"] = {config.rating_min, config.rating_max};
  j["threshold"] = config.threshold;
  json methods = json::array();
  for (Method m : config.methods) methods.push_back(to_string(m));
  j["methods"] = methods;
  j["test_fraction"] = config.test_fraction;
  j["runs"] = config.runs;
  j["seed"] = config.base_seed;
  j["run_seeds"] = seeds;
  j["list_length"] = config.list_length;
  j["auc_samples"] = config.auc_samples;
  j["beta_grid"] = config.effective_beta_grid();
  j["beta_selection"] =
      "per run, per metric, on that run's test set; diversity and popularity "
      "reported at the ranking-score optimum";
  j["summary"] = {{"users", summary.users},
                  {"objects", summary.objects},
                  {"links", summary.links},
                  {"sparsity", summary.sparsity}};
  std::ofstream out(dir / "manifest.json");
  out << j.dump(2) << "\n";
}

void write_run_csv(const fs::path& dir, unsigned run, std::uint64_t seed,
                   const std::vector<Method>& methods,
                   const std::map<Method, std::vector<MetricReport>>& per_run,
                   const std::vector<BetaSelection>& betas) {
  char name[32];
  std::snprintf(name, sizeof(name), "run_%03u.csv", run);
  std::ofstream out(dir / name);
  out << "method,seed,ranking_score,precision,auc,intra_similarity,hamming,popularity,"
         "beta_r,beta_p,beta_auc\n";
  for (Method m : methods) {
    const MetricReport& r = per_run.at(m)[run - 1];
    out << to_string(m) << ',' << seed << ',' << fmt17(r.ranking_score) << ','
        << fmt17(r.precision) << ',' << fmt17(r.auc) << ',' << fmt17(r.intra_similarity)
        << ',' << fmt17(r.hamming) << ',' << fmt17(r.popularity);
    if (m == Method::ICNBI && run <= betas.size()) {
      const BetaSelection& b = betas[run - 1];
      out << ',' << fmt17(b.for_ranking_score) << ',' << fmt17(b.for_precision) << ','
          << fmt17(b.for_auc);
    } else {
      out << ",,,";
    }
    out << '\n';
  }
}

void write_tables(const fs::path& dir, const std::vector<Method>& methods,
                  const std::map<Method, MetricReport>& aggregate) {
  {
    std::ofstream csv(dir / "table.csv");
    csv << "method,ranking_score,ranking_score_std,precision,precision_std,auc,auc_std,"
           "intra_similarity,intra_similarity_std,hamming,hamming_std,popularity,"
           "popularity_std\n";
    for (Method m : methods) {
      const MetricReport& r = aggregate.at(m);
      csv << to_string(m) << ',' << fmt17(r.ranking_score) << ',' << fmt17(r.ranking_score_std)
          << ',' << fmt17(r.precision) << ',' << fmt17(r.precision_std) << ',' << fmt17(r.auc)
          << ',' << fmt17(r.auc_std) << ',' << fmt17(r.intra_similarity) << ','
          << fmt17(r.intra_similarity_std) << ',' << fmt17(r.hamming) << ','
          << fmt17(r.hamming_std) << ',' << fmt17(r.popularity) << ','
          << fmt17(r.popularity_std) << '\n';
    }
  }
  {
    std::ofstream txt(dir / "table.txt");
    txt << std::left << std::setw(8) << "method" << std::right << std::setw(18) << "<r>"
        << std::setw(18) << "P" << std::setw(18) << "AUC" << std::setw(18) << "I"
        << std::setw(18) << "H" << std::setw(18) << "<k>" << "\n";
    char cell[64];
    for (Method m : methods) {
      const MetricReport& r = aggregate.at(m);
      txt << std::left << std::setw(8) << to_string(m) << std::right;
      const double vals[6] = {r.ranking_score, r.precision,        r.auc,
                              r.intra_similarity, r.hamming, r.popularity};
      const double stds[6] = {r.ranking_score_std, r.precision_std,        r.auc_std,
                              r.intra_similarity_std, r.hamming_std, r.popularity_std};
      for (int i = 0; i < 6; ++i) {
        if (i == 5)
          std::snprintf(cell, sizeof(cell), "%.1f(%.4f)", vals[i], stds[i]);
        else
          std::snprintf(cell, sizeof(cell), "%.4f(%.4f)", vals[i], stds[i]);
        txt << std::setw(18) << cell;
      }
      txt << "\n";
    }
  }
}

void write_curves(const fs::path& dir, const std::vector<Method>& methods,
                  const std::map<Method, PRCurve>& curves) {
  std::ofstream out(dir / "pr_curve.csv");
  out << "method,L,precision,recall\n";
  for (Method m : methods) {
    for (const PRPoint& p : curves.at(m))
      out << to_string(m) << ',' << p.L << ',' << fmt17(p.precision) << ','
          << fmt17(p.recall) << '\n';
  }
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  DatasetSummary summary;
  const BipartiteGraph full = load_dataset(config, &summary);
  const std::vector<double> betas = config.effective_beta_grid();
  const std::size_t L = config.list_length;

  const auto has = [&](Method m) {
    return std::find(config.methods.begin(), config.methods.end(), m) != config.methods.end();
  };

  RunResult result;
  for (Method m : config.methods) result.per_run[m] = {};

  // PR-curve accumulation: average precision/recall across runs per L.
  std::map<Method, std::vector<PRPoint>> curve_acc;

  for (unsigned run = 1; run <= config.runs; ++run) {
    const std::uint64_t seed = config.base_seed + run;
    result.run_seeds.push_back(seed);
    SplitDataset ds = split(full, config.test_fraction, seed);

    std::vector<std::size_t> pr_grid = config.pr_grid;
    if (pr_grid.empty()) {
      // largest candidate pool bounds the useful list length
      std::size_t max_L = ds.training.num_objects();
      pr_grid = default_pr_grid(max_L);
    }

    SimilarityMatrix nbi;
    if (has(Method::NBI) || has(Method::CSI)) nbi = nbi_weights(ds.training);

    std::size_t method_index = 0;
    for (Method m : config.methods) {
      ++method_index;
      MetricReport report;
      PRCurve curve;
      if (m == Method::ICNBI) {
        // evaluate the accuracy metrics across the beta grid, keep the
        // best of each, then compute everything else at the
        // ranking-score optimum
        BetaSelection sel;
        AccuracyTriple best;
        std::size_t best_r_index = 0;
        for (std::size_t b = 0; b < betas.size(); ++b) {
          SimilarityMatrix w = icnbi_weights(ds.training, betas[b]);
          Scored scored = score_all(ds.training, L, &w, m);
          AccuracyTriple a = accuracy_metrics(scored, ds, L, config.auc_samples,
                                              auc_seed_for(seed, method_index, b + 1));
          if (b == 0 || a.ranking < best.ranking) {
            best.ranking = a.ranking;
            sel.for_ranking_score = betas[b];
            best_r_index = b;
          }
          if (b == 0 || a.precision > best.precision) {
            best.precision = a.precision;
            sel.for_precision = betas[b];
          }
          if (b == 0 || a.auc > best.auc) {
            best.auc = a.auc;
            sel.for_auc = betas[b];
          }
        }
        report.ranking_score = best.ranking;
        report.precision = best.precision;
        report.auc = best.auc;
        SimilarityMatrix w = icnbi_weights(ds.training, betas[best_r_index]);
        Scored scored = score_all(ds.training, L, &w, m);
        fill_secondary(report, scored, ds, L);
        curve = pr_curve(scored.scores, ds.test_links, ds.num_users, pr_grid);
        result.beta_per_run.push_back(sel);
      } else {
        SimilarityMatrix matrix;
        switch (m) {
          case Method::CF:
            matrix = user_cosine(ds.training);
            break;
          case Method::NBI:
            matrix = nbi;
            break;
          case Method::CSI: {
            SimilarityMatrix fsp = forward_proportions(nbi);
            SimilarityMatrix bsp = backward_proportions(nbi);
            matrix = csi_similarity(fsp, bsp);
            break;
          }
          default:
            break;
        }
        Scored scored = score_all(ds.training, L, &matrix, m);
        AccuracyTriple a = accuracy_metrics(scored, ds, L, config.auc_samples,
                                            auc_seed_for(seed, method_index, 0));
        report.ranking_score = a.ranking;
        report.precision = a.precision;
        report.auc = a.auc;
        fill_secondary(report, scored, ds, L);
        curve = pr_curve(scored.scores, ds.test_links, ds.num_users, pr_grid);
      }
      result.per_run[m].push_back(report);

      auto& acc = curve_acc[m];
      if (acc.empty()) {
        acc = curve;
      } else {
        if (acc.size() != curve.size())
          throw DataError("PR grids differ between runs; set pr_grid explicitly");
        for (std::size_t i = 0; i < acc.size(); ++i) {
          acc[i].precision += curve[i].precision;
          acc[i].recall += curve[i].recall;
        }
      }
    }
  }

  for (auto& [m, acc] : curve_acc) {
    for (PRPoint& p : acc) {
      p.precision /= static_cast<double>(config.runs);
      p.recall /= static_cast<double>(config.runs);
    }
    result.curves[m] = acc;
  }
  for (Method m : config.methods) result.aggregate[m] = mean_and_std(result.per_run[m]);

  // artifacts
  const fs::path dir(config.out_dir);
  const fs::path runs_dir = dir / "runs";
  fs::create_directories(runs_dir);
  write_manifest(dir, config, summary, result.run_seeds);
  for (unsigned run = 1; run <= config.runs; ++run)
    write_run_csv(runs_dir, run, result.run_seeds[run - 1], config.methods, result.per_run,
                  result.beta_per_run);
  write_tables(dir, config.methods, result.aggregate);
  write_curves(dir, config.methods, result.curves);
  return result;
}

}  // namespace csirec
