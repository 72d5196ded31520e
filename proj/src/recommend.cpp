#include "csirec/recommend.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace csirec {

std::size_t ScoreVector::num_candidates() const {
  std::size_t n = 0;
  for (char c : is_candidate) n += static_cast<std::size_t>(c);
  return n;
}

namespace {

ScoreVector make_empty(Index user, Index num_objects) {
  ScoreVector sv;
  sv.user = user;
  sv.scores.assign(num_objects, 0.0);
  sv.is_candidate.assign(num_objects, 1);
  return sv;
}

void exclude_collected(ScoreVector& sv, const std::vector<Index>& collected) {
  for (Index o : collected) {
    sv.is_candidate[o] = 0;
    sv.scores[o] = 0.0;
  }
}

}  // namespace

ScoreVector score_propagation(const SimilarityMatrix& matrix, const UserHistory& history,
                              Index num_objects) {
  ScoreVector sv = make_empty(history.user, num_objects);
  for (Index j : history.collected)
    for (const auto& [i, w] : matrix.column(j)) sv.scores[i] += w;
  exclude_collected(sv, history.collected);
  return sv;
}

ScoreVector score_cf(const SimilarityMatrix& user_sim, const BipartiteGraph& graph,
                     Index user) {
  ScoreVector sv = make_empty(user, graph.num_objects());
  double denom = 0.0;
  for (const auto& [l, s] : user_sim.column(user)) {
    if (l == user) continue;
    denom += s;
    for (Index o : graph.objects_of(l)) sv.scores[o] += s;
  }
  if (denom > 0.0) {
    for (double& v : sv.scores) v /= denom;
  } else {
    std::fill(sv.scores.begin(), sv.scores.end(), 0.0);
  }
  exclude_collected(sv, graph.objects_of(user));
  return sv;
}

ScoreVector score_grm(const BipartiteGraph& graph, Index user) {
  ScoreVector sv = make_empty(user, graph.num_objects());
  for (Index o = 0; o < graph.num_objects(); ++o)
    sv.scores[o] = static_cast<double>(graph.object_degree(o));
  exclude_collected(sv, graph.objects_of(user));
  return sv;
}

RecommendationList top_l(const ScoreVector& scores, std::size_t L) {
  RecommendationList list;
  list.user = scores.user;
  list.items.reserve(scores.scores.size());
  for (Index o = 0; o < static_cast<Index>(scores.scores.size()); ++o)
    if (scores.is_candidate[o]) list.items.emplace_back(o, scores.scores[o]);

  const auto better = [](const std::pair<Index, double>& a, const std::pair<Index, double>& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  };
  const std::size_t keep = std::min(L, list.items.size());
  std::partial_sort(list.items.begin(),
                    list.items.begin() + static_cast<std::ptrdiff_t>(keep),
                    list.items.end(), better);
  list.items.resize(keep);
  return list;
}

void dump_list(std::ostream& out, const RecommendationList& list) {
  char buf[64];
  for (std::size_t r = 0; r < list.items.size(); ++r) {
    std::snprintf(buf, sizeof(buf), "%.17g", list.items[r].second);
    out << list.user << '\t' << (r + 1) << '\t' << list.items[r].first << '\t' << buf << '\n';
  }
}

std::vector<RecommendationList> load_lists(std::istream& in) {
  std::map<Index, RecommendationList> by_user;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    Index user = 0, object = 0;
    std::size_t rank = 0;
    double score = 0.0;
    if (!(ls >> user >> rank >> object >> score))
      throw DataError("list file line " + std::to_string(line_no) + ": bad record");
    auto& list = by_user[user];
    list.user = user;
    if (rank != list.items.size() + 1)
      throw DataError("list file line " + std::to_string(line_no) + ": rank out of order");
    list.items.emplace_back(object, score);
  }
  std::vector<RecommendationList> out;
  out.reserve(by_user.size());
  for (auto& [user, list] : by_user) out.push_back(std::move(list));
  return out;
}

}  // namespace csirec
