#include "csirec/bipartite_graph.hpp"

#include <algorithm>

namespace csirec {

BipartiteGraph BipartiteGraph::build(Index num_objects, Index num_users,
                                     std::vector<Link> links) {
  for (const Link& l : links) {
    if (l.first >= num_objects || l.second >= num_users) {
      throw DataError("link (" + std::to_string(l.first) + ", " +
                      std::to_string(l.second) + ") out of range for " +
                      std::to_string(num_objects) + " objects x " +
                      std::to_string(num_users) + " users");
    }
  }
  std::sort(links.begin(), links.end());
  links.erase(std::unique(links.begin(), links.end()), links.end());

  BipartiteGraph g;
  g.num_objects_ = num_objects;
  g.num_users_ = num_users;
  g.num_links_ = links.size();
  g.object_users_.resize(num_objects);
  g.user_objects_.resize(num_users);
  for (const Link& l : links) {
    g.object_users_[l.first].push_back(l.second);
    g.user_objects_[l.second].push_back(l.first);
  }
  // object_users_ rows come out sorted from the link sort; user rows don't.
  for (auto& row : g.user_objects_) std::sort(row.begin(), row.end());
  return g;
}

bool BipartiteGraph::has_link(Index o, Index u) const {
  const auto& row = object_users_[o];
  return std::binary_search(row.begin(), row.end(), u);
}

std::vector<Link> BipartiteGraph::links() const {
  std::vector<Link> out;
  out.reserve(num_links_);
  for (Index o = 0; o < num_objects_; ++o)
    for (Index u : object_users_[o]) out.emplace_back(o, u);
  return out;
}

}  // namespace csirec
