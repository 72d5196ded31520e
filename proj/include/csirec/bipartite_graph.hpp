#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace csirec {

using Index = std::uint32_t;
using Link = std::pair<Index, Index>;  // (object index, user index)

/// Raised when input data violates a structural precondition
/// (out-of-range index, malformed line, impossible split, ...).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Unweighted undirected object-user bipartite network with degree
/// indices. Immutable after construction; safe to share across threads.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;

  /// Builds the graph from a link list. Duplicate pairs are collapsed,
  /// out-of-range indices are rejected.
  static BipartiteGraph build(Index num_objects, Index num_users,
                              std::vector<Link> links);

  Index num_objects() const { return num_objects_; }
  Index num_users() const { return num_users_; }
  std::size_t num_links() const { return num_links_; }

  Index object_degree(Index o) const { return static_cast<Index>(object_users_[o].size()); }
  Index user_degree(Index u) const { return static_cast<Index>(user_objects_[u].size()); }

  /// Users who collected object o, ascending.
  const std::vector<Index>& users_of(Index o) const { return object_users_[o]; }
  /// Objects collected by user u, ascending.
  const std::vector<Index>& objects_of(Index u) const { return user_objects_[u]; }

  bool has_link(Index o, Index u) const;

  /// All links, sorted by (object, user).
  std::vector<Link> links() const;

 private:
  Index num_objects_ = 0;
  Index num_users_ = 0;
  std::size_t num_links_ = 0;
  std::vector<std::vector<Index>> object_users_;
  std::vector<std::vector<Index>> user_objects_;
};

}  // namespace csirec
