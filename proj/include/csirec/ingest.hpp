#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "csirec/bipartite_graph.hpp"

namespace csirec {

struct RatingRecord {
  std::string user_id;
  std::string object_id;
  double rating = 0.0;
};

struct DatasetSummary {
  std::size_t users = 0;    // users incident to at least one like-link
  std::size_t objects = 0;  // likewise for objects
  std::size_t links = 0;
  double sparsity = 0.0;    // links / (users * objects)
};

/// Declares how a delimited rating file is laid out. Parsed from a spec
/// string "DELIM:FIELDS[:skip=N]" where DELIM is one of
/// tab|comma|semicolon|space and FIELDS is a list like
/// "user,object,rating" naming each column ("-" skips one). Columns past
/// the last named field are ignored.
struct FileFormat {
  char delimiter = '\t';
  int user_field = 0;
  int object_field = 1;
  int rating_field = 2;
  int skip_lines = 0;

  static FileFormat parse(const std::string& spec);
};

/// Streams a delimited rating file into records. Malformed lines raise
/// DataError with the 1-based line number; empty input yields an empty
/// sequence.
std::vector<RatingRecord> parse_ratings(std::istream& source, const FileFormat& format);

/// Like-link graph plus its summary and the dense-index <-> original-ID
/// maps. Index k of each map is the original ID of dense index k.
struct LikeGraph {
  BipartiteGraph graph;
  DatasetSummary summary;
  std::vector<std::string> object_ids;
  std::vector<std::string> user_ids;
};

/// Applies the like-threshold: a link (o, u) exists iff any record for
/// that pair has rating >= like_threshold. Entities with no like-link are
/// dropped; surviving entities get dense 0-based indices in
/// first-appearance order.
LikeGraph threshold_links(const std::vector<RatingRecord>& records, double like_threshold);

/// Canonical link file: one "objectIndex<TAB>userIndex" per line,
/// sorted, dense 0-based indices.
void write_links(std::ostream& out, const BipartiteGraph& graph);
BipartiteGraph read_links(std::istream& in);

void write_id_map(std::ostream& out, const std::vector<std::string>& ids);
void write_summary(std::ostream& out, const DatasetSummary& summary);

}  // namespace csirec
