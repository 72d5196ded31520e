#include "csirec/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace csirec {

namespace {

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string::size_type start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

}  // namespace

FileFormat FileFormat::parse(const std::string& spec) {
  auto parts = split_on(spec, ':');
  if (parts.size() < 2 || parts.size() > 3)
    throw DataError("bad format spec '" + spec + "', expected DELIM:FIELDS[:skip=N]");

  FileFormat f;
  if (parts[0] == "tab")
    f.delimiter = '\t';
  else if (parts[0] == "comma")
    f.delimiter = ',';
  else if (parts[0] == "semicolon")
    f.delimiter = ';';
  else if (parts[0] == "space")
    f.delimiter = ' ';
  else
    throw DataError("unknown delimiter '" + parts[0] + "' in format spec");

  f.user_field = f.object_field = f.rating_field = -1;
  auto fields = split_on(parts[1], ',');
  for (int i = 0; i < static_cast<int>(fields.size()); ++i) {
    const std::string& name = fields[static_cast<std::size_t>(i)];
    if (name == "user")
      f.user_field = i;
    else if (name == "object")
      f.object_field = i;
    else if (name == "rating")
      f.rating_field = i;
    else if (name != "-")
      throw DataError("unknown field '" + name + "' in format spec");
  }
  if (f.user_field < 0 || f.object_field < 0 || f.rating_field < 0)
    throw DataError("format spec must name user, object and rating fields");

  if (parts.size() == 3) {
    if (parts[2].rfind("skip=", 0) != 0)
      throw DataError("bad format spec option '" + parts[2] + "'");
    f.skip_lines = std::stoi(parts[2].substr(5));
  }
  return f;
}

std::vector<RatingRecord> parse_ratings(std::istream& source, const FileFormat& format) {
  const int needed =
      std::max({format.user_field, format.object_field, format.rating_field}) + 1;
  std::vector<RatingRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (line_no <= static_cast<std::size_t>(format.skip_lines)) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    auto fields = split_on(line, format.delimiter);
    if (static_cast<int>(fields.size()) < needed)
      throw DataError("line " + std::to_string(line_no) + ": expected at least " +
                      std::to_string(needed) + " fields, got " +
                      std::to_string(fields.size()));

    const std::string& rating_str = fields[static_cast<std::size_t>(format.rating_field)];
    double rating = 0.0;
    auto [ptr, ec] = std::from_chars(rating_str.data(), rating_str.data() + rating_str.size(), rating);
    if (ec != std::errc{} || ptr != rating_str.data() + rating_str.size())
      throw DataError("line " + std::to_string(line_no) + ": bad rating '" + rating_str + "'");

    records.push_back({fields[static_cast<std::size_t>(format.user_field)],
                       fields[static_cast<std::size_t>(format.object_field)], rating});
  }
  return records;
}

LikeGraph threshold_links(const std::vector<RatingRecord>& records, double like_threshold) {
  LikeGraph out;
  std::unordered_map<std::string, Index> object_index;
  std::unordered_map<std::string, Index> user_index;
  std::vector<Link> links;
  for (const RatingRecord& r : records) {
    if (r.rating < like_threshold) continue;
    auto [oit, onew] = object_index.try_emplace(r.object_id, static_cast<Index>(out.object_ids.size()));
    if (onew) out.object_ids.push_back(r.object_id);
    auto [uit, unew] = user_index.try_emplace(r.user_id, static_cast<Index>(out.user_ids.size()));
    if (unew) out.user_ids.push_back(r.user_id);
    links.emplace_back(oit->second, uit->second);
  }
  out.graph = BipartiteGraph::build(static_cast<Index>(out.object_ids.size()),
                                    static_cast<Index>(out.user_ids.size()), std::move(links));
  out.summary.objects = out.graph.num_objects();
  out.summary.users = out.graph.num_users();
  out.summary.links = out.graph.num_links();
  out.summary.sparsity =
      out.summary.links == 0
          ? 0.0
          : static_cast<double>(out.summary.links) /
                (static_cast<double>(out.summary.users) * static_cast<double>(out.summary.objects));
  return out;
}

void write_links(std::ostream& out, const BipartiteGraph& graph) {
  out << "# objects " << graph.num_objects() << " users " << graph.num_users() << "\n";
  for (Index o = 0; o < graph.num_objects(); ++o)
    for (Index u : graph.users_of(o)) out << o << '\t' << u << '\n';
}

BipartiteGraph read_links(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw DataError("empty link file");
  Index n = 0, m = 0;
  {
    std::istringstream hs(header);
    std::string hash, word;
    if (!(hs >> hash >> word >> n) || hash != "#" || word != "objects")
      throw DataError("bad link file header '" + header + "'");
    if (!(hs >> word >> m) || word != "users")
      throw DataError("bad link file header '" + header + "'");
  }
  std::vector<Link> links;
  Index o = 0, u = 0;
  std::size_t line_no = 1;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (!(ls >> o >> u))
      throw DataError("link file line " + std::to_string(line_no) + ": bad pair '" + line + "'");
    links.emplace_back(o, u);
  }
  return BipartiteGraph::build(n, m, std::move(links));
}

void write_id_map(std::ostream& out, const std::vector<std::string>& ids) {
  for (std::size_t i = 0; i < ids.size(); ++i) out << i << '\t' << ids[i] << '\n';
}

void write_summary(std::ostream& out, const DatasetSummary& summary) {
  out << "users\t" << summary.users << "\n"
      << "objects\t" << summary.objects << "\n"
      << "links\t" << summary.links << "\n"
      << "sparsity\t" << summary.sparsity << "\n";
}

}  // namespace csirec
