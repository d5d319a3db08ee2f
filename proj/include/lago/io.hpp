#pragma once
// File formats.
//
// Stream files: UTF-8 text, one record per line,
//     src,dst,t_start[,t_end[,weight]]
// with '#' comment lines and an optional header (detected when the time
// field of the first line is not numeric).  An empty t_end denotes an
// instantaneous event in timestamped mode; interval records require it.
// Modality, time kind and directedness are declared by the caller, not the
// file.  Node types come from a companion file with node,type lines.
//
// Structure files: one JSON object per line,
//     {"community": c, "node": "name", "t_start": a, "t_end": b}
// half-open segments, t_start == t_end marking a continuous-time instant.
//
// Times are serialized with full round-trip precision, so write/read is an
// identity up to segment normalization.

#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lago/community.hpp"
#include "lago/stream.hpp"

namespace lago {

struct StreamReadOptions {
  Modality modality = Modality::timestamped;
  TimeKind time_kind = TimeKind::continuous;
  bool directed = false;
  std::string types_path;  // optional node,type file
  std::optional<double> t_min;
  std::optional<double> t_max;
};

namespace io_detail {

inline std::string format_time(double t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", t);
  return buf;
}

inline bool parse_double(const std::string& s, double& out) {
  try {
    std::size_t pos = 0;
    out = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    return pos == s.size();
  } catch (...) {
    return false;
  }
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

[[noreturn]] inline void fail(const std::string& path, std::size_t line,
                              const std::string& what) {
  throw std::invalid_argument(path + ":" + std::to_string(line) + ": " + what);
}

}  // namespace io_detail

inline LinkStream read_stream(const std::string& path,
                              const StreamReadOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open stream file: " + path);

  NodeTable nodes;
  std::map<std::string, std::int32_t> type_ids;
  if (!options.types_path.empty()) {
    std::ifstream tin(options.types_path);
    if (!tin)
      throw std::invalid_argument("cannot open types file: " + options.types_path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(tin, line)) {
      ++lineno;
      line = io_detail::trim(line);
      if (line.empty() || line[0] == '#') continue;
      auto fields = io_detail::split_csv(line);
      if (fields.size() != 2)
        io_detail::fail(options.types_path, lineno, "expected node,type");
      std::string type = io_detail::trim(fields[1]);
      auto [it, _] = type_ids.try_emplace(type, static_cast<std::int32_t>(type_ids.size()));
      nodes.add(io_detail::trim(fields[0]), it->second);
    }
  }

  std::vector<Interaction> interactions;
  std::string line;
  std::size_t lineno = 0;
  bool first_data_line = true;
  while (std::getline(in, line)) {
    ++lineno;
    line = io_detail::trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto fields = io_detail::split_csv(line);
    if (fields.size() < 3)
      io_detail::fail(path, lineno, "expected src,dst,t_start[,t_end[,weight]]");
    double t_start;
    if (!io_detail::parse_double(io_detail::trim(fields[2]), t_start)) {
      if (first_data_line) {  // header row
        first_data_line = false;
        continue;
      }
      io_detail::fail(path, lineno, "non-numeric time: " + fields[2]);
    }
    first_data_line = false;

    std::string src_name = io_detail::trim(fields[0]);
    std::string dst_name = io_detail::trim(fields[1]);
    double t_end = t_start;
    bool has_end = fields.size() > 3 && !io_detail::trim(fields[3]).empty();
    if (has_end && !io_detail::parse_double(io_detail::trim(fields[3]), t_end))
      io_detail::fail(path, lineno, "non-numeric time: " + fields[3]);
    if (!has_end && options.modality == Modality::interval)
      io_detail::fail(path, lineno, "interval records require t_end");
    if (t_end < t_start)
      io_detail::fail(path, lineno, "t_end before t_start");
    double weight = 1.0;
    if (fields.size() > 4 && !io_detail::trim(fields[4]).empty() &&
        !io_detail::parse_double(io_detail::trim(fields[4]), weight))
      io_detail::fail(path, lineno, "non-numeric weight: " + fields[4]);

    NodeId src, dst;
    if (!options.types_path.empty()) {
      auto s = nodes.find(src_name), d = nodes.find(dst_name);
      if (!s || !d)
        io_detail::fail(path, lineno, "node missing from the types file");
      if (nodes.type_of(*s) == nodes.type_of(*d))
        io_detail::fail(path, lineno, "same-type interaction in multipartite input");
      src = *s;
      dst = *d;
    } else {
      src = nodes.add(src_name);
      dst = nodes.add(dst_name);
    }
    interactions.push_back({src, dst, t_start, t_end, weight, options.directed});
  }

  TimeDomain domain;
  if (options.t_min && options.t_max) {
    domain = TimeDomain(options.time_kind, *options.t_min, *options.t_max);
  } else {
    domain = infer_domain(options.time_kind, options.modality, interactions);
    if (options.t_min) domain.t_min = std::min(domain.t_min, *options.t_min);
    if (options.t_max) domain.t_max = std::max(domain.t_max, *options.t_max);
    domain.validate();
  }
  return LinkStream(domain, nodes, options.modality, interactions);
}

inline void write_stream(const LinkStream& stream, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << "# src,dst,t_start,t_end,weight\n";
  for (const auto& e : stream.interactions()) {
    out << stream.nodes().name(e.src) << ',' << stream.nodes().name(e.dst) << ','
        << io_detail::format_time(e.t_start) << ',';
    if (stream.modality() == Modality::interval || !e.instantaneous())
      out << io_detail::format_time(e.t_second);
    out << ',' << io_detail::format_time(e.weight) << '\n';
  }
}

inline void write_types(const LinkStream& stream, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  for (NodeId u = 0; u < stream.nodes().size(); ++u)
    out << stream.nodes().name(u) << ',' << stream.nodes().type_of(u) << '\n';
}

inline void write_structure(const DynamicCommunityStructure& structure,
                            const LinkStream& stream, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  for (const auto& r : structure.to_segments()) {
    nlohmann::json rec{{"community", r.community},
                       {"node", stream.nodes().name(r.node)},
                       {"t_start", r.t_start},
                       {"t_end", r.t_end}};
    out << rec.dump() << '\n';
  }
}

inline DynamicCommunityStructure read_structure(const std::string& path,
                                                const LinkStream& stream) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open structure file: " + path);
  std::vector<MembershipSegment> segments;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = io_detail::trim(line);
    if (line.empty() || line[0] == '#') continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      io_detail::fail(path, lineno, std::string("bad record: ") + e.what());
    }
    try {
      MembershipSegment seg;
      seg.community = rec.at("community").get<CommunityId>();
      seg.node = stream.nodes().require(rec.at("node").get<std::string>());
      seg.t_start = rec.at("t_start").get<double>();
      seg.t_end = rec.at("t_end").get<double>();
      segments.push_back(seg);
    } catch (const nlohmann::json::exception& e) {
      io_detail::fail(path, lineno, std::string("bad record: ") + e.what());
    }
  }
  return DynamicCommunityStructure(stream.domain(), stream.nodes().size(), segments);
}

// Community coloring for timeline exports: communities ranked by total
// membership measure (ties by id); the 12 most present get palette colors,
// all others grey.
inline std::vector<std::string> community_colors(
    const DynamicCommunityStructure& structure) {
  static const char* kPalette[12] = {
      "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
      "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#1170aa", "#5fa2ce"};
  std::vector<std::pair<double, CommunityId>> rank;
  for (CommunityId c = 0; c < structure.community_count(); ++c) {
    double presence = 0.0;
    for (const auto& m : structure.communities()[c].members)
      presence += m.times.measure();
    rank.push_back({-presence, c});
  }
  std::sort(rank.begin(), rank.end());
  std::vector<std::string> colors(structure.community_count(), "#c7c7c7");
  for (std::size_t i = 0; i < rank.size() && i < 12; ++i)
    colors[rank[i].second] = kPalette[i];
  return colors;
}

enum class TimelineFormat { csv, svg };

// Node-lane timeline of a structure: one horizontal lane per node, time on
// the x axis, membership segments colored by community, unassigned time in
// background grey.
inline void export_timeline(const DynamicCommunityStructure& structure,
                            const LinkStream& stream, const std::string& path,
                            TimelineFormat format) {
  std::vector<std::string> colors = community_colors(structure);
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);

  if (format == TimelineFormat::csv) {
    out << "node,community,t_start,t_end,color\n";
    for (const auto& r : structure.to_segments())
      out << stream.nodes().name(r.node) << ',' << r.community << ','
          << io_detail::format_time(r.t_start) << ','
          << io_detail::format_time(r.t_end) << ',' << colors[r.community] << '\n';
    return;
  }

  const double width = 900, lane = 20, left = 90, top = 24;
  const TimeDomain& d = stream.domain();
  double height = top * 2 + lane * static_cast<double>(stream.nodes().size());
  auto x = [&](double t) {
    return left + (t - d.t_min) / (d.t_max - d.t_min) * (width - left - 20);
  };
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n";
  out << "<text x=\"" << left << "\" y=\"14\" font-size=\"11\">t = "
      << io_detail::format_time(d.t_min) << "</text>\n";
  out << "<text x=\"" << width - 60 << "\" y=\"14\" font-size=\"11\">t = "
      << io_detail::format_time(d.t_max) << "</text>\n";
  for (NodeId u = 0; u < stream.nodes().size(); ++u) {
    double y = top + lane * u;
    out << "<text x=\"4\" y=\"" << y + lane * 0.7 << "\" font-size=\"11\">"
        << stream.nodes().name(u) << "</text>\n";
    out << "<rect x=\"" << x(d.t_min) << "\" y=\"" << y + lane * 0.35
        << "\" width=\"" << x(d.t_max) - x(d.t_min) << "\" height=\""
        << lane * 0.3 << "\" fill=\"#eeeeee\"/>\n";
  }
  for (const auto& r : structure.to_segments()) {
    double y = top + lane * r.node;
    double x0 = x(r.t_start);
    double w = std::max(x(r.t_end) - x0, 1.0);  // markers get a visible tick
    out << "<rect x=\"" << x0 << "\" y=\"" << y + lane * 0.15 << "\" width=\""
        << w << "\" height=\"" << lane * 0.7 << "\" fill=\"" << colors[r.community]
        << "\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace lago
