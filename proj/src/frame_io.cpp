#include "cheqlab/frame_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace cheqlab {

using nlohmann::json;

std::string frame_document_to_json(const FrameDocument& doc) {
  json j;
  j["name"] = doc.name;
  json points = json::array();
  for (int i = 0; i < doc.frame.size(); ++i)
    points.push_back({{"id", i}, {"label", doc.frame.label(i)}});
  j["points"] = std::move(points);
  json covers = json::array();
  for (auto [lo, hi] : doc.frame.cover_pairs())
    covers.push_back({lo, hi});
  j["covers"] = std::move(covers);
  return j.dump(2) + "\n";
}

FrameDocument frame_document_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("invalid frame document: ") + e.what());
  }
  if (!j.is_object() || !j.contains("name") || !j.contains("points") ||
      !j.contains("covers"))
    throw IoError("frame document needs name, points and covers");
  FrameDocument doc;
  try {
    doc.name = j.at("name").get<std::string>();
    const auto& pts = j.at("points");
    if (!pts.is_array()) throw IoError("points must be an array");
    const int n = static_cast<int>(pts.size());
    std::vector<std::string> labels(n);
    std::vector<char> seen(n, 0);
    for (const auto& p : pts) {
      int id = p.at("id").get<int>();
      if (id < 0 || id >= n) throw IoError("point ids must be dense 0..n-1");
      if (seen[id]) throw IoError("duplicate point id");
      seen[id] = 1;
      labels[id] = p.at("label").get<std::string>();
    }
    std::vector<std::pair<int, int>> covers;
    for (const auto& c : j.at("covers")) {
      if (!c.is_array() || c.size() != 2)
        throw IoError("each cover must be a [from, to] pair");
      covers.emplace_back(c[0].get<int>(), c[1].get<int>());
    }
    doc.frame = Poset::from_covers(std::move(labels), covers);
  } catch (const json::exception& e) {
    throw IoError(std::string("invalid frame document: ") + e.what());
  }
  return doc;
}

FrameDocument load_frame(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return frame_document_from_json(buf.str());
}

void save_frame(const FrameDocument& doc, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << frame_document_to_json(doc);
  if (!out) throw IoError("failed writing " + path.string());
}

std::string point_map_to_json(const std::vector<int>& map) {
  json j = json::array();
  for (std::size_t i = 0; i < map.size(); ++i)
    j.push_back({static_cast<int>(i), map[i]});
  return j.dump() + "\n";
}

std::vector<int> point_map_from_json(const std::string& text, int source_size,
                                     int target_size) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("invalid point map: ") + e.what());
  }
  if (!j.is_array()) throw IoError("point map must be a list of pairs");
  std::vector<int> map(source_size, -1);
  try {
    for (const auto& pair : j) {
      if (!pair.is_array() || pair.size() != 2)
        throw IoError("point map entries must be [source, target] pairs");
      int s = pair[0].get<int>();
      int t = pair[1].get<int>();
      if (s < 0 || s >= source_size) throw IoError("map source id out of range");
      if (t < 0 || t >= target_size) throw IoError("map target id out of range");
      if (map[s] != -1) throw IoError("map assigns a source point twice");
      map[s] = t;
    }
  } catch (const json::exception& e) {
    throw IoError(std::string("invalid point map: ") + e.what());
  }
  for (int v : map)
    if (v < 0) throw IoError("map is not total");
  return map;
}

std::vector<int> load_point_map(const std::filesystem::path& path,
                                int source_size, int target_size) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return point_map_from_json(buf.str(), source_size, target_size);
}

void save_point_map(const std::vector<int>& map,
                    const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << point_map_to_json(map);
  if (!out) throw IoError("failed writing " + path.string());
}

static std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += "\"";
  return out;
}

std::string export_dot(const FrameDocument& doc) {
  const Poset& p = doc.frame;
  std::ostringstream out;
  out << "digraph " << dot_quote(doc.name) << " {\n";
  out << "  rankdir=BT;\n";
  out << "  node [shape=none];\n";
  std::map<int, std::vector<int>> by_height;
  for (int x = 0; x < p.size(); ++x) by_height[p.height(x)].push_back(x);
  for (auto& [h, pts] : by_height) {
    out << "  { rank=same;";
    for (int x : pts) out << " " << dot_quote(p.label(x)) << ";";
    out << " }\n";
  }
  for (auto [lo, hi] : p.cover_pairs())
    out << "  " << dot_quote(p.label(lo)) << " -> " << dot_quote(p.label(hi))
        << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace cheqlab
