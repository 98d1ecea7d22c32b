#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cheqlab/poset.hpp"

namespace cheqlab {

// A frame plus its display name, the unit of CLI serialization.
struct FrameDocument {
  std::string name;
  Poset frame;
};

// Canonical JSON: sorted keys, points by ascending id, covers sorted; loading
// then saving is byte-identical.
std::string frame_document_to_json(const FrameDocument& doc);
FrameDocument frame_document_from_json(const std::string& text);

FrameDocument load_frame(const std::filesystem::path& path);
void save_frame(const FrameDocument& doc, const std::filesystem::path& path);

// Point map as a JSON list of [source_id, target_id] pairs, ascending source.
std::string point_map_to_json(const std::vector<int>& map);
std::vector<int> point_map_from_json(const std::string& text, int source_size,
                                     int target_size);
std::vector<int> load_point_map(const std::filesystem::path& path,
                                int source_size, int target_size);
void save_point_map(const std::vector<int>& map,
                    const std::filesystem::path& path);

// Hasse diagram as DOT: edges run from lower to upper point, points of equal
// height share a rank, labels quoted.
std::string export_dot(const FrameDocument& doc);

}  // namespace cheqlab
