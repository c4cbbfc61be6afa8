#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lanegeo/types.hpp"

namespace lanegeo {

/// Insertion-ordered JSON: emitted keys follow the canonical schema order.
using Json = nlohmann::ordered_json;

Json to_json(const CameraPose& pose);
Json to_json(const AnchorSet& set);
Json to_json(const Lane3D& lane);
Json to_json(const Scene& scene);
Json to_json(const FlatScene& scene);

CameraPose camera_from_json(const Json& j);
AnchorSet anchor_set_from_json(const Json& j);
Scene scene_from_json(const Json& j);
FlatScene flat_scene_from_json(const Json& j);

// JSON-lines, one record per line. Parsing validates every record; errors
// carry the 1-based line number.
std::vector<Scene> parse_scenes(std::istream& in);
std::vector<FlatScene> parse_flat_scenes(std::istream& in);
void write_scenes(std::span<const Scene> scenes, std::ostream& out);
void write_flat_scenes(std::span<const FlatScene> scenes, std::ostream& out);

std::vector<Scene> read_scenes(const std::filesystem::path& path);
std::vector<FlatScene> read_flat_scenes(const std::filesystem::path& path);
void write_scenes(std::span<const Scene> scenes, const std::filesystem::path& path);
void write_flat_scenes(std::span<const FlatScene> scenes, const std::filesystem::path& path);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const Json& j, const std::filesystem::path& path);

}  // namespace lanegeo
