#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "roofkit/geometry.hpp"
#include "roofkit/raster.hpp"

namespace roofkit {

inline constexpr const char* kToolName = "roofkit";
inline constexpr const char* kToolVersion = "0.1.0";

// --- roof-graph JSON -------------------------------------------------------
// {"resolution": int, "meters_per_pixel": float,
//  "primitives": [{"box":[l,t,r,b], "type":"h_gable|v_gable|h_hip|v_hip",
//                  "angle_lr":rad, "angle_tb":rad}],
//  "relations": [{"pair":[i,j], "v":[6 floats]}]}
std::string graph_to_json(const RoofGraph& graph);
RoofGraph graph_from_json(const std::string& text);
void save_graph(const std::filesystem::path& file, const RoofGraph& graph);
RoofGraph load_graph(const std::filesystem::path& file);

// --- roof-model JSON -------------------------------------------------------
std::string model_to_json(const RoofModel& model);
RoofModel model_from_json(const std::string& text);
void save_model(const std::filesystem::path& file, const RoofModel& model);
RoofModel load_model(const std::filesystem::path& file);

// --- raster bundle files ---------------------------------------------------
// Lossless-at-float32 channel grids: 16-byte header (magic "RKFG",
// uint32 resolution, float32 meters_per_pixel, uint32 channels) followed by
// channel-major float32 little-endian samples.
void save_float_grid(const std::filesystem::path& file,
                     const std::vector<const Image<double>*>& channels,
                     double meters_per_pixel);
std::pair<std::vector<Image<double>>, double> load_float_grid(
    const std::filesystem::path& file);

// Bundle file set under a path prefix: <prefix>.orient.rkg (3 channels),
// <prefix>.angle.rkg, <prefix>.height.rkg, <prefix>.labels.rkg.
void save_bundle(const std::filesystem::path& prefix, const RasterBundle& bundle);
RasterBundle load_bundle(const std::filesystem::path& prefix);

// 8-bit PGM views of the bundle channels (<prefix>.orient_lr.pgm,
// .orient_tb.pgm, .orient_bg.pgm, .angle.pgm, .labels.pgm).
void save_bundle_views(const std::filesystem::path& prefix, const RasterBundle& bundle);

// --- plain images ----------------------------------------------------------
void save_pgm(const std::filesystem::path& file, const Image<std::uint8_t>& image);
void save_png_rgb(const std::filesystem::path& file, const RgbImage& image);

// --- OBJ export ------------------------------------------------------------
// Facet polygons triangulated by ear clipping; vertices emitted y-up.
void save_obj(const std::filesystem::path& file, const RoofModel& model);

// --- hashing + run manifests -----------------------------------------------
std::string sha256_bytes(const void* data, std::size_t size);
std::string sha256_file(const std::filesystem::path& file);

struct FileHash {
  std::string path;  // relative to the manifest location
  std::string sha256;
  bool operator==(const FileHash&) const = default;
};

struct Manifest {
  std::string tool = kToolName;
  std::string version = kToolVersion;
  std::string subcommand;
  std::optional<std::uint64_t> seed;
  std::map<std::string, std::string> config;
  std::vector<FileHash> inputs;
  std::vector<FileHash> outputs;
  bool operator==(const Manifest&) const = default;
};

std::string manifest_to_json(const Manifest& manifest);
Manifest manifest_from_json(const std::string& text);

// Hashes the named files (paths relative to base_dir) into a manifest.
Manifest make_manifest(const std::string& subcommand,
                       const std::map<std::string, std::string>& config,
                       std::optional<std::uint64_t> seed,
                       const std::filesystem::path& base_dir,
                       const std::vector<std::filesystem::path>& inputs,
                       const std::vector<std::filesystem::path>& outputs);
void write_manifest(const std::filesystem::path& file, const Manifest& manifest);
Manifest read_manifest(const std::filesystem::path& file);

// Re-hashes every file mentioned by the manifest; returns the relative paths
// whose contents no longer match (missing files included).
std::vector<std::string> verify_manifest(const std::filesystem::path& file);

std::string read_text_file(const std::filesystem::path& file);
void write_text_file(const std::filesystem::path& file, const std::string& text);

}  // namespace roofkit
