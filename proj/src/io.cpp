#include "roofkit/io.hpp"

#include <openssl/evp.h>
#include <png.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <nlohmann/json.hpp>

namespace roofkit {

using ordered_json = nlohmann::ordered_json;

std::string read_text_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot open " + file.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text_file(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error("cannot write " + file.string());
  out << text;
}

// --- roof-graph JSON -------------------------------------------------------

std::string graph_to_json(const RoofGraph& graph) {
  ordered_json j;
  j["resolution"] = graph.resolution;
  j["meters_per_pixel"] = graph.meters_per_pixel;
  j["primitives"] = ordered_json::array();
  for (const RoofPrimitive& p : graph.primitives) {
    ordered_json jp;
    jp["box"] = {p.box.left, p.box.top, p.box.right, p.box.bottom};
    jp["type"] = primitive_type_name(p.type);
    jp["angle_lr"] = p.angle_lr;
    jp["angle_tb"] = p.angle_tb;
    j["primitives"].push_back(std::move(jp));
  }
  j["relations"] = ordered_json::array();
  for (const auto& [pair, rel] : graph.relations) {
    ordered_json jr;
    jr["pair"] = {pair.first, pair.second};
    jr["v"] = rel.as_array();
    j["relations"].push_back(std::move(jr));
  }
  return j.dump();
}

RoofGraph graph_from_json(const std::string& text) {
  RoofGraph graph;
  try {
    const ordered_json j = ordered_json::parse(text);
    graph.resolution = j.at("resolution").get<int>();
    graph.meters_per_pixel = j.at("meters_per_pixel").get<double>();
    for (const auto& jp : j.at("primitives")) {
      RoofPrimitive p;
      const auto& box = jp.at("box");
      p.box = {box.at(0).get<double>(), box.at(1).get<double>(), box.at(2).get<double>(),
               box.at(3).get<double>()};
      p.type = primitive_type_from_name(jp.at("type").get<std::string>());
      p.angle_lr = jp.at("angle_lr").get<double>();
      p.angle_tb = jp.at("angle_tb").get<double>();
      graph.primitives.push_back(p);
    }
    for (const auto& jr : j.at("relations")) {
      const int i = jr.at("pair").at(0).get<int>();
      const int k = jr.at("pair").at(1).get<int>();
      std::array<double, 6> v{};
      for (int t = 0; t < 6; ++t) v[t] = jr.at("v").at(t).get<double>();
      graph.relations[make_pair_key(i, k)] = RelationVector::from_array(v);
    }
  } catch (const ordered_json::exception& e) {
    throw Error(std::string("malformed roof-graph JSON: ") + e.what());
  }
  return graph;
}

void save_graph(const std::filesystem::path& file, const RoofGraph& graph) {
  write_text_file(file, graph_to_json(graph) + "\n");
}

RoofGraph load_graph(const std::filesystem::path& file) {
  return graph_from_json(read_text_file(file));
}

// --- roof-model JSON -------------------------------------------------------

std::string model_to_json(const RoofModel& model) {
  ordered_json j;
  j["dim"] = model.dim;
  j["facets"] = ordered_json::array();
  for (const Facet& f : model.facets) {
    ordered_json jf;
    jf["plane_angle"] = f.plane_angle;
    jf["vertices"] = ordered_json::array();
    for (const Vec3& v : f.vertices) {
      if (model.dim == 3) {
        jf["vertices"].push_back({v.x, v.y, v.z});
      } else {
        jf["vertices"].push_back({v.x, v.y});
      }
    }
    j["facets"].push_back(std::move(jf));
  }
  return j.dump();
}

RoofModel model_from_json(const std::string& text) {
  RoofModel model;
  try {
    const ordered_json j = ordered_json::parse(text);
    model.dim = j.at("dim").get<int>();
    for (const auto& jf : j.at("facets")) {
      Facet f;
      f.plane_angle = jf.at("plane_angle").get<double>();
      for (const auto& jv : jf.at("vertices")) {
        Vec3 v{jv.at(0).get<double>(), jv.at(1).get<double>(), 0.0};
        if (model.dim == 3) v.z = jv.at(2).get<double>();
        f.vertices.push_back(v);
      }
      model.facets.push_back(std::move(f));
    }
  } catch (const ordered_json::exception& e) {
    throw Error(std::string("malformed roof-model JSON: ") + e.what());
  }
  return model;
}

void save_model(const std::filesystem::path& file, const RoofModel& model) {
  write_text_file(file, model_to_json(model) + "\n");
}

RoofModel load_model(const std::filesystem::path& file) {
  return model_from_json(read_text_file(file));
}

// --- float grids -----------------------------------------------------------

namespace {
constexpr char kGridMagic[4] = {'R', 'K', 'F', 'G'};
}

void save_float_grid(const std::filesystem::path& file,
                     const std::vector<const Image<double>*>& channels,
                     double meters_per_pixel) {
  if (channels.empty()) throw Error("save_float_grid: no channels");
  const std::uint32_t res = static_cast<std::uint32_t>(channels[0]->size);
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error("cannot write " + file.string());
  const float mpp = static_cast<float>(meters_per_pixel);
  const std::uint32_t nch = static_cast<std::uint32_t>(channels.size());
  out.write(kGridMagic, 4);
  out.write(reinterpret_cast<const char*>(&res), 4);
  out.write(reinterpret_cast<const char*>(&mpp), 4);
  out.write(reinterpret_cast<const char*>(&nch), 4);
  std::vector<float> row(res);
  for (const Image<double>* ch : channels) {
    if (static_cast<std::uint32_t>(ch->size) != res) {
      throw Error("save_float_grid: channel size mismatch");
    }
    for (std::uint32_t j = 0; j < res; ++j) {
      for (std::uint32_t i = 0; i < res; ++i) row[i] = static_cast<float>(ch->at(i, j));
      out.write(reinterpret_cast<const char*>(row.data()), sizeof(float) * res);
    }
  }
}

std::pair<std::vector<Image<double>>, double> load_float_grid(
    const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot open " + file.string());
  char magic[4];
  std::uint32_t res = 0, nch = 0;
  float mpp = 0.0f;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&res), 4);
  in.read(reinterpret_cast<char*>(&mpp), 4);
  in.read(reinterpret_cast<char*>(&nch), 4);
  if (!in || std::memcmp(magic, kGridMagic, 4) != 0) {
    throw Error("not a roofkit float grid: " + file.string());
  }
  if (res == 0 || res > 65536 || nch == 0 || nch > 16) {
    throw Error("implausible float grid header: " + file.string());
  }
  std::vector<Image<double>> channels;
  std::vector<float> row(res);
  for (std::uint32_t c = 0; c < nch; ++c) {
    Image<double> img(static_cast<int>(res));
    for (std::uint32_t j = 0; j < res; ++j) {
      in.read(reinterpret_cast<char*>(row.data()), sizeof(float) * res);
      for (std::uint32_t i = 0; i < res; ++i) img.at(i, j) = row[i];
    }
    channels.push_back(std::move(img));
  }
  if (!in) throw Error("truncated float grid: " + file.string());
  return {std::move(channels), static_cast<double>(mpp)};
}

void save_bundle(const std::filesystem::path& prefix, const RasterBundle& bundle) {
  const std::string base = prefix.string();
  save_float_grid(base + ".orient.rkg",
                  {&bundle.orientation[0], &bundle.orientation[1], &bundle.orientation[2]},
                  bundle.meters_per_pixel);
  save_float_grid(base + ".angle.rkg", {&bundle.angle}, bundle.meters_per_pixel);
  save_float_grid(base + ".height.rkg", {&bundle.height}, bundle.meters_per_pixel);
  Image<double> labels(bundle.labels.size);
  for (std::size_t i = 0; i < labels.data.size(); ++i) {
    labels.data[i] = static_cast<double>(bundle.labels.data[i]);
  }
  save_float_grid(base + ".labels.rkg", {&labels}, bundle.meters_per_pixel);
}

RasterBundle load_bundle(const std::filesystem::path& prefix) {
  const std::string base = prefix.string();
  auto [orient, mpp] = load_float_grid(base + ".orient.rkg");
  if (orient.size() != 3) throw Error("orientation grid must have 3 channels");
  RasterBundle bundle;
  bundle.resolution = orient[0].size;
  bundle.meters_per_pixel = mpp;
  for (int c = 0; c < 3; ++c) bundle.orientation[c] = std::move(orient[c]);
  bundle.angle = load_float_grid(base + ".angle.rkg").first.at(0);
  bundle.height = load_float_grid(base + ".height.rkg").first.at(0);
  const Image<double> labels = load_float_grid(base + ".labels.rkg").first.at(0);
  bundle.labels = Image<int>(labels.size);
  for (std::size_t i = 0; i < labels.data.size(); ++i) {
    bundle.labels.data[i] = static_cast<int>(std::lround(labels.data[i]));
  }
  for (const auto& img :
       {bundle.orientation[0], bundle.orientation[1], bundle.orientation[2]}) {
    if (img.size != bundle.resolution) throw Error("bundle channel size mismatch");
  }
  return bundle;
}

namespace {

Image<std::uint8_t> quantize(const Image<double>& img, double scale) {
  Image<std::uint8_t> out(img.size);
  for (std::size_t i = 0; i < img.data.size(); ++i) {
    const double v = std::clamp(img.data[i] * scale, 0.0, 255.0);
    out.data[i] = static_cast<std::uint8_t>(std::lround(v));
  }
  return out;
}

}  // namespace

void save_bundle_views(const std::filesystem::path& prefix, const RasterBundle& bundle) {
  const std::string base = prefix.string();
  save_pgm(base + ".orient_lr.pgm", quantize(bundle.orientation[kChannelLR], 255.0));
  save_pgm(base + ".orient_tb.pgm", quantize(bundle.orientation[kChannelTB], 255.0));
  save_pgm(base + ".orient_bg.pgm", quantize(bundle.orientation[kChannelBG], 255.0));
  save_pgm(base + ".angle.pgm", quantize(bundle.angle, 255.0));
  Image<std::uint8_t> labels(bundle.labels.size);
  for (std::size_t i = 0; i < labels.data.size(); ++i) {
    labels.data[i] = static_cast<std::uint8_t>(std::clamp(bundle.labels.data[i] + 1, 0, 255));
  }
  save_pgm(base + ".labels.pgm", labels);
}

void save_pgm(const std::filesystem::path& file, const Image<std::uint8_t>& image) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error("cannot write " + file.string());
  out << "P5\n" << image.size << " " << image.size << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.data.data()),
            static_cast<std::streamsize>(image.data.size()));
}

void save_png_rgb(const std::filesystem::path& file, const RgbImage& image) {
  std::FILE* fp = std::fopen(file.string().c_str(), "wb");
  if (!fp) throw Error("cannot write " + file.string());
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info || setjmp(png_jmpbuf(png))) {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    std::fclose(fp);
    throw Error("libpng failure while writing " + file.string());
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, image.size, image.size, 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::vector<png_bytep> rows(image.size);
  for (int j = 0; j < image.size; ++j) {
    rows[j] = const_cast<png_bytep>(
        reinterpret_cast<const png_byte*>(image.pixels[static_cast<std::size_t>(j) *
                                                       image.size].data()));
  }
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

// --- OBJ export --------------------------------------------------------------

void save_obj(const std::filesystem::path& file, const RoofModel& model) {
  std::string text = "# roofkit roof model\n";
  char buf[160];
  int base = 1;
  for (std::size_t fi = 0; fi < model.facets.size(); ++fi) {
    const Facet& f = model.facets[fi];
    std::snprintf(buf, sizeof(buf), "o facet_%zu\n", fi);
    text += buf;
    std::vector<Vec2> footprint;
    for (const Vec3& v : f.vertices) {
      std::snprintf(buf, sizeof(buf), "v %.9g %.9g %.9g\n", v.x, v.z, v.y);
      text += buf;
      footprint.push_back({v.x, v.y});
    }
    for (const auto& tri : ear_clip(footprint)) {
      std::snprintf(buf, sizeof(buf), "f %d %d %d\n", base + tri[0], base + tri[1],
                    base + tri[2]);
      text += buf;
    }
    base += static_cast<int>(f.vertices.size());
  }
  write_text_file(file, text);
}

// --- hashing -----------------------------------------------------------------

namespace {

std::string to_hex(const unsigned char* digest, unsigned int len) {
  static const char* hex = "0123456789abcdef";
  std::string out(2 * len, '0');
  for (unsigned int i = 0; i < len; ++i) {
    out[2 * i] = hex[digest[i] >> 4];
    out[2 * i + 1] = hex[digest[i] & 0xf];
  }
  return out;
}

}  // namespace

std::string sha256_bytes(const void* data, std::size_t size) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data, size, digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 digest failed");
  }
  return to_hex(digest, len);
}

std::string sha256_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot open " + file.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error("sha256 init failed");
  }
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof(buf));
    if (in.gcount() > 0) {
      EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
    }
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  return to_hex(digest, len);
}

// --- manifests ---------------------------------------------------------------

std::string manifest_to_json(const Manifest& m) {
  ordered_json j;
  j["tool"] = m.tool;
  j["version"] = m.version;
  j["subcommand"] = m.subcommand;
  if (m.seed) j["seed"] = *m.seed;
  j["config"] = ordered_json::object();
  for (const auto& [k, v] : m.config) j["config"][k] = v;
  auto dump_files = [](const std::vector<FileHash>& files) {
    ordered_json arr = ordered_json::array();
    for (const FileHash& f : files) {
      ordered_json jf;
      jf["path"] = f.path;
      jf["sha256"] = f.sha256;
      arr.push_back(std::move(jf));
    }
    return arr;
  };
  j["inputs"] = dump_files(m.inputs);
  j["outputs"] = dump_files(m.outputs);
  return j.dump(2) + "\n";
}

Manifest manifest_from_json(const std::string& text) {
  Manifest m;
  try {
    const ordered_json j = ordered_json::parse(text);
    m.tool = j.at("tool").get<std::string>();
    m.version = j.at("version").get<std::string>();
    m.subcommand = j.at("subcommand").get<std::string>();
    if (j.contains("seed")) m.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& [k, v] : j.at("config").items()) {
      m.config[k] = v.get<std::string>();
    }
    auto parse_files = [](const ordered_json& arr) {
      std::vector<FileHash> out;
      for (const auto& jf : arr) {
        out.push_back({jf.at("path").get<std::string>(), jf.at("sha256").get<std::string>()});
      }
      return out;
    };
    m.inputs = parse_files(j.at("inputs"));
    m.outputs = parse_files(j.at("outputs"));
  } catch (const ordered_json::exception& e) {
    throw Error(std::string("malformed manifest JSON: ") + e.what());
  }
  return m;
}

Manifest make_manifest(const std::string& subcommand,
                       const std::map<std::string, std::string>& config,
                       std::optional<std::uint64_t> seed,
                       const std::filesystem::path& base_dir,
                       const std::vector<std::filesystem::path>& inputs,
                       const std::vector<std::filesystem::path>& outputs) {
  Manifest m;
  m.subcommand = subcommand;
  m.seed = seed;
  m.config = config;
  auto hash_all = [&](const std::vector<std::filesystem::path>& files) {
    std::vector<FileHash> out;
    for (const auto& f : files) {
      const std::filesystem::path abs = f.is_absolute() ? f : base_dir / f;
      out.push_back({std::filesystem::relative(abs, base_dir).generic_string(),
                     sha256_file(abs)});
    }
    return out;
  };
  m.inputs = hash_all(inputs);
  m.outputs = hash_all(outputs);
  return m;
}

void write_manifest(const std::filesystem::path& file, const Manifest& manifest) {
  write_text_file(file, manifest_to_json(manifest));
}

Manifest read_manifest(const std::filesystem::path& file) {
  return manifest_from_json(read_text_file(file));
}

std::vector<std::string> verify_manifest(const std::filesystem::path& file) {
  const Manifest m = read_manifest(file);
  const std::filesystem::path base = file.parent_path();
  std::vector<std::string> mismatched;
  auto check = [&](const std::vector<FileHash>& files) {
    for (const FileHash& f : files) {
      const std::filesystem::path p = base / f.path;
      try {
        if (sha256_file(p) != f.sha256) mismatched.push_back(f.path);
      } catch (const Error&) {
        mismatched.push_back(f.path);
      }
    }
  };
  check(m.inputs);
  check(m.outputs);
  return mismatched;
}

}  // namespace roofkit
