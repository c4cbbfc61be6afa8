#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <map>

#include "lanegeo/augment.hpp"
#include "lanegeo/errors.hpp"
#include "lanegeo/evaluate.hpp"
#include "lanegeo/mask.hpp"
#include "lanegeo/projection.hpp"
#include "lanegeo/random.hpp"
#include "lanegeo/reconstruct.hpp"
#include "lanegeo/scene_io.hpp"
#include "lanegeo/synth.hpp"
#include "svg.hpp"
#include "worker_pool.hpp"

namespace lanegeo::tools {
namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create directory " + dir.string());
}

std::string frame_name(std::uint64_t seed, std::size_t index) {
  return "scene_" + std::to_string(seed) + "_" + std::to_string(index);
}

std::string angle_text(const std::optional<double>& a) { return a ? Json(*a).dump() : "null"; }

}  // namespace

std::string file_stem(const std::string& frame_id) {
  std::string out;
  for (char c : frame_id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                    c == '_' || c == '.';
    out += ok ? c : '_';
  }
  if (out.empty() || out.front() == '.') out.insert(out.begin(), '_');
  return out;
}

int cmd_generate(const GenerateArgs& a) {
  const RoadSpec spec = road_spec_from_json(read_json_file(a.config));
  const auto scenes = parallel_map<Scene>(a.count, a.workers, [&](std::size_t i) {
    auto rng = make_stream(a.seed, "scene", i);
    return generate_scene(spec, rng(), frame_name(a.seed, i));
  });
  write_scenes(scenes, a.out);
  return kOk;
}

int cmd_augment(const AugmentArgs& a) {
  AugmentConfig cfg = augment_config_from_json(read_json_file(a.config));
  if (a.seed) cfg.seed = *a.seed;
  const auto in = read_scenes(a.in);
  const auto out = parallel_map<Scene>(in.size(), a.workers, [&](std::size_t i) {
    const AugmentDraw d = draw_augmentation(cfg, in[i].frame_id, i);
    Scene s = d.any() ? rotate_scene(in[i], d.rotation()) : in[i];
    s.metadata["augment.seed"] = std::to_string(cfg.seed);
    s.metadata["augment.draw_index"] = std::to_string(i);
    s.metadata["augment.pitch_rad"] = angle_text(d.pitch_rad);
    s.metadata["augment.roll_rad"] = angle_text(d.roll_rad);
    s.metadata["augment.yaw_rad"] = angle_text(d.yaw_rad);
    return s;
  });
  write_scenes(out, a.out);
  return kOk;
}

int cmd_project(const ProjectArgs& a) {
  double sigma = 0.0;
  if (a.config) {
    const Json j = read_json_file(*a.config);
    if (j.contains("noise_sigma")) sigma = j.at("noise_sigma").get<double>();
    if (!(sigma >= 0.0)) throw InvalidInput("noise_sigma must be >= 0");
  }
  const auto in = read_scenes(a.in);
  const auto out = parallel_map<FlatScene>(in.size(), a.workers, [&](std::size_t i) {
    FlatScene flat = project_scene_virtual_top(in[i]);
    return sigma > 0.0 ? add_flat_noise(flat, sigma, a.seed) : flat;
  });
  write_flat_scenes(out, a.out);
  return kOk;
}

int cmd_reconstruct(const ReconstructArgs& a) {
  const ReconstructOptions opts =
      a.config ? reconstruct_options_from_json(read_json_file(*a.config)) : ReconstructOptions{};
  if (a.h_cam && !(*a.h_cam > 0.0)) throw InvalidInput("--h-cam must be > 0");
  if (a.trace_dir) ensure_dir(*a.trace_dir);
  const auto in = read_flat_scenes(a.in);
  const auto out = parallel_map<Scene>(in.size(), a.workers, [&](std::size_t i) {
    const FlatScene& flat = in[i];
    Scene s;
    s.frame_id = flat.frame_id;
    s.camera = flat.camera;
    if (a.h_cam) s.camera.height_m = *a.h_cam;
    s.metadata = flat.metadata;
    const Reconstruction rec = reconstruct_iterative(flat.lanes, s.camera.height_m, opts);
    s.lanes = rec.lanes;
    bool clamped = false;
    for (std::size_t k = 0; k < rec.lanes.size(); ++k) {
      s.metadata["reconstruct.status." + rec.lanes[k].id] = to_string(rec.status[k]);
      clamped = clamped || rec.status[k] == LaneStatus::kClamped;
      if (rec.status[k] == LaneStatus::kNoPairing) {
        std::cerr << flat.frame_id << ": lane " << rec.lanes[k].id << " has no pairing\n";
      }
    }
    s.metadata["reconstruct.clamped"] = clamped ? "true" : "false";
    s.metadata["reconstruct.lambda_geo"] = Json(opts.lambda_geo).dump();
    if (a.trace_dir) {
      for (const auto& solve : rec.solves) {
        if (!solve.paired) continue;
        std::string csv = "iter,J,step\n";
        for (const auto& row : solve.descent.trace) {
          csv += std::to_string(row.iter) + "," + Json(row.objective).dump() + "," + Json(row.step).dump() + "\n";
        }
        write_text(*a.trace_dir / (file_stem(flat.frame_id + "_" + solve.left_id + "_" + solve.right_id) + ".csv"),
                   csv);
      }
    }
    return s;
  });
  write_scenes(out, a.out);
  return kOk;
}

int cmd_evaluate(const EvaluateArgs& a) {
  const MatchConfig cfg = a.config ? match_config_from_json(read_json_file(*a.config)) : MatchConfig{};
  const auto gt = read_scenes(a.gt);
  std::vector<EvalReport> reports;
  reports.push_back(evaluate(gt, read_scenes(a.pred), cfg));
  for (const auto& p : a.joint) reports.push_back(evaluate(gt, read_scenes(p), cfg));

  Json j = to_json(reports.front());
  j["config"] = to_json(cfg);
  if (!a.joint.empty()) {
    const JointErrors joint = joint_offset_errors(reports);
    Json methods = Json::array();
    for (std::size_t k = 0; k < reports.size(); ++k) {
      Json m;
      m["pred"] = (k == 0 ? a.pred : a.joint[k - 1]).string();
      m["f_score"] = reports[k].f_score;
      m["ap"] = reports[k].ap;
      const Json errors = to_json(joint.per_method[k]);
      for (const auto& [key, v] : errors.items()) m[key] = v;
      methods.push_back(m);
    }
    j["joint"] = {{"shared_lanes", joint.shared},
                  {"empty_intersection", joint.empty_intersection},
                  {"methods", methods}};
  }
  write_json_file(j, a.out);
  if (a.csv) write_text(*a.csv, per_frame_csv(reports.front()));
  return kOk;
}

int cmd_plot(const PlotArgs& a) {
  if (!a.in && !a.report) throw InvalidInput("plot needs --in or --report");
  ensure_dir(a.out);
  if (a.in) {
    const auto gt = read_scenes(*a.in);
    std::map<std::string, Scene> pred;
    if (a.pred) {
      for (auto& s : read_scenes(*a.pred)) pred.emplace(s.frame_id, std::move(s));
    }
    for (const auto& s : gt) {
      std::optional<Scene> p;
      if (auto it = pred.find(s.frame_id); it != pred.end()) p = it->second;
      write_text(a.out / (file_stem(s.frame_id) + ".svg"), render_scene_svg(s, p));
    }
  }
  if (a.report) {
    const Json j = read_json_file(*a.report);
    EvalReport r;
    r.f_score = j.at("f_score").get<double>();
    r.ap = j.at("ap").get<double>();
    r.offsets.x_near = j.at("x_err_near").get<double>();
    r.offsets.x_far = j.at("x_err_far").get<double>();
    r.offsets.z_near = j.at("z_err_near").get<double>();
    r.offsets.z_far = j.at("z_err_far").get<double>();
    write_text(a.out / "report.svg", render_report_svg(r));
  }
  return kOk;
}

int cmd_mask(const MaskArgs& a) {
  const MaskGeometry g = a.config ? mask_geometry_from_json(read_json_file(*a.config)) : MaskGeometry{};
  ensure_dir(a.out);
  for (const auto& s : read_scenes(a.in)) {
    write_mask(rasterize_top_mask(s, g), a.out / (file_stem(s.frame_id) + ".pgm"));
  }
  return kOk;
}

}  // namespace lanegeo::tools
