#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "lanegeo/errors.hpp"

namespace {

using namespace lanegeo::tools;

unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lanegeo: synthetic 3D lane geometry toolkit"};
  app.require_subcommand(1);

  GenerateArgs gen;
  gen.workers = default_workers();
  auto* g = app.add_subcommand("generate", "Generate synthetic scenes from a road spec");
  g->add_option("--config", gen.config, "Road spec JSON")->required()->check(CLI::ExistingFile);
  g->add_option("--count", gen.count, "Number of scenes")->required();
  g->add_option("--seed", gen.seed, "Random seed");
  g->add_option("--out", gen.out, "Output scenes (JSON lines)")->required();
  g->add_option("--workers", gen.workers, "Worker threads")->check(CLI::PositiveNumber);

  AugmentArgs aug;
  aug.workers = default_workers();
  auto* au = app.add_subcommand("augment", "Apply random pitch/roll/yaw rotations");
  au->add_option("--in", aug.in, "Input scenes")->required()->check(CLI::ExistingFile);
  au->add_option("--config", aug.config, "Augmentation config JSON")->required()->check(CLI::ExistingFile);
  au->add_option("--seed", aug.seed, "Override the config seed");
  au->add_option("--out", aug.out, "Output scenes")->required();
  au->add_option("--workers", aug.workers, "Worker threads")->check(CLI::PositiveNumber);

  ProjectArgs proj;
  proj.workers = default_workers();
  auto* pr = app.add_subcommand("project", "Project 3D scenes onto the virtual top view");
  pr->add_option("--in", proj.in, "Input scenes")->required()->check(CLI::ExistingFile);
  pr->add_option("--config", proj.config, "JSON with optional noise_sigma")->check(CLI::ExistingFile);
  pr->add_option("--seed", proj.seed, "Noise seed");
  pr->add_option("--out", proj.out, "Output flat scenes")->required();
  pr->add_option("--workers", proj.workers, "Worker threads")->check(CLI::PositiveNumber);

  ReconstructArgs rec;
  rec.workers = default_workers();
  auto* re = app.add_subcommand("reconstruct", "Recover 3D lanes from flat-ground lanes");
  re->add_option("--in", rec.in, "Input flat scenes")->required()->check(CLI::ExistingFile);
  re->add_option("--config", rec.config, "Solver options JSON")->check(CLI::ExistingFile);
  re->add_option("--h-cam", rec.h_cam, "Camera height override (m)");
  re->add_option("--out", rec.out, "Output scenes")->required();
  re->add_option("--trace", rec.trace_dir, "Directory for solver trace CSVs");
  re->add_option("--workers", rec.workers, "Worker threads")->check(CLI::PositiveNumber);

  EvaluateArgs ev;
  auto* e = app.add_subcommand("evaluate", "Score predicted lanes against ground truth");
  e->add_option("--gt", ev.gt, "Ground-truth scenes")->required()->check(CLI::ExistingFile);
  e->add_option("--pred,--in", ev.pred, "Predicted scenes")->required()->check(CLI::ExistingFile);
  e->add_option("--config", ev.config, "Match config JSON")->check(CLI::ExistingFile);
  e->add_option("--out", ev.out, "Report JSON")->required();
  e->add_option("--joint", ev.joint, "Further prediction files for the joint metric")->check(CLI::ExistingFile);
  e->add_option("--csv", ev.csv, "Per-frame CSV");

  PlotArgs plot;
  auto* p = app.add_subcommand("plot", "Render scenes or a report as SVG");
  p->add_option("--in", plot.in, "Scenes (drawn in blue)")->check(CLI::ExistingFile);
  p->add_option("--pred", plot.pred, "Predicted scenes (drawn in red)")->check(CLI::ExistingFile);
  p->add_option("--report", plot.report, "Report JSON")->check(CLI::ExistingFile);
  p->add_option("--out", plot.out, "Output directory")->required();

  MaskArgs mask;
  auto* m = app.add_subcommand("mask", "Rasterize top-view lane masks as PGM");
  m->add_option("--in", mask.in, "Input scenes")->required()->check(CLI::ExistingFile);
  m->add_option("--config", mask.config, "Mask geometry JSON")->check(CLI::ExistingFile);
  m->add_option("--out", mask.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*g) return cmd_generate(gen);
    if (*au) return cmd_augment(aug);
    if (*pr) return cmd_project(proj);
    if (*re) return cmd_reconstruct(rec);
    if (*e) return cmd_evaluate(ev);
    if (*p) return cmd_plot(plot);
    if (*m) return cmd_mask(mask);
  } catch (const lanegeo::IoError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kIoError;
  } catch (const lanegeo::Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kDataError;
  } catch (const nlohmann::json::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kDataError;
  }
  return kUsage;
}
