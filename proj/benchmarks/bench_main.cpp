#include <random>

#include <benchmark/benchmark.h>

#include "lanegeo/evaluate.hpp"
#include "lanegeo/pairing.hpp"
#include "lanegeo/projection.hpp"
#include "lanegeo/reconstruct.hpp"
#include "lanegeo/synth.hpp"

using namespace lanegeo;

namespace {

// Rising road, crest past the far end so nothing folds in the top view.
RoadSpec hill_spec(double y_end) {
  RoadSpec spec;
  spec.height = HillProfile{20.0, 2.0 * y_end, 0.8};
  spec.y_end = y_end;
  return spec;
}

Lane3D as_flat_3d(const Lane2D& l) {
  Lane3D out;
  out.id = l.id;
  out.visibility = l.visibility;
  for (const auto& p : l.points) out.points.push_back({p.x, p.y, 0.0});
  return out;
}

void BM_ProjectLift(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.5);
  std::vector<Point3D> pts(4096);
  for (auto& p : pts) p = {u(rng) * 10, 5 + 60 * (u(rng) + 1), u(rng)};
  for (auto _ : state) {
    double acc = 0.0;
    for (const auto& p : pts) acc += lift_from_virtual_top(project_virtual_top(p, 1.78), p.z, 1.78).x;
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pts.size()));
}
BENCHMARK(BM_ProjectLift);

void BM_MatchPointPairs(benchmark::State& state) {
  const Scene s = generate_scene(hill_spec(static_cast<double>(state.range(0))), 0, "b");
  const FlatScene f = project_scene_virtual_top(s);
  const Lane3D a = as_flat_3d(f.lanes[0]);
  const Lane3D b = as_flat_3d(f.lanes[1]);
  for (auto _ : state) benchmark::DoNotOptimize(match_point_pairs(a, b));
}
BENCHMARK(BM_MatchPointPairs)->Arg(100)->Arg(200);

void BM_ReconstructIterative(benchmark::State& state) {
  const Scene s = generate_scene(hill_spec(static_cast<double>(state.range(0))), 0, "b");
  const FlatScene f = add_flat_noise(project_scene_virtual_top(s), 0.05, 3);
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct_iterative(f.lanes, 1.78));
}
BENCHMARK(BM_ReconstructIterative)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_MatchLanes(benchmark::State& state) {
  RoadSpec spec = hill_spec(100.0);
  spec.num_boundaries = static_cast<int>(state.range(0));
  const Scene gt = generate_scene(spec, 0, "b");
  Scene pred = gt;
  for (auto& l : pred.lanes)
    for (auto& p : l.points) p.x += 0.2;
  const MatchConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(match_lanes(gt.lanes, pred.lanes, cfg));
}
BENCHMARK(BM_MatchLanes)->Arg(2)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
