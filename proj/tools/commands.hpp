#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace lanegeo::tools {

namespace fs = std::filesystem;

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kIoError = 3 };

struct GenerateArgs {
  fs::path config;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  fs::path out;
  unsigned workers = 1;
};

struct AugmentArgs {
  fs::path in;
  fs::path config;
  std::optional<std::uint64_t> seed;
  fs::path out;
  unsigned workers = 1;
};

struct ProjectArgs {
  fs::path in;
  std::optional<fs::path> config;
  std::uint64_t seed = 0;
  fs::path out;
  unsigned workers = 1;
};

struct ReconstructArgs {
  fs::path in;
  std::optional<fs::path> config;
  std::optional<double> h_cam;
  fs::path out;
  std::optional<fs::path> trace_dir;
  unsigned workers = 1;
};

struct EvaluateArgs {
  fs::path gt;
  fs::path pred;
  std::optional<fs::path> config;
  fs::path out;
  std::vector<fs::path> joint;
  std::optional<fs::path> csv;
};

struct PlotArgs {
  std::optional<fs::path> in;
  std::optional<fs::path> pred;
  std::optional<fs::path> report;
  fs::path out;
};

struct MaskArgs {
  fs::path in;
  std::optional<fs::path> config;
  fs::path out;
};

int cmd_generate(const GenerateArgs& a);
int cmd_augment(const AugmentArgs& a);
int cmd_project(const ProjectArgs& a);
int cmd_reconstruct(const ReconstructArgs& a);
int cmd_evaluate(const EvaluateArgs& a);
int cmd_plot(const PlotArgs& a);
int cmd_mask(const MaskArgs& a);

/// Frame id made safe for use as a file name.
std::string file_stem(const std::string& frame_id);

}  // namespace lanegeo::tools
