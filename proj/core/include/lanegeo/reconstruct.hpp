#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lanegeo/losses.hpp"
#include "lanegeo/pairing.hpp"
#include "lanegeo/scene_io.hpp"
#include "lanegeo/types.hpp"

namespace lanegeo {

/// Matched points of two boundaries on the flat ground.
struct FlatPoint2Pair {
  Point2D left;
  Point2D right;
};

/// Height of each pair from its flat width, assuming both points share a
/// height and the true 3D width is `true_width`:
///   D_flat = h / (h - z) * c   =>   z = h * (1 - c / D_flat).
/// Throws DegeneratePair when D_flat <= 1e-9.
std::vector<double> reconstruct_closed_form(std::span<const FlatPoint2Pair> pairs,
                                            double true_width, double h_cam);

struct ReconstructOptions {
  int max_iters = 5000;
  double step = 0.05;
  double tol = 1e-14;
  double lambda_geo = 1e-2;
  /// Width form fed to the geometry prior inside the solver.
  D2Form d2_form = D2Form::kRawCoordinates;
  PairingConfig pairing;
  /// Test-only: start from uniform random heights in [-0.5, 0.5] instead of
  /// the closed form.
  bool random_init = false;
  std::uint64_t init_seed = 0;
};

void validate(const ReconstructOptions& opts);
ReconstructOptions reconstruct_options_from_json(const Json& j);

/// J(z) = sum_pairs (D_3D(z) - c_hat)^2 + lambda_geo * L_geo(z) for one pair of
/// neighbouring boundaries. Variables are laid out as [z_left..., z_right...].
class PairObjective {
 public:
  PairObjective(FlatPairs pairs, double c_hat, double lambda_geo, D2Form form);

  std::size_t size() const { return pairs_.left.size(); }
  double c_hat() const { return c_hat_; }
  const FlatPairs& pairs() const { return pairs_; }

  double value(std::span<const double> z) const;
  /// Writes dJ/dz into grad (same length as z) and returns J.
  double value_and_gradient(std::span<const double> z, std::span<double> grad) const;
  /// Both boundaries at the closed-form height for c_hat.
  std::vector<double> closed_form_start() const;

 private:
  FlatPairs pairs_;
  double c_hat_;
  double lambda_geo_;
  D2Form form_;
};

struct TraceRow {
  int iter = 0;
  double objective = 0.0;
  double step = 0.0;
};

struct DescentResult {
  std::vector<double> z;
  double initial_objective = 0.0;
  double objective = 0.0;
  int iterations = 0;
  bool diverged = false;
  bool clamped = false;
  std::vector<TraceRow> trace;
};

/// Gradient descent with backtracking (step halved on increase, at most 20
/// halvings; doubled after an accepted step). Accepted steps never increase
/// J. Heights are kept at or below h_cam - 1e-6.
DescentResult minimize_pair(const PairObjective& objective, std::vector<double> start,
                            const ReconstructOptions& opts);

enum class LaneStatus { kOk, kNoPairing, kDiverged, kClamped };
std::string to_string(LaneStatus s);

struct PairSolve {
  std::string left_id;
  std::string right_id;
  bool paired = false;
  double c_hat = 0.0;
  DescentResult descent;
};

struct Reconstruction {
  std::vector<Lane3D> lanes;
  /// Solved height of every input flat point, before lifting.
  std::vector<std::vector<double>> heights;
  std::vector<LaneStatus> status;
  std::vector<PairSolve> solves;
};

/// Lifts flat-ground boundaries back to 3D. Boundaries are ordered by mean
/// x; each neighbouring pair is matched with match_point_pairs, c_hat is the
/// median flat width of the first three pairs (the near field is taken as
/// flat), heights start at the closed form and are refined by minimize_pair.
/// A boundary in two pairs takes the mean of both estimates; unmatched
/// points are interpolated in flat y. Boundaries with no accepted pairing
/// keep z = 0 and status kNoPairing.
Reconstruction reconstruct_iterative(std::span<const Lane2D> flat_lanes, double h_cam,
                                     const ReconstructOptions& opts = {});

}  // namespace lanegeo
