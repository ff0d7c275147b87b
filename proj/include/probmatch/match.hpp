#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "json.hpp"
#include "probmatch/depth.hpp"
#include "probmatch/geometry.hpp"
#include "probmatch/planner.hpp"
#include "probmatch/votes.hpp"

namespace probmatch {

/// Invalid or contradictory pipeline options.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Planned vote counts above this are refused unless overridden.
inline constexpr double kMaxPlannedVotes = 1e8;

struct MatchOptions {
  VoteMode mode = VoteMode::translation;
  double epsilon = 0.1;
  double tau = 0.1;
  std::optional<double> kappa;
  bool relative = false;
  std::optional<std::size_t> n_votes;
  std::optional<double> delta;
  DepthMethod depth = DepthMethod::exact;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::optional<double> oracle_step;
};

struct MatchTimings {
  double sampling_ms = 0.0;  // area-index construction
  double voting_ms = 0.0;
  double depth_ms = 0.0;
  double oracle_ms = 0.0;
};

struct OracleComparison {
  double step = 0.0;
  Transform best;
  double grid_overlap = 0.0;
  /// Best known lower bound on the optimum: max(grid optimum, result overlap).
  double optimum = 0.0;
  double gap = 0.0;
};

struct MatchReport {
  VoteMode mode = VoteMode::translation;
  std::uint64_t seed = 0;
  MatchPlan plan;
  std::size_t n_votes = 0;
  bool n_votes_override = false;
  double delta = 0.0;
  bool delta_override = false;
  std::uint64_t attempted = 0;
  std::uint64_t rejected = 0;
  DepthResult result;
  /// depth / (N * box volume)
  double density = 0.0;
  double overlap = 0.0;
  double symmetric_difference = 0.0;
  std::optional<OracleComparison> oracle;
  MatchTimings timings;
};

/// Plans, samples, votes and clusters. When `votes_csv` is given the vote
/// cloud is written there. Throws UsageError, ShapeError or StarvationError.
MatchReport run_match(const TriangleSoup& a, const TriangleSoup& b, const MatchOptions& options,
                      std::ostream* votes_csv = nullptr);

nlohmann::json to_json(const Transform& t);
nlohmann::json to_json(const MatchPlan& plan);
nlohmann::json to_json(const ShapeStats& stats);
/// Timing fields live under "timings_ms"; everything else is a pure function
/// of the inputs and the seed.
nlohmann::json to_json(const MatchReport& report);

}  // namespace probmatch
