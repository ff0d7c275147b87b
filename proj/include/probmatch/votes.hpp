#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "probmatch/geometry.hpp"
#include "probmatch/random.hpp"
#include "probmatch/sampling.hpp"

namespace probmatch {

/// Which random experiment generates the votes.
///   translation: b - a for a in A, b in B
///   rmra:        random angle, then the motion mapping a onto b
///   rm31:        three points plus a random direction, rejection on b2 not in B
enum class VoteMode { translation, rmra, rm31 };

std::string_view to_string(VoteMode mode);
/// Parses "t", "rmra" or "rm31".
VoteMode parse_vote_mode(std::string_view name);
inline bool is_rigid(VoteMode mode) { return mode != VoteMode::translation; }

/// Thrown when the rm31 experiment produces no accepted vote within its cap.
class StarvationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct VoteCloud {
  VoteMode mode = VoteMode::translation;
  std::vector<Transform> votes;
  std::uint64_t attempted = 0;
  std::uint64_t rejected = 0;

  std::size_t size() const { return votes.size(); }
};

struct TranslationExperiment {
  Point2 a, b;
  Translation vote;
};

struct RmraExperiment {
  Point2 a, b;
  RigidMotion vote;
};

struct Rm31Experiment {
  Point2 a1, a2, b1, b2;
  std::optional<RigidMotion> vote;  // empty when rejected
};

TranslationExperiment run_translation_experiment(const AreaIndex& a, const AreaIndex& b, RandomSource& rng);
RmraExperiment run_rmra_experiment(const AreaIndex& a, const AreaIndex& b, RandomSource& rng);
Rm31Experiment run_rm31_experiment(const AreaIndex& a, const AreaIndex& b, RandomSource& rng);

inline Translation vote_translation(const AreaIndex& a, const AreaIndex& b, RandomSource& rng) {
  return run_translation_experiment(a, b, rng).vote;
}
inline RigidMotion vote_rmra(const AreaIndex& a, const AreaIndex& b, RandomSource& rng) {
  return run_rmra_experiment(a, b, rng).vote;
}
/// Membership of b2 is tested against b.soup().
inline std::optional<RigidMotion> vote_rm31(const AreaIndex& a, const AreaIndex& b, RandomSource& rng) {
  return run_rm31_experiment(a, b, rng).vote;
}

/// Attempt cap for rm31 before giving up when nothing was accepted.
std::uint64_t rm31_attempt_cap(std::size_t n);

/// Runs experiment i on stream (seed, i). For translation and rmra the cloud
/// holds exactly n votes; for rm31 it holds the first n accepted votes in
/// attempt order. The result does not depend on `threads`.
VoteCloud generate_cloud(VoteMode mode, const AreaIndex& a, const AreaIndex& b, std::size_t n,
                         std::uint64_t seed, unsigned threads = 1);
VoteCloud generate_cloud(VoteMode mode, const TriangleSoup& a, const TriangleSoup& b, std::size_t n,
                         std::uint64_t seed, unsigned threads = 1);

/// Votes as rows: (tx, ty) for translation clouds, (alpha, tx, ty) otherwise.
Eigen::MatrixXd vote_coordinates(const VoteCloud& cloud);

/// CSV with header `mode,alpha,tx,ty`, 17 significant digits.
void write_votes_csv(std::ostream& os, const VoteCloud& cloud);

}  // namespace probmatch
