#include "probmatch/votes.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <thread>

namespace probmatch {

std::string_view to_string(VoteMode mode) {
  switch (mode) {
    case VoteMode::translation: return "t";
    case VoteMode::rmra: return "rmra";
    case VoteMode::rm31: return "rm31";
  }
  return "?";
}

VoteMode parse_vote_mode(std::string_view name) {
  if (name == "t") return VoteMode::translation;
  if (name == "rmra") return VoteMode::rmra;
  if (name == "rm31") return VoteMode::rm31;
  throw std::invalid_argument("unknown mode '" + std::string(name) + "' (expected t, rmra or rm31)");
}

TranslationExperiment run_translation_experiment(const AreaIndex& a, const AreaIndex& b, RandomSource& rng) {
  TranslationExperiment e;
  e.a = sample_point(a, rng);
  e.b = sample_point(b, rng);
  e.vote = Translation(e.b - e.a);
  return e;
}

RmraExperiment run_rmra_experiment(const AreaIndex& a, const AreaIndex& b, RandomSource& rng) {
  RmraExperiment e;
  e.a = sample_point(a, rng);
  e.b = sample_point(b, rng);
  const double alpha = rng.uniform() - 0.5;
  e.vote = RigidMotion(alpha, e.b - rotation(alpha) * e.a);
  return e;
}

Rm31Experiment run_rm31_experiment(const AreaIndex& a, const AreaIndex& b, RandomSource& rng) {
  Rm31Experiment e;
  e.a1 = sample_point(a, rng);
  e.a2 = sample_point(a, rng);
  e.b1 = sample_point(b, rng);
  const double beta = rng.uniform() - 0.5;
  const Point2 da = e.a2 - e.a1;
  e.b2 = e.b1 + da.norm() * (rotation(beta) * Point2::UnitX());
  if (da.x() == 0.0 && da.y() == 0.0) return e;
  if (!b.soup().contains(e.b2)) return e;
  const Point2 db = e.b2 - e.b1;
  const double turn = std::atan2(da.x() * db.y() - da.y() * db.x(), da.dot(db));
  const double alpha = wrap_angle(turn / (2.0 * std::numbers::pi));
  e.vote = RigidMotion(alpha, e.b1 - rotation(alpha) * e.a1);
  return e;
}

std::uint64_t rm31_attempt_cap(std::size_t n) {
  return std::max<std::uint64_t>(10'000'000ULL, 10'000ULL * static_cast<std::uint64_t>(n));
}

namespace {

template <typename Fn>
void parallel_for(std::uint64_t begin, std::uint64_t end, unsigned threads, Fn&& fn) {
  const std::uint64_t count = end - begin;
  threads = std::max(1u, threads);
  if (threads == 1 || count < 2 * threads) {
    fn(begin, end);
    return;
  }
  std::vector<std::thread> workers;
  const std::uint64_t chunk = (count + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    const std::uint64_t lo = begin + w * chunk;
    const std::uint64_t hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  for (auto& t : workers) t.join();
}

}  // namespace

VoteCloud generate_cloud(VoteMode mode, const TriangleSoup& a, const TriangleSoup& b, std::size_t n,
                         std::uint64_t seed, unsigned threads) {
  return generate_cloud(mode, AreaIndex(a), AreaIndex(b), n, seed, threads);
}

VoteCloud generate_cloud(VoteMode mode, const AreaIndex& ia, const AreaIndex& ib, std::size_t n,
                         std::uint64_t seed, unsigned threads) {
  if (n == 0) throw std::invalid_argument("vote count must be at least 1");
  VoteCloud cloud;
  cloud.mode = mode;

  if (mode != VoteMode::rm31) {
    cloud.votes.resize(n);
    parallel_for(0, n, threads, [&](std::uint64_t lo, std::uint64_t hi) {
      for (std::uint64_t i = lo; i < hi; ++i) {
        RandomSource rng(seed, i);
        if (mode == VoteMode::translation)
          cloud.votes[i] = run_translation_experiment(ia, ib, rng).vote;
        else
          cloud.votes[i] = run_rmra_experiment(ia, ib, rng).vote;
      }
    });
    cloud.attempted = n;
    return cloud;
  }

  // rm31: attempts are processed in fixed-size batches in index order; the
  // cloud is the first n acceptances, so the batch size and thread count
  // cannot change the result.
  const std::uint64_t cap = rm31_attempt_cap(n);
  std::uint64_t next = 0;
  std::vector<std::optional<RigidMotion>> batch;
  cloud.votes.reserve(n);
  while (cloud.votes.size() < n) {
    if (next >= cap && cloud.votes.empty())
      throw StarvationError("rm31: no accepted vote in " + std::to_string(next) +
                            " attempts; the shapes are too thin for 3+1 sampling");
    const std::uint64_t want = n - cloud.votes.size();
    const std::uint64_t size = std::clamp<std::uint64_t>(2 * want, 1024, 1u << 20);
    batch.assign(size, std::nullopt);
    parallel_for(0, size, threads, [&](std::uint64_t lo, std::uint64_t hi) {
      for (std::uint64_t i = lo; i < hi; ++i) {
        RandomSource rng(seed, next + i);
        batch[i] = run_rm31_experiment(ia, ib, rng).vote;
      }
    });
    for (std::uint64_t i = 0; i < size && cloud.votes.size() < n; ++i) {
      ++cloud.attempted;
      if (batch[i])
        cloud.votes.push_back(*batch[i]);
      else
        ++cloud.rejected;
    }
    next += size;
  }
  return cloud;
}

Eigen::MatrixXd vote_coordinates(const VoteCloud& cloud) {
  const Eigen::Index n = static_cast<Eigen::Index>(cloud.votes.size());
  if (cloud.mode == VoteMode::translation) {
    Eigen::MatrixXd m(n, 2);
    for (Eigen::Index i = 0; i < n; ++i) m.row(i) = std::get<Translation>(cloud.votes[i]).offset.transpose();
    return m;
  }
  Eigen::MatrixXd m(n, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = std::get<RigidMotion>(cloud.votes[i]);
    m.row(i) << r.alpha, r.offset.x(), r.offset.y();
  }
  return m;
}

void write_votes_csv(std::ostream& os, const VoteCloud& cloud) {
  const auto old_precision = os.precision(17);
  os << "mode,alpha,tx,ty\n";
  for (const auto& v : cloud.votes) {
    os << to_string(cloud.mode) << ',';
    if (const auto* r = std::get_if<RigidMotion>(&v))
      os << r->alpha << ',' << r->offset.x() << ',' << r->offset.y() << '\n';
    else {
      const auto& t = std::get<Translation>(v);
      os << ',' << t.offset.x() << ',' << t.offset.y() << '\n';
    }
  }
  os.precision(old_precision);
}

}  // namespace probmatch
