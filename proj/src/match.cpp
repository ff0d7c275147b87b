#include "probmatch/match.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "probmatch/oracle.hpp"
#include "probmatch/sampling.hpp"

namespace probmatch {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

MatchReport run_match(const TriangleSoup& a, const TriangleSoup& b, const MatchOptions& options,
                      std::ostream* votes_csv) {
  if (options.kappa && options.mode != VoteMode::rm31 && !options.relative)
    throw UsageError("--kappa only applies to rm31 or relative plans");
  if (options.n_votes && *options.n_votes == 0) throw UsageError("--n-votes must be at least 1");
  if (options.delta && !(*options.delta > 0.0)) throw UsageError("--delta must be positive");
  if (options.oracle_step && !(*options.oracle_step > 0.0)) throw UsageError("--oracle-step must be positive");

  const ShapeStats sa = shape_stats(a);
  const ShapeStats sb = shape_stats(b);
  std::optional<double> kappa = options.kappa;
  if (!kappa && (options.mode == VoteMode::rm31 || options.relative))
    kappa = std::min(estimate_kappa(a), estimate_kappa(b));

  MatchReport report;
  report.mode = options.mode;
  report.seed = options.seed;
  try {
    report.plan = make_plan(options.mode, sa, sb, options.epsilon, options.tau, kappa, options.relative);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  report.n_votes_override = options.n_votes.has_value();
  if (options.n_votes) {
    report.n_votes = *options.n_votes;
  } else {
    if (report.plan.votes_needed > kMaxPlannedVotes)
      throw UsageError("planned vote count " + std::to_string(report.plan.votes_needed) +
                       " is impractical; pass --n-votes (and usually --delta) to override");
    report.n_votes = static_cast<std::size_t>(report.plan.votes_needed);
  }
  report.delta_override = options.delta.has_value();
  report.delta = options.delta.value_or(report.plan.delta);

  DepthQuery query;
  query.delta = report.delta;
  query.angle_wrap = is_rigid(options.mode);
  if (query.angle_wrap && query.delta >= 0.25) throw UsageError("delta must be below 1/4 for rigid motions");

  auto start = Clock::now();
  const AreaIndex ia(a);
  const AreaIndex ib(b);
  report.timings.sampling_ms = ms_since(start);

  start = Clock::now();
  const VoteCloud cloud = generate_cloud(options.mode, ia, ib, report.n_votes, options.seed, options.threads);
  report.timings.voting_ms = ms_since(start);
  report.attempted = cloud.attempted;
  report.rejected = cloud.rejected;
  if (votes_csv) write_votes_csv(*votes_csv, cloud);

  start = Clock::now();
  report.result = deepest(cloud, query, options.depth);
  report.timings.depth_ms = ms_since(start);

  const double volume = is_rigid(options.mode) ? 8.0 * std::pow(query.delta, 3) : 4.0 * query.delta * query.delta;
  report.density = static_cast<double>(report.result.depth) / (static_cast<double>(cloud.size()) * volume);
  report.overlap = overlap_area(a, b, report.result.argmax);
  report.symmetric_difference = a.area() + b.area() - 2.0 * report.overlap;

  if (options.oracle_step) {
    start = Clock::now();
    const GridResult g = grid_search(a, b, options.mode, GridSpec{*options.oracle_step, 0.0}, options.threads);
    report.timings.oracle_ms = ms_since(start);
    OracleComparison o;
    o.step = *options.oracle_step;
    o.best = g.best;
    o.grid_overlap = g.overlap;
    o.optimum = std::max(g.overlap, report.overlap);
    o.gap = o.optimum - report.overlap;
    report.oracle = o;
  }
  return report;
}

nlohmann::json to_json(const Transform& t) {
  if (const auto* r = std::get_if<RigidMotion>(&t))
    return {{"kind", "rigid"}, {"alpha", r->alpha}, {"tx", r->offset.x()}, {"ty", r->offset.y()}};
  const auto& tr = std::get<Translation>(t);
  return {{"kind", "translation"}, {"tx", tr.offset.x()}, {"ty", tr.offset.y()}};
}

nlohmann::json to_json(const MatchPlan& plan) {
  nlohmann::json j{
      {"mode", std::string(to_string(plan.mode))},
      {"epsilon", plan.epsilon},
      {"effective_epsilon", plan.effective_epsilon},
      {"relative", plan.relative},
      {"tau", plan.tau},
      {"delta", plan.delta},
      {"eta", plan.eta},
      {"votes_needed", plan.votes_needed},
      {"constants",
       {{"area_a", plan.constants.area_a},
        {"area_b", plan.constants.area_b},
        {"boundary_a", plan.constants.boundary_a},
        {"diameter_a", plan.constants.diameter_a},
        {"complexity", plan.constants.complexity},
        {"lipschitz", plan.constants.lipschitz},
        {"lipschitz_is_bound", plan.constants.lipschitz_is_bound},
        {"mu_delta", plan.constants.mu_delta}}},
  };
  j["kappa"] = plan.kappa ? nlohmann::json(*plan.kappa) : nlohmann::json(nullptr);
  if (plan.acceptance_bound) j["acceptance_bound"] = *plan.acceptance_bound;
  if (plan.attempts_budget) j["attempts_budget"] = *plan.attempts_budget;
  j["exceeds_practical_limit"] = plan.votes_needed > kMaxPlannedVotes;
  return j;
}

nlohmann::json to_json(const ShapeStats& s) {
  return {{"area", s.area},
          {"boundary_length", s.boundary_length},
          {"diameter", s.diameter},
          {"bbox",
           {{"min_x", s.bbox.min().x()},
            {"min_y", s.bbox.min().y()},
            {"max_x", s.bbox.max().x()},
            {"max_y", s.bbox.max().y()}}}};
}

nlohmann::json to_json(const MatchReport& r) {
  nlohmann::json j{
      {"mode", std::string(to_string(r.mode))},
      {"seed", r.seed},
      {"plan", to_json(r.plan)},
      {"used",
       {{"n_votes", {{"value", r.n_votes}, {"override", r.n_votes_override}}},
        {"delta", {{"value", r.delta}, {"override", r.delta_override}}}}},
      {"votes", {{"accepted", r.n_votes}, {"attempted", r.attempted}, {"rejected", r.rejected}}},
      {"result",
       {{"transform", to_json(r.result.argmax)},
        {"depth", r.result.depth},
        {"method", std::string(to_string(r.result.method))},
        {"approx_factor", r.result.approx_factor},
        {"density", r.density},
        {"overlap", r.overlap},
        {"symmetric_difference", r.symmetric_difference}}},
      {"timings_ms",
       {{"sampling", r.timings.sampling_ms},
        {"voting", r.timings.voting_ms},
        {"depth", r.timings.depth_ms},
        {"oracle", r.timings.oracle_ms}}},
  };
  if (r.oracle) {
    j["oracle"] = {{"step", r.oracle->step},
                   {"transform", to_json(r.oracle->best)},
                   {"grid_overlap", r.oracle->grid_overlap},
                   {"optimum", r.oracle->optimum},
                   {"gap", r.oracle->gap}};
  }
  return j;
}

}  // namespace probmatch
