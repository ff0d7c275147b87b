// probmatch: match two planar shapes by maximizing their area of overlap.
//
//   probmatch match --mode t --n-votes 50000 --delta 0.05 --seed 7 a.json b.json
//   probmatch stats a.json
//   probmatch oracle --mode t --step 0.01 a.json b.json
//   probmatch triangulate polygon.json -o soup.json
//   probmatch plan --mode rmra --epsilon 0.1 --tau 0.05 a.json b.json
//
// Exit codes: 0 ok, 1 unexpected error, 2 invalid shape, 3 rm31 starvation,
// 4 conflicting or unusable options.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "probmatch/match.hpp"
#include "probmatch/oracle.hpp"
#include "probmatch/planner.hpp"
#include "probmatch/shape_io.hpp"

using namespace probmatch;

namespace {

constexpr int kExitShape = 2;
constexpr int kExitStarved = 3;
constexpr int kExitUsage = 4;

void print(const nlohmann::json& j) { std::cout << j.dump(2) << '\n'; }

void warn_if_impractical(const MatchPlan& p) {
  if (p.votes_needed > kMaxPlannedVotes)
    std::cerr << "warning: planned vote count " << p.votes_needed << " exceeds " << kMaxPlannedVotes
              << " (the bound is conservative)\n";
}

const auto kModeNames = CLI::IsMember({"t", "rmra", "rm31"}, CLI::ignore_case);

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probabilistic shape matching by area of overlap"};
  app.require_subcommand(1);

  // match
  auto* match = app.add_subcommand("match", "Sample votes, cluster them and report the best transformation");
  MatchOptions mo;
  std::string match_mode = "t";
  std::string match_a, match_b, emit_votes, depth_method = "exact";
  match->add_option("--mode", match_mode, "Random experiment: t, rmra or rm31")->transform(kModeNames);
  match->add_option("--epsilon", mo.epsilon, "Absolute error bound as a fraction of |A|");
  match->add_option("--tau", mo.tau, "Allowed failure probability");
  auto* kappa_opt = match->add_option("--kappa", "Fatness constant (rm31; default: estimated from the shapes)");
  match->add_flag("--relative", mo.relative, "Plan for a relative error bound");
  auto* n_opt = match->add_option("--n-votes", "Override the planned vote count");
  auto* delta_opt = match->add_option("--delta", "Override the planned neighbourhood half-width");
  match->add_option("--depth", depth_method, "Depth method")->check(CLI::IsMember({"exact", "approx"}));
  match->add_option("--seed", mo.seed, "Random seed");
  match->add_option("--threads", mo.threads, "Vote-generation threads")->check(CLI::PositiveNumber);
  match->add_option("--emit-votes", emit_votes, "Write the vote cloud as CSV");
  auto* oracle_step_opt = match->add_option("--oracle-step", "Also run the grid oracle with this step");
  match->add_option("a", match_a, "Shape A (JSON)")->required()->check(CLI::ExistingFile);
  match->add_option("b", match_b, "Shape B (JSON)")->required()->check(CLI::ExistingFile);

  // stats
  auto* stats = app.add_subcommand("stats", "Area, boundary length, diameter and fatness of a shape");
  std::string stats_path;
  int kappa_resolution = 200;
  stats->add_option("shape", stats_path, "Shape (JSON)")->required()->check(CLI::ExistingFile);
  stats->add_option("--kappa-resolution", kappa_resolution, "Grid resolution for the fatness estimate")
      ->check(CLI::PositiveNumber);

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Brute-force grid search for the maximum overlap");
  std::string oracle_mode = "t";
  GridSpec spec;
  unsigned oracle_threads = 1;
  std::string oracle_a, oracle_b;
  oracle->add_option("--mode", oracle_mode, "t searches translations; rmra/rm31 search rigid motions")
      ->transform(kModeNames);
  oracle->add_option("--step", spec.translation_step, "Translation step")->check(CLI::PositiveNumber);
  oracle->add_option("--angle-step", spec.angle_step, "Angle step in revolutions (default from the diameter)");
  oracle->add_option("--threads", oracle_threads, "Worker threads")->check(CLI::PositiveNumber);
  oracle->add_option("a", oracle_a, "Shape A (JSON)")->required()->check(CLI::ExistingFile);
  oracle->add_option("b", oracle_b, "Shape B (JSON)")->required()->check(CLI::ExistingFile);

  // triangulate
  auto* tri = app.add_subcommand("triangulate", "Convert a polygon shape file into triangles");
  std::string tri_in, tri_out;
  tri->add_option("shape", tri_in, "Shape (JSON)")->required()->check(CLI::ExistingFile);
  tri->add_option("-o,--output", tri_out, "Output file (default: stdout)");

  // plan
  auto* plan = app.add_subcommand("plan", "Evaluate the parameter formulas without running");
  std::string plan_mode_name = "t";
  double plan_eps = 0.1, plan_tau = 0.1;
  bool plan_relative = false;
  std::string plan_a, plan_b;
  plan->add_option("--mode", plan_mode_name, "t, rmra or rm31")->transform(kModeNames);
  plan->add_option("--epsilon", plan_eps, "Error bound");
  plan->add_option("--tau", plan_tau, "Failure probability");
  auto* plan_kappa_opt = plan->add_option("--kappa", "Fatness constant");
  plan->add_flag("--relative", plan_relative, "Relative error plan");
  plan->add_option("a", plan_a, "Shape A (JSON)")->required()->check(CLI::ExistingFile);
  plan->add_option("b", plan_b, "Shape B (JSON)")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*match) {
      if (*kappa_opt) mo.kappa = kappa_opt->as<double>();
      if (*n_opt) mo.n_votes = n_opt->as<std::size_t>();
      if (*delta_opt) mo.delta = delta_opt->as<double>();
      if (*oracle_step_opt) mo.oracle_step = oracle_step_opt->as<double>();
      mo.mode = parse_vote_mode(match_mode);
      mo.depth = depth_method == "approx" ? DepthMethod::approx : DepthMethod::exact;
      const TriangleSoup a = load_shape(match_a);
      const TriangleSoup b = load_shape(match_b);
      std::ofstream csv;
      if (!emit_votes.empty()) {
        csv.open(emit_votes);
        if (!csv) throw UsageError("cannot write " + emit_votes);
      }
      const MatchReport report = run_match(a, b, mo, emit_votes.empty() ? nullptr : &csv);
      warn_if_impractical(report.plan);
      print(to_json(report));
    } else if (*stats) {
      const TriangleSoup a = load_shape(stats_path);
      nlohmann::json j = to_json(shape_stats(a));
      j["triangles"] = a.size();
      const InscribedCircle c = largest_inscribed_circle(a, kappa_resolution);
      j["inscribed_circle"] = {{"x", c.center.x()}, {"y", c.center.y()}, {"radius", c.radius}};
      j["kappa"] = estimate_kappa(a, kappa_resolution);
      print(j);
    } else if (*oracle) {
      const TriangleSoup a = load_shape(oracle_a);
      const TriangleSoup b = load_shape(oracle_b);
      const VoteMode mode = parse_vote_mode(oracle_mode);
      const GridResult g = grid_search(a, b, mode, spec, oracle_threads);
      print({{"mode", std::string(to_string(mode))},
             {"step", spec.translation_step},
             {"transform", to_json(g.best)},
             {"overlap", g.overlap},
             {"evaluated", g.evaluated}});
    } else if (*tri) {
      const TriangleSoup soup = load_shape(tri_in);
      const std::string text = shape_to_json(soup).dump(2) + "\n";
      if (tri_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(tri_out);
        if (!out) throw UsageError("cannot write " + tri_out);
        out << text;
      }
    } else if (*plan) {
      const VoteMode plan_mode = parse_vote_mode(plan_mode_name);
      const TriangleSoup a = load_shape(plan_a);
      const TriangleSoup b = load_shape(plan_b);
      std::optional<double> kappa;
      if (*plan_kappa_opt) kappa = plan_kappa_opt->as<double>();
      if (!kappa && (plan_mode == VoteMode::rm31 || plan_relative))
        kappa = std::min(estimate_kappa(a), estimate_kappa(b));
      MatchPlan p;
      try {
        p = make_plan(plan_mode, shape_stats(a), shape_stats(b), plan_eps, plan_tau, kappa, plan_relative);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      warn_if_impractical(p);
      print(to_json(p));
    }
  } catch (const ShapeError& e) {
    std::cerr << "invalid shape: " << e.what() << '\n';
    return kExitShape;
  } catch (const StarvationError& e) {
    std::cerr << e.what() << '\n';
    return kExitStarved;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
