#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uq/demand.hpp"
#include "uq/fixtures.hpp"
#include "uq/report.hpp"
#include "uq/scenario_io.hpp"
#include "uq/schemes.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;

struct RunOutcome {
  uq::QueryTrace trace;
  bool infeasible = false;
  std::string note;
};

long long round_param(const uq::SchemeConfig& sc, const std::string& key,
                      double fallback) {
  return std::llround(sc.param(key, fallback));
}

RunOutcome run_scheme(const uq::ScenarioFile& sf) {
  const uq::Scenario& scn = sf.scenario;
  const uq::SchemeConfig& sc = sf.scheme;
  RunOutcome out;
  switch (sc.kind) {
    case uq::SchemeKind::ftt: {
      auto r = uq::run_ftt(scn, sc);
      out.trace = std::move(r.trace);
      out.infeasible = r.reached_cutoff;
      if (out.infeasible) out.note = "target time exhausted";
      return out;
    }
    case uq::SchemeKind::fwrr: {
      auto r = uq::run_fwrr(uq::configuration_at(scn, 0.0), sc, scn.horizon);
      out.trace = std::move(r.trace);
      return out;
    }
    case uq::SchemeKind::bucket_basic:
    case uq::SchemeKind::bucket_refined: {
      const double t0 = sc.param("t0", scn.horizon / 8.0);
      const uq::WarmStart warm = sc.param("lemma_init", 0.0) != 0.0
                                     ? uq::run_init(scn, sc, t0)
                                     : uq::oracle_init(scn, t0);
      if (!warm.certified) {
        out.infeasible = true;
        out.note = "warm start uncertified";
        for (const auto& d : warm.diagnostics) out.note += "; " + d;
        out.trace = warm.trace;
        return out;
      }
      const auto mode = sc.kind == uq::SchemeKind::bucket_basic
                            ? uq::BucketMode::basic
                            : uq::BucketMode::refined;
      auto r = uq::run_bucket(scn, sc, mode, warm, scn.horizon);
      out.trace = warm.trace;
      out.trace.events.insert(out.trace.events.end(), r.trace.events.begin(),
                              r.trace.events.end());
      out.trace.finalize();
      out.infeasible = r.aborted;
      out.note = r.abort_reason;
      return out;
    }
    case uq::SchemeKind::round_robin: {
      out.trace = uq::run_round_robin(scn.size(), sc.param("granularity", 1.0),
                                      sc.param("start", 0.0), scn.horizon);
      return out;
    }
    case uq::SchemeKind::clairvoyant: {
      const long long bx = round_param(sc, "beta_x", sc.beta * sc.x);
      if (sf.scheme.script == "pairs") {
        out.trace = uq::pairs_deadline_trace(
            scn.size(),
            scn.target_time.value_or(static_cast<double>(scn.size())));
      } else if (sf.scheme.script == "cluster") {
        const std::size_t n = scn.size();
        const std::size_t size_a = (n + 1) / 2;
        std::vector<std::vector<std::size_t>> groups(2);
        for (std::size_t i = 0; i < n; ++i)
          groups[i < size_a ? 0 : 1].push_back(i);
        out.trace = uq::cluster_ply_maintainer(
            groups, static_cast<std::size_t>(bx + 1),
            2.0 * (1.0 + static_cast<double>(bx)), scn.horizon);
      } else if (sf.scheme.script == "reversal") {
        const std::size_t per_side = scn.size() / 2;
        std::vector<std::size_t> specials;
        for (long long i = 0; i <= bx; ++i) {
          specials.push_back(i);
          specials.push_back(per_side + i);
        }
        out.trace = uq::reversal_clairvoyant(scn.size(), specials, scn.horizon);
      } else {
        throw std::runtime_error("unknown clairvoyant script '" +
                                 sf.scheme.script + "'");
      }
      return out;
    }
  }
  throw std::logic_error("unhandled scheme kind");
}

int validate_or_report(const uq::Scenario& scn) {
  const auto violations = uq::validate(scn);
  for (const auto& v : violations) std::cerr << "invalid scenario: " << v.what << "\n";
  return violations.empty() ? 0 : kExitValidation;
}

std::string out_dir_default() {
  const char* env = std::getenv("UQSIM_OUT");
  return env ? env : ".";
}

int cmd_run(const std::string& path, std::string out_dir, bool svg) {
  const uq::ScenarioFile sf = uq::load_scenario(path);
  if (int rc = validate_or_report(sf.scenario)) return rc;
  const RunOutcome ro = run_scheme(sf);
  std::filesystem::create_directories(out_dir);
  uq::write_file(out_dir + "/trace.csv", uq::trace_csv(ro.trace));
  const uq::CongestionReport rep =
      uq::build_report(sf.scenario, ro.trace, sf.scheme, sf.report);
  uq::write_file(out_dir + "/report.csv", uq::report_csv(rep));
  uq::write_file(out_dir + "/windows.csv", uq::windows_csv(rep));
  if (svg) uq::write_file(out_dir + "/report.svg", uq::report_svg(rep));
  for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
  if (ro.infeasible) {
    std::cerr << "scheme infeasible: " << ro.note << "\n";
    return kExitInfeasible;
  }
  std::cout << ro.trace.events.size() << " queries, min granularity "
            << ro.trace.min_granularity() << "\n";
  return 0;
}

int cmd_measure(const std::string& path, int x, double w0, double w1) {
  const uq::ScenarioFile sf = uq::load_scenario(path);
  if (int rc = validate_or_report(sf.scenario)) return rc;
  const uq::Scenario& scn = sf.scenario;
  if (x <= 0) x = sf.scheme.x;
  if (w1 <= w0) {
    w0 = 0.0;
    w1 = scn.horizon;
  }
  const uq::Configuration cfg0 = uq::configuration_at(scn, w0);
  std::cout << "phi_stationary(" << w0 << ") = " << uq::phi_stationary(cfg0, x)
            << "\n";
  std::cout << "phi_integral([" << w0 << ", " << w1
            << "]) = " << uq::phi_integral(scn, x, w0, w1) << "\n";
  if (scn.size() <= 8) {
    const auto g = uq::gamma_fixed_target(cfg0, x, sf.scheme.measure);
    std::cout << "gamma = " << g.gamma << (g.exact ? " (exact)" : " (greedy)")
              << "\n";
  }
  if (2 * x <= static_cast<int>(scn.size()) - 1)
    std::cout << "mu = " << uq::mu_uniformity(scn, x, w0, w1) << "\n";
  return 0;
}

int cmd_fixture(const std::string& name, const std::string& out_path,
                std::size_t n, int x, double beta, std::uint64_t seed, int dim,
                double density, bool mobile) {
  uq::Fixture fx;
  uq::SchemeConfig sc;
  sc.x = x;
  sc.beta = beta;
  if (name == "pairs") {
    fx = uq::gen_pairs_fixture(n);
    sc.kind = uq::SchemeKind::clairvoyant;
    sc.script = "pairs";
  } else if (name == "cluster") {
    fx = uq::gen_cluster_fixture(x, beta);
    sc.kind = uq::SchemeKind::clairvoyant;
    sc.script = "cluster";
  } else if (name == "reversal") {
    fx = uq::gen_reversal_fixture(x, beta);
    sc.kind = uq::SchemeKind::clairvoyant;
    sc.script = "reversal";
  } else if (name == "random") {
    fx = uq::gen_random(seed, n, dim, density, mobile);
    sc.kind = uq::SchemeKind::fwrr;
  } else {
    std::cerr << "unknown fixture '" << name
              << "' (pairs, cluster, reversal, random)\n";
    return kExitUsage;
  }
  sc.params["beta_x"] = beta * x;
  uq::ScenarioFile sf;
  sf.scenario = fx.scenario;
  sf.scheme = sc;
  uq::save_scenario(sf, out_path);
  for (const auto& [k, v] : fx.expectations)
    std::cout << k << " = " << v << "\n";
  for (const auto& a : fx.annotations) std::cout << "note: " << a << "\n";
  return 0;
}

int cmd_compare(const std::string& path, const std::vector<std::string>& kinds) {
  uq::ScenarioFile sf = uq::load_scenario(path);
  if (int rc = validate_or_report(sf.scenario)) return rc;
  std::cout << "scheme,queries,min_granularity,ratio\n";
  int rc = 0;
  for (const auto& kind : kinds) {
    uq::ScenarioFile variant = sf;
    variant.scheme.kind = uq::scheme_kind_from_string(kind);
    const RunOutcome ro = run_scheme(variant);
    if (ro.infeasible) {
      std::cout << kind << ",infeasible,," << "\n";
      rc = kExitInfeasible;
      continue;
    }
    const uq::CongestionReport rep =
        uq::build_report(sf.scenario, ro.trace, variant.scheme, sf.report);
    double ratio = std::numeric_limits<double>::quiet_NaN();
    for (const auto& w : rep.windows)
      if (w.ratio_valid) ratio = w.ratio;
    std::cout << kind << "," << ro.trace.events.size() << ","
              << ro.trace.min_granularity() << "," << ratio << "\n";
  }
  return rc;
}

int cmd_verify(int seeds) {
  long long violations = 0;
  std::mt19937_64 rng(7);
  for (int s = 0; s < seeds; ++s) {
    const uq::Fixture fx = uq::gen_random(1000 + s, 18, 2, 1.0, false);
    const uq::Configuration cfg = uq::configuration_at(fx.scenario, 0.0);
    const std::size_t n = cfg.size();
    std::uniform_int_distribution<int> pick_x(8, static_cast<int>(n) - 1);
    const int x = pick_x(rng);
    const uq::DimConstants dc = uq::dim_constants(2, x);
    // Ball-cover property with random probes.
    for (int trial = 0; trial < 10; ++trial) {
      std::uniform_int_distribution<std::size_t> pick_e(0, n - 1);
      const std::size_t i = pick_e(rng);
      std::uniform_real_distribution<double> scale(0.1, 1.0);
      const double r = scale(rng) * uq::x_radius(cfg, i, x);
      const double alpha = trial % 2 == 0 ? 1.0 : 3.0;
      const int hits =
          uq::verify_ball_cover(cfg, cfg.centers[i], r, x, alpha);
      if (hits > dc.cover_bound(alpha) * x) ++violations;
    }
    // Radius and separation relations.
    for (std::size_t i = 0; i < n; ++i) {
      const double ri = uq::x_radius(cfg, i, x);
      const double si = uq::x_separation(cfg, i, x);
      if (cfg.rho > (1.0 - dc.lambda) / dc.lambda * si + uq::kGeomTol)
        ++violations;
      if (ri > si / dc.lambda + uq::kGeomTol) ++violations;
      for (std::size_t j : uq::gamma_x_neighbors(cfg, i, x))
        if (j != i &&
            uq::x_radius(cfg, j, x) > cfg.rho + 2.0 * ri + uq::kGeomTol)
          ++violations;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i && uq::x_separation(cfg, j, x) >
                          uq::dist(cfg.centers[i], cfg.centers[j]) + si +
                              uq::kGeomTol)
          ++violations;
    }
  }
  std::cout << "violations: " << violations << "\n";
  return violations == 0 ? 0 : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"congestion-potential query scheme simulator"};
  app.require_subcommand(1);

  std::string scenario_path, out_dir = out_dir_default(), fixture_name,
              fixture_out = "scenario.json", schemes_arg;
  bool svg = false, mobile = false;
  int x = 9, dim = 1, measure_x = 0, seeds = 50;
  double beta = 0.0, density = 1.0, w0 = 0.0, w1 = 0.0;
  std::size_t n = 8;
  std::uint64_t seed = 1;

  auto* run = app.add_subcommand("run", "simulate a scheme on a scenario");
  run->add_option("scenario", scenario_path)->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_flag("--svg", svg, "also emit a plot");

  auto* measure = app.add_subcommand("measure", "demand functionals only");
  measure->add_option("scenario", scenario_path)->required();
  measure->add_option("--x", measure_x);
  measure->add_option("--window-start", w0);
  measure->add_option("--window-end", w1);

  auto* fixture = app.add_subcommand("fixture", "emit a generated scenario");
  fixture->add_option("name", fixture_name)->required();
  fixture->add_option("--out", fixture_out);
  fixture->add_option("--n", n);
  fixture->add_option("--x", x);
  fixture->add_option("--beta", beta);
  fixture->add_option("--seed", seed);
  fixture->add_option("--dim", dim);
  fixture->add_option("--density", density);
  fixture->add_flag("--mobile", mobile);

  auto* compare = app.add_subcommand("compare", "side-by-side scheme runs");
  compare->add_option("scenario", scenario_path)->required();
  compare->add_option("--schemes", schemes_arg, "comma-separated kinds")
      ->required();

  auto* verify = app.add_subcommand("verify", "run the invariant checks");
  verify->add_option("--seeds", seeds);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(scenario_path, out_dir, svg);
    if (measure->parsed()) return cmd_measure(scenario_path, measure_x, w0, w1);
    if (fixture->parsed())
      return cmd_fixture(fixture_name, fixture_out, n, x, beta, seed, dim,
                         density, mobile);
    if (compare->parsed()) {
      std::vector<std::string> kinds;
      std::stringstream ss(schemes_arg);
      for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) kinds.push_back(item);
      return cmd_compare(scenario_path, kinds);
    }
    if (verify->parsed()) return cmd_verify(seeds);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}
