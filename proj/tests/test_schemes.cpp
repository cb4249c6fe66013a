#include <doctest.h>

#include <cmath>
#include <set>

#include "uq/fixtures.hpp"
#include "uq/report.hpp"
#include "uq/schemes.hpp"

using namespace uq;

TEST_CASE("scheme kinds round-trip through their names") {
  for (SchemeKind k :
       {SchemeKind::ftt, SchemeKind::fwrr, SchemeKind::bucket_basic,
        SchemeKind::bucket_refined, SchemeKind::round_robin,
        SchemeKind::clairvoyant})
    CHECK(scheme_kind_from_string(to_string(k)) == k);
  CHECK_THROWS(scheme_kind_from_string("nope"));
}

TEST_CASE("guard requires an integral (1+beta)x") {
  SchemeConfig cfg;
  cfg.x = 4;
  cfg.beta = 0.5;
  CHECK(cfg.guard() == 6);
  cfg.beta = 0.3;
  CHECK_THROWS(cfg.guard());
}

TEST_CASE("trace finalization nudges ties and records it") {
  QueryTrace tr;
  tr.events = {{1.0, 0}, {1.0, 1}, {0.5, 2}};
  tr.finalize();
  CHECK(tr.ties_perturbed);
  CHECK(tr.events[0].entity == 2);
  CHECK(tr.events[2].time > tr.events[1].time);
  CHECK(tr.min_granularity() > 0.0);
  CHECK(tr.queries_in(0.9, 1.1) == 2);
  CHECK(tr.distinct_entities_in(0.0, 2.0) == 3);
}

TEST_CASE("fixed-target scheme retires separated pairs in one round") {
  const Fixture fx = gen_pairs_fixture(4);
  SchemeConfig cfg;
  cfg.kind = SchemeKind::ftt;
  cfg.x = 4;
  const FttResult r = run_ftt(fx.scenario, cfg);
  CHECK(r.rounds == 1);
  CHECK(r.trace.events.size() == 4);
  CHECK_FALSE(r.reached_cutoff);
  CHECK(r.trace.feasible);
  // The target-time regions obey the degree bound.
  const auto regs = projected_regions(r.state, *fx.scenario.target_time);
  CHECK(degree(build_pe_graph(regs)).delta <= cfg.x);
}

TEST_CASE("fixed-target scheme reports infeasibility on coincident entities") {
  // Ten coincident entities in one cluster always entangle each other.
  const Fixture fx = gen_cluster_fixture(9, 1.0);
  SchemeConfig cfg;
  cfg.kind = SchemeKind::ftt;
  cfg.x = 9;
  cfg.target_time = 10.0;
  const FttResult r = run_ftt(fx.scenario, cfg);
  CHECK(r.reached_cutoff);
  CHECK_FALSE(r.trace.feasible);
}

TEST_CASE("slot assignment is conflict-free and saturates a full set") {
  const std::vector<long long> periods = {2, 4, 8, 8};
  const auto offsets = assign_slots(periods);
  std::set<long long> seen;
  for (long long slot = 0; slot < 8; ++slot) {
    int occupants = 0;
    for (std::size_t i = 0; i < periods.size(); ++i)
      occupants += slot % periods[i] == offsets[i];
    CHECK(occupants == 1);  // sum of reciprocals is exactly one
  }
  CHECK_THROWS(assign_slots({3}));
}

TEST_CASE("frequency-weighted round robin keeps the degree bound") {
  const Fixture fx = gen_random(21, 18, 2, 1.0);
  SchemeConfig cfg;
  cfg.kind = SchemeKind::fwrr;
  cfg.x = 8;
  const Configuration cfg0 = configuration_at(fx.scenario, 0.0);
  const FwrrResult r = run_fwrr(cfg0, cfg, 20.0);
  CHECK(r.trace.feasible);
  CHECK(r.slot == std::ldexp(1.0, -r.g));
  CHECK(r.granularity_bound > 0.0);
  CHECK(r.trace.min_granularity_in(r.safe_from, 20.0) >= r.granularity_bound);
  for (double t = r.safe_from; t <= 20.0; t += 0.5) {
    const auto regs = regions_at(fx.scenario, r.trace, t);
    CHECK(degree(build_pe_graph(regs)).delta <= cfg.x);
  }
}

TEST_CASE("oracle warm start is an exact snapshot") {
  const Fixture fx = gen_random(5, 10, 2, 1.0, true);
  const WarmStart w = oracle_init(fx.scenario, 2.0);
  CHECK(w.certified);
  CHECK(w.state.clock == doctest::Approx(2.0));
  const Configuration truth = configuration_at(fx.scenario, 2.0);
  for (std::size_t i = 0; i < fx.scenario.size(); ++i) {
    CHECK(w.state.entries[i].queried);
    CHECK(dist(w.state.entries[i].center, truth.centers[i]) < 1e-9);
  }
}

TEST_CASE("round-based warm start certifies its perception preconditions") {
  const Fixture fx = gen_random(6, 12, 2, 1.0, true);
  SchemeConfig cfg;
  cfg.x = 8;
  const double lam = dim_constants(2, cfg.x).lambda;
  cfg.params["a"] = 2.0 * 64.0 / (5.0 * lam);
  const WarmStart w = run_init(fx.scenario, cfg, fx.scenario.horizon / 8.0);
  CHECK(w.trace.feasible);
  CHECK(w.certified);
  for (std::size_t i = 0; i < fx.scenario.size(); ++i)
    CHECK(w.state.entries[i].queried);
}

TEST_CASE("bucket schemes respect the staleness budget") {
  const Fixture fx = gen_random(7, 14, 2, 1.0, true, 8.0);
  SchemeConfig cfg;
  cfg.x = 8;
  const WarmStart warm = oracle_init(fx.scenario, 1.0);
  for (BucketMode mode : {BucketMode::basic, BucketMode::refined}) {
    const BucketResult r = run_bucket(fx.scenario, cfg, mode, warm, 8.0);
    CHECK_FALSE(r.aborted);
    CHECK(r.trace.feasible);
    CHECK(r.max_wait_ratio <= 1.0 + 1e-6);
    CHECK(r.trace.events.size() > fx.scenario.size());
    CHECK(r.trace.min_granularity() > 0.0);
  }
}

TEST_CASE("bucket scheme rejects an oversized congestion target") {
  const Fixture fx = gen_random(8, 6, 2, 1.0, true, 4.0);
  SchemeConfig cfg;
  cfg.x = 8;  // only five other entities
  const WarmStart warm = oracle_init(fx.scenario, 1.0);
  CHECK_THROWS(run_bucket(fx.scenario, cfg, BucketMode::refined, warm, 4.0));
}

TEST_CASE("baseline traces have the advertised shapes") {
  const QueryTrace rr = run_round_robin(4, 0.5, 1.0, 5.0);
  CHECK(rr.events.front().time == doctest::Approx(1.0));
  CHECK(rr.min_granularity() == doctest::Approx(0.5));
  CHECK(rr.distinct_entities_in(1.0, 3.0) == 4);

  const QueryTrace pd = pairs_deadline_trace(8, 8.0);
  CHECK(pd.events.size() == 8);
  CHECK(pd.min_granularity() == doctest::Approx(1.0));
  CHECK_THROWS(pairs_deadline_trace(8, 6.0));

  const QueryTrace cm =
      cluster_ply_maintainer({{0, 1, 2}, {3, 4, 5}}, 1, 2.0, 10.0);
  CHECK(cm.min_granularity() == doctest::Approx(1.0));
  CHECK(cm.queries_in(0.0, 2.0) == 2);

  const QueryTrace rv = reversal_clairvoyant(6, {0, 3}, 12.0);
  CHECK(rv.distinct_entities_in(0.0, 6.0) == 6);
  CHECK(rv.min_granularity() == doctest::Approx(1.0));
  for (const auto& e : rv.events)
    if (e.time > 6.5) CHECK((e.entity == 0 || e.entity == 3));
}
