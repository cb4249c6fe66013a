#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uq/demand.hpp"
#include "uq/uncertainty.hpp"

namespace uq {

enum class SchemeKind {
  ftt,
  fwrr,
  bucket_basic,
  bucket_refined,
  round_robin,
  clairvoyant
};

std::string to_string(SchemeKind k);
SchemeKind scheme_kind_from_string(const std::string& s);

struct SchemeConfig {
  SchemeKind kind = SchemeKind::fwrr;
  int x = 4;
  double beta = 0.0;
  std::optional<double> target_time;
  Measure measure = Measure::degree;
  std::map<std::string, double> params;  // a, b, granularity, t0, ...
  std::string script;                    // clairvoyant script name

  // (1 + beta) x, required to be integral.
  int guard() const;
  double param(const std::string& key, double fallback) const;
};

struct QueryEvent {
  double time = 0.0;
  std::size_t entity = 0;
};

struct QueryTrace {
  std::vector<QueryEvent> events;
  bool feasible = true;
  bool ties_perturbed = false;
  std::vector<std::string> notes;

  // Sorts by time and nudges exact duplicates apart by 1e-12, recording
  // that it happened.
  void finalize();
  double min_granularity() const;
  double min_granularity_in(double t0, double t1) const;
  long long queries_in(double t0, double t1) const;
  long long distinct_entities_in(double t0, double t1) const;
};

// ---------------------------------------------------------------------------
// Fixed-target-time scheme.

struct FttResult {
  QueryTrace trace;
  PerceptionState state;
  int rounds = 0;
  bool reached_cutoff = false;  // survivors remained at the time cutoff
};

// Round-robin rounds over shrinking halves of the time to the target,
// retiring entities once their projected region is safe for the chosen
// measure at guard() = (1+beta)x.
FttResult run_ftt(const Scenario& scn, const SchemeConfig& cfg);

// ---------------------------------------------------------------------------
// Frequency-weighted round robin (stationary entities).

struct FwrrResult {
  QueryTrace trace;
  int g = 0;             // slot size is 2^-g
  double slot = 0.0;
  double lambda = 0.0;
  double phi = 0.0;
  double granularity_bound = 0.0;  // lambda / (4 (lambda + 2) phi)
  double safe_from = 0.0;          // degree <= x guaranteed from here on
  std::vector<long long> periods;  // per entity, in slots (powers of two)
  std::vector<long long> offsets;  // assigned slot offsets
};

FwrrResult run_fwrr(const Configuration& cfg0, const SchemeConfig& cfg,
                    double horizon);

// Greedy conflict-free offset assignment for power-of-two periods with
// sum of reciprocals below one. Throws std::logic_error if it ever
// fails (it cannot, under the precondition).
std::vector<long long> assign_slots(const std::vector<long long>& periods);

// ---------------------------------------------------------------------------
// Bucket schemes (mobile entities).

enum class BucketMode { basic, refined };

struct WarmStart {
  double t0 = 0.0;
  QueryTrace trace;     // queries spent during initialization
  PerceptionState state;
  bool certified = false;
  std::vector<std::string> diagnostics;
};

// Oracle warm start: queries every entity at t0 (trace times are spread
// by 1e-12 to keep instants distinct), so perception equals reality.
WarmStart oracle_init(const Scenario& scn, double t0);

// Initialization via a modified fixed-target scheme with round fraction
// 1/16, retiring entities once degree-super-safe. Certifies the
// perception preconditions post-hoc.
WarmStart run_init(const Scenario& scn, const SchemeConfig& cfg, double t0);

struct BucketResult {
  QueryTrace trace;  // excludes warm-start queries
  bool aborted = false;
  std::string abort_reason;
  double max_wait_ratio = 0.0;  // max of (t - p) / (lambda sigma~ / 12)
};

BucketResult run_bucket(const Scenario& scn, const SchemeConfig& cfg,
                        BucketMode mode, const WarmStart& warm,
                        double horizon);

// ---------------------------------------------------------------------------
// Baselines.

// Entity k % n queried at time t_begin + k * granularity.
QueryTrace run_round_robin(std::size_t n, double granularity, double t_begin,
                           double horizon);

// Clairvoyant deadline schedule for well-separated pairs: queries at
// times 1..n in decreasing order of pair separation.
QueryTrace pairs_deadline_trace(std::size_t n, double tau);

// Rotating script: every `period`, queries the designated members of
// each group at unit granularity.
QueryTrace cluster_ply_maintainer(
    const std::vector<std::vector<std::size_t>>& groups,
    std::size_t fresh_per_group, double period, double horizon);

// Query everything once at unit granularity, then cycle the special
// entities at unit granularity forever.
QueryTrace reversal_clairvoyant(std::size_t n,
                                const std::vector<std::size_t>& specials,
                                double horizon);

}  // namespace uq
