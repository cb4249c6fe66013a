#include "uq/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

namespace uq {

std::string to_string(SchemeKind k) {
  switch (k) {
    case SchemeKind::ftt: return "ftt";
    case SchemeKind::fwrr: return "fwrr";
    case SchemeKind::bucket_basic: return "bucket_basic";
    case SchemeKind::bucket_refined: return "bucket_refined";
    case SchemeKind::round_robin: return "round_robin";
    case SchemeKind::clairvoyant: return "clairvoyant";
  }
  throw std::logic_error("unknown scheme kind");
}

SchemeKind scheme_kind_from_string(const std::string& s) {
  if (s == "ftt") return SchemeKind::ftt;
  if (s == "fwrr") return SchemeKind::fwrr;
  if (s == "bucket_basic") return SchemeKind::bucket_basic;
  if (s == "bucket_refined") return SchemeKind::bucket_refined;
  if (s == "round_robin") return SchemeKind::round_robin;
  if (s == "clairvoyant") return SchemeKind::clairvoyant;
  throw std::invalid_argument("unknown scheme kind: " + s);
}

int SchemeConfig::guard() const {
  const double g = (1.0 + beta) * x;
  const long long r = std::llround(g);
  if (std::fabs(g - r) > 1e-9)
    throw std::invalid_argument("(1+beta)x must be an integer");
  return static_cast<int>(r);
}

double SchemeConfig::param(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void QueryTrace::finalize() {
  std::stable_sort(events.begin(), events.end(),
                   [](const QueryEvent& a, const QueryEvent& b) {
                     return a.time < b.time;
                   });
  for (std::size_t i = 1; i < events.size(); ++i)
    if (events[i].time <= events[i - 1].time) {
      events[i].time = events[i - 1].time + 1e-12;
      ties_perturbed = true;
    }
}

double QueryTrace::min_granularity() const {
  return min_granularity_in(-std::numeric_limits<double>::infinity(),
                            std::numeric_limits<double>::infinity());
}

double QueryTrace::min_granularity_in(double t0, double t1) const {
  double best = std::numeric_limits<double>::infinity();
  const QueryEvent* prev = nullptr;
  for (const auto& e : events) {
    if (e.time < t0 || e.time > t1) continue;
    if (prev) best = std::min(best, e.time - prev->time);
    prev = &e;
  }
  return best;
}

long long QueryTrace::queries_in(double t0, double t1) const {
  long long k = 0;
  for (const auto& e : events) k += (e.time >= t0 && e.time <= t1);
  return k;
}

long long QueryTrace::distinct_entities_in(double t0, double t1) const {
  std::set<std::size_t> ids;
  for (const auto& e : events)
    if (e.time >= t0 && e.time <= t1) ids.insert(e.entity);
  return static_cast<long long>(ids.size());
}

// ---------------------------------------------------------------------------

FttResult run_ftt(const Scenario& scn, const SchemeConfig& cfg) {
  const double tau = cfg.target_time ? *cfg.target_time
                     : scn.target_time ? *scn.target_time
                                       : throw std::invalid_argument(
                                             "fixed-target scheme needs a "
                                             "target time");
  if (tau <= 0.0) throw std::invalid_argument("target time must be positive");
  const int guard = cfg.guard();
  const std::size_t n = scn.size();

  FttResult out;
  out.state = PerceptionState::initial(scn);
  std::vector<std::size_t> survivors(n);
  std::iota(survivors.begin(), survivors.end(), 0);

  double remaining = tau;
  while (!survivors.empty()) {
    ++out.rounds;
    const double start = tau - remaining;
    const double len = 0.5 * remaining;
    const double gran = len / static_cast<double>(survivors.size());
    for (std::size_t k = 0; k < survivors.size(); ++k) {
      const double t = start + static_cast<double>(k) * gran;
      apply_query(out.state, survivors[k], t, scn);
      out.trace.events.push_back({t, survivors[k]});
    }
    remaining = len;

    std::vector<std::size_t> unsafe;
    std::vector<std::size_t> safe;
    for (std::size_t e : survivors) {
      const bool ok = cfg.measure == Measure::degree
                          ? is_degree_safe(out.state, e, tau, guard)
                          : is_ply_safe(out.state, e, tau, guard);
      (ok ? safe : unsafe).push_back(e);
    }
    if (unsafe.empty()) break;

    std::vector<std::size_t> next = unsafe;
    if (cfg.measure == Measure::degree) {
      // Safe survivors: still entangled with an unsafe region, so they
      // keep being queried to help shrink the unsafe neighbourhood.
      std::vector<Region> unsafe_regions;
      for (std::size_t e : unsafe)
        unsafe_regions.push_back(projected_region(out.state, e, tau));
      for (std::size_t e : safe) {
        const Region r = projected_region(out.state, e, tau);
        for (const Region& u : unsafe_regions)
          if (regions_intersect(r, u)) {
            next.push_back(e);
            break;
          }
      }
    }
    std::sort(next.begin(), next.end());
    survivors = std::move(next);

    if (remaining < 1e-9 * tau) {
      out.reached_cutoff = true;
      out.trace.feasible = false;
      out.trace.notes.push_back(
          "unsafe entities remained when the time to the target was "
          "exhausted");
      break;
    }
  }
  out.trace.finalize();
  return out;
}

// ---------------------------------------------------------------------------

std::vector<long long> assign_slots(const std::vector<long long>& periods) {
  const std::size_t n = periods.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return periods[a] != periods[b] ? periods[a] < periods[b] : a < b;
  });
  std::vector<long long> offsets(n, -1);
  for (std::size_t idx : order) {
    const long long t = periods[idx];
    if (t <= 0 || (t & (t - 1)) != 0)
      throw std::invalid_argument("periods must be positive powers of two");
    long long chosen = -1;
    for (long long o = 0; o < t && chosen < 0; ++o) {
      bool free = true;
      for (std::size_t j = 0; j < n && free; ++j)
        if (offsets[j] >= 0 && o % periods[j] == offsets[j]) free = false;
      if (free) chosen = o;
    }
    if (chosen < 0)
      throw std::logic_error(
          "slot assignment failed; reciprocal period sum must be below one");
    offsets[idx] = chosen;
  }
  return offsets;
}

FwrrResult run_fwrr(const Configuration& cfg0, const SchemeConfig& cfg,
                    double horizon) {
  cfg0.check();
  const std::size_t n = cfg0.size();
  const int x = cfg.x;
  const DimConstants dc = dim_constants(cfg0.dim, x);
  const double lam = dc.lambda;

  FwrrResult out;
  out.lambda = lam;
  out.phi = phi_stationary(cfg0, x);
  out.g = static_cast<int>(std::ceil(std::log2((lam + 2.0) / lam * out.phi))) +
          1;
  out.slot = std::ldexp(1.0, -out.g);
  out.granularity_bound = lam / (4.0 * (lam + 2.0) * out.phi);

  out.periods.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double sigma = x_separation(cfg0, i, x);
    const int b =
        static_cast<int>(std::floor(std::log2(sigma * lam / (lam + 2.0))));
    if (out.g + b < 1)
      throw std::logic_error("slot resolution too coarse for an entity");
    out.periods[i] = 1LL << (out.g + b);
  }
  out.offsets = assign_slots(out.periods);

  const long long max_period =
      *std::max_element(out.periods.begin(), out.periods.end());
  const double warmup = static_cast<double>(max_period) * out.slot;

  // Startup: one round-robin pass before the periodic schedule begins.
  for (std::size_t i = 0; i < n; ++i)
    out.trace.events.push_back(
        {warmup * static_cast<double>(i) / static_cast<double>(n), i});

  out.safe_from = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double first = warmup + static_cast<double>(out.offsets[i]) * out.slot;
    out.safe_from = std::max(out.safe_from, first);
    const double step = static_cast<double>(out.periods[i]) * out.slot;
    for (double t = first; t <= horizon + kGeomTol; t += step)
      out.trace.events.push_back({t, i});
  }
  out.trace.finalize();
  return out;
}

// ---------------------------------------------------------------------------

WarmStart oracle_init(const Scenario& scn, double t0) {
  WarmStart out;
  out.t0 = t0;
  out.state = PerceptionState::initial(scn);
  for (std::size_t i = 0; i < scn.size(); ++i) {
    const double t = t0 + static_cast<double>(i) * 1e-12 -
                     static_cast<double>(scn.size() - 1) * 1e-12;
    apply_query(out.state, i, std::min(t, t0), scn);
    out.trace.events.push_back({std::min(t, t0), i});
  }
  // Collapse the epsilon spread so perception is an exact snapshot at t0.
  out.state.clock = t0;
  out.trace.ties_perturbed = true;
  out.certified = true;
  out.diagnostics.push_back("oracle warm start: all entities queried at t0");
  out.trace.finalize();
  return out;
}

namespace {

double projected_separation(const PerceptionState& st, std::size_t i,
                            std::size_t j, double tau) {
  const Region a = projected_region(st, i, tau);
  const Region b = projected_region(st, j, tau);
  if (a.unbounded || b.unbounded)
    return -std::numeric_limits<double>::infinity();
  return dist(a.center, b.center) - a.radius - b.radius;
}

}  // namespace

WarmStart run_init(const Scenario& scn, const SchemeConfig& cfg, double t0) {
  if (t0 <= 0.0) throw std::invalid_argument("t0 must be positive");
  const std::size_t n = scn.size();
  const int guard = cfg.guard();
  const DimConstants dc = dim_constants(scn.dim, guard);
  const double lam = dc.lambda;
  const double a = cfg.param("a", 64.0 / (5.0 * lam));
  const double bfrac = cfg.param("b", 15.0 / 16.0);
  if (bfrac <= 0.0 || bfrac >= 1.0)
    throw std::invalid_argument("round fraction must lie in (0, 1)");

  WarmStart out;
  out.t0 = t0;
  out.state = PerceptionState::initial(scn);
  std::vector<std::size_t> survivors(n);
  std::iota(survivors.begin(), survivors.end(), 0);

  double lead = t0;  // bfrac^(s-1) * t0 entering round s
  int s = 0;
  while (!survivors.empty()) {
    ++s;
    const double start = t0 - lead;
    const double len = lead * (1.0 - bfrac);
    const double gran = len / static_cast<double>(survivors.size());
    for (std::size_t k = 0; k < survivors.size(); ++k) {
      const double t = start + static_cast<double>(k) * gran;
      apply_query(out.state, survivors[k], t, scn);
      out.trace.events.push_back({t, survivors[k]});
    }
    lead *= bfrac;
    const double thresh = a * lead;

    std::vector<std::size_t> next;
    for (std::size_t e : survivors) {
      int close = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != e && projected_separation(out.state, e, j, t0) < thresh)
          ++close;
      if (close > guard - 1) next.push_back(e);
    }
    survivors = std::move(next);

    if (!survivors.empty() && (lead < 1e-12 * t0 || s > 4000)) {
      out.trace.feasible = false;
      out.diagnostics.push_back(
          "initialization exhausted the lead time with " +
          std::to_string(survivors.size()) + " entities never super-safe");
      break;
    }
  }
  out.state.clock = t0;
  out.trace.finalize();

  // Post-hoc certification of the perception preconditions.
  bool cert = out.trace.feasible;
  if (guard > static_cast<int>(n) - 1) {
    out.diagnostics.push_back(
        "fewer entities than the congestion bound: preconditions vacuous");
    out.certified = cert;
    return out;
  }
  const Configuration truth = configuration_at(scn, t0);
  for (std::size_t i = 0; cert && i < n; ++i) {
    const double sig_true = x_separation(truth, i, guard);
    const double sig_perc = perceived_x_separation(out.state, i, guard);
    if (sig_perc < 0.5 * sig_true - kGeomTol ||
        sig_perc > 1.5 * sig_true + kGeomTol) {
      out.diagnostics.push_back("entity " + std::to_string(i) +
                                ": perceived separation outside the "
                                "half-to-threehalves sandwich at t0");
      cert = false;
    }
  }
  // Staleness bound: at each entity's final initialization query, every
  // other entity must already be fresh enough.
  for (std::size_t i = 0; cert && i < n; ++i) {
    const double p = out.state.entries[i].last_query;
    PerceptionState then = PerceptionState::initial(scn);
    bool defined = true;
    std::vector<std::pair<double, std::size_t>> replay;
    for (std::size_t j = 0; j < n && defined; ++j) {
      double q = -1.0;
      for (const auto& e : out.trace.events)
        if (e.entity == j && e.time <= p + kGeomTol) q = e.time;
      if (q < 0.0)
        defined = false;
      else
        replay.emplace_back(q, j);
    }
    std::sort(replay.begin(), replay.end());
    for (const auto& [q, j] : replay) apply_query(then, j, q, scn);
    if (!defined) {
      out.diagnostics.push_back("entity " + std::to_string(i) +
                                ": staleness bound unverifiable (some entity "
                                "unqueried at its final query)");
      cert = false;
      break;
    }
    then.clock = p;
    const double sig = perceived_x_separation(then, i, guard);
    if (t0 - p > lam * sig / 12.0 + kGeomTol) {
      out.diagnostics.push_back("entity " + std::to_string(i) +
                                ": staleness exceeds lambda*sigma/12");
      cert = false;
    }
  }
  out.certified = cert;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct BucketKey {
  int level;
  long long idx;
  bool operator<(const BucketKey& o) const {
    return level != o.level ? level < o.level : idx < o.idx;
  }
};

double bucket_len(const BucketKey& b) { return std::ldexp(1.0, b.level); }
double bucket_start(const BucketKey& b) {
  return static_cast<double>(b.idx) * bucket_len(b);
}

// First bucket of length 2^level starting strictly after t.
BucketKey bucket_after(int level, double t) {
  const double len = std::ldexp(1.0, level);
  return BucketKey{level,
                   static_cast<long long>(std::floor(t / len)) + 1};
}

struct BucketRun {
  const Scenario* scn = nullptr;
  SchemeConfig cfg;
  double lambda = 0.0;
  double horizon = 0.0;
  PerceptionState st;
  BucketResult out;
  std::vector<double> sigma_at_query;  // perceived x-separation at last query

  bool abort(const std::string& why) {
    out.aborted = true;
    out.abort_reason = why;
    out.trace.feasible = false;
    out.trace.notes.push_back(why);
    return false;
  }

  // Shared per-query bookkeeping: staleness check, query, perception
  // sanity check. Returns false when the run must stop.
  bool do_query(std::size_t e, double t) {
    const double allowed = lambda * sigma_at_query[e] / 12.0;
    const double waited = t - st.entries[e].last_query;
    if (allowed > 0.0)
      out.max_wait_ratio = std::max(out.max_wait_ratio, waited / allowed);
    if (waited > allowed + kGeomTol)
      return abort("entity " + std::to_string(e) +
                   " went stale beyond lambda*sigma/12 at t=" +
                   std::to_string(t));
    apply_query(st, e, t, *scn);
    out.trace.events.push_back({t, e});
    const double sig_true =
        x_separation(configuration_at(*scn, t), e, cfg.x);
    const double sig = perceived_x_separation(st, e, cfg.x);
    if (sig < 0.5 * sig_true - kGeomTol || sig > 1.5 * sig_true + kGeomTol)
      return abort("entity " + std::to_string(e) +
                   " perceived separation left the sandwich at t=" +
                   std::to_string(t));
    if (sig <= 0.0)
      return abort("entity " + std::to_string(e) +
                   " has nonpositive perceived separation at t=" +
                   std::to_string(t));
    sigma_at_query[e] = sig;
    return true;
  }

  int level_for(double sigma) const {
    return static_cast<int>(std::floor(std::log2(lambda / 24.0 * sigma)));
  }
};

void run_bucket_basic(BucketRun& run, double t0) {
  struct Ev {
    double time;
    bool is_query;
    BucketKey bucket;   // when !is_query
    std::size_t entity; // when is_query
    bool operator>(const Ev& o) const {
      if (time != o.time) return time > o.time;
      if (is_query != o.is_query) return is_query && !o.is_query;
      return entity > o.entity;
    }
  };
  std::priority_queue<Ev, std::vector<Ev>, std::greater<Ev>> pq;
  std::map<BucketKey, std::vector<std::size_t>> buckets;

  auto assign = [&](std::size_t e, double t, int level_shift) {
    const BucketKey b =
        bucket_after(run.level_for(run.sigma_at_query[e]) + level_shift, t);
    auto [it, fresh] = buckets.try_emplace(b);
    it->second.push_back(e);
    if (fresh) pq.push(Ev{bucket_start(b), false, b, 0});
  };

  // The first bucket is one level finer: a warm start may leave residual
  // staleness of up to half the budget, so the first wait must not use
  // the whole of it.
  for (std::size_t i = 0; i < run.st.size(); ++i) assign(i, t0, -1);

  while (!pq.empty()) {
    const Ev ev = pq.top();
    pq.pop();
    if (ev.time > run.horizon) break;
    if (!ev.is_query) {
      const auto it = buckets.find(ev.bucket);
      const std::vector<std::size_t> occupants = std::move(it->second);
      buckets.erase(it);
      const double len = bucket_len(ev.bucket);
      const double gap = len / static_cast<double>(occupants.size() + 1);
      for (std::size_t k = 0; k < occupants.size(); ++k)
        pq.push(Ev{ev.time + static_cast<double>(k + 1) * gap, true,
                   BucketKey{0, 0}, occupants[k]});
    } else {
      if (!run.do_query(ev.entity, ev.time)) return;
      assign(ev.entity, ev.time, 0);
    }
  }
}

void run_bucket_refined(BucketRun& run, double t0) {
  std::map<BucketKey, std::size_t> owner;
  std::map<std::size_t, BucketKey> bucket_of;
  std::set<std::pair<double, std::size_t>> agenda;  // (tentative time, entity)

  auto place = [&](auto&& self, std::size_t e, BucketKey b) -> void {
    const auto it = owner.find(b);
    if (it == owner.end()) {
      owner[b] = e;
      bucket_of[e] = b;
      agenda.insert({bucket_start(b) + 0.5 * bucket_len(b), e});
      return;
    }
    const std::size_t displaced = it->second;
    owner.erase(it);
    agenda.erase({bucket_start(b) + 0.5 * bucket_len(b), displaced});
    bucket_of.erase(displaced);
    self(self, displaced, BucketKey{b.level - 1, 2 * b.idx});
    self(self, e, BucketKey{b.level - 1, 2 * b.idx + 1});
  };
  auto assign = [&](std::size_t e, double t, int level_shift) {
    place(place, e,
          bucket_after(run.level_for(run.sigma_at_query[e]) + level_shift, t));
  };

  // See the basic variant: the first bucket is one level finer to leave
  // room for warm-start staleness.
  for (std::size_t i = 0; i < run.st.size(); ++i) assign(i, t0, -1);

  while (!agenda.empty()) {
    const auto [t, e] = *agenda.begin();
    if (t > run.horizon) break;
    agenda.erase(agenda.begin());
    owner.erase(bucket_of[e]);
    bucket_of.erase(e);
    if (!run.do_query(e, t)) return;
    assign(e, t, 0);
  }
}

}  // namespace

BucketResult run_bucket(const Scenario& scn, const SchemeConfig& cfg,
                        BucketMode mode, const WarmStart& warm,
                        double horizon) {
  const std::size_t n = scn.size();
  if (cfg.x > static_cast<int>(n) - 1)
    throw std::invalid_argument("bucket scheme needs x <= n - 1");

  BucketRun run;
  run.scn = &scn;
  run.cfg = cfg;
  run.lambda = dim_constants(scn.dim, cfg.x).lambda;
  run.horizon = horizon;
  run.st = warm.state;
  run.sigma_at_query.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    run.sigma_at_query[i] = perceived_x_separation(run.st, i, cfg.x);
  for (std::size_t i = 0; i < n; ++i)
    if (run.sigma_at_query[i] <= 0.0)
      throw std::invalid_argument(
          "warm start has a nonpositive perceived separation");

  if (mode == BucketMode::basic)
    run_bucket_basic(run, warm.t0);
  else
    run_bucket_refined(run, warm.t0);
  run.out.trace.finalize();
  return std::move(run.out);
}

// ---------------------------------------------------------------------------

QueryTrace run_round_robin(std::size_t n, double granularity, double t_begin,
                           double horizon) {
  if (n == 0 || granularity <= 0.0)
    throw std::invalid_argument("need entities and a positive granularity");
  QueryTrace out;
  std::size_t k = 0;
  for (double t = t_begin; t <= horizon + kGeomTol; t += granularity, ++k)
    out.events.push_back({t, k % n});
  out.finalize();
  return out;
}

QueryTrace pairs_deadline_trace(std::size_t n, double tau) {
  if (n % 2 != 0) throw std::invalid_argument("n must be even");
  if (tau + kGeomTol < static_cast<double>(n))
    throw std::invalid_argument("deadline too early for unit granularity");
  QueryTrace out;
  double t = 1.0;
  for (std::size_t pair = n / 2; pair >= 1; --pair) {
    out.events.push_back({t, 2 * (pair - 1)});
    out.events.push_back({t + 1.0, 2 * (pair - 1) + 1});
    t += 2.0;
  }
  out.finalize();
  return out;
}

QueryTrace cluster_ply_maintainer(
    const std::vector<std::vector<std::size_t>>& groups,
    std::size_t fresh_per_group, double period, double horizon) {
  for (const auto& g : groups)
    if (g.size() < fresh_per_group)
      throw std::invalid_argument("group smaller than its fresh quota");
  if (static_cast<double>(fresh_per_group * groups.size()) > period + kGeomTol)
    throw std::invalid_argument("period too short for unit granularity");
  QueryTrace out;
  for (double base = 0.0; base + period <= horizon + kGeomTol; base += period) {
    double t = base + 1.0;
    for (std::size_t j = 0; j < fresh_per_group; ++j)
      for (const auto& g : groups) out.events.push_back({t++, g[j]});
  }
  out.finalize();
  return out;
}

QueryTrace reversal_clairvoyant(std::size_t n,
                                const std::vector<std::size_t>& specials,
                                double horizon) {
  std::vector<char> is_special(n, 0);
  for (std::size_t s : specials) is_special.at(s) = 1;
  QueryTrace out;
  double t = 1.0;
  for (std::size_t i = 0; i < n; ++i)
    if (!is_special[i]) out.events.push_back({t++, i});
  for (std::size_t s : specials) out.events.push_back({t++, s});
  for (std::size_t k = 0; t <= horizon + kGeomTol; ++k)
    out.events.push_back({t++, specials[k % specials.size()]});
  out.finalize();
  return out;
}

}  // namespace uq
