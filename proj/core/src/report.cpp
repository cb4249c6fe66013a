#include "uq/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "uq/demand.hpp"

namespace uq {

TraceReplayer::TraceReplayer(const Scenario& scn, const QueryTrace& trace)
    : scn_(scn), trace_(trace), st_(PerceptionState::initial(scn)) {}

const PerceptionState& TraceReplayer::at(double t) {
  if (t < st_.clock - kGeomTol)
    throw std::invalid_argument("replay times must not decrease");
  while (next_ < trace_.events.size() && trace_.events[next_].time <= t) {
    const auto& e = trace_.events[next_];
    apply_query(st_, e.entity, std::max(e.time, st_.clock), scn_);
    ++next_;
  }
  st_.clock = std::max(st_.clock, t);
  return st_;
}

std::vector<Region> regions_at(const Scenario& scn, const QueryTrace& trace,
                               double t) {
  TraceReplayer rp(scn, trace);
  const PerceptionState& st = rp.at(t);
  std::vector<Region> out;
  out.reserve(st.size());
  for (std::size_t i = 0; i < st.size(); ++i) out.push_back(st.region(i));
  return out;
}

namespace {

long long queries_half_open(const QueryTrace& tr, double t0, double t1,
                            bool closed_end) {
  long long k = 0;
  for (const auto& e : tr.events)
    k += (e.time >= t0 && (closed_end ? e.time <= t1 : e.time < t1));
  return k;
}

}  // namespace

CongestionReport build_report(const Scenario& scn, const QueryTrace& trace,
                              const SchemeConfig& scheme,
                              const ReportConfig& rc) {
  const std::size_t n = scn.size();
  if (n == 0) throw std::invalid_argument("empty scenario");
  CongestionReport rep;

  if (scn.rho == 0.0 || !scn.enforce_disjoint)
    rep.warnings.push_back(
        "point-entity mode (rho = 0 or disjointness not enforced)");

  // Sample grid: fine enough that a degree change cannot straddle two
  // samples unnoticed for the wait-bounded schemes.
  double dt = rc.sample_dt;
  if (dt <= 0.0) {
    const Configuration cfg0 = configuration_at(scn, rc.sample_start);
    if (scheme.x >= 1 && static_cast<std::size_t>(scheme.x) <= n - 1) {
      double min_sigma = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i)
        min_sigma = std::min(min_sigma, x_separation(cfg0, i, scheme.x));
      dt = min_sigma / 8.0;
    }
    const double span = scn.horizon - rc.sample_start;
    if (!(dt > 0.0) || !std::isfinite(dt)) dt = span / 256.0;
    dt = std::clamp(dt, span / 65536.0, span / 16.0);
  }
  rep.metadata["sample_dt"] = dt;

  TraceReplayer rp(scn, trace);
  for (double t = rc.sample_start; t <= scn.horizon + kGeomTol; t += dt) {
    const PerceptionState& st = rp.at(t);
    std::vector<Region> regions;
    regions.reserve(n);
    for (std::size_t i = 0; i < n; ++i) regions.push_back(st.region(i));
    const PEGraph g = build_pe_graph(regions);
    SampleRow row;
    row.time = t;
    row.degree = degree(g).delta;
    const PlyResult pr = ply(regions, scn.dim);
    row.ply = pr.ply;
    row.ply_exact = pr.exact;
    const ThicknessResult th = thickness(g, rc.chi_exact_limit);
    row.chi = th.chi;
    row.chi_exact = th.exact;
    rep.samples.push_back(row);
  }

  // Lower-bound functional constant for the ply-x competitive ratio.
  int guard = 0;
  double kappa = 0.0;
  bool ratio_ok = true;
  try {
    guard = scheme.guard();
    if (guard < 1 || static_cast<std::size_t>(guard) > n - 1)
      throw std::domain_error("guard outside [1, n-1]");
    const DimConstants dc = dim_constants(scn.dim, guard);
    const double bx = scheme.beta * scheme.x;
    kappa = (bx + 1.0) * dc.lambda /
            (75.0 * (1.0 + scheme.beta) * dc.cover_bound(3.0) * scheme.x);
    rep.metadata["lambda"] = dc.lambda;
    rep.metadata["kappa"] = kappa;
  } catch (const std::exception& ex) {
    ratio_ok = false;
    rep.warnings.push_back(std::string("ratio unavailable: ") + ex.what());
  }
  const double phi_threshold = 1010.0 * static_cast<double>(n);
  rep.metadata["phi_threshold"] = phi_threshold;
  rep.metadata["windows"] = rc.windows;
  rep.metadata["shift_fraction"] = rc.shift_fraction;

  const double span = scn.horizon - rc.sample_start;
  const int w = std::max(1, rc.windows);
  for (int k = 0; k < w; ++k) {
    WindowRow row;
    row.t_start = rc.sample_start + span * k / w;
    row.t_end = rc.sample_start + span * (k + 1) / w;
    const bool last = k == w - 1;
    row.queries = queries_half_open(trace, row.t_start, row.t_end, last);
    row.min_granularity = trace.min_granularity_in(row.t_start, row.t_end);
    double phi = std::numeric_limits<double>::infinity();
    bool phi_ok = ratio_ok;
    if (phi_ok) {
      try {
        phi = phi_integral(scn, guard, row.t_start, row.t_end);
      } catch (const std::domain_error&) {
        phi_ok = false;
        rep.warnings.push_back("separation vanished inside window " +
                               std::to_string(k) + "; demand infinite");
      }
    }
    row.phi_integral = phi;
    if (phi_ok && phi >= phi_threshold) {
      row.ratio = static_cast<double>(row.queries) / (kappa * phi);
      row.ratio_valid = true;
      const double shift = rc.shift_fraction * (row.t_end - row.t_start);
      row.ratio_shifted =
          static_cast<double>(queries_half_open(trace, row.t_start + shift,
                                                row.t_end + shift, last)) /
          (kappa * phi);
      row.ratio_shifted_valid = true;
    } else if (phi_ok) {
      rep.warnings.push_back("window " + std::to_string(k) +
                             " demand below applicability threshold");
    }
    rep.windows.push_back(row);
  }
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string trace_csv(const QueryTrace& trace) {
  std::string out = "time,entity_id\n";
  for (const auto& e : trace.events)
    out += fmt(e.time) + "," + std::to_string(e.entity) + "\n";
  return out;
}

std::string report_csv(const CongestionReport& report) {
  std::string out = "time,degree,ply,ply_exact,thickness,thickness_exact\n";
  for (const auto& r : report.samples)
    out += fmt(r.time) + "," + std::to_string(r.degree) + "," +
           std::to_string(r.ply) + "," + (r.ply_exact ? "1" : "0") + "," +
           std::to_string(r.chi) + "," + (r.chi_exact ? "1" : "0") + "\n";
  return out;
}

std::string windows_csv(const CongestionReport& report) {
  std::string out =
      "t_start,t_end,queries,min_granularity,phi_integral,ratio,"
      "ratio_shifted\n";
  for (const auto& w : report.windows)
    out += fmt(w.t_start) + "," + fmt(w.t_end) + "," +
           std::to_string(w.queries) + "," + fmt(w.min_granularity) + "," +
           fmt(w.phi_integral) + "," +
           (w.ratio_valid ? fmt(w.ratio) : "nan") + "," +
           (w.ratio_shifted_valid ? fmt(w.ratio_shifted) : "nan") + "\n";
  return out;
}

std::string report_svg(const CongestionReport& report) {
  const double width = 800.0, height = 300.0, pad = 40.0;
  if (report.samples.empty())
    return "<svg xmlns=\"http://www.w3.org/2000/svg\"/>\n";
  double t0 = report.samples.front().time, t1 = report.samples.back().time;
  if (t1 <= t0) t1 = t0 + 1.0;
  int vmax = 1;
  for (const auto& r : report.samples)
    vmax = std::max({vmax, r.degree, r.ply, r.chi});
  auto px = [&](double t) {
    return pad + (width - 2 * pad) * (t - t0) / (t1 - t0);
  };
  auto py = [&](double v) {
    return height - pad - (height - 2 * pad) * v / vmax;
  };
  auto poly = [&](const char* color, auto get) {
    std::string s = "<polyline fill=\"none\" stroke=\"";
    s += color;
    s += "\" stroke-width=\"1.5\" points=\"";
    for (const auto& r : report.samples)
      s += fmt(px(r.time)) + "," + fmt(py(get(r))) + " ";
    s += "\"/>\n";
    return s;
  };
  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" "
      "height=\"300\" viewBox=\"0 0 800 300\">\n"
      "<rect width=\"800\" height=\"300\" fill=\"white\"/>\n";
  svg += poly("#d62728", [](const SampleRow& r) { return double(r.degree); });
  svg += poly("#1f77b4", [](const SampleRow& r) { return double(r.ply); });
  svg += poly("#2ca02c", [](const SampleRow& r) { return double(r.chi); });
  svg += "<text x=\"40\" y=\"20\" font-size=\"12\">degree (red), ply (blue), "
         "thickness (green); max ";
  svg += std::to_string(vmax);
  svg += "</text>\n</svg>\n";
  return svg;
}

}  // namespace uq
