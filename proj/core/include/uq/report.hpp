#pragma once

#include <map>
#include <string>
#include <vector>

#include "uq/congestion.hpp"
#include "uq/schemes.hpp"

namespace uq {

// Replays a query trace against the true trajectories, exposing the
// perception state at nondecreasing sample times.
class TraceReplayer {
 public:
  TraceReplayer(const Scenario& scn, const QueryTrace& trace);

  // Applies every query with time <= t; t must not decrease across calls.
  const PerceptionState& at(double t);

 private:
  const Scenario& scn_;
  const QueryTrace& trace_;
  PerceptionState st_;
  std::size_t next_ = 0;
};

std::vector<Region> regions_at(const Scenario& scn, const QueryTrace& trace,
                               double t);

struct ReportConfig {
  double sample_dt = 0.0;       // 0: min x-separation at t0 divided by 8
  double sample_start = 0.0;
  int windows = 4;
  double shift_fraction = 0x1p-10;
  std::size_t chi_exact_limit = 20;
};

struct SampleRow {
  double time = 0.0;
  int degree = 0;
  int ply = 0;
  bool ply_exact = true;
  int chi = 0;
  bool chi_exact = true;
};

struct WindowRow {
  double t_start = 0.0;
  double t_end = 0.0;
  long long queries = 0;
  double min_granularity = 0.0;
  double phi_integral = 0.0;
  double ratio = 0.0;          // queries / lower-bound functional
  bool ratio_valid = false;    // demand above the applicability threshold
  double ratio_shifted = 0.0;
  bool ratio_shifted_valid = false;
};

struct CongestionReport {
  std::vector<SampleRow> samples;
  std::vector<WindowRow> windows;
  std::vector<std::string> warnings;
  std::map<std::string, double> metadata;
};

CongestionReport build_report(const Scenario& scn, const QueryTrace& trace,
                              const SchemeConfig& scheme,
                              const ReportConfig& rc);

// CSV / plot emission. Formatting is pinned so identical inputs give
// byte-identical files.
std::string trace_csv(const QueryTrace& trace);
std::string report_csv(const CongestionReport& report);
std::string windows_csv(const CongestionReport& report);
std::string report_svg(const CongestionReport& report);

}  // namespace uq
