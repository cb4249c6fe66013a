#include "uq/scenario_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace uq {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& why) {
  throw std::runtime_error("scenario schema: " + path + ": " + why);
}

const json& need(const json& obj, const std::string& key,
                 const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing");
  return *it;
}

double need_number(const json& obj, const std::string& key,
                   const std::string& path) {
  const json& v = need(obj, key, path);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

double opt_number(const json& obj, const std::string& key, double fallback) {
  if (!obj.is_object()) return fallback;
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  return it->get<double>();
}

}  // namespace

ScenarioFile parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("scenario parse: ") + e.what());
  }
  ScenarioFile sf;
  Scenario& scn = sf.scenario;
  scn.dim = static_cast<int>(need_number(j, "dim", ""));
  if (scn.dim < 1) fail("dim", "must be >= 1");
  scn.rho = need_number(j, "rho", "");
  const json& ed = need(j, "enforce_disjoint", "");
  if (!ed.is_boolean()) fail("enforce_disjoint", "expected a boolean");
  scn.enforce_disjoint = ed.get<bool>();
  scn.horizon = need_number(j, "horizon", "");
  if (j.contains("target_time") && !j["target_time"].is_null())
    scn.target_time = j["target_time"].get<double>();

  const json& ents = need(j, "entities", "");
  if (!ents.is_array()) fail("entities", "expected an array");
  scn.trajectories.resize(ents.size());
  for (std::size_t k = 0; k < ents.size(); ++k) {
    const std::string epath = "entities[" + std::to_string(k) + "]";
    const json& ent = ents[k];
    const double id = need_number(ent, "id", epath);
    if (id != static_cast<double>(k))
      fail(epath + ".id", "ids must be 0..n-1 in order");
    const json& wps = need(ent, "waypoints", epath);
    if (!wps.is_array() || wps.empty())
      fail(epath + ".waypoints", "expected a nonempty array");
    for (std::size_t w = 0; w < wps.size(); ++w) {
      const std::string wpath = epath + ".waypoints[" + std::to_string(w) + "]";
      const json& wp = wps[w];
      if (!wp.is_array() || wp.size() != 2 || !wp[0].is_number() ||
          !wp[1].is_array())
        fail(wpath, "expected [t, [coords]]");
      if (wp[1].size() != static_cast<std::size_t>(scn.dim))
        fail(wpath, "coordinate count does not match dim");
      Point p;
      for (const auto& c : wp[1]) {
        if (!c.is_number()) fail(wpath, "coordinates must be numbers");
        p.push_back(c.get<double>());
      }
      scn.trajectories[k].waypoints.push_back({wp[0].get<double>(), p});
    }
  }

  if (j.contains("scheme")) {
    const json& sc = j["scheme"];
    const json& kind = need(sc, "kind", "scheme");
    if (!kind.is_string()) fail("scheme.kind", "expected a string");
    try {
      sf.scheme.kind = scheme_kind_from_string(kind.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail("scheme.kind", e.what());
    }
    sf.scheme.x = static_cast<int>(opt_number(sc, "x", sf.scheme.x));
    sf.scheme.beta = opt_number(sc, "beta", sf.scheme.beta);
    if (sc.contains("measure")) {
      const std::string m = sc["measure"].get<std::string>();
      if (m != "degree" && m != "ply")
        fail("scheme.measure", "expected 'degree' or 'ply'");
      sf.scheme.measure = m == "ply" ? Measure::ply : Measure::degree;
    }
    if (sc.contains("script")) sf.scheme.script = sc["script"].get<std::string>();
    if (sc.contains("params")) {
      const json& ps = sc["params"];
      if (!ps.is_object()) fail("scheme.params", "expected an object");
      for (const auto& [key, val] : ps.items()) {
        if (!val.is_number()) fail("scheme.params." + key, "expected a number");
        sf.scheme.params[key] = val.get<double>();
      }
    }
  }
  sf.scheme.target_time = scn.target_time;

  if (j.contains("report")) {
    const json& rp = j["report"];
    sf.report.sample_dt = opt_number(rp, "sample_dt", sf.report.sample_dt);
    sf.report.windows =
        static_cast<int>(opt_number(rp, "windows", sf.report.windows));
    sf.report.shift_fraction =
        opt_number(rp, "shift_fraction", sf.report.shift_fraction);
  }
  return sf;
}

std::string serialize_scenario(const ScenarioFile& sf) {
  json j;
  const Scenario& scn = sf.scenario;
  j["dim"] = scn.dim;
  j["rho"] = scn.rho;
  j["enforce_disjoint"] = scn.enforce_disjoint;
  j["horizon"] = scn.horizon;
  if (scn.target_time)
    j["target_time"] = *scn.target_time;
  else
    j["target_time"] = nullptr;
  j["entities"] = json::array();
  for (std::size_t i = 0; i < scn.size(); ++i) {
    json ent;
    ent["id"] = i;
    ent["waypoints"] = json::array();
    for (const auto& [t, p] : scn.trajectories[i].waypoints)
      ent["waypoints"].push_back(json::array({t, p}));
    j["entities"].push_back(ent);
  }
  json sc;
  sc["kind"] = to_string(sf.scheme.kind);
  sc["x"] = sf.scheme.x;
  sc["beta"] = sf.scheme.beta;
  sc["measure"] = sf.scheme.measure == Measure::ply ? "ply" : "degree";
  if (!sf.scheme.script.empty()) sc["script"] = sf.scheme.script;
  sc["params"] = json::object();
  for (const auto& [k, v] : sf.scheme.params) sc["params"][k] = v;
  j["scheme"] = sc;
  json rp;
  rp["sample_dt"] = sf.report.sample_dt;
  rp["windows"] = sf.report.windows;
  rp["shift_fraction"] = sf.report.shift_fraction;
  j["report"] = rp;
  return j.dump(2) + "\n";
}

ScenarioFile load_scenario(const std::string& path) {
  return parse_scenario(read_file(path));
}

void save_scenario(const ScenarioFile& sf, const std::string& path) {
  write_file(path, serialize_scenario(sf));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace uq
