#include "kemst/scenario_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "kemst/errors.hpp"
#include "kemst/generators.hpp"

namespace kemst {

namespace {

using nlohmann::json;

struct GeneratorSpec {
  std::map<std::string, double> defaults;
  KineticScenario (*make)(const std::map<std::string, double>&);
};

int as_int(double x, const std::string& name) {
  const int v = static_cast<int>(x);
  if (static_cast<double>(v) != x) throw ParameterError("parameter " + name + " must be an integer");
  return v;
}

const std::map<std::string, GeneratorSpec>& registry() {
  static const std::map<std::string, GeneratorSpec> specs = {
      {"chebyshev",
       {{{"s", 3}, {"n", 11}, {"T", 1.0}},
        [](const auto& p) { return gen_chebyshev(as_int(p.at("s"), "s"), as_int(p.at("n"), "n"), p.at("T")); }}},
      {"appendix",
       {{{"s", 4}, {"n", 8}},
        [](const auto& p) { return gen_appendix_rational(as_int(p.at("s"), "s"), as_int(p.at("n"), "n")); }}},
      {"circle",
       {{{"n", 7}, {"e_len", 0.01}}, [](const auto& p) { return gen_circle(as_int(p.at("n"), "n"), p.at("e_len")); }}},
      {"diamond", {{{"per_side", 6}}, [](const auto& p) { return gen_diamond(as_int(p.at("per_side"), "per_side")); }}},
      {"split", {{{"n", 64}}, [](const auto& p) { return gen_split(as_int(p.at("n"), "n")); }}},
      {"stationary",
       {{{"n", 10}, {"d", 2}, {"T", 1.0}, {"seed", 1}},
        [](const auto& p) {
          return gen_stationary(as_int(p.at("n"), "n"), as_int(p.at("d"), "d"), p.at("T"),
                                static_cast<std::uint64_t>(as_int(p.at("seed"), "seed")));
        }}},
      {"random",
       {{{"n", 10}, {"s", 3}, {"d", 2}, {"T", 1.0}, {"seed", 1}, {"full_range", 0}},
        [](const auto& p) {
          return gen_random_polynomial(as_int(p.at("n"), "n"), as_int(p.at("s"), "s"), as_int(p.at("d"), "d"),
                                       p.at("T"), static_cast<std::uint64_t>(as_int(p.at("seed"), "seed")),
                                       p.at("full_range") != 0.0);
        }}},
  };
  return specs;
}

json coeffs_json(const Coeffs& c) { return json(c); }

json point_json(const Point& p) { return json(p); }

json trajectory_json(const Trajectory& traj) {
  json out;
  out["kind"] = to_string(traj.kind());
  if (const auto* poly = std::get_if<PolynomialMotion>(&traj.motion())) {
    json coords = json::array();
    for (const Coeffs& c : poly->coords) coords.push_back(coeffs_json(c));
    out["coords"] = coords;
  } else if (const auto* rat = std::get_if<RationalMotion>(&traj.motion())) {
    json coords = json::array();
    for (const auto& terms : rat->coords) {
      json list = json::array();
      for (const RationalTerm& t : terms)
        list.push_back({{"shift", t.shift}, {"numerator", t.numerator}, {"denominator", t.denominator}});
      coords.push_back(list);
    }
    out["coords"] = coords;
    out["clamp_unit"] = rat->clamp_unit;
  } else {
    const auto& scripted = std::get<ScriptedMotion>(traj.motion());
    json segs = json::array();
    for (const Segment& seg : scripted.segments) {
      if (const auto* lin = std::get_if<LinearSegment>(&seg)) {
        segs.push_back({{"type", "linear"},
                        {"t0", lin->t0},
                        {"t1", lin->t1},
                        {"start", point_json(lin->start)},
                        {"end", point_json(lin->end)}});
      } else {
        const auto& arc = std::get<ArcSegment>(seg);
        segs.push_back({{"type", "arc"},
                        {"t0", arc.t0},
                        {"t1", arc.t1},
                        {"center", arc.center},
                        {"radius", arc.radius},
                        {"angle0", arc.angle0},
                        {"angle1", arc.angle1}});
      }
    }
    out["segments"] = segs;
  }
  return out;
}

Trajectory trajectory_from_json(const json& j, double horizon) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "polynomial") return Trajectory::polynomial(j.at("coords").get<std::vector<Coeffs>>(), horizon);
  if (kind == "rational") {
    std::vector<std::vector<RationalTerm>> coords;
    for (const json& list : j.at("coords")) {
      std::vector<RationalTerm> terms;
      for (const json& t : list)
        terms.push_back({t.value("shift", 0.0), t.at("numerator").get<Coeffs>(), t.at("denominator").get<Coeffs>()});
      coords.push_back(std::move(terms));
    }
    return Trajectory::rational(std::move(coords), horizon, j.value("clamp_unit", false));
  }
  if (kind == "scripted") {
    std::vector<Segment> segs;
    for (const json& s : j.at("segments")) {
      const std::string type = s.at("type").get<std::string>();
      if (type == "linear") {
        segs.push_back(LinearSegment{s.at("t0").get<double>(), s.at("t1").get<double>(),
                                     s.at("start").get<Point>(), s.at("end").get<Point>()});
      } else if (type == "arc") {
        segs.push_back(ArcSegment{s.at("t0").get<double>(), s.at("t1").get<double>(),
                                  s.at("center").get<std::array<double, 2>>(), s.at("radius").get<double>(),
                                  s.at("angle0").get<double>(), s.at("angle1").get<double>()});
      } else {
        throw ParameterError("unknown segment type '" + type + "'");
      }
    }
    return Trajectory::scripted(std::move(segs), horizon);
  }
  throw ParameterError("unknown trajectory kind '" + kind + "'");
}

}  // namespace

const std::vector<std::string>& generator_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, spec] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

KineticScenario make_generated(const std::string& name, const std::map<std::string, double>& params) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw ParameterError("unknown generator '" + name + "'");
  std::map<std::string, double> merged = it->second.defaults;
  for (const auto& [key, value] : params) {
    if (!merged.count(key)) throw ParameterError("generator " + name + " has no parameter '" + key + "'");
    merged[key] = value;
  }
  return it->second.make(merged);
}

std::string scenario_to_json(const KineticScenario& sc) {
  sc.validate();
  json j;
  j["format_version"] = kScenarioFormatVersion;
  j["label"] = sc.label;
  j["n"] = sc.size();
  j["d"] = sc.dimension();
  j["T"] = sc.horizon();
  j["k"] = sc.k;
  j["K"] = sc.K;
  j["morph_mode"] = to_string(sc.morph_mode);
  j["markers"] = sc.markers;
  if (sc.generator) j["generator"] = {{"name", sc.generator->name}, {"params", sc.generator->params}};
  json points = json::array();
  for (const Trajectory& t : sc.points) points.push_back(trajectory_json(t));
  j["points"] = points;
  return j.dump(2) + "\n";
}

KineticScenario scenario_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParameterError(std::string("scenario is not valid JSON: ") + e.what());
  }
  try {
    const int version = j.at("format_version").get<int>();
    if (version != kScenarioFormatVersion)
      throw ParameterError("unsupported scenario format_version " + std::to_string(version));
    KineticScenario sc;
    if (j.contains("points")) {
      const double horizon = j.at("T").get<double>();
      for (const json& p : j.at("points")) sc.points.push_back(trajectory_from_json(p, horizon));
      if (j.contains("generator"))
        sc.generator = GeneratorInfo{j["generator"].at("name").get<std::string>(),
                                     j["generator"].value("params", std::map<std::string, double>{})};
    } else if (j.contains("generator")) {
      sc = make_generated(j["generator"].at("name").get<std::string>(),
                          j["generator"].value("params", std::map<std::string, double>{}));
    } else {
      throw ParameterError("scenario needs either points or a generator");
    }
    if (j.contains("k")) sc.k = j["k"].get<double>();
    if (j.contains("K")) sc.K = j["K"].get<double>();
    if (j.contains("morph_mode")) sc.morph_mode = morph_mode_from_string(j["morph_mode"].get<std::string>());
    if (j.contains("label")) sc.label = j["label"].get<std::string>();
    if (j.contains("markers")) sc.markers = j["markers"].get<std::map<std::string, double>>();
    sc.validate();
    if (j.contains("n") && j["n"].get<std::size_t>() != sc.size())
      throw ParameterError("scenario n does not match the number of points");
    if (j.contains("d") && j["d"].get<std::size_t>() != sc.dimension())
      throw ParameterError("scenario d does not match the trajectories");
    return sc;
  } catch (const json::exception& e) {
    throw ParameterError(std::string("malformed scenario: ") + e.what());
  }
}

KineticScenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot read scenario file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str());
}

void save_scenario(const KineticScenario& sc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot write scenario file " + path);
  out << scenario_to_json(sc);
}

}  // namespace kemst
