#include "magctrl/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace magctrl {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& path) {
  for (const auto& item : obj.items()) {
    if (!allowed.contains(item.key())) {
      throw std::invalid_argument("unknown key \"" + path + item.key() +
                                  "\" in config");
    }
  }
}

double require_number(const json& obj, const std::string& key,
                      const std::string& path) {
  if (!obj.contains(key)) {
    throw std::invalid_argument("missing required field \"" + path + key +
                                "\" in config");
  }
  if (!obj.at(key).is_number()) {
    throw std::invalid_argument("field \"" + path + key +
                                "\" must be a number");
  }
  return obj.at(key).get<double>();
}

}  // namespace

InertiaTensor AnalysisConfig::inertia_tensor() const {
  return InertiaTensor(inertia[0], inertia[1], inertia[2]);
}

OrbitConfig AnalysisConfig::orbit() const {
  return OrbitConfig(omega0, semi_major_axis, inclination_mag,
                     dipole_strength);
}

AnalysisConfig load_config_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config parse error: ") +
                                e.what());
  }
  if (!doc.is_object()) {
    throw std::invalid_argument("config root must be an object");
  }
  reject_unknown_keys(doc, {"inertia", "orbit", "numerics"}, "");

  AnalysisConfig config;

  if (!doc.contains("inertia") || !doc.at("inertia").is_array() ||
      doc.at("inertia").size() != 3) {
    throw std::invalid_argument(
        "field \"inertia\" must be an array of three numbers");
  }
  for (int i = 0; i < 3; ++i) {
    if (!doc.at("inertia").at(i).is_number()) {
      throw std::invalid_argument(
          "field \"inertia\" must be an array of three numbers");
    }
    config.inertia[static_cast<std::size_t>(i)] =
        doc.at("inertia").at(i).get<double>();
  }

  if (!doc.contains("orbit") || !doc.at("orbit").is_object()) {
    throw std::invalid_argument("field \"orbit\" must be an object");
  }
  const json& orbit = doc.at("orbit");
  reject_unknown_keys(
      orbit, {"omega0", "semi_major_axis", "inclination_mag", "dipole_strength"},
      "orbit.");
  config.semi_major_axis = require_number(orbit, "semi_major_axis", "orbit.");
  config.inclination_mag = require_number(orbit, "inclination_mag", "orbit.");
  if (orbit.contains("dipole_strength")) {
    config.dipole_strength = require_number(orbit, "dipole_strength", "orbit.");
  }
  if (orbit.contains("omega0")) {
    config.omega0 = require_number(orbit, "omega0", "orbit.");
  } else {
    config.omega0 = OrbitConfig::from_semi_major_axis(
                        config.semi_major_axis, config.inclination_mag,
                        config.dipole_strength)
                        .omega0;
  }

  if (doc.contains("numerics")) {
    if (!doc.at("numerics").is_object()) {
      throw std::invalid_argument("field \"numerics\" must be an object");
    }
    const json& numerics = doc.at("numerics");
    reject_unknown_keys(numerics,
                        {"rank_tol", "steps_per_orbit", "gramian_nodes"},
                        "numerics.");
    if (numerics.contains("rank_tol")) {
      config.numerics.rank_tol = require_number(numerics, "rank_tol",
                                                "numerics.");
    }
    if (numerics.contains("steps_per_orbit")) {
      config.numerics.steps_per_orbit = static_cast<int>(
          require_number(numerics, "steps_per_orbit", "numerics."));
    }
    if (numerics.contains("gramian_nodes")) {
      config.numerics.gramian_nodes = static_cast<int>(
          require_number(numerics, "gramian_nodes", "numerics."));
    }
  }

  // Construct the domain types once so their validation runs at load time.
  config.inertia_tensor();
  config.orbit();
  if (!(config.numerics.rank_tol > 0.0 && config.numerics.rank_tol < 1.0)) {
    throw std::invalid_argument("numerics.rank_tol must lie in (0, 1)");
  }
  if (config.numerics.steps_per_orbit < 1) {
    throw std::invalid_argument("numerics.steps_per_orbit must be >= 1");
  }
  if (config.numerics.gramian_nodes < 3 ||
      config.numerics.gramian_nodes % 2 == 0) {
    throw std::invalid_argument("numerics.gramian_nodes must be odd and >= 3");
  }
  return config;
}

AnalysisConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open config file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_config_string(buffer.str());
}

std::string config_to_json(const AnalysisConfig& config) {
  json doc;
  doc["inertia"] = {config.inertia[0], config.inertia[1], config.inertia[2]};
  doc["orbit"] = {{"omega0", config.omega0},
                  {"semi_major_axis", config.semi_major_axis},
                  {"inclination_mag", config.inclination_mag},
                  {"dipole_strength", config.dipole_strength}};
  doc["numerics"] = {{"rank_tol", config.numerics.rank_tol},
                     {"steps_per_orbit", config.numerics.steps_per_orbit},
                     {"gramian_nodes", config.numerics.gramian_nodes}};
  return doc.dump(2);
}

}  // namespace magctrl
