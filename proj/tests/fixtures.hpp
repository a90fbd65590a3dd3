#pragma once

#include <tropfan/io.hpp>

#include <optional>
#include <string>
#include <vector>

inline std::string fixture_path(const std::string& name) { return std::string(TROPFAN_FIXTURES) + "/" + name; }

inline tropfan::WeightedFan load_fixture(const std::string& name,
                                         const std::optional<tropfan::RingTag>& ring = std::nullopt) {
  return tropfan::parse_fan_file(fixture_path(name), ring);
}

inline tropfan::WeightedFan u34_bergman() {
  return tropfan::bergman_fan(tropfan::parse_matroid_file(fixture_path("u34.json")));
}

/// Every fan document shipped in fixtures/.
inline std::vector<std::string> fan_fixtures() {
  return {"cross.json", "bipartite.json", "four_ray.json", "counterexample.json", "u34_fan.json", "cube.json"};
}
