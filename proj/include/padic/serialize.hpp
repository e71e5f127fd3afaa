#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "padic/entropy.hpp"
#include "padic/partition.hpp"
#include "padic/rational_map.hpp"

namespace padic {

using Json = nlohmann::ordered_json;

// Map configuration file:
//   { "prime": 2, "numerator": ["0","9/4","-9/2","9/4"], "denominator": ["1"],
//     "critical_points": ["1","1/3"], "name": "f" }
// `critical_points` and `name` are optional; any other key is rejected.
struct MapConfig {
  std::string name;
  RationalMap map;
  // Declared critical points; checked against the derived ones when present.
  std::optional<std::vector<ProjectivePoint>> critical_points;
};

MapConfig map_config_from_json(const Json& j);
Json map_config_to_json(const MapConfig& c);
MapConfig load_map_config(const std::string& path);

Json read_json_file(const std::string& path);

// Partition models.  The basin certificates are not stored; they are
// recomputed from the map on load.
Json model_to_json(const PartitionModel& m);
PartitionModel model_from_json(const Json& j, const RationalMap& f);

// Transition graph on its own (nodes and rules).
Json graph_to_json(const TransitionGraph& g);
TransitionGraph graph_from_json(const Json& j);

// { "R_lo": "a/b", "R_hi": "c/d", "h_lo": 0.52..., "h_hi": ..., "method": "closed-form", ... }
Json entropy_to_json(const EntropyResult& r);
EntropyResult entropy_from_json(const Json& j);

Json census_to_json(const LoopCensus& c, const TransitionGraph& g);

// Infinite words: { "prefix": ["alpha_1", "beta_3"], "period": ["alpha_inf"] }.
Json word_to_json(const InfiniteWord& w, const TransitionGraph& g);
InfiniteWord word_from_json(const Json& j, const TransitionGraph& g);

Json index_range_to_json(const IndexRange& r);
IndexRange index_range_from_json(const Json& j);

}  // namespace padic
