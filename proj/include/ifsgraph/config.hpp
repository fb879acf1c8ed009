// Run configuration: JSON text -> validated IFS, caps and command options.
#pragma once

#include "ifsgraph/boundary.hpp"
#include "ifsgraph/presets.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ifsgraph {

struct ConfigError : std::runtime_error {
  int line = 0, column = 0;  // 1-based; 0 when the error is not positional
  std::string field;
  ConfigError(const std::string& msg, std::string f, int l = 0, int c = 0)
      : std::runtime_error(msg), line(l), column(c), field(std::move(f)) {}
};

struct RunConfig {
  std::string preset;  // empty when the IFS is given inline
  Preset base;
  int depth = 3;
  View view = View::E;
  Mode mode = Mode::Strict;
  std::string out = "out";

  // boundary
  std::optional<double> a;  // default a_max / 2
  int boundary_depth = 12;
  int stabilize = 3;
  std::vector<AddressPair> pairs;
  std::size_t random_pairs = 0;
  std::uint64_t seed = 1;

  // gaps
  int gap_level = -1;  // -1: use depth
  int net_period_len = 2;

  const IfsSpec& ifs() const { return base.ifs; }
  const Caps& caps() const { return base.caps; }
};

/*
 * {
 *   "preset": "interval3",                 // or "ifs": {...}
 *   "ifs": {"dimension": 1, "label_base": 0, "ball_center": ["1"],
 *           "maps": [{"ratio": "1/2", "orthogonal": [["1"]], "translation": ["0"]}, ...]},
 *   "depth": 4, "view": "E" | "Ed", "mode": "strict" | "optimistic", "out": "dir",
 *   "caps": {"refine_depth": 12, "witness_word_len": 6, "witness_period_len": 3,
 *            "node_budget": 2000000, "max_level_classes": 2000000, "max_level_words": 20000000,
 *            "cache_limit": 0},
 *   "boundary": {"a": 0.17, "depth": 12, "stabilize": 3, "pairs": [["(0)", "(2)"]],
 *                "random_pairs": 100, "seed": 1},
 *   "gaps": {"max_level": 6, "net_period_len": 2}
 * }
 * Rationals are strings ("p/q", "0.25", "3") or JSON integers.
 */
RunConfig parse_config(const std::string& text);
RunConfig config_for_preset(const std::string& name);

nlohmann::json ifs_to_json(const IfsSpec& ifs);
IfsSpec ifs_from_json(const nlohmann::json& j);

// Apply "key=value,key=value" overrides to caps.
void apply_caps(Caps& caps, const std::string& overrides);

View parse_view(const std::string& s);
Mode parse_mode(const std::string& s);

}  // namespace ifsgraph
