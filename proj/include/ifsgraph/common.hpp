#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ifsgraph {

struct Caps {
  int refine_depth = 12;          // max stack depth of the neighbor-map search
  int witness_word_len = 6;       // brute-force fallback
  int witness_period_len = 3;
  std::size_t node_budget = 2'000'000;      // neighbor nodes per query
  std::size_t max_level_classes = 2'000'000;
  std::size_t max_level_words = 20'000'000;
  std::size_t cache_limit = 0;              // neighbor cache entries, 0 = unbounded
};

struct ResourceCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class View { E, Diamond };

inline const char* view_name(View v) { return v == View::E ? "E" : "Ed"; }

}  // namespace ifsgraph
