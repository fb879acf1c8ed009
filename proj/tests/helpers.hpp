// Shared fixtures for the unit tests.
#pragma once

#include "ifsgraph/boundary.hpp"
#include "ifsgraph/graph.hpp"
#include "ifsgraph/hyperbolic.hpp"
#include "ifsgraph/presets.hpp"

#include <doctest.h>

namespace testing {

using namespace ifsgraph;

inline Word W(const IfsSpec& ifs, const std::string& s) { return parse_word(ifs, s); }

inline int vertex(const AugmentedGraph& g, const std::string& word) {
  const Word w = parse_word(g.ifs, word);
  for (int x = 0; x < g.size(); ++x)
    for (const auto& m : g.vertices[x].members)
      if (m == w) return x;
  FAIL("no vertex with member " << word);
  return -1;
}

// Floyd-Warshall on the chosen view, independent of the BFS code.
inline std::vector<std::vector<int>> floyd(const AugmentedGraph& g, View view) {
  const int n = g.size(), inf = 1 << 28;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (int i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& e : g.edges)
    if (in_view(e.kind, view)) d[e.u][e.v] = d[e.v][e.u] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

}  // namespace testing
