// Augmented graphs (X, E) and (X, E◇) on a finite truncation.
#pragma once

#include "ifsgraph/space.hpp"

#include <iosfwd>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ifsgraph {

enum class EdgeKind { Vertical, VerticalPlus, Horizontal };

const char* edge_kind_name(EdgeKind k);

inline bool in_view(EdgeKind k, View v) {
  return k == EdgeKind::Vertical || (v == View::E ? k == EdgeKind::Horizontal : k == EdgeKind::VerticalPlus);
}

struct Edge {
  int u, v;  // u < v: lower level first, then class order
  EdgeKind kind;
  bool certain = true;
};

struct AugmentedGraph {
  IfsSpec ifs;
  int depth = 0;
  std::vector<VertexClass> vertices;  // sorted by (level, smallest member)
  std::vector<std::vector<int>> by_level;
  std::vector<Edge> edges;
  std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbor, edge index)

  int size() const { return static_cast<int>(vertices.size()); }
  int level(int x) const { return vertices[x].level; }
  int root() const { return 0; }
  int find(int level, const std::string& key) const;
  std::vector<int> neighbors(int x, View view) const;
  std::vector<int> parents(int x) const;
  std::vector<int> children(int x) const;
  std::vector<int> horizontal(int x) const;
  bool has_uncertain() const;

  std::vector<std::unordered_map<std::string, int>> index;
};

// Vertical edges from prefix structure; horizontal and vertical-plus edges
// from the oracle on every candidate pair whose cylinder balls overlap.
AugmentedGraph build_graph(IntersectOracle& oracle, int depth, Mode mode = Mode::Strict);

// Same graph assembled from the lazy relations of a Universe.
AugmentedGraph graph_from_universe(Universe& u, int depth);

std::vector<std::pair<int, int>> conjugate_pairs(const AugmentedGraph& g, int n);

// Per level: max over probe points of the number of distinct level-n maps
// whose cylinder ball contains the probe; a lower-bound witness for gamma.
std::vector<std::size_t> wsc_gamma_estimate(IntersectOracle& oracle, int depth);

struct DegreeRow {
  int level = 0;
  int min_h = 0, max_h = 0;
  int min_vplus = 0, max_vplus = 0;
  int min_total_e = 0, max_total_e = 0;
  int min_total_d = 0, max_total_d = 0;
};

struct DegreeReport {
  std::vector<DegreeRow> rows;
  bool growth_warning = false;  // max degree still rising over the last three levels
};

DegreeReport degree_report(const AugmentedGraph& g);

void write_dot(std::ostream& os, const AugmentedGraph& g, View view, const std::vector<int>& highlight = {});
void write_edges_csv(std::ostream& os, const AugmentedGraph& g);

}  // namespace ifsgraph
