// Metrics, Gromov products, canonical geodesics and hyperbolicity diagnostics.
#pragma once

#include "ifsgraph/graph.hpp"

#include <cmath>
#include <vector>

namespace ifsgraph {

constexpr int kUnreachable = -1;

// Single-source BFS in the chosen view; same_level restricts to the source level.
std::vector<int> bfs(const AugmentedGraph& g, View view, int src, bool same_level = false);

struct Distances {
  View view = View::E;
  std::vector<std::vector<int>> d;
  int operator()(int x, int y) const { return d[x][y]; }
};

Distances all_pairs(const AugmentedGraph& g, View view);

int distance(const AugmentedGraph& g, View view, int x, int y);

// (|x| + |y| - d(x, y)) / 2, exact.
Rational gromov_product(const AugmentedGraph& g, View view, int x, int y);
Rational gromov_product(const AugmentedGraph& g, const Distances& d, int x, int y);

struct GeodesicPath {
  std::vector<int> vertices;
  int top = 0;       // level of the highest (closest to the root) vertex
  int ell = 0;       // horizontal length (E view); 0 for the diamond view
  int desc_end = 0;  // index where the horizontal/top part starts
  int asc_begin = 0; // index where the ascending part starts

  int length() const { return static_cast<int>(vertices.size()) - 1; }
};

GeodesicPath canonical_geodesic(const AugmentedGraph& g, const Distances& d, int x, int y);

// Per level: longest geodesic made only of horizontal edges.
std::vector<int> horizontal_geodesic_bound(const AugmentedGraph& g, const Distances& de);

struct DiamondResult {
  bool no_same_level_edges = true;
  bool closes = true;
  bool even = true;
  std::string counterexample;
  bool ok() const { return no_same_level_edges && closes && even; }
};

DiamondResult diamond_check(const AugmentedGraph& g, View view, const Distances& dd);

struct FanResult {
  int delta_prime = 0;
  int witness_vertex = -1;
  int witness_level = -1;
};

// Max d◇-diameter of the level slices of descending geodesics o -> z.
FanResult geodesic_fan_divergence(const AugmentedGraph& g, const Distances& dd);

// Level-i slices G_i(z) for one vertex, index i = level.
std::vector<std::vector<int>> geodesic_slices(const AugmentedGraph& g, int z);

struct DeltaResult {
  Rational delta = 0;
  bool exhaustive = true;
  std::size_t triples = 0;
};

DeltaResult delta_hyperbolicity(const AugmentedGraph& g, const Distances& d, std::size_t vertex_cap = 10000,
                                std::size_t samples = 2'000'000, std::uint64_t seed = 0x5eed);

struct QuasiResult {
  int max_excess = 0;  // max(d◇ - d - 1); must be <= 0
  int C = 0;           // max(d - d◇)
  std::size_t violations = 0;
  std::size_t pairs = 0;
};

QuasiResult quasi_isometry_check(const Distances& de, const Distances& dd);

// Largest admissible a from e^{δa} - 1 < √2 - 1, i.e. ln2/(2δ); ln 2 when δ = 0.
double a_max(const Rational& delta);

struct RhoA {
  double a = 0;
  Rational gromov = 0;
  bool same = false;
  double value() const { return same ? 0.0 : std::exp(-a * gromov.convert_to<double>()); }
};

RhoA rho_a(const AugmentedGraph& g, const Distances& d, int x, int y, double a);

struct ThetaResult {
  std::vector<std::vector<double>> theta;
  bool sandwich_ok = true;
  double worst_lower_slack = 0;  // min over pairs of theta - (1-2a')rho
};

ThetaResult theta_a(const AugmentedGraph& g, const Distances& d, const std::vector<int>& subset, double a,
                    const Rational& delta);

// Max length of minimal touching subchains among level-n cylinders meeting a
// probe set of diameter a_scale * r^n.
int condition_c_diagnostic(const AugmentedGraph& g, const Ball& inv, int n, const Rational& a_scale);

struct HyperbolicityReport {
  View view = View::E;
  int depth = 0;
  Rational delta = 0;
  bool delta_exhaustive = true;
  std::vector<int> L_per_level;
  int L = 0;
  int delta_prime = 0;
  int quasi_C = 0;
  std::size_t lemma_violations = 0;
  bool diamond_ok = true;
  double a_max = 0;
  int condition_c = 0;
};

HyperbolicityReport analyze(const AugmentedGraph& g);

// Structural distances on the lazy space, valid at any depth the space can
// reach. E: min over h of (|x|-h) + (|y|-h) + horizontal distance between
// level-h ancestor sets. E◇: |x| + |y| - 2 * (deepest level shared by the
// descending closures).
class LazyMetric {
 public:
  explicit LazyMetric(Universe& u);

  int distance(View view, ClassId x, ClassId y);
  Rational gromov(View view, ClassId x, ClassId y);

  // Ancestor sets along vertical edges, index = level.
  std::vector<std::vector<ClassId>> ancestors(ClassId x);
  // Descending E◇ closure, index = level.
  std::vector<std::vector<ClassId>> closure(ClassId x);

 private:
  int distance_e(ClassId x, ClassId y);
  int distance_d(ClassId x, ClassId y);
  const std::vector<double>& center(ClassId x);

  Universe& u_;
  double radius_;
  std::unordered_map<ClassId, std::vector<double>> centers_;
};

}  // namespace ifsgraph
