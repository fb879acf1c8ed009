#include "helpers.hpp"

#include <cmath>

using namespace ifsgraph;
using testing::vertex;

namespace {

AugmentedGraph graph_of(const std::string& name, int depth) {
  Preset p = make_preset(name);
  IntersectOracle o(p.ifs, p.caps);
  return build_graph(o, depth);
}

bool adjacent(const AugmentedGraph& g, View view, int a, int b) {
  auto ns = g.neighbors(a, view);
  return std::find(ns.begin(), ns.end(), b) != ns.end();
}

}  // namespace

TEST_CASE("interval3 distances and Gromov products") {
  AugmentedGraph g = graph_of("interval3", 3);
  const int a = vertex(g, "00"), b = vertex(g, "22");
  CHECK(distance(g, View::E, a, b) == 3);
  CHECK(distance(g, View::Diamond, a, b) == 2);
  CHECK(gromov_product(g, View::E, a, b) == Rational(1, 2));
  CHECK(gromov_product(g, View::Diamond, a, b) == 1);
  CHECK(gromov_product(g, View::E, a, a) == 2);
  for (View v : {View::E, View::Diamond})
    for (int x = 0; x < g.size(); ++x) CHECK(distance(g, v, g.root(), x) == g.level(x));
}

TEST_CASE("BFS agrees with Floyd-Warshall") {
  for (const char* name : {"interval3", "gasket3", "mixed-ratio"}) {
    CAPTURE(name);
    AugmentedGraph g = graph_of(name, 3);
    for (View v : {View::E, View::Diamond}) {
      Distances d = all_pairs(g, v);
      CHECK(d.d == testing::floyd(g, v));
    }
  }
}

TEST_CASE("canonical geodesics on interval3") {
  AugmentedGraph g = graph_of("interval3", 3);
  Distances de = all_pairs(g, View::E), dd = all_pairs(g, View::Diamond);
  const int a = vertex(g, "00"), b = vertex(g, "22");
  GeodesicPath pe = canonical_geodesic(g, de, a, b);
  CHECK(pe.vertices == std::vector<int>{a, vertex(g, "0"), vertex(g, "2"), b});
  CHECK(pe.top == 1);
  CHECK(pe.ell == 1);
  GeodesicPath pd = canonical_geodesic(g, dd, a, b);
  CHECK(pd.vertices == std::vector<int>{a, vertex(g, "1"), b});
  CHECK(pd.top == 1);
  CHECK(canonical_geodesic(g, de, a, a).vertices == std::vector<int>{a});
}

TEST_CASE("canonical geodesics are valid and match the Gromov product") {
  for (const char* name : {"interval3", "gasket3", "mixed-ratio"}) {
    CAPTURE(name);
    AugmentedGraph g = graph_of(name, name == std::string("interval3") ? 4 : 3);
    for (View v : {View::E, View::Diamond}) {
      Distances d = all_pairs(g, v);
      for (int x = 0; x < g.size(); ++x)
        for (int y = 0; y < g.size(); ++y) {
          GeodesicPath p = canonical_geodesic(g, d, x, y);
          REQUIRE(p.length() == d(x, y));
          REQUIRE(p.vertices.front() == x);
          REQUIRE(p.vertices.back() == y);
          for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i)
            REQUIRE(adjacent(g, v, p.vertices[i], p.vertices[i + 1]));
          // Shape: strictly down, flat, strictly up.
          for (int i = 0; i < p.desc_end; ++i) CHECK(g.level(p.vertices[i + 1]) == g.level(p.vertices[i]) - 1);
          for (int i = p.desc_end; i < p.asc_begin; ++i) CHECK(g.level(p.vertices[i + 1]) == g.level(p.vertices[i]));
          for (int i = p.asc_begin; i < p.length(); ++i) CHECK(g.level(p.vertices[i + 1]) == g.level(p.vertices[i]) + 1);
          const Rational gp = gromov_product(g, d, x, y);
          if (v == View::E) {
            CHECK(Rational(p.top) - Rational(p.ell, 2) == gp);
          } else {
            CHECK(p.ell == 0);
            CHECK(Rational(p.top) == gp);
          }
        }
    }
  }
}

TEST_CASE("E-view geodesics never dip through a shared child") {
  AugmentedGraph g = graph_of("interval3", 4);
  Distances de = all_pairs(g, View::E);
  for (int x = 0; x < g.size(); ++x)
    for (int y = 0; y < g.size(); ++y) {
      auto p = canonical_geodesic(g, de, x, y).vertices;
      for (std::size_t i = 0; i + 2 < p.size(); ++i) {
        const bool dip = g.level(p[i]) == g.level(p[i + 2]) && g.level(p[i + 1]) == g.level(p[i]) + 1;
        CHECK_FALSE(dip);
      }
    }
}

TEST_CASE("horizontal geodesic lengths on interval3") {
  AugmentedGraph g = graph_of("interval3", 5);
  Distances de = all_pairs(g, View::E);
  auto L = horizontal_geodesic_bound(g, de);
  REQUIRE(L.size() == 6);
  // Independent count: same-level pairs whose same-level distance equals d.
  for (int n = 0; n <= 5; ++n) {
    int best = 0;
    for (int x : g.by_level[n]) {
      auto dh = bfs(g, View::E, x, true);
      for (int y : g.by_level[n])
        if (dh[y] != kUnreachable && dh[y] == de(x, y)) best = std::max(best, dh[y]);
    }
    CHECK(L[n] == best);
  }
  CHECK(L[0] == 0);
  CHECK(L[1] == 1);
  // [00] and [11] are two horizontal steps apart through [02 10], and no shorter route exists.
  CHECK(de(vertex(g, "00"), vertex(g, "11")) == 2);
  CHECK(L[2] >= 2);
}

TEST_CASE("diamond law and evenness") {
  for (const auto& name : preset_names()) {
    CAPTURE(name);
    AugmentedGraph g = graph_of(name, 3);
    Distances dd = all_pairs(g, View::Diamond);
    DiamondResult r = diamond_check(g, View::Diamond, dd);
    CHECK(r.ok());
    CHECK(r.counterexample.empty());
  }
  AugmentedGraph g = graph_of("interval3", 2);
  DiamondResult e = diamond_check(g, View::E, all_pairs(g, View::E));
  CHECK_FALSE(e.no_same_level_edges);
  AugmentedGraph g1 = graph_of("interval3", 1);
  CHECK(diamond_check(g1, View::Diamond, all_pairs(g1, View::Diamond)).ok());
}

TEST_CASE("geodesic slices and fan divergence") {
  AugmentedGraph g = graph_of("interval3", 4);
  Distances dd = all_pairs(g, View::Diamond);
  auto s = geodesic_slices(g, vertex(g, "02"));
  REQUIRE(s.size() == 3);
  std::vector<int> l1 = s[1];
  std::sort(l1.begin(), l1.end());
  // [2] reaches [02 10] through the vertical-plus edge at the touching point 1.
  std::vector<int> want{vertex(g, "0"), vertex(g, "1"), vertex(g, "2")};
  std::sort(want.begin(), want.end());
  CHECK(l1 == want);
  CHECK(dd(vertex(g, "0"), vertex(g, "1")) == 2);
  CHECK(geodesic_fan_divergence(g, dd).delta_prime == 2);
  AugmentedGraph c = graph_of("interval2-osc", 4);
  CHECK(geodesic_fan_divergence(c, all_pairs(c, View::Diamond)).delta_prime == 0);
}

TEST_CASE("delta hyperbolicity") {
  AugmentedGraph c = graph_of("interval2-osc", 4);
  CHECK(delta_hyperbolicity(c, all_pairs(c, View::E)).delta == 0);
  AugmentedGraph g0 = graph_of("interval3", 0);
  CHECK(delta_hyperbolicity(g0, all_pairs(g0, View::E)).delta == 0);
  AugmentedGraph g = graph_of("interval3", 4);
  Distances de = all_pairs(g, View::E);
  DeltaResult r = delta_hyperbolicity(g, de);
  CHECK(r.exhaustive);
  CHECK(r.delta <= 1);
  // Brute-force check of the four-point inequality with the reported delta.
  for (int x = 0; x < g.size(); ++x)
    for (int y = 0; y < g.size(); ++y)
      for (int z = 0; z < g.size(); ++z) {
        Rational xy = gromov_product(g, de, x, y), xz = gromov_product(g, de, x, z), zy = gromov_product(g, de, z, y);
        CHECK(xy >= std::min(xz, zy) - r.delta);
      }
  // Sampling fallback stays within the exhaustive value.
  DeltaResult s = delta_hyperbolicity(g, de, 10, 20000, 7);
  CHECK_FALSE(s.exhaustive);
  CHECK(s.delta <= r.delta);
}

TEST_CASE("diamond distance exceeds E distance by at most one") {
  for (const char* name : {"interval3", "gasket3", "mixed-ratio"}) {
    CAPTURE(name);
    AugmentedGraph g = graph_of(name, 3);
    Distances de = all_pairs(g, View::E), dd = all_pairs(g, View::Diamond);
    QuasiResult q = quasi_isometry_check(de, dd);
    CHECK(q.violations == 0);
    CHECK(q.max_excess <= 0);
    CHECK(q.pairs == static_cast<std::size_t>(g.size()) * g.size());
  }
}

TEST_CASE("rho and theta") {
  AugmentedGraph g = graph_of("interval3", 3);
  Distances de = all_pairs(g, View::E);
  const int a = vertex(g, "00"), b = vertex(g, "22");
  CHECK(std::abs(rho_a(g, de, a, b, 0.3).value() - std::exp(-0.15)) < 1e-15);
  CHECK(rho_a(g, de, a, a, 0.3).value() == 0);
  CHECK(a_max(Rational(0)) == doctest::Approx(std::log(2.0)));
  CHECK(a_max(Rational(1)) == doctest::Approx(std::log(2.0) / 2));
  const Rational delta = delta_hyperbolicity(g, de).delta;
  const double a_half = a_max(delta) / 2;
  const double ap = std::exp(delta.convert_to<double>() * a_half) - 1;
  for (int x = 0; x < g.size(); ++x)
    for (int y = 0; y < g.size(); ++y)
      for (int z = 0; z < g.size(); ++z) {
        double xy = rho_a(g, de, x, y, a_half).value();
        double m = std::max(rho_a(g, de, x, z, a_half).value(), rho_a(g, de, y, z, a_half).value());
        CHECK(xy <= (1 + ap) * m + 1e-12);
      }
  ThetaResult two = theta_a(g, de, {a, b}, a_half, delta);
  CHECK(two.theta[0][1] == doctest::Approx(rho_a(g, de, a, b, a_half).value()));
  ThetaResult one = theta_a(g, de, {a}, a_half, delta);
  CHECK(one.theta.size() <= 1);
  ThetaResult lvl = theta_a(g, de, g.by_level[3], a_half, delta);
  CHECK(lvl.sandwich_ok);
}

TEST_CASE("touching subchains stay short") {
  Preset p = make_preset("interval3");
  IntersectOracle o(p.ifs, p.caps);
  AugmentedGraph g = build_graph(o, 5);
  for (int n = 1; n <= 5; ++n) CHECK(condition_c_diagnostic(g, o.ball(), n, Rational(1)) <= 3);
}

TEST_CASE("analysis report is deterministic") {
  AugmentedGraph g = graph_of("interval3", 4);
  HyperbolicityReport a = analyze(g), b = analyze(g);
  CHECK(a.delta == b.delta);
  CHECK(a.L_per_level == b.L_per_level);
  CHECK(a.delta_prime == 2);
  CHECK(a.lemma_violations == 0);
  CHECK(a.diamond_ok);
}

TEST_CASE("lazy metric matches BFS") {
  for (const char* name : {"interval3", "gasket3", "mixed-ratio", "example2-1d"}) {
    CAPTURE(name);
    Preset p = make_preset(name);
    IntersectOracle o(p.ifs, p.caps);
    Universe u(o);
    AugmentedGraph g = graph_from_universe(u, 3);
    LazyMetric m(u);
    std::vector<ClassId> ids;
    for (int n = 0; n <= 3; ++n)
      for (ClassId c : u.level_classes(n)) ids.push_back(c);
    REQUIRE(ids.size() == static_cast<std::size_t>(g.size()));
    for (View v : {View::E, View::Diamond}) {
      Distances d = all_pairs(g, v);
      for (int x = 0; x < g.size(); ++x)
        for (int y = 0; y < g.size(); ++y) REQUIRE(m.distance(v, ids[x], ids[y]) == d(x, y));
    }
  }
}
