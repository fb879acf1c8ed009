#include "helpers.hpp"

#include <cmath>
#include <sstream>

using namespace ifsgraph;
using testing::W;

namespace {

struct Setup {
  Preset p;
  IntersectOracle oracle;
  Universe u;
  LazyMetric metric;
  explicit Setup(const std::string& name) : p(make_preset(name)), oracle(p.ifs, p.caps), u(oracle), metric(u) {}
};

}  // namespace

TEST_CASE("addresses normalize to minimal form") {
  CHECK(normalize({}, {2, 2}) == BoundaryAddress{{}, {2}});
  CHECK(normalize({1, 0}, {1, 0}) == BoundaryAddress{{}, {1, 0}});
  CHECK(normalize({0, 2, 2}, {2}) == BoundaryAddress{{0}, {2}});
  CHECK(normalize({1}, {0, 1}) == BoundaryAddress{{}, {1, 0}});
  CHECK_THROWS_AS(normalize({0}, {}), std::invalid_argument);
  const IfsSpec ifs = make_preset("interval3").ifs;
  BoundaryAddress a = parse_address(ifs, "01(22)");
  CHECK(a == BoundaryAddress{{0, 1}, {2}});
  CHECK(address_label(ifs, a) == "01(2)");
  CHECK(parse_address(ifs, address_label(ifs, a)) == a);
  CHECK(a.prefix(4) == Word{0, 1, 2, 2});
  CHECK_THROWS_AS(parse_address(ifs, "012"), std::invalid_argument);
  CHECK_THROWS_AS(parse_address(ifs, "0()"), std::invalid_argument);
}

TEST_CASE("boundary map of periodic points") {
  const IfsSpec ifs = make_preset("interval3").ifs;
  const Ball inv = invariant_ball(ifs);
  CHECK(phi_exact(ifs, parse_address(ifs, "(0)")) == Vec::Constant(1, 0));
  CHECK(phi_exact(ifs, parse_address(ifs, "(2)")) == Vec::Constant(1, 2));
  CHECK(phi_exact(ifs, parse_address(ifs, "0(2)")) == Vec::Constant(1, 1));
  for (const auto& a : sample_pairs(ifs, 30, 11)) {
    const Vec exact = phi_exact(ifs, a.first);
    for (int n : {0, 3, 8}) {
      BoundaryPointApprox ap = phi(ifs, inv, a.first, n);
      CHECK(ap.error_radius == level_scale(ifs, n) * 2 * inv.radius);
      CHECK(Vec(ap.point - exact).squaredNorm() <= ap.error_radius * ap.error_radius);
    }
  }
}

TEST_CASE("rays are vertical geodesics") {
  Setup s("mixed-ratio");
  BoundaryAddress a = parse_address(s.p.ifs, "1(23)");
  auto r = ray(s.u, a, 6);
  REQUIRE(r.size() == 7);
  for (int n = 0; n <= 6; ++n) {
    CHECK(s.u.level(r[n]) == n);
    CHECK(s.metric.distance(View::E, r[0], r[n]) == n);
  }
  for (int n = 1; n <= 6; ++n) {
    const auto& ps = s.u.parents(r[n]);
    CHECK(std::find(ps.begin(), ps.end(), r[n - 1]) != ps.end());
  }
}

TEST_CASE("Gromov sequence of the two endpoints") {
  Setup s("interval3");
  BoundaryAddress x = parse_address(s.p.ifs, "(0)"), y = parse_address(s.p.ifs, "(2)");
  GromovSequence e = boundary_gromov(s.u, s.metric, View::E, x, y, 8);
  CHECK(e.monotone);
  CHECK(e.stabilized);
  CHECK_FALSE(e.same_point);
  CHECK(e.value() == Rational(1, 2));
  GromovSequence d = boundary_gromov(s.u, s.metric, View::Diamond, x, y, 8);
  CHECK(d.value() == 1);
  // Both addresses land on 1: the rays stay adjacent and the product keeps growing.
  GromovSequence same = boundary_gromov(s.u, s.metric, View::E, parse_address(s.p.ifs, "0(2)"),
                                        parse_address(s.p.ifs, "2(0)"), 8);
  CHECK(same.monotone);
  CHECK_FALSE(same.stabilized);
  CHECK(same.value() == Rational(15, 2));
  GromovSequence apart = boundary_gromov(s.u, s.metric, View::E, x, parse_address(s.p.ifs, "0(2)"), 8);
  CHECK(apart.stabilized);
  CHECK(apart.value() >= 1);
}

TEST_CASE("Hölder ratio of the endpoint pair") {
  Setup s("interval3");
  std::vector<AddressPair> pairs{{parse_address(s.p.ifs, "(0)"), parse_address(s.p.ifs, "(2)")}};
  HolderResult h = holder_upper_check(s.u, s.metric, pairs, 0.25, 1, 10);
  REQUIRE(h.rows.size() == 1);
  CHECK(std::abs(h.rows[0].ratio - 2 * std::sqrt(2.0)) < 1e-9);
  CHECK(std::abs(h.constant - 2 * std::sqrt(2.0) * 2) < 1e-12);
  CHECK(h.violations == 0);
  CHECK(std::abs(h.alpha - std::log(2.0) / 0.25) < 1e-12);
}

TEST_CASE("random pairs are reproducible") {
  const IfsSpec ifs = make_preset("gasket3").ifs;
  auto a = sample_pairs(ifs, 25, 9), b = sample_pairs(ifs, 25, 9), c = sample_pairs(ifs, 25, 10);
  CHECK(a == b);
  CHECK_FALSE(a == c);
  for (const auto& [x, y] : a) CHECK_FALSE(x == y);
}

TEST_CASE("pairs csv") {
  Setup s("interval3");
  HolderResult h = holder_upper_check(s.u, s.metric, sample_pairs(s.p.ifs, 5, 1), 0.25, 1, 10);
  std::ostringstream os;
  write_pairs_csv(os, s.p.ifs, h);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "xi,eta,dist_lo_approx,dist_hi_approx,gromov,stabilized,rho_alpha_approx,ratio_approx,excluded");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 5);
}

TEST_CASE("interval3 gaps are one cell wide") {
  Setup s("interval3");
  ConditionHReport rep = condition_h_report(s.u, 4);
  REQUIRE(rep.rows.size() == 5);
  CHECK(rep.rows[0].vacuous);
  CHECK(rep.rows[1].vacuous);
  for (int n = 2; n <= 4; ++n) {
    CAPTURE(n);
    CHECK_FALSE(rep.rows[n].vacuous);
    CHECK_FALSE(rep.rows[n].partial);
    CHECK(rep.rows[n].normalized == 1);
  }
  CHECK(rep.bounded_below);
}

TEST_CASE("gap sweep agrees with all pairs") {
  Setup s("gasket3");
  for (int n = 1; n <= 3; ++n) {
    GapRow row = condition_h_gap(s.u, n);
    auto ids = s.u.level_classes(n);
    std::optional<Rational> best;
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        Verdict v = s.oracle.decide(s.u.map(ids[i]), s.u.map(ids[j]));
        if (v.kind == Relation::Disjoint && (!best || v.gap_lower < *best)) best = v.gap_lower;
      }
    CHECK(row.vacuous == !best.has_value());
    if (best) CHECK(row.normalized == *best / level_scale(s.p.ifs, n));
  }
}

TEST_CASE("lacunary family gaps shrink") {
  CHECK(lacunary_level(1) == 2);
  CHECK(lacunary_level(2) == 4);
  CHECK(lacunary_level(3) == 7);
  Setup s("example2-1d(3)");
  auto fam = designated_family(s.p);
  auto gaps = designated_gaps(s.u, fam);
  REQUIRE(gaps.size() == 3);
  // The truncated offset closes the last gap exactly.
  CHECK(gaps.back().rel == Relation::Intersects);
  for (std::size_t i = 0; i + 1 < gaps.size(); ++i) {
    CAPTURE(i);
    REQUIRE(gaps[i].rel == Relation::Disjoint);
    Rational c = gaps[i].normalized;
    for (int e = 0; e <= gaps[i].k; ++e) c *= 3;
    CHECK(c >= 1);
    CHECK(c < Rational(3, 2));
    if (i > 0) CHECK(gaps[i].normalized < gaps[i - 1].normalized);
  }
}

TEST_CASE("cylinder anchors form a net") {
  Setup s("gasket3");
  auto samples = periodic_samples(s.p.ifs, 2);
  CHECK(samples.size() == 9);
  for (int n = 0; n <= 4; ++n) {
    NetReport r = net_check(s.u, n, samples);
    CHECK(r.covered == r.samples);
    CHECK(r.worst <= to_double(level_scale(s.p.ifs, n) * 2 * s.oracle.ball().radius) + 1e-12);
  }
}
