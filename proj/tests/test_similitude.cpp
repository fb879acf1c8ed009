#include "helpers.hpp"

#include <random>

using namespace ifsgraph;

namespace {

Vec v1(Rational a) { return Vec::Constant(1, a); }
Vec v2(Rational a, Rational b) {
  Vec v(2);
  v << a, b;
  return v;
}

Sim rotation_map(Rational r, Rational c, Rational s, Vec b) {
  Mat o(2, 2);
  o << c, -s, s, c;
  return {r, o, b};
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-2/4") == Rational(-1, 2));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("7") == 7);
  CHECK(parse_rational("007/010") == Rational(7, 10));
  CHECK(parse_rational("0.09") == Rational(9, 100));
  CHECK(to_string(Rational(6, 4)) == "3/2");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("square root enclosures bracket the root") {
  std::mt19937 rng(3);
  for (int i = 0; i < 200; ++i) {
    Rational q(static_cast<long>(rng() % 100000) + 1, static_cast<long>(rng() % 997) + 1);
    Rational lo = sqrt_lower(q), hi = sqrt_upper(q);
    CHECK(lo * lo <= q);
    CHECK(hi * hi >= q);
    CHECK(to_double(hi - lo) <= 1e-12 * to_double(hi) + 1e-18);
  }
  CHECK(sqrt_lower(Rational(9, 4)) == Rational(3, 2));
  CHECK(sqrt_upper(Rational(9, 4)) == Rational(3, 2));
  CHECK(is_perfect_square(Rational(25, 256)));
  CHECK_FALSE(is_perfect_square(Rational(2)));
}

TEST_CASE("composition, inverse and fixed point") {
  Sim a = rotation_map(Rational(1, 2), Rational(3, 5), Rational(4, 5), v2(1, Rational(1, 3)));
  Sim b = rotation_map(Rational(1, 3), Rational(0), Rational(1), v2(Rational(-1, 2), 2));
  Vec x = v2(Rational(2, 7), Rational(-5, 3));
  CHECK(compose(a, b)(x) == a(b(x)));
  CHECK(compose(a, inverse(a)) == Sim::identity(2));
  CHECK(invert_apply(a, a(x)) == x);
  CHECK(a(fixed_point(a)) == fixed_point(a));
  Sim h{Rational(1, 2), Mat::Identity(1, 1), v1(1)};
  CHECK(fixed_point(h) == v1(2));
  CHECK(is_orthogonal(a.orthogonal));
  CHECK_THROWS_AS(compose(a, h), DimensionMismatch);
}

TEST_CASE("canonical keys separate maps exactly") {
  Sim a{Rational(1, 2), Mat::Identity(1, 1), v1(Rational(1, 2))};
  Sim b{Rational(2, 4), Mat::Identity(1, 1), v1(Rational(2, 4))};
  Sim c{Rational(1, 2), Mat::Identity(1, 1), v1(Rational(1, 2) + Rational(1, 1000000007))};
  CHECK(canonical_key(a) == canonical_key(b));
  CHECK(canonical_key(a) != canonical_key(c));
}

TEST_CASE("invariant balls of the presets") {
  Preset iv = make_preset("interval3");
  Ball b = invariant_ball(iv.ifs);
  CHECK(b.center == v1(1));
  CHECK(b.radius == 1);
  Preset gs = make_preset("gasket3");
  Ball g = invariant_ball(gs.ifs);
  CHECK(g.center == v2(Rational(1, 2), Rational(3, 8)));
  CHECK(g.radius == Rational(5, 8));
  for (const auto& name : preset_names()) {
    Preset p = make_preset(name);
    CAPTURE(name);
    CHECK(ball_is_invariant(p.ifs, invariant_ball(p.ifs)));
  }
  Ball e = invariant_ball(make_preset("example2-1d").ifs);
  CHECK(e.radius == Rational(1, 2));
}

TEST_CASE("validation names the offending field") {
  Sim good{Rational(1, 2), Mat::Identity(1, 1), v1(0)};
  try {
    IfsSpec bad(1, {good, Sim{Rational(3, 2), Mat::Identity(1, 1), v1(0)}}, 0);
    FAIL("expected rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("maps[1].ratio") != std::string::npos);
  }
  Mat skew(2, 2);
  skew << 1, 1, 0, 1;
  Sim g2 = Sim::identity(2);
  g2.ratio = Rational(1, 2);
  CHECK_THROWS_AS(IfsSpec(2, {g2, Sim{Rational(1, 2), skew, v2(0, 0)}}, 0), std::invalid_argument);
  CHECK_THROWS_AS(IfsSpec(1, {good}, 0), std::invalid_argument);
}
