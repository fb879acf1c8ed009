#include "helpers.hpp"

using namespace ifsgraph;
using testing::W;

namespace {

// 1-D attractors that are full intervals: cylinders meet iff their hulls meet.
bool hulls_meet(const IfsSpec& ifs, const Ball& b, const Word& x, const Word& y) {
  Ball bx = cylinder_ball(ifs, b, x), by = cylinder_ball(ifs, b, y);
  Rational gap = abs(Rational(bx.center(0) - by.center(0))) - bx.radius - by.radius;
  return gap <= 0;
}

}  // namespace

TEST_CASE("interval3 touching and separated cylinders") {
  const IfsSpec ifs = make_preset("interval3").ifs;
  IntersectOracle o(ifs);
  Verdict v = o.decide(word_map(ifs, W(ifs, "0")), word_map(ifs, W(ifs, "2")));
  REQUIRE(v.kind == Relation::Intersects);
  CHECK(verify_witness(ifs, word_map(ifs, W(ifs, "0")), word_map(ifs, W(ifs, "2")), v.witness));
  Verdict d = o.decide(word_map(ifs, W(ifs, "00")), word_map(ifs, W(ifs, "22")));
  REQUIRE(d.kind == Relation::Disjoint);
  CHECK(d.gap_lower == 1);
  CHECK(verify_verdict(ifs, o.ball(), word_map(ifs, W(ifs, "00")), word_map(ifs, W(ifs, "22")), d));
}

TEST_CASE("interval3 verdicts match interval hulls") {
  const IfsSpec ifs = make_preset("interval3").ifs;
  IntersectOracle o(ifs);
  for (int n = 1; n <= 4; ++n) {
    auto words = enumerate_level(ifs, n);
    for (const Word& x : words)
      for (const Word& y : words) {
        Verdict v = o.decide(word_map(ifs, x), word_map(ifs, y));
        REQUIRE(v.kind != Relation::Unknown);
        CHECK((v.kind == Relation::Intersects) == hulls_meet(ifs, o.ball(), x, y));
      }
  }
}

TEST_CASE("disjoint gaps are exact for the two-map Cantor set") {
  const IfsSpec ifs = make_preset("interval2-osc").ifs;
  IntersectOracle o(ifs);
  Verdict v = o.decide(word_map(ifs, W(ifs, "0")), word_map(ifs, W(ifs, "1")));
  REQUIRE(v.kind == Relation::Disjoint);
  CHECK(v.gap_lower == Rational(1, 3));
  Verdict w = o.decide(word_map(ifs, W(ifs, "01")), word_map(ifs, W(ifs, "10")));
  REQUIRE(w.kind == Relation::Disjoint);
  CHECK(w.gap_lower == Rational(1, 3));
}

TEST_CASE("gasket verdicts re-verify and agree with bounded brute force") {
  const IfsSpec ifs = make_preset("gasket3").ifs;
  IntersectOracle o(ifs);
  auto cls = quotient_level(ifs, 3);
  std::size_t meets = 0;
  for (const auto& x : cls)
    for (const auto& y : cls) {
      Verdict v = o.decide(x, y);
      REQUIRE(v.kind != Relation::Unknown);
      CHECK(verify_verdict(ifs, o.ball(), x.map, y.map, v));
      auto bf = brute_force_witness(ifs, x.map, y.map, 2, 2);
      if (bf) {
        CHECK(v.kind == Relation::Intersects);
        CHECK(verify_witness(ifs, x.map, y.map, *bf));
      }
      if (v.kind == Relation::Intersects) ++meets;
    }
  // 27 diagonal pairs, each of the 27 cylinders touches its 2-3 cornered neighbors.
  CHECK(meets > cls.size());
}

TEST_CASE("verdict is symmetric with swapped witnesses") {
  const IfsSpec ifs = make_preset("mixed-ratio").ifs;
  IntersectOracle o(ifs);
  auto cls = quotient_level(ifs, 3);
  for (const auto& x : cls)
    for (const auto& y : cls) {
      Verdict a = o.decide(x, y), b = o.decide(y, x);
      CHECK(a.kind == b.kind);
      if (a.kind == Relation::Disjoint) CHECK(a.gap_lower == b.gap_lower);
      if (b.kind == Relation::Intersects) CHECK(verify_witness(ifs, y.map, x.map, b.witness));
    }
}

TEST_CASE("tight caps give Unknown rather than a guess") {
  Preset p = make_preset("example2-1d");
  Caps caps;
  caps.refine_depth = 1;
  caps.witness_word_len = 0;
  caps.witness_period_len = 0;
  IntersectOracle tight(p.ifs, caps), full(p.ifs, p.caps);
  auto cls = quotient_level(p.ifs, 1);
  std::size_t unknown = 0;
  for (const auto& x : cls)
    for (const auto& y : cls) {
      Verdict f = full.decide(x, y);
      REQUIRE(f.kind != Relation::Unknown);
      CHECK(verify_verdict(p.ifs, full.ball(), x.map, y.map, f));
      Verdict v = tight.decide(x, y);
      if (v.kind == Relation::Unknown) ++unknown;
      else CHECK(v.kind == f.kind);
    }
  CHECK(unknown > 0);
}

TEST_CASE("pairwise matrix counts distinct neighbor maps") {
  const IfsSpec ifs = make_preset("interval3").ifs;
  IntersectOracle o(ifs);
  auto l2 = quotient_level(ifs, 2);
  VerdictMatrix m = pairwise_intersections(o, l2, l2);
  CHECK(m.rel.size() == l2.size());
  CHECK(m.distinct_keys > 0);
  for (std::size_t i = 0; i < l2.size(); ++i) CHECK(m.rel[i][i] == Relation::Intersects);
}
