#include "helpers.hpp"

#include "ifsgraph/config.hpp"
#include "ifsgraph/report.hpp"

using namespace ifsgraph;

namespace {

ConfigError config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("config accepted: " << text);
  return ConfigError("", "");
}

}  // namespace

TEST_CASE("syntax errors carry line and column") {
  ConfigError e = config_error("{\n  \"preset\": \"interval3\",\n  \"depth\": 3,,\n}");
  CHECK(e.line == 3);
  CHECK(e.column == 14);
  CHECK(std::string(e.what()).find("line 3") != std::string::npos);
}

TEST_CASE("semantic errors name the field") {
  CHECK(config_error(R"({"preset": "nosuch"})").field == "preset");
  CHECK(config_error(R"({})").field == "preset");
  CHECK(config_error(R"({"preset": "interval3", "depth": -1})").field == "depth");
  CHECK(config_error(R"({"preset": "interval3", "view": "F"})").field == "view");
  CHECK(config_error(R"({"preset": "interval3", "caps": {"bogus": 1}})").field == "caps.bogus");
  const char* bad_ratio = R"({"ifs": {"dimension": 1, "maps": [
      {"ratio": "1/2", "translation": ["0"]},
      {"ratio": "3/2", "translation": ["1"]}]}})";
  ConfigError r = config_error(bad_ratio);
  CHECK(r.field == "maps[1].ratio");
  CHECK(config_error(R"({"ifs": {"dimension": 1, "maps": [{"ratio": 0.5}]}})").field == "maps[0].ratio");
  CHECK(config_error(R"j({"preset": "interval3", "boundary": {"pairs": [["(0)", "(5)"]]}})j").field ==
        "boundary.pairs[0]");
}

TEST_CASE("inline IFS round-trips through JSON") {
  for (const auto& name : preset_names()) {
    CAPTURE(name);
    Preset p = make_preset(name);
    nlohmann::json j = {{"ifs", ifs_to_json(p.ifs)}, {"depth", 2}};
    RunConfig cfg = parse_config(j.dump());
    REQUIRE(cfg.ifs().size() == p.ifs.size());
    for (int i = 0; i < p.ifs.size(); ++i) CHECK(cfg.ifs().maps[i] == p.ifs.maps[i]);
    CHECK(cfg.ifs().label_base == p.ifs.label_base);
    CHECK(invariant_ball(cfg.ifs()).radius == invariant_ball(p.ifs).radius);
    CHECK(cfg.depth == 2);
  }
}

TEST_CASE("config fields reach the run configuration") {
  RunConfig cfg = parse_config(R"j({
    "preset": "gasket3", "depth": 4, "view": "Ed", "mode": "optimistic", "out": "x",
    "caps": {"refine_depth": 9, "cache_limit": 100},
    "boundary": {"a": 0.1, "depth": 7, "pairs": [["1(2)", "(3)"]], "random_pairs": 5, "seed": 3},
    "gaps": {"max_level": 5}
  })j");
  CHECK(cfg.preset == "gasket3");
  CHECK(cfg.depth == 4);
  CHECK(cfg.view == View::Diamond);
  CHECK(cfg.mode == Mode::Optimistic);
  CHECK(cfg.caps().refine_depth == 9);
  CHECK(cfg.caps().cache_limit == 100);
  CHECK(cfg.a == doctest::Approx(0.1));
  CHECK(cfg.boundary_depth == 7);
  REQUIRE(cfg.pairs.size() == 1);
  CHECK(cfg.pairs[0].first == BoundaryAddress{{0}, {1}});
  CHECK(cfg.random_pairs == 5);
  CHECK(cfg.seed == 3);
  CHECK(cfg.gap_level == 5);
  Caps c;
  apply_caps(c, "node_budget=7,max_level_words=11");
  CHECK(c.node_budget == 7);
  CHECK(c.max_level_words == 11);
  CHECK_THROWS_AS(apply_caps(c, "node_budget=-1"), ConfigError);
}

TEST_CASE("reports are deterministic") {
  Preset p = make_preset("interval3");
  auto once = [&] {
    IntersectOracle o(p.ifs, p.caps);
    AugmentedGraph g = build_graph(o, 3);
    nlohmann::json j = graph_summary(g);
    j["analyze"] = to_json(analyze(g));
    return j.dump();
  };
  CHECK(once() == once());
  CHECK(approx(2 * std::sqrt(2.0)) == "2.82842712475");
}
