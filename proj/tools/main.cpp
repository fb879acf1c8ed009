// ifsgraph: build and analyze augmented graphs of self-similar sets.
#include "ifsgraph/boundary.hpp"
#include "ifsgraph/config.hpp"
#include "ifsgraph/graph.hpp"
#include "ifsgraph/hyperbolic.hpp"
#include "ifsgraph/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace ifsgraph;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kFailure = 1, kConfig = 2, kUnknown = 3, kCap = 4 };

struct Options {
  std::string config, preset, view, mode, out, caps;
  int depth = -1;
};

RunConfig load(const Options& o) {
  RunConfig cfg;
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) throw ConfigError("config: cannot read '" + o.config + "'", "config");
    std::stringstream ss;
    ss << in.rdbuf();
    cfg = parse_config(ss.str());
  } else if (!o.preset.empty()) {
    cfg = config_for_preset(o.preset);
  } else {
    throw ConfigError("one of --config or --preset is required", "preset");
  }
  if (o.depth >= 0) cfg.depth = o.depth;
  if (!o.view.empty()) cfg.view = parse_view(o.view);
  if (!o.mode.empty()) cfg.mode = parse_mode(o.mode);
  if (!o.out.empty()) cfg.out = o.out;
  if (!o.caps.empty()) apply_caps(cfg.base.caps, o.caps);
  if (const char* env = std::getenv("IFSGRAPH_CACHE_LIMIT")) apply_caps(cfg.base.caps, std::string("cache_limit=") + env);
  return cfg;
}

void write_file(const RunConfig& cfg, const std::string& name, const std::string& body) {
  fs::create_directories(cfg.out);
  std::ofstream(fs::path(cfg.out) / name, std::ios::binary) << body;
}

void write_json(const RunConfig& cfg, const std::string& name, const json& j) { write_file(cfg, name, j.dump(2) + "\n"); }

json run_build(const RunConfig& cfg, IntersectOracle& oracle) {
  AugmentedGraph g = build_graph(oracle, cfg.depth, cfg.mode);
  std::ostringstream e, d, edges, verts;
  write_dot(e, g, View::E);
  write_dot(d, g, View::Diamond);
  write_edges_csv(edges, g);
  write_vertices_csv(verts, g);
  write_file(cfg, "graph_E.dot", e.str());
  write_file(cfg, "graph_Ed.dot", d.str());
  write_file(cfg, "edges.csv", edges.str());
  write_file(cfg, "vertices.csv", verts.str());
  json j = graph_summary(g);
  j["degrees"] = to_json(degree_report(g));
  write_json(cfg, "build.json", j);
  for (int n = 0; n <= g.depth; ++n) std::cout << "level " << n << ": " << g.by_level[n].size() << " vertices\n";
  return j;
}

json run_analyze(const RunConfig& cfg, IntersectOracle& oracle) {
  AugmentedGraph g = build_graph(oracle, cfg.depth, cfg.mode);
  json j = to_json(analyze(g));
  write_json(cfg, "analyze.json", j);
  std::cout << "delta " << j["delta"].get<std::string>() << ", L " << j["L"] << ", delta' " << j["delta_prime"]
            << ", violations " << j["lemma_violations"] << "\n";
  return j;
}

json run_boundary(const RunConfig& cfg, IntersectOracle& oracle) {
  AugmentedGraph g = build_graph(oracle, cfg.depth, cfg.mode);
  Distances de = all_pairs(g, View::E);
  const Rational delta = delta_hyperbolicity(g, de).delta;
  auto Ls = horizontal_geodesic_bound(g, de);
  const int L = *std::max_element(Ls.begin(), Ls.end());
  const double a = cfg.a ? *cfg.a : a_max(delta) / 2;
  std::vector<AddressPair> pairs = cfg.pairs;
  std::size_t extra = cfg.random_pairs;
  if (pairs.empty() && extra == 0) extra = 20;
  auto drawn = sample_pairs(cfg.ifs(), extra, cfg.seed);
  pairs.insert(pairs.end(), drawn.begin(), drawn.end());

  Universe u(oracle, cfg.mode);
  LazyMetric metric(u);
  HolderResult h = holder_upper_check(u, metric, pairs, a, L, cfg.boundary_depth, cfg.view, cfg.stabilize);
  std::ostringstream csv;
  write_pairs_csv(csv, cfg.ifs(), h);
  write_file(cfg, "boundary.csv", csv.str());
  json j = to_json(h, cfg.ifs());
  j["L"] = L;
  j["delta"] = to_string(delta);
  write_json(cfg, "boundary.json", j);
  std::cout << "pairs " << pairs.size() << ", excluded " << h.excluded << ", max ratio " << approx(h.max_ratio)
            << " vs constant " << approx(h.constant) << ", violations " << h.violations << "\n";
  return j;
}

json run_gaps(const RunConfig& cfg, IntersectOracle& oracle) {
  Universe u(oracle, cfg.mode);
  const int top = cfg.gap_level >= 0 ? cfg.gap_level : cfg.depth;
  ConditionHReport rep = condition_h_report(u, top);
  std::vector<DesignatedGap> designated;
  if (cfg.base.kmax > 0) designated = designated_gaps(u, designated_family(cfg.base));
  json j = to_json(rep, designated);
  j["net"] = to_json(net_check(u, top, periodic_samples(cfg.ifs(), cfg.net_period_len)));
  std::ostringstream plot;
  write_gap_plot_csv(plot, rep);
  write_file(cfg, "gaps_plot.csv", plot.str());
  write_json(cfg, "gaps.json", j);
  for (const auto& r : rep.rows)
    std::cout << "level " << r.level << ": "
              << (r.vacuous ? std::string("vacuous") : to_string(r.normalized) + " (" + approx(to_double(r.normalized)) + ")")
              << (r.partial ? " partial" : "") << "\n";
  return j;
}

int guarded(const Options& o, const std::string& command) {
  try {
    RunConfig cfg = load(o);
    IntersectOracle oracle(cfg.ifs(), cfg.caps());
    if (command == "build") {
      run_build(cfg, oracle);
    } else if (command == "analyze") {
      run_analyze(cfg, oracle);
    } else if (command == "boundary") {
      run_boundary(cfg, oracle);
    } else if (command == "gaps") {
      run_gaps(cfg, oracle);
    } else {
      json j;
      j["ifs"] = ifs_to_json(cfg.ifs());
      j["build"] = run_build(cfg, oracle);
      j["analyze"] = run_analyze(cfg, oracle);
      j["boundary"] = run_boundary(cfg, oracle);
      j["gaps"] = run_gaps(cfg, oracle);
      write_json(cfg, "report.json", j);
    }
    return kOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const UnknownAbort& e) {
    std::cerr << "aborted: " << e.what() << "\n";
    return kUnknown;
  } catch (const ResourceCapExceeded& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Augmented graphs and hyperbolic boundaries of self-similar sets"};
  app.require_subcommand(1);
  Options o;
  std::string presets;
  for (const auto& p : preset_names()) presets += (presets.empty() ? "" : ", ") + p;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "JSON run configuration");
    sub->add_option("--preset", o.preset, "preset name: " + presets);
    sub->add_option("--depth", o.depth, "truncation depth")->check(CLI::NonNegativeNumber);
    sub->add_option("--view", o.view, "E or Ed");
    sub->add_option("--mode", o.mode, "strict or optimistic");
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--caps", o.caps, "cap overrides, key=value[,key=value]");
  };
  std::string command;
  const std::pair<const char*, const char*> subs[] = {
      {"build", "augmented graph to --depth; DOT, CSV and summary JSON"},
      {"analyze", "hyperbolicity diagnostics JSON"},
      {"boundary", "Gromov products and Hölder ratios of boundary address pairs"},
      {"gaps", "condition (H) normalized gaps per level"},
      {"report", "all of the above plus a combined report.json"}};
  for (const auto& [name, help] : subs) {
    auto* sub = app.add_subcommand(name, help);
    common(sub);
    sub->callback([&command, n = name] { command = n; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }
  return guarded(o, command);
}
