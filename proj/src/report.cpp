#include "ifsgraph/report.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace ifsgraph {

using nlohmann::json;

std::string approx(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

json graph_summary(const AugmentedGraph& g) {
  json j;
  j["ifs"] = g.ifs.name;
  j["depth"] = g.depth;
  j["vertices"] = g.size();
  json levels = json::array();
  for (const auto& l : g.by_level) levels.push_back(l.size());
  j["vertices_per_level"] = levels;
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& e : g.edges) ++counts[static_cast<int>(e.kind)];
  j["edges"] = {{"vertical", counts[0]}, {"vertical_plus", counts[1]}, {"horizontal", counts[2]}};
  j["uncertain_edges"] = g.has_uncertain();
  return j;
}

json to_json(const HyperbolicityReport& r) {
  return {{"depth", r.depth},
          {"delta", to_string(r.delta)},
          {"delta_exhaustive", r.delta_exhaustive},
          {"L_per_level", r.L_per_level},
          {"L", r.L},
          {"delta_prime", r.delta_prime},
          {"quasi_C", r.quasi_C},
          {"lemma_violations", r.lemma_violations},
          {"diamond_ok", r.diamond_ok},
          {"a_max_approx", approx(r.a_max)},
          {"condition_c", r.condition_c}};
}

json to_json(const DegreeReport& r) {
  json rows = json::array();
  for (const auto& d : r.rows)
    rows.push_back({{"level", d.level},
                    {"horizontal", {d.min_h, d.max_h}},
                    {"vertical_plus", {d.min_vplus, d.max_vplus}},
                    {"total_E", {d.min_total_e, d.max_total_e}},
                    {"total_Ed", {d.min_total_d, d.max_total_d}}});
  return {{"rows", rows}, {"growth_warning", r.growth_warning}};
}

json to_json(const ConditionHReport& r, const std::vector<DesignatedGap>& designated) {
  json rows = json::array();
  for (const auto& g : r.rows) {
    json row = {{"level", g.level},
                {"vacuous", g.vacuous},
                {"partial", g.partial},
                {"disjoint_pairs", g.disjoint_pairs},
                {"unknown_pairs", g.unknown_pairs}};
    if (!g.vacuous) {
      row["normalized_gap"] = to_string(g.normalized);
      row["normalized_gap_approx"] = approx(to_double(g.normalized));
      row["pair"] = {g.x, g.y};
    }
    rows.push_back(row);
  }
  json j = {{"rows", rows}, {"trend", r.bounded_below ? "bounded-below" : "decaying"}};
  if (!designated.empty()) {
    json d = json::array();
    for (const auto& g : designated)
      d.push_back({{"k", g.k},
                   {"level", g.level},
                   {"relation", relation_name(g.rel)},
                   {"normalized_gap", to_string(g.normalized)},
                   {"normalized_gap_approx", approx(to_double(g.normalized))},
                   {"exact_distance", to_string(g.exact)}});
    j["designated"] = d;
  }
  return j;
}

json to_json(const HolderResult& h, const IfsSpec& ifs) {
  json rows = json::array();
  for (const auto& r : h.rows) {
    json row = {{"xi", address_label(ifs, r.xi)},
                {"eta", address_label(ifs, r.eta)},
                {"dist_approx", {approx(r.dist_lo), approx(r.dist_hi)}},
                {"excluded", r.excluded}};
    if (!r.excluded) {
      row["gromov"] = to_string(r.gromov);
      row["rho_alpha_approx"] = approx(r.rho_alpha);
      row["ratio_approx"] = approx(r.ratio);
    }
    rows.push_back(row);
  }
  return {{"a_approx", approx(h.a)},
          {"alpha_approx", approx(h.alpha)},
          {"constant_approx", approx(h.constant)},
          {"max_ratio_approx", approx(h.max_ratio)},
          {"min_ratio_approx", approx(h.min_ratio)},
          {"violations", h.violations},
          {"excluded", h.excluded},
          {"pairs", rows}};
}

json to_json(const NetReport& n) {
  return {{"level", n.level}, {"samples", n.samples}, {"covered", n.covered}, {"worst_approx", approx(n.worst)}};
}

void write_vertices_csv(std::ostream& os, const AugmentedGraph& g) {
  os << "id,level,members,ratio\n";
  for (int x = 0; x < g.size(); ++x) {
    const auto& v = g.vertices[x];
    os << x << ',' << v.level << ',';
    for (std::size_t i = 0; i < v.members.size(); ++i) os << (i ? " " : "") << word_label(g.ifs, v.members[i]);
    os << ',' << to_string(v.map.ratio) << '\n';
  }
}

void write_gap_plot_csv(std::ostream& os, const ConditionHReport& r) {
  os << "level,normalized_gap,normalized_gap_approx\n";
  for (const auto& g : r.rows)
    if (!g.vacuous) os << g.level << ',' << to_string(g.normalized) << ',' << approx(to_double(g.normalized)) << '\n';
}

}  // namespace ifsgraph
