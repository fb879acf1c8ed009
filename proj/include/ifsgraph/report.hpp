// JSON/CSV serialization of results. Exact values are "p/q" strings; real
// diagnostics are 12-significant-digit strings under keys ending in _approx.
#pragma once

#include "ifsgraph/boundary.hpp"
#include "ifsgraph/graph.hpp"
#include "ifsgraph/hyperbolic.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace ifsgraph {

std::string approx(double v);

nlohmann::json graph_summary(const AugmentedGraph& g);
nlohmann::json to_json(const HyperbolicityReport& r);
nlohmann::json to_json(const DegreeReport& r);
nlohmann::json to_json(const ConditionHReport& r, const std::vector<DesignatedGap>& designated);
nlohmann::json to_json(const HolderResult& h, const IfsSpec& ifs);
nlohmann::json to_json(const NetReport& n);

void write_vertices_csv(std::ostream& os, const AugmentedGraph& g);
void write_gap_plot_csv(std::ostream& os, const ConditionHReport& r);

}  // namespace ifsgraph
