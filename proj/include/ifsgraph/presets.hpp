// Shipped IFS presets.
#pragma once

#include "ifsgraph/common.hpp"
#include "ifsgraph/symbolic.hpp"

#include <string>
#include <vector>

namespace ifsgraph {

struct Preset {
  IfsSpec ifs;
  Caps caps;
  int kmax = 0;  // example2 family only
};

// Names: interval3, gasket3, interval2-osc, mixed-ratio, example2-1d, example2-2d.
// The example2 presets accept a truncation order as "example2-1d(5)" (default 4).
Preset make_preset(const std::string& name);
std::vector<std::string> preset_names();

// 1 + k(k+1)/2
int lacunary_level(int k);

// Translation offset of the lacunary map: base - sum_{k <= kmax} 3^-n_k.
Rational lacunary_offset(const Rational& base, int kmax);

// Designated pair of level-n_k words whose cylinders are disjoint with gap
// c_k 3^-n_{k+1}, and the eventually periodic addresses built on them.
struct DesignatedPair {
  int k = 0;
  int level = 0;
  Word u, w;
  Word xi_pre, xi_period;    // w 2^inf
  Word eta_pre, eta_period;
};

std::vector<DesignatedPair> designated_family(const Preset& p);

}  // namespace ifsgraph
