// Geodesic rays, the boundary map onto K, and condition (H) diagnostics.
#pragma once

#include "ifsgraph/hyperbolic.hpp"
#include "ifsgraph/presets.hpp"

#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

namespace ifsgraph {

// u w^inf, kept with minimal period and the shortest possible preperiod.
struct BoundaryAddress {
  Word preperiod;
  Word period;

  Symbol at(std::size_t i) const {
    return i < preperiod.size() ? preperiod[i] : period[(i - preperiod.size()) % period.size()];
  }
  Word prefix(std::size_t len) const;
  bool operator==(const BoundaryAddress&) const = default;
};

BoundaryAddress normalize(Word preperiod, Word period);
// "u(w)" in the preset's labels, e.g. "0(2)" or "(02)"; comma-separated when labels are multi-digit.
BoundaryAddress parse_address(const IfsSpec& ifs, const std::string& text);
std::string address_label(const IfsSpec& ifs, const BoundaryAddress& a);

// Shortest prefix of the address lying in J_n.
Word address_truncation(const IfsSpec& ifs, const BoundaryAddress& a, int n);

// [i|0], [i|1], ..., [i|depth]
std::vector<ClassId> ray(Universe& u, const BoundaryAddress& a, int depth);

struct BoundaryPointApprox {
  Vec point;
  Rational error_radius;
  int depth = 0;
};

BoundaryPointApprox phi(const IfsSpec& ifs, const Ball& inv, const BoundaryAddress& a, int depth,
                        const std::optional<Vec>& x0 = std::nullopt);
// S_u(fix S_w), exact.
Vec phi_exact(const IfsSpec& ifs, const BoundaryAddress& a);

struct GromovSequence {
  std::vector<Rational> values;  // |x_n ∧ y_n| for n = 0..depth
  bool same_point = false;       // the rays share their deepest vertex
  bool stabilized = false;       // constant over the last k levels
  bool monotone = true;
  Rational value() const { return values.back(); }
};

GromovSequence boundary_gromov(Universe& u, LazyMetric& metric, View view, const BoundaryAddress& a1,
                               const BoundaryAddress& a2, int depth, int k = 3);

struct PairRow {
  BoundaryAddress xi, eta;
  double dist_lo = 0, dist_hi = 0;  // certified enclosure of |Φξ - Φη|
  Rational gromov = 0;
  bool stabilized = false;
  bool same_point = false;  // equal addresses or exactly equal images; both sides vanish
  double rho_alpha = 0;  // ρ_a(ξ,η)^α = r^{|ξ∧η|}
  double ratio = 0;      // |Φξ - Φη| / ρ_a^α
  bool excluded = false;
};

struct HolderResult {
  double a = 0, alpha = 0;
  double constant = 0;  // (L+1) r^{-L/2} 2R
  double max_ratio = 0;
  double min_ratio = 0;
  std::size_t violations = 0;
  std::size_t excluded = 0;
  std::vector<PairRow> rows;
};

using AddressPair = std::pair<BoundaryAddress, BoundaryAddress>;

HolderResult holder_upper_check(Universe& u, LazyMetric& metric, const std::vector<AddressPair>& pairs, double a,
                                int L, int depth, View view = View::E, int k = 3);
// Same rows; the figure of interest is min_ratio.
HolderResult bilipschitz_lower_check(Universe& u, LazyMetric& metric, const std::vector<AddressPair>& pairs,
                                     double a, int depth, View view = View::E, int k = 3);

// Deterministic pseudo-random pairs of eventually periodic addresses.
std::vector<AddressPair> sample_pairs(const IfsSpec& ifs, std::size_t count, std::uint64_t seed,
                                      int max_pre = 3, int max_period = 2);

struct GapRow {
  int level = 0;
  bool vacuous = true;  // no certified-disjoint pair
  bool partial = false;  // some pair came back Unknown
  Rational normalized = 0;  // min certified gap / r^n
  std::size_t disjoint_pairs = 0, unknown_pairs = 0;
  std::string x, y;  // labels of a minimizing pair
};

// Window sweep along the first coordinate: pairs whose balls are farther
// apart than the current minimum cannot improve it.
GapRow condition_h_gap(Universe& u, int n);

struct ConditionHReport {
  std::vector<GapRow> rows;
  bool bounded_below = true;  // all non-vacuous rows >= the first non-vacuous one / 2
};

ConditionHReport condition_h_report(Universe& u, int max_level);

struct DesignatedGap {
  int k = 0, level = 0;
  Relation rel = Relation::Unknown;
  Rational normalized = 0;  // certified gap / r^{n_k}
  Rational exact = 0;       // |Φξ_k - Φη| from the exact points
};

std::vector<DesignatedGap> designated_gaps(Universe& u, const std::vector<DesignatedPair>& family);

struct NetReport {
  int level = 0;
  std::size_t samples = 0, covered = 0;
  double worst = 0;  // max over samples of the distance to the nearest level-n anchor
};

NetReport net_check(Universe& u, int n, const std::vector<BoundaryAddress>& samples);

// Addresses j^inf and (w)^inf for all words of length <= len.
std::vector<BoundaryAddress> periodic_samples(const IfsSpec& ifs, int len);

void write_pairs_csv(std::ostream& os, const IfsSpec& ifs, const HolderResult& h);

}  // namespace ifsgraph
