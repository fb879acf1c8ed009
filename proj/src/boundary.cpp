#include "ifsgraph/boundary.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

namespace ifsgraph {

Word BoundaryAddress::prefix(std::size_t len) const {
  Word w;
  w.reserve(len);
  for (std::size_t i = 0; i < len; ++i) w.push_back(at(i));
  return w;
}

BoundaryAddress normalize(Word pre, Word period) {
  if (period.empty()) throw std::invalid_argument("address: period must be non-empty");
  const std::size_t n = period.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = period[i] == period[i - p];
    if (ok) {
      period.resize(p);
      break;
    }
  }
  while (!pre.empty() && pre.back() == period.back()) {
    pre.pop_back();
    std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
  }
  return {std::move(pre), std::move(period)};
}

BoundaryAddress parse_address(const IfsSpec& ifs, const std::string& text) {
  auto open = text.find('('), close = text.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open || close + 1 != text.size())
    throw std::invalid_argument("address '" + text + "': expected u(w)");
  std::string pre = text.substr(0, open), per = text.substr(open + 1, close - open - 1);
  if (!pre.empty() && pre.back() == ',') pre.pop_back();
  Word u = pre.empty() ? Word{} : parse_word(ifs, pre);
  Word w = parse_word(ifs, per);
  if (w.empty()) throw std::invalid_argument("address '" + text + "': empty period");
  return normalize(std::move(u), std::move(w));
}

std::string address_label(const IfsSpec& ifs, const BoundaryAddress& a) {
  std::string pre = a.preperiod.empty() ? std::string() : word_label(ifs, a.preperiod);
  return pre + "(" + word_label(ifs, a.period) + ")";
}

Word address_truncation(const IfsSpec& ifs, const BoundaryAddress& a, int n) {
  const Rational target = level_scale(ifs, n);
  Word w;
  Rational r = 1;
  while (r > target) {
    w.push_back(a.at(w.size()));
    r *= ifs.maps[w.back()].ratio;
  }
  return w;
}

std::vector<ClassId> ray(Universe& u, const BoundaryAddress& a, int depth) {
  const Word full = address_truncation(u.ifs(), a, depth);
  std::vector<ClassId> out;
  for (int n = 0; n <= depth; ++n) out.push_back(u.at_level(full, n));
  return out;
}

BoundaryPointApprox phi(const IfsSpec& ifs, const Ball& inv, const BoundaryAddress& a, int depth,
                        const std::optional<Vec>& x0) {
  BoundaryPointApprox p;
  p.depth = depth;
  p.point = word_map(ifs, address_truncation(ifs, a, depth))(x0 ? *x0 : inv.center);
  p.error_radius = level_scale(ifs, depth) * 2 * inv.radius;
  return p;
}

Vec phi_exact(const IfsSpec& ifs, const BoundaryAddress& a) {
  return word_map(ifs, a.preperiod)(fixed_point(word_map(ifs, a.period)));
}

GromovSequence boundary_gromov(Universe& u, LazyMetric& metric, View view, const BoundaryAddress& a1,
                               const BoundaryAddress& a2, int depth, int k) {
  GromovSequence g;
  auto r1 = ray(u, a1, depth), r2 = ray(u, a2, depth);
  for (int n = 0; n <= depth; ++n) {
    g.values.push_back(Rational(2 * n - metric.distance(view, r1[n], r2[n]), 2));
    if (n > 0 && g.values[n] < g.values[n - 1]) g.monotone = false;
  }
  g.same_point = r1.back() == r2.back();
  if (!g.same_point && depth >= k) {
    g.stabilized = true;
    for (int n = depth - k; n < depth; ++n) g.stabilized = g.stabilized && g.values[n] == g.values[depth];
  }
  return g;
}

namespace {

HolderResult pair_ratios(Universe& u, LazyMetric& metric, const std::vector<AddressPair>& pairs, double a, int depth,
                         View view, int k) {
  HolderResult h;
  h.a = a;
  const double r = to_double(u.ifs().min_ratio);
  h.alpha = -std::log(r) / a;
  h.max_ratio = 0;
  h.min_ratio = std::numeric_limits<double>::infinity();
  for (const auto& [xi, eta] : pairs) {
    PairRow row{xi, eta};
    Vec d = phi_exact(u.ifs(), xi) - phi_exact(u.ifs(), eta);
    Rational sq = d.squaredNorm();
    row.dist_lo = to_double(sqrt_lower(sq));
    row.dist_hi = to_double(sqrt_upper(sq));
    if (xi == eta || sq == 0) {
      row.excluded = true;
      row.same_point = true;
    } else {
      auto g = boundary_gromov(u, metric, view, xi, eta, depth, k);
      row.gromov = g.value();
      row.stabilized = g.stabilized;
      row.same_point = g.same_point;
      row.excluded = !g.stabilized;
      row.rho_alpha = std::pow(r, to_double(row.gromov));
    }
    if (row.excluded) {
      ++h.excluded;
    } else {
      row.ratio = row.dist_hi / row.rho_alpha;
      h.max_ratio = std::max(h.max_ratio, row.ratio);
      h.min_ratio = std::min(h.min_ratio, row.dist_lo / row.rho_alpha);
    }
    h.rows.push_back(std::move(row));
  }
  return h;
}

}  // namespace

HolderResult holder_upper_check(Universe& u, LazyMetric& metric, const std::vector<AddressPair>& pairs, double a,
                                int L, int depth, View view, int k) {
  HolderResult h = pair_ratios(u, metric, pairs, a, depth, view, k);
  const double r = to_double(u.ifs().min_ratio);
  h.constant = (L + 1) * std::pow(r, -L / 2.0) * 2 * to_double(u.oracle().ball().radius);
  for (const auto& row : h.rows)
    if (!row.excluded && row.ratio > h.constant * (1 + 1e-12)) ++h.violations;
  return h;
}

HolderResult bilipschitz_lower_check(Universe& u, LazyMetric& metric, const std::vector<AddressPair>& pairs, double a,
                                     int depth, View view, int k) {
  HolderResult h = pair_ratios(u, metric, pairs, a, depth, view, k);
  for (auto& row : h.rows)
    if (!row.excluded) row.ratio = row.dist_lo / row.rho_alpha;
  return h;
}

std::vector<AddressPair> sample_pairs(const IfsSpec& ifs, std::size_t count, std::uint64_t seed, int max_pre,
                                      int max_period) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto draw = [&] {
    Word pre(uniform(0, max_pre)), per(uniform(1, max_period));
    for (auto& s : pre) s = static_cast<Symbol>(uniform(0, ifs.size() - 1));
    for (auto& s : per) s = static_cast<Symbol>(uniform(0, ifs.size() - 1));
    return normalize(std::move(pre), std::move(per));
  };
  std::vector<AddressPair> out;
  while (out.size() < count) {
    BoundaryAddress x = draw(), y = draw();
    if (!(x == y)) out.emplace_back(std::move(x), std::move(y));
  }
  return out;
}

GapRow condition_h_gap(Universe& u, int n) {
  GapRow row;
  row.level = n;
  std::vector<ClassId> ids = u.level_classes(n);
  if (ids.size() < 2) return row;
  const Ball& inv = u.oracle().ball();
  const double reach = 2 * to_double(inv.radius * level_scale(u.ifs(), n));
  std::vector<std::pair<double, ClassId>> order;
  for (ClassId x : ids) order.emplace_back(to_double(map_ball(inv, u.map(x)).center(0)), x);
  std::sort(order.begin(), order.end());

  std::optional<Rational> best;
  double best_d = std::numeric_limits<double>::infinity();
  std::set<std::pair<int, int>> done;
  auto consider = [&](std::size_t i, std::size_t j) {
    if (!done.emplace(i, j).second) return;
    Verdict v = u.oracle().decide(u.map(order[i].second), u.map(order[j].second));
    if (v.kind == Relation::Unknown) {
      ++row.unknown_pairs;
      row.partial = true;
    } else if (v.kind == Relation::Disjoint) {
      ++row.disjoint_pairs;
      if (!best || v.gap_lower < *best) {
        best = v.gap_lower;
        best_d = to_double(*best);
        row.x = u.label(order[i].second);
        row.y = u.label(order[j].second);
      }
    }
  };
  // Seed with near neighbors so the window closes early.
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < std::min(order.size(), i + 4); ++j) consider(i, j);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      if (order[j].first - order[i].first - reach > best_d * (1 + 1e-9) + 1e-300) break;
      consider(i, j);
    }
  if (best) {
    row.vacuous = false;
    row.normalized = *best / level_scale(u.ifs(), n);
  }
  return row;
}

ConditionHReport condition_h_report(Universe& u, int max_level) {
  ConditionHReport rep;
  std::optional<Rational> first;
  for (int n = 0; n <= max_level; ++n) {
    rep.rows.push_back(condition_h_gap(u, n));
    const GapRow& r = rep.rows.back();
    if (r.vacuous) continue;
    if (!first) first = r.normalized;
    if (r.normalized * 2 < *first) rep.bounded_below = false;
  }
  return rep;
}

std::vector<DesignatedGap> designated_gaps(Universe& u, const std::vector<DesignatedPair>& family) {
  std::vector<DesignatedGap> out;
  for (const auto& p : family) {
    DesignatedGap g;
    g.k = p.k;
    g.level = p.level;
    Verdict v = u.oracle().decide(word_map(u.ifs(), p.u), word_map(u.ifs(), p.w));
    g.rel = v.kind;
    if (v.kind == Relation::Disjoint) g.normalized = v.gap_lower / level_scale(u.ifs(), p.level);
    Vec d = phi_exact(u.ifs(), normalize(p.xi_pre, p.xi_period)) - phi_exact(u.ifs(), normalize(p.eta_pre, p.eta_period));
    g.exact = sqrt_lower(d.squaredNorm());
    out.push_back(g);
  }
  return out;
}

NetReport net_check(Universe& u, int n, const std::vector<BoundaryAddress>& samples) {
  NetReport rep;
  rep.level = n;
  rep.samples = samples.size();
  const Ball& inv = u.oracle().ball();
  const Rational reach = level_scale(u.ifs(), n) * 2 * inv.radius;
  std::vector<Vec> anchors;
  for (ClassId x : u.level_classes(n)) anchors.push_back(u.map(x)(inv.center));
  for (const auto& a : samples) {
    Vec p = phi_exact(u.ifs(), a);
    std::optional<Rational> nearest;
    for (const Vec& c : anchors) {
      Rational s = Vec(p - c).squaredNorm();
      if (!nearest || s < *nearest) nearest = s;
    }
    if (*nearest <= reach * reach) ++rep.covered;
    rep.worst = std::max(rep.worst, std::sqrt(to_double(*nearest)));
  }
  return rep;
}

std::vector<BoundaryAddress> periodic_samples(const IfsSpec& ifs, int len) {
  std::vector<BoundaryAddress> out;
  std::vector<Word> frontier{Word{}};
  for (int l = 1; l <= len; ++l) {
    std::vector<Word> next;
    for (const Word& w : frontier)
      for (int s = 0; s < ifs.size(); ++s) {
        Word v = w;
        v.push_back(static_cast<Symbol>(s));
        BoundaryAddress a = normalize({}, v);
        if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
        next.push_back(std::move(v));
      }
    frontier = std::move(next);
  }
  return out;
}

void write_pairs_csv(std::ostream& os, const IfsSpec& ifs, const HolderResult& h) {
  std::ostringstream num;
  auto dec = [&](double v) {
    num.str("");
    num << std::setprecision(12) << v;
    return num.str();
  };
  os << "xi,eta,dist_lo_approx,dist_hi_approx,gromov,stabilized,rho_alpha_approx,ratio_approx,excluded\n";
  for (const auto& r : h.rows) {
    os << address_label(ifs, r.xi) << ',' << address_label(ifs, r.eta) << ',' << dec(r.dist_lo) << ','
       << dec(r.dist_hi) << ',' << to_string(r.gromov) << ',' << (r.stabilized ? 1 : 0) << ','
       << (r.excluded ? "" : dec(r.rho_alpha)) << ',' << (r.excluded ? "" : dec(r.ratio)) << ','
       << (r.excluded ? 1 : 0) << '\n';
  }
}

}  // namespace ifsgraph
