#include "ifsgraph/hyperbolic.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace ifsgraph {

std::vector<int> bfs(const AugmentedGraph& g, View view, int src, bool same_level) {
  std::vector<int> dist(g.size(), kUnreachable);
  std::deque<int> q{src};
  dist[src] = 0;
  const int lvl = g.level(src);
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (auto [y, e] : g.adj[x]) {
      if (dist[y] != kUnreachable) continue;
      if (same_level) {
        if (g.edges[e].kind != EdgeKind::Horizontal || g.level(y) != lvl) continue;
      } else if (!in_view(g.edges[e].kind, view)) {
        continue;
      }
      dist[y] = dist[x] + 1;
      q.push_back(y);
    }
  }
  return dist;
}

Distances all_pairs(const AugmentedGraph& g, View view) {
  Distances d;
  d.view = view;
  d.d.reserve(g.size());
  for (int x = 0; x < g.size(); ++x) d.d.push_back(bfs(g, view, x));
  return d;
}

int distance(const AugmentedGraph& g, View view, int x, int y) { return bfs(g, view, x)[y]; }

Rational gromov_product(const AugmentedGraph& g, const Distances& d, int x, int y) {
  return Rational(g.level(x) + g.level(y) - d(x, y), 2);
}

Rational gromov_product(const AugmentedGraph& g, View view, int x, int y) {
  return Rational(g.level(x) + g.level(y) - distance(g, view, x, y), 2);
}

namespace {

// Ancestor sets of x by level along vertical edges.
std::vector<std::vector<int>> graph_ancestors(const AugmentedGraph& g, int x) {
  std::vector<std::vector<int>> a(g.level(x) + 1);
  a[g.level(x)] = {x};
  for (int h = g.level(x); h > 0; --h) {
    std::vector<int> up;
    for (int v : a[h])
      for (int p : g.parents(v)) up.push_back(p);
    std::sort(up.begin(), up.end());
    up.erase(std::unique(up.begin(), up.end()), up.end());
    a[h - 1] = std::move(up);
  }
  return a;
}

// Multi-source BFS restricted to horizontal edges within one level.
std::vector<int> level_bfs(const AugmentedGraph& g, const std::vector<int>& sources) {
  std::vector<int> dist(g.size(), kUnreachable);
  std::deque<int> q;
  for (int s : sources) {
    dist[s] = 0;
    q.push_back(s);
  }
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (int y : g.horizontal(x))
      if (dist[y] == kUnreachable) {
        dist[y] = dist[x] + 1;
        q.push_back(y);
      }
  }
  return dist;
}

int min_over(const std::vector<int>& set, const std::vector<int>& dist) {
  int best = std::numeric_limits<int>::max();
  for (int v : set)
    if (dist[v] != kUnreachable) best = std::min(best, dist[v]);
  return best;
}

bool contains(const std::vector<int>& sorted, int v) { return std::binary_search(sorted.begin(), sorted.end(), v); }

}  // namespace

GeodesicPath canonical_geodesic(const AugmentedGraph& g, const Distances& d, int x, int y) {
  GeodesicPath path;
  const int D = d(x, y);
  if (D == kUnreachable) throw std::logic_error("canonical_geodesic: vertices not connected");
  const int nx = g.level(x), ny = g.level(y);
  if (d.view == View::Diamond) {
    const int t = (nx + ny - D) / 2;
    int cur = x, rem = D;
    path.vertices.push_back(x);
    auto step = [&](int target_level) {
      int best = -1;
      for (int v : g.neighbors(cur, View::Diamond))
        if (g.level(v) == target_level && d(v, y) == rem - 1 && (best < 0 || v < best)) best = v;
      if (best < 0) throw std::logic_error("canonical_geodesic: no monotone step (diamond law fails)");
      cur = best;
      --rem;
      path.vertices.push_back(cur);
    };
    while (g.level(cur) > t) step(g.level(cur) - 1);
    path.desc_end = path.asc_begin = static_cast<int>(path.vertices.size()) - 1;
    while (cur != y) step(g.level(cur) + 1);
    path.top = t;
    path.ell = 0;
    return path;
  }

  auto ax = graph_ancestors(g, x), ay = graph_ancestors(g, y);
  int h = -1, ell = 0;
  std::vector<int> to_y;
  for (int lv = 0; lv <= std::min(nx, ny); ++lv) {
    auto dist = level_bfs(g, ay[lv]);
    int l = min_over(ax[lv], dist);
    if (l != std::numeric_limits<int>::max() && nx + ny - 2 * lv + l == D) {
      h = lv;
      ell = l;
      to_y = std::move(dist);
      break;
    }
  }
  if (h < 0) throw std::logic_error("canonical_geodesic: no canonical decomposition found");
  int cur = x;
  path.vertices.push_back(x);
  while (g.level(cur) > h) {
    int best = -1;
    for (int p : g.parents(cur)) {
      auto ap = graph_ancestors(g, p);
      if (min_over(ap[h], to_y) == ell && (best < 0 || p < best)) best = p;
    }
    cur = best;
    path.vertices.push_back(cur);
  }
  path.desc_end = static_cast<int>(path.vertices.size()) - 1;
  for (int s = ell; s > 0; --s) {
    int best = -1;
    for (int v : g.horizontal(cur))
      if (to_y[v] == s - 1 && (best < 0 || v < best)) best = v;
    cur = best;
    path.vertices.push_back(cur);
  }
  path.asc_begin = static_cast<int>(path.vertices.size()) - 1;
  while (cur != y) {
    int best = -1;
    for (int c : g.children(cur))
      if (contains(ay[g.level(c)], c) && (best < 0 || c < best)) best = c;
    cur = best;
    path.vertices.push_back(cur);
  }
  path.top = h;
  path.ell = ell;
  return path;
}

std::vector<int> horizontal_geodesic_bound(const AugmentedGraph& g, const Distances& de) {
  std::vector<int> L(g.depth + 1, 0);
  for (int n = 0; n <= g.depth; ++n)
    for (int x : g.by_level[n]) {
      auto dh = bfs(g, View::E, x, true);
      for (int y : g.by_level[n])
        if (dh[y] != kUnreachable && dh[y] == de(x, y)) L[n] = std::max(L[n], dh[y]);
    }
  return L;
}

DiamondResult diamond_check(const AugmentedGraph& g, View view, const Distances& dd) {
  DiamondResult r;
  for (const auto& e : g.edges)
    if (in_view(e.kind, view) && g.level(e.u) == g.level(e.v)) {
      r.no_same_level_edges = false;
      if (r.counterexample.empty())
        r.counterexample = "same-level edge " + class_label(g.ifs, g.vertices[e.u]) + " -- " +
                           class_label(g.ifs, g.vertices[e.v]);
      break;
    }
  for (int v = 0; v < g.size() && r.closes; ++v) {
    std::vector<int> up;
    for (int u : g.neighbors(v, view))
      if (g.level(u) == g.level(v) - 1) up.push_back(u);
    for (std::size_t i = 0; i < up.size() && r.closes; ++i)
      for (std::size_t j = i + 1; j < up.size(); ++j) {
        auto nu = g.neighbors(up[i], view), nw = g.neighbors(up[j], view);
        bool found = false;
        for (int c : nu)
          if (g.level(c) == g.level(up[i]) - 1 && std::find(nw.begin(), nw.end(), c) != nw.end()) {
            found = true;
            break;
          }
        if (!found) {
          r.closes = false;
          r.counterexample = "open configuration " + class_label(g.ifs, g.vertices[up[i]]) + " - " +
                             class_label(g.ifs, g.vertices[v]) + " - " + class_label(g.ifs, g.vertices[up[j]]);
          break;
        }
      }
  }
  for (int n = 0; n <= g.depth && r.even; ++n)
    for (int x : g.by_level[n]) {
      for (int y : g.by_level[n])
        if (dd(x, y) % 2 != 0) {
          r.even = false;
          if (r.counterexample.empty())
            r.counterexample = "odd same-level distance " + class_label(g.ifs, g.vertices[x]) + " / " +
                               class_label(g.ifs, g.vertices[y]);
          break;
        }
      if (!r.even) break;
    }
  return r;
}

std::vector<std::vector<int>> geodesic_slices(const AugmentedGraph& g, int z) {
  std::vector<std::vector<int>> s(g.level(z) + 1);
  s[g.level(z)] = {z};
  for (int i = g.level(z); i > 0; --i) {
    std::vector<int> up;
    for (int v : s[i])
      for (int u : g.neighbors(v, View::Diamond))
        if (g.level(u) == i - 1) up.push_back(u);
    std::sort(up.begin(), up.end());
    up.erase(std::unique(up.begin(), up.end()), up.end());
    s[i - 1] = std::move(up);
  }
  return s;
}

FanResult geodesic_fan_divergence(const AugmentedGraph& g, const Distances& dd) {
  FanResult r;
  for (int z = 0; z < g.size(); ++z) {
    auto s = geodesic_slices(g, z);
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t a = 0; a < s[i].size(); ++a)
        for (std::size_t b = a + 1; b < s[i].size(); ++b) {
          int dist = dd(s[i][a], s[i][b]);
          if (dist > r.delta_prime) {
            r.delta_prime = dist;
            r.witness_vertex = z;
            r.witness_level = static_cast<int>(i);
          }
        }
  }
  return r;
}

DeltaResult delta_hyperbolicity(const AugmentedGraph& g, const Distances& d, std::size_t vertex_cap,
                                std::size_t samples, std::uint64_t seed) {
  const int n = g.size();
  std::vector<int> p2(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) p2[static_cast<std::size_t>(x) * n + y] = g.level(x) + g.level(y) - d(x, y);
  auto P = [&](int a, int b) { return p2[static_cast<std::size_t>(a) * n + b]; };
  DeltaResult r;
  int best = 0;
  if (static_cast<std::size_t>(n) <= vertex_cap) {
    for (int x = 0; x < n; ++x)
      for (int y = x; y < n; ++y) {
        const int pxy = P(x, y);
        for (int z = 0; z < n; ++z) best = std::max(best, std::min(P(x, z), P(z, y)) - pxy);
        r.triples += n;
      }
  } else {
    r.exhaustive = false;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (std::size_t s = 0; s < samples; ++s) {
      int x = pick(rng), y = pick(rng), z = pick(rng);
      best = std::max(best, std::min(P(x, z), P(z, y)) - P(x, y));
    }
    r.triples = samples;
  }
  r.delta = Rational(best, 2);
  return r;
}

QuasiResult quasi_isometry_check(const Distances& de, const Distances& dd) {
  QuasiResult q;
  q.max_excess = std::numeric_limits<int>::min();
  const std::size_t n = de.d.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      int a = de.d[x][y], b = dd.d[x][y];
      ++q.pairs;
      q.max_excess = std::max(q.max_excess, b - a - 1);
      q.C = std::max(q.C, a - b);
      if (b > a + 1) ++q.violations;
    }
  return q;
}

double a_max(const Rational& delta) {
  if (delta == 0) return std::log(2.0);
  return std::log(2.0) / (2.0 * delta.convert_to<double>());
}

RhoA rho_a(const AugmentedGraph& g, const Distances& d, int x, int y, double a) {
  RhoA r;
  r.a = a;
  r.same = x == y;
  r.gromov = gromov_product(g, d, x, y);
  return r;
}

ThetaResult theta_a(const AugmentedGraph& g, const Distances& d, const std::vector<int>& subset, double a,
                    const Rational& delta) {
  ThetaResult t;
  const std::size_t m = subset.size();
  if (m < 2) return t;
  std::vector<std::vector<double>> rho(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) rho[i][j] = rho_a(g, d, subset[i], subset[j], a).value();
  t.theta = rho;
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) t.theta[i][j] = std::min(t.theta[i][j], t.theta[i][k] + t.theta[k][j]);
  const double ap = std::exp(delta.convert_to<double>() * a) - 1.0;
  t.worst_lower_slack = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      double lower = (1.0 - 2.0 * ap) * rho[i][j];
      t.worst_lower_slack = std::min(t.worst_lower_slack, t.theta[i][j] - lower);
      if (t.theta[i][j] < lower - 1e-12 || t.theta[i][j] > rho[i][j] + 1e-12) t.sandwich_ok = false;
    }
  return t;
}

int condition_c_diagnostic(const AugmentedGraph& g, const Ball& inv, int n, const Rational& a_scale) {
  if (n < 0 || n > g.depth) return 0;
  const auto& ids = g.by_level[n];
  const Rational probe_r = a_scale * level_scale(g.ifs, n) / 2;
  std::vector<Ball> balls;
  for (int x : ids) balls.push_back(map_ball(inv, g.vertices[x].map));
  int worst = ids.empty() ? 0 : 1;
  for (std::size_t p = 0; p < ids.size(); ++p) {
    std::vector<int> chain;
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (!balls_separated(balls[p].center, probe_r, balls[i].center, balls[i].radius)) chain.push_back(ids[i]);
    std::sort(chain.begin(), chain.end());
    for (int s : chain) {
      std::unordered_map<int, int> dist{{s, 1}};
      std::deque<int> q{s};
      while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int w : g.horizontal(v))
          if (contains(chain, w) && !dist.count(w)) {
            dist[w] = dist[v] + 1;
            q.push_back(w);
          }
      }
      for (auto [v, k] : dist) worst = std::max(worst, k);
    }
  }
  return worst;
}

HyperbolicityReport analyze(const AugmentedGraph& g) {
  HyperbolicityReport r;
  r.depth = g.depth;
  Distances de = all_pairs(g, View::E), dd = all_pairs(g, View::Diamond);
  auto delta = delta_hyperbolicity(g, de);
  r.delta = delta.delta;
  r.delta_exhaustive = delta.exhaustive;
  r.L_per_level = horizontal_geodesic_bound(g, de);
  r.L = *std::max_element(r.L_per_level.begin(), r.L_per_level.end());
  r.delta_prime = geodesic_fan_divergence(g, dd).delta_prime;
  auto q = quasi_isometry_check(de, dd);
  r.quasi_C = q.C;
  r.lemma_violations = q.violations;
  r.diamond_ok = diamond_check(g, View::Diamond, dd).ok();
  r.a_max = a_max(r.delta);
  Ball inv = invariant_ball(g.ifs);
  r.condition_c = condition_c_diagnostic(g, inv, g.depth, 2 * inv.radius);
  return r;
}

LazyMetric::LazyMetric(Universe& u) : u_(u), radius_(to_double(u.oracle().ball().radius)) {}

const std::vector<double>& LazyMetric::center(ClassId x) {
  auto it = centers_.find(x);
  if (it != centers_.end()) return it->second;
  Vec c = u_.map(x)(u_.oracle().ball().center);
  std::vector<double> v;
  for (Eigen::Index i = 0; i < c.size(); ++i) v.push_back(to_double(c(i)));
  return centers_.emplace(x, std::move(v)).first->second;
}

std::vector<std::vector<ClassId>> LazyMetric::ancestors(ClassId x) {
  std::vector<std::vector<ClassId>> a(u_.level(x) + 1);
  a[u_.level(x)] = {x};
  for (int h = u_.level(x); h > 0; --h) {
    std::vector<ClassId> up;
    for (ClassId v : a[h])
      for (ClassId p : u_.parents(v)) up.push_back(p);
    std::sort(up.begin(), up.end());
    up.erase(std::unique(up.begin(), up.end()), up.end());
    a[h - 1] = std::move(up);
  }
  return a;
}

std::vector<std::vector<ClassId>> LazyMetric::closure(ClassId x) {
  std::vector<std::vector<ClassId>> c(u_.level(x) + 1);
  c[u_.level(x)] = {x};
  for (int h = u_.level(x); h > 0; --h) {
    std::vector<ClassId> up;
    for (ClassId v : c[h]) {
      for (ClassId p : u_.parents(v)) up.push_back(p);
      for (ClassId p : u_.up_plus(v)) up.push_back(p);
    }
    std::sort(up.begin(), up.end());
    up.erase(std::unique(up.begin(), up.end()), up.end());
    c[h - 1] = std::move(up);
  }
  return c;
}

namespace {

bool meets(const std::vector<ClassId>& a, const std::vector<ClassId>& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    if (a[i] < b[j]) ++i; else ++j;
  }
  return false;
}

}  // namespace

int LazyMetric::distance_e(ClassId x, ClassId y) {
  if (x == y) return 0;
  auto ax = ancestors(x), ay = ancestors(y);
  const int nx = u_.level(x), ny = u_.level(y);
  int best = nx + ny;
  for (int h = 1; h <= std::min(nx, ny); ++h) {
    const int base = nx + ny - 2 * h;
    const int limit = best - base - 1;
    if (limit < 0) continue;
    if (meets(ax[h], ay[h])) {
      best = base;
      continue;
    }
    // A horizontal step moves the cylinder-ball center by at most 2 R r^h.
    const double stride = 2.0 * radius_ * std::pow(to_double(u_.ifs().min_ratio), h);
    std::vector<const std::vector<double>*> targets;
    for (ClassId t : ay[h]) targets.push_back(&center(t));
    auto lower = [&](ClassId v) {
      const auto& c = center(v);
      double m = std::numeric_limits<double>::infinity();
      for (const auto* t : targets) {
        double s = 0;
        for (std::size_t i = 0; i < c.size(); ++i) s += (c[i] - (*t)[i]) * (c[i] - (*t)[i]);
        m = std::min(m, std::sqrt(s));
      }
      double steps = m / stride * (1 - 1e-9) - 1e-9;
      return steps <= 0 ? 0 : static_cast<int>(std::floor(steps));
    };
    std::unordered_set<ClassId> target(ay[h].begin(), ay[h].end());
    std::unordered_map<ClassId, int> seen;
    std::deque<ClassId> q;
    for (ClassId s : ax[h]) {
      seen.emplace(s, 0);
      q.push_back(s);
    }
    int found = -1;
    while (!q.empty() && found < 0) {
      ClassId v = q.front();
      q.pop_front();
      const int k = seen[v];
      if (k >= limit) continue;
      std::vector<ClassId> nbrs = u_.horizontal(v);
      for (ClassId w : nbrs) {
        if (seen.count(w)) continue;
        if (target.count(w)) {
          found = k + 1;
          break;
        }
        if (k + 1 + lower(w) > limit) continue;
        seen.emplace(w, k + 1);
        q.push_back(w);
      }
    }
    if (found >= 0) best = base + found;
  }
  return best;
}

int LazyMetric::distance_d(ClassId x, ClassId y) {
  if (x == y) return 0;
  auto cx = closure(x), cy = closure(y);
  const int nx = u_.level(x), ny = u_.level(y);
  for (int h = std::min(nx, ny); h >= 0; --h)
    if (meets(cx[h], cy[h])) return nx + ny - 2 * h;
  return nx + ny;
}

int LazyMetric::distance(View view, ClassId x, ClassId y) {
  return view == View::E ? distance_e(x, y) : distance_d(x, y);
}

Rational LazyMetric::gromov(View view, ClassId x, ClassId y) {
  return Rational(u_.level(x) + u_.level(y) - distance(view, x, y), 2);
}

}  // namespace ifsgraph
