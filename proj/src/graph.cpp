#include "ifsgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>

namespace ifsgraph {

const char* edge_kind_name(EdgeKind k) {
  switch (k) {
    case EdgeKind::Vertical: return "vertical";
    case EdgeKind::VerticalPlus: return "vertical_plus";
    default: return "horizontal";
  }
}

int AugmentedGraph::find(int lvl, const std::string& key) const {
  if (lvl < 0 || lvl >= static_cast<int>(index.size())) return -1;
  auto it = index[lvl].find(key);
  return it == index[lvl].end() ? -1 : it->second;
}

std::vector<int> AugmentedGraph::neighbors(int x, View view) const {
  std::vector<int> out;
  for (auto [y, e] : adj[x])
    if (in_view(edges[e].kind, view)) out.push_back(y);
  return out;
}

std::vector<int> AugmentedGraph::parents(int x) const {
  std::vector<int> out;
  for (auto [y, e] : adj[x])
    if (edges[e].kind == EdgeKind::Vertical && level(y) < level(x)) out.push_back(y);
  return out;
}

std::vector<int> AugmentedGraph::children(int x) const {
  std::vector<int> out;
  for (auto [y, e] : adj[x])
    if (edges[e].kind == EdgeKind::Vertical && level(y) > level(x)) out.push_back(y);
  return out;
}

std::vector<int> AugmentedGraph::horizontal(int x) const {
  std::vector<int> out;
  for (auto [y, e] : adj[x])
    if (edges[e].kind == EdgeKind::Horizontal) out.push_back(y);
  return out;
}

bool AugmentedGraph::has_uncertain() const {
  return std::any_of(edges.begin(), edges.end(), [](const Edge& e) { return !e.certain; });
}

namespace {

void finalize(AugmentedGraph& g) {
  for (auto& e : g.edges)
    if (e.u > e.v) std::swap(e.u, e.v);
  std::sort(g.edges.begin(), g.edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.u, a.v, a.kind) < std::tie(b.u, b.v, b.kind);
  });
  g.adj.assign(g.vertices.size(), {});
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    g.adj[g.edges[i].u].emplace_back(g.edges[i].v, static_cast<int>(i));
    g.adj[g.edges[i].v].emplace_back(g.edges[i].u, static_cast<int>(i));
  }
  for (auto& a : g.adj) std::sort(a.begin(), a.end());
  g.index.assign(g.by_level.size(), {});
  for (std::size_t n = 0; n < g.by_level.size(); ++n)
    for (int x : g.by_level[n]) g.index[n].emplace(g.vertices[x].key, x);
}

struct Approx {
  std::vector<double> c;
  double r;
};

Approx approx(const Ball& b) {
  Approx a;
  for (Eigen::Index i = 0; i < b.center.size(); ++i) a.c.push_back(to_double(b.center(i)));
  a.r = to_double(b.radius);
  return a;
}

// Conservative floating prefilter; only pairs it cannot rule out go to exact checks.
bool maybe_overlap(const Approx& a, const Approx& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.c.size(); ++i) s += (a.c[i] - b.c[i]) * (a.c[i] - b.c[i]);
  double lim = (a.r + b.r) * (1 + 1e-9) + 1e-300;
  return std::sqrt(s) <= lim * (1 + 1e-9);
}

}  // namespace

AugmentedGraph build_graph(IntersectOracle& oracle, int depth, Mode mode) {
  const IfsSpec& ifs = oracle.ifs();
  LevelTable table = build_level_table(ifs, depth, oracle.caps());
  AugmentedGraph g;
  g.ifs = ifs;
  g.depth = depth;
  std::vector<int> offset;
  for (int n = 0; n <= depth; ++n) {
    offset.push_back(static_cast<int>(g.vertices.size()));
    std::vector<int> ids;
    for (const auto& c : table.levels[n]) {
      ids.push_back(static_cast<int>(g.vertices.size()));
      g.vertices.push_back(c);
    }
    g.by_level.push_back(std::move(ids));
  }
  std::vector<Ball> balls;
  std::vector<Approx> approxes;
  for (const auto& v : g.vertices) {
    balls.push_back(map_ball(oracle.ball(), v.map));
    approxes.push_back(approx(balls.back()));
  }
  std::vector<std::pair<std::string, std::string>> undecided;
  auto consider = [&](int a, int b, EdgeKind kind) {
    if (!maybe_overlap(approxes[a], approxes[b])) return;
    if (balls_separated(balls[a].center, balls[a].radius, balls[b].center, balls[b].radius)) return;
    Verdict v = oracle.decide(g.vertices[a], g.vertices[b]);
    if (v.kind == Relation::Intersects) {
      g.edges.push_back({a, b, kind, true});
    } else if (v.kind == Relation::Unknown) {
      if (mode == Mode::Strict)
        undecided.emplace_back(class_label(ifs, g.vertices[a]), class_label(ifs, g.vertices[b]));
      else
        g.edges.push_back({a, b, kind, false});
    }
  };
  for (int n = 0; n <= depth; ++n) {
    const auto& ids = g.by_level[n];
    if (n > 0) {
      for (std::size_t i = 0; i < ids.size(); ++i)
        for (int p : parents(table, n, static_cast<int>(i))) g.edges.push_back({offset[n - 1] + p, ids[i], EdgeKind::Vertical, true});
    }
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = i + 1; j < ids.size(); ++j) consider(ids[i], ids[j], EdgeKind::Horizontal);
    if (n > 0) {
      for (std::size_t i = 0; i < ids.size(); ++i) {
        auto ps = parents(table, n, static_cast<int>(i));
        for (int up : g.by_level[n - 1]) {
          if (std::find(ps.begin(), ps.end(), up - offset[n - 1]) != ps.end()) continue;
          consider(up, ids[i], EdgeKind::VerticalPlus);
        }
      }
    }
  }
  if (!undecided.empty()) {
    const std::string what = std::to_string(undecided.size()) + " undecided cylinder pairs";
    throw UnknownAbort(what, std::move(undecided));
  }
  finalize(g);
  return g;
}

AugmentedGraph graph_from_universe(Universe& u, int depth) {
  AugmentedGraph g;
  g.ifs = u.ifs();
  g.depth = depth;
  std::unordered_map<ClassId, int> pos;
  std::vector<ClassId> ids;
  for (int n = 0; n <= depth; ++n) {
    std::vector<int> lvl;
    for (ClassId c : u.level_classes(n)) {
      pos.emplace(c, static_cast<int>(g.vertices.size()));
      lvl.push_back(static_cast<int>(g.vertices.size()));
      ids.push_back(c);
      g.vertices.push_back({n, u.members(c), u.key(c), u.map(c)});
    }
    g.by_level.push_back(std::move(lvl));
  }
  for (std::size_t i = 0; i < ids.size(); ++i) {
    ClassId c = ids[i];
    int me = static_cast<int>(i);
    if (u.level(c) > 0) {
      for (ClassId p : u.parents(c)) g.edges.push_back({pos.at(p), me, EdgeKind::Vertical, true});
      for (ClassId p : u.up_plus(c)) g.edges.push_back({pos.at(p), me, EdgeKind::VerticalPlus, true});
    }
    for (ClassId h : u.horizontal(c))
      if (pos.at(h) > me) g.edges.push_back({me, pos.at(h), EdgeKind::Horizontal, true});
  }
  std::set<std::pair<ClassId, ClassId>> unsure(u.uncertain().begin(), u.uncertain().end());
  for (auto& e : g.edges) {
    ClassId a = ids[e.u], b = ids[e.v];
    if (e.kind != EdgeKind::Vertical && unsure.count({std::min(a, b), std::max(a, b)})) e.certain = false;
  }
  finalize(g);
  return g;
}

std::vector<std::pair<int, int>> conjugate_pairs(const AugmentedGraph& g, int n) {
  std::vector<std::pair<int, int>> out;
  if (n <= 0 || n > g.depth) return out;
  for (const auto& e : g.edges) {
    if (e.kind != EdgeKind::Horizontal || g.level(e.u) != n) continue;
    auto pu = g.parents(e.u), pv = g.parents(e.v);
    bool shared = std::any_of(pu.begin(), pu.end(), [&](int p) { return std::find(pv.begin(), pv.end(), p) != pv.end(); });
    if (!shared) out.emplace_back(e.u, e.v);
  }
  return out;
}

std::vector<std::size_t> wsc_gamma_estimate(IntersectOracle& oracle, int depth) {
  std::vector<std::size_t> out;
  std::size_t running = 0;
  for (int n = 0; n <= depth; ++n) {
    auto classes = quotient_level(oracle.ifs(), n, oracle.caps());
    std::vector<Ball> balls;
    std::vector<Approx> ap;
    for (const auto& c : classes) {
      balls.push_back(map_ball(oracle.ball(), c.map));
      ap.push_back(approx(balls.back()));
    }
    std::vector<Vec> probes;
    for (const auto& b : balls) probes.push_back(b.center);
    for (std::size_t i = 0; i < balls.size(); ++i)
      for (std::size_t j = i + 1; j < balls.size(); ++j)
        if (maybe_overlap(ap[i], ap[j]) && !balls_separated(balls[i].center, balls[i].radius, balls[j].center, balls[j].radius))
          probes.push_back(Vec((balls[i].center + balls[j].center) / Rational(2)));
    std::size_t best = 0;
    for (const Vec& p : probes) {
      std::size_t count = 0;
      for (const auto& b : balls)
        if (Vec(p - b.center).squaredNorm() <= b.radius * b.radius) ++count;
      best = std::max(best, count);
    }
    running = std::max(running, best);
    out.push_back(running);
  }
  return out;
}

DegreeReport degree_report(const AugmentedGraph& g) {
  DegreeReport r;
  for (int n = 0; n <= g.depth; ++n) {
    DegreeRow row;
    row.level = n;
    bool first = true;
    for (int x : g.by_level[n]) {
      int h = 0, vp = 0, v = 0;
      for (auto [y, e] : g.adj[x]) {
        (void)y;
        switch (g.edges[e].kind) {
          case EdgeKind::Horizontal: ++h; break;
          case EdgeKind::VerticalPlus: ++vp; break;
          default: ++v; break;
        }
      }
      int te = v + h, td = v + vp;
      if (first) {
        row.min_h = row.max_h = h;
        row.min_vplus = row.max_vplus = vp;
        row.min_total_e = row.max_total_e = te;
        row.min_total_d = row.max_total_d = td;
        first = false;
      } else {
        row.min_h = std::min(row.min_h, h), row.max_h = std::max(row.max_h, h);
        row.min_vplus = std::min(row.min_vplus, vp), row.max_vplus = std::max(row.max_vplus, vp);
        row.min_total_e = std::min(row.min_total_e, te), row.max_total_e = std::max(row.max_total_e, te);
        row.min_total_d = std::min(row.min_total_d, td), row.max_total_d = std::max(row.max_total_d, td);
      }
    }
    r.rows.push_back(row);
  }
  // Interior levels only: the deepest level lacks its children.
  const int last = g.depth - 1;
  if (last >= 3) {
    auto m = [&](int n) { return std::max(r.rows[n].max_total_e, r.rows[n].max_total_d); };
    r.growth_warning = m(last) > m(last - 1) && m(last - 1) > m(last - 2);
  }
  return r;
}

void write_dot(std::ostream& os, const AugmentedGraph& g, View view, const std::vector<int>& highlight) {
  os << "graph X {\n  rankdir=TB;\n  node [shape=box, fontsize=10];\n";
  for (int n = 0; n <= g.depth; ++n) {
    os << "  { rank=same;";
    for (int x : g.by_level[n]) os << " v" << x << ';';
    os << " }\n";
  }
  for (int x = 0; x < g.size(); ++x) {
    os << "  v" << x << " [label=\"" << class_label(g.ifs, g.vertices[x]) << "\"";
    if (std::find(highlight.begin(), highlight.end(), x) != highlight.end()) os << ", style=filled, fillcolor=gold";
    os << "];\n";
  }
  for (const auto& e : g.edges) {
    if (!in_view(e.kind, view)) continue;
    os << "  v" << e.u << " -- v" << e.v;
    switch (e.kind) {
      case EdgeKind::Vertical: os << " [color=black"; break;
      case EdgeKind::VerticalPlus: os << " [color=blue"; break;
      default: os << " [color=red, constraint=false"; break;
    }
    if (!e.certain) os << ", style=dashed";
    os << "];\n";
  }
  os << "}\n";
}

void write_edges_csv(std::ostream& os, const AugmentedGraph& g) {
  os << "level_x,key_x,level_y,key_y,kind,certainty\n";
  for (const auto& e : g.edges) {
    const auto& a = g.vertices[e.u];
    const auto& b = g.vertices[e.v];
    os << a.level << ',' << word_label(g.ifs, a.members.front()) << ',' << b.level << ','
       << word_label(g.ifs, b.members.front()) << ',' << edge_kind_name(e.kind) << ','
       << (e.certain ? "certain" : "uncertain") << '\n';
  }
}

}  // namespace ifsgraph
