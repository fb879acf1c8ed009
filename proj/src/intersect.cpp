#include "ifsgraph/intersect.hpp"

#include <algorithm>
#include <mutex>
#include <ostream>
#include <unordered_set>

namespace ifsgraph {

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::Intersects: return "Intersects";
    case Relation::Disjoint: return "Disjoint";
    default: return "Unknown";
  }
}

Ball map_ball(const Ball& inv, const Sim& s) { return {s(inv.center), s.ratio * inv.radius}; }

Ball cylinder_ball(const IfsSpec& ifs, const Ball& inv, const Word& w) { return map_ball(inv, word_map(ifs, w)); }

namespace {

bool is_identity(const Sim& h) {
  return h.ratio == 1 && h.translation.isZero() && h.orthogonal.isIdentity();
}

Word join(int sym, const Word& rest) {
  Word out;
  out.reserve(rest.size() + 1);
  if (sym >= 0) out.push_back(static_cast<Symbol>(sym));
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

}  // namespace

IntersectOracle::IntersectOracle(IfsSpec ifs, Caps caps)
    : ifs_(std::move(ifs)), caps_(caps), ball_(invariant_ball(ifs_)) {
  for (const auto& m : ifs_.maps) inverses_.push_back(inverse(m));
}

std::size_t IntersectOracle::cache_size() const {
  std::shared_lock lock(mutex_);
  return cache_.size();
}

std::optional<IntersectOracle::Node> IntersectOracle::lookup(const std::string& key) const {
  std::shared_lock lock(mutex_);
  auto it = cache_.find(key);
  if (it == cache_.end()) return std::nullopt;
  return it->second;
}

void IntersectOracle::publish(const std::string& key, const Node& n) {
  std::unique_lock lock(mutex_);
  if (caps_.cache_limit && cache_.size() >= caps_.cache_limit) cache_.clear();
  cache_.emplace(key, n);
}

IntersectOracle::Node IntersectOracle::visit(const Sim& h, const std::string& key, int depth) {
  if (auto hit = lookup(key)) return *hit;

  Node node;
  if (is_identity(h)) {
    node.rel = Relation::Intersects;
    node.witness.kind = Witness::Kind::MapEquality;
    publish(key, node);
    return node;
  }
  const Rational spread = ball_.radius * (Rational(1) + h.ratio);
  const Rational sep = Vec(ball_.center - h(ball_.center)).squaredNorm();
  if (sep > spread * spread) {
    node.rel = Relation::Disjoint;
    node.gap = sqrt_lower(sep) - spread;
    publish(key, node);
    return node;
  }
  if (depth >= caps_.refine_depth || budget_used_ >= caps_.node_budget) {
    if (budget_used_ >= caps_.node_budget) budget_hit_ = true;
    return node;  // Unknown, never cached
  }
  ++budget_used_;

  struct Child {
    int i, j;
    Sim map;
    Rational sep;
    std::string key;
  };
  std::vector<Child> children;
  const int n = ifs_.size();
  auto add = [&](int i, int j) {
    Sim c = h;
    if (j >= 0) c = compose(c, ifs_.maps[j]);
    if (i >= 0) c = compose(inverses_[i], c);
    Rational s = Vec(ball_.center - c(ball_.center)).squaredNorm();
    std::string k = canonical_key(c);
    children.push_back({i, j, std::move(c), std::move(s), std::move(k)});
  };
  if (h.ratio > 1) {
    for (int j = 0; j < n; ++j) add(-1, j);
  } else if (h.ratio < 1) {
    for (int i = 0; i < n; ++i) add(i, -1);
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) add(i, j);
  }
  // Short keys (small denominators) first: cycles close among them, while
  // children dragging long denominators along rarely return.
  std::stable_sort(children.begin(), children.end(), [](const Child& a, const Child& b) {
    if (a.key.size() != b.key.size()) return a.key.size() < b.key.size();
    return a.sep < b.sep;
  });

  on_stack_.emplace(key, static_cast<int>(stack_.size()));
  stack_.push_back({key});
  bool unknown = false;
  bool have_gap = false;
  Rational gap;
  int height = 0;
  for (const Child& c : children) {
    stack_.back().i = c.i;
    stack_.back().j = c.j;
    const std::string& ckey = c.key;
    if (auto it = on_stack_.find(ckey); it != on_stack_.end()) {
      // Back edge: h_s = S_U^-1 h_s S_V along the cycle, so h_s(fix S_V) = fix S_U.
      Witness w;
      w.kind = Witness::Kind::PeriodicPoint;
      for (std::size_t t = static_cast<std::size_t>(it->second); t < stack_.size(); ++t) {
        if (stack_[t].i >= 0) w.ua.push_back(static_cast<Symbol>(stack_[t].i));
        if (stack_[t].j >= 0) w.ub.push_back(static_cast<Symbol>(stack_[t].j));
      }
      w.a = join(c.i, {});
      w.b = join(c.j, {});
      node.rel = Relation::Intersects;
      node.witness = std::move(w);
      break;
    }
    Node sub = visit(c.map, ckey, depth + 1);
    if (sub.rel == Relation::Intersects) {
      node.rel = Relation::Intersects;
      node.witness = sub.witness;
      node.witness.a = join(c.i, sub.witness.a);
      node.witness.b = join(c.j, sub.witness.b);
      break;
    }
    if (sub.rel == Relation::Unknown) {
      unknown = true;
      continue;
    }
    Rational scaled = c.i >= 0 ? Rational(ifs_.maps[c.i].ratio * sub.gap) : sub.gap;
    if (!have_gap || scaled < gap) gap = scaled;
    have_gap = true;
    height = std::max(height, sub.height + 1);
  }
  stack_.pop_back();
  on_stack_.erase(key);

  if (node.rel == Relation::Intersects) {
    publish(key, node);
    return node;
  }
  if (unknown) return Node{};
  node.rel = Relation::Disjoint;
  node.height = height;
  node.gap = gap;
  publish(key, node);
  return node;
}

IntersectOracle::Node IntersectOracle::solve(const Sim& h, const std::string& key) {
  budget_used_ = 0;
  budget_hit_ = false;
  stack_.clear();
  on_stack_.clear();
  return visit(h, key, 0);
}

Verdict IntersectOracle::decide(const Sim& sx, const Sim& sy) {
  Verdict v;
  Ball bx = map_ball(ball_, sx), by = map_ball(ball_, sy);
  Rational sep = Vec(bx.center - by.center).squaredNorm();
  Rational spread = bx.radius + by.radius;
  if (sep > spread * spread) {
    v.kind = Relation::Disjoint;
    v.separation_depth = 0;
    v.gap_lower = sqrt_lower(sep) - spread;
    return v;
  }
  Sim h0 = compose(inverse(sx), sy);
  Sim h1 = inverse(h0);
  std::string k0 = canonical_key(h0), k1 = canonical_key(h1);
  const bool flip = k1 < k0;
  Node n = flip ? solve(h1, k1) : solve(h0, k0);
  switch (n.rel) {
    case Relation::Intersects:
      v.kind = Relation::Intersects;
      v.witness = flip ? n.witness.swapped() : n.witness;
      return v;
    case Relation::Disjoint: {
      v.kind = Relation::Disjoint;
      v.separation_depth = n.height;
      Rational g = flip ? Rational(h0.ratio * n.gap) : n.gap;
      v.gap_lower = sx.ratio * g;
      return v;
    }
    default:
      break;
  }
  if (auto w = brute_force_witness(ifs_, sx, sy, caps_.witness_word_len, caps_.witness_period_len)) {
    ++fallback_uses_;
    v.kind = Relation::Intersects;
    v.witness = *w;
    return v;
  }
  v.kind = Relation::Unknown;
  v.cap = caps_.refine_depth;
  return v;
}

void IntersectOracle::dump_cache_csv(std::ostream& os) const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> keys;
  keys.reserve(cache_.size());
  for (const auto& kv : cache_) keys.push_back(kv.first);
  std::sort(keys.begin(), keys.end());
  os << "neighbor_key,verdict,depth,gap_lower\n";
  for (const auto& k : keys) {
    const Node& n = cache_.at(k);
    os << '"' << k << "\"," << relation_name(n.rel) << ',' << (n.rel == Relation::Disjoint ? n.height : 0) << ','
       << (n.rel == Relation::Disjoint ? to_string(n.gap) : std::string()) << '\n';
  }
}

namespace {

void words_upto(int n, int len, std::vector<Word>& out, bool include_empty) {
  out.clear();
  if (include_empty) out.push_back({});
  std::vector<Word> frontier{{}};
  for (int l = 1; l <= len; ++l) {
    std::vector<Word> next;
    for (const Word& w : frontier)
      for (int s = 0; s < n; ++s) {
        Word x = w;
        x.push_back(static_cast<Symbol>(s));
        next.push_back(x);
      }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
}

}  // namespace

std::optional<Witness> brute_force_witness(const IfsSpec& ifs, const Sim& sx, const Sim& sy, int word_len,
                                           int period_len) {
  std::vector<Word> words, periods;
  words_upto(ifs.size(), word_len, words, true);
  words_upto(ifs.size(), period_len, periods, false);

  std::unordered_map<std::string, std::size_t> xs;
  std::vector<Sim> xmaps(words.size()), ymaps(words.size());
  for (std::size_t k = 0; k < words.size(); ++k) {
    xmaps[k] = compose(sx, word_map(ifs, words[k]));
    ymaps[k] = compose(sy, word_map(ifs, words[k]));
    xs.emplace(canonical_key(xmaps[k]), k);
  }
  for (std::size_t k = 0; k < words.size(); ++k) {
    auto it = xs.find(canonical_key(ymaps[k]));
    if (it != xs.end()) return Witness{Witness::Kind::MapEquality, words[it->second], words[k], {}, {}};
  }
  std::vector<Vec> fixes;
  for (const Word& p : periods) fixes.push_back(fixed_point(word_map(ifs, p)));
  std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> points;
  for (std::size_t k = 0; k < words.size(); ++k)
    for (std::size_t p = 0; p < periods.size(); ++p) points.emplace(vec_to_string(xmaps[k](fixes[p])), std::pair{k, p});
  for (std::size_t k = 0; k < words.size(); ++k)
    for (std::size_t p = 0; p < periods.size(); ++p) {
      auto it = points.find(vec_to_string(ymaps[k](fixes[p])));
      if (it != points.end())
        return Witness{Witness::Kind::PeriodicPoint, words[it->second.first], words[k], periods[it->second.second],
                       periods[p]};
    }
  return std::nullopt;
}

bool verify_witness(const IfsSpec& ifs, const Sim& sx, const Sim& sy, const Witness& w) {
  Sim xa = compose(sx, word_map(ifs, w.a));
  Sim yb = compose(sy, word_map(ifs, w.b));
  switch (w.kind) {
    case Witness::Kind::MapEquality:
      return canonical_key(xa) == canonical_key(yb);
    case Witness::Kind::PeriodicPoint:
      if (w.ua.empty() || w.ub.empty()) return false;
      return xa(fixed_point(word_map(ifs, w.ua))) == yb(fixed_point(word_map(ifs, w.ub)));
    default:
      return false;
  }
}

namespace {

bool refine_separates(const IfsSpec& ifs, const Ball& inv, const Sim& a, const Sim& b, int left) {
  if (balls_separated(a(inv.center), a.ratio * inv.radius, b(inv.center), b.ratio * inv.radius)) return true;
  if (left == 0) return false;
  const int n = ifs.size();
  if (b.ratio > a.ratio) {
    for (int j = 0; j < n; ++j)
      if (!refine_separates(ifs, inv, a, compose(b, ifs.maps[j]), left - 1)) return false;
  } else if (b.ratio < a.ratio) {
    for (int i = 0; i < n; ++i)
      if (!refine_separates(ifs, inv, compose(a, ifs.maps[i]), b, left - 1)) return false;
  } else {
    for (int i = 0; i < n; ++i) {
      Sim ai = compose(a, ifs.maps[i]);
      for (int j = 0; j < n; ++j)
        if (!refine_separates(ifs, inv, ai, compose(b, ifs.maps[j]), left - 1)) return false;
    }
  }
  return true;
}

}  // namespace

bool verify_disjoint(const IfsSpec& ifs, const Ball& inv, const Sim& sx, const Sim& sy, int depth) {
  if (depth < 0) return false;
  return refine_separates(ifs, inv, sx, sy, depth);
}

bool verify_verdict(const IfsSpec& ifs, const Ball& inv, const Sim& sx, const Sim& sy, const Verdict& v) {
  switch (v.kind) {
    case Relation::Intersects: return verify_witness(ifs, sx, sy, v.witness);
    case Relation::Disjoint: return v.gap_lower > 0 && verify_disjoint(ifs, inv, sx, sy, v.separation_depth);
    default: return false;
  }
}

VerdictMatrix pairwise_intersections(IntersectOracle& oracle, const std::vector<VertexClass>& a,
                                     const std::vector<VertexClass>& b) {
  VerdictMatrix m;
  std::unordered_set<std::string> keys;
  m.rel.assign(a.size(), std::vector<Relation>(b.size(), Relation::Unknown));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      Sim h = compose(inverse(a[i].map), b[j].map);
      std::string k0 = canonical_key(h), k1 = canonical_key(inverse(h));
      keys.insert(std::min(k0, k1));
      m.rel[i][j] = oracle.decide(a[i], b[j]).kind;
    }
  m.distinct_keys = keys.size();
  return m;
}

}  // namespace ifsgraph
