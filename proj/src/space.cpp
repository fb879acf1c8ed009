#include "ifsgraph/space.hpp"

#include <algorithm>

namespace ifsgraph {

Universe::Universe(IntersectOracle& oracle, Mode mode) : oracle_(oracle), mode_(mode) {
  Cls root;
  root.level = 0;
  root.map = Sim::identity(ifs().dimension);
  root.key = canonical_key(root.map);
  root.members = {Word{}};
  root.complete = true;
  root.parents = std::vector<ClassId>{};
  root.horizontal = std::vector<ClassId>{};
  root.up_plus = std::vector<ClassId>{};
  by_key_.emplace(root.key, 0);
  classes_.push_back(std::move(root));
}

const std::vector<Universe::Suffix>& Universe::suffixes(const Rational& rq, int level) {
  std::string k = rq.str();
  auto it = suffix_cache_.find(k);
  if (it != suffix_cache_.end()) return it->second;
  const Rational scale = level_scale(ifs(), level + 1);
  std::vector<Suffix> out;
  struct Item {
    Word w;
    Rational r;
    Sim m;
  };
  std::vector<Item> stack{{Word{}, rq, Sim::identity(ifs().dimension)}};
  while (!stack.empty()) {
    Item it2 = std::move(stack.back());
    stack.pop_back();
    for (int s = ifs().size() - 1; s >= 0; --s) {
      Item c{it2.w, it2.r * ifs().maps[s].ratio, compose(it2.m, ifs().maps[s])};
      c.w.push_back(static_cast<Symbol>(s));
      if (c.r <= scale)
        out.push_back({c.w, c.m});
      else
        stack.push_back(std::move(c));
    }
  }
  std::sort(out.begin(), out.end(), [](const Suffix& a, const Suffix& b) { return a.word < b.word; });
  return suffix_cache_.emplace(k, std::move(out)).first->second;
}

void Universe::expand(ClassId q) {
  if (classes_[q].children) return;
  ensure_complete(q);
  Cls& parent = classes_[q];
  const int n = parent.level;
  const auto& sfx = suffixes(parent.map.ratio, n);
  std::vector<ClassId> kids;
  for (const Suffix& s : sfx) {
    Sim m = compose(parent.map, s.map);
    std::string k = canonical_key(m);
    ClassId id;
    auto it = by_key_.find(k);
    if (it == by_key_.end()) {
      id = static_cast<ClassId>(classes_.size());
      Cls c;
      c.level = n + 1;
      c.key = k;
      c.map = std::move(m);
      c.origin = q;
      by_key_.emplace(c.key, id);
      classes_.push_back(std::move(c));
    } else {
      id = it->second;
    }
    Cls& child = classes_[id];
    for (const Word& v : classes_[q].members) child.members.push_back(concat(v, s.word));
    if (std::find(child.parent_set.begin(), child.parent_set.end(), q) == child.parent_set.end())
      child.parent_set.push_back(q);
    if (std::find(kids.begin(), kids.end(), id) == kids.end()) kids.push_back(id);
  }
  classes_[q].children = std::move(kids);
}

void Universe::ensure_complete(ClassId x) {
  if (classes_[x].complete) return;
  const ClassId p = classes_[x].origin;
  std::vector<ClassId> cands{p};
  const auto& hp = horizontal(p);
  cands.insert(cands.end(), hp.begin(), hp.end());
  for (ClassId q : cands) expand(q);
  Cls& c = classes_[x];
  std::sort(c.members.begin(), c.members.end());
  c.members.erase(std::unique(c.members.begin(), c.members.end()), c.members.end());
  c.complete = true;
}

const std::vector<Word>& Universe::members(ClassId x) {
  ensure_complete(x);
  return classes_[x].members;
}

std::string Universe::label(ClassId x) { return class_label(ifs(), VertexClass{level(x), members(x), key(x), map(x)}); }

bool Universe::less(ClassId a, ClassId b) {
  if (level(a) != level(b)) return level(a) < level(b);
  return min_member(a) < min_member(b);
}

void Universe::sort_ids(std::vector<ClassId>& ids) {
  for (ClassId x : ids) ensure_complete(x);
  std::sort(ids.begin(), ids.end(), [this](ClassId a, ClassId b) { return less(a, b); });
}

const std::vector<ClassId>& Universe::children(ClassId x) {
  if (!classes_[x].children) expand(x);
  return *classes_[x].children;
}

const std::vector<ClassId>& Universe::parents(ClassId x) {
  if (classes_[x].parents) return *classes_[x].parents;
  ensure_complete(x);
  // Every parent of x is p or a horizontal neighbor of p; all were expanded by
  // ensure_complete, so parent_set is final.
  std::vector<ClassId> ps = classes_[x].parent_set;
  sort_ids(ps);
  classes_[x].parents = std::move(ps);
  return *classes_[x].parents;
}

bool Universe::touches(ClassId a, ClassId b) {
  if (a == b) return true;
  std::uint64_t k = (static_cast<std::uint64_t>(std::min(a, b)) << 32) | static_cast<std::uint32_t>(std::max(a, b));
  if (auto it = touch_cache_.find(k); it != touch_cache_.end()) return it->second;
  Verdict v = oracle_.decide(map(a), map(b));
  bool result;
  if (v.kind == Relation::Unknown) {
    if (mode_ == Mode::Strict)
      throw UnknownAbort("undecided intersection between " + label(a) + " and " + label(b),
                         {{label(a), label(b)}});
    uncertain_.emplace_back(std::min(a, b), std::max(a, b));
    result = true;
  } else {
    result = v.kind == Relation::Intersects;
  }
  touch_cache_.emplace(k, result);
  return result;
}

const std::vector<ClassId>& Universe::horizontal(ClassId x) {
  if (classes_[x].horizontal) return *classes_[x].horizontal;
  const ClassId p = classes_[x].origin;
  std::vector<ClassId> qs{p};
  {
    const auto& hp = horizontal(p);
    qs.insert(qs.end(), hp.begin(), hp.end());
  }
  std::vector<ClassId> out;
  for (ClassId q : qs) {
    std::vector<ClassId> kids = children(q);
    for (ClassId c : kids)
      if (c != x && std::find(out.begin(), out.end(), c) == out.end() && touches(x, c)) out.push_back(c);
  }
  sort_ids(out);
  classes_[x].horizontal = std::move(out);
  return *classes_[x].horizontal;
}

const std::vector<ClassId>& Universe::up_plus(ClassId x) {
  if (classes_[x].up_plus) return *classes_[x].up_plus;
  const ClassId p = classes_[x].origin;
  std::vector<ClassId> qs{p};
  {
    const auto& hp = horizontal(p);
    qs.insert(qs.end(), hp.begin(), hp.end());
  }
  const std::vector<ClassId> ps = parents(x);
  std::vector<ClassId> out;
  for (ClassId q : qs)
    if (std::find(ps.begin(), ps.end(), q) == ps.end() && touches(x, q)) out.push_back(q);
  sort_ids(out);
  classes_[x].up_plus = std::move(out);
  return *classes_[x].up_plus;
}

const std::vector<ClassId>& Universe::down_plus(ClassId x) {
  if (classes_[x].down_plus) return *classes_[x].down_plus;
  std::vector<ClassId> qs{x};
  {
    const auto& hx = horizontal(x);
    qs.insert(qs.end(), hx.begin(), hx.end());
  }
  const std::vector<ClassId> own = children(x);
  std::vector<ClassId> out;
  for (ClassId q : qs) {
    std::vector<ClassId> kids = children(q);
    for (ClassId c : kids)
      if (std::find(own.begin(), own.end(), c) == own.end() && std::find(out.begin(), out.end(), c) == out.end() &&
          touches(x, c))
        out.push_back(c);
  }
  sort_ids(out);
  classes_[x].down_plus = std::move(out);
  return *classes_[x].down_plus;
}

std::vector<ClassId> Universe::level_classes(int n) {
  if (levels_.empty()) levels_.push_back({root()});
  while (static_cast<int>(levels_.size()) <= n) {
    std::vector<ClassId> next;
    std::size_t budget = oracle_.caps().max_level_classes;
    for (ClassId q : levels_.back()) {
      for (ClassId c : children(q)) next.push_back(c);
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    if (next.size() > budget)
      throw ResourceCapExceeded("level " + std::to_string(levels_.size()) + " exceeds class cap " +
                                std::to_string(budget));
    sort_ids(next);
    levels_.push_back(std::move(next));
  }
  return levels_[n];
}

ClassId Universe::at_level(const Word& address_prefix, int n) {
  ClassId x = root();
  std::size_t used = 0;
  Sim running = Sim::identity(ifs().dimension);
  for (int k = 1; k <= n; ++k) {
    Word t = truncate_to_level(ifs(), address_prefix, k);
    for (; used < t.size(); ++used) running = compose(running, ifs().maps[t[used]]);
    children(x);
    auto it = by_key_.find(canonical_key(running));
    if (it == by_key_.end()) throw std::logic_error("truncation class missing after expansion");
    x = it->second;
  }
  return x;
}

ClassId Universe::intern(const Word& w) { return at_level(w, level_of_ratio(ifs(), word_ratio(ifs(), w))); }

}  // namespace ifsgraph
