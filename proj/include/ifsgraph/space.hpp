// Lazily explored quotient space X with its edge relations.
//
// Classes are only ever created by expanding a parent, so each class knows the
// parent it was discovered from. Completeness of a class's member list, its
// parents and its neighbors are derived on demand from the fact that every
// relative of x at levels |x|-1, |x|, |x|+1 lives below {p} ∪ N_h(p) for a
// parent p of x.
#pragma once

#include "ifsgraph/intersect.hpp"

#include <deque>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ifsgraph {

using ClassId = int;

enum class Mode { Strict, Optimistic };

struct UnknownAbort : std::runtime_error {
  std::vector<std::pair<std::string, std::string>> pairs;
  UnknownAbort(const std::string& what, std::vector<std::pair<std::string, std::string>> p)
      : std::runtime_error(what), pairs(std::move(p)) {}
};

class Universe {
 public:
  explicit Universe(IntersectOracle& oracle, Mode mode = Mode::Strict);

  const IfsSpec& ifs() const { return oracle_.ifs(); }
  IntersectOracle& oracle() { return oracle_; }
  Mode mode() const { return mode_; }

  ClassId root() const { return 0; }
  std::size_t size() const { return classes_.size(); }

  int level(ClassId x) const { return classes_[x].level; }
  const Sim& map(ClassId x) const { return classes_[x].map; }
  const std::string& key(ClassId x) const { return classes_[x].key; }
  const std::vector<Word>& members(ClassId x);
  const Word& min_member(ClassId x) { return members(x).front(); }
  std::string label(ClassId x);

  // Class of the J_n truncation of w for n = level of w (w must lie in some J_n).
  ClassId intern(const Word& w);
  ClassId at_level(const Word& address_prefix, int n);

  const std::vector<ClassId>& children(ClassId x);
  const std::vector<ClassId>& parents(ClassId x);
  const std::vector<ClassId>& horizontal(ClassId x);
  const std::vector<ClassId>& up_plus(ClassId x);
  const std::vector<ClassId>& down_plus(ClassId x);

  // Same-level-or-adjacent cylinder intersection through the oracle, honoring the mode.
  bool touches(ClassId a, ClassId b);

  std::vector<ClassId> level_classes(int n);
  bool less(ClassId a, ClassId b);
  void sort_ids(std::vector<ClassId>& ids);

  const std::vector<std::pair<ClassId, ClassId>>& uncertain() const { return uncertain_; }

 private:
  struct Cls {
    int level = 0;
    std::string key;
    Sim map;
    ClassId origin = -1;
    std::vector<Word> members;
    std::vector<ClassId> parent_set;
    bool complete = false;
    std::optional<std::vector<ClassId>> children, parents, horizontal, up_plus, down_plus;
  };

  void ensure_complete(ClassId x);
  void expand(ClassId q);
  struct Suffix {
    Word word;
    Sim map;
  };
  // Suffixes s with r_q r_s <= r^(n+1) < r_q r_s' for a class of ratio r_q at level n.
  const std::vector<Suffix>& suffixes(const Rational& rq, int level);

  IntersectOracle& oracle_;
  Mode mode_;
  std::deque<Cls> classes_;  // stable references
  std::unordered_map<std::string, ClassId> by_key_;
  std::unordered_map<std::string, std::vector<Suffix>> suffix_cache_;
  std::unordered_map<std::uint64_t, bool> touch_cache_;
  std::vector<std::pair<ClassId, ClassId>> uncertain_;
  std::vector<std::vector<ClassId>> levels_;
};

}  // namespace ifsgraph
