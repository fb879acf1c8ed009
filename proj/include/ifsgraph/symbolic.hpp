// Words, the level sets J_n and the quotient X = J/~.
#pragma once

#include "ifsgraph/common.hpp"
#include "ifsgraph/similitude.hpp"

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace ifsgraph {

using Symbol = std::uint8_t;
using Word = std::vector<Symbol>;

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Symbol s : w) h = (h ^ s) * 1099511628211ull;
    return h ^ w.size();
  }
};

Word concat(const Word& a, const Word& b);
Rational word_ratio(const IfsSpec& ifs, const Word& w);
Sim word_map(const IfsSpec& ifs, const Word& w);

// r^n for the minimal ratio r.
Rational level_scale(const IfsSpec& ifs, int n);
// The unique n with r^(n+1) < q <= r^n.
int level_of_ratio(const IfsSpec& ifs, const Rational& q);

bool is_level_word(const IfsSpec& ifs, const Word& w, int n);

struct PrefixTooShort : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The unique prefix of `prefix` lying in J_n.
Word truncate_to_level(const IfsSpec& ifs, const Word& prefix, int n);

// Lexicographically sorted J_n.
std::vector<Word> enumerate_level(const IfsSpec& ifs, int n, const Caps& caps = {});

struct VertexClass {
  int level = 0;
  std::vector<Word> members;  // sorted; members.front() is the ordering key
  std::string key;
  Sim map;
};

bool class_order(const VertexClass& a, const VertexClass& b);

std::vector<VertexClass> quotient_level(const IfsSpec& ifs, int n, const Caps& caps = {});

struct LevelTable {
  std::vector<std::vector<VertexClass>> levels;
  std::vector<std::unordered_map<std::string, int>> index;  // per level: key -> position
  std::vector<std::vector<std::vector<int>>> parent_links;  // per level, per class: positions one level up

  const VertexClass& at(int level, int i) const { return levels[level][i]; }
  int find(int level, const std::string& key) const;
};

LevelTable build_level_table(const IfsSpec& ifs, int depth, const Caps& caps = {});

// Positions at level-1 of the classes owning a prefix of some member of x.
std::vector<int> parents(const LevelTable& table, int level, int i);

// Display with the IFS's label base; digits are joined directly when every
// label is a single character, otherwise comma-separated.
std::string word_label(const IfsSpec& ifs, const Word& w);
std::string class_label(const IfsSpec& ifs, const VertexClass& c);
Word parse_word(const IfsSpec& ifs, const std::string& text);

}  // namespace ifsgraph
