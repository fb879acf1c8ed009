#include "ifsgraph/symbolic.hpp"

#include <algorithm>
#include <sstream>

namespace ifsgraph {

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Rational word_ratio(const IfsSpec& ifs, const Word& w) {
  Rational r = 1;
  for (Symbol s : w) r *= ifs.maps.at(s).ratio;
  return r;
}

Sim word_map(const IfsSpec& ifs, const Word& w) {
  Sim m = Sim::identity(ifs.dimension);
  for (Symbol s : w) m = compose(m, ifs.maps.at(s));
  return m;
}

Rational level_scale(const IfsSpec& ifs, int n) {
  Rational s = 1;
  for (int i = 0; i < n; ++i) s *= ifs.min_ratio;
  return s;
}

int level_of_ratio(const IfsSpec& ifs, const Rational& q) {
  int n = 0;
  Rational s = 1;
  while (q <= s * ifs.min_ratio) {
    s *= ifs.min_ratio;
    ++n;
  }
  return n;
}

bool is_level_word(const IfsSpec& ifs, const Word& w, int n) {
  if (n == 0) return w.empty();
  if (w.empty()) return false;
  Rational scale = level_scale(ifs, n);
  Rational rw = word_ratio(ifs, w);
  Rational rprefix = rw / ifs.maps[w.back()].ratio;
  return rw <= scale && scale < rprefix;
}

Word truncate_to_level(const IfsSpec& ifs, const Word& prefix, int n) {
  if (n == 0) return {};
  Rational scale = level_scale(ifs, n);
  Rational r = 1;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    r *= ifs.maps.at(prefix[i]).ratio;
    if (r <= scale) return Word(prefix.begin(), prefix.begin() + static_cast<long>(i) + 1);
  }
  throw PrefixTooShort("address prefix too short for level " + std::to_string(n));
}

namespace {

// Pruned DFS over words, extending while r_w > r^n. Visits J_n in
// lexicographic order together with each word's composed map.
template <class Visit>
void walk(const IfsSpec& ifs, const Rational& scale, bool with_maps, Word& word, const Rational& ratio,
          const Sim& map, Visit& visit) {
  for (int s = 0; s < ifs.size(); ++s) {
    word.push_back(static_cast<Symbol>(s));
    Rational r = ratio * ifs.maps[s].ratio;
    Sim m = with_maps ? compose(map, ifs.maps[s]) : Sim{};
    if (r <= scale)
      visit(word, m);
    else
      walk(ifs, scale, with_maps, word, r, m, visit);
    word.pop_back();
  }
}

template <class Visit>
void walk_level(const IfsSpec& ifs, int n, bool with_maps, Visit&& visit) {
  Sim id = Sim::identity(ifs.dimension);
  if (n == 0) {
    visit(Word{}, id);
    return;
  }
  Word w;
  walk(ifs, level_scale(ifs, n), with_maps, w, Rational(1), id, visit);
}

}  // namespace

std::vector<Word> enumerate_level(const IfsSpec& ifs, int n, const Caps& caps) {
  std::vector<Word> out;
  walk_level(ifs, n, false, [&](const Word& w, const Sim&) {
    if (out.size() >= caps.max_level_words)
      throw ResourceCapExceeded("level " + std::to_string(n) + " exceeds word cap " +
                                std::to_string(caps.max_level_words));
    out.push_back(w);
  });
  return out;
}

bool class_order(const VertexClass& a, const VertexClass& b) {
  if (a.level != b.level) return a.level < b.level;
  return a.members.front() < b.members.front();
}

std::vector<VertexClass> quotient_level(const IfsSpec& ifs, int n, const Caps& caps) {
  std::vector<VertexClass> classes;
  std::unordered_map<std::string, std::size_t> index;
  std::size_t words = 0;
  walk_level(ifs, n, true, [&](const Word& w, const Sim& m) {
    if (++words > caps.max_level_words)
      throw ResourceCapExceeded("level " + std::to_string(n) + " exceeds word cap " +
                                std::to_string(caps.max_level_words));
    std::string key = canonical_key(m);
    auto it = index.find(key);
    if (it == index.end()) {
      if (classes.size() >= caps.max_level_classes)
        throw ResourceCapExceeded("level " + std::to_string(n) + " exceeds class cap " +
                                  std::to_string(caps.max_level_classes));
      index.emplace(key, classes.size());
      classes.push_back({n, {w}, key, m});
    } else {
      classes[it->second].members.push_back(w);
    }
  });
  std::sort(classes.begin(), classes.end(), class_order);
  return classes;
}

int LevelTable::find(int level, const std::string& key) const {
  auto it = index.at(level).find(key);
  return it == index[level].end() ? -1 : it->second;
}

LevelTable build_level_table(const IfsSpec& ifs, int depth, const Caps& caps) {
  LevelTable t;
  for (int n = 0; n <= depth; ++n) {
    t.levels.push_back(quotient_level(ifs, n, caps));
    std::unordered_map<std::string, int> idx;
    for (std::size_t i = 0; i < t.levels[n].size(); ++i) idx.emplace(t.levels[n][i].key, static_cast<int>(i));
    t.index.push_back(std::move(idx));
    std::vector<std::vector<int>> links(t.levels[n].size());
    if (n > 0) {
      for (std::size_t i = 0; i < t.levels[n].size(); ++i) {
        for (const Word& w : t.levels[n][i].members) {
          Word p = truncate_to_level(ifs, w, n - 1);
          int j = t.find(n - 1, canonical_key(word_map(ifs, p)));
          if (std::find(links[i].begin(), links[i].end(), j) == links[i].end()) links[i].push_back(j);
        }
        std::sort(links[i].begin(), links[i].end());
      }
    }
    t.parent_links.push_back(std::move(links));
  }
  return t;
}

std::vector<int> parents(const LevelTable& table, int level, int i) {
  if (level == 0) return {};
  return table.parent_links.at(level).at(i);
}

std::string word_label(const IfsSpec& ifs, const Word& w) {
  if (w.empty()) return "o";
  bool compact = ifs.size() - 1 + ifs.label_base <= 9;
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!compact && i) out += ',';
    out += std::to_string(int(w[i]) + ifs.label_base);
  }
  return out;
}

std::string class_label(const IfsSpec& ifs, const VertexClass& c) {
  std::string out = "[";
  for (std::size_t i = 0; i < c.members.size(); ++i) {
    if (i) out += ' ';
    out += word_label(ifs, c.members[i]);
  }
  return out + "]";
}

Word parse_word(const IfsSpec& ifs, const std::string& text) {
  Word w;
  if (text.empty() || text == "o") return w;
  auto push = [&](int label) {
    int s = label - ifs.label_base;
    if (s < 0 || s >= ifs.size()) throw std::invalid_argument("symbol out of range in word '" + text + "'");
    w.push_back(static_cast<Symbol>(s));
  };
  if (text.find(',') != std::string::npos) {
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
      try {
        push(std::stoi(part));
      } catch (const std::logic_error&) {
        throw std::invalid_argument("malformed word '" + text + "'");
      }
    }
  } else {
    for (char c : text) {
      if (c < '0' || c > '9') throw std::invalid_argument("malformed word '" + text + "'");
      push(c - '0');
    }
  }
  return w;
}

}  // namespace ifsgraph
