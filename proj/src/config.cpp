#include "ifsgraph/config.hpp"

#include <sstream>

namespace ifsgraph {

using nlohmann::json;

namespace {

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

Rational rational_field(const json& j, const std::string& field) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::exception& e) {
      throw ConfigError(field + ": " + e.what(), field);
    }
  }
  throw ConfigError(field + ": expected an exact rational string such as \"1/3\"", field);
}

Vec vector_field(const json& j, const std::string& field, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw ConfigError(field + ": expected an array of " + std::to_string(dim) + " rationals", field);
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rational_field(j[i], field + "[" + std::to_string(i) + "]");
  return v;
}

template <class T>
T get_field(const json& j, const char* key, const std::string& field, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(field + ": wrong type", field);
  }
}

}  // namespace

View parse_view(const std::string& s) {
  if (s == "E") return View::E;
  if (s == "Ed" || s == "Ediamond") return View::Diamond;
  throw ConfigError("view: expected E or Ed, got '" + s + "'", "view");
}

Mode parse_mode(const std::string& s) {
  if (s == "strict") return Mode::Strict;
  if (s == "optimistic") return Mode::Optimistic;
  throw ConfigError("mode: expected strict or optimistic, got '" + s + "'", "mode");
}

IfsSpec ifs_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("ifs: expected an object", "ifs");
  const int dim = get_field<int>(j, "dimension", "ifs.dimension", 1);
  if (dim < 1) throw ConfigError("ifs.dimension: must be >= 1", "ifs.dimension");
  if (!j.contains("maps") || !j["maps"].is_array() || j["maps"].empty())
    throw ConfigError("ifs.maps: expected a non-empty array", "ifs.maps");
  std::vector<Sim> maps;
  for (std::size_t i = 0; i < j["maps"].size(); ++i) {
    const json& m = j["maps"][i];
    const std::string f = "maps[" + std::to_string(i) + "]";
    if (!m.is_object() || !m.contains("ratio")) throw ConfigError(f + ".ratio: missing", f + ".ratio");
    Sim s = Sim::identity(dim);
    s.ratio = rational_field(m["ratio"], f + ".ratio");
    if (m.contains("translation")) s.translation = vector_field(m["translation"], f + ".translation", dim);
    if (m.contains("orthogonal")) {
      const json& o = m["orthogonal"];
      if (!o.is_array() || static_cast<int>(o.size()) != dim)
        throw ConfigError(f + ".orthogonal: expected " + std::to_string(dim) + " rows", f + ".orthogonal");
      for (int r = 0; r < dim; ++r) {
        Vec row = vector_field(o[r], f + ".orthogonal[" + std::to_string(r) + "]", dim);
        s.orthogonal.row(r) = row.transpose();
      }
    }
    maps.push_back(std::move(s));
  }
  const int base = get_field<int>(j, "label_base", "ifs.label_base", 1);
  if (base != 0 && base != 1) throw ConfigError("ifs.label_base: must be 0 or 1", "ifs.label_base");
  const std::string name = get_field<std::string>(j, "name", "ifs.name", "custom");
  try {
    IfsSpec ifs(dim, std::move(maps), base, name);
    if (j.contains("ball_center")) ifs.ball_center = vector_field(j["ball_center"], "ifs.ball_center", dim);
    ifs.validate();
    return ifs;
  } catch (const std::invalid_argument& e) {
    std::string msg = e.what();
    throw ConfigError(msg, msg.substr(0, msg.find(':')));
  }
}

json ifs_to_json(const IfsSpec& ifs) {
  json j;
  j["name"] = ifs.name;
  j["dimension"] = ifs.dimension;
  j["label_base"] = ifs.label_base;
  auto vec = [](const Vec& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_string(v(i)));
    return a;
  };
  if (ifs.ball_center) j["ball_center"] = vec(*ifs.ball_center);
  j["maps"] = json::array();
  for (const auto& m : ifs.maps) {
    json o = json::array();
    for (Eigen::Index r = 0; r < m.orthogonal.rows(); ++r) o.push_back(vec(m.orthogonal.row(r).transpose()));
    j["maps"].push_back({{"ratio", to_string(m.ratio)}, {"orthogonal", o}, {"translation", vec(m.translation)}});
  }
  return j;
}

void apply_caps(Caps& caps, const std::string& overrides) {
  std::stringstream ss(overrides);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("caps: expected key=value, got '" + item + "'", "caps");
    const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    long long v;
    try {
      std::size_t used = 0;
      v = std::stoll(val, &used);
      if (used != val.size() || v < 0) throw std::invalid_argument(val);
    } catch (const std::exception&) {
      throw ConfigError("caps." + key + ": expected a non-negative integer", "caps." + key);
    }
    if (key == "refine_depth") caps.refine_depth = static_cast<int>(v);
    else if (key == "witness_word_len") caps.witness_word_len = static_cast<int>(v);
    else if (key == "witness_period_len") caps.witness_period_len = static_cast<int>(v);
    else if (key == "node_budget") caps.node_budget = v;
    else if (key == "max_level_classes") caps.max_level_classes = v;
    else if (key == "max_level_words") caps.max_level_words = v;
    else if (key == "cache_limit") caps.cache_limit = v;
    else throw ConfigError("caps." + key + ": unknown cap", "caps." + key);
  }
}

RunConfig config_for_preset(const std::string& name) {
  RunConfig cfg;
  try {
    cfg.base = make_preset(name);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what(), "preset");
  }
  cfg.preset = name;
  return cfg;
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte);
    throw ConfigError("syntax error at line " + std::to_string(line) + ", column " + std::to_string(col), "", line,
                      col);
  }
  if (!j.is_object()) throw ConfigError("config: expected a JSON object", "");
  RunConfig cfg;
  if (j.contains("preset") == j.contains("ifs")) throw ConfigError("config: give exactly one of preset, ifs", "preset");
  if (j.contains("preset")) {
    cfg = config_for_preset(get_field<std::string>(j, "preset", "preset", ""));
  } else {
    cfg.base.ifs = ifs_from_json(j["ifs"]);
  }
  cfg.depth = get_field<int>(j, "depth", "depth", cfg.depth);
  if (cfg.depth < 0) throw ConfigError("depth: must be >= 0", "depth");
  if (j.contains("view")) cfg.view = parse_view(get_field<std::string>(j, "view", "view", ""));
  if (j.contains("mode")) cfg.mode = parse_mode(get_field<std::string>(j, "mode", "mode", ""));
  cfg.out = get_field<std::string>(j, "out", "out", cfg.out);
  if (j.contains("caps")) {
    const json& c = j["caps"];
    if (!c.is_object()) throw ConfigError("caps: expected an object", "caps");
    std::string flat;
    for (auto it = c.begin(); it != c.end(); ++it) {
      if (!it.value().is_number_integer()) throw ConfigError("caps." + it.key() + ": expected an integer", "caps." + it.key());
      flat += it.key() + "=" + std::to_string(it.value().get<long long>()) + ",";
    }
    apply_caps(cfg.base.caps, flat);
  }
  if (j.contains("boundary")) {
    const json& b = j["boundary"];
    if (!b.is_object()) throw ConfigError("boundary: expected an object", "boundary");
    if (b.contains("a")) {
      double a = get_field<double>(b, "a", "boundary.a", 0.0);
      if (!(a > 0)) throw ConfigError("boundary.a: must be positive", "boundary.a");
      cfg.a = a;
    }
    cfg.boundary_depth = get_field<int>(b, "depth", "boundary.depth", cfg.boundary_depth);
    cfg.stabilize = get_field<int>(b, "stabilize", "boundary.stabilize", cfg.stabilize);
    if (cfg.boundary_depth < 0 || cfg.stabilize < 1)
      throw ConfigError("boundary.depth/stabilize: out of range", "boundary.depth");
    cfg.random_pairs = get_field<std::size_t>(b, "random_pairs", "boundary.random_pairs", 0);
    cfg.seed = get_field<std::uint64_t>(b, "seed", "boundary.seed", cfg.seed);
    if (b.contains("pairs")) {
      const json& ps = b["pairs"];
      if (!ps.is_array()) throw ConfigError("boundary.pairs: expected an array", "boundary.pairs");
      for (std::size_t i = 0; i < ps.size(); ++i) {
        const std::string f = "boundary.pairs[" + std::to_string(i) + "]";
        if (!ps[i].is_array() || ps[i].size() != 2 || !ps[i][0].is_string() || !ps[i][1].is_string())
          throw ConfigError(f + ": expected two address strings", f);
        try {
          cfg.pairs.emplace_back(parse_address(cfg.ifs(), ps[i][0]), parse_address(cfg.ifs(), ps[i][1]));
        } catch (const std::invalid_argument& e) {
          throw ConfigError(f + ": " + e.what(), f);
        }
      }
    }
  }
  if (j.contains("gaps")) {
    const json& g = j["gaps"];
    cfg.gap_level = get_field<int>(g, "max_level", "gaps.max_level", cfg.gap_level);
    cfg.net_period_len = get_field<int>(g, "net_period_len", "gaps.net_period_len", cfg.net_period_len);
  }
  return cfg;
}

}  // namespace ifsgraph
