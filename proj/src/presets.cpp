#include "ifsgraph/presets.hpp"

#include <regex>
#include <stdexcept>

namespace ifsgraph {

namespace {

Sim homothety(const Rational& r, std::vector<Rational> b) {
  const int d = static_cast<int>(b.size());
  Sim s = Sim::identity(d);
  s.ratio = r;
  for (int i = 0; i < d; ++i) s.translation(i) = b[i];
  return s;
}

Vec point(std::vector<Rational> v) {
  Vec p(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) p(static_cast<Eigen::Index>(i)) = v[i];
  return p;
}

Rational pow3inv(int n) {
  Rational q(1);
  for (int i = 0; i < n; ++i) q /= 3;
  return q;
}

}  // namespace

int lacunary_level(int k) { return 1 + k * (k + 1) / 2; }

Rational lacunary_offset(const Rational& base, int kmax) {
  Rational x = base;
  for (int k = 1; k <= kmax; ++k) x -= pow3inv(lacunary_level(k));
  return x;
}

std::vector<std::string> preset_names() {
  return {"interval3", "gasket3", "interval2-osc", "mixed-ratio", "example2-1d", "example2-2d"};
}

Preset make_preset(const std::string& spec) {
  static const std::regex form(R"(([a-z0-9-]+)(?:\((\d+)\))?)");
  std::smatch m;
  if (!std::regex_match(spec, m, form)) throw std::invalid_argument("preset: unknown name '" + spec + "'");
  const std::string name = m[1];
  const bool has_k = m[2].matched;
  const Rational half(1, 2), third(1, 3), quarter(1, 4);
  Preset p;
  if (has_k && name != "example2-1d" && name != "example2-2d")
    throw std::invalid_argument("preset: '" + name + "' takes no parameter");
  if (name == "interval3") {
    p.ifs = IfsSpec(1, {homothety(half, {0}), homothety(half, {half}), homothety(half, {1})}, 0, name);
    p.ifs.ball_center = point({1});
  } else if (name == "gasket3") {
    p.ifs = IfsSpec(2,
                    {homothety(half, {0, 0}), homothety(half, {half, 0}), homothety(half, {quarter, half})},
                    1, name);
    p.ifs.ball_center = point({half, Rational(3, 8)});
  } else if (name == "interval2-osc") {
    p.ifs = IfsSpec(1, {homothety(third, {0}), homothety(third, {Rational(2, 3)})}, 0, name);
    p.ifs.ball_center = point({half});
  } else if (name == "mixed-ratio") {
    p.ifs = IfsSpec(1, {homothety(half, {0}), homothety(quarter, {half}), homothety(quarter, {Rational(3, 4)})},
                    1, name);
    p.ifs.ball_center = point({half});
  } else if (name == "example2-1d" || name == "example2-2d") {
    p.kmax = has_k ? std::stoi(m[2]) : 4;
    if (p.kmax < 1 || p.kmax > 8) throw std::invalid_argument("preset: kmax must lie in [1, 8]");
    const std::string full = name + "(" + std::to_string(p.kmax) + ")";
    if (name == "example2-1d") {
      const Rational x0 = lacunary_offset(Rational(2, 3), p.kmax);
      p.ifs = IfsSpec(1,
                      {homothety(third, {0}), homothety(third, {third}), homothety(third, {Rational(2, 3)}),
                       homothety(third, {x0})},
                      0, full);
      p.ifs.ball_center = point({half});
    } else {
      const Rational x0 = lacunary_offset(half, p.kmax);
      p.ifs = IfsSpec(2,
                      {homothety(third, {0, 0}), homothety(third, {third, 0}),
                       homothety(third, {Rational(2, 3), 0}), homothety(third, {x0, third}),
                       homothety(third, {third, Rational(2, 3)})},
                      0, full);
      p.ifs.ball_center = point({half, Rational(3, 8)});
    }
    // Contacts of the lacunary map sit up to n_kmax levels deep.
    p.caps.refine_depth = std::max(p.caps.refine_depth, 2 * lacunary_level(p.kmax) + 16);
  } else {
    throw std::invalid_argument("preset: unknown name '" + spec + "'");
  }
  p.ifs.validate();
  return p;
}

std::vector<DesignatedPair> designated_family(const Preset& p) {
  std::vector<DesignatedPair> out;
  if (p.kmax == 0) return out;
  const bool two_d = p.ifs.dimension == 2;
  auto lacunary_digit = [](int i) {
    for (int j = 1; lacunary_level(j) <= i; ++j)
      if (lacunary_level(j) == i) return Symbol(1);
    return Symbol(0);
  };
  for (int k = 1; k <= p.kmax; ++k) {
    DesignatedPair d;
    d.k = k;
    d.level = lacunary_level(k);
    const Symbol head = two_d ? 1 : 2, fill = two_d ? 4 : 0;
    d.u.assign(d.level, fill);
    d.u[0] = head;
    d.w.push_back(3);
    for (int i = 2; i < d.level; ++i) d.w.push_back(lacunary_digit(i));
    d.w.push_back(0);
    d.xi_pre = d.w;
    d.xi_period = {2};
    d.eta_pre = {head};
    d.eta_period = {fill};
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace ifsgraph
