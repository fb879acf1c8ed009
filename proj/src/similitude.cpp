#include "ifsgraph/similitude.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ifsgraph {

namespace {

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

Integer pow10(std::size_t n) {
  Integer p = 1;
  for (std::size_t i = 0; i < n; ++i) p *= 10;
  return p;
}

// GMP reads a leading 0 as an octal prefix.
Integer decimal(const std::string& digits) {
  const auto first = digits.find_first_not_of('0');
  return first == std::string::npos ? Integer(0) : Integer(digits.substr(first));
}

}  // namespace

Rational parse_rational(const std::string& raw) {
  std::string text = raw;
  text.erase(std::remove_if(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); }),
             text.end());
  bool neg = false;
  std::string body = text;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    neg = body[0] == '-';
    body = body.substr(1);
  }
  Rational value;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    std::string p = body.substr(0, slash), q = body.substr(slash + 1);
    if (!all_digits(p) || !all_digits(q)) throw std::invalid_argument("malformed rational '" + raw + "'");
    Integer den = decimal(q);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + raw + "'");
    value = Rational(decimal(p), den);
  } else if (auto dot = body.find('.'); dot != std::string::npos) {
    std::string ip = body.substr(0, dot), fp = body.substr(dot + 1);
    if (ip.empty()) ip = "0";
    if (!all_digits(ip) || !(fp.empty() || all_digits(fp)))
      throw std::invalid_argument("malformed decimal '" + raw + "'");
    value = Rational(decimal(ip + fp), pow10(fp.size()));
  } else {
    if (!all_digits(body)) throw std::invalid_argument("malformed rational '" + raw + "'");
    value = Rational(decimal(body));
  }
  return neg ? Rational(-value) : value;
}

std::string to_string(const Rational& q) { return q.str(); }

double to_double(const Rational& q) { return q.convert_to<double>(); }

bool is_perfect_square(const Rational& q, Rational* root) {
  if (q < 0) return false;
  Integer p = numerator(q), d = denominator(q);
  Integer sp = boost::multiprecision::sqrt(p), sd = boost::multiprecision::sqrt(d);
  if (sp * sp != p || sd * sd != d) return false;
  if (root) *root = Rational(sp, sd);
  return true;
}

// sqrt(p/d) = sqrt(p*d)/d; scaling by 4^bits gives an integer root whose
// truncation error is at most 2^-bits relative to the true value.
Rational sqrt_lower(const Rational& q, unsigned bits) {
  if (q <= 0) return Rational(0);
  Rational exact;
  if (is_perfect_square(q, &exact)) return exact;
  Integer p = numerator(q), d = denominator(q);
  Integer scaled = p * d;
  scaled <<= 2 * bits;
  Integer s = boost::multiprecision::sqrt(scaled);
  Integer den = d;
  den <<= bits;
  return Rational(s, den);
}

Rational sqrt_upper(const Rational& q, unsigned bits) {
  if (q <= 0) return Rational(0);
  Rational exact;
  if (is_perfect_square(q, &exact)) return exact;
  Integer p = numerator(q), d = denominator(q);
  Integer scaled = p * d;
  scaled <<= 2 * bits;
  Integer s = boost::multiprecision::sqrt(scaled) + 1;
  Integer den = d;
  den <<= bits;
  return Rational(s, den);
}

std::string vec_to_string(const Vec& v) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += to_string(v(i));
  }
  return out + ")";
}

std::string canonical_key(const Sim& s) {
  std::string key = s.ratio.str();
  key += '|';
  for (Eigen::Index i = 0; i < s.orthogonal.rows(); ++i)
    for (Eigen::Index j = 0; j < s.orthogonal.cols(); ++j) {
      if (i || j) key += ',';
      key += s.orthogonal(i, j).str();
    }
  key += '|';
  for (Eigen::Index i = 0; i < s.translation.size(); ++i) {
    if (i) key += ',';
    key += s.translation(i).str();
  }
  return key;
}

bool balls_separated(const Vec& c1, const Rational& r1, const Vec& c2, const Rational& r2) {
  Rational sum = r1 + r2;
  return Vec(c1 - c2).squaredNorm() > sum * sum;
}

IfsSpec::IfsSpec(int dim, std::vector<Sim> ms, int base, std::string nm)
    : dimension(dim), maps(std::move(ms)), label_base(base), name(std::move(nm)) {
  validate();
  min_ratio = maps.front().ratio;
  for (const auto& m : maps) min_ratio = std::min(min_ratio, m.ratio);
}

void IfsSpec::validate() const {
  if (dimension < 1) throw std::invalid_argument("dimension: must be positive");
  if (maps.size() < 2) throw std::invalid_argument("maps: at least two maps are required");
  if (maps.size() > 255) throw std::invalid_argument("maps: at most 255 maps are supported");
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const auto& m = maps[i];
    std::string where = "maps[" + std::to_string(i) + "]";
    if (!(m.ratio > 0 && m.ratio < 1)) throw std::invalid_argument(where + ".ratio: must lie in (0,1)");
    if (m.orthogonal.rows() != dimension || m.orthogonal.cols() != dimension)
      throw std::invalid_argument(where + ".orthogonal: expected " + std::to_string(dimension) + "x" +
                                  std::to_string(dimension));
    if (!is_orthogonal(m.orthogonal)) throw std::invalid_argument(where + ".orthogonal: not orthogonal");
    if (m.translation.size() != dimension)
      throw std::invalid_argument(where + ".translation: expected " + std::to_string(dimension) + " entries");
  }
  if (ball_center && ball_center->size() != dimension)
    throw std::invalid_argument("ball_center: wrong dimension");
}

Ball invariant_ball(const IfsSpec& ifs, const std::optional<Vec>& center_hint, unsigned slack_bits) {
  Vec c;
  if (center_hint) {
    c = *center_hint;
  } else if (ifs.ball_center) {
    c = *ifs.ball_center;
  } else {
    c = Vec::Zero(ifs.dimension);
    for (const auto& m : ifs.maps) c += fixed_point(m);
    c /= Rational(ifs.size());
  }
  Rational radius = 0;
  for (const auto& m : ifs.maps) {
    Rational sq = Vec(m(c) - c).squaredNorm();
    Rational bound = sqrt_upper(sq, slack_bits) / (Rational(1) - m.ratio);
    radius = std::max(radius, bound);
  }
  return {c, radius};
}

bool ball_is_invariant(const IfsSpec& ifs, const Ball& b) {
  for (const auto& m : ifs.maps) {
    Rational room = (Rational(1) - m.ratio) * b.radius;
    if (Vec(m(b.center) - b.center).squaredNorm() > room * room) return false;
  }
  return true;
}

}  // namespace ifsgraph
