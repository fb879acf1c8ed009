// Contracting similitudes S(x) = r*O*x + b over an exact scalar.
#pragma once

#include "ifsgraph/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ifsgraph {

template <class Scalar>
struct Similitude {
  Scalar ratio;
  MatX<Scalar> orthogonal;
  VecX<Scalar> translation;

  Similitude() = default;
  Similitude(Scalar r, MatX<Scalar> o, VecX<Scalar> b)
      : ratio(std::move(r)), orthogonal(std::move(o)), translation(std::move(b)) {}

  static Similitude identity(int dim) {
    return {Scalar(1), MatX<Scalar>::Identity(dim, dim), VecX<Scalar>::Zero(dim)};
  }

  int dim() const { return static_cast<int>(translation.size()); }

  VecX<Scalar> operator()(const VecX<Scalar>& x) const {
    return VecX<Scalar>(ratio * (orthogonal * x) + translation);
  }

  bool operator==(const Similitude& o) const {
    return ratio == o.ratio && orthogonal == o.orthogonal && translation == o.translation;
  }
};

using Sim = Similitude<Rational>;

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// first ∘ second
template <class Scalar>
Similitude<Scalar> compose(const Similitude<Scalar>& first, const Similitude<Scalar>& second) {
  if (first.dim() != second.dim()) throw DimensionMismatch("compose: dimension mismatch");
  return {first.ratio * second.ratio, MatX<Scalar>(first.orthogonal * second.orthogonal),
          first(second.translation)};
}

template <class Scalar>
Similitude<Scalar> inverse(const Similitude<Scalar>& s) {
  MatX<Scalar> ot = s.orthogonal.transpose();
  Scalar inv = Scalar(1) / s.ratio;
  return {inv, ot, VecX<Scalar>(-(inv * (ot * s.translation)))};
}

// Returns x with S(x) = z.
template <class Scalar>
VecX<Scalar> invert_apply(const Similitude<Scalar>& s, const VecX<Scalar>& z) {
  return VecX<Scalar>(s.orthogonal.transpose() * VecX<Scalar>(z - s.translation) / s.ratio);
}

// Solves (I - rO) x = b exactly; I - rO is invertible for r < 1.
template <class Scalar>
VecX<Scalar> fixed_point(const Similitude<Scalar>& s) {
  const int d = s.dim();
  MatX<Scalar> a = MatX<Scalar>::Identity(d, d) - s.ratio * s.orthogonal;
  if (d == 1) return VecX<Scalar>::Constant(1, s.translation(0) / a(0, 0));
  return a.fullPivLu().solve(s.translation);
}

template <class Scalar>
bool is_orthogonal(const MatX<Scalar>& o) {
  if (o.rows() != o.cols()) return false;
  return MatX<Scalar>(o.transpose() * o) == MatX<Scalar>::Identity(o.rows(), o.cols());
}

// Equal keys iff equal maps. Gmp rationals are always in lowest terms, so the
// textual form is already canonical.
std::string canonical_key(const Sim& s);

struct Ball {
  Vec center;
  Rational radius;
};

// Closed balls overlap test and the certified lower bound on their gap.
bool balls_separated(const Vec& c1, const Rational& r1, const Vec& c2, const Rational& r2);

struct IfsSpec {
  int dimension = 1;
  std::vector<Sim> maps;
  Rational min_ratio;
  int label_base = 1;                 // 0 for presets written with 0-based symbols
  std::optional<Vec> ball_center;     // overrides the default invariant-ball center
  std::string name;

  IfsSpec() = default;
  IfsSpec(int dim, std::vector<Sim> ms, int base = 1, std::string nm = {});

  int size() const { return static_cast<int>(maps.size()); }
  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

// Smallest certified ball with S_i(B) ⊆ B for all i; see module notes on slack.
Ball invariant_ball(const IfsSpec& ifs, const std::optional<Vec>& center_hint = std::nullopt,
                    unsigned slack_bits = 32);

// |S_i(c) - c| + r_i R <= R for all i, decided exactly on squares.
bool ball_is_invariant(const IfsSpec& ifs, const Ball& b);

}  // namespace ifsgraph
