// Exact scalar and Eigen aliases shared by every module.
#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <string>

namespace ifsgraph {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <class Scalar>
using VecX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using MatX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vec = VecX<Rational>;
using Mat = MatX<Rational>;

// "p/q", "p", "-p/q"; also accepts plain decimals such as "0.25".
// Throws std::invalid_argument on malformed input or zero denominator.
Rational parse_rational(const std::string& text);

// Canonical "p/q" (or "p" for integers).
std::string to_string(const Rational& q);

double to_double(const Rational& q);

bool is_perfect_square(const Rational& q, Rational* root = nullptr);

// Rational bounds on sqrt(q) for q >= 0 with relative error at most 2^-bits.
// Exact when q is a perfect square.
Rational sqrt_lower(const Rational& q, unsigned bits = 64);
Rational sqrt_upper(const Rational& q, unsigned bits = 64);

std::string vec_to_string(const Vec& v);

}  // namespace ifsgraph
