#pragma once

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace engel {

// Exact scalar type for all symbolic computation. cpp_rational keeps values in
// lowest terms automatically, so equality is structural.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using RatPoint = std::array<Rational, 4>;
using FloatPoint = std::array<double, 4>;

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

inline FloatPoint to_float_point(const RatPoint& p) {
    return {to_double(p[0]), to_double(p[1]), to_double(p[2]), to_double(p[3])};
}

// Exact: every double is a dyadic rational.
inline RatPoint to_rat_point(const FloatPoint& p) {
    return {Rational(p[0]), Rational(p[1]), Rational(p[2]), Rational(p[3])};
}

std::string rational_to_string(const Rational& r);
Rational rational_from_string(const std::string& text);

} // namespace engel
