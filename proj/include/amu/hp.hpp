#ifndef AMU_HP_HPP
#define AMU_HP_HPP

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "amu/rational.hpp"

namespace amu {

// Quad precision (113-bit mantissa) real and complex scalars, used where
// singular points have algebraic coordinates (roots of unity, irrational
// discriminant roots) and vanishing orders must be decided numerically.
using HReal = boost::multiprecision::cpp_bin_float_quad;
using HComplex = boost::multiprecision::cpp_complex_quad;

inline HReal hp_from_rational(const Rational& q) {
    return HReal(numerator(q)) / HReal(denominator(q));
}

template <>
inline HComplex from_rational<HComplex>(const Rational& q) {
    return HComplex(hp_from_rational(q));
}

inline HReal hp_abs(const HComplex& z) { return abs(z); }

inline HComplex hp_root_of_unity(int j, int n) {
    HReal pi = boost::math::constants::pi<HReal>();
    HReal arg = 2 * pi * j / n;
    return HComplex(cos(arg), sin(arg));
}

inline double hp_to_double(const HReal& x) { return x.convert_to<double>(); }

}  // namespace amu

#endif
