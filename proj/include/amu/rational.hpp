#ifndef AMU_RATIONAL_HPP
#define AMU_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>

namespace amu {

// Exact coefficient field. cpp_rational keeps gcd-reduced form with a
// positive denominator, which is the canonical form all printing and
// structural equality rely on.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rat(long long n, long long d = 1) {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    return Rational(Int(n), Int(d));
}

// Integer part in the sense of floor (partie entiere).
inline Int floor_int(const Rational& x) {
    Int q = numerator(x) / denominator(x);
    if (numerator(x) < 0 && q * denominator(x) != numerator(x)) --q;
    return q;
}

inline bool is_integer(const Rational& x) { return denominator(x) == 1; }

inline Rational rat_pow(const Rational& x, int e) {
    if (e < 0) {
        if (x == 0) throw std::domain_error("rat_pow: negative power of zero");
        return 1 / rat_pow(x, -e);
    }
    Rational r = 1, b = x;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline Rational rat_abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

inline std::string to_string(const Rational& x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

// Parses "a", "-a", "a/b".
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse rational: " + s);
    }
}

inline long long binomial_ll(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

template <class T>
T from_rational(const Rational& q);

template <>
inline Rational from_rational<Rational>(const Rational& q) { return q; }

template <>
inline double from_rational<double>(const Rational& q) { return to_double(q); }

template <>
inline std::complex<double> from_rational<std::complex<double>>(const Rational& q) {
    return {to_double(q), 0.0};
}

}  // namespace amu

#endif
