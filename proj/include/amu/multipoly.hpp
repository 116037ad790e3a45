#ifndef AMU_MULTIPOLY_HPP
#define AMU_MULTIPOLY_HPP

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "amu/rational.hpp"

namespace amu {

// Sparse exact polynomial in variables s0..s_{n-1} over Q. Terms are kept in
// a map ordered lexicographically on the exponent vector, with no stored zero
// coefficients, so equality is structural. A default-constructed value is a
// placeholder zero that adopts the variable count of the first operand it
// meets; mixing two fixed but different variable counts is an error.
class MultiPoly {
public:
    using Expo = std::vector<int>;

    MultiPoly() : nvars_(-1) {}
    explicit MultiPoly(int nvars);

    static MultiPoly constant(int nvars, const Rational& c);
    static MultiPoly variable(int nvars, int idx);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const;
    int term_count() const { return static_cast<int>(terms_.size()); }
    const std::map<Expo, Rational>& terms() const { return terms_; }

    void add_term(const Expo& e, const Rational& c);

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const Rational& c);

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
    friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }

    bool operator==(const MultiPoly& o) const;
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    MultiPoly pow(int e) const;
    MultiPoly derivative(int var) const;
    MultiPoly substitute(int var, const Rational& value) const;
    int degree(int var) const;
    int total_degree() const;
    bool depends_on(int var) const;

    // Coefficients of this viewed as a polynomial in `var`, ascending.
    std::vector<MultiPoly> coeffs_in(int var) const;
    static MultiPoly from_coeffs_in(int nvars, int var, const std::vector<MultiPoly>& c);

    // True when every monomial has the same weighted degree; reports it.
    bool weighted_degree(const std::vector<int>& w, long long& deg) const;

    // Exact division: sets q with a == q*b and returns true, or returns false.
    static bool try_divide(const MultiPoly& a, const MultiPoly& b, MultiPoly& q);

    template <class T>
    T eval(const std::vector<T>& x) const {
        require_point(static_cast<int>(x.size()));
        T acc = T(0);
        for (const auto& [e, c] : terms_) {
            T m = from_rational<T>(c);
            for (size_t i = 0; i < e.size(); ++i)
                for (int k = 0; k < e[i]; ++k) m = m * x[i];
            acc = acc + m;
        }
        return acc;
    }

    std::string str(const std::vector<std::string>& names = {}) const;

private:
    void require_point(int npoint) const;
    static void merge_nvars(MultiPoly& a, const MultiPoly& b);

    int nvars_;
    std::map<Expo, Rational> terms_;
};

std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

}  // namespace amu

#endif
