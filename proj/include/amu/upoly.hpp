#ifndef AMU_UPOLY_HPP
#define AMU_UPOLY_HPP

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <complex>
#include <stdexcept>
#include <vector>

#include "amu/rational.hpp"

namespace amu {

// Dense univariate polynomial over a field scalar, coefficients ascending.
template <class T>
struct UPoly {
    std::vector<T> c;

    UPoly() = default;
    explicit UPoly(std::vector<T> coeffs) : c(std::move(coeffs)) { trim(); }
    static UPoly constant(const T& v) { return UPoly(std::vector<T>{v}); }
    static UPoly x() { return UPoly(std::vector<T>{T(0), T(1)}); }

    void trim() {
        while (!c.empty() && c.back() == T(0)) c.pop_back();
    }
    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const T& lc() const {
        if (c.empty()) throw std::domain_error("UPoly: leading coefficient of zero");
        return c.back();
    }
    T coeff(int k) const { return (k >= 0 && k < (int)c.size()) ? c[k] : T(0); }

    template <class U>
    U eval(const U& x) const {
        U acc(0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + U(*it);
        return acc;
    }

    UPoly derivative() const {
        UPoly r;
        for (size_t k = 1; k < c.size(); ++k) r.c.push_back(c[k] * T((long long)k));
        r.trim();
        return r;
    }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        UPoly r;
        r.c.resize(std::max(a.c.size(), b.c.size()), T(0));
        for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.coeff((int)i) + b.coeff((int)i);
        r.trim();
        return r;
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) {
        UPoly r;
        r.c.resize(std::max(a.c.size(), b.c.size()), T(0));
        for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.coeff((int)i) - b.coeff((int)i);
        r.trim();
        return r;
    }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return UPoly();
        UPoly r;
        r.c.assign(a.c.size() + b.c.size() - 1, T(0));
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
        r.trim();
        return r;
    }
    friend UPoly operator*(const UPoly& a, const T& s) {
        UPoly r = a;
        for (auto& v : r.c) v *= s;
        r.trim();
        return r;
    }
    bool operator==(const UPoly& o) const { return c == o.c; }

    // Field division with remainder.
    static void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
        if (b.is_zero()) throw std::domain_error("UPoly: division by zero");
        q = UPoly();
        r = a;
        if (a.deg() < b.deg()) return;
        q.c.assign(a.deg() - b.deg() + 1, T(0));
        while (!r.is_zero() && r.deg() >= b.deg()) {
            int k = r.deg() - b.deg();
            T f = r.lc() / b.lc();
            q.c[k] = f;
            for (int i = 0; i <= b.deg(); ++i) r.c[i + k] -= f * b.c[i];
            r.trim();
        }
        q.trim();
    }

    UPoly monic() const {
        UPoly r = *this;
        if (r.is_zero()) return r;
        T inv = T(1) / r.lc();
        for (auto& v : r.c) v *= inv;
        return r;
    }

    // p(x + a)
    UPoly shifted(const T& a) const {
        UPoly r = *this;
        for (int i = r.deg() - 1; i >= 0; --i)
            for (int j = i; j < r.deg(); ++j) r.c[j] += a * r.c[j + 1];
        return r;
    }

    UPoly pow(int e) const {
        UPoly r = constant(T(1));
        UPoly b = *this;
        while (e) {
            if (e & 1) r = r * b;
            if (e >>= 1) b = b * b;
        }
        return r;
    }
};

// Evaluate a rational-coefficient polynomial in another scalar type.
template <class U>
U eval_conv(const UPoly<Rational>& p, const U& x) {
    U acc(0);
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) acc = acc * x + from_rational<U>(*it);
    return acc;
}

inline UPoly<Rational> upoly_gcd(UPoly<Rational> a, UPoly<Rational> b) {
    while (!b.is_zero()) {
        UPoly<Rational> q, r;
        UPoly<Rational>::divmod(a, b, q, r);
        a = b;
        b = r.is_zero() ? r : r.monic();
    }
    return a.is_zero() ? a : a.monic();
}

// Multiplicity of t as a root (0 if not a root). Exact.
inline int vanishing_order(const UPoly<Rational>& p, const Rational& t) {
    if (p.is_zero()) throw std::domain_error("vanishing_order of zero polynomial");
    UPoly<Rational> r = p;
    int order = 0;
    while (!r.is_zero() && r.eval(t) == 0) {
        // synthetic division by (x - t)
        UPoly<Rational> q;
        q.c.assign(std::max(r.deg(), 0), Rational(0));
        Rational carry = 0;
        for (int i = r.deg(); i >= 1; --i) {
            carry = r.c[i] + carry * t;
            q.c[i - 1] = carry;
        }
        q.trim();
        r = q;
        ++order;
    }
    return order;
}

// Max multiplicity over all roots, via the iterated gcd chain.
inline int max_root_multiplicity(const UPoly<Rational>& p) {
    UPoly<Rational> f = p;
    int m = 0;
    while (f.deg() > 0) {
        f = upoly_gcd(f, f.derivative());
        ++m;
    }
    return m;
}

// Number of distinct roots of the gcd(p, p') part, i.e. distinct multiple roots.
inline int distinct_multiple_roots(const UPoly<Rational>& p) {
    UPoly<Rational> g = upoly_gcd(p, p.derivative());
    if (g.deg() <= 0) return 0;
    UPoly<Rational> gg = upoly_gcd(g, g.derivative());
    UPoly<Rational> q, r;
    UPoly<Rational>::divmod(g, gg, q, r);
    return q.deg();
}

inline std::vector<std::complex<double>> complex_roots(const UPoly<std::complex<double>>& p) {
    using Cx = std::complex<double>;
    int n = p.deg();
    if (n <= 0) return {};
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    Cx lead = p.c[n];
    for (int i = 0; i < n; ++i) {
        companion(i, n - 1) = -p.c[i] / lead;
        if (i + 1 < n) companion(i + 1, i) = 1.0;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
    std::vector<Cx> roots(es.eigenvalues().data(), es.eigenvalues().data() + n);
    UPoly<Cx> dp = p.derivative();
    for (auto& z : roots) {
        for (int it = 0; it < 8; ++it) {
            Cx f = p.eval(z), d = dp.eval(z);
            if (std::abs(d) < 1e-300) break;
            Cx step = f / d;
            z -= step;
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
        }
    }
    return roots;
}

template <class T>
UPoly<std::complex<double>> to_complex_poly(const UPoly<T>& p) {
    UPoly<std::complex<double>> r;
    r.c.reserve(p.c.size());
    for (const auto& v : p.c) r.c.push_back(from_rational<std::complex<double>>(v));
    return r;
}

// Best rational approximation with denominator <= maxden (continued fractions).
inline bool reconstruct_rational(double x, long long maxden, Rational& out) {
    if (!std::isfinite(x)) return false;
    long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double v = x;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(v);
        if (fl > 9.0e17 || fl < -9.0e17) return false;
        long long a = static_cast<long long>(fl);
        long long h2 = a * h1 + h0, k2 = a * k1 + k0;
        if (k2 > maxden || k2 < 0) break;
        h0 = h1; h1 = h2; k0 = k1; k1 = k2;
        double frac = v - fl;
        if (frac < 1e-14) break;
        v = 1.0 / frac;
    }
    if (k1 == 0) return false;
    out = Rational(Int(h1), Int(k1));
    return std::abs(to_double(out) - x) < 1e-7 * (1.0 + std::abs(x));
}

struct RationalRoots {
    std::vector<std::pair<Rational, int>> roots;  // (root, multiplicity)
    UPoly<Rational> leftover;                     // rootless (over the searched set) factor
};

// Rational roots found numerically, then verified and deflated exactly, so
// every reported root and multiplicity is certain. Roots with denominators
// beyond maxden stay in `leftover`.
inline RationalRoots rational_roots(const UPoly<Rational>& p, long long maxden = 100000) {
    RationalRoots out;
    out.leftover = p;
    if (p.deg() <= 0) return out;
    auto nroots = complex_roots(to_complex_poly(p));
    std::vector<Rational> candidates;
    for (const auto& z : nroots) {
        if (std::abs(z.imag()) > 1e-7 * (1.0 + std::abs(z.real()))) continue;
        Rational r;
        if (reconstruct_rational(z.real(), maxden, r)) candidates.push_back(r);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& r : candidates) {
        int m = vanishing_order(out.leftover, r);
        if (m > 0) {
            out.roots.emplace_back(r, m);
            UPoly<Rational> lin(std::vector<Rational>{-r, 1});
            for (int i = 0; i < m; ++i) {
                UPoly<Rational> q, rem;
                UPoly<Rational>::divmod(out.leftover, lin, q, rem);
                out.leftover = q;
            }
        }
    }
    std::sort(out.roots.begin(), out.roots.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

}  // namespace amu

#endif
