#ifndef AMU_RESULTANT_HPP
#define AMU_RESULTANT_HPP

#include <vector>

#include "amu/multipoly.hpp"

namespace amu {

// Univariate polynomials in an auxiliary variable z with MultiPoly
// coefficients (ascending). Used by the resultant oracle.
using ZPoly = std::vector<MultiPoly>;

inline void ztrim(ZPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}
inline int zdeg(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }
inline bool zis_zero(const ZPoly& p) { return p.empty(); }
inline const MultiPoly& zlc(const ZPoly& p) { return p.back(); }

inline ZPoly zscale(const ZPoly& p, const MultiPoly& c) {
    ZPoly r = p;
    for (auto& v : r) v = v * c;
    ztrim(r);
    return r;
}

inline ZPoly zsub(const ZPoly& a, const ZPoly& b) {
    ZPoly r = a;
    if (b.size() > r.size()) r.resize(b.size());
    for (size_t i = 0; i < b.size(); ++i) {
        if (i < r.size()) r[i] -= b[i];
    }
    ztrim(r);
    return r;
}

// shift by z^k
inline ZPoly zshift(const ZPoly& p, int k) {
    if (zis_zero(p)) return p;
    ZPoly r(p.size() + k);
    int nv = p[0].nvars();
    for (int i = 0; i < k; ++i) r[i] = MultiPoly(std::max(nv, 0));
    for (size_t i = 0; i < p.size(); ++i) r[i + k] = p[i];
    return r;
}

inline ZPoly zderivative(const ZPoly& p) {
    ZPoly r;
    for (size_t k = 1; k < p.size(); ++k) r.push_back(p[k] * Rational((long long)k));
    ztrim(r);
    return r;
}

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
inline ZPoly pseudo_rem(const ZPoly& a, const ZPoly& b) {
    if (zis_zero(b)) throw std::domain_error("pseudo_rem: zero divisor");
    ZPoly r = a;
    int e = zdeg(a) - zdeg(b) + 1;
    const MultiPoly& d = zlc(b);
    while (!zis_zero(r) && zdeg(r) >= zdeg(b)) {
        ZPoly t = zscale(zshift(b, zdeg(r) - zdeg(b)), zlc(r));
        r = zsub(zscale(r, d), t);
        --e;
    }
    for (; e > 0; --e) r = zscale(r, d);
    return r;
}

inline ZPoly zdivide_exact(const ZPoly& a, const MultiPoly& c) {
    ZPoly r = a;
    for (auto& v : r) {
        MultiPoly q;
        if (!MultiPoly::try_divide(v, c, q))
            throw std::logic_error("subresultant: inexact coefficient division");
        v = q;
    }
    return r;
}

// Resultant via the subresultant pseudo-remainder sequence; exact including
// sign and content, no coefficient gcd extraction at desk scale.
inline MultiPoly resultant_prs(ZPoly a, ZPoly b, int nvars) {
    ztrim(a);
    ztrim(b);
    if (zis_zero(a) || zis_zero(b)) throw std::invalid_argument("resultant: zero polynomial input");
    int sign = 1;
    if (zdeg(a) < zdeg(b)) {
        std::swap(a, b);
        if ((zdeg(a) & 1) && (zdeg(b) & 1)) sign = -sign;
    }
    MultiPoly g = MultiPoly::constant(nvars, 1);
    MultiPoly h = MultiPoly::constant(nvars, 1);
    while (zdeg(b) > 0) {
        int delta = zdeg(a) - zdeg(b);
        if ((zdeg(a) & 1) && (zdeg(b) & 1)) sign = -sign;
        ZPoly r = pseudo_rem(a, b);
        a = b;
        MultiPoly div = g * h.pow(delta);
        b = zis_zero(r) ? r : zdivide_exact(r, div);
        if (zis_zero(b)) return MultiPoly::constant(nvars, 0);
        g = zlc(a);
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = g;
        } else {
            MultiPoly q;
            if (!MultiPoly::try_divide(g.pow(delta), h.pow(delta - 1), q))
                throw std::logic_error("subresultant: inexact h update");
            h = q;
        }
    }
    // b is a nonzero constant polynomial in z
    int da = zdeg(a);
    MultiPoly res;
    if (da == 0) {
        res = MultiPoly::constant(nvars, 1);
    } else {
        MultiPoly num = zlc(b).pow(da);
        if (da == 1) {
            res = num;
        } else {
            MultiPoly q;
            if (!MultiPoly::try_divide(num, h.pow(da - 1), q))
                throw std::logic_error("subresultant: inexact final division");
            res = q;
        }
    }
    if (sign < 0) res = -res;
    return res;
}

// F(z,s') + s0 = z^(mu+1) + s_{mu-1} z^(mu-1) + ... + s_1 z + s_0 as a ZPoly
// over the nvars = mu polynomial ring.
inline ZPoly versal_family(int mu) {
    ZPoly f(mu + 2, MultiPoly(mu));
    f[0] = MultiPoly::variable(mu, 0);
    for (int j = 1; j <= mu - 1; ++j) f[j] = MultiPoly::variable(mu, j);
    f[mu + 1] = MultiPoly::constant(mu, 1);
    return f;
}

// Independent oracle for the discriminant: Res_z(F + s0, dF/dz).
inline MultiPoly resultant_s0_oracle(const ZPoly& f, const ZPoly& g, int nvars) {
    return resultant_prs(f, g, nvars);
}

}  // namespace amu

#endif
