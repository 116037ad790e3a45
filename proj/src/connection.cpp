#include "amu/connection.hpp"

#include <Eigen/SVD>
#include <map>
#include <stdexcept>

namespace amu {

namespace {

void check_mu(int mu) {
    if (mu < 2 || mu > 8) throw std::invalid_argument("mu out of supported range [2, 8]");
}

Rational lambda_of(int nu, int m) {
    if (nu < 2) throw std::invalid_argument("nu must be >= 2");
    Rational lam = Rational(m) / nu;
    if (is_integer(lam) && lam < 0)
        throw std::invalid_argument("lambda = m/nu must not be a negative integer");
    return lam;
}

// Taylor coefficients f_l = (1/l!) (d/dx)^l F(x,s') at x0, l = 0..mu, where
// F = x^(mu+1) + s_{mu-1} x^(mu-1) + ... + s_1 x. f[0] excludes the s0 term.
std::vector<MultiPoly> taylor_f(int mu, const Rational& x0,
                                const std::vector<MultiPoly>& sp) {
    std::vector<MultiPoly> coef(mu + 2, MultiPoly(mu));  // F coefficients in x
    for (int j = 1; j <= mu - 1; ++j) coef[j] = sp[j - 1];
    coef[mu + 1] = MultiPoly::constant(mu, 1);
    std::vector<MultiPoly> f(mu + 1, MultiPoly(mu));
    for (int l = 0; l <= mu; ++l) {
        for (int i = l; i <= mu + 1; ++i) {
            if (coef[i].is_zero()) continue;
            Rational b = 1;
            for (int q = 0; q < l; ++q) b = b * (i - q) / (q + 1);
            f[l] += coef[i] * (b * rat_pow(x0, i - l));
        }
    }
    return f;
}

struct Eliminated {
    std::vector<MultiPoly> A;   // coefficients on kept unknowns
    std::vector<MultiPoly> Rc;  // constant K coefficients
    std::vector<MultiPoly> Rl;  // lambda K coefficients
};

// Shared elimination: block-1 rows (retained) have coefficients c1[l] at
// column i+l and rhs lambda*K_i; block-2 rows (pivots) have c2[l] at column
// j+l, pivot mu+1 at column j+mu+1, and rhs -(base+j+1)*K_j.
ConnectionSystem eliminate_band(int mu, int nu, int m, int keep, int base, int jmin,
                                const std::vector<MultiPoly>& c1,
                                const std::vector<MultiPoly>& c2) {
    const int N = keep + mu + 1;  // unknowns x_0..x_{N-1}
    const Rational inv = Rational(1, mu + 1);

    std::map<int, Eliminated> subst;
    for (int p = keep; p < N; ++p) {
        int j = p - (mu + 1);
        if (j < jmin || j + mu + 1 != p) throw std::logic_error("eliminate_band: pivot bookkeeping");
        Eliminated e;
        e.A.assign(keep, MultiPoly(mu));
        e.Rc.assign(keep, MultiPoly(mu));
        e.Rl.assign(keep, MultiPoly(mu));
        if (j >= 0) e.Rc[j] -= MultiPoly::constant(mu, Rational(base + j + 1) * inv);
        for (int l = 1; l <= mu; ++l) {
            int col = j + l;
            if (col < 0 || c2[l].is_zero()) continue;
            MultiPoly w = c2[l] * (-inv);
            if (col < keep) {
                e.A[col] += w;
            } else {
                const Eliminated& prior = subst.at(col);
                for (int q = 0; q < keep; ++q) {
                    if (!prior.A[q].is_zero()) e.A[q] += w * prior.A[q];
                    if (!prior.Rc[q].is_zero()) e.Rc[q] += w * prior.Rc[q];
                    if (!prior.Rl[q].is_zero()) e.Rl[q] += w * prior.Rl[q];
                }
            }
        }
        subst[p] = std::move(e);
    }

    ConnectionSystem cs;
    cs.mu = mu;
    cs.nu = nu;
    cs.m = m;
    cs.lambda = lambda_of(nu, m);
    cs.size = keep;
    cs.S = poly_mat(keep, keep, mu);
    PolyMat rhsC = poly_mat(keep, keep, mu);
    PolyMat rhsL = poly_mat(keep, keep, mu);
    for (int i = 0; i < keep; ++i) {
        rhsL(i, i) += MultiPoly::constant(mu, 1);
        for (int l = 0; l < static_cast<int>(c1.size()); ++l) {
            int col = i + l;
            const MultiPoly& w = c1[l];
            if (w.is_zero()) continue;
            if (col < keep) {
                cs.S(i, col) += w;
            } else {
                const Eliminated& sub = subst.at(col);
                for (int q = 0; q < keep; ++q) {
                    if (!sub.A[q].is_zero()) cs.S(i, q) += w * sub.A[q];
                    if (!sub.Rc[q].is_zero()) rhsC(i, q) -= w * sub.Rc[q];
                    if (!sub.Rl[q].is_zero()) rhsL(i, q) -= w * sub.Rl[q];
                }
            }
        }
    }

    // conformance checks: rhs lambda part = Id, diagonal constants, V strictly
    // lower triangular, S = (s0 - const) Id + C(s')
    cs.V = poly_mat(keep, keep, mu);
    cs.L.assign(keep, Rational(0));
    for (int i = 0; i < keep; ++i) {
        for (int q = 0; q < keep; ++q) {
            const MultiPoly want = MultiPoly::constant(mu, i == q ? 1 : 0);
            if (rhsL(i, q) != want)
                throw std::runtime_error("connection derivation: rhs lambda part not identity");
            if (i == q) {
                if (!rhsC(i, q).is_constant())
                    throw std::runtime_error("connection derivation: non-constant diagonal weight");
                cs.L[i] = cs.lambda + rhsC(i, q).constant_value();
            } else if (q > i) {
                if (!rhsC(i, q).is_zero())
                    throw std::runtime_error("connection derivation: rhs not lower triangular");
            } else {
                cs.V(i, q) = rhsC(i, q);
                if (cs.V(i, q).depends_on(0))
                    throw std::runtime_error("connection derivation: V depends on s0");
            }
        }
    }
    return cs;
}

std::vector<MultiPoly> symbolic_sprime(int mu) {
    std::vector<MultiPoly> sp;
    for (int j = 1; j <= mu - 1; ++j) sp.push_back(MultiPoly::variable(mu, j));
    return sp;
}

ConnectionSystem derive_shifted_impl(int mu, int nu, int m, int k, const Rational& x0,
                                     const std::vector<MultiPoly>& sp, bool symbolic) {
    check_mu(mu);
    if (k < 0) throw std::invalid_argument("shift k must be >= 0");
    auto f = taylor_f(mu, x0, sp);
    std::vector<MultiPoly> c1(mu + 2, MultiPoly(mu));
    c1[0] = f[0] + MultiPoly::variable(mu, 0);  // F(x0,s') + s0
    for (int l = 1; l <= mu; ++l) c1[l] = f[l];
    c1[mu + 1] = MultiPoly::constant(mu, 1);
    std::vector<MultiPoly> c2(mu + 2, MultiPoly(mu));
    for (int l = 1; l <= mu; ++l) c2[l] = f[l] * Rational(l);
    c2[mu + 1] = MultiPoly::constant(mu, mu + 1);

    ConnectionSystem cs = eliminate_band(mu, nu, m, mu + 1, k, 0, c1, c2);
    cs.shifted = true;
    cs.k = k;
    cs.x0 = x0;
    cs.f = f;
    cs.f[0] = c1[0];  // keep f_0 = F + s0 with the s0 term included
    cs.stilde0 = -f[0];
    cs.sprime_symbolic = symbolic;
    if (!symbolic) {
        cs.sprime.clear();
        for (const auto& v : sp) cs.sprime.push_back(v.constant_value());
    }
    cs.disc = subset_det(cs.S);
    return cs;
}

}  // namespace

SigmaSystem build_sigma(int mu, const Rational& lambda) {
    check_mu(mu);
    SigmaSystem sys;
    sys.mu = mu;
    sys.lambda = lambda;
    const int n = 2 * mu + 1;
    sys.sigma = poly_mat(n, n, mu);
    sys.rhs.assign(n, RhsTerm{});
    // rows 0..mu-1: sum_l s_l x_{l+i} + x_{mu+1+i} = lambda K_i
    for (int i = 0; i < mu; ++i) {
        for (int l = 0; l <= mu - 1; ++l) sys.sigma(i, l + i) += MultiPoly::variable(mu, l);
        sys.sigma(i, mu + 1 + i) += MultiPoly::constant(mu, 1);
        sys.rhs[i] = RhsTerm{i, 1, 0};
    }
    // rows mu..2mu (j = -1..mu-1): sum_l l s_l x_{l+j} + (mu+1) x_{mu+1+j} = -(j+1) K_j
    for (int j = -1; j <= mu - 1; ++j) {
        int r = mu + 1 + j;
        for (int l = 1; l <= mu - 1; ++l)
            if (l + j >= 0) sys.sigma(r, l + j) += MultiPoly::variable(mu, l) * Rational(l);
        sys.sigma(r, mu + 1 + j) += MultiPoly::constant(mu, mu + 1);
        sys.rhs[r] = (j >= 0) ? RhsTerm{j, 0, Rational(-(j + 1))} : RhsTerm{-1, 0, 0};
    }
    return sys;
}

ConnectionSystem derive_connection(int mu, int nu, int m) {
    check_mu(mu);
    static std::map<std::tuple<int, int, int>, ConnectionSystem> cache;
    auto key = std::make_tuple(mu, nu, m);
    auto hit = cache.find(key);
    if (hit != cache.end()) return hit->second;
    std::vector<MultiPoly> c1(mu + 2, MultiPoly(mu));
    for (int l = 0; l <= mu - 1; ++l) c1[l] = MultiPoly::variable(mu, l);
    c1[mu + 1] = MultiPoly::constant(mu, 1);
    std::vector<MultiPoly> c2(mu + 2, MultiPoly(mu));
    for (int l = 1; l <= mu - 1; ++l) c2[l] = MultiPoly::variable(mu, l) * Rational(l);
    c2[mu + 1] = MultiPoly::constant(mu, mu + 1);

    ConnectionSystem cs = eliminate_band(mu, nu, m, mu, 0, -1, c1, c2);

    // expected structure: S = s0 Id + C(s'), L_i = lambda + (i+1)/(mu+1),
    // V with two zero leading rows
    for (int i = 0; i < mu; ++i) {
        if (cs.L[i] != cs.lambda + Rational(i + 1, mu + 1))
            throw std::runtime_error("connection derivation: unexpected weight on L diagonal");
        for (int j = 0; j < mu; ++j) {
            MultiPoly entry = cs.S(i, j);
            if (i == j) entry -= MultiPoly::variable(mu, 0);
            if (entry.depends_on(0))
                throw std::runtime_error("connection derivation: S - s0 Id depends on s0");
        }
    }
    for (int j = 0; j < mu; ++j)
        if (!cs.V(0, j).is_zero() || !cs.V(1, j).is_zero())
            throw std::runtime_error("connection derivation: V has nonzero leading rows");
    cs.disc = subset_det(cs.S);
    cache.emplace(key, cs);
    return cs;
}

ConnectionSystem derive_shifted_connection(int mu, int nu, int m, int k, const Rational& x0,
                                           const std::vector<Rational>& sprime) {
    if (static_cast<int>(sprime.size()) != mu - 1)
        throw std::invalid_argument("s' must have mu-1 entries");
    std::vector<MultiPoly> sp;
    for (const auto& v : sprime) sp.push_back(MultiPoly::constant(mu, v));
    return derive_shifted_impl(mu, nu, m, k, x0, sp, false);
}

ConnectionSystem derive_shifted_connection_symbolic(int mu, int nu, int m, int k,
                                                    const Rational& x0) {
    return derive_shifted_impl(mu, nu, m, k, x0, symbolic_sprime(mu), true);
}

MultiPoly discriminant(int mu) {
    check_mu(mu);
    static std::map<int, MultiPoly> cache;
    auto it = cache.find(mu);
    if (it != cache.end()) return it->second;
    ConnectionSystem cs = derive_connection(mu, 2, 1);
    MultiPoly d = cs.disc;
    if (d.degree(0) != mu)
        throw std::logic_error("discriminant: wrong s0 degree");
    cache[mu] = d;
    return d;
}

ConnectionSystem specialize_connection(const ConnectionSystem& cs,
                                       const std::vector<Rational>& sprime) {
    if (static_cast<int>(sprime.size()) != cs.mu - 1)
        throw std::invalid_argument("specialize_connection: s' must have mu-1 entries");
    ConnectionSystem out = cs;
    auto sub = [&](MultiPoly p) {
        for (int j = 1; j < cs.mu; ++j) p = p.substitute(j, sprime[j - 1]);
        return p;
    };
    for (int i = 0; i < cs.size; ++i)
        for (int q = 0; q < cs.size; ++q) {
            out.S(i, q) = sub(cs.S(i, q));
            out.V(i, q) = sub(cs.V(i, q));
        }
    out.disc = sub(cs.disc);
    out.sprime = sprime;
    out.sprime_symbolic = false;
    return out;
}

std::vector<LogVectorField> log_fields(const ConnectionSystem& cs) {
    if (cs.shifted) throw std::invalid_argument("log_fields: unshifted system expected");
    std::vector<LogVectorField> out;
    for (int i = 0; i < cs.mu; ++i) {
        LogVectorField xi;
        xi.index = i;
        for (int j = 0; j < cs.mu; ++j) xi.coeffs.push_back(cs.S(i, j));
        out.push_back(std::move(xi));
    }
    return out;
}

MultiPoly apply_field(const LogVectorField& xi, const MultiPoly& p) {
    MultiPoly acc(p.nvars());
    for (size_t j = 0; j < xi.coeffs.size(); ++j)
        acc += xi.coeffs[j] * p.derivative(static_cast<int>(j));
    return acc;
}

UPoly<Rational> fiber_polynomial(int mu, const std::vector<Rational>& point) {
    if (static_cast<int>(point.size()) != mu)
        throw std::invalid_argument("fiber_polynomial: point must have mu entries");
    UPoly<Rational> f;
    f.c.assign(mu + 2, Rational(0));
    f.c[0] = point[0];
    for (int j = 1; j <= mu - 1; ++j) f.c[j] = point[j];
    f.c[mu + 1] = 1;
    f.trim();
    return f;
}

StratumLabel stratum_of(int mu, const std::vector<Rational>& point) {
    check_mu(mu);
    MultiPoly delta = discriminant(mu);
    MultiPoly dsub = delta;
    for (int j = 0; j < mu; ++j) dsub = dsub.substitute(j, point[j]);
    if (dsub.constant_value() != 0) throw std::domain_error("stratum_of: point not on D");

    ConnectionSystem cs = derive_connection(mu, 2, 1);
    RatMat s(mu, mu);
    std::vector<Rational> pt = point;
    for (int i = 0; i < mu; ++i)
        for (int j = 0; j < mu; ++j) s(i, j) = cs.S(i, j).eval(pt);
    StratumLabel lab;
    lab.rank = exact_rank(s);
    lab.k = mu - 1 - lab.rank;

    // cross-check against the root order of F + s0; Delta multiplicity in s0
    // beyond k+1 signals a Maxwell point (several critical points sharing the
    // critical value).
    UPoly<Rational> fiber = fiber_polynomial(mu, point);
    int rootOrder = max_root_multiplicity(fiber);
    MultiPoly ds0 = delta;
    for (int j = 1; j < mu; ++j) ds0 = ds0.substitute(j, point[j]);
    auto coeffs = ds0.coeffs_in(0);
    UPoly<Rational> dpoly;
    for (auto& c : coeffs) dpoly.c.push_back(c.constant_value());
    dpoly.trim();
    int v = vanishing_order(dpoly, point[0]);
    // excess multiplicity of Delta over the root-order depth marks critical
    // values shared by distinct critical points
    lab.maxwell = (v > rootOrder - 1) || distinct_multiple_roots(fiber) > 1;
    if (rootOrder != lab.k + 2 && !lab.maxwell)
        throw std::logic_error("stratum_of: rank and root-order witnesses disagree");
    return lab;
}

StratumLabel stratum_of(int mu, const std::vector<std::complex<double>>& point, double tol) {
    check_mu(mu);
    using Cx = std::complex<double>;
    ConnectionSystem cs = derive_connection(mu, 2, 1);
    std::vector<Cx> pt = point;
    MultiPoly delta = discriminant(mu);
    Cx dval = delta.eval(pt);
    double scale = 0;
    for (const auto& z : pt) scale = std::max(scale, std::abs(z));
    scale = std::max(scale, 1.0);
    double dscale = std::pow(scale, mu * (mu + 1) / 2.0);
    if (std::abs(dval) > 1e-6 * dscale) throw std::domain_error("stratum_of: point not on D");

    Eigen::MatrixXcd s = cs.eval_S(pt);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(s);
    auto sv = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * sv(0)) ++rank;
    if (sv(0) <= 0) rank = 0;
    StratumLabel lab;
    lab.rank = rank;
    lab.k = mu - 1 - rank;

    // root clustering of the fiber polynomial
    UPoly<Cx> f;
    f.c.assign(mu + 2, Cx(0));
    f.c[0] = pt[0];
    for (int j = 1; j <= mu - 1; ++j) f.c[j] = pt[j];
    f.c[mu + 1] = 1;
    auto roots = complex_roots(f);
    double rscale = 0;
    for (auto& z : roots) rscale = std::max(rscale, std::abs(z));
    double ctol = 1e-5 * std::max(rscale, 1.0);
    std::vector<int> clusterSize;
    std::vector<bool> used(roots.size(), false);
    for (size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        int c = 0;
        for (size_t j = i; j < roots.size(); ++j) {
            if (!used[j] && std::abs(roots[j] - roots[i]) < ctol) {
                used[j] = true;
                ++c;
            }
        }
        clusterSize.push_back(c);
    }
    int multiClusters = 0;
    for (int c : clusterSize) multiClusters += (c >= 2);
    lab.maxwell = multiClusters > 1;
    return lab;
}

Eigen::MatrixXcd ConnectionSystem::eval_S(const std::vector<std::complex<double>>& s) const {
    Eigen::MatrixXcd out(size, size);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) out(i, j) = S(i, j).eval(s);
    return out;
}

Eigen::MatrixXcd ConnectionSystem::eval_LV(const std::vector<std::complex<double>>& s) const {
    Eigen::MatrixXcd out(size, size);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) {
            out(i, j) = V(i, j).eval(s);
            if (i == j) out(i, j) += to_double(L[i]);
        }
    return out;
}

}  // namespace amu
