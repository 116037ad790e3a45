#include "amu/fuchs.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace amu {

namespace {

int op_nvars(const std::vector<std::vector<DiffOp>>& P) {
    int nv = -1;
    for (const auto& row : P)
        for (const auto& e : row) nv = std::max(nv, e.nvars());
    return std::max(nv, 0);
}

UPoly<Rational> falling_factorial(int d) {
    UPoly<Rational> r = UPoly<Rational>::constant(1);
    for (int i = 0; i < d; ++i) {
        UPoly<Rational> lin(std::vector<Rational>{Rational(-i), 1});
        r = r * lin;
    }
    return r;
}

Rational factorial(int n) {
    Rational r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

}  // namespace

DiffOp nc_determinant(const std::vector<std::vector<DiffOp>>& P) {
    const int n = static_cast<int>(P.size());
    const int nv = op_nvars(P);
    std::vector<DiffOp> dp(size_t(1) << n);
    dp[0] = DiffOp::from_coef(MultiPoly::constant(nv, 1));
    for (unsigned mask = 1; mask < dp.size(); ++mask) {
        int col = __builtin_popcount(mask) - 1;
        DiffOp acc(nv);
        int above = 0;
        for (int r = n - 1; r >= 0; --r) {
            if (!(mask & (1u << r))) continue;
            const DiffOp& sub = dp[mask ^ (1u << r)];
            if (!sub.is_zero() && !P[r][col].is_zero()) {
                DiffOp t = P[r][col] * sub;
                if (above & 1)
                    acc -= t;
                else
                    acc += t;
            }
            ++above;
        }
        dp[mask] = std::move(acc);
    }
    return dp[dp.size() - 1];
}

DiffOp nc_det_rightmost(const std::vector<std::vector<DiffOp>>& P, int jcol) {
    const int n = static_cast<int>(P.size());
    const int nv = op_nvars(P);
    std::vector<DiffOp> dp(size_t(1) << n);
    dp[0] = DiffOp::from_coef(MultiPoly::constant(nv, 1));
    for (unsigned mask = 1; mask < dp.size(); ++mask) {
        int pos = __builtin_popcount(mask) - 1;
        int col = (pos == 0) ? jcol : pos;
        DiffOp acc(nv);
        int above = 0;
        for (int r = n - 1; r >= 0; --r) {
            if (!(mask & (1u << r))) continue;
            const DiffOp& sub = dp[mask ^ (1u << r)];
            if (!sub.is_zero() && !P[r][col].is_zero()) {
                DiffOp t = P[r][col] * sub;
                if (above & 1)
                    acc -= t;
                else
                    acc += t;
            }
            ++above;
        }
        dp[mask] = std::move(acc);
    }
    return dp[dp.size() - 1];
}

namespace {

std::vector<std::vector<DiffOp>> system_matrix(const ConnectionSystem& cs) {
    std::vector<std::vector<DiffOp>> P(cs.size, std::vector<DiffOp>(cs.size));
    for (int i = 0; i < cs.size; ++i)
        for (int j = 0; j < cs.size; ++j) {
            DiffOp e = DiffOp::term(cs.S(i, j), -1, 1);
            MultiPoly c = cs.V(i, j);
            if (i == j) c += MultiPoly::constant(cs.mu, cs.L[i]);
            e -= DiffOp::from_coef(c);
            P[i][j] = e;
        }
    return P;
}

}  // namespace

// The ordered determinant det(S d0 - L - V) alone does not annihilate K_0:
// its expansion against the system rows leaves remainders T_j K_j whose
// constant terms vanish but whose derivative parts do not. Converting
// d0 K_j = d/ds_j K_0 absorbs them into first-order ds' terms, giving an
// order-mu annihilator whose d0^mu coefficient is exactly det S.
FuchsOperator build_annihilator(const ConnectionSystem& cs) {
    if (cs.shifted) throw std::invalid_argument("build_annihilator: unshifted system expected");
    const int mu = cs.mu;
    auto P = system_matrix(cs);
    FuchsOperator op;
    op.mu = mu;
    op.order = mu;
    op.shifted = false;
    op.body = nc_determinant(P);
    for (int j = 1; j <= mu - 1; ++j) {
        DiffOp Tj = nc_det_rightmost(P, j);
        if (Tj.is_zero()) continue;
        if (!Tj.coeff(-1, 0).is_zero())
            throw std::logic_error("build_annihilator: T_j constant term nonzero");
        DiffOp Aj(mu);
        for (const auto& [key, c] : Tj.terms()) Aj.add(-1, key.second - 1, c);
        op.body += Aj * DiffOp::dsp(mu, j);
    }
    op.leading = op.body.coeff(-1, mu);
    if (op.leading != cs.disc)
        throw std::runtime_error("build_annihilator: leading coefficient differs from det S");
    return op;
}

// Pure ordinary annihilator of K_0 for a specialized system, built from the
// derivative tower d^r K_0 = W_r / Delta^r . K,
//   W_0 = e_0,  W_{r+1} = Delta W_r' - r Delta' W_r + W_r adj(S)(L+V),
// by solving for polynomial coefficients of minimal s0-degree. The leading
// coefficient is a multiple of Delta; the extra factor collects apparent
// (monodromy-free) singular points of the scalar reduction.
FuchsOperator scalar_annihilator(const ConnectionSystem& raw,
                                 const std::vector<Rational>& sprime, int component) {
    if (raw.shifted) throw std::invalid_argument("scalar_annihilator: unshifted system expected");
    ConnectionSystem cs = sprime.empty() ? raw : specialize_connection(raw, sprime);
    const int mu = cs.mu;
    if (component < 0 || component >= mu)
        throw std::invalid_argument("scalar_annihilator: component out of range");
    const MultiPoly& delta = cs.disc;
    MultiPoly ddelta = delta.derivative(0);

    PolyMat B = adjugate(cs.S);
    {
        PolyMat lv = poly_mat(mu, mu, mu);
        for (int i = 0; i < mu; ++i)
            for (int j = 0; j < mu; ++j) {
                lv(i, j) = cs.V(i, j);
                if (i == j) lv(i, j) += MultiPoly::constant(mu, cs.L[i]);
            }
        PolyMat prod = poly_mat(mu, mu, mu);
        for (int i = 0; i < mu; ++i)
            for (int j = 0; j < mu; ++j)
                for (int k = 0; k < mu; ++k) prod(i, j) += B(i, k) * lv(k, j);
        B = prod;
    }
    std::vector<std::vector<MultiPoly>> W(mu + 1, std::vector<MultiPoly>(mu, MultiPoly(mu)));
    W[0][component] = MultiPoly::constant(mu, 1);
    for (int r = 0; r < mu; ++r)
        for (int c = 0; c < mu; ++c) {
            MultiPoly acc = delta * W[r][c].derivative(0) - Rational(r) * (ddelta * W[r][c]);
            for (int k = 0; k < mu; ++k) acc += W[r][k] * B(k, c);
            W[r + 1][c] = acc;
        }
    std::vector<MultiPoly> dpow(mu + 1);
    dpow[0] = MultiPoly::constant(mu, 1);
    for (int p = 1; p <= mu; ++p) dpow[p] = dpow[p - 1] * delta;

    // scan the extra s0-degree allowance until the kernel appears
    for (int extra = 0; extra <= 3 * mu; ++extra) {
        std::vector<std::pair<int, int>> unknowns;  // (r, s0 power)
        for (int r = 0; r <= mu; ++r)
            for (int a = 0; a <= r + extra; ++a) unknowns.emplace_back(r, a);
        std::map<std::pair<int, int>, int> rowIndex;
        int nrows = 0;
        auto row_of = [&](int c, int p) {
            auto key = std::make_pair(c, p);
            auto it = rowIndex.find(key);
            if (it != rowIndex.end()) return it->second;
            rowIndex.emplace(key, nrows);
            return nrows++;
        };
        std::vector<std::vector<std::pair<int, Rational>>> cols(unknowns.size());
        for (size_t u = 0; u < unknowns.size(); ++u) {
            auto [r, a] = unknowns[u];
            for (int c = 0; c < mu; ++c) {
                MultiPoly contrib = dpow[mu - r] * W[r][c];
                for (const auto& [ee, cc] : contrib.terms())
                    cols[u].emplace_back(row_of(c, ee[0] + a), cc);
            }
        }
        RatMat A = RatMat::Zero(nrows, static_cast<int>(unknowns.size()));
        for (size_t u = 0; u < unknowns.size(); ++u)
            for (const auto& [i, v] : cols[u]) A(i, static_cast<int>(u)) += v;
        // exact RREF, then pick a kernel vector from the last free column
        const int ncols = static_cast<int>(unknowns.size());
        std::vector<int> pivotOfCol(ncols, -1);
        int rank = 0;
        for (int c = 0; c < ncols && rank < nrows; ++c) {
            int piv = -1;
            for (int i = rank; i < nrows; ++i)
                if (A(i, c) != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) continue;
            if (piv != rank)
                for (int j = 0; j < ncols; ++j) std::swap(A(rank, j), A(piv, j));
            Rational inv = 1 / A(rank, c);
            for (int j = 0; j < ncols; ++j) A(rank, j) *= inv;
            for (int i = 0; i < nrows; ++i) {
                if (i == rank || A(i, c) == 0) continue;
                Rational f = A(i, c);
                for (int j = 0; j < ncols; ++j) A(i, j) -= f * A(rank, j);
            }
            pivotOfCol[c] = rank;
            ++rank;
        }
        int freeCol = -1;
        for (int c = ncols - 1; c >= 0; --c)
            if (pivotOfCol[c] < 0) {
                freeCol = c;
                break;
            }
        if (freeCol < 0) continue;
        std::vector<Rational> sol(ncols, 0);
        sol[freeCol] = 1;
        for (int c = 0; c < ncols; ++c)
            if (pivotOfCol[c] >= 0) sol[c] = -A(pivotOfCol[c], freeCol);

        std::vector<MultiPoly> coef(mu + 1, MultiPoly(mu));
        for (size_t u = 0; u < unknowns.size(); ++u) {
            if (sol[u] == 0) continue;
            auto [r, a] = unknowns[u];
            MultiPoly::Expo e(mu, 0);
            e[0] = a;
            coef[r].add_term(e, sol[u]);
        }
        if (coef[mu].is_zero()) continue;
        // plug-back and leading checks
        for (int c = 0; c < mu; ++c) {
            MultiPoly acc(mu);
            for (int r = 0; r <= mu; ++r) acc += coef[r] * dpow[mu - r] * W[r][c];
            if (!acc.is_zero())
                throw std::logic_error("scalar_annihilator: kernel fails the tower identity");
        }
        // On Maxwell-degenerate families the singular support of the scalar
        // reduction is strictly smaller than det S (a repeated critical value
        // carries less monodromy for one component); record instead of
        // normalizing in that case.
        MultiPoly apparent;
        bool discMultiple = MultiPoly::try_divide(coef[mu], delta, apparent);
        if (discMultiple && apparent.is_constant()) {
            Rational cc = apparent.constant_value();
            for (auto& p : coef) p *= 1 / cc;
        }
        FuchsOperator op;
        op.mu = mu;
        op.order = mu;
        op.sprime_specialized = true;
        op.sprime = cs.sprime;
        op.leading_is_disc_multiple = discMultiple;
        op.body = DiffOp(mu);
        for (int r = 0; r <= mu; ++r) op.body.add(-1, r, coef[r]);
        op.leading = op.body.coeff(-1, mu);
        return op;
    }
    throw std::runtime_error("scalar_annihilator: no kernel within the degree scan");
}

DiffOp conversion_op(int mu, int nu, int m, int k, const Rational& x0,
                     const std::vector<MultiPoly>& f, int j) {
    Rational lam = Rational(m) / nu;
    if (j < 1 || j > mu) throw std::invalid_argument("conversion_op: j out of range");
    auto Dsmall = [&](int jj) {
        DiffOp d(mu);
        for (int i = 0; i <= jj; ++i) {
            Rational b = Rational(binomial_ll(jj, i)) * rat_pow(-x0, jj - i);
            if (b == 0) continue;
            if (i == 0)
                d.add(-1, 1, MultiPoly::constant(mu, b));
            else
                d.add(i, 0, MultiPoly::constant(mu, b));
        }
        return d;
    };
    if (j < mu) return Dsmall(j);

    if (x0 != 0) {
        // from rows (2.3)'_0 - (2.4)'_0/(mu+1):
        // x0 b_{k+mu} = (lam + (k+1)/(mu+1)) K - f0 b_k - sum (mu+1-l)/(mu+1) f_l b_{k+l}
        DiffOp d = DiffOp::from_coef(
            MultiPoly::constant(mu, lam + Rational(k + 1, mu + 1)));
        d -= f[0] * DiffOp::d0(mu, 1);
        for (int l = 1; l <= mu - 1; ++l) {
            if (f[l].is_zero()) continue;
            MultiPoly w = f[l] * Rational(mu + 1 - l, mu + 1);
            d -= w * Dsmall(l);
        }
        return d * (Rational(1) / x0);
    }
    // At x0 = 0 no valid rewrite exists: the j = -1 integration-by-parts row
    // carries a nonvanishing boundary term on the extra cycle from the base
    // point, and for k >= 1 the monomial x^mu is outside the span of
    // {x^0..x^{mu-1}, F+s0}. Both failures leave the extra branch
    // uncontrolled.
    throw std::domain_error(
        "conversion_op: d/ds0 K_{k+mu} has no first-order rewrite at base point 0");
}

FuchsOperator build_shifted_annihilator(const ConnectionSystem& cs) {
    if (!cs.shifted) throw std::invalid_argument("build_shifted_annihilator: shifted system expected");
    const int mu = cs.mu;
    auto P = system_matrix(cs);
    FuchsOperator op;
    op.mu = mu;
    op.order = mu + 1;
    op.shifted = true;
    op.k = cs.k;
    op.x0 = cs.x0;
    op.sprime_specialized = !cs.sprime_symbolic;
    op.sprime = cs.sprime;
    op.body = nc_determinant(P);

    for (int j = 1; j <= mu; ++j) {
        DiffOp Tj = nc_det_rightmost(P, j);
        if (Tj.is_zero()) continue;
        if (!Tj.pure()) throw std::logic_error("shifted annihilator: T_j not pure");
        if (!Tj.coeff(-1, 0).is_zero())
            throw std::logic_error("shifted annihilator: T_j has a nonzero constant term");
        DiffOp Aj(mu);
        for (const auto& [key, c] : Tj.terms()) Aj.add(-1, key.second - 1, c);
        op.body += Aj * conversion_op(mu, cs.nu, cs.m, cs.k, cs.x0, cs.f, j);
    }

    op.leading = op.body.coeff(-1, mu + 1);
    if (op.leading != cs.disc)
        throw std::runtime_error("build_shifted_annihilator: leading coefficient differs from det S~");
    return op;
}

// ---------------------------------------------------------------------------

void ExponentSet::add(const Rational& r, int mult) {
    for (auto& [v, c] : items)
        if (v == r) {
            c += mult;
            return;
        }
    items.emplace_back(r, mult);
    std::sort(items.begin(), items.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
}

int ExponentSet::count() const {
    int n = 0;
    for (const auto& [v, c] : items) n += c;
    return n;
}

Rational ExponentSet::sum() const {
    Rational s = 0;
    for (const auto& [v, c] : items) s += v * c;
    return s;
}

std::string ExponentSet::str() const {
    std::string out = "{";
    bool first = true;
    for (const auto& [v, c] : items) {
        for (int i = 0; i < c; ++i) {
            if (!first) out += ", ";
            out += to_string(v);
            first = false;
        }
    }
    return out + "}";
}

ExponentSet DeterminingEquation::exponents(const std::string& label) const {
    ExponentSet e;
    e.label = label;
    for (const auto& [r, mult] : roots) e.add(r, mult);
    return e;
}

namespace {

struct EffectiveCoeffs {
    int m = 0;
    std::vector<UPoly<Rational>> E;                      // effective level coefficients
    std::vector<std::pair<int, UPoly<Rational>>> parts;  // (level, coefficient) for checks
};

EffectiveCoeffs effective_coeffs(const DiffOp& op, const std::optional<std::vector<Rational>>& dtds) {
    auto view = op.ode_view();
    EffectiveCoeffs ec;
    ec.m = view.order;
    ec.E.assign(ec.m + 1, UPoly<Rational>());
    for (int b = 0; b <= ec.m && b < static_cast<int>(view.ode.size()); ++b) {
        ec.E[b] = view.ode[b];
        if (!view.ode[b].is_zero()) ec.parts.emplace_back(b, view.ode[b]);
    }
    if (!view.mixed.empty()) {
        if (!dtds) throw std::invalid_argument("indicial: ds' terms need dt/ds' data");
        for (const auto& [jv, vec] : view.mixed) {
            const Rational slope = -(*dtds)[jv - 1];
            for (int b = 0; b + 1 <= ec.m && b < static_cast<int>(vec.size()); ++b) {
                if (vec[b].is_zero()) continue;
                ec.E[b + 1] = ec.E[b + 1] + vec[b] * slope;
                ec.parts.emplace_back(b + 1, vec[b]);
            }
        }
    }
    while (ec.m > 0 && ec.E[ec.m].is_zero()) --ec.m;
    return ec;
}

void extract_roots(DeterminingEquation& de) {
    auto rr = rational_roots(de.pi0);
    de.roots = rr.roots;
    de.unresolved = std::max(rr.leftover.deg(), 0);
    for (size_t i = 0; i < de.roots.size(); ++i)
        for (size_t j = i + 1; j < de.roots.size(); ++j) {
            Rational d = de.roots[i].first - de.roots[j].first;
            if (d != 0 && is_integer(d))
                de.resonances.emplace_back(de.roots[i].first, de.roots[j].first);
        }
}

}  // namespace

DeterminingEquation indicial_polynomial(const DiffOp& op, const Rational& t,
                                        const IndicialOptions& opt) {
    EffectiveCoeffs ec = effective_coeffs(op, opt.dtds);
    DeterminingEquation de;
    de.m = ec.m;
    de.exact = true;
    de.t_exact = t;
    if (ec.E[ec.m].is_zero()) throw std::domain_error("indicial: zero operator");
    de.kappa = vanishing_order(ec.E[ec.m], t);
    for (const auto& [level, coeff] : ec.parts) {
        int j = ec.m - level;
        if (j < 1 || j > de.kappa) continue;
        if (!coeff.is_zero() && vanishing_order(coeff, t) < de.kappa - j) {
            std::ostringstream os;
            os << "indicial: factorization condition fails at order " << level
               << " (vanishing order " << vanishing_order(coeff, t) << " < " << de.kappa - j
               << ")";
            throw std::domain_error(os.str());
        }
    }
    de.pi0 = UPoly<Rational>();
    for (int j = 0; j <= std::min(de.kappa, de.m); ++j) {
        UPoly<Rational> d = ec.E[ec.m - j];
        for (int r = 0; r < de.kappa - j; ++r) d = d.derivative();
        Rational q = d.eval(t) / factorial(de.kappa - j);
        if (q == 0) continue;
        de.pi0 = de.pi0 + falling_factorial(ec.m - j) * q;
    }
    extract_roots(de);
    return de;
}

namespace {

HComplex eval_hp(const UPoly<Rational>& p, const HComplex& t) {
    HComplex acc(0);
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it)
        acc = acc * t + HComplex(hp_from_rational(*it));
    return acc;
}

HReal coeff_scale_hp(const UPoly<Rational>& p, const HComplex& t) {
    HReal s = 0;
    HReal at = abs(t);
    if (at < 1) at = 1;
    HReal pw = 1;
    for (const auto& c : p.c) {
        s += abs(hp_from_rational(c)) * pw;
        pw *= at;
    }
    return s;
}

int vanishing_order_hp(const UPoly<Rational>& p, const HComplex& t, double threshold) {
    UPoly<Rational> d = p;
    int order = 0;
    while (!d.is_zero()) {
        HReal scale = coeff_scale_hp(d, t);
        if (scale == 0) break;
        if (abs(eval_hp(d, t)) > HReal(threshold) * scale) return order;
        d = d.derivative();
        ++order;
    }
    return order;
}

std::vector<int> divisors_of(int n) {
    std::vector<int> out;
    for (int d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

}  // namespace

DeterminingEquation indicial_polynomial_hp(const DiffOp& op, const HComplex& t,
                                           const IndicialOptions& opt) {
    std::optional<std::vector<Rational>> no_dtds;
    if (opt.dtds_hp && !opt.dtds)
        throw std::invalid_argument("indicial_hp: exact coefficients with hp dt/ds' unsupported");
    EffectiveCoeffs ec = effective_coeffs(op, opt.dtds);
    DeterminingEquation de;
    de.m = ec.m;
    de.exact = false;
    de.t_hp = t;
    de.kappa = vanishing_order_hp(ec.E[ec.m], t, opt.threshold);
    for (const auto& [level, coeff] : ec.parts) {
        int j = ec.m - level;
        if (j < 1 || j > de.kappa) continue;
        if (!coeff.is_zero() && vanishing_order_hp(coeff, t, opt.threshold) < de.kappa - j)
            throw std::domain_error("indicial_hp: factorization condition fails at order " +
                                    std::to_string(level));
    }
    // pi0 coefficients in the monomial basis
    std::vector<HComplex> pi0(ec.m + 1, HComplex(0));
    for (int j = 0; j <= std::min(de.kappa, de.m); ++j) {
        UPoly<Rational> d = ec.E[ec.m - j];
        for (int r = 0; r < de.kappa - j; ++r) d = d.derivative();
        HComplex q = eval_hp(d, t) / HComplex(hp_from_rational(factorial(de.kappa - j)));
        UPoly<Rational> fall = falling_factorial(ec.m - j);
        for (int i = 0; i <= fall.deg(); ++i)
            pi0[i] += q * HComplex(hp_from_rational(fall.c[i]));
    }
    de.pi0_hp = pi0;

    // recognize rational roots with denominators dividing denom_lcm
    int L = opt.denom_lcm > 0 ? opt.denom_lcm : 2520;
    HReal scale = 0;
    for (const auto& c : pi0) scale += abs(c);
    std::vector<HComplex> work = pi0;
    auto eval_work = [&](const HComplex& z) {
        HComplex acc(0);
        for (int i = static_cast<int>(work.size()) - 1; i >= 0; --i) acc = acc * z + work[i];
        return acc;
    };
    auto deflate = [&](const HComplex& r) {
        // synthetic division by (x - r)
        std::vector<HComplex> q(work.size() - 1, HComplex(0));
        HComplex carry(0);
        for (int i = static_cast<int>(work.size()) - 1; i >= 1; --i) {
            carry = work[i] + carry * r;
            q[i - 1] = carry;
        }
        work = q;
    };
    int bound = de.m + 3;
    de.unresolved = de.m;
    for (int d : divisors_of(L)) {
        for (long long a = -(long long)bound * d; a <= (long long)bound * d; ++a) {
            if (d > 1 && std::gcd(a < 0 ? -a : a, (long long)d) != 1) continue;
            Rational cand = Rational(Int(a)) / Int(d);
            while (static_cast<int>(work.size()) > 1) {
                HComplex val = eval_work(HComplex(hp_from_rational(cand)));
                HReal wscale = 0;
                for (const auto& c : work) wscale += abs(c);
                if (abs(val) > HReal(opt.threshold * 100) * wscale) break;
                bool found = false;
                for (auto& [r, mult] : de.roots)
                    if (r == cand) {
                        ++mult;
                        found = true;
                    }
                if (!found) de.roots.emplace_back(cand, 1);
                deflate(HComplex(hp_from_rational(cand)));
                --de.unresolved;
            }
        }
    }
    std::sort(de.roots.begin(), de.roots.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 0; i < de.roots.size(); ++i)
        for (size_t j = i + 1; j < de.roots.size(); ++j) {
            Rational diff = de.roots[i].first - de.roots[j].first;
            if (diff != 0 && is_integer(diff))
                de.resonances.emplace_back(de.roots[i].first, de.roots[j].first);
        }
    return de;
}

DiffOp infinity_transform(const DiffOp& op) {
    if (!op.pure()) throw std::domain_error("infinity_transform: pure operator expected");
    auto view = op.ode_view();
    int M = INT32_MIN;
    for (int b = 0; b < static_cast<int>(view.ode.size()); ++b)
        for (int kk = 0; kk <= view.ode[b].deg(); ++kk)
            if (view.ode[b].coeff(kk) != 0) M = std::max(M, kk - b);
    if (M == INT32_MIN) return DiffOp(1);
    DiffOp out(1);
    MultiPoly u = MultiPoly::variable(1, 0);
    for (int b = 0; b < static_cast<int>(view.ode.size()); ++b) {
        for (int kk = 0; kk <= view.ode[b].deg(); ++kk) {
            Rational c = view.ode[b].coeff(kk);
            if (c == 0) continue;
            if (b & 1) c = -c;
            DiffOp piece = DiffOp::from_coef(u.pow(M + b - kk) * c);
            DiffOp theta = DiffOp::term(u, -1, 1);
            for (int i = 0; i < b; ++i)
                piece = piece * (theta + DiffOp::from_coef(MultiPoly::constant(1, i)));
            out += piece;
        }
    }
    return out;
}

DeterminingEquation indicial_at_infinity(const DiffOp& op, const IndicialOptions& opt) {
    DiffOp t = infinity_transform(op);
    return indicial_polynomial(t, Rational(0), opt);
}

// ---------------------------------------------------------------------------

namespace {

DiffOp theta_op(int nvars) { return DiffOp::term(MultiPoly::variable(nvars, 0), -1, 1); }

DiffOp theta_plus(int nvars, const Rational& c) {
    return theta_op(nvars) + DiffOp::from_coef(MultiPoly::constant(nvars, c));
}

}  // namespace

DiffOp family_41(int mu, int nu, int m) {
    Rational lam(m, nu);
    DiffOp op = DiffOp::from_coef(MultiPoly::constant(1, 1));
    for (int j = 0; j < mu; ++j)
        op = op * theta_plus(1, Rational(j) - Rational(j + 1, mu + 1) - lam);
    op -= DiffOp::d0(1, mu);
    return op;
}

DiffOp family_42(int mu, int nu, int m, int k) {
    Rational lam(m, nu);
    DiffOp op = theta_plus(1, Rational(mu - 1) - lam - Rational(k, mu + 1));
    for (int j = 0; j < mu; ++j)
        op = op * theta_plus(1, Rational(j) - lam - Rational(k + j + 1, mu + 1));
    op -= DiffOp::d0(1, mu) * theta_plus(1, -lam - (k + 1));
    return op;
}

DiffOp family_43(int mu, int nu, int m, int j, bool odd, const Rational& s2,
                 bool paper_constants) {
    if (mu % 2 != 0) throw std::invalid_argument("family_43: mu must be even");
    Rational lam(m, nu);
    int mh = (mu - 2) / 2;
    auto Sfac = [&](int a, int b, const Rational& shift) {
        DiffOp r = DiffOp::from_coef(MultiPoly::constant(1, 1));
        for (int l = a; l <= b; ++l)
            r = r * (theta_plus(1, shift - lam - Rational(-(mu - 1) * l + 1, mu + 1)));
        return r;
    };
    auto Tfac = [&](int a, int b, const Rational& shift) {
        DiffOp r = DiffOp::from_coef(MultiPoly::constant(1, 1));
        for (int l = a; l <= b; ++l)
            r = r * (theta_plus(1, shift - lam - Rational(2 - (mu - 1) * l, mu + 1)));
        return r;
    };
    DiffOp phi = DiffOp::term(MultiPoly::constant(1, -Rational(mu - 1, mu + 1) * s2), -1, 1);
    DiffOp lhs, rhs;
    if (!odd) {
        lhs = Sfac(0, j - 1, Rational(mu - 1 - j)) * Tfac(0, mh - 1, Rational(mh - j + 1)) *
              Sfac(j, mh, Rational(-j)) *
              theta_plus(1, -(lam + Rational(mu, mu + 1)) + (mu - 1 - j));
        Rational pref = Rational(2) * s2 / Rational(paper_constants ? nu + 2 : mu + 1);
        rhs = phi.pow(2 * mh + 1) * theta_plus(1, -(lam + Rational(1, 2) + j));
        rhs = rhs * (pref * pref);
    } else {
        int firstArg = paper_constants ? nu : mu;
        lhs = Tfac(0, j - 1, Rational(firstArg - j)) * Sfac(0, mh - 1, Rational(mh - j + 1)) *
              Tfac(j, mh, Rational(-mh)) *
              theta_plus(1, -(lam + Rational(mu - 1, mu + 1)) + (mu - j - 2));
        Rational pref = Rational(2) * s2 / Rational(mu + 1);
        rhs = phi.pow(2 * mh + 1) * theta_plus(1, -(lam + j + mh + Rational(3, 2)));
        rhs = rhs * pref;
    }
    return lhs - rhs;
}

DiffOp family_41_s(int mu, int nu, int m) {
    Rational lam(m, nu);
    DiffOp op = DiffOp::from_coef(MultiPoly::constant(mu, 1));
    DiffOp theta = DiffOp::term(MultiPoly::variable(mu, 0), -1, 1);
    for (int j = 0; j < mu; ++j)
        op = op * (theta + DiffOp::from_coef(MultiPoly::constant(
                               mu, Rational(j) - Rational(j + 1, mu + 1) - lam)));
    DiffOp psi = DiffOp::term(MultiPoly::variable(mu, 1) * Rational(-mu, mu + 1), -1, 1);
    DiffOp tail = psi.pow(mu);
    tail = (MultiPoly::variable(mu, 1) * Rational(1, mu + 1)) * tail;
    return op + tail;
}

DiffOp family_42_s(int mu, int nu, int m, int k) {
    Rational lam(m, nu);
    DiffOp theta = DiffOp::term(MultiPoly::variable(mu, 0), -1, 1);
    auto tp = [&](const Rational& c) {
        return theta + DiffOp::from_coef(MultiPoly::constant(mu, c));
    };
    DiffOp op = tp(Rational(mu - 1) - lam - Rational(k, mu + 1));
    for (int j = 0; j < mu; ++j) op = op * tp(Rational(j) - lam - Rational(k + j + 1, mu + 1));
    DiffOp psi = DiffOp::term(MultiPoly::variable(mu, 1) * Rational(-mu, mu + 1), -1, 1);
    DiffOp tail = psi.pow(mu) * tp(-lam - (k + 1));
    tail = (MultiPoly::variable(mu, 1) * Rational(1, mu + 1)) * tail;
    return op + tail;
}

ExponentSet exponents_closed_form(int mu, int nu, int m, int k, OpFamily family,
                                  SingPoint point) {
    Rational lam(m, nu);
    ExponentSet e;
    auto covered = [&](bool ok) {
        if (!ok) throw std::domain_error("exponents_closed_form: combination not covered");
    };
    switch (family) {
        case OpFamily::F41:
            covered(point == SingPoint::RootOfUnity);
            e.label = "(4.1'):omega^j";
            for (int j = 0; j <= mu - 2; ++j) e.add(j);
            e.add(lam + Rational(1, 2));
            break;
        case OpFamily::F42:
            if (point == SingPoint::RootOfUnity) {
                e.label = "(4.2'):omega^j";
                for (int j = 0; j <= mu - 1; ++j) e.add(j);
                e.add(lam + Rational(1, 2));
            } else if (point == SingPoint::Zero) {
                e.label = "(4.2'):0";
                for (int j = 0; j <= mu - 1; ++j) e.add(j);
                e.add(lam + k + 1);
            } else {
                e.label = "(4.2'):inf";
                for (int j = 0; j <= mu; ++j)
                    e.add(Rational(mu * j - (k + 1), mu + 1) - lam);
            }
            break;
        case OpFamily::F43Even: {
            covered(point == SingPoint::Zero && mu % 2 == 0);
            int mh = (mu - 2) / 2;
            e.label = "(4.3)_{2j,o}:0";
            for (int j = 0; j <= 2 * mh; ++j) e.add(j);
            e.add(lam + k + Rational(1, 2));
            break;
        }
        case OpFamily::F43Odd: {
            covered(point == SingPoint::Zero && mu % 2 == 0);
            int mh = (mu - 2) / 2;
            e.label = "(4.3)_{2j+1,o}:0";
            for (int j = 0; j <= 2 * mh; ++j) e.add(j);
            e.add(lam + k + mh + Rational(3, 2));
            break;
        }
    }
    return e;
}

FuchsSumReport fuchs_sum_audit(int mu, int nu, int m, int k) {
    FuchsSumReport rep;
    Rational total = 0;
    ExponentSet at_omega = exponents_closed_form(mu, nu, m, k, OpFamily::F42, SingPoint::RootOfUnity);
    total += at_omega.sum() * mu;
    total += exponents_closed_form(mu, nu, m, k, OpFamily::F42, SingPoint::Zero).sum();
    total += exponents_closed_form(mu, nu, m, k, OpFamily::F42, SingPoint::Infinity).sum();
    rep.brute_force = total;
    rep.printed = Rational(mu) * (mu + 1) * (mu + 1) / 2;
    rep.discrepancy = rep.brute_force != rep.printed;
    return rep;
}

// ---------------------------------------------------------------------------

std::vector<Rational> morse_sample(int mu, const Rational& a,
                                   const std::vector<Rational>& qfree) {
    if (static_cast<int>(qfree.size()) != std::max(mu - 2, 0))
        throw std::invalid_argument("morse_sample: expected mu-2 free q coefficients");
    // q = z^{mu-1} + 2a z^{mu-2} + qfree[mu-3] z^{mu-3} + ... + qfree[0]
    std::vector<Rational> q(mu, 0);
    q[mu - 1] = 1;
    if (mu >= 2) q[mu - 2] = 2 * a;
    for (int i = 0; i <= mu - 3; ++i) q[i] = qfree[i];
    // (z - a)^2 q(z)
    std::vector<Rational> f(mu + 2, 0);
    for (int i = 0; i <= mu - 1; ++i) {
        f[i] += a * a * q[i];
        f[i + 1] += -2 * a * q[i];
        f[i + 2] += q[i];
    }
    if (f[mu] != 0) throw std::logic_error("morse_sample: z^mu coefficient not cancelled");
    if (f[mu + 1] != 1) throw std::logic_error("morse_sample: not monic");
    std::vector<Rational> point(mu, 0);
    point[0] = f[0];
    for (int j = 1; j <= mu - 1; ++j) point[j] = f[j];
    return point;
}

std::vector<Rational> scale_point(int mu, const std::vector<Rational>& point, const Rational& tau) {
    std::vector<Rational> out(point.size());
    for (int j = 0; j < static_cast<int>(point.size()); ++j)
        out[j] = rat_pow(tau, mu + 1 - j) * point[j];
    return out;
}

IsoReport check_isomonodromy_factorization(int mu, int nu, int m,
                                           const std::vector<std::vector<Rational>>& points,
                                           int expected_k) {
    ConnectionSystem cs = derive_connection(mu, nu, m);
    MultiPoly delta = cs.disc;
    IsoReport rep;
    rep.all_vanishing_ok = true;
    for (const auto& pt : points) {
        IsoSample smp;
        smp.point = pt;
        std::vector<Rational> sp(pt.begin() + 1, pt.end());
        // stratum membership: Delta(., s') vanishes at s0 to order k+1
        MultiPoly dsub = delta;
        for (int j = 1; j < mu; ++j) dsub = dsub.substitute(j, pt[j]);
        auto cc = dsub.coeffs_in(0);
        UPoly<Rational> dp;
        for (auto& c : cc) dp.c.push_back(c.constant_value());
        dp.trim();
        if (vanishing_order(dp, pt[0]) != expected_k + 1)
            throw std::domain_error("isomonodromy check: sample not on claimed stratum");

        FuchsOperator P = scalar_annihilator(cs, sp);
        // the apparent factor of the scalar reduction must stay regular at
        // the stratum point for the determining equation to witness it
        MultiPoly deltaSub = delta;
        for (int j = 1; j < mu; ++j) deltaSub = deltaSub.substitute(j, sp[j - 1]);
        MultiPoly apparent;
        if (!MultiPoly::try_divide(P.leading, deltaSub, apparent))
            throw std::logic_error("isomonodromy check: leading not a discriminant multiple");
        DeterminingEquation de = indicial_polynomial(P.body, pt[0]);
        smp.kappa = de.kappa;
        smp.vanishing_ok = (de.kappa == expected_k + 1) && de.unresolved == 0;
        rep.all_vanishing_ok = rep.all_vanishing_ok && smp.vanishing_ok;
        smp.exponents = de.exponents("stratum sample");
        rep.samples.push_back(std::move(smp));
    }
    rep.exponents_agree = true;
    for (size_t i = 1; i < rep.samples.size(); ++i)
        rep.exponents_agree =
            rep.exponents_agree && rep.samples[i].exponents == rep.samples[0].exponents;
    return rep;
}

DiffOp euler_reduce_mu2(const DiffOp& op, const Rational& lambda, int k) {
    if (op.nvars() != 2) throw std::invalid_argument("euler_reduce_mu2: mu = 2 operator expected");
    Rational w = 3 * lambda + k + 1;
    MultiPoly s0 = MultiPoly::variable(2, 0);
    MultiPoly s1 = MultiPoly::variable(2, 1);
    DiffOp euler = DiffOp::from_coef(MultiPoly::constant(2, w)) -
                   DiffOp::term(s0 * Rational(3), -1, 1);
    DiffOp out(2);
    for (const auto& [key, c] : op.terms()) {
        if (key.first < 0) {
            out.add(-1, key.second, (s1 * Rational(2)) * c);
        } else if (key.first == 1) {
            DiffOp piece = c * (DiffOp::d0(2, key.second) * euler);
            out += piece;
        } else {
            throw std::invalid_argument("euler_reduce_mu2: unexpected derivative index");
        }
    }
    return out;
}

bool proportional(const DiffOp& a, const DiffOp& b) {
    if (a.is_zero() || b.is_zero()) return true;
    std::vector<DiffOp::Key> keys;
    for (const auto& [k, c] : a.terms()) keys.push_back(k);
    for (const auto& [k, c] : b.terms())
        if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
    for (size_t i = 0; i < keys.size(); ++i)
        for (size_t j = i + 1; j < keys.size(); ++j) {
            MultiPoly lhs = a.coeff(keys[i].first, keys[i].second) *
                            b.coeff(keys[j].first, keys[j].second);
            MultiPoly rhs = a.coeff(keys[j].first, keys[j].second) *
                            b.coeff(keys[i].first, keys[i].second);
            if (lhs != rhs) return false;
        }
    return true;
}

}  // namespace amu
