#include "amu/weyl.hpp"

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <stdexcept>

namespace amu {

DiffOp DiffOp::from_coef(const MultiPoly& c) {
    DiffOp op(c.nvars() < 0 ? -1 : c.nvars());
    if (!c.is_zero()) op.t_[{-1, 0}] = c;
    return op;
}

DiffOp DiffOp::d0(int nvars, int power) {
    DiffOp op(nvars);
    op.t_[{-1, power}] = MultiPoly::constant(nvars, 1);
    return op;
}

DiffOp DiffOp::dsp(int nvars, int j) {
    if (j < 1 || j >= nvars) throw std::invalid_argument("DiffOp: ds' index out of range");
    DiffOp op(nvars);
    op.t_[{j, 0}] = MultiPoly::constant(nvars, 1);
    return op;
}

DiffOp DiffOp::term(const MultiPoly& c, int dspIndex, int d0Power) {
    DiffOp op(c.nvars());
    op.add(dspIndex, d0Power, c);
    return op;
}

void DiffOp::add(int dspIndex, int d0Power, const MultiPoly& c) {
    if (c.is_zero()) return;
    if (nvars_ < 0) nvars_ = c.nvars();
    auto key = Key{dspIndex, d0Power};
    auto it = t_.find(key);
    if (it == t_.end()) {
        t_[key] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

int DiffOp::order() const {
    int o = -1;
    for (const auto& [k, c] : t_) o = std::max(o, k.second + (k.first >= 0 ? 1 : 0));
    return o;
}

bool DiffOp::pure() const {
    for (const auto& [k, c] : t_)
        if (k.first >= 0) return false;
    return true;
}

MultiPoly DiffOp::coeff(int dspIndex, int d0Power) const {
    auto it = t_.find({dspIndex, d0Power});
    if (it == t_.end()) return MultiPoly(std::max(nvars_, 0));
    return it->second;
}

void DiffOp::merge_nvars(DiffOp& a, const DiffOp& b) {
    if (b.nvars_ < 0) return;
    if (a.nvars_ < 0) {
        a.nvars_ = b.nvars_;
        return;
    }
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("DiffOp: variable-count mismatch");
}

DiffOp DiffOp::operator-() const {
    DiffOp r = *this;
    for (auto& [k, c] : r.t_) c = -c;
    return r;
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
    merge_nvars(*this, o);
    for (const auto& [k, c] : o.t_) add(k.first, k.second, c);
    return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) {
    merge_nvars(*this, o);
    for (const auto& [k, c] : o.t_) add(k.first, k.second, -c);
    return *this;
}

DiffOp operator*(const MultiPoly& c, const DiffOp& a) {
    DiffOp r(a.nvars_);
    for (const auto& [k, v] : a.t_) r.add(k.first, k.second, c * v);
    return r;
}

DiffOp operator*(const DiffOp& a, const Rational& c) {
    DiffOp r = a;
    if (c == 0) return DiffOp::zero(a.nvars_);
    for (auto& [k, v] : r.t_) v *= c;
    return r;
}

// (c1 ds_{a1} d0^b1) * (c2 ds_{a2} d0^b2), normal-ordered.
void DiffOp::mul_term(DiffOp& out, const MultiPoly& c1, int a1, int b1,
                      const MultiPoly& c2, int a2, int b2) {
    if (a1 >= 0 && a2 >= 0)
        throw std::domain_error("DiffOp: unsupported mixed-derivative product shape");
    // move d0^b1 across c2, then (when present) ds_{a1} across the result
    Rational binom = 1;
    MultiPoly dc = c2;
    for (int r = 0; r <= b1; ++r) {
        if (r > 0) {
            binom = binom * (b1 - r + 1) / r;
            dc = dc.derivative(0);
            if (dc.is_zero()) break;
        }
        MultiPoly piece = (binom == 1) ? dc : dc * binom;
        int d0 = (b1 - r) + b2;
        if (a1 >= 0) {
            out.add(a1, d0, c1 * piece);
            out.add(-1, d0, c1 * piece.derivative(a1));
        } else {
            out.add(a2, d0, c1 * piece);
        }
    }
}

DiffOp operator*(const DiffOp& a, const DiffOp& b) {
    DiffOp r(a.nvars_);
    DiffOp::merge_nvars(r, b);
    for (const auto& [ka, ca] : a.t_)
        for (const auto& [kb, cb] : b.t_)
            DiffOp::mul_term(r, ca, ka.first, ka.second, cb, kb.first, kb.second);
    return r;
}

bool DiffOp::operator==(const DiffOp& o) const {
    if (t_.empty() && o.t_.empty()) return true;
    if (nvars_ >= 0 && o.nvars_ >= 0 && nvars_ != o.nvars_) return false;
    return t_ == o.t_;
}

DiffOp DiffOp::pow(int e) const {
    if (e < 0) throw std::invalid_argument("DiffOp: negative power");
    DiffOp r = DiffOp::from_coef(MultiPoly::constant(std::max(nvars_, 0), 1));
    for (int i = 0; i < e; ++i) r = r * (*this);
    return r;
}

DiffOp DiffOp::specialize_sprime(const std::vector<Rational>& sprime) const {
    if (nvars_ >= 1 && static_cast<int>(sprime.size()) != nvars_ - 1)
        throw std::invalid_argument("DiffOp: s' size mismatch");
    DiffOp r(nvars_);
    for (const auto& [k, c] : t_) {
        MultiPoly v = c;
        for (int j = 1; j < nvars_; ++j) v = v.substitute(j, sprime[j - 1]);
        r.add(k.first, k.second, v);
    }
    return r;
}

DiffOp::OdeView DiffOp::ode_view() const {
    OdeView view;
    view.order = std::max(order(), 0);
    view.ode.assign(view.order + 1, UPoly<Rational>());
    for (const auto& [k, c] : t_) {
        for (int j = 1; j < nvars_; ++j)
            if (c.depends_on(j))
                throw std::domain_error("DiffOp: coefficients not univariate in s0");
        auto cs = c.coeffs_in(0);
        UPoly<Rational> u;
        for (auto& piece : cs) u.c.push_back(piece.constant_value());
        u.trim();
        if (k.first < 0) {
            view.ode[k.second] = view.ode[k.second] + u;
        } else {
            auto& vec = view.mixed[k.first];
            if (vec.empty()) vec.assign(view.order + 1, UPoly<Rational>());
            vec[k.second] = vec[k.second] + u;
        }
    }
    return view;
}

std::string DiffOp::str(const std::vector<std::string>& names) const {
    if (t_.empty()) return "0";
    auto var_name = [&](int i) {
        if (i < static_cast<int>(names.size())) return names[i];
        return "s" + std::to_string(i);
    };
    std::string out;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        if (!out.empty()) out += " + ";
        out += "(" + it->second.str(names) + ")";
        if (it->first.first >= 0) out += "*D" + var_name(it->first.first);
        if (it->first.second > 0) {
            out += "*D" + var_name(0);
            if (it->first.second > 1) out += "^" + std::to_string(it->first.second);
        }
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const DiffOp& op) { return os << op.str(); }

// ---------------------------------------------------------------------------

LocalExpansion LocalExpansion::power(const Rational& t, const Rational& rho, int order) {
    LocalExpansion e;
    e.t = t;
    e.rho = rho;
    e.order = order;
    e.a.assign(order, std::vector<Rational>{});
    if (order > 0) e.a[0] = {1};
    return e;
}

Rational LocalExpansion::coeff(int j, int k) const {
    if (j < 0 || j >= order) throw std::out_of_range("LocalExpansion: level not determined");
    if (k < 0 || k >= static_cast<int>(a[j].size())) return 0;
    return a[j][k];
}

bool LocalExpansion::known_zero() const {
    for (const auto& lv : a)
        for (const auto& c : lv)
            if (c != 0) return false;
    return true;
}

int LocalExpansion::max_log() const {
    int m = 0;
    for (const auto& lv : a) m = std::max(m, static_cast<int>(lv.size()) - 1);
    return m;
}

namespace {

// d/ds0 of an expansion; keeps the level count, shifts rho by -1.
LocalExpansion expansion_derivative(const LocalExpansion& in) {
    LocalExpansion out = in;
    out.rho = in.rho - 1;
    for (auto& lv : out.a) std::fill(lv.begin(), lv.end(), Rational(0));
    for (int j = 0; j < in.order; ++j) {
        Rational sigma = in.rho + j;
        for (int k = 0; k < static_cast<int>(in.a[j].size()); ++k) {
            Rational v = in.a[j][k];
            if (v == 0) continue;
            auto& lv = out.a[j];
            if (static_cast<int>(lv.size()) < k + 1) lv.resize(k + 1, Rational(0));
            lv[k] += sigma * v;
            if (k >= 1) lv[k - 1] += Rational(k) * v;
        }
    }
    return out;
}

}  // namespace

LocalExpansion apply_op(const DiffOp& op, const LocalExpansion& in) {
    if (!op.pure()) throw std::domain_error("apply_op: operator must be pure in d/ds0");
    int maxb = 0;
    for (const auto& [k, c] : op.terms()) maxb = std::max(maxb, k.second);

    LocalExpansion out;
    out.t = in.t;
    out.rho = in.rho - maxb;

    // determined output levels: min over terms/monomials of (maxb - b + d) + order
    int out_order = -1;
    struct Piece {
        int b;
        std::vector<Rational> shifted;  // coefficient of x^d in c(t + x)
    };
    std::vector<Piece> pieces;
    for (const auto& [k, c] : op.terms()) {
        Piece p;
        p.b = k.second;
        for (int j = 1; j < std::max(op.nvars(), 1); ++j)
            if (c.depends_on(j)) throw std::domain_error("apply_op: coefficient depends on s'");
        auto cs = c.coeffs_in(0);
        UPoly<Rational> u;
        for (auto& piece : cs) u.c.push_back(piece.constant_value());
        u.trim();
        u = u.shifted(in.t);
        p.shifted = u.c;
        for (int d = 0; d < static_cast<int>(p.shifted.size()); ++d) {
            if (p.shifted[d] == 0) continue;
            int upper = (maxb - p.b + d) + in.order;
            out_order = (out_order < 0) ? upper : std::min(out_order, upper);
        }
        pieces.push_back(std::move(p));
    }
    if (out_order < 0) {
        // zero operator
        out.order = in.order;
        out.a.assign(out.order, {});
        return out;
    }
    if (out_order <= 0)
        throw std::domain_error("apply_op: truncation order too small to determine any coefficient");
    out.order = out_order;
    out.a.assign(out.order, {});

    for (const auto& p : pieces) {
        LocalExpansion der = in;
        for (int i = 0; i < p.b; ++i) der = expansion_derivative(der);
        // der has exponent offset in.rho - b at level j
        for (int d = 0; d < static_cast<int>(p.shifted.size()); ++d) {
            const Rational& gd = p.shifted[d];
            if (gd == 0) continue;
            int base = maxb - p.b + d;  // out level of der level 0
            for (int j = 0; j < der.order; ++j) {
                int L = base + j;
                if (L >= out.order) break;
                for (int k = 0; k < static_cast<int>(der.a[j].size()); ++k) {
                    Rational v = der.a[j][k];
                    if (v == 0) continue;
                    auto& lv = out.a[L];
                    if (static_cast<int>(lv.size()) < k + 1) lv.resize(k + 1, Rational(0));
                    lv[k] += gd * v;
                }
            }
        }
    }
    return out;
}

LocalExpansion frobenius_series(const DiffOp& op, const Rational& t, const Rational& rho,
                                int order) {
    if (!op.pure()) throw std::domain_error("frobenius_series: operator must be pure");
    // gamma[b][d]: coefficient of x^d in c_b(t + x)
    std::vector<std::vector<Rational>> gamma;
    int m = std::max(op.order(), 0);
    gamma.assign(m + 1, {});
    for (const auto& [k, c] : op.terms()) {
        auto cs = c.coeffs_in(0);
        UPoly<Rational> u;
        for (auto& piece : cs) u.c.push_back(piece.constant_value());
        u.trim();
        u = u.shifted(t);
        gamma[k.second] = u.c;
    }
    int m0 = INT32_MAX;
    for (int b = 0; b <= m; ++b)
        for (int d = 0; d < static_cast<int>(gamma[b].size()); ++d)
            if (gamma[b][d] != 0) m0 = std::min(m0, d - b);
    if (m0 == INT32_MAX) throw std::domain_error("frobenius_series: zero operator");

    auto f = [&](int ell, const Rational& sigma) {
        Rational acc = 0;
        for (int b = 0; b <= m; ++b) {
            int d = m0 + ell + b;
            if (d < 0 || d >= static_cast<int>(gamma[b].size())) continue;
            if (gamma[b][d] == 0) continue;
            Rational fall = 1;
            for (int i = 0; i < b; ++i) fall *= sigma - i;
            acc += gamma[b][d] * fall;
        }
        return acc;
    };

    if (f(0, rho) != 0)
        throw std::domain_error("frobenius_series: rho is not an indicial root");
    LocalExpansion s;
    s.t = t;
    s.rho = rho;
    s.order = order;
    s.a.assign(order, std::vector<Rational>{});
    if (order > 0) s.a[0] = {1};
    std::vector<Rational> coef(order, 0);
    coef[0] = 1;
    for (int L = 1; L < order; ++L) {
        Rational rhs = 0;
        for (int k = 0; k < L; ++k) rhs += coef[k] * f(L - k, rho + k);
        Rational f0 = f(0, rho + L);
        if (f0 == 0) throw std::domain_error("frobenius_series: resonance at level " + std::to_string(L));
        coef[L] = -rhs / f0;
        s.a[L] = {coef[L]};
    }
    return s;
}

}  // namespace amu
