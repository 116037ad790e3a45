#include "amu/multipoly.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace amu {

MultiPoly::MultiPoly(int nvars) : nvars_(nvars) {
    if (nvars < 0) throw std::invalid_argument("MultiPoly: negative variable count");
}

MultiPoly MultiPoly::constant(int nvars, const Rational& c) {
    MultiPoly p(nvars);
    if (c != 0) p.terms_[Expo(nvars, 0)] = c;
    return p;
}

MultiPoly MultiPoly::variable(int nvars, int idx) {
    if (idx < 0 || idx >= nvars) throw std::invalid_argument("MultiPoly: variable index out of range");
    MultiPoly p(nvars);
    Expo e(nvars, 0);
    e[idx] = 1;
    p.terms_[e] = 1;
    return p;
}

bool MultiPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const Expo& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
}

Rational MultiPoly::constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw std::domain_error("MultiPoly: not a constant");
    return terms_.begin()->second;
}

void MultiPoly::add_term(const Expo& e, const Rational& c) {
    if (nvars_ < 0) throw std::domain_error("MultiPoly: add_term on placeholder");
    if (static_cast<int>(e.size()) != nvars_)
        throw std::invalid_argument("MultiPoly: exponent size mismatch");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (c != 0) terms_[e] = c;
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void MultiPoly::merge_nvars(MultiPoly& a, const MultiPoly& b) {
    if (b.nvars_ < 0) return;
    if (a.nvars_ < 0) {
        a.nvars_ = b.nvars_;
        return;
    }
    if (a.nvars_ != b.nvars_)
        throw std::invalid_argument("MultiPoly: variable-count mismatch");
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    merge_nvars(*this, o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    merge_nvars(*this, o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r = a;  // adopt/check nvars
    MultiPoly::merge_nvars(r, b);
    r.terms_.clear();
    if (a.terms_.empty() || b.terms_.empty()) return r;
    MultiPoly::Expo e(r.nvars_ < 0 ? 0 : r.nvars_, 0);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
    if (terms_.empty() && o.terms_.empty()) return true;
    if (nvars_ >= 0 && o.nvars_ >= 0 && nvars_ != o.nvars_) return false;
    return terms_ == o.terms_;
}

MultiPoly MultiPoly::pow(int e) const {
    if (e < 0) throw std::invalid_argument("MultiPoly: negative power");
    MultiPoly r = constant(nvars_ < 0 ? 0 : nvars_, 1);
    MultiPoly b = *this;
    while (e) {
        if (e & 1) r = r * b;
        if (e >>= 1) b = b * b;
    }
    return r;
}

MultiPoly MultiPoly::derivative(int var) const {
    if (nvars_ < 0) return MultiPoly();
    if (var < 0 || var >= nvars_) throw std::invalid_argument("MultiPoly: derivative index");
    MultiPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Expo f = e;
        f[var] -= 1;
        r.add_term(f, c * e[var]);
    }
    return r;
}

MultiPoly MultiPoly::substitute(int var, const Rational& value) const {
    if (nvars_ < 0) return MultiPoly();
    if (var < 0 || var >= nvars_) throw std::invalid_argument("MultiPoly: substitute index");
    MultiPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
        Expo f = e;
        f[var] = 0;
        r.add_term(f, c * rat_pow(value, e[var]));
    }
    return r;
}

int MultiPoly::degree(int var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
}

int MultiPoly::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
        int t = 0;
        for (int k : e) t += k;
        d = std::max(d, t);
    }
    return d;
}

bool MultiPoly::depends_on(int var) const {
    for (const auto& [e, c] : terms_)
        if (e[var] > 0) return true;
    return false;
}

std::vector<MultiPoly> MultiPoly::coeffs_in(int var) const {
    std::vector<MultiPoly> out;
    if (nvars_ < 0) return out;
    int d = degree(var);
    if (d < 0) return out;
    out.assign(d + 1, MultiPoly(nvars_));
    for (const auto& [e, c] : terms_) {
        Expo f = e;
        int k = f[var];
        f[var] = 0;
        out[k].add_term(f, c);
    }
    return out;
}

MultiPoly MultiPoly::from_coeffs_in(int nvars, int var, const std::vector<MultiPoly>& c) {
    MultiPoly r(nvars);
    MultiPoly v = variable(nvars, var);
    for (size_t k = 0; k < c.size(); ++k) {
        if (c[k].is_zero()) continue;
        r += c[k] * v.pow(static_cast<int>(k));
    }
    return r;
}

bool MultiPoly::weighted_degree(const std::vector<int>& w, long long& deg) const {
    if (static_cast<int>(w.size()) != std::max(nvars_, 0))
        throw std::invalid_argument("MultiPoly: weight vector size");
    bool first = true;
    for (const auto& [e, c] : terms_) {
        long long d = 0;
        for (size_t i = 0; i < e.size(); ++i) d += static_cast<long long>(e[i]) * w[i];
        if (first) {
            deg = d;
            first = false;
        } else if (d != deg) {
            return false;
        }
    }
    return !first;
}

bool MultiPoly::try_divide(const MultiPoly& a, const MultiPoly& b, MultiPoly& q) {
    if (b.is_zero()) throw std::domain_error("MultiPoly: division by zero");
    MultiPoly r = a;
    merge_nvars(r, b);
    int n = r.nvars_ < 0 ? 0 : r.nvars_;
    q = MultiPoly(n);
    const auto& ltb = *b.terms_.rbegin();
    Expo e(n, 0);
    while (!r.terms_.empty()) {
        const auto& ltr = *r.terms_.rbegin();
        bool divisible = true;
        for (int i = 0; i < n; ++i) {
            e[i] = ltr.first[i] - ltb.first[i];
            if (e[i] < 0) divisible = false;
        }
        if (!divisible) return false;
        Rational c = ltr.second / ltb.second;
        MultiPoly t(n);
        t.terms_[e] = c;
        q += t;
        r -= t * b;
    }
    return true;
}

void MultiPoly::require_point(int npoint) const {
    if (nvars_ >= 0 && npoint != nvars_)
        throw std::invalid_argument("MultiPoly: evaluation point size mismatch");
}

std::string MultiPoly::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    auto var_name = [&](int i) {
        if (i < static_cast<int>(names.size())) return names[i];
        return "s" + std::to_string(i);
    };
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Rational c = it->second;
        Rational ac = rat_abs(c);
        if (out.empty())
            out += (c < 0) ? "-" : "";
        else
            out += (c < 0) ? " - " : " + ";
        std::string mono;
        for (size_t i = 0; i < it->first.size(); ++i) {
            int p = it->first[i];
            if (p == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += var_name(static_cast<int>(i));
            if (p > 1) mono += "^" + std::to_string(p);
        }
        if (mono.empty()) {
            out += to_string(ac);
        } else {
            if (ac != 1) out += to_string(ac) + "*";
            out += mono;
        }
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.str(); }

}  // namespace amu
