#include "amu/bounds.hpp"

#include <sstream>
#include <stdexcept>

namespace amu {

int dulac_multiplicity(const DulacExpansion& e) {
    bool found = false;
    Rational rho1;
    for (const auto& t : e.terms) {
        if (!t.certainly_nonzero()) continue;
        if (!found || t.rho < rho1) rho1 = t.rho;
        found = true;
    }
    if (!found)
        throw std::domain_error("dulac_multiplicity: no certainly-nonzero term (indeterminate)");
    int k1 = 0;
    for (const auto& t : e.terms)
        if (t.certainly_nonzero() && t.rho == rho1) k1 = std::max(k1, t.k);
    Int fl = floor_int(rho1);
    long long fi = fl.convert_to<long long>();
    return (k1 + 1) * static_cast<int>(fi + 1);
}

namespace {

long long floor_ll(const Rational& x) { return floor_int(x).convert_to<long long>(); }

void validate(const BoundQuery& q) {
    if (q.mu < 2 || q.nu < 2 || q.K < 0 || q.k1 < 0 || q.k1 > q.K)
        throw std::invalid_argument("zero_bound: query out of range");
}

}  // namespace

BoundResult zero_bound(const BoundQuery& q) {
    validate(q);
    BoundResult r;
    Rational lam(q.m, q.nu);
    if (q.point == PointType::Regular) {
        r.bound = q.mu + q.K;
        r.formula = "regular: mu + K";
        return r;
    }
    if (q.mu % 2 == 0) {
        r.bound = static_cast<int>(2 * floor_ll(lam + Rational(q.K + q.mu, 2)));
        r.formula = "branch-even: 2*floor(m/nu + (K+mu)/2)";
        r.rho_valid = true;
        r.rho = classify_exponent_bound(q.mu, q.nu, q.m, q.k1, Stratum::DM1);
        return r;
    }
    if (q.k1 != 0)
        throw std::domain_error("zero_bound: mu odd at a branch point requires k1 = 0");
    long long second = 2 * floor_ll(lam + Rational(3, 2));
    r.bound = static_cast<int>(std::max<long long>(q.mu - 1, second));
    r.formula = "branch-odd: max(mu-1, 2*floor(m/nu + 3/2))";
    r.rho_valid = true;
    r.rho = classify_exponent_bound(q.mu, q.nu, q.m, q.k1, Stratum::DMminus);
    return r;
}

Rational classify_exponent_bound(int mu, int nu, int m, int k1, Stratum stratum) {
    Rational lam(m, nu);
    if (stratum == Stratum::DMminus) return lam + Rational(1, 2);
    if (mu % 2 != 0)
        throw std::domain_error("classify_exponent_bound: mu odd not covered on the base-point stratum");
    if (k1 % 2 == 0) return lam + Rational(k1 + 1, 2);
    return lam + Rational(k1 + mu, 2);
}

int multiplicity_estimate_from_rho(const Rational& rho) {
    if (is_integer(rho)) return static_cast<int>(2 * numerator(rho).convert_to<long long>());
    return static_cast<int>(floor_int(rho).convert_to<long long>() + 1);
}

}  // namespace amu
