#ifndef AMU_WEYL_HPP
#define AMU_WEYL_HPP

#include <map>
#include <utility>
#include <vector>

#include "amu/multipoly.hpp"
#include "amu/upoly.hpp"

namespace amu {

// Element of the algebra spanned by terms  c(s) * d/ds_j * (d/ds_0)^b  with
// polynomial coefficients, at most one first-order d/ds_j (j >= 1) per term.
// Terms are kept in normal order (derivatives on the right), merged on the
// key (j, b), so equality is structural.
class DiffOp {
public:
    using Key = std::pair<int, int>;  // (dsp index or -1, ds0 power)

    DiffOp() : nvars_(-1) {}
    explicit DiffOp(int nvars) : nvars_(nvars) {}

    static DiffOp zero(int nvars) { return DiffOp(nvars); }
    static DiffOp from_coef(const MultiPoly& c);
    static DiffOp d0(int nvars, int power = 1);
    static DiffOp dsp(int nvars, int j);
    // c(s) * d/ds_j^(j>=1 optional) * d0^b
    static DiffOp term(const MultiPoly& c, int dspIndex, int d0Power);

    int nvars() const { return nvars_; }
    bool is_zero() const { return t_.empty(); }
    const std::map<Key, MultiPoly>& terms() const { return t_; }

    void add(int dspIndex, int d0Power, const MultiPoly& c);

    // max d0 power + (1 if a ds' factor is present)
    int order() const;
    bool pure() const;  // no ds' terms
    MultiPoly coeff(int dspIndex, int d0Power) const;

    DiffOp operator-() const;
    DiffOp& operator+=(const DiffOp& o);
    DiffOp& operator-=(const DiffOp& o);
    friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
    friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
    friend DiffOp operator*(const DiffOp& a, const DiffOp& b);  // normal-ordered product
    friend DiffOp operator*(const MultiPoly& c, const DiffOp& a);
    friend DiffOp operator*(const DiffOp& a, const Rational& c);
    friend DiffOp operator*(const Rational& c, DiffOp a) { return a * c; }
    bool operator==(const DiffOp& o) const;
    bool operator!=(const DiffOp& o) const { return !(*this == o); }

    DiffOp pow(int e) const;

    // Substitute rational values for s_1..s_{n-1} in every coefficient.
    // The ds' factors themselves are untouched.
    DiffOp specialize_sprime(const std::vector<Rational>& sprime) const;

    // Coefficients as univariate polynomials in s0, for operators whose
    // coefficients involve no other variable. ode[b] is the coefficient of
    // d0^b of the pure part; mixed[j][b] the coefficient of ds_j * d0^b.
    struct OdeView {
        int order = 0;
        std::vector<UPoly<Rational>> ode;
        std::map<int, std::vector<UPoly<Rational>>> mixed;
    };
    OdeView ode_view() const;

    std::string str(const std::vector<std::string>& names = {}) const;

private:
    static void merge_nvars(DiffOp& a, const DiffOp& b);
    static void mul_term(DiffOp& out, const MultiPoly& c1, int a1, int b1,
                         const MultiPoly& c2, int a2, int b2);

    int nvars_;
    std::map<Key, MultiPoly> t_;
};

std::ostream& operator<<(std::ostream& os, const DiffOp& op);

// ---------------------------------------------------------------------------
// Exact local expansions  sum_{j<order, k<=maxlog} a[j][k] (s0-t)^(rho+j) log^k(s0-t)

struct LocalExpansion {
    Rational t;
    Rational rho;
    int order = 0;  // number of determined levels j = 0..order-1
    std::vector<std::vector<Rational>> a;

    static LocalExpansion power(const Rational& t, const Rational& rho, int order);
    Rational coeff(int j, int k) const;
    bool known_zero() const;
    int max_log() const;
};

// Apply a pure operator (coefficients univariate in s0) to an expansion.
// The result offset is in.rho - (max d0 power); levels beyond the input's
// truncation are dropped, and an error is raised if nothing is determined.
LocalExpansion apply_op(const DiffOp& op, const LocalExpansion& in);

// Frobenius series of a pure operator at t with exponent rho, coefficients
// solved order by order. Throws if a resonance f0(rho+L) = 0 blocks a level.
LocalExpansion frobenius_series(const DiffOp& op, const Rational& t, const Rational& rho,
                                int order);

}  // namespace amu

#endif
