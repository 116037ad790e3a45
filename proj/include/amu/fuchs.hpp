#ifndef AMU_FUCHS_HPP
#define AMU_FUCHS_HPP

#include <optional>
#include <string>
#include <vector>

#include "amu/connection.hpp"
#include "amu/hp.hpp"
#include "amu/weyl.hpp"

namespace amu {

// Ordered non-commutative determinant: sum over permutations of
// sign * p(i_{n-1}, n-1) ... p(i_1, 1) p(i_0, 0), higher columns leftmost.
DiffOp nc_determinant(const std::vector<std::vector<DiffOp>>& P);

// Same sum but the rightmost factor is taken from column jcol instead of 0.
DiffOp nc_det_rightmost(const std::vector<std::vector<DiffOp>>& P, int jcol);

struct FuchsOperator {
    int mu = 0;
    int order = 0;
    DiffOp body;
    MultiPoly leading;
    bool shifted = false;
    int k = 0;
    Rational x0;
    bool sprime_specialized = false;
    std::vector<Rational> sprime;
    // leading = det S times a polynomial; false flags Maxwell-degenerate
    // families where the scalar reduction's singular support is smaller
    bool leading_is_disc_multiple = true;
};

// Order-mu annihilator of K_0 with d0^mu coefficient det S; carries
// first-order ds' terms from converting the determinant-expansion remainders.
FuchsOperator build_annihilator(const ConnectionSystem& cs);
// Pure ODE annihilator of K_0 in s0 for a specialized s'; the leading
// coefficient is det S times a possible apparent-singularity factor.
FuchsOperator scalar_annihilator(const ConnectionSystem& cs,
                                 const std::vector<Rational>& sprime, int component = 0);
FuchsOperator build_shifted_annihilator(const ConnectionSystem& cs);

// d/ds0 K_{k+j} rewritten as a first-order operator acting on K_k, for the
// base point x0 (binomial re-expansion of the monomial basis).
DiffOp conversion_op(int mu, int nu, int m, int k, const Rational& x0,
                     const std::vector<MultiPoly>& f, int j);

struct ExponentSet {
    std::string label;
    std::vector<std::pair<Rational, int>> items;  // sorted; (exponent, multiplicity)

    void add(const Rational& r, int mult = 1);
    int count() const;
    Rational sum() const;
    bool operator==(const ExponentSet& o) const { return items == o.items; }
    bool operator!=(const ExponentSet& o) const { return !(*this == o); }
    std::string str() const;
};

struct DeterminingEquation {
    int m = 0;      // operator order
    int kappa = 0;  // multiplicity of the leading coefficient at t
    bool exact = true;
    Rational t_exact;
    HComplex t_hp;
    UPoly<Rational> pi0;          // exact path
    std::vector<HComplex> pi0_hp; // hp path, ascending coefficients
    std::vector<std::pair<Rational, int>> roots;
    int unresolved = 0;
    std::vector<std::pair<Rational, Rational>> resonances;

    ExponentSet exponents(const std::string& label) const;
};

struct IndicialOptions {
    // dt/ds_j along the local equation of the singular locus, needed when the
    // operator carries first-order ds' terms.
    std::optional<std::vector<Rational>> dtds;
    std::optional<std::vector<HComplex>> dtds_hp;
    double threshold = 1e-25;   // relative vanishing threshold (hp path)
    int denom_lcm = 0;          // candidate root denominators (hp path); 0 = derive from context
};

DeterminingEquation indicial_polynomial(const DiffOp& op, const Rational& t,
                                        const IndicialOptions& opt = {});
DeterminingEquation indicial_polynomial_hp(const DiffOp& op, const HComplex& t,
                                           const IndicialOptions& opt);
// Exponents at infinity of a pure operator with univariate coefficients,
// computed on the u = 1/t chart in the u^rho convention.
DeterminingEquation indicial_at_infinity(const DiffOp& op, const IndicialOptions& opt = {});

DiffOp infinity_transform(const DiffOp& op);

// ---------------------------------------------------------------------------
// Specialized operator families after the t0/t1 rescaling (one variable t0),
// normalized so the finite singular points sit at the mu-th roots of unity
// (and 0 for the shifted family).

DiffOp family_41(int mu, int nu, int m);
DiffOp family_42(int mu, int nu, int m, int k);
// mu even; j is the index of the annihilated K_{2j} (resp. K_{2j+1}). The
// printed constants mix two denominators; paper_constants selects between the
// text as printed and the mu+1 reading. s2 is the specialized parameter value.
DiffOp family_43(int mu, int nu, int m, int j, bool odd, const Rational& s2,
                 bool paper_constants);

// The same operators before rescaling, in the s variables (s' = (s1,0,..,0)).
DiffOp family_41_s(int mu, int nu, int m);
DiffOp family_42_s(int mu, int nu, int m, int k);

enum class OpFamily { F41, F42, F43Even, F43Odd };
enum class SingPoint { RootOfUnity, Zero, Infinity };

ExponentSet exponents_closed_form(int mu, int nu, int m, int k, OpFamily family,
                                  SingPoint point);

struct FuchsSumReport {
    Rational brute_force;  // summed from the exponent tables
    Rational printed;      // mu (mu+1)^2 / 2
    bool discrepancy = false;
};
FuchsSumReport fuchs_sum_audit(int mu, int nu, int m, int k);

// ---------------------------------------------------------------------------
// Stratum sampling checks.

struct IsoSample {
    std::vector<Rational> point;  // (s0, s1, .., s_{mu-1}) on the stratum
    int kappa = 0;
    bool vanishing_ok = false;
    ExponentSet exponents;
};

struct IsoReport {
    std::vector<IsoSample> samples;
    bool exponents_agree = false;
    bool all_vanishing_ok = false;
};

IsoReport check_isomonodromy_factorization(int mu, int nu, int m,
                                           const std::vector<std::vector<Rational>>& points,
                                           int expected_k);

// Rational point of the Morse stratum: F + s0 = (z-a)^2 q(z), q monic with
// forced zero z^mu coefficient; qfree are the free low coefficients
// q_0..q_{mu-3}.
std::vector<Rational> morse_sample(int mu, const Rational& a,
                                   const std::vector<Rational>& qfree);

std::vector<Rational> scale_point(int mu, const std::vector<Rational>& point, const Rational& tau);

// Rewrites ds1 terms of a mu=2 operator via the weighted Euler identity for
// the x0 = 0 integrand family; result is 2*s1*(input) as a pure operator.
DiffOp euler_reduce_mu2(const DiffOp& op, const Rational& lambda, int k);

// a and b proportional over the polynomial ring (same support, cross products
// of coefficients equal).
bool proportional(const DiffOp& a, const DiffOp& b);

}  // namespace amu

#endif
