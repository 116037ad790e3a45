#ifndef AMU_CONNECTION_HPP
#define AMU_CONNECTION_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "amu/polymat.hpp"
#include "amu/upoly.hpp"

namespace amu {

// One entry of the right-hand side vector a: (lam*lambda + cst) * K_{kIndex}.
struct RhsTerm {
    int kIndex = -1;
    Rational lam;
    Rational cst;
};

// Matrix form Sigma * b = a of the raw differentiation / integration-by-parts
// relations between the 2*mu+1 period integrals.
struct SigmaSystem {
    int mu = 0;
    Rational lambda;
    PolyMat sigma;             // (2mu+1) x (2mu+1)
    std::vector<RhsTerm> rhs;  // per row
};

SigmaSystem build_sigma(int mu, const Rational& lambda);

// s0-direction connection S dK/ds0 = (L + V) K, entries exact. The shifted
// variant (size mu+1) carries the base point x0 and index shift k.
struct ConnectionSystem {
    int mu = 0, nu = 0, m = 0;
    Rational lambda;
    int size = 0;
    PolyMat S;                    // size x size, variables s0..s_{mu-1}
    std::vector<Rational> L;      // diagonal, L[i] = lambda + weight_i
    PolyMat V;
    MultiPoly disc;               // det S (unshifted); det S~ for the shifted variant
    bool shifted = false;
    int k = 0;
    Rational x0;
    std::vector<MultiPoly> f;     // Taylor coefficients f_0..f_mu at x0 (shifted)
    MultiPoly stilde0;            // -F(x0, s') (shifted)
    bool sprime_symbolic = false;
    std::vector<Rational> sprime; // specialized values (shifted, when not symbolic)

    Eigen::MatrixXcd eval_S(const std::vector<std::complex<double>>& s) const;
    Eigen::MatrixXcd eval_LV(const std::vector<std::complex<double>>& s) const;
};

ConnectionSystem derive_connection(int mu, int nu, int m);
ConnectionSystem derive_shifted_connection(int mu, int nu, int m, int k, const Rational& x0,
                                           const std::vector<Rational>& sprime);
// Internal variant keeping s' symbolic (desk scale: mu <= 3 recommended).
ConnectionSystem derive_shifted_connection_symbolic(int mu, int nu, int m, int k,
                                                    const Rational& x0);

// det S, monic of degree mu in s0, quasihomogeneous of weight mu(mu+1).
MultiPoly discriminant(int mu);

// Substitute rational values for s1..s_{mu-1} throughout the system.
ConnectionSystem specialize_connection(const ConnectionSystem& cs,
                                       const std::vector<Rational>& sprime);

struct LogVectorField {
    int index = 0;
    std::vector<MultiPoly> coeffs;  // coefficient of d/ds_j
};

std::vector<LogVectorField> log_fields(const ConnectionSystem& cs);

// xi(p) = sum_j coeffs[j] * dp/ds_j
MultiPoly apply_field(const LogVectorField& xi, const MultiPoly& p);

struct StratumLabel {
    int k = -1;        // stratum depth; -1 off the discriminant
    int rank = 0;      // rank of S at the point (the witness)
    bool maxwell = false;
};

// Exact stratum query at a rational point with Delta(point) = 0.
StratumLabel stratum_of(int mu, const std::vector<Rational>& point);
// Numeric query; tol is the relative singular-value threshold.
StratumLabel stratum_of(int mu, const std::vector<std::complex<double>>& point,
                        double tol = 1e-9);

// F(z,s') + s0 with rational s substituted, as a univariate polynomial in z.
UPoly<Rational> fiber_polynomial(int mu, const std::vector<Rational>& point);

}  // namespace amu

#endif
