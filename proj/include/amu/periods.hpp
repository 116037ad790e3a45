#ifndef AMU_PERIODS_HPP
#define AMU_PERIODS_HPP

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "amu/bounds.hpp"
#include "amu/connection.hpp"
#include "amu/weyl.hpp"

namespace amu {

using Cx = std::complex<double>;

struct CurveConfig {
    int mu = 2, nu = 2, m = 1;
    std::vector<Cx> s;  // (s0, s1, .., s_{mu-1})

    Rational lambda_q() const { return Rational(m, nu); }
    double lambda() const { return to_double(lambda_q()); }
};

// Fiber roots of F(z,s') + s0 with certified residuals and collision clusters.
struct FiberRoots {
    std::vector<Cx> roots;
    double max_residual = 0;
    std::vector<std::vector<int>> clusters;  // indices, size >= 2 only
    double cluster_diameter = 0;
};

FiberRoots roots_of_fiber(const CurveConfig& cfg, double tol = 1e-9);
UPoly<Cx> fiber_upoly(const CurveConfig& cfg);
std::vector<Cx> critical_values(const CurveConfig& cfg);  // s0 values on D for fixed s'
// reorder `roots` to match `ref` greedily by distance
std::vector<Cx> match_roots(const std::vector<Cx>& ref, const std::vector<Cx>& roots);

struct CyclePath {
    int a = 0, b = 1;
    enum Kind { Segment, Pochhammer } kind = Segment;
};

struct QuadOptions {
    double tol = 1e-11;
    double clearance = 0.05;  // relative to |b - a|
    int max_nodes = 512;
    double loop_radius = 0.25;  // relative circle radius for double loops
};

// (z - center)^power factors multiplying (F + s0)^(lambda + shift)
struct Monomial {
    Cx center{0.0, 0.0};
    int power = 0;
};

struct PeriodSample {
    Cx value{0.0, 0.0};
    double error = 0;
    int i = 0;
    int lambda_shift = 0;
    CyclePath cycle;
    bool branch_certified = false;
};

// Path in the complex plane made of lines and arcs.
struct PathPiece {
    bool arc = false;
    Cx z0, z1;      // line
    Cx center;      // arc
    double radius = 0, th0 = 0, th1 = 0;

    Cx at(double t) const;
    Cx dz(double t) const;
    static PathPiece line(Cx a, Cx b);
    static PathPiece circle(Cx c, double r, double th0, double th1);
};

// Quadrature context for one fiber and one cycle: holds the integrand branch
// bookkeeping so that all powers lambda + shift share one continued argument.
class CycleContext {
public:
    CycleContext(const CurveConfig& cfg, const CyclePath& cycle, const QuadOptions& opt);

    // integral of prod_j (z-c_j)^{p_j} (F+s0)^(lambda+shift) dz over the cycle
    PeriodSample integrate(const std::vector<Monomial>& monomials, int lambda_shift) const;
    const FiberRoots& fiber() const { return fib_; }
    Cx endpoint(int which) const { return which == 0 ? za_ : zb_; }

private:
    struct ThetaTable {
        PathPiece piece;
        std::vector<std::pair<double, double>> samples;  // (t, theta)
    };
    double theta_lookup(const ThetaTable& tab, double t, Cx& fval) const;
    Cx f_at(Cx z) const;
    PeriodSample integrate_segment(const std::vector<Monomial>& monomials, double lam) const;
    PeriodSample integrate_loop(const std::vector<Monomial>& monomials, double lam) const;

    CurveConfig cfg_;
    CyclePath cycle_;
    QuadOptions opt_;
    FiberRoots fib_;
    UPoly<Cx> f_;
    Cx za_, zb_;
    double theta_mid_ = 0;                // anchor at the segment midpoint
    std::vector<ThetaTable> loop_theta_;  // Pochhammer branch tables
    std::vector<PathPiece> loop_path_;
};

PeriodSample period(const CurveConfig& cfg, const CyclePath& cycle, int i, int lambda_shift = 0,
                    const QuadOptions& opt = {});

// (1 - e^{2 pi i lam}) (1 - e^{-2 pi i lam}) = 4 sin^2(pi lam)
Cx pochhammer_factor(double lam);

// ||S dK - (L+V) K|| / ||(L+V) K||, derivatives taken as lambda K^{lambda-1}.
double connection_residual(const CurveConfig& cfg, const ConnectionSystem& cs,
                           const CyclePath& cycle, const QuadOptions& opt = {});

// singular-value condition number of S(s); blows up toward the discriminant
double condition_number_S(const CurveConfig& cfg, const ConnectionSystem& cs);

// Residual of the shifted (mu+1)-system on the integrals (x-x0)^{k+i}.
double shifted_connection_residual(const ConnectionSystem& scs, const CurveConfig& cfg,
                                   const CyclePath& cycle, const QuadOptions& opt = {});

// Residual of a pure/first-order-mixed annihilator on Pochhammer-regularized
// periods, derivatives taken analytically under the integral sign.
double annihilator_residual_analytic(const DiffOp& op, const CurveConfig& cfg, int k,
                                     const Cx& x0, const CyclePath& cycle, Cx s0,
                                     const QuadOptions& opt = {});

// Finite-difference application of a pure annihilator to K_i samples on an
// s0 grid centered at s0c.
double annihilator_residual_fd(const DiffOp& op, const CurveConfig& cfg, int i, Cx s0c,
                               double h, const QuadOptions& opt = {});

struct FitOptions {
    double eps0 = 0.1;
    double factor = 0.5;
    int ladder = 12;
    int i = 0;  // z power of the fitted integrand
    QuadOptions quad;
    double zero_threshold_factor = 1e3;
};

struct FitResult {
    double rho = 0;
    double rho_err = 0;
    int log_rank = 0;
    bool rho_rational_ok = false;
    Rational rho_rational;
    Cx log_coeff{0.0, 0.0};
    double quad_error = 0;
    double fit_residual = 0;
    std::vector<std::array<double, 3>> ladder;  // eps, |P_vanishing|, |P_dual|
    DulacExpansion dulac_vanishing;
    DulacExpansion dulac_dual;
};

// Exponent fit along s0 = t0 + dir * eps ladders; the vanishing cycle gives
// rho, the dual cycle the log detection.
FitResult fit_exponent(const CurveConfig& base, Cx t0, Cx dir, const FitOptions& opt = {});

struct TransportOptions {
    double tol = 1e-12;
    double hmin = 1e-9;
    int max_steps = 2000000;
};

// Fundamental-matrix transport of S u' = (L+V) u along a path in the s0
// plane; s' fixed from cfg.
Eigen::MatrixXcd transport_path(const ConnectionSystem& cs, const CurveConfig& cfg,
                                const std::vector<PathPiece>& path,
                                const TransportOptions& opt = {});

// Loop with a straight tail from basePoint to the circle around center.
std::vector<PathPiece> keyhole_loop(Cx basePoint, Cx center, double radius, bool ccw = true);
std::vector<PathPiece> circle_loop(Cx center, double radius, Cx through, bool ccw = true);

Eigen::MatrixXcd monodromy(const ConnectionSystem& cs, const CurveConfig& cfg, Cx center,
                           double radius, Cx basePoint, const TransportOptions& opt = {});

std::vector<std::complex<double>> sorted_eigenvalues(const Eigen::MatrixXcd& m);

}  // namespace amu

#endif
