#include "amu/periods.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace amu {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double principal(double a) {
    while (a > kPi) a -= 2 * kPi;
    while (a < -kPi) a += 2 * kPi;
    return a;
}

}  // namespace

UPoly<Cx> fiber_upoly(const CurveConfig& cfg) {
    UPoly<Cx> f;
    f.c.assign(cfg.mu + 2, Cx(0));
    f.c[0] = cfg.s[0];
    for (int j = 1; j <= cfg.mu - 1; ++j) f.c[j] = cfg.s[j];
    f.c[cfg.mu + 1] = 1.0;
    return f;
}

FiberRoots roots_of_fiber(const CurveConfig& cfg, double tol) {
    UPoly<Cx> f = fiber_upoly(cfg);
    FiberRoots out;
    out.roots = complex_roots(f);
    std::sort(out.roots.begin(), out.roots.end(), [](const Cx& a, const Cx& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    double scale = 1.0;
    for (const auto& z : out.roots) scale = std::max(scale, std::abs(z));
    for (const auto& z : out.roots) {
        double r = std::abs(f.eval(z)) / std::pow(scale, cfg.mu + 1);
        out.max_residual = std::max(out.max_residual, r);
    }
    if (out.max_residual > tol)
        throw std::runtime_error("roots_of_fiber: root residual above tolerance");
    // collision clusters
    double ctol = 1e-6 * scale;
    std::vector<bool> used(out.roots.size(), false);
    for (size_t i = 0; i < out.roots.size(); ++i) {
        if (used[i]) continue;
        std::vector<int> c{static_cast<int>(i)};
        used[i] = true;
        for (size_t j = i + 1; j < out.roots.size(); ++j)
            if (!used[j] && std::abs(out.roots[j] - out.roots[i]) < ctol) {
                used[j] = true;
                c.push_back(static_cast<int>(j));
            }
        if (c.size() >= 2) {
            out.clusters.push_back(c);
            for (int p : c)
                for (int q : c)
                    out.cluster_diameter = std::max(
                        out.cluster_diameter, std::abs(out.roots[p] - out.roots[q]));
        }
    }
    return out;
}

std::vector<Cx> critical_values(const CurveConfig& cfg) {
    UPoly<Cx> f = fiber_upoly(cfg);
    auto zc = complex_roots(f.derivative());
    std::vector<Cx> vals;
    for (const auto& z : zc) vals.push_back(cfg.s[0] - f.eval(z));
    return vals;
}

std::vector<Cx> match_roots(const std::vector<Cx>& ref, const std::vector<Cx>& roots) {
    std::vector<Cx> out(ref.size());
    std::vector<bool> used(roots.size(), false);
    for (size_t i = 0; i < ref.size(); ++i) {
        int best = -1;
        double bd = 0;
        for (size_t j = 0; j < roots.size(); ++j) {
            if (used[j]) continue;
            double d = std::abs(roots[j] - ref[i]);
            if (best < 0 || d < bd) {
                best = static_cast<int>(j);
                bd = d;
            }
        }
        used[best] = true;
        out[i] = roots[best];
    }
    return out;
}

// ---------------------------------------------------------------------------
// paths

Cx PathPiece::at(double t) const {
    if (!arc) return z0 + t * (z1 - z0);
    double th = th0 + t * (th1 - th0);
    return center + radius * Cx(std::cos(th), std::sin(th));
}

Cx PathPiece::dz(double t) const {
    if (!arc) return z1 - z0;
    double th = th0 + t * (th1 - th0);
    return radius * (th1 - th0) * Cx(-std::sin(th), std::cos(th));
}

PathPiece PathPiece::line(Cx a, Cx b) {
    PathPiece p;
    p.arc = false;
    p.z0 = a;
    p.z1 = b;
    return p;
}

PathPiece PathPiece::circle(Cx c, double r, double a0, double a1) {
    PathPiece p;
    p.arc = true;
    p.center = c;
    p.radius = r;
    p.th0 = a0;
    p.th1 = a1;
    return p;
}

// ---------------------------------------------------------------------------
// Gauss-Jacobi nodes and weights (Golub-Welsch)

namespace {

struct JacobiRule {
    std::vector<double> x, w;
};

const JacobiRule& jacobi_rule(double alpha, int n) {
    static std::map<std::pair<long long, int>, JacobiRule> cache;
    long long key;
    static_assert(sizeof(double) == sizeof(long long));
    std::memcpy(&key, &alpha, sizeof(double));
    auto it = cache.find({key, n});
    if (it != cache.end()) return it->second;

    double a = alpha, b = alpha;  // symmetric weight (1-x)^a (1+x)^a
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    auto diag = [&](int k) -> double {
        if (k == 0) return (b - a) / (a + b + 2);
        double s = 2 * k + a + b;
        return (b * b - a * a) / (s * (s + 2));
    };
    auto offsq = [&](int k) -> double {
        if (k == 1) return 4 * (1 + a) * (1 + b) / ((a + b + 2) * (a + b + 2) * (a + b + 3));
        double s = 2 * k + a + b;
        return 4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1) * (s - 1));
    };
    for (int i = 0; i < n; ++i) {
        J(i, i) = diag(i);
        if (i >= 1) {
            double e = std::sqrt(offsq(i));
            J(i, i - 1) = e;
            J(i - 1, i) = e;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    double mu0 = std::pow(2.0, a + b + 1) *
                 std::exp(std::lgamma(a + 1) + std::lgamma(b + 1) - std::lgamma(a + b + 2));
    JacobiRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.x[i] = es.eigenvalues()(i);
        double v = es.eigenvectors()(0, i);
        rule.w[i] = mu0 * v * v;
    }
    return cache.emplace(std::make_pair(std::make_pair(key, n), std::move(rule)))
        .first->second;
}

// G7-K15 nodes/weights
const double kKX[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                       0.741531185599394, 0.586087235467691, 0.405845151377397,
                       0.207784955007898, 0.0};
const double kKW[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                       0.140653259715525, 0.169004726639267, 0.190350578064785,
                       0.204432940075298, 0.209482141084728};
const double kGW[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                       0.417959183673469};

template <class F>
void gk15(const F& f, double a, double b, Cx& integral, double& err) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    Cx ik(0), ig(0);
    for (int i = 0; i < 8; ++i) {
        Cx fp = f(mid + half * kKX[i]);
        Cx fm = (i == 7) ? fp : f(mid - half * kKX[i]);
        Cx sum = (i == 7) ? fp : fp + fm;
        ik += kKW[i] * sum;
        if (i % 2 == 1) ig += kGW[i / 2] * sum;
    }
    ik *= half;
    ig *= half;
    integral = ik;
    err = std::abs(ik - ig);
}

template <class F>
Cx adaptive_gk(const F& f, double a, double b, double tol, double& err_out, int depth = 0) {
    Cx val;
    double err;
    gk15(f, a, b, val, err);
    if (err < tol || depth >= 16) {
        err_out += err;
        return val;
    }
    double mid = 0.5 * (a + b);
    return adaptive_gk(f, a, mid, tol / 2, err_out, depth + 1) +
           adaptive_gk(f, mid, b, tol / 2, err_out, depth + 1);
}

double point_segment_distance(Cx p, Cx a, Cx b) {
    Cx d = b - a;
    double L2 = std::norm(d);
    if (L2 == 0) return std::abs(p - a);
    double t = std::clamp(((p - a) * std::conj(d)).real() / L2, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

}  // namespace

// ---------------------------------------------------------------------------
// CycleContext

Cx CycleContext::f_at(Cx z) const { return f_.eval(z); }

CycleContext::CycleContext(const CurveConfig& cfg, const CyclePath& cycle, const QuadOptions& opt)
    : cfg_(cfg), cycle_(cycle), opt_(opt) {
    fib_ = roots_of_fiber(cfg);
    f_ = fiber_upoly(cfg);
    if (cycle.a < 0 || cycle.b < 0 || cycle.a >= static_cast<int>(fib_.roots.size()) ||
        cycle.b >= static_cast<int>(fib_.roots.size()) || cycle.a == cycle.b)
        throw std::invalid_argument("CycleContext: invalid root indices");
    za_ = fib_.roots[cycle.a];
    zb_ = fib_.roots[cycle.b];
    double gap = std::abs(zb_ - za_);
    if (gap == 0) throw std::domain_error("CycleContext: cycle endpoints coincide");
    double clear = gap;
    for (int j = 0; j < static_cast<int>(fib_.roots.size()); ++j) {
        if (j == cycle.a || j == cycle.b) continue;
        clear = std::min(clear, point_segment_distance(fib_.roots[j], za_, zb_));
    }
    if (clear < opt.clearance * gap)
        throw std::domain_error("CycleContext: path clearance violation");

    Cx mid = 0.5 * (za_ + zb_);
    theta_mid_ = std::arg(f_at(mid));

    if (cycle.kind == CyclePath::Pochhammer) {
        Cx u = (zb_ - za_) / gap;
        double other = gap;
        for (int j = 0; j < static_cast<int>(fib_.roots.size()); ++j) {
            if (j == cycle.a || j == cycle.b) continue;
            other = std::min(other, std::abs(fib_.roots[j] - za_));
            other = std::min(other, std::abs(fib_.roots[j] - zb_));
        }
        double r = opt.loop_radius * std::min(gap, other);
        Cx ap = za_ + r * u;
        Cx bp = zb_ - r * u;
        double tha = std::arg(ap - za_);
        double thb = std::arg(bp - zb_);
        // commutator loop: B+ A+ B- A-, each loop based at ap
        std::vector<PathPiece> path;
        auto push_loop_b = [&](bool ccw) {
            path.push_back(PathPiece::line(ap, bp));
            path.push_back(PathPiece::circle(zb_, r, thb, thb + (ccw ? 2 * kPi : -2 * kPi)));
            path.push_back(PathPiece::line(bp, ap));
        };
        auto push_loop_a = [&](bool ccw) {
            path.push_back(PathPiece::circle(za_, r, tha, tha + (ccw ? 2 * kPi : -2 * kPi)));
        };
        push_loop_b(true);
        push_loop_a(false);
        push_loop_b(false);
        push_loop_a(true);
        loop_path_ = path;

        // branch continuation along the whole composite path, anchored by
        // continuing from the segment midpoint to ap
        double theta = theta_mid_;
        {
            PathPiece entry = PathPiece::line(mid, ap);
            ThetaTable tab;
            tab.piece = entry;
            std::function<void(ThetaTable&, double, double, double&, int)> refine =
                [&](ThetaTable& t, double t0, double t1, double& th, int depth) {
                    Cx z0 = t.piece.at(t0), z1 = t.piece.at(t1);
                    double jump = principal(std::arg(f_at(z1)) - std::arg(f_at(z0)));
                    if (std::abs(jump) > kPi / 4 && depth < 40) {
                        double tm = 0.5 * (t0 + t1);
                        refine(t, t0, tm, th, depth + 1);
                        refine(t, tm, t1, th, depth + 1);
                    } else if (std::abs(jump) > kPi / 4) {
                        throw std::runtime_error("branch continuity refinement failed");
                    } else {
                        th += jump;
                        t.samples.emplace_back(t1, th);
                    }
                };
            tab.samples.emplace_back(0.0, theta);
            refine(tab, 0.0, 1.0, theta, 0);
            // theta now continued to ap; build tables for the loop pieces
            for (const auto& piece : loop_path_) {
                ThetaTable pt;
                pt.piece = piece;
                pt.samples.emplace_back(0.0, theta);
                const int base = 32;
                for (int i = 0; i < base; ++i)
                    refine(pt, double(i) / base, double(i + 1) / base, theta, 0);
                loop_theta_.push_back(std::move(pt));
            }
        }
    }
}

double CycleContext::theta_lookup(const ThetaTable& tab, double t, Cx& fval) const {
    Cx z = tab.piece.at(t);
    fval = f_at(z);
    auto it = std::lower_bound(tab.samples.begin(), tab.samples.end(), t,
                               [](const std::pair<double, double>& s, double v) {
                                   return s.first < v;
                               });
    if (it == tab.samples.end()) --it;
    if (it != tab.samples.begin()) {
        auto prev = std::prev(it);
        if (std::abs(prev->first - t) < std::abs(it->first - t)) it = prev;
    }
    Cx fs = f_at(tab.piece.at(it->first));
    return it->second + principal(std::arg(fval) - std::arg(fs));
}

PeriodSample CycleContext::integrate_segment(const std::vector<Monomial>& monomials,
                                             double lam) const {
    if (lam <= -1.0)
        throw std::domain_error("segment integral requires lambda > -1; use a double loop");
    Cx mid = 0.5 * (za_ + zb_);
    Cx d = 0.5 * (zb_ - za_);

    auto value_at = [&](int n) -> Cx {
        const JacobiRule& rule = jacobi_rule(lam, n);
        // continue the branch from the midpoint outward over the sorted nodes
        std::vector<double> theta(n, 0.0);
        auto march = [&](int from, int to, int step) {
            double th = theta_mid_;
            double tprev = 0.0;
            for (int i = from; i != to; i += step) {
                double tx = rule.x[i];
                // refine between tprev and tx
                std::function<double(double, double, double, int)> cont =
                    [&](double t0, double t1, double th0, int depth) -> double {
                    Cx f0 = f_at(mid + t0 * d);
                    Cx f1 = f_at(mid + t1 * d);
                    double jump = principal(std::arg(f1) - std::arg(f0));
                    if (std::abs(jump) <= kPi / 4 || depth >= 40) {
                        if (std::abs(jump) > kPi / 4)
                            throw std::runtime_error("branch continuity refinement failed");
                        return th0 + jump;
                    }
                    double tm = 0.5 * (t0 + t1);
                    double thm = cont(t0, tm, th0, depth + 1);
                    return cont(tm, t1, thm, depth + 1);
                };
                th = cont(tprev, tx, th, 0);
                theta[i] = th;
                tprev = tx;
            }
        };
        int mididx = 0;
        while (mididx < n && rule.x[mididx] < 0) ++mididx;
        march(mididx, n, 1);
        march(mididx - 1, -1, -1);
        Cx acc(0);
        for (int i = 0; i < n; ++i) {
            Cx z = mid + rule.x[i] * d;
            Cx fz = f_at(z);
            double mag = std::abs(fz);
            double base = std::max(1e-300, mag / (1.0 - rule.x[i] * rule.x[i]));
            Cx val = std::exp(Cx(lam * std::log(base), lam * theta[i]));
            Cx mono(1.0, 0.0);
            for (const auto& mo : monomials)
                for (int p = 0; p < mo.power; ++p) mono *= (z - mo.center);
            acc += rule.w[i] * mono * val;
        }
        return acc * d;
    };

    PeriodSample out;
    out.cycle = cycle_;
    Cx prev(0);
    bool have_prev = false;
    for (int n : {16, 24, 32, 48, 64, 96, 128, 192, 256, 384, 512}) {
        if (n > opt_.max_nodes) break;
        Cx cur = value_at(n);
        if (have_prev) {
            double diff = std::abs(cur - prev);
            out.value = cur;
            out.error = diff;
            if (diff <= opt_.tol * std::max(1.0, std::abs(cur))) {
                out.branch_certified = true;
                return out;
            }
        }
        prev = cur;
        have_prev = true;
    }
    out.value = prev;
    out.branch_certified = false;
    if (out.error > 1e3 * opt_.tol * std::max(1.0, std::abs(prev)))
        throw std::runtime_error("segment quadrature did not converge");
    return out;
}

PeriodSample CycleContext::integrate_loop(const std::vector<Monomial>& monomials,
                                          double lam) const {
    PeriodSample out;
    out.cycle = cycle_;
    Cx total(0);
    double err = 0;
    // first loose pass for scale
    double scale = 1.0;
    for (size_t pi = 0; pi < loop_path_.size(); ++pi) {
        const ThetaTable& tab = loop_theta_[pi];
        auto g = [&](double t) -> Cx {
            Cx fv;
            double th = theta_lookup(tab, t, fv);
            double mag = std::max(std::abs(fv), 1e-300);
            Cx z = tab.piece.at(t);
            Cx val = std::exp(Cx(lam * std::log(mag), lam * th));
            Cx mono(1.0, 0.0);
            for (const auto& mo : monomials)
                for (int p = 0; p < mo.power; ++p) mono *= (z - mo.center);
            return tab.piece.dz(t) * mono * val;
        };
        for (double t : {0.25, 0.5, 0.75}) scale = std::max(scale, std::abs(g(t)));
    }
    for (size_t pi = 0; pi < loop_path_.size(); ++pi) {
        const ThetaTable& tab = loop_theta_[pi];
        auto g = [&](double t) -> Cx {
            Cx fv;
            double th = theta_lookup(tab, t, fv);
            double mag = std::max(std::abs(fv), 1e-300);
            Cx z = tab.piece.at(t);
            Cx val = std::exp(Cx(lam * std::log(mag), lam * th));
            Cx mono(1.0, 0.0);
            for (const auto& mo : monomials)
                for (int p = 0; p < mo.power; ++p) mono *= (z - mo.center);
            return tab.piece.dz(t) * mono * val;
        };
        total += adaptive_gk(g, 0.0, 1.0, opt_.tol * scale * 0.1, err);
    }
    out.value = total;
    out.error = err;
    out.branch_certified = true;
    return out;
}

PeriodSample CycleContext::integrate(const std::vector<Monomial>& monomials,
                                     int lambda_shift) const {
    double lam = cfg_.lambda() + lambda_shift;
    PeriodSample s = (cycle_.kind == CyclePath::Segment) ? integrate_segment(monomials, lam)
                                                         : integrate_loop(monomials, lam);
    s.lambda_shift = lambda_shift;
    return s;
}

PeriodSample period(const CurveConfig& cfg, const CyclePath& cycle, int i, int lambda_shift,
                    const QuadOptions& opt) {
    CycleContext ctx(cfg, cycle, opt);
    PeriodSample s = ctx.integrate({Monomial{Cx(0.0), i}}, lambda_shift);
    s.i = i;
    return s;
}

Cx pochhammer_factor(double lam) {
    double s = std::sin(kPi * lam);
    return Cx(4.0 * s * s, 0.0);
}

// ---------------------------------------------------------------------------

double connection_residual(const CurveConfig& cfg, const ConnectionSystem& cs,
                           const CyclePath& cycle, const QuadOptions& opt) {
    if (cs.size != cfg.mu) throw std::invalid_argument("connection_residual: size mismatch");
    CycleContext ctx(cfg, cycle, opt);
    double lam = cfg.lambda();
    Eigen::VectorXcd K(cfg.mu), dK(cfg.mu);
    for (int i = 0; i < cfg.mu; ++i) {
        K(i) = ctx.integrate({Monomial{Cx(0.0), i}}, 0).value;
        dK(i) = lam * ctx.integrate({Monomial{Cx(0.0), i}}, -1).value;
    }
    Eigen::MatrixXcd S = cs.eval_S(cfg.s);
    Eigen::MatrixXcd LV = cs.eval_LV(cfg.s);
    Eigen::VectorXcd lhs = S * dK;
    Eigen::VectorXcd rhs = LV * K;
    return (lhs - rhs).norm() / std::max(rhs.norm(), 1e-300);
}

double condition_number_S(const CurveConfig& cfg, const ConnectionSystem& cs) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cs.eval_S(cfg.s));
    auto sv = svd.singularValues();
    double smin = sv(sv.size() - 1);
    if (smin <= 0) return std::numeric_limits<double>::infinity();
    return sv(0) / smin;
}

double shifted_connection_residual(const ConnectionSystem& scs, const CurveConfig& cfg,
                                   const CyclePath& cycle, const QuadOptions& opt) {
    if (!scs.shifted) throw std::invalid_argument("shifted_connection_residual: shifted system");
    CycleContext ctx(cfg, cycle, opt);
    double lam = cfg.lambda();
    Cx x0 = Cx(to_double(scs.x0), 0.0);
    int n = scs.size;
    Eigen::VectorXcd K(n), dK(n);
    for (int i = 0; i < n; ++i) {
        K(i) = ctx.integrate({Monomial{x0, scs.k + i}}, 0).value;
        dK(i) = lam * ctx.integrate({Monomial{x0, scs.k + i}}, -1).value;
    }
    Eigen::MatrixXcd S = scs.eval_S(cfg.s);
    Eigen::MatrixXcd LV = scs.eval_LV(cfg.s);
    Eigen::VectorXcd lhs = S * dK;
    Eigen::VectorXcd rhs = LV * K;
    return (lhs - rhs).norm() / std::max(rhs.norm(), 1e-300);
}

double annihilator_residual_analytic(const DiffOp& op, const CurveConfig& cfg, int k,
                                     const Cx& x0, const CyclePath& cycle, Cx s0,
                                     const QuadOptions& opt) {
    CurveConfig at = cfg;
    at.s[0] = s0;
    CyclePath loop = cycle;
    loop.kind = CyclePath::Pochhammer;
    CycleContext ctx(at, loop, opt);
    double lam = at.lambda();
    auto falling = [&](int r) {
        double v = 1;
        for (int i = 0; i < r; ++i) v *= (lam - i);
        return v;
    };
    auto view = op.ode_view();
    Cx acc(0);
    double scale = 0;
    for (int b = 0; b < static_cast<int>(view.ode.size()); ++b) {
        if (view.ode[b].is_zero()) continue;
        Cx c = eval_conv<Cx>(view.ode[b], s0);
        Cx term = c * falling(b) * ctx.integrate({Monomial{x0, k}}, -b).value;
        acc += term;
        scale += std::abs(term);
    }
    for (const auto& [jv, vec] : view.mixed) {
        for (int b = 0; b < static_cast<int>(vec.size()); ++b) {
            if (vec[b].is_zero()) continue;
            Cx c = eval_conv<Cx>(vec[b], s0);
            Cx term = c * falling(b + 1) *
                      ctx.integrate({Monomial{x0, k}, Monomial{Cx(0.0), jv}}, -(b + 1)).value;
            acc += term;
            scale += std::abs(term);
        }
    }
    return std::abs(acc) / std::max(scale, 1e-300);
}

namespace {

// Fornberg finite-difference weights for the m-th derivative at z on grid x.
std::vector<double> fd_weights(double z, const std::vector<double>& x, int m) {
    int n = static_cast<int>(x.size()) - 1;
    std::vector<std::vector<double>> c(n + 1, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0, c4 = x[0] - z;
    c[0][0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        int mn = std::min(i, m);
        double c2 = 1.0, c5 = c4;
        c4 = x[i] - z;
        for (int j = 0; j < i; ++j) {
            double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int kk = mn; kk >= 1; --kk)
                    c[i][kk] = c1 * (kk * c[i - 1][kk - 1] - c5 * c[i - 1][kk]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int kk = mn; kk >= 1; --kk) c[j][kk] = (c4 * c[j][kk] - kk * c[j][kk - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n + 1);
    for (int i = 0; i <= n; ++i) w[i] = c[i][m];
    return w;
}

}  // namespace

double annihilator_residual_fd(const DiffOp& op, const CurveConfig& cfg, int i, Cx s0c,
                               double h, const QuadOptions& opt) {
    if (!op.pure()) throw std::invalid_argument("annihilator_residual_fd: pure operator expected");
    auto view = op.ode_view();
    int mu = view.order;
    int p = mu + 3;
    std::vector<double> grid;
    for (int j = -p; j <= p; ++j) grid.push_back(j * h);

    // reference roots at the center; follow the cycle through the grid
    CurveConfig center = cfg;
    center.s[0] = s0c;
    FiberRoots ref = roots_of_fiber(center);
    std::vector<Cx> samples;
    for (double g : grid) {
        CurveConfig at = cfg;
        at.s[0] = s0c + g;
        FiberRoots fr = roots_of_fiber(at);
        std::vector<Cx> matched = match_roots(ref.roots, fr.roots);
        // rebuild config whose roots_of_fiber sorting may differ: use matched
        // endpoints directly through a context on a temporary config
        CyclePath cyc;
        cyc.a = 0;
        cyc.b = 1;
        // order roots: we pick the two matched endpoints by constructing the
        // context from scratch each time with indices found below
        // find indices of matched[0], matched[1] in fr.roots
        CurveConfig tmp = at;
        FiberRoots frs = roots_of_fiber(tmp);
        int ia = -1, ib = -1;
        for (int q = 0; q < static_cast<int>(frs.roots.size()); ++q) {
            if (std::abs(frs.roots[q] - matched[0]) < 1e-12 * (1 + std::abs(matched[0]))) ia = q;
            if (std::abs(frs.roots[q] - matched[1]) < 1e-12 * (1 + std::abs(matched[1]))) ib = q;
        }
        if (ia < 0 || ib < 0 || ia == ib)
            throw std::runtime_error("annihilator_residual_fd: cycle tracking failed");
        cyc.a = ia;
        cyc.b = ib;
        CycleContext ctx(tmp, cyc, opt);
        samples.push_back(ctx.integrate({Monomial{Cx(0.0), i}}, 0).value);
    }

    Cx acc(0);
    double scale = 0;
    for (int b = 0; b < static_cast<int>(view.ode.size()); ++b) {
        if (view.ode[b].is_zero()) continue;
        auto w = fd_weights(0.0, grid, b);
        Cx der(0);
        for (size_t q = 0; q < samples.size(); ++q) der += w[q] * samples[q];
        Cx term = eval_conv<Cx>(view.ode[b], s0c) * der;
        acc += term;
        scale += std::abs(term);
    }
    return std::abs(acc) / std::max(scale, 1e-300);
}

// ---------------------------------------------------------------------------

FitResult fit_exponent(const CurveConfig& base, Cx t0, Cx dir, const FitOptions& opt) {
    FitResult out;
    // the partner of the vanishing pair sits ~sqrt(eps) from the dual cycle's
    // endpoint; that stays integrable, so the clearance guard is relaxed here
    FitOptions o = opt;
    o.quad.clearance = std::min(o.quad.clearance, 0.002);
    const FitOptions& optr = o;
    int E = optr.ladder;
    std::vector<double> eps(E);
    for (int e = 0; e < E; ++e) eps[e] = optr.eps0 * std::pow(optr.factor, e);

    // identify the colliding pair at the smallest ladder point
    CurveConfig tiny = base;
    tiny.s[0] = t0 + dir * eps[E - 1];
    FiberRoots fr = roots_of_fiber(tiny);
    int ia = 0, ib = 1;
    double best = 1e300;
    for (size_t ii = 0; ii < fr.roots.size(); ++ii)
        for (size_t jj = ii + 1; jj < fr.roots.size(); ++jj) {
            double dzz = std::abs(fr.roots[ii] - fr.roots[jj]);
            if (dzz < best) {
                best = dzz;
                ia = static_cast<int>(ii);
                ib = static_cast<int>(jj);
            }
        }
    int ic = -1;
    double bc = 1e300;
    for (size_t jj = 0; jj < fr.roots.size(); ++jj) {
        if (static_cast<int>(jj) == ia || static_cast<int>(jj) == ib) continue;
        double dzz = std::abs(fr.roots[jj] - fr.roots[ib]);
        if (dzz < bc) {
            bc = dzz;
            ic = static_cast<int>(jj);
        }
    }
    if (ic < 0) throw std::runtime_error("fit_exponent: no dual cycle available");
    std::vector<Cx> refRoots = fr.roots;

    std::vector<Cx> Pv(E), Pd(E);
    double qerr = 0;
    for (int e = E - 1; e >= 0; --e) {
        CurveConfig at = base;
        at.s[0] = t0 + dir * eps[e];
        FiberRoots cur = roots_of_fiber(at);
        std::vector<Cx> matched = match_roots(refRoots, cur.roots);
        refRoots = matched;
        auto index_of = [&](const Cx& z) {
            for (int q = 0; q < static_cast<int>(cur.roots.size()); ++q)
                if (std::abs(cur.roots[q] - z) < 1e-12 * (1 + std::abs(z))) return q;
            throw std::runtime_error("fit_exponent: root tracking failed");
        };
        CyclePath c1{index_of(matched[ia]), index_of(matched[ib]), CyclePath::Segment};
        CyclePath c2{index_of(matched[ib]), index_of(matched[ic]), CyclePath::Segment};
        CycleContext ctxV(at, c1, optr.quad);
        CycleContext ctxD(at, c2, optr.quad);
        PeriodSample sv = ctxV.integrate({Monomial{Cx(0.0), optr.i}}, 0);
        PeriodSample sd = ctxD.integrate({Monomial{Cx(0.0), optr.i}}, 0);
        Pv[e] = sv.value;
        Pd[e] = sd.value;
        qerr = std::max(qerr, std::max(sv.error, sd.error));
        out.ladder.push_back({eps[e], std::abs(sv.value), std::abs(sd.value)});
    }
    std::reverse(out.ladder.begin(), out.ladder.end());
    out.quad_error = qerr;

    // slopes and one Richardson extrapolation level
    std::vector<double> slope;
    double lf = std::log(1.0 / optr.factor);
    for (int e = 0; e + 1 < E; ++e)
        slope.push_back((std::log(std::abs(Pv[e])) - std::log(std::abs(Pv[e + 1]))) / lf);
    std::vector<double> extr;
    for (size_t e = 0; e + 1 < slope.size(); ++e)
        extr.push_back((slope[e + 1] - optr.factor * slope[e]) / (1 - optr.factor));
    double rho = extr.back();
    out.rho = rho;
    out.rho_err = std::abs(extr[extr.size() - 1] - extr[extr.size() - 2]);

    Rational rr;
    if (reconstruct_rational(rho, 4LL * base.nu * (base.mu + 1), rr) &&
        std::abs(to_double(rr) - rho) < std::max(1e-6, 3 * out.rho_err)) {
        out.rho_rational_ok = true;
        out.rho_rational = rr;
    }

    // least squares on the dual cycle: 1, eps, eps^2, eps^3 [, eps^rho],
    // eps^rho log eps. The log term is accepted only when it improves the fit
    // decisively, which separates it from a nearly collinear eps^rho column.
    bool rho_is_integer = std::abs(rho - std::round(rho)) < 0.1;
    int cols = rho_is_integer ? 5 : 6;
    Eigen::MatrixXcd A(E, cols);
    Eigen::VectorXcd rhs(E);
    for (int e = 0; e < E; ++e) {
        double x = eps[e];
        A(e, 0) = 1.0;
        A(e, 1) = x;
        A(e, 2) = x * x;
        A(e, 3) = x * x * x;
        int col = 4;
        if (!rho_is_integer) A(e, col++) = std::pow(x, rho);
        A(e, col) = std::pow(x, rho) * std::log(x);
        rhs(e) = Pd[e];
    }
    Eigen::VectorXcd sol = A.colPivHouseholderQr().solve(rhs);
    double resid = (A * sol - rhs).norm() / std::sqrt(double(E));
    Eigen::MatrixXcd Anolog = A.leftCols(cols - 1);
    Eigen::VectorXcd solNolog = Anolog.colPivHouseholderQr().solve(rhs);
    double residNolog = (Anolog * solNolog - rhs).norm() / std::sqrt(double(E));
    out.fit_residual = resid;
    Cx beta = sol(cols - 1);
    double gmax = 0;
    for (int e = 0; e < E; ++e) gmax = std::max(gmax, std::abs(std::pow(eps[e], rho) * std::log(eps[e])));
    double thr = std::max(optr.zero_threshold_factor * qerr, 30.0 * resid);
    out.log_coeff = beta;
    out.log_rank = (std::abs(beta) * gmax > thr && residNolog > 50.0 * resid) ? 1 : 0;

    // Dulac bookkeeping for both fitted expansions
    double zero_thr = optr.zero_threshold_factor * std::max(qerr, 1e-15);
    {
        DulacTerm t;
        t.rho = out.rho_rational_ok ? out.rho_rational : Rational(0);
        t.k = 0;
        t.magnitude = std::abs(Pv[0]) / std::pow(eps[0], rho);
        t.threshold = zero_thr;
        out.dulac_vanishing.terms.push_back(t);
    }
    {
        auto push = [&](const Rational& r, int kk, double mag) {
            DulacTerm t;
            t.rho = r;
            t.k = kk;
            t.magnitude = mag;
            t.threshold = zero_thr;
            out.dulac_dual.terms.push_back(t);
        };
        push(Rational(0), 0, std::abs(sol(0)));
        push(Rational(1), 0, std::abs(sol(1)));
        push(Rational(2), 0, std::abs(sol(2)));
        if (!rho_is_integer && out.rho_rational_ok)
            push(out.rho_rational, 0, std::abs(sol(4)));
        if (out.rho_rational_ok)
            push(out.rho_rational, out.log_rank > 0 ? 1 : 0,
                 out.log_rank > 0 ? std::abs(beta) : 0.0);
    }
    return out;
}

// ---------------------------------------------------------------------------
// monodromy transport

namespace {

Eigen::MatrixXcd rhs_matrix(const ConnectionSystem& cs, const CurveConfig& cfg, Cx z) {
    std::vector<Cx> s = cfg.s;
    s[0] = z;
    Eigen::MatrixXcd S = cs.eval_S(s);
    Eigen::MatrixXcd LV = cs.eval_LV(s);
    return S.partialPivLu().solve(LV);
}

}  // namespace

Eigen::MatrixXcd transport_path(const ConnectionSystem& cs, const CurveConfig& cfg,
                                const std::vector<PathPiece>& path,
                                const TransportOptions& opt) {
    const int n = cs.size;
    Eigen::MatrixXcd U = Eigen::MatrixXcd::Identity(n, n);
    // Dormand-Prince 5(4)
    static const double a21 = 1. / 5;
    static const double a31 = 3. / 40, a32 = 9. / 40;
    static const double a41 = 44. / 45, a42 = -56. / 15, a43 = 32. / 9;
    static const double a51 = 19372. / 6561, a52 = -25360. / 2187, a53 = 64448. / 6561,
                        a54 = -212. / 729;
    static const double a61 = 9017. / 3168, a62 = -355. / 33, a63 = 46732. / 5247,
                        a64 = 49. / 176, a65 = -5103. / 18656;
    static const double b1 = 35. / 384, b3 = 500. / 1113, b4 = 125. / 192, b5 = -2187. / 6784,
                        b6 = 11. / 84;
    static const double e1 = 35. / 384 - 5179. / 57600, e3 = 500. / 1113 - 7571. / 16695,
                        e4 = 125. / 192 - 393. / 640, e5 = -2187. / 6784 + 92097. / 339200,
                        e6 = 11. / 84 - 187. / 2100, e7 = -1. / 40;

    for (const auto& piece : path) {
        double t = 0, h = 0.05;
        int steps = 0;
        auto F = [&](double tt, const Eigen::MatrixXcd& u) -> Eigen::MatrixXcd {
            return piece.dz(tt) * (rhs_matrix(cs, cfg, piece.at(tt)) * u);
        };
        while (t < 1.0) {
            if (++steps > opt.max_steps) throw std::runtime_error("transport: step limit");
            h = std::min(h, 1.0 - t);
            Eigen::MatrixXcd k1 = F(t, U);
            Eigen::MatrixXcd k2 = F(t + h / 5, U + h * a21 * k1);
            Eigen::MatrixXcd k3 = F(t + 3 * h / 10, U + h * (a31 * k1 + a32 * k2));
            Eigen::MatrixXcd k4 = F(t + 4 * h / 5, U + h * (a41 * k1 + a42 * k2 + a43 * k3));
            Eigen::MatrixXcd k5 =
                F(t + 8 * h / 9, U + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            Eigen::MatrixXcd k6 =
                F(t + h, U + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            Eigen::MatrixXcd U5 = U + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            Eigen::MatrixXcd k7 = F(t + h, U5);
            Eigen::MatrixXcd errM =
                h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
            double err = errM.norm() / std::max(1.0, U5.norm());
            if (err < opt.tol) {
                t += h;
                U = U5;
            }
            double fac = 0.9 * std::pow(opt.tol / std::max(err, 1e-300), 0.2);
            h *= std::clamp(fac, 0.2, 5.0);
            if (h < opt.hmin) throw std::runtime_error("transport: step-size collapse");
        }
    }
    return U;
}

std::vector<PathPiece> circle_loop(Cx center, double radius, Cx through, bool ccw) {
    double th0 = std::arg(through - center);
    std::vector<PathPiece> path;
    path.push_back(PathPiece::circle(center, radius, th0, th0 + (ccw ? 2 * kPi : -2 * kPi)));
    return path;
}

std::vector<PathPiece> keyhole_loop(Cx basePoint, Cx center, double radius, bool ccw) {
    Cx dir = basePoint - center;
    double dist = std::abs(dir);
    if (dist <= radius) throw std::invalid_argument("keyhole_loop: base inside circle");
    Cx entry = center + radius * dir / dist;
    std::vector<PathPiece> path;
    path.push_back(PathPiece::line(basePoint, entry));
    double th0 = std::arg(entry - center);
    path.push_back(PathPiece::circle(center, radius, th0, th0 + (ccw ? 2 * kPi : -2 * kPi)));
    path.push_back(PathPiece::line(entry, basePoint));
    return path;
}

Eigen::MatrixXcd monodromy(const ConnectionSystem& cs, const CurveConfig& cfg, Cx center,
                           double radius, Cx basePoint, const TransportOptions& opt) {
    return transport_path(cs, cfg, keyhole_loop(basePoint, center, radius), opt);
}

std::vector<std::complex<double>> sorted_eigenvalues(const Eigen::MatrixXcd& m) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
    std::vector<Cx> ev(es.eigenvalues().data(), es.eigenvalues().data() + m.rows());
    std::sort(ev.begin(), ev.end(), [](const Cx& x, const Cx& y) {
        if (std::abs(x.real() - y.real()) > 1e-12) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return ev;
}

}  // namespace amu
