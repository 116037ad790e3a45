#ifndef AMU_POLYMAT_HPP
#define AMU_POLYMAT_HPP

#include <Eigen/Dense>

#include "amu/multipoly.hpp"

namespace Eigen {
template <>
struct NumTraits<amu::MultiPoly> : GenericNumTraits<amu::MultiPoly> {
    typedef amu::MultiPoly Real;
    typedef amu::MultiPoly NonInteger;
    typedef amu::MultiPoly Nested;
    typedef amu::MultiPoly Literal;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 4,
        AddCost = 32,
        MulCost = 64
    };
    static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace amu {

using PolyMat = Eigen::Matrix<MultiPoly, Eigen::Dynamic, Eigen::Dynamic>;
using RatMat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RatVec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

inline PolyMat poly_mat(int rows, int cols, int nvars) {
    PolyMat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = MultiPoly(nvars);
    return m;
}

// Fraction-free determinant (Bareiss). Exact over the polynomial ring.
inline MultiPoly bareiss_det(PolyMat m) {
    const int n = static_cast<int>(m.rows());
    if (n == 0 || m.rows() != m.cols()) throw std::invalid_argument("bareiss_det: not square");
    int nv = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) nv = std::max(nv, m(i, j).nvars());
    MultiPoly prev = MultiPoly::constant(nv, 1);
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        int piv = -1, best = 0;
        for (int r = k; r < n; ++r) {
            if (m(r, k).is_zero()) continue;
            int t = m(r, k).term_count();
            if (piv < 0 || t < best) {
                piv = r;
                best = t;
            }
        }
        if (piv < 0) return MultiPoly::constant(nv, 0);
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                MultiPoly num = m(k, k) * m(i, j) - m(i, k) * m(k, j);
                MultiPoly q;
                if (!MultiPoly::try_divide(num, prev, q))
                    throw std::logic_error("bareiss_det: inexact division");
                m(i, j) = q;
            }
            m(i, k) = MultiPoly(nv);
        }
        prev = m(k, k);
    }
    MultiPoly d = m(n - 1, n - 1);
    if (sign < 0) d = -d;
    return d;
}

// Determinant by Laplace expansion over row subsets; cheap for small matrices
// with sparse polynomial entries and needs no divisions.
inline MultiPoly subset_det(const PolyMat& m) {
    const int n = static_cast<int>(m.rows());
    if (n == 0 || m.rows() != m.cols()) throw std::invalid_argument("subset_det: not square");
    int nv = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) nv = std::max(nv, m(i, j).nvars());
    std::vector<MultiPoly> dp(size_t(1) << n);
    dp[0] = MultiPoly::constant(nv, 1);
    for (unsigned mask = 1; mask < dp.size(); ++mask) {
        int col = __builtin_popcount(mask) - 1;
        MultiPoly acc(nv);
        int above = 0;  // rows in mask greater than the current row
        for (int r = n - 1; r >= 0; --r) {
            if (!(mask & (1u << r))) continue;
            if (!m(r, col).is_zero() && !dp[mask ^ (1u << r)].is_zero()) {
                MultiPoly t = m(r, col) * dp[mask ^ (1u << r)];
                if (above & 1) acc -= t; else acc += t;
            }
            ++above;
        }
        dp[mask] = acc;
    }
    return dp[dp.size() - 1];
}

// Adjugate: adj(M) * M = det(M) * Id, by cofactor expansion.
inline PolyMat adjugate(const PolyMat& m) {
    const int n = static_cast<int>(m.rows());
    int nv = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) nv = std::max(nv, m(i, j).nvars());
    PolyMat out = poly_mat(n, n, nv);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            PolyMat minor = poly_mat(n - 1, n - 1, nv);
            for (int r = 0, rr = 0; r < n; ++r) {
                if (r == i) continue;
                for (int c = 0, cc = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor(rr, cc) = m(r, c);
                    ++cc;
                }
                ++rr;
            }
            MultiPoly cof = (n == 1) ? MultiPoly::constant(nv, 1) : subset_det(minor);
            if ((i + j) & 1) cof = -cof;
            out(j, i) = cof;  // transpose of the cofactor matrix
        }
    return out;
}

// Sylvester matrix of f, g given as coefficient lists in z (ascending).
inline PolyMat sylvester(const std::vector<MultiPoly>& f, const std::vector<MultiPoly>& g, int nvars) {
    const int n = static_cast<int>(f.size()) - 1;
    const int m = static_cast<int>(g.size()) - 1;
    if (n < 0 || m < 0) throw std::invalid_argument("sylvester: zero polynomial");
    PolyMat s = poly_mat(n + m, n + m, nvars);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) s(i, i + j) = f[n - j];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s(m + i, i + j) = g[m - j];
    return s;
}

// Exact rank of a rational matrix by Gaussian elimination.
inline int exact_rank(RatMat m) {
    int rows = static_cast<int>(m.rows()), cols = static_cast<int>(m.cols());
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (m(r, c) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = 0; j < cols; ++j) std::swap(m(rank, j), m(piv, j));
        for (int r = rank + 1; r < rows; ++r) {
            if (m(r, c) == 0) continue;
            Rational f = m(r, c) / m(rank, c);
            for (int j = c; j < cols; ++j) m(r, j) -= f * m(rank, j);
        }
        ++rank;
    }
    return rank;
}

}  // namespace amu

#endif
