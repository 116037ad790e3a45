#include <doctest.h>

#include <algorithm>
#include <random>

#include "amu/bounds.hpp"

using namespace amu;

namespace {
DulacTerm exact_term(const Rational& rho, int k, const Rational& v) {
    DulacTerm t;
    t.rho = rho;
    t.k = k;
    t.exact = true;
    t.exact_value = v;
    return t;
}
}  // namespace

TEST_CASE("dulac multiplicity direct instances") {
    {
        DulacExpansion e;
        e.terms.push_back(exact_term(rat(1, 2), 0, rat(1)));
        CHECK(dulac_multiplicity(e) == 1);
    }
    {
        DulacExpansion e;
        e.terms.push_back(exact_term(rat(3, 2), 1, rat(2)));
        e.terms.push_back(exact_term(rat(2), 0, rat(5)));
        CHECK(dulac_multiplicity(e) == 4);
    }
    {
        // the log case at rho = 1: (k1+1)([rho1]+1) = 4
        DulacExpansion e;
        e.terms.push_back(exact_term(rat(1), 1, rat(3)));
        e.terms.push_back(exact_term(rat(1), 0, rat(-2)));
        e.terms.push_back(exact_term(rat(2), 0, rat(7)));
        CHECK(dulac_multiplicity(e) == 4);
    }
    {
        DulacExpansion empty;
        CHECK_THROWS_AS(dulac_multiplicity(empty), std::domain_error);
        DulacExpansion allZero;
        allZero.terms.push_back(exact_term(rat(1), 0, rat(0)));
        CHECK_THROWS_AS(dulac_multiplicity(allZero), std::domain_error);
    }
}

TEST_CASE("dulac multiplicity ignores certainly-zero terms and ordering") {
    std::mt19937_64 rng(5);
    DulacExpansion e;
    e.terms.push_back(exact_term(rat(3, 2), 1, rat(2)));
    e.terms.push_back(exact_term(rat(2), 0, rat(5)));
    int base = dulac_multiplicity(e);
    DulacExpansion f = e;
    DulacTerm zero;
    zero.rho = rat(1, 4);
    zero.k = 3;
    zero.magnitude = 1e-18;
    zero.threshold = 1e-12;
    f.terms.push_back(zero);
    std::shuffle(f.terms.begin(), f.terms.end(), rng);
    CHECK(dulac_multiplicity(f) == base);
}

TEST_CASE("zero bound worked instances") {
    CHECK(zero_bound({2, 2, 1, 0, 0, PointType::Branch}).bound == 2);
    CHECK(zero_bound({3, 2, 1, 0, 0, PointType::Branch}).bound == 4);
    CHECK(zero_bound({4, 2, 1, 3, 0, PointType::Regular}).bound == 7);
    CHECK_THROWS_AS(zero_bound({3, 2, 1, 2, 1, PointType::Branch}), std::domain_error);
    CHECK_THROWS_AS(zero_bound({1, 2, 1, 0, 0, PointType::Branch}), std::invalid_argument);
}

TEST_CASE("zero bound is monotone within each formula branch") {
    for (int mu : {2, 4, 6}) {
        for (int m = 0; m <= 8; ++m)
            for (int K = 0; K <= 8; ++K) {
                int b = zero_bound({mu, 2, m, K, 0, PointType::Branch}).bound;
                CHECK(zero_bound({mu, 2, m + 1, K, 0, PointType::Branch}).bound >= b);
                CHECK(zero_bound({mu, 2, m, K + 1, 0, PointType::Branch}).bound >= b);
                CHECK(zero_bound({mu + 2, 2, m, K, 0, PointType::Branch}).bound >= b);
            }
    }
    for (int mu : {2, 3, 5}) {
        for (int K = 0; K <= 6; ++K) {
            int b = zero_bound({mu, 2, 1, K, 0, PointType::Regular}).bound;
            CHECK(zero_bound({mu, 2, 1, K + 1, 0, PointType::Regular}).bound == b + 1);
        }
    }
}

TEST_CASE("nu = 2 branch formula agrees with the hyperelliptic special case") {
    // 2 floor(m/2 + (K+mu)/2) == 2 floor((K+m+mu)/2) on the grid
    for (int mu : {2, 4, 6, 8})
        for (int K = 0; K <= 12; ++K)
            for (int m = 0; m <= 12; ++m) {
                int a = zero_bound({mu, 2, m, K, 0, PointType::Branch}).bound;
                long long b = 2 * ((K + m + mu) / 2);
                CHECK(a == b);
            }
}

TEST_CASE("exponent classification") {
    CHECK(classify_exponent_bound(4, 2, 1, 0, Stratum::DM1) == rat(1));
    CHECK(classify_exponent_bound(4, 2, 1, 2, Stratum::DM1) == rat(2));
    CHECK(classify_exponent_bound(4, 2, 1, 1, Stratum::DM1) == rat(3));  // m/nu + (k1+mu)/2
    CHECK(classify_exponent_bound(4, 2, 1, 0, Stratum::DMminus) == rat(1));
    CHECK(classify_exponent_bound(5, 2, 1, 0, Stratum::DMminus) == rat(1));
    CHECK_THROWS_AS(classify_exponent_bound(5, 2, 1, 0, Stratum::DM1), std::domain_error);
    CHECK(multiplicity_estimate_from_rho(rat(1)) == 2);
    CHECK(multiplicity_estimate_from_rho(rat(5, 6)) == 1);
    CHECK(multiplicity_estimate_from_rho(rat(3, 2)) == 2);
}
