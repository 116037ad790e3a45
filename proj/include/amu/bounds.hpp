#ifndef AMU_BOUNDS_HPP
#define AMU_BOUNDS_HPP

#include <string>
#include <vector>

#include "amu/rational.hpp"

namespace amu {

enum class PointType { Branch, Regular };
enum class Stratum { DM1, DMminus };

// One term f_{rho,k} (s0-t0)^rho log^k of a Dulac expansion. Coefficients are
// either exact rationals or fitted numbers with a zero threshold attached.
struct DulacTerm {
    Rational rho;
    int k = 0;
    bool exact = false;
    Rational exact_value;
    double magnitude = 0;
    double threshold = 0;

    bool certainly_nonzero() const {
        return exact ? exact_value != 0 : magnitude > threshold;
    }
};

struct DulacExpansion {
    std::vector<DulacTerm> terms;
};

// (k1+1) * (floor(rho1) + 1) with rho1 the least exponent carrying a
// certainly nonzero coefficient and k1 the top log power at rho1.
int dulac_multiplicity(const DulacExpansion& e);

struct BoundQuery {
    int mu = 2, nu = 2, m = 1, K = 0, k1 = 0;
    PointType point = PointType::Branch;
};

struct BoundResult {
    int bound = 0;
    std::string formula;
    bool rho_valid = false;
    Rational rho;
};

BoundResult zero_bound(const BoundQuery& q);

// Maximal characteristic-exponent contribution at a Morse-stratum
// ramification point.
Rational classify_exponent_bound(int mu, int nu, int m, int k1, Stratum stratum);

// The multiplicity estimate derived from a contribution rho: 2*rho when rho
// is an integer, floor(rho) + 1 otherwise.
int multiplicity_estimate_from_rho(const Rational& rho);

}  // namespace amu

#endif
