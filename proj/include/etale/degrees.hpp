// Dynamical degrees of monomial maps: an invertible-over-Q integer matrix M
// defines a monomial self-map of the k-torus, and its p-th degree is the
// spectral radius of the p-th exterior power of M.  The profile is
// certified (exact where integral), cross-checked against the matrix-power
// growth oracle, and compared to entropy values by the degree-gap report.

#pragma once

#include "etale/charpoly.hpp"

#include <string>
#include <vector>

namespace etale {

struct MonomialMap {
    IntMatrix m;  // det != 0
    int dimension() const { return static_cast<int>(m.rows()); }
};

MonomialMap make_monomial_map(IntMatrix m);  // validates det != 0

struct DegreeProfile {
    std::vector<Bracket> lambdas;        // lambda_0 .. lambda_k
    std::vector<bool> exact;             // per-degree exactness
    std::vector<double> growth_oracle;   // log growth of |ext^p(M)^n| per p
    std::vector<double> oracle_gap;      // |log lambda_p - growth|
    Int det;                             // lambda_k = |det| exactly

    // max_p log(lambda_p) as a certified bracket
    Bracket max_log() const;
    std::size_t argmax_log() const;
};

struct DegreeOptions {
    SignedRadiusOptions radius;
    int oracle_horizon = 24;
    int oracle_max_horizon = 192;
    bool cross_check = true;
};

DegreeProfile monomial_dynamical_degrees(const MonomialMap& map, const DegreeOptions& opts = {});

// Gap between the degree bound and an entropy value h (certified bracket):
// gap = max_p log lambda_p - h.  A certified h above the bound is flagged
// as an inconsistency for investigation rather than silently accepted.
struct GapReport {
    Bracket gap;
    std::size_t achieving_p = 0;
    bool within_bound = true;     // gap >= -tolerance
    bool inconsistency = false;   // certified h strictly above the bound
    std::string note;
};

GapReport gromov_yomdin_gap(const DegreeProfile& profile, const Bracket& h,
                            double tolerance = 1e-9);

}  // namespace etale
