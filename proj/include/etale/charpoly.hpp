// Exact characteristic polynomials and certified spectral radii for signed
// integer matrices.
//
// The spectral radius of a real matrix M equals sqrt of the largest real
// root of char(M (x) M): eigenvalues of the Kronecker square are all
// products lambda_i * lambda_j, the value rho(M)^2 is always attained by a
// conjugate pair (or a real square), and no root exceeds it in modulus.
// The largest real root of the exact integer polynomial is then isolated by
// Sturm-sequence bisection, giving a certified enclosure with no floating
// point in the loop.  char(M (x) M) itself is assembled from trace power
// sums via Newton's identities -- tr((M (x) M)^m) = tr(M^m)^2 -- so the
// Kronecker square is never formed.

#pragma once

#include "etale/int_matrix.hpp"

#include <vector>

namespace etale {

// Coefficients of the monic characteristic polynomial, low degree first:
// p[0] + p[1] x + ... + p[n] x^n with p[n] = 1.
std::vector<Int> char_poly(const IntMatrix& m);

// Monic integer polynomial whose roots are all pairwise eigenvalue products
// lambda_i * lambda_j of m (the characteristic polynomial of m (x) m).
std::vector<Int> eigenvalue_product_poly(const IntMatrix& m);

// Number of distinct real roots of p in the half-open interval (a, b],
// via an exact Sturm chain.  Endpoints must not be roots of p when counting
// matters; the bisection below handles exact hits explicitly.
struct SturmChain {
    std::vector<std::vector<Int>> polys;  // primitive integer polynomials
    explicit SturmChain(const std::vector<Int>& p);
    int sign_at(const std::vector<Int>& poly, const Rat& x) const;
    int variations(const Rat& x) const;
    int count_roots(const Rat& a, const Rat& b) const;  // roots in (a, b]
};

struct SignedRadiusOptions {
    double tol = 1e-9;
    int max_dimension = 8;
    int max_bisections = 20000;
};

struct SignedRadiusEstimate {
    Bracket bracket;      // contains max |eigenvalue|
    bool exact = false;   // bracket is a point found as an exact root
    int bisections = 0;
};

SignedRadiusEstimate spectral_radius_signed(const IntMatrix& m,
                                            const SignedRadiusOptions& opts = {});

// Growth oracle: log(max |entry| of M^n) / n, an estimate of log rho(M).
// If the sequence has not stabilized at horizon n the horizon doubles, up
// to max_horizon.  M^n == 0 reports exact zero via the optional flag.
struct GrowthEstimate {
    double log_rate = 0.0;
    bool zero = false;     // some power vanished: rho = 0
    int horizon_used = 0;
};
GrowthEstimate power_growth_rate(const IntMatrix& m, int horizon = 24, int max_horizon = 192,
                                 double stability = 0.02);

}  // namespace etale
