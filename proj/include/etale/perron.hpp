// Certified spectral-radius brackets for nonnegative integer matrices.
//
// The bracket is the max over strongly connected components of exact
// Collatz-Wielandt bounds: for any strictly positive vector x,
//     min_i (Ax)_i / x_i  <=  rho(A)  <=  max_i (Ax)_i / x_i.
// Quotients are evaluated in exact rational arithmetic on integer probe
// vectors, so the returned interval is a true enclosure.  The probe vector
// is driven by power iteration on A + I restricted to the component (the
// shift makes irreducible-but-periodic components converge; it changes the
// iteration direction only, not the certificate).

#pragma once

#include "etale/int_matrix.hpp"
#include "etale/scc.hpp"

#include <optional>

namespace etale {

struct PerronOptions {
    double tol = 1e-9;
    long max_iterations = 1'000'000;
};

struct PerronEstimate {
    Bracket bracket;          // contains the true spectral radius
    long iterations = 0;
    bool exact_zero = false;  // matrix nilpotent (digraph acyclic)
};

// Raised when the bracket does not reach the requested width within the
// iteration cap; carries the best certified bracket found so far.
struct ConvergenceFailure : std::runtime_error {
    PerronEstimate best;
    ConvergenceFailure(const std::string& what, PerronEstimate b)
        : std::runtime_error(what), best(std::move(b)) {}
};

PerronEstimate perron_root(const IntMatrix& a, const PerronOptions& opts = {});

// Exact Collatz-Wielandt quotients of an explicit positive integer probe:
// returns [min_i (Ax)_i/x_i, max_i (Ax)_i/x_i] as a certified bracket.
Bracket collatz_wielandt(const IntMatrix& a, const IntVector& probe);

}  // namespace etale
