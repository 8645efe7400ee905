// Piecewise-linear interval self-maps with exact rational breakpoints, and
// the lap-count entropy estimator: the number of monotonicity laps of f^n
// grows like exp(n h), with lap counts computed by exact interval
// subdivision (no floating point).

#pragma once

#include "etale/int_matrix.hpp"
#include "etale/metric.hpp"

#include <vector>

namespace etale {

struct PiecewiseLinearMap {
    std::vector<Rat> breakpoints;  // 0 = x_0 < ... < x_m = 1
    std::vector<Rat> values;       // f(x_i); linear interpolation between
    bool continuous = true;        // always true for maps built here

    int pieces() const { return static_cast<int>(breakpoints.size()) - 1; }
};

// Validates: breakpoints strictly increasing from 0 to 1, values within
// [0,1], every piece strictly monotone (nonzero slope).
PiecewiseLinearMap make_piecewise_linear(std::vector<Rat> breakpoints, std::vector<Rat> values);

// Tent-family builtin: slope +s on [0,1/2], slope -s on [1/2,1]; s in (0,2].
PiecewiseLinearMap tent_map(const Rat& slope);

Rat evaluate(const PiecewiseLinearMap& f, const Rat& x);

struct LapCapExceeded : CapExceeded {
    std::vector<Int> partial;  // lap counts computed before the cap hit
    LapCapExceeded(const std::string& what, std::vector<Int> seq)
        : CapExceeded(what), partial(std::move(seq)) {}
};

struct LapEstimate {
    std::vector<Int> lap_counts;  // lap(f^1) .. lap(f^n_max)
    double value = 0.0;           // log(lap(f^n_max)) / n_max
};

LapEstimate lap_entropy(const PiecewiseLinearMap& f, int n_max, std::size_t piece_cap = 1u << 21);

// View as a MetricSystem on the interval (double evaluation), for
// cross-validation against the Bowen estimator.
MetricSystem metric_system_from(const PiecewiseLinearMap& f, const std::string& name);

}  // namespace etale
