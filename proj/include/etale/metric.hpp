// Compact metric systems given as evaluable maps, and the Bowen-Dinaburg
// spanning-set entropy estimator over a deterministic sample grid.
//
// Spaces and their fixed metrics (internal coordinate u):
//   Circle          u in [0,1),  d = min(|u-v|, 1-|u-v|)
//   Interval        u in [0,1],  d = |u-v|
//   ProjectiveLine  u in [0,1) an angle; the point is x = tan(pi(u-1/2)),
//                   u = 0 is the point at infinity, and the chordal metric
//                   on R u {oo} is d = |sin(pi(u-v))|.
//
// Estimates from this module are NUMERIC (non-certified) and are widened by
// a guard band before they enter any entropy report.

#pragma once

#include "etale/numeric.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace etale {

enum class SpaceKind { Circle, Interval, ProjectiveLine };

double space_distance(SpaceKind space, double u, double v);
double space_diameter(SpaceKind space);

// Deterministic uniform grid in the internal coordinate; `resolution` is
// the coordinate step (e.g. 2^-14).
std::vector<double> sample_grid(SpaceKind space, double resolution);

struct MetricSystem {
    SpaceKind space = SpaceKind::Circle;
    std::string name;
    std::function<double(double)> map;  // total on the internal coordinate

    bool operator==(const MetricSystem& o) const {
        return space == o.space && name == o.name;  // systems are identified by name
    }
};

// Named systems available to scenarios.  Unknown names raise an error that
// lists the catalogue.  real_affine takes the map x -> a x + b on R,
// extended to the projective line with infinity fixed.
MetricSystem builtin_metric_system(const std::string& name, double a = 0.0, double b = 0.0);
std::vector<std::string> builtin_metric_names();

struct BowenEstimate {
    long span_last = 0;        // greedy (n, eps)-spanning count over the grid
    long span_prev = 0;        // same at horizon n-1
    double rate_last = 0.0;    // log S(n) / n        (upper-flavored quotient)
    double rate_prev = 0.0;    // log S(n-1) / (n-1)
    double increment = 0.0;    // log S(n) - log S(n-1)  (growth-rate estimate)
    double diagnostic = 0.0;   // rate_prev - rate_last; positive = still decreasing
    bool diagnostic_decreasing() const { return diagnostic >= 0.0; }
};

// Greedy minimal (n,eps)-spanning subset of the grid under the Bowen metric
// max_{0<=i<n} d(f^i x, f^i y), scanning grid points in ascending
// coordinate order.  Requires grid step < eps/4 (error names the needed
// resolution) and horizon >= 2.
BowenEstimate bowen_entropy_estimate(const MetricSystem& sys, int horizon, double eps,
                                     double grid_resolution);

// Span count at a single horizon (for monotonicity property tests).
long bowen_span_count(const MetricSystem& sys, int horizon, double eps, double grid_resolution);

// n-fold composition (for iterate-scaling tests).
MetricSystem iterate_system(const MetricSystem& sys, int n);

// Zero-entropy cross-checks for circle homeomorphisms: a degree-one
// homeomorphism with a fixed point has rotation number 0 and entropy 0.
bool grid_monotone_degree_one(const MetricSystem& sys, double resolution);
bool grid_has_fixed_point(const MetricSystem& sys, double resolution, double tol);

}  // namespace etale
