#include "etale/metric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace etale {

namespace {
constexpr double kPi = 3.14159265358979323846;

double frac(double x) {
    double f = x - std::floor(x);
    return f >= 1.0 ? 0.0 : f;
}
}  // namespace

double space_distance(SpaceKind space, double u, double v) {
    switch (space) {
        case SpaceKind::Circle: {
            double d = std::abs(u - v);
            return std::min(d, 1.0 - d);
        }
        case SpaceKind::Interval:
            return std::abs(u - v);
        case SpaceKind::ProjectiveLine:
            return std::abs(std::sin(kPi * (u - v)));
    }
    return 0.0;
}

double space_diameter(SpaceKind space) {
    switch (space) {
        case SpaceKind::Circle: return 0.5;
        case SpaceKind::Interval: return 1.0;
        case SpaceKind::ProjectiveLine: return 1.0;
    }
    return 0.0;
}

std::vector<double> sample_grid(SpaceKind space, double resolution) {
    if (resolution <= 0.0 || resolution > 0.5)
        throw std::invalid_argument("sample_grid: resolution must be in (0, 0.5]");
    const long n = static_cast<long>(std::ceil(1.0 / resolution));
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(n) + 1);
    for (long i = 0; i < n; ++i) grid.push_back(static_cast<double>(i) / static_cast<double>(n));
    if (space == SpaceKind::Interval) grid.push_back(1.0);
    return grid;
}

MetricSystem builtin_metric_system(const std::string& name, double a, double b) {
    if (name == "circle_doubling")
        return MetricSystem{SpaceKind::Circle, name, [](double u) { return frac(2.0 * u); }};
    if (name == "circle_identity")
        return MetricSystem{SpaceKind::Circle, name, [](double u) { return u; }};
    if (name == "real_affine") {
        if (a == 0.0)
            throw std::invalid_argument("real_affine: coefficient a must be nonzero");
        std::string full = name + "(" + std::to_string(a) + "," + std::to_string(b) + ")";
        return MetricSystem{SpaceKind::ProjectiveLine, full, [a, b](double u) {
                                if (u == 0.0) return 0.0;  // infinity is fixed
                                double x = std::tan(kPi * (u - 0.5));
                                double y = a * x + b;
                                if (!std::isfinite(y)) return 0.0;
                                return std::atan(y) / kPi + 0.5;
                            }};
    }
    std::string msg = "unknown builtin metric system '" + name + "'; available:";
    for (const auto& s : builtin_metric_names()) msg += " " + s;
    throw std::invalid_argument(msg);
}

std::vector<std::string> builtin_metric_names() {
    return {"circle_doubling", "circle_identity", "real_affine"};
}

namespace {

struct Orbits {
    std::vector<double> flat;  // point-major: orbit of grid[i] at flat[i*h .. i*h+h-1]
    std::size_t points = 0;
    int horizon = 0;
    double at(std::size_t p, int i) const { return flat[p * static_cast<std::size_t>(horizon) + static_cast<std::size_t>(i)]; }
};

Orbits compute_orbits(const MetricSystem& sys, const std::vector<double>& grid, int horizon) {
    Orbits o;
    o.points = grid.size();
    o.horizon = horizon;
    o.flat.resize(grid.size() * static_cast<std::size_t>(horizon));
    for (std::size_t p = 0; p < grid.size(); ++p) {
        double x = grid[p];
        for (int i = 0; i < horizon; ++i) {
            o.flat[p * static_cast<std::size_t>(horizon) + static_cast<std::size_t>(i)] = x;
            x = sys.map(x);
        }
    }
    return o;
}

void check_grid(const MetricSystem& sys, double eps, double grid_resolution) {
    // actual metric step of the grid
    double step = grid_resolution;
    if (sys.space == SpaceKind::ProjectiveLine) step = std::sin(kPi * grid_resolution);
    if (!(step < eps / 4.0)) {
        double needed = sys.space == SpaceKind::ProjectiveLine
                            ? std::asin(eps / 4.0) / kPi
                            : eps / 4.0;
        throw std::invalid_argument(
            "bowen estimator: grid too coarse for epsilon; need coordinate resolution < " +
            std::to_string(needed));
    }
}

long greedy_span(const Orbits& orbits, const std::vector<double>& grid, SpaceKind space,
                 int horizon, double eps) {
    // Greedy pass in ascending coordinate order.  A candidate is covered
    // when some selected point is within eps in the Bowen metric; since the
    // i = 0 term participates in the max, only selected points within eps
    // in plain distance can cover, which bounds the scan window.
    std::vector<std::size_t> selected;  // indices, ascending coordinate
    std::vector<double> selected_u;
    const bool wraps = space != SpaceKind::Interval;
    auto bowen_covered = [&](std::size_t p, std::size_t s) {
        for (int i = 0; i < horizon; ++i)
            if (space_distance(space, orbits.at(p, i), orbits.at(s, i)) > eps) return false;
        return true;
    };
    for (std::size_t p = 0; p < grid.size(); ++p) {
        bool covered = false;
        double u = grid[p];
        // window [u - eps, u + eps] in selected_u (sorted)
        auto lo = std::lower_bound(selected_u.begin(), selected_u.end(), u - eps);
        for (auto it = lo; it != selected_u.end() && *it <= u + eps && !covered; ++it)
            covered = bowen_covered(p, selected[static_cast<std::size_t>(it - selected_u.begin())]);
        if (!covered && wraps) {
            // wrap-around windows near 0 and 1
            for (std::size_t k = 0; k < selected.size() && !covered; ++k) {
                double d0 = space_distance(space, u, selected_u[k]);
                if (std::abs(selected_u[k] - u) <= eps) continue;  // already scanned
                if (d0 <= eps) covered = bowen_covered(p, selected[k]);
            }
        }
        if (!covered) {
            selected.push_back(p);
            selected_u.push_back(u);
        }
    }
    return static_cast<long>(selected.size());
}

}  // namespace

long bowen_span_count(const MetricSystem& sys, int horizon, double eps, double grid_resolution) {
    if (horizon < 1) throw std::invalid_argument("bowen_span_count: horizon must be >= 1");
    if (eps <= 0.0) throw std::invalid_argument("bowen_span_count: eps must be positive");
    check_grid(sys, eps, grid_resolution);
    std::vector<double> grid = sample_grid(sys.space, grid_resolution);
    Orbits orbits = compute_orbits(sys, grid, horizon);
    return greedy_span(orbits, grid, sys.space, horizon, eps);
}

BowenEstimate bowen_entropy_estimate(const MetricSystem& sys, int horizon, double eps,
                                     double grid_resolution) {
    if (horizon < 2) throw std::invalid_argument("bowen_entropy_estimate: horizon must be >= 2");
    if (eps <= 0.0) throw std::invalid_argument("bowen_entropy_estimate: eps must be positive");
    check_grid(sys, eps, grid_resolution);
    std::vector<double> grid = sample_grid(sys.space, grid_resolution);
    Orbits orbits = compute_orbits(sys, grid, horizon);
    BowenEstimate e;
    e.span_prev = greedy_span(orbits, grid, sys.space, horizon - 1, eps);
    e.span_last = greedy_span(orbits, grid, sys.space, horizon, eps);
    e.rate_prev = std::log(static_cast<double>(e.span_prev)) / (horizon - 1);
    e.rate_last = std::log(static_cast<double>(e.span_last)) / horizon;
    e.increment = std::log(static_cast<double>(e.span_last)) -
                  std::log(static_cast<double>(e.span_prev));
    e.diagnostic = e.rate_prev - e.rate_last;
    return e;
}

MetricSystem iterate_system(const MetricSystem& sys, int n) {
    if (n < 1) throw std::invalid_argument("iterate_system: n must be >= 1");
    MetricSystem out = sys;
    out.name = sys.name + "^" + std::to_string(n);
    auto base = sys.map;
    out.map = [base, n](double u) {
        for (int i = 0; i < n; ++i) u = base(u);
        return u;
    };
    return out;
}

bool grid_monotone_degree_one(const MetricSystem& sys, double resolution) {
    if (sys.space == SpaceKind::Interval) return false;
    std::vector<double> grid = sample_grid(sys.space, resolution);
    // Image angles must wind around exactly once and never step backwards
    // by more than wrap.
    double total = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double a = sys.map(grid[i]);
        double b = sys.map(grid[(i + 1) % grid.size()]);
        double d = b - a;
        while (d < -0.5) d += 1.0;
        while (d > 0.5) d -= 1.0;
        total += d;
        if (d < -4.0 * resolution) return false;  // local order reversal
    }
    return std::abs(std::abs(total) - 1.0) < 0.01;
}

bool grid_has_fixed_point(const MetricSystem& sys, double resolution, double tol) {
    std::vector<double> grid = sample_grid(sys.space, resolution);
    for (double u : grid)
        if (space_distance(sys.space, sys.map(u), u) <= tol) return true;
    return false;
}

}  // namespace etale
