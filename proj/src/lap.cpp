#include "etale/lap.hpp"

#include <algorithm>

namespace etale {

PiecewiseLinearMap make_piecewise_linear(std::vector<Rat> breakpoints, std::vector<Rat> values) {
    if (breakpoints.size() < 2 || breakpoints.size() != values.size())
        throw std::invalid_argument("piecewise linear map: need matching breakpoints/values");
    if (breakpoints.front() != 0 || breakpoints.back() != 1)
        throw std::invalid_argument("piecewise linear map: domain must be [0,1]");
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (!(breakpoints[i] < breakpoints[i + 1]))
            throw std::invalid_argument("piecewise linear map: breakpoints must increase");
        if (values[i] == values[i + 1])
            throw std::invalid_argument("piecewise linear map: pieces must be strictly monotone");
    }
    for (const Rat& v : values)
        if (v < 0 || v > 1)
            throw std::invalid_argument("piecewise linear map: values must stay in [0,1]");
    return PiecewiseLinearMap{std::move(breakpoints), std::move(values), true};
}

PiecewiseLinearMap tent_map(const Rat& slope) {
    if (slope <= 0 || slope > 2) throw std::invalid_argument("tent_map: slope must be in (0,2]");
    Rat half(1, 2);
    return make_piecewise_linear({Rat(0), half, Rat(1)}, {Rat(0), slope / 2, Rat(0)});
}

Rat evaluate(const PiecewiseLinearMap& f, const Rat& x) {
    if (x < 0 || x > 1) throw std::invalid_argument("piecewise evaluate: x outside [0,1]");
    std::size_t j = 0;
    while (j + 2 < f.breakpoints.size() && x > f.breakpoints[j + 1]) ++j;
    const Rat &a = f.breakpoints[j], &b = f.breakpoints[j + 1];
    const Rat slope = (f.values[j + 1] - f.values[j]) / (b - a);
    return f.values[j] + slope * (x - a);
}

namespace {

struct AffinePiece {
    Rat a, b;       // domain [a, b]
    Rat alpha, beta;  // f^k(x) = alpha x + beta on [a, b]
};

int sign_of(const Rat& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

Int count_laps(const std::vector<AffinePiece>& pieces) {
    Int laps = 0;
    int prev = 0;
    for (const auto& p : pieces) {
        int s = sign_of(p.alpha);
        if (s != prev) ++laps;  // continuity merges equal-sign neighbors
        prev = s;
    }
    return laps;
}

}  // namespace

LapEstimate lap_entropy(const PiecewiseLinearMap& f, int n_max, std::size_t piece_cap) {
    if (n_max < 2) throw std::invalid_argument("lap_entropy: n_max must be >= 2");
    const int m = f.pieces();
    std::vector<Rat> slope(static_cast<std::size_t>(m)), icept(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        const Rat &a = f.breakpoints[static_cast<std::size_t>(j)],
                  &b = f.breakpoints[static_cast<std::size_t>(j) + 1];
        slope[static_cast<std::size_t>(j)] =
            (f.values[static_cast<std::size_t>(j) + 1] - f.values[static_cast<std::size_t>(j)]) /
            (b - a);
        icept[static_cast<std::size_t>(j)] =
            f.values[static_cast<std::size_t>(j)] - slope[static_cast<std::size_t>(j)] * a;
    }
    auto piece_of = [&](const Rat& y) {
        // index j with y in [x_j, x_{j+1}]; boundaries resolve low
        int lo = 0, hi = m - 1;
        while (lo < hi) {
            int mid = (lo + hi) / 2;
            if (y > f.breakpoints[static_cast<std::size_t>(mid) + 1]) lo = mid + 1; else hi = mid;
        }
        return lo;
    };

    std::vector<AffinePiece> cur;
    for (int j = 0; j < m; ++j)
        cur.push_back({f.breakpoints[static_cast<std::size_t>(j)],
                       f.breakpoints[static_cast<std::size_t>(j) + 1],
                       slope[static_cast<std::size_t>(j)], icept[static_cast<std::size_t>(j)]});

    LapEstimate out;
    out.lap_counts.push_back(count_laps(cur));
    for (int n = 2; n <= n_max; ++n) {
        std::vector<AffinePiece> next;
        for (const auto& p : cur) {
            Rat ya = p.alpha * p.a + p.beta;
            Rat yb = p.alpha * p.b + p.beta;
            Rat ylo = std::min(ya, yb), yhi = std::max(ya, yb);
            // cut the domain at preimages of interior breakpoints of f
            std::vector<Rat> cuts{p.a};
            if (p.alpha > 0) {
                for (int j = 1; j < m; ++j) {
                    const Rat& bp = f.breakpoints[static_cast<std::size_t>(j)];
                    if (bp > ylo && bp < yhi) cuts.push_back((bp - p.beta) / p.alpha);
                }
            } else {
                for (int j = m - 1; j >= 1; --j) {
                    const Rat& bp = f.breakpoints[static_cast<std::size_t>(j)];
                    if (bp > ylo && bp < yhi) cuts.push_back((bp - p.beta) / p.alpha);
                }
            }
            cuts.push_back(p.b);
            for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
                const Rat &a = cuts[c], &b = cuts[c + 1];
                Rat ymid = p.alpha * ((a + b) / 2) + p.beta;
                int j = piece_of(ymid);
                next.push_back({a, b, slope[static_cast<std::size_t>(j)] * p.alpha,
                                slope[static_cast<std::size_t>(j)] * p.beta +
                                    icept[static_cast<std::size_t>(j)]});
            }
            if (next.size() > piece_cap)
                throw LapCapExceeded("lap_entropy: piece count exceeded cap of " +
                                         std::to_string(piece_cap) + " at iterate " +
                                         std::to_string(n),
                                     out.lap_counts);
        }
        cur = std::move(next);
        out.lap_counts.push_back(count_laps(cur));
    }
    out.value = log_int(out.lap_counts.back()) / n_max;
    return out;
}

MetricSystem metric_system_from(const PiecewiseLinearMap& f, const std::string& name) {
    // double-precision view; clamps keep iterated orbits inside [0,1]
    std::vector<double> bp, val;
    for (const Rat& r : f.breakpoints) bp.push_back(r.convert_to<double>());
    for (const Rat& r : f.values) val.push_back(r.convert_to<double>());
    return MetricSystem{SpaceKind::Interval, name, [bp, val](double x) {
                            x = std::clamp(x, 0.0, 1.0);
                            std::size_t j = 0;
                            while (j + 2 < bp.size() && x > bp[j + 1]) ++j;
                            double s = (val[j + 1] - val[j]) / (bp[j + 1] - bp[j]);
                            return std::clamp(val[j] + s * (x - bp[j]), 0.0, 1.0);
                        }};
}

}  // namespace etale
