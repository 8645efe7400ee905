#include "etale/perron.hpp"

#include <algorithm>

namespace etale {

namespace {

constexpr unsigned kProbeBits = 48;  // probe entries renormalized to ~2^48

struct RatBound {
    Int num;
    Int den;  // den > 0
};

// num1/den1 < num2/den2 by cross multiplication (dens positive).
bool rat_less(const RatBound& a, const RatBound& b) { return a.num * b.den < b.num * a.den; }

// Certified bracket for one nontrivial SCC (submatrix is irreducible,
// dimension >= 2 or a 1x1 with positive diagonal handled by caller).
Bracket component_bracket(const IntMatrix& b, double tol, long budget, long& used,
                          Bracket& best_so_far, bool& converged) {
    const Eigen::Index n = b.rows();
    IntVector x = IntVector::Constant(n, 1);
    Bracket acc(0.0, std::numeric_limits<double>::infinity());
    converged = false;
    while (used < budget) {
        ++used;
        IntVector y = b * x;
        // Exact quotients y_i / x_i.
        RatBound lo{y(0), x(0)}, hi{y(0), x(0)};
        for (Eigen::Index i = 1; i < n; ++i) {
            RatBound q{y(i), x(i)};
            if (rat_less(q, lo)) lo = q;
            if (rat_less(hi, q)) hi = q;
        }
        Bracket cert(to_double_down(Rat(lo.num, lo.den)), to_double_up(Rat(hi.num, hi.den)));
        acc = intersect(acc, cert);
        best_so_far = acc;
        if (acc.width() <= tol) { converged = true; return acc; }
        // Advance by (B + I), renormalize to kProbeBits and keep positivity.
        IntVector z = y + x;
        Int top = 0;
        for (Eigen::Index i = 0; i < n; ++i)
            if (z(i) > top) top = z(i);
        for (Eigen::Index i = 0; i < n; ++i) {
            Int scaled = (z(i) << kProbeBits) / top;
            x(i) = scaled > 0 ? scaled : Int(1);
        }
    }
    return acc;
}

}  // namespace

Bracket collatz_wielandt(const IntMatrix& a, const IntVector& probe) {
    require_square_nonnegative(a, "collatz_wielandt");
    if (probe.size() != a.rows()) throw std::invalid_argument("collatz_wielandt: probe size mismatch");
    for (Eigen::Index i = 0; i < probe.size(); ++i)
        if (probe(i) <= 0) throw std::invalid_argument("collatz_wielandt: probe must be positive");
    IntVector y = a * probe;
    Rat lo(y(0), probe(0)), hi = lo;
    for (Eigen::Index i = 1; i < probe.size(); ++i) {
        Rat q(y(i), probe(i));
        if (q < lo) lo = q;
        if (q > hi) hi = q;
    }
    return Bracket(to_double_down(lo), to_double_up(hi));
}

PerronEstimate perron_root(const IntMatrix& a, const PerronOptions& opts) {
    require_square_nonnegative(a, "perron_root");
    if (opts.tol <= 0) throw std::invalid_argument("perron_root: tol must be positive");
    PerronEstimate est;
    if (a.rows() == 0) {
        est.exact_zero = true;
        est.bracket = Bracket::point(0.0);
        return est;
    }
    SccDecomposition d = scc_decompose(a);
    Bracket overall = Bracket::point(0.0);
    bool any_cycle = false;
    long used = 0;
    for (const auto& comp : d.components) {
        if (comp.size() == 1) {
            int v = comp.front();
            if (a(v, v) != 0) {
                any_cycle = true;
                overall = bracket_max(overall, Bracket(to_double_down(a(v, v)), to_double_up(a(v, v))));
            }
            continue;
        }
        any_cycle = true;
        const Eigen::Index k = static_cast<Eigen::Index>(comp.size());
        IntMatrix b(k, k);
        for (Eigen::Index i = 0; i < k; ++i)
            for (Eigen::Index j = 0; j < k; ++j)
                b(i, j) = a(comp[static_cast<std::size_t>(i)], comp[static_cast<std::size_t>(j)]);
        Bracket best(0.0, std::numeric_limits<double>::infinity());
        bool converged = false;
        Bracket cb = component_bracket(b, opts.tol, opts.max_iterations, used, best, converged);
        if (!converged) {
            est.bracket = bracket_max(overall, best);
            est.iterations = used;
            throw ConvergenceFailure("perron_root: iteration cap " +
                                         std::to_string(opts.max_iterations) +
                                         " reached before bracket width " + std::to_string(opts.tol),
                                     est);
        }
        overall = bracket_max(overall, cb);
    }
    est.iterations = used;
    est.exact_zero = !any_cycle;
    est.bracket = est.exact_zero ? Bracket::point(0.0) : overall;
    return est;
}

}  // namespace etale
