#include "etale/charpoly.hpp"

#include <algorithm>
#include <cassert>

namespace etale {

namespace {

// Newton's identities: from power sums s_1..s_n build elementary symmetric
// functions e_1..e_n.  m * e_m = sum_{i=1..m} (-1)^{i-1} e_{m-i} s_i, and
// every division is exact over the integers.
std::vector<Int> newton_to_elementary(const std::vector<Int>& s) {
    const std::size_t n = s.size();
    std::vector<Int> e(n + 1);
    e[0] = 1;
    for (std::size_t m = 1; m <= n; ++m) {
        Int acc = 0;
        for (std::size_t i = 1; i <= m; ++i) {
            Int term = e[m - i] * s[i - 1];
            if (i % 2 == 0) acc -= term; else acc += term;
        }
        Int q = acc / Int(m);
        assert(q * Int(m) == acc && "Newton identity division must be exact");
        e[m] = q;
    }
    return e;
}

std::vector<Int> elementary_to_monic(const std::vector<Int>& e) {
    // prod (x - mu_i) = sum_j (-1)^j e_j x^{n-j}; store low degree first.
    const std::size_t n = e.size() - 1;
    std::vector<Int> p(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        Int c = e[j];
        if (j % 2 == 1) c = -c;
        p[n - j] = c;
    }
    return p;
}

std::vector<Int> trace_power_sums(const IntMatrix& m, std::size_t count) {
    std::vector<Int> s;
    s.reserve(count);
    IntMatrix p = m;
    for (std::size_t k = 1; k <= count; ++k) {
        if (k > 1) p = p * m;
        Int tr = 0;
        for (Eigen::Index i = 0; i < p.rows(); ++i) tr += p(i, i);
        s.push_back(tr);
    }
    return s;
}

int sgn(const Int& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// Divide p by (y - c) in place when c is a root (synthetic division).
// Returns false (p untouched) when c is not a root.
bool deflate_root(std::vector<Int>& p, const Int& c) {
    const std::size_t d = p.size() - 1;
    if (d == 0) return false;
    std::vector<Int> q(d);
    Int carry = p[d];
    for (std::size_t i = d; i-- > 0;) {
        q[i] = carry;
        carry = p[i] + c * carry;
    }
    if (carry != 0) return false;
    p = std::move(q);
    return true;
}

std::size_t degree(const std::vector<Int>& p) {
    std::size_t d = p.size();
    while (d > 0 && p[d - 1] == 0) --d;
    return d == 0 ? 0 : d - 1;
}

bool is_zero_poly(const std::vector<Int>& p) {
    return std::all_of(p.begin(), p.end(), [](const Int& c) { return c == 0; });
}

void strip_content(std::vector<Int>& p) {
    Int g = 0;
    for (const Int& c : p) g = boost::multiprecision::gcd(g, c);
    if (g > 1)
        for (Int& c : p) c /= g;
}

// Pseudo-remainder of a by b, adjusted so the result equals (a mod b) up to
// a positive factor; required so the chain keeps valid Sturm signs.
std::vector<Int> sturm_negative_remainder(const std::vector<Int>& a, const std::vector<Int>& b) {
    std::vector<Int> r = a;
    const std::size_t db = degree(b);
    const Int lead = b[db];
    while (!is_zero_poly(r) && degree(r) >= db) {
        const std::size_t dr = degree(r);
        Int coef = r[dr];
        // r <- lead * r - coef * x^{dr-db} * b   (kills the top term)
        for (std::size_t i = 0; i <= dr; ++i) r[i] *= lead;
        for (std::size_t i = 0; i <= db; ++i) r[dr - db + i] -= coef * b[i];
        // Multiplying by a negative leading coefficient flips the sign of
        // the partial remainder; undo immediately to keep signs coherent.
        if (lead < 0)
            for (Int& c : r) c = -c;
        r.resize(dr);  // top coefficient is exactly zero now
        if (r.empty()) r.push_back(Int(0));
    }
    for (Int& c : r) c = -c;
    strip_content(r);
    return r;
}

}  // namespace

std::vector<Int> char_poly(const IntMatrix& m) {
    if (!is_square(m)) throw std::invalid_argument("char_poly: matrix not square");
    const std::size_t n = static_cast<std::size_t>(m.rows());
    if (n == 0) return {Int(1)};
    std::vector<Int> s = trace_power_sums(m, n);
    return elementary_to_monic(newton_to_elementary(s));
}

std::vector<Int> eigenvalue_product_poly(const IntMatrix& m) {
    if (!is_square(m)) throw std::invalid_argument("eigenvalue_product_poly: matrix not square");
    const std::size_t n = static_cast<std::size_t>(m.rows());
    if (n == 0) return {Int(1)};
    const std::size_t nn = n * n;
    std::vector<Int> s = trace_power_sums(m, nn);
    for (Int& v : s) v = v * v;  // tr((M (x) M)^m) = tr(M^m)^2
    return elementary_to_monic(newton_to_elementary(s));
}

SturmChain::SturmChain(const std::vector<Int>& p) {
    std::vector<Int> p0 = p;
    strip_content(p0);
    polys.push_back(p0);
    const std::size_t d = degree(p0);
    if (d == 0) return;
    std::vector<Int> p1(d);
    for (std::size_t i = 1; i <= d; ++i) p1[i - 1] = p0[i] * Int(i);
    strip_content(p1);
    polys.push_back(p1);
    while (true) {
        const std::vector<Int>& a = polys[polys.size() - 2];
        const std::vector<Int>& b = polys[polys.size() - 1];
        if (is_zero_poly(b) || degree(b) == 0) break;
        std::vector<Int> r = sturm_negative_remainder(a, b);
        if (is_zero_poly(r)) break;
        polys.push_back(std::move(r));
    }
}

int SturmChain::sign_at(const std::vector<Int>& poly, const Rat& x) const {
    // Evaluate sum c_i x^i at x = p/q as the integer sum c_i p^i q^{d-i}.
    const Int p = numerator(x);
    const Int q = denominator(x);
    const std::size_t d = degree(poly);
    Int acc = poly[d];
    Int qq = 1;
    for (std::size_t i = d; i-- > 0;) {
        qq *= q;
        acc = acc * p + poly[i] * qq;
    }
    return sgn(acc);
}

int SturmChain::variations(const Rat& x) const {
    int var = 0, prev = 0;
    for (const auto& poly : polys) {
        int s = sign_at(poly, x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

int SturmChain::count_roots(const Rat& a, const Rat& b) const {
    return variations(a) - variations(b);
}

SignedRadiusEstimate spectral_radius_signed(const IntMatrix& m, const SignedRadiusOptions& opts) {
    if (!is_square(m)) throw std::invalid_argument("spectral_radius_signed: matrix not square");
    if (opts.tol <= 0) throw std::invalid_argument("spectral_radius_signed: tol must be positive");
    if (m.rows() > opts.max_dimension)
        throw CapExceeded("spectral_radius_signed: dimension exceeds cap of " +
                          std::to_string(opts.max_dimension));
    SignedRadiusEstimate out;
    if (m.rows() == 0 || max_abs_entry(m) == 0) {
        out.bracket = Bracket::point(0.0);
        out.exact = true;
        return out;
    }

    std::vector<Int> poly = eigenvalue_product_poly(m);
    SturmChain chain(poly);

    // Cauchy bound on the roots of the monic poly: 1 + max |coeff|.
    Int cauchy = 1;
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
        Int a = poly[i] < 0 ? Int(-poly[i]) : poly[i];
        if (a > cauchy) cauchy = a;
    }
    Rat lo(-1), hi(cauchy + 1);
    // Invariant: the largest real root y* (= rho^2, always present) lies in
    // (lo, hi]; hi is never a root, so Sturm counts against hi stay valid.
    auto poly_at_zero = [&](const Rat& x) { return chain.sign_at(poly, x) == 0; };
    Rat exact_root;
    bool have_exact = false;
    // An exact-root test for integer candidates.  Sturm variations are
    // meaningless at a root, so the candidate is divided out first and the
    // deflated polynomial is counted on (c, cauchy+1].  Returns true when c
    // is a root (exact_root/lo updated accordingly).
    auto try_exact_integer = [&](const Int& cand) {
        std::vector<Int> deflated = poly;
        bool any = false;
        while (deflate_root(deflated, cand)) any = true;
        if (!any) return false;
        Rat c(cand);
        SturmChain rest(deflated);
        if (degree(deflated) == 0 || rest.count_roots(c, Rat(cauchy + 1)) == 0) {
            exact_root = c;
            have_exact = true;
        } else {
            lo = c;  // c is a root, but larger roots remain
        }
        return true;
    };
    Int last_candidate = -1;
    for (int iter = 0; iter < opts.max_bisections; ++iter) {
        // Integer shortcut once the interval is short: an integer root with
        // nothing above it closes the bracket exactly.
        if (!have_exact && hi - lo <= 1) {
            Int cand = numerator(hi) / denominator(hi);  // floor for positive hi
            if (cand != last_candidate && Rat(cand) > lo && Rat(cand) <= hi) {
                last_candidate = cand;
                try_exact_integer(cand);
            }
        }
        if (have_exact) break;
        Bracket y(lo < 0 ? 0.0 : to_double_down(lo), to_double_up(hi));
        Bracket r = sqrt_bracket(y);
        if (r.width() <= opts.tol) {
            out.bracket = r;
            out.bisections = iter;
            return out;
        }
        Rat mid = (lo + hi) / 2;
        ++out.bisections;
        if (poly_at_zero(mid)) {
            // A dyadic root of a monic integer polynomial is an integer.
            if (!try_exact_integer(numerator(mid))) lo = mid;
        } else if (chain.count_roots(mid, hi) >= 1) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if (!have_exact)
        throw std::runtime_error("spectral_radius_signed: bisection cap exceeded");

    // y* known exactly; take sqrt, exact when y* is a perfect square.
    if (exact_root < 0) exact_root = 0;
    Int num = numerator(exact_root), den = denominator(exact_root);
    Int sn = sqrt(num), sd = sqrt(den);
    if (sn * sn == num && sd * sd == den) {
        Rat root(sn, sd);
        out.bracket = Bracket(to_double_down(root), to_double_up(root));
        out.exact = true;
    } else {
        out.bracket = sqrt_bracket(Bracket(to_double_down(exact_root), to_double_up(exact_root)));
    }
    return out;
}

GrowthEstimate power_growth_rate(const IntMatrix& m, int horizon, int max_horizon,
                                 double stability) {
    if (!is_square(m)) throw std::invalid_argument("power_growth_rate: matrix not square");
    GrowthEstimate out;
    if (m.rows() == 0 || max_abs_entry(m) == 0) {
        out.zero = true;
        return out;
    }
    MatrixCaps caps;
    caps.max_entry_bits = 1u << 24;
    auto rate_at = [&](int n) -> GrowthEstimate {
        GrowthEstimate g;
        IntMatrix p = matrix_power(m, static_cast<unsigned long>(n), caps);
        Int big = max_abs_entry(p);
        if (big == 0) { g.zero = true; return g; }
        g.log_rate = log_int(big) / n;
        g.horizon_used = n;
        return g;
    };
    GrowthEstimate prev = rate_at(std::max(1, horizon / 2));
    if (prev.zero) { out.zero = true; return out; }
    int n = horizon;
    while (true) {
        GrowthEstimate cur = rate_at(n);
        if (cur.zero) { out.zero = true; return out; }
        if (std::abs(cur.log_rate - prev.log_rate) <= stability || n >= max_horizon) return cur;
        prev = cur;
        n = std::min(2 * n, max_horizon);
    }
}

}  // namespace etale
