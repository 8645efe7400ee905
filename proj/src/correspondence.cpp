#include "etale/correspondence.hpp"

#include <algorithm>
#include <cmath>

namespace etale {

FiniteCorrespondence make_correspondence(IntMatrix multiplicity) {
    require_square_nonnegative(multiplicity, "make_correspondence");
    return FiniteCorrespondence{std::move(multiplicity)};
}

TrimmedCorrespondence trim_correspondence(const FiniteCorrespondence& c) {
    const int n = c.points();
    std::vector<bool> alive(static_cast<std::size_t>(n), true);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < n; ++v) {
            if (!alive[static_cast<std::size_t>(v)]) continue;
            bool out = false;
            for (int w = 0; w < n && !out; ++w)
                out = alive[static_cast<std::size_t>(w)] && c.multiplicity(v, w) != 0;
            if (!out) {
                alive[static_cast<std::size_t>(v)] = false;
                changed = true;
            }
        }
    }
    TrimmedCorrespondence out;
    for (int v = 0; v < n; ++v)
        (alive[static_cast<std::size_t>(v)] ? out.kept : out.removed).push_back(v);
    if (out.kept.empty()) {
        out.empty = true;
        out.corr = FiniteCorrespondence{IntMatrix(0, 0)};
        return out;
    }
    const Eigen::Index k = static_cast<Eigen::Index>(out.kept.size());
    IntMatrix m(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j)
            m(i, j) = c.multiplicity(out.kept[static_cast<std::size_t>(i)],
                                     out.kept[static_cast<std::size_t>(j)]);
    out.corr = FiniteCorrespondence{std::move(m)};
    return out;
}

GammaEntropy gamma_infinity_entropy(const FiniteCorrespondence& c, const PerronOptions& opts) {
    GammaEntropy out;
    TrimmedCorrespondence t = trim_correspondence(c);
    if (t.empty) {
        out.empty = true;
        out.value = Bracket::point(0.0);
        out.rho.exact_zero = true;
        out.rho.bracket = Bracket::point(0.0);
        return out;
    }
    out.rho = perron_root(t.corr.support_matrix(), opts);
    out.value = out.rho.exact_zero ? Bracket::point(0.0) : log_bracket(out.rho.bracket);
    return out;
}

WeightedFamilyEntry identity_entry(const FiniteCorrespondence& c, const PerronOptions& opts) {
    WeightedFamilyEntry e;
    e.description = "identity";
    e.corr = c;
    e.degree = 1;
    e.upstairs = gamma_infinity_entropy(c, opts);
    e.weighted_value = e.upstairs.value;  // ln(1) = 0
    return e;
}

WeightedFamilyEntry pullback_correspondence(const FiniteCorrespondence& base,
                                            const std::vector<int>& fiber_map,
                                            const PerronOptions& opts) {
    const int n = base.points();
    const int m = static_cast<int>(fiber_map.size());
    if (m == 0) throw PullbackError("pullback: empty cover");
    std::vector<long> fiber_size(static_cast<std::size_t>(n), 0);
    for (int z = 0; z < m; ++z) {
        int x = fiber_map[static_cast<std::size_t>(z)];
        if (x < 0 || x >= n) throw PullbackError("pullback: fiber map image out of range");
        ++fiber_size[static_cast<std::size_t>(x)];
    }
    for (int x = 0; x < n; ++x)
        if (fiber_size[static_cast<std::size_t>(x)] == 0)
            throw PullbackError("pullback: map is not onto (point " + std::to_string(x) +
                                " uncovered)");
    long g = fiber_size[0];
    for (int x = 1; x < n; ++x)
        if (fiber_size[static_cast<std::size_t>(x)] != g)
            throw PullbackError(
                "pullback: non-constant fibers (the covering degree must be a single integer); "
                "use a declared-degree entry instead");

    IntMatrix mz(m, m);
    for (int z = 0; z < m; ++z)
        for (int z2 = 0; z2 < m; ++z2)
            mz(z, z2) = base.multiplicity(fiber_map[static_cast<std::size_t>(z)],
                                          fiber_map[static_cast<std::size_t>(z2)]);
    // covering identity: pushing f_Z forward along p multiplies f by g.
    // sum_{z' in fiber(x')} mz(z, z') == g * m(p(z), x') for every pair.
    for (int z = 0; z < m; ++z)
        for (int x2 = 0; x2 < n; ++x2) {
            Int sum = 0;
            for (int z2 = 0; z2 < m; ++z2)
                if (fiber_map[static_cast<std::size_t>(z2)] == x2) sum += mz(z, z2);
            if (sum != Int(g) * base.multiplicity(fiber_map[static_cast<std::size_t>(z)], x2))
                throw PullbackError("pullback: covering identity failed at pair (" +
                                    std::to_string(z) + ", " + std::to_string(x2) + ")");
        }

    WeightedFamilyEntry e;
    e.description = "pullback g=" + std::to_string(g);
    e.corr = FiniteCorrespondence{std::move(mz)};
    e.degree = g;
    e.upstairs = gamma_infinity_entropy(e.corr, opts);
    e.weighted_value = shift(e.upstairs.value, -std::log(static_cast<double>(g)));
    return e;
}

WeightedFamilyEntry declared_entry(const FiniteCorrespondence& corr, long degree,
                                   const std::string& label, const PerronOptions& opts) {
    if (degree < 1) throw std::invalid_argument("declared entry: degree must be >= 1");
    WeightedFamilyEntry e;
    e.description = "declared " + label + " d=" + std::to_string(degree);
    e.corr = corr;
    e.degree = degree;
    e.upstairs = gamma_infinity_entropy(corr, opts);
    e.weighted_value = shift(e.upstairs.value, -std::log(static_cast<double>(degree)));
    return e;
}

HEtResult h_et(const std::vector<WeightedFamilyEntry>& family) {
    bool has_identity = std::any_of(family.begin(), family.end(), [](const auto& e) {
        return e.degree == 1 && e.description == "identity";
    });
    if (!has_identity)
        throw std::invalid_argument("h_et: the identity entry must be present in the family");
    HEtResult r;
    r.value = family.front().weighted_value;
    for (std::size_t i = 1; i < family.size(); ++i) {
        if (family[i].weighted_value.hi > r.value.hi) r.argmax = i;
        r.value = bracket_max(r.value, family[i].weighted_value);
    }
    return r;
}

}  // namespace etale
