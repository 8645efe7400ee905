#include "etale/degrees.hpp"

#include <cmath>

namespace etale {

MonomialMap make_monomial_map(IntMatrix m) {
    if (!is_square(m)) throw std::invalid_argument("monomial map: matrix must be square");
    if (m.rows() == 0) throw std::invalid_argument("monomial map: empty matrix");
    if (determinant(m) == 0)
        throw std::invalid_argument("monomial map: matrix must have nonzero determinant");
    return MonomialMap{std::move(m)};
}

Bracket DegreeProfile::max_log() const {
    Bracket best = Bracket::point(0.0);  // lambda_0 = 1 contributes log 1 = 0
    for (const Bracket& l : lambdas) {
        Bracket lg = l.lo > 0 ? log_bracket(l) : Bracket::point(0.0);
        best = bracket_max(best, lg);
    }
    return best;
}

std::size_t DegreeProfile::argmax_log() const {
    std::size_t best = 0;
    for (std::size_t p = 1; p < lambdas.size(); ++p)
        if (lambdas[p].hi > lambdas[best].hi) best = p;
    return best;
}

DegreeProfile monomial_dynamical_degrees(const MonomialMap& map, const DegreeOptions& opts) {
    const int k = map.dimension();
    DegreeProfile profile;
    profile.det = determinant(map.m);
    for (int p = 0; p <= k; ++p) {
        IntMatrix ext = exterior_power(map.m, p);
        SignedRadiusEstimate est = spectral_radius_signed(ext, opts.radius);
        profile.lambdas.push_back(est.bracket);
        profile.exact.push_back(est.exact);
        if (opts.cross_check) {
            GrowthEstimate g =
                power_growth_rate(ext, opts.oracle_horizon, opts.oracle_max_horizon);
            double lg = g.zero ? 0.0 : g.log_rate;
            profile.growth_oracle.push_back(lg);
            double log_lambda =
                est.bracket.lo > 0 ? std::log(est.bracket.mid()) : 0.0;
            profile.oracle_gap.push_back(std::abs(log_lambda - lg));
        }
    }
    return profile;
}

GapReport gromov_yomdin_gap(const DegreeProfile& profile, const Bracket& h, double tolerance) {
    GapReport r;
    Bracket bound = profile.max_log();
    r.achieving_p = profile.argmax_log();
    r.gap = sub(bound, h);
    r.within_bound = r.gap.hi >= -tolerance;
    if (h.lo > bound.hi + tolerance) {
        r.inconsistency = true;
        r.within_bound = false;
        r.note = "certified entropy exceeds the degree bound; this contradicts the expected "
                 "inequality and needs investigation";
    }
    return r;
}

}  // namespace etale
