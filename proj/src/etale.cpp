#include "etale/etale.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace etale {

const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::Certified: return "certified";
        case Provenance::Numeric: return "NUMERIC";
        case Provenance::Declared: return "declared";
    }
    return "?";
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::VerifiedExact: return "verified_exact";
        case Verdict::VerifiedSampled: return "verified_sampled";
        case Verdict::Rejected: return "rejected";
    }
    return "?";
}

const char* const kEmptyFamilyCaveat =
    "family empty; the compactification infimum is not computed (nonemptiness is witnessed "
    "only by the Stone-Cech compactification of the discrete cover, which is non-constructive)";

const SystemDescriptor& Registry::system(const std::string& id) const {
    auto it = systems.find(id);
    if (it == systems.end()) throw std::invalid_argument("unknown system id '" + id + "'");
    return it->second;
}
const CoverSpec& Registry::cover(const std::string& id) const {
    auto it = covers.find(id);
    if (it == covers.end()) throw std::invalid_argument("unknown cover id '" + id + "'");
    return it->second;
}
const CompactificationSpec& Registry::compactification(const std::string& id) const {
    auto it = compactifications.find(id);
    if (it == compactifications.end())
        throw std::invalid_argument("unknown compactification id '" + id + "'");
    return it->second;
}

void materialize_cover_sources(Registry& reg, const SftCaps& caps) {
    for (auto& [id, cover] : reg.covers) {
        if (!cover.constructs_source()) continue;
        const SystemDescriptor& base = reg.system(cover.target_id);
        const Sft* sft = std::get_if<Sft>(&base.system);
        if (!sft)
            throw std::invalid_argument("cover '" + id + "': constructed covers need an SFT base");
        Sft source;
        if (cover.kind == CoverKind::GroupExtension)
            source = group_extension(*sft, cover.g, cover.cocycle, caps).sft;
        else
            source = higher_block(*sft, cover.k, caps).sft;
        std::string sid = id + ".source";
        cover.source_id = sid;
        reg.systems[sid] = SystemDescriptor{sid, std::move(source)};
    }
}

namespace {

int rank(Provenance p) {
    switch (p) {
        case Provenance::Certified: return 3;
        case Provenance::Numeric: return 2;
        case Provenance::Declared: return 1;
    }
    return 0;
}

Provenance weaker(Provenance a, Provenance b) { return rank(a) <= rank(b) ? a : b; }

EntropyValue numeric_guarded(double estimate, double guard) {
    return EntropyValue{Bracket(estimate - guard, estimate + guard), Provenance::Numeric};
}

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

}  // namespace

std::string CompactCandidate::describe() const {
    switch (kind) {
        case Kind::WholeSpace: return "whole space";
        case Kind::SymbolSubset: {
            std::string s = "symbols {";
            for (std::size_t i = 0; i < symbols.size(); ++i)
                s += (i ? "," : "") + std::to_string(symbols[i]);
            return s + "}";
        }
        case Kind::IntervalRange:
            return "interval [" + rat_str(lo) + ", " + rat_str(hi) + "]";
        case Kind::FinitePointSet: {
            std::string s = "finite {";
            for (std::size_t i = 0; i < points.size(); ++i) s += (i ? "," : "") + rat_str(points[i]);
            return s + "}";
        }
        case Kind::PointSubset: {
            std::string s = "points {";
            for (std::size_t i = 0; i < symbols.size(); ++i)
                s += (i ? "," : "") + std::to_string(symbols[i]);
            return s + "}";
        }
    }
    return "?";
}

namespace {

// --- h_cr per variant ------------------------------------------------------

void hcr_finite_top(const FiniteTopSystem& sys, const std::vector<CompactCandidate>& candidates,
                    HcrResult& out) {
    std::vector<CompactCandidate> cands = candidates;
    if (cands.empty()) {
        // auto-enumerate invariant subsets for small spaces
        if (sys.space.points <= 12) {
            for (unsigned mask = 1; mask < (1u << sys.space.points); ++mask) {
                CompactCandidate c;
                c.kind = CompactCandidate::Kind::PointSubset;
                for (int i = 0; i < sys.space.points; ++i)
                    if (mask & (1u << i)) c.symbols.push_back(i);
                cands.push_back(std::move(c));
            }
        } else {
            CompactCandidate c;
            c.kind = CompactCandidate::Kind::WholeSpace;
            cands.push_back(c);
        }
    }
    for (const auto& c : cands) {
        CandidateOutcome o;
        o.description = c.describe();
        std::vector<int> pts;
        if (c.kind == CompactCandidate::Kind::WholeSpace) {
            for (int i = 0; i < sys.space.points; ++i) pts.push_back(i);
        } else if (c.kind == CompactCandidate::Kind::PointSubset ||
                   c.kind == CompactCandidate::Kind::SymbolSubset) {
            pts = c.symbols;
        } else {
            o.reason = "candidate kind unsupported for finite spaces";
            out.candidates.push_back(std::move(o));
            continue;
        }
        bool ok = true;
        for (int p : pts)
            if (p < 0 || p >= sys.space.points) {
                o.reason = "point out of range";
                ok = false;
                break;
            }
        if (ok) {
            for (int p : pts) {
                int q = sys.map[static_cast<std::size_t>(p)];
                if (std::find(pts.begin(), pts.end(), q) == pts.end()) {
                    o.reason = "not invariant: f(" + std::to_string(p) + ") = " +
                               std::to_string(q) + " outside the subset";
                    ok = false;
                    break;
                }
            }
        }
        if (ok) {
            o.accepted = true;
            // finite topological systems have zero entropy: the refinements
            // of any open cover stabilize after finitely many steps
            o.value = EntropyValue{Bracket::point(0.0), Provenance::Certified};
            out.any_accepted = true;
        }
        out.candidates.push_back(std::move(o));
    }
    out.value = EntropyValue{Bracket::point(0.0), Provenance::Certified};
}

void hcr_sft(const Sft& sft, const std::vector<CompactCandidate>& candidates,
             const EvaluationOptions& opts, HcrResult& out) {
    std::vector<CompactCandidate> cands;
    if (sft.alphabet_size() <= opts.auto_subset_max_alphabet) {
        for (unsigned mask = 1; mask < (1u << sft.alphabet_size()); ++mask) {
            CompactCandidate c;
            c.kind = CompactCandidate::Kind::SymbolSubset;
            for (int i = 0; i < sft.alphabet_size(); ++i)
                if (mask & (1u << i)) c.symbols.push_back(i);
            cands.push_back(std::move(c));
        }
    } else {
        CompactCandidate c;
        c.kind = CompactCandidate::Kind::WholeSpace;
        cands.push_back(c);
    }
    cands.insert(cands.end(), candidates.begin(), candidates.end());

    Bracket sup = Bracket::point(0.0);
    bool first = true;
    for (const auto& c : cands) {
        CandidateOutcome o;
        o.description = c.describe();
        std::vector<int> symbols;
        if (c.kind == CompactCandidate::Kind::WholeSpace) {
            for (int i = 0; i < sft.alphabet_size(); ++i) symbols.push_back(i);
        } else if (c.kind == CompactCandidate::Kind::SymbolSubset) {
            symbols = c.symbols;
        } else {
            o.reason = "candidate kind unsupported for shifts";
            out.candidates.push_back(std::move(o));
            continue;
        }
        bool in_range = true;
        for (int s : symbols)
            if (s < 0 || s >= sft.alphabet_size()) in_range = false;
        if (!in_range) {
            o.reason = "symbol out of range";
            out.candidates.push_back(std::move(o));
            continue;
        }
        // a sub-SFT is automatically shift-invariant and compact
        SubSft sub = sub_sft(sft, symbols);
        SftEntropy e = sub.empty ? SftEntropy{Bracket::point(0.0), true, {}}
                                 : sft_entropy(sub.sft, opts.perron);
        o.accepted = true;
        o.value = EntropyValue{e.value, Provenance::Certified};
        out.any_accepted = true;
        sup = first ? e.value : bracket_max(sup, e.value);
        first = false;
        out.candidates.push_back(std::move(o));
    }
    out.value = EntropyValue{sup, Provenance::Certified};
}

void hcr_affine(const AffineSystem& sys, const std::vector<CompactCandidate>& candidates,
                HcrResult& out) {
    auto in_domain = [&](const Rat& x) {
        switch (sys.domain) {
            case AffineDomain::Naturals:
                return x >= 0 && boost::multiprecision::denominator(x) == 1;
            case AffineDomain::Integers:
                return boost::multiprecision::denominator(x) == 1;
            case AffineDomain::Reals:
                return true;
        }
        return false;
    };
    for (const auto& c : candidates) {
        CandidateOutcome o;
        o.description = c.describe();
        if (c.kind == CompactCandidate::Kind::WholeSpace) {
            o.reason = "domain is not compact";
        } else if (c.kind == CompactCandidate::Kind::FinitePointSet) {
            if (c.points.empty()) {
                o.reason = "empty point set";
            } else {
                bool ok = true;
                for (const Rat& p : c.points) {
                    if (!in_domain(p)) {
                        o.reason = "point " + rat_str(p) + " not in the domain";
                        ok = false;
                        break;
                    }
                    Rat q = sys.apply(p);
                    if (std::find(c.points.begin(), c.points.end(), q) == c.points.end()) {
                        o.reason = "not invariant: f(" + rat_str(p) + ") = " + rat_str(q) +
                                   " outside the set";
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    o.accepted = true;
                    // a finite invariant set carries zero entropy
                    o.value = EntropyValue{Bracket::point(0.0), Provenance::Certified};
                }
            }
        } else if (c.kind == CompactCandidate::Kind::IntervalRange) {
            Rat lo = c.lo, hi = c.hi;
            if (sys.domain == AffineDomain::Naturals && lo < 0) lo = 0;
            if (lo > hi) {
                o.reason = "empty interval";
            } else {
                // monotone affine map on an interval: invariance is decided
                // by the endpoint images, exactly
                Rat flo = sys.apply(lo), fhi = sys.apply(hi);
                Rat img_lo = sys.a >= 0 ? flo : fhi;
                Rat img_hi = sys.a >= 0 ? fhi : flo;
                if (img_lo < lo) {
                    o.reason = "not invariant: f(" + rat_str(sys.a >= 0 ? lo : hi) + ") = " +
                               rat_str(img_lo) + " leaves the interval";
                } else if (img_hi > hi) {
                    o.reason = "not invariant: f(" + rat_str(sys.a >= 0 ? hi : lo) + ") = " +
                               rat_str(img_hi) + " leaves the interval";
                } else {
                    o.accepted = true;
                    // monotone interval maps have one lap, so zero entropy
                    o.value = EntropyValue{Bracket::point(0.0), Provenance::Certified};
                }
            }
        } else {
            o.reason = "candidate kind unsupported for affine systems";
        }
        if (o.accepted) out.any_accepted = true;
        out.candidates.push_back(std::move(o));
    }
    out.value = EntropyValue{Bracket::point(0.0), Provenance::Certified};
    if (!out.any_accepted)
        out.note = "no verified compact invariant candidate; internal entropy is 0 by convention";
}

void hcr_metric(const MetricSystemSpec& spec, const std::vector<CompactCandidate>& candidates,
                const EvaluationOptions& opts, HcrResult& out) {
    std::vector<CompactCandidate> cands = candidates;
    if (cands.empty()) {
        CompactCandidate c;
        c.kind = CompactCandidate::Kind::WholeSpace;
        cands.push_back(c);
    }
    bool first = true;
    Bracket sup = Bracket::point(0.0);
    Provenance tag = Provenance::Certified;
    for (const auto& c : cands) {
        CandidateOutcome o;
        o.description = c.describe();
        if (c.kind != CompactCandidate::Kind::WholeSpace) {
            o.reason = "metric candidates support whole-space only";
            out.candidates.push_back(std::move(o));
            continue;
        }
        MetricSystem sys = spec.instantiate();
        BowenEstimate e = bowen_entropy_estimate(sys, c.horizon, c.epsilon, c.grid);
        double est = c.estimator == CompactificationSpec::Estimator::Slope ? e.increment
                                                                           : e.rate_last;
        o.accepted = true;
        o.value = numeric_guarded(est, opts.numeric_guard);
        out.any_accepted = true;
        sup = first ? o.value.bracket : bracket_max(sup, o.value.bracket);
        tag = weaker(tag, Provenance::Numeric);
        first = false;
        out.candidates.push_back(std::move(o));
    }
    out.value = out.any_accepted ? EntropyValue{sup, tag}
                                 : EntropyValue{Bracket::point(0.0), Provenance::Certified};
}

}  // namespace

HcrResult h_cr(const SystemDescriptor& sys, const std::vector<CompactCandidate>& candidates,
               const EvaluationOptions& opts) {
    HcrResult out;
    if (const auto* ft = std::get_if<FiniteTopSystem>(&sys.system)) {
        hcr_finite_top(*ft, candidates, out);
    } else if (const auto* sft = std::get_if<Sft>(&sys.system)) {
        hcr_sft(*sft, candidates, opts, out);
    } else if (const auto* aff = std::get_if<AffineSystem>(&sys.system)) {
        hcr_affine(*aff, candidates, out);
    } else {
        hcr_metric(std::get<MetricSystemSpec>(sys.system), candidates, opts, out);
    }
    return out;
}

// --- cover verification ------------------------------------------------------

namespace {

CoverVerification verify_identity(const Registry& reg, const CoverSpec& cover) {
    CoverVerification v;
    if (cover.source_id != cover.target_id) {
        const auto& s = reg.system(cover.source_id);
        const auto& t = reg.system(cover.target_id);
        if (!(s.system == t.system)) {
            v.reason = "identity cover endpoints are different systems";
            return v;
        }
    }
    v.verdict = Verdict::VerifiedExact;
    v.fiber_bound = 1;
    v.onto_exact = true;
    v.semiconjugacy_exact = true;
    v.notes.push_back("identity projection");
    return v;
}

CoverVerification verify_mod1(const Registry& reg, const CoverSpec& cover,
                              const EvaluationOptions& opts) {
    CoverVerification v;
    const auto* src = std::get_if<AffineSystem>(&reg.system(cover.source_id).system);
    const auto* tgt = std::get_if<MetricSystemSpec>(&reg.system(cover.target_id).system);
    if (!src || src->domain != AffineDomain::Reals) {
        v.reason = "mod1 cover needs an affine source on R";
        return v;
    }
    if (!tgt) {
        v.reason = "mod1 cover needs a metric circle target";
        return v;
    }
    MetricSystem target = tgt->instantiate();
    if (target.space != SpaceKind::Circle) {
        v.reason = "mod1 cover target must live on the circle";
        return v;
    }
    // sampled semiconjugacy check: frac(f(x)) == f_target(frac(x))
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> dist(-1000.0, 1000.0);
    const double a = src->a.convert_to<double>(), b = src->b.convert_to<double>();
    auto fracd = [](double x) {
        double f = x - std::floor(x);
        return f >= 1.0 ? 0.0 : f;
    };
    for (long i = 0; i < opts.sample_budget; ++i) {
        double x = dist(rng);
        double lhs = fracd(a * x + b);
        double rhs = target.map(fracd(x));
        if (space_distance(SpaceKind::Circle, lhs, rhs) > 1e-7) {
            std::ostringstream os;
            os << "semiconjugacy failed at x = " << x;
            v.reason = os.str();
            return v;
        }
    }
    v.notes.push_back("semiconjugacy verified on " + std::to_string(opts.sample_budget) +
                      " sampled points");
    // every fiber of x -> x mod 1 contains x + k for all integers k
    v.reason = "infinite fibers: the projection identifies x with x + k for every integer k";
    if (cover.fibers.kind == FiberEvidenceKind::DeclaredInfinite)
        v.reason = "infinite fibers (declared); " + v.reason;
    v.verdict = Verdict::Rejected;
    return v;
}

CoverVerification verify_sft_code(const SlidingBlockCode& code, const FiberEvidence& fibers,
                                  const SftCaps& caps) {
    CoverVerification v;
    if (auto err = validate_code(code)) {
        v.reason = "invalid code: " + *err;
        return v;
    }
    FiniteToOneVerdict ft = is_finite_to_one(code, caps);
    if (!ft.finite_to_one) {
        std::string w;
        if (ft.witness) {
            w = " (diamond: ";
            for (int x : ft.witness->word_a) w += std::to_string(x);
            w += " vs ";
            for (int x : ft.witness->word_b) w += std::to_string(x);
            w += ")";
        }
        v.reason = "infinite fibers" + w;
        return v;
    }
    SurjectivityResult onto = code_onto(code);
    if (!onto.exhausted && !onto.onto) {
        std::string w = "not onto: target word";
        for (int x : onto.failing_word) w += " " + std::to_string(x);
        v.reason = w + " has no preimage";
        return v;
    }
    v.onto_exact = onto.onto && !onto.exhausted;
    v.semiconjugacy_exact = true;  // block codes commute with the shift
    v.notes.push_back("no diamond: fibers are finite");
    if (fibers.kind == FiberEvidenceKind::ConstantG) {
        v.fiber_bound = fibers.g;
        v.notes.push_back("fibers have constant cardinality " + std::to_string(fibers.g));
    } else {
        long n = code.source.alphabet_size();
        v.fiber_bound = n * n;  // diamond-free codes have at most |states|^2 preimages
    }
    v.verdict = v.onto_exact ? Verdict::VerifiedExact : Verdict::VerifiedSampled;
    if (!v.onto_exact)
        v.notes.push_back("surjectivity search exhausted its state cap; verified on samples only");
    return v;
}

}  // namespace

CoverVerification verify_etale_cover(const Registry& reg, const CoverSpec& cover,
                                     const EvaluationOptions& opts) {
    if (cover.fibers.kind == FiberEvidenceKind::DeclaredInfinite &&
        cover.kind != CoverKind::Mod1) {
        CoverVerification v;
        v.reason = "infinite fibers (declared)";
        return v;
    }
    switch (cover.kind) {
        case CoverKind::Identity:
            return verify_identity(reg, cover);
        case CoverKind::Mod1:
            return verify_mod1(reg, cover, opts);
        case CoverKind::GroupExtension: {
            const auto& base = reg.system(cover.target_id);
            const Sft* sft = std::get_if<Sft>(&base.system);
            if (!sft) {
                CoverVerification v;
                v.reason = "group extension base must be an SFT";
                return v;
            }
            GroupExtension ext = group_extension(*sft, cover.g, cover.cocycle, opts.sft_caps);
            CoverVerification v =
                verify_sft_code(group_extension_code(*sft, ext),
                                FiberEvidence{FiberEvidenceKind::ConstantG, cover.g}, opts.sft_caps);
            return v;
        }
        case CoverKind::HigherBlock: {
            const auto& base = reg.system(cover.target_id);
            const Sft* sft = std::get_if<Sft>(&base.system);
            if (!sft) {
                CoverVerification v;
                v.reason = "higher-block base must be an SFT";
                return v;
            }
            HigherBlock hb = higher_block(*sft, cover.k, opts.sft_caps);
            CoverVerification v =
                verify_sft_code(higher_block_code(*sft, hb),
                                FiberEvidence{FiberEvidenceKind::ConstantG, 1}, opts.sft_caps);
            return v;
        }
        case CoverKind::Code: {
            const Sft* src = std::get_if<Sft>(&reg.system(cover.source_id).system);
            const Sft* tgt = std::get_if<Sft>(&reg.system(cover.target_id).system);
            if (!src || !tgt) {
                CoverVerification v;
                v.reason = "code covers need SFT source and target";
                return v;
            }
            SlidingBlockCode code;
            code.source = *src;
            code.target = *tgt;
            code.memory = cover.memory;
            code.anticipation = cover.anticipation;
            code.block_map = cover.block_map;
            return verify_sft_code(code, cover.fibers, opts.sft_caps);
        }
    }
    CoverVerification v;
    v.reason = "unknown cover kind";
    return v;
}

// --- hosts and h_omega -------------------------------------------------------

EntropyValue host_entropy_value(const SystemDescriptor& host, const CompactificationSpec& spec,
                                const EvaluationOptions& opts) {
    if (spec.host_entropy == CompactificationSpec::HostEntropy::DeclaredValue)
        return EntropyValue{Bracket::point(spec.declared_value), Provenance::Declared};
    if (const auto* sft = std::get_if<Sft>(&host.system)) {
        SftEntropy e = sft_entropy(*sft, opts.perron);
        return EntropyValue{e.value, Provenance::Certified};
    }
    if (std::get_if<FiniteTopSystem>(&host.system))
        return EntropyValue{Bracket::point(0.0), Provenance::Certified};
    if (const auto* ms = std::get_if<MetricSystemSpec>(&host.system)) {
        if (spec.host_entropy == CompactificationSpec::HostEntropy::Certified)
            throw std::invalid_argument(
                "compactification '" + spec.id +
                "': certified host entropy is not available for metric systems; use bowen or "
                "declared");
        MetricSystem sys = ms->instantiate();
        BowenEstimate e = bowen_entropy_estimate(sys, spec.horizon, spec.epsilon, spec.grid);
        double est = spec.estimator == CompactificationSpec::Estimator::Slope ? e.increment
                                                                              : e.rate_last;
        return numeric_guarded(est, opts.numeric_guard);
    }
    throw std::invalid_argument("host '" + host.id + "' is not a compact system");
}

EntropyReport h_omega(const Registry& reg, const std::string& system_id,
                      const std::vector<CompactCandidate>& candidates,
                      const std::vector<std::string>& family, const EvaluationOptions& opts,
                      bool family_declared_complete) {
    const SystemDescriptor& sys = reg.system(system_id);
    EntropyReport report;
    HcrResult hcr = h_cr(sys, candidates, opts);
    report.h_cr_value = hcr.value;
    report.hcr_candidates = std::move(hcr.candidates);
    if (!hcr.note.empty()) report.caveats.push_back(hcr.note);

    bool have_family_value = false;
    Bracket family_min;
    Provenance family_tag = Provenance::Certified;
    Provenance family_min_hi_tag = Provenance::Certified;  // tag of the entry achieving min hi
    for (const std::string& cid : family) {
        const CompactificationSpec& comp = reg.compactification(cid);
        const CoverSpec& cover = reg.cover(comp.cover_id);
        FamilyEvaluation fe;
        fe.compactification_id = cid;
        CoverVerification cv = verify_etale_cover(reg, cover, opts);
        fe.cover_verdict = cv.verdict;
        if (cv.verdict == Verdict::Rejected) {
            fe.excluded = true;
            fe.note = "cover rejected: " + cv.reason;
            report.caveats.push_back("excluded " + cid + ": " + cv.reason);
            report.family.push_back(std::move(fe));
            continue;
        }
        const SystemDescriptor& host = reg.system(comp.host_id);
        if (!host.compact()) {
            fe.excluded = true;
            fe.note = "host not compact";
            report.caveats.push_back("excluded " + cid + ": host '" + comp.host_id +
                                     "' is not compact");
            report.family.push_back(std::move(fe));
            continue;
        }
        fe.host_value = host_entropy_value(host, comp, opts);
        if (comp.density == CompactificationSpec::Density::Declared)
            fe.note = "density declared";
        if (cv.verdict == Verdict::VerifiedSampled)
            fe.note += (fe.note.empty() ? "" : "; ") + std::string("cover verified on samples");
        if (!have_family_value) {
            family_min = fe.host_value.bracket;
            family_tag = fe.host_value.tag;
            family_min_hi_tag = fe.host_value.tag;
            have_family_value = true;
        } else {
            if (fe.host_value.bracket.hi < family_min.hi) family_min_hi_tag = fe.host_value.tag;
            family_min = bracket_min(family_min, fe.host_value.bracket);
            family_tag = weaker(family_tag, fe.host_value.tag);
        }
        report.family.push_back(std::move(fe));
    }

    if (!have_family_value) {
        report.value = report.h_cr_value;
        report.caveats.push_back(kEmptyFamilyCaveat);
        report.exact = false;
        return report;
    }

    // Certified collapse: the family minimum sits at or below h_CR, so the
    // max is exactly h_CR regardless of the rest of the family.
    if (family_min.hi <= report.h_cr_value.bracket.lo &&
        family_min_hi_tag == Provenance::Certified &&
        report.h_cr_value.tag == Provenance::Certified) {
        report.value = report.h_cr_value;
        report.exact = true;
        report.caveats.push_back("family minimum collapses onto h_CR; the value is exact");
        return report;
    }

    report.value = EntropyValue{bracket_max(report.h_cr_value.bracket, family_min),
                                weaker(report.h_cr_value.tag, family_tag)};
    report.exact = family_declared_complete && report.value.tag == Provenance::Certified;
    if (!report.exact)
        report.caveats.push_back(
            "value is an upper representative: the registered family bounds the infimum from "
            "above");
    return report;
}

}  // namespace etale
