// The core evaluators: internal entropy h_CR (supremum of h_top over
// verified compact invariant subsets), etale-cover verification, and the
// entropy report combining h_CR with the minimum over a registered family
// of compactification hosts.
//
// The infimum over the full family of compactified etale covers is not
// enumerable, so the report carries a certified pair: h_CR is a true lower
// bound, and the family minimum is an upper representative.  When the
// family minimum is certified at or below h_CR the two collapse and the
// report is exact.

#pragma once

#include "etale/witness.hpp"

#include <cstdint>
#include <map>

namespace etale {

enum class Provenance { Certified, Numeric, Declared };
const char* provenance_name(Provenance p);

struct EntropyValue {
    Bracket bracket;
    Provenance tag = Provenance::Certified;
};

struct Registry {
    std::map<std::string, SystemDescriptor> systems;
    std::map<std::string, CoverSpec> covers;
    std::map<std::string, CompactificationSpec> compactifications;

    const SystemDescriptor& system(const std::string& id) const;
    const CoverSpec& cover(const std::string& id) const;
    const CompactificationSpec& compactification(const std::string& id) const;
};

// Materializes the source systems of constructed covers (group extensions,
// higher-block presentations) under "<cover id>.source".
void materialize_cover_sources(Registry& reg, const SftCaps& caps = {});

struct EvaluationOptions {
    PerronOptions perron;
    SftCaps sft_caps;
    double numeric_guard = 0.05;   // guard band added around NUMERIC values
    long sample_budget = 10000;
    std::uint64_t seed = 17;
    int auto_subset_max_alphabet = 12;  // h_cr sub-SFT enumeration cap
};

// ---- h_CR ---------------------------------------------------------------

struct CompactCandidate {
    enum class Kind { WholeSpace, SymbolSubset, IntervalRange, FinitePointSet, PointSubset };
    Kind kind = Kind::WholeSpace;
    std::vector<int> symbols;   // SymbolSubset (SFT) / PointSubset (finite top)
    Rat lo = 0, hi = 0;         // IntervalRange (affine)
    std::vector<Rat> points;    // FinitePointSet (affine)
    // Bowen parameters for metric whole-space candidates
    int horizon = 20;
    double epsilon = 0.015625;
    double grid = 0.0001220703125;
    CompactificationSpec::Estimator estimator = CompactificationSpec::Estimator::Slope;

    std::string describe() const;
    bool operator==(const CompactCandidate&) const = default;
};

struct CandidateOutcome {
    std::string description;
    bool accepted = false;
    std::string reason;   // rejection reason (empty when accepted)
    EntropyValue value;   // h_top of the restricted system when accepted
};

struct HcrResult {
    EntropyValue value;   // supremum over verified candidates; [0,0] when none
    std::vector<CandidateOutcome> candidates;
    bool any_accepted = false;
    std::string note;
};

HcrResult h_cr(const SystemDescriptor& sys, const std::vector<CompactCandidate>& candidates,
               const EvaluationOptions& opts = {});

// ---- cover verification ---------------------------------------------------

CoverVerification verify_etale_cover(const Registry& reg, const CoverSpec& cover,
                                     const EvaluationOptions& opts = {});

// ---- h_Omega --------------------------------------------------------------

struct FamilyEvaluation {
    std::string compactification_id;
    Verdict cover_verdict = Verdict::Rejected;
    bool excluded = false;
    std::string note;
    EntropyValue host_value;  // meaningful iff !excluded
};

struct EntropyReport {
    EntropyValue h_cr_value;
    std::vector<CandidateOutcome> hcr_candidates;
    std::vector<FamilyEvaluation> family;
    EntropyValue value;   // max(h_cr, min over included family entries)
    bool exact = false;
    std::vector<std::string> caveats;
};

// Caveat text used when the registered family is empty.
extern const char* const kEmptyFamilyCaveat;

EntropyReport h_omega(const Registry& reg, const std::string& system_id,
                      const std::vector<CompactCandidate>& candidates,
                      const std::vector<std::string>& family,
                      const EvaluationOptions& opts = {}, bool family_declared_complete = false);

// h_top of a compact registered system as used for hosts (certified for
// SFT/finite-top, Bowen NUMERIC for metric, declared passthrough).
EntropyValue host_entropy_value(const SystemDescriptor& host, const CompactificationSpec& spec,
                                const EvaluationOptions& opts);

}  // namespace etale
