// Finite correspondences: multiplicity relations on a finite point set.
// The orbit space of admissible forward sequences over a finite discrete
// base is the SFT on the support matrix (the discrete base is compact, so
// the closure step is the identity), and its shift entropy is the log
// Perron root of the trimmed support.  Multiplicities matter only through
// the covering degree bookkeeping of pullbacks.

#pragma once

#include "etale/perron.hpp"

#include <optional>
#include <string>
#include <vector>

namespace etale {

struct FiniteCorrespondence {
    IntMatrix multiplicity;  // entry (i,j) = multiplicity of the pair (i,j)

    int points() const { return static_cast<int>(multiplicity.rows()); }
    IntMatrix support_matrix() const { return support(multiplicity); }
};

FiniteCorrespondence make_correspondence(IntMatrix multiplicity);

// Iteratively removes points with zero out-degree in the support graph
// (points from which no infinite forward orbit can continue).
struct TrimmedCorrespondence {
    FiniteCorrespondence corr;
    std::vector<int> kept;
    std::vector<int> removed;
    bool empty = false;
};
TrimmedCorrespondence trim_correspondence(const FiniteCorrespondence& c);

struct GammaEntropy {
    Bracket value;       // log Perron bracket of the trimmed support
    bool empty = false;  // empty correspondence: entropy defined as 0
    PerronEstimate rho;
};
GammaEntropy gamma_infinity_entropy(const FiniteCorrespondence& c,
                                    const PerronOptions& opts = {});

// A weighted family entry: a covered correspondence together with its
// covering degree d and the weighted value h_top(f_Z) - ln d.
struct WeightedFamilyEntry {
    std::string description;
    FiniteCorrespondence corr;
    long degree = 1;            // d_Z >= 1
    Bracket weighted_value;     // h_top(f_Z) - ln(d_Z), certified
    GammaEntropy upstairs;      // h_top(f_Z)
};

WeightedFamilyEntry identity_entry(const FiniteCorrespondence& c,
                                   const PerronOptions& opts = {});

// Pullback of a correspondence along a surjection p: Z -> X with constant
// fiber cardinality g: f_Z relates z -> z' with multiplicity of
// (p(z), p(z')), and the covering degree is g.  Non-constant fibers are
// rejected; a declared degree escape hatch exists for scenario authors.
struct PullbackError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
WeightedFamilyEntry pullback_correspondence(const FiniteCorrespondence& base,
                                            const std::vector<int>& fiber_map,  // z -> p(z)
                                            const PerronOptions& opts = {});

// Declared-degree entry (labeled in the description; not verified).
WeightedFamilyEntry declared_entry(const FiniteCorrespondence& corr, long degree,
                                   const std::string& label, const PerronOptions& opts = {});

// sup over the family of weighted values; the identity entry must be
// present, which forces h_et >= h_top(base).
struct HEtResult {
    Bracket value;
    std::size_t argmax = 0;  // index of the achieving entry
};
HEtResult h_et(const std::vector<WeightedFamilyEntry>& family);

}  // namespace etale
