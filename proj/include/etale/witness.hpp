// Cover and compactification witnesses: the checkable evidence that a
// semiconjugacy is an etale cover (onto, finite fibers, pi o f' = f o pi)
// and that a compact host system contains a cover densely.

#pragma once

#include "etale/block_code.hpp"
#include "etale/system.hpp"

#include <map>
#include <optional>
#include <string>

namespace etale {

enum class CoverKind { Identity, Mod1, GroupExtension, HigherBlock, Code };

enum class FiberEvidenceKind {
    ExactDecision,    // decide exactly (diamond / exhaustive fibers)
    ConstantG,        // fibers all of declared cardinality g (then verified)
    Sampled,          // bounded on sampled points up to a budget
    DeclaredInfinite  // scenario declares infinite fibers (always rejected)
};

struct FiberEvidence {
    FiberEvidenceKind kind = FiberEvidenceKind::ExactDecision;
    int g = 1;
    long budget = 10000;

    bool operator==(const FiberEvidence&) const = default;
};

struct CoverSpec {
    std::string id;
    CoverKind kind = CoverKind::Identity;
    std::string source_id;  // for constructed covers this is "<id>.source"
    std::string target_id;
    // group extension parameters
    int g = 1;
    std::map<std::pair<int, int>, int> cocycle;
    // higher-block parameter
    int k = 1;
    // explicit code parameters (CoverKind::Code)
    int memory = 0, anticipation = 0;
    std::map<std::vector<int>, int> block_map;
    FiberEvidence fibers;

    bool constructs_source() const {
        return kind == CoverKind::GroupExtension || kind == CoverKind::HigherBlock;
    }
    bool operator==(const CoverSpec&) const = default;
};

struct CompactificationSpec {
    std::string id;
    std::string cover_id;
    std::string host_id;
    enum class Density { Exact, Declared } density = Density::Declared;
    enum class HostEntropy { Certified, Bowen, DeclaredValue } host_entropy =
        HostEntropy::Certified;
    double declared_value = 0.0;
    // Bowen parameters for metric hosts
    int horizon = 20;
    double epsilon = 0.015625;       // 2^-6
    double grid = 0.0001220703125;   // 2^-13
    enum class Estimator { Slope, Rate } estimator = Estimator::Slope;

    bool operator==(const CompactificationSpec&) const = default;
};

enum class Verdict { VerifiedExact, VerifiedSampled, Rejected };

const char* verdict_name(Verdict v);

struct CoverVerification {
    Verdict verdict = Verdict::Rejected;
    std::string reason;                   // populated on rejection
    std::optional<long> fiber_bound;      // certified or sampled bound
    bool onto_exact = false;
    bool semiconjugacy_exact = false;
    std::vector<std::string> notes;
};

}  // namespace etale
