// Seeded property suites: the five entropy laws checked on random SFT
// instances (compact value, invariant subspace, special etale cover,
// iterates, products), and the counterexample search for the compact-base
// cover inequality h_top(X) <= h_top(Z).  Absence of violations is the
// expected outcome and is reported as such; any certified violation comes
// with a replayable witness.

#pragma once

#include "etale/etale.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace etale {

struct SuiteOptions {
    std::uint64_t seed = 1;
    int trials = 100;
    int min_states = 2;
    int max_states = 6;
    EvaluationOptions eval;
};

// Deterministic per-trial seed stream (splitmix64 over the master seed).
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index);

// Random trimmed irreducible SFT; deterministic in the seed.
Sft random_irreducible_sft(std::uint64_t seed, int min_states, int max_states);

struct PartResult {
    std::string name;
    int pass = 0;
    int fail = 0;
    std::vector<std::string> failures;  // first few failure descriptions

    PartResult() = default;
    explicit PartResult(std::string n) : name(std::move(n)) {}
};

struct Theorem1Report {
    PartResult compact_space{"compact_space"};
    PartResult invariant_subspace{"invariant_subspace"};
    PartResult special_etale_cover{"special_etale_cover"};
    PartResult iterates{"iterates"};
    PartResult product{"product"};
    int trials = 0;

    bool all_pass() const {
        return compact_space.fail == 0 && invariant_subspace.fail == 0 &&
               special_etale_cover.fail == 0 && iterates.fail == 0 && product.fail == 0;
    }
    std::vector<const PartResult*> parts() const {
        return {&compact_space, &invariant_subspace, &special_etale_cover, &iterates, &product};
    }
};

Theorem1Report theorem1_suite(const SuiteOptions& opts);

struct Conjecture1Record {
    std::uint64_t seed = 0;
    std::string cover_kind;   // higher_block | group_extension | puncture
    std::string base_matrix;  // matrix text of the compact base X
    std::string host_matrix;  // matrix text of the compactification Z
    std::string detail;       // k / g+cocycle / removed orbit
    Bracket base_entropy;
    Bracket host_entropy;
    bool violation = false;   // certified h(X) > h(Z)
};

struct Conjecture1Report {
    std::vector<Conjecture1Record> records;
    int violations = 0;
};

Conjecture1Report conjecture1_search(const SuiteOptions& opts);

// Recomputes both brackets of a record from its stored matrices and checks
// the comparison again; true when the record is consistent.
bool replay_conjecture1(const Conjecture1Record& rec, const EvaluationOptions& opts = {});

}  // namespace etale
