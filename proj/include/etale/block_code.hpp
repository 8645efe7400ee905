// Sliding-block codes between subshifts of finite type, and the exact
// finite-to-one decision by diamond detection: a code has an infinite fiber
// (over an irreducible source) exactly when two distinct equal-label paths
// share both endpoints.

#pragma once

#include "etale/sft.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace etale {

struct SlidingBlockCode {
    Sft source;
    Sft target;
    int memory = 0;
    int anticipation = 0;
    // Total table from admissible (memory+1+anticipation)-words of the
    // source to target symbols.
    std::map<std::vector<int>, int> block_map;

    int window() const { return memory + 1 + anticipation; }

    // Image symbol of a window-sized word.
    int apply_window(const std::vector<int>& word) const;
    // Image of a word of length L >= window: a target word of length
    // L - memory - anticipation.
    std::vector<int> apply(const std::vector<int>& word) const;

    bool operator==(const SlidingBlockCode& o) const {
        return source == o.source && target == o.target && memory == o.memory &&
               anticipation == o.anticipation && block_map == o.block_map;
    }
};

SlidingBlockCode identity_code(const Sft& s);

// The 1-block conjugacy from the k-block presentation onto the original
// shift (state = k-word, image = first symbol).
SlidingBlockCode higher_block_code(const Sft& s, const HigherBlock& hb);

// The 1-block projection of a group extension onto its base.
SlidingBlockCode group_extension_code(const Sft& base, const GroupExtension& ext);

// Checks the code table is total on admissible windows and that images of
// admissible words up to check_length are admissible in the target.
// Returns an error description, or nullopt if the code is well formed.
std::optional<std::string> validate_code(const SlidingBlockCode& code, int check_length = 0);

struct FiniteToOneVerdict {
    bool finite_to_one = true;
    // Present iff !finite_to_one: two distinct source words of equal length
    // with the same image and the same first/last recoded state.
    struct Diamond {
        std::vector<int> word_a;
        std::vector<int> word_b;
    };
    std::optional<Diamond> witness;
};

FiniteToOneVerdict is_finite_to_one(const SlidingBlockCode& code, const SftCaps& caps = {});

// Soundness replay: both witness words are admissible, distinct, of equal
// length, and have identical images under the code.
bool replay_diamond(const SlidingBlockCode& code, const FiniteToOneVerdict::Diamond& d);

// Exact word-level surjectivity: every admissible target word lifts to an
// admissible source word.  Decided by a determinization-style search over
// (target symbol, source preimage set) pairs; the state space is bounded by
// cap_states and the check degrades to `exhausted = true` beyond it.
struct SurjectivityResult {
    bool onto = false;
    bool exhausted = false;              // cap hit before a decision
    std::vector<int> failing_word;       // admissible target word with no lift
};
SurjectivityResult code_onto(const SlidingBlockCode& code, std::size_t cap_states = 1u << 15);

}  // namespace etale
