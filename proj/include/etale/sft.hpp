// Subshifts of finite type presented by 0/1 transition matrices, and the
// constructions on them used as the executable cover category: trimming,
// entropy (log Perron), exact word counts, higher-block presentations,
// alphabet restrictions, and finite group extensions.

#pragma once

#include "etale/perron.hpp"

#include <map>
#include <utility>
#include <vector>

namespace etale {

enum class Sided { One, Two };

struct Sft {
    IntMatrix transition;  // 0/1 entries
    Sided sided = Sided::One;

    int alphabet_size() const { return static_cast<int>(transition.rows()); }
    bool edge(int s, int t) const { return transition(s, t) != 0; }
    bool operator==(const Sft& o) const {
        return sided == o.sided && same_matrix(transition, o.transition);
    }
};

struct SftCaps {
    int max_alphabet = 64;        // before higher-block expansion
    int max_expanded_states = 4096;
};

Sft make_sft(IntMatrix transition, Sided sided = Sided::One);

inline Sft full_shift(int symbols, Sided sided = Sided::One) {
    return make_sft(IntMatrix::Constant(symbols, symbols, Int(1)), sided);
}

// Iteratively delete symbols with zero out-degree (and, for two-sided
// shifts, zero in-degree) until the presentation is essential or empty.
struct TrimResult {
    Sft sft;
    std::vector<int> kept;  // surviving symbols, as indices of the input
    bool empty = false;
};
TrimResult trim(const Sft& s);

struct SftEntropy {
    Bracket value;        // bracket around log rho of the trimmed matrix
    bool empty = false;   // empty after trim: entropy defined as 0
    PerronEstimate rho;
};
SftEntropy sft_entropy(const Sft& s, const PerronOptions& opts = {});

// Number of length-n symbol paths: sum of the entries of transition^(n-1).
Int word_count(const Sft& s, long n);

// All admissible words of the given length, lexicographic order.
std::vector<std::vector<int>> admissible_words(const Sft& s, int length, std::size_t cap = 1u << 20);

// Restriction of the transition matrix to a symbol subset, then trimmed.
struct SubSft {
    Sft sft;
    std::vector<int> kept;  // surviving symbols as indices of the input
    bool empty = false;
};
SubSft sub_sft(const Sft& s, const std::vector<int>& symbols);

struct SlidingBlockCode;  // block_code.hpp

// k-block presentation together with the fiber-size-1 conjugacy onto the
// original shift (the 1-block first-symbol map).
struct HigherBlock {
    Sft sft;
    std::vector<std::vector<int>> states;  // state id -> k-word
    // projection is defined in block_code.hpp to keep include order simple;
    // see higher_block_code().
};
HigherBlock higher_block(const Sft& s, int k, const SftCaps& caps = {});

// Extension by Z/g with a cocycle on admissible edges; symbols are pairs
// (symbol, group element) indexed as symbol * g + element.
struct GroupExtension {
    Sft sft;
    int g = 1;
    std::map<std::pair<int, int>, int> cocycle;
    int state_of(int symbol, int element) const { return symbol * g + element; }
};
GroupExtension group_extension(const Sft& s, int g,
                               const std::map<std::pair<int, int>, int>& cocycle,
                               const SftCaps& caps = {});

}  // namespace etale
