#include "etale/sft.hpp"

#include <algorithm>
#include <stdexcept>

namespace etale {

Sft make_sft(IntMatrix transition, Sided sided) {
    require_square_nonnegative(transition, "make_sft");
    if (!is_zero_one(transition))
        throw std::invalid_argument("make_sft: transition entries must be 0/1");
    return Sft{std::move(transition), sided};
}

TrimResult trim(const Sft& s) {
    const int n = s.alphabet_size();
    std::vector<bool> alive(static_cast<std::size_t>(n), true);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < n; ++v) {
            if (!alive[static_cast<std::size_t>(v)]) continue;
            int out = 0, in = 0;
            for (int w = 0; w < n; ++w) {
                if (!alive[static_cast<std::size_t>(w)]) continue;
                if (s.transition(v, w) != 0) ++out;
                if (s.transition(w, v) != 0) ++in;
            }
            bool drop = out == 0 || (s.sided == Sided::Two && in == 0);
            if (drop) {
                alive[static_cast<std::size_t>(v)] = false;
                changed = true;
            }
        }
    }
    TrimResult r;
    for (int v = 0; v < n; ++v)
        if (alive[static_cast<std::size_t>(v)]) r.kept.push_back(v);
    if (r.kept.empty()) {
        r.empty = true;
        r.sft = Sft{IntMatrix(0, 0), s.sided};
        return r;
    }
    const Eigen::Index k = static_cast<Eigen::Index>(r.kept.size());
    IntMatrix t(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j)
            t(i, j) = s.transition(r.kept[static_cast<std::size_t>(i)],
                                   r.kept[static_cast<std::size_t>(j)]);
    r.sft = Sft{std::move(t), s.sided};
    return r;
}

SftEntropy sft_entropy(const Sft& s, const PerronOptions& opts) {
    SftEntropy out;
    TrimResult t = trim(s);
    if (t.empty) {
        out.empty = true;
        out.value = Bracket::point(0.0);
        out.rho.exact_zero = true;
        out.rho.bracket = Bracket::point(0.0);
        return out;
    }
    out.rho = perron_root(t.sft.transition, opts);
    if (out.rho.exact_zero) {
        // cannot happen for a trimmed nonempty shift (every vertex has a
        // successor, so a cycle exists), but keep the zero convention
        out.value = Bracket::point(0.0);
        return out;
    }
    out.value = log_bracket(out.rho.bracket);
    return out;
}

Int word_count(const Sft& s, long n) {
    if (n < 1) throw std::invalid_argument("word_count: n must be >= 1");
    const int k = s.alphabet_size();
    if (k == 0) return 0;
    Int total = 0;
    if (n == 1) return k;
    IntMatrix p = matrix_power(s.transition, static_cast<unsigned long>(n - 1));
    for (Eigen::Index i = 0; i < p.rows(); ++i)
        for (Eigen::Index j = 0; j < p.cols(); ++j)
            total += p(i, j);
    return total;
}

std::vector<std::vector<int>> admissible_words(const Sft& s, int length, std::size_t cap) {
    if (length < 1) throw std::invalid_argument("admissible_words: length must be >= 1");
    std::vector<std::vector<int>> words;
    const int k = s.alphabet_size();
    std::vector<int> cur;
    // iterative DFS in lexicographic order
    struct Frame { int next_symbol; };
    std::vector<Frame> stack;
    stack.push_back({0});
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next_symbol >= k) {
            stack.pop_back();
            if (!cur.empty()) cur.pop_back();
            continue;
        }
        int sym = f.next_symbol++;
        if (!cur.empty() && !s.edge(cur.back(), sym)) continue;
        cur.push_back(sym);
        if (static_cast<int>(cur.size()) == length) {
            words.push_back(cur);
            if (words.size() > cap)
                throw CapExceeded("admissible_words: more than cap words");
            cur.pop_back();
        } else {
            stack.push_back({0});
        }
    }
    return words;
}

SubSft sub_sft(const Sft& s, const std::vector<int>& symbols) {
    if (symbols.empty()) throw std::invalid_argument("sub_sft: empty symbol subset");
    std::vector<int> sorted = symbols;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int v : sorted)
        if (v < 0 || v >= s.alphabet_size())
            throw std::invalid_argument("sub_sft: symbol out of range");
    const Eigen::Index k = static_cast<Eigen::Index>(sorted.size());
    IntMatrix t(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j)
            t(i, j) = s.transition(sorted[static_cast<std::size_t>(i)],
                                   sorted[static_cast<std::size_t>(j)]);
    TrimResult tr = trim(Sft{std::move(t), s.sided});
    SubSft out;
    out.empty = tr.empty;
    out.sft = tr.sft;
    for (int idx : tr.kept) out.kept.push_back(sorted[static_cast<std::size_t>(idx)]);
    return out;
}

HigherBlock higher_block(const Sft& s, int k, const SftCaps& caps) {
    if (k < 1) throw std::invalid_argument("higher_block: k must be >= 1");
    TrimResult t = trim(s);
    if (t.empty) throw std::invalid_argument("higher_block: empty shift");
    HigherBlock hb;
    if (k == 1) {
        hb.sft = s;
        for (int v = 0; v < s.alphabet_size(); ++v) hb.states.push_back({v});
        return hb;
    }
    if (s.alphabet_size() > caps.max_alphabet)
        throw CapExceeded("higher_block: alphabet exceeds cap before expansion");
    hb.states = admissible_words(s, k, static_cast<std::size_t>(caps.max_expanded_states) + 1);
    if (hb.states.size() > static_cast<std::size_t>(caps.max_expanded_states))
        throw CapExceeded("higher_block: expanded state count exceeds cap of " +
                          std::to_string(caps.max_expanded_states));
    const Eigen::Index m = static_cast<Eigen::Index>(hb.states.size());
    IntMatrix tr = IntMatrix::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j) {
            const auto& a = hb.states[static_cast<std::size_t>(i)];
            const auto& b = hb.states[static_cast<std::size_t>(j)];
            // (k-1)-overlap suffices: the junction edge of the combined
            // (k+1)-word is the final edge of b, already admissible.
            if (std::equal(a.begin() + 1, a.end(), b.begin())) tr(i, j) = 1;
        }
    hb.sft = Sft{std::move(tr), s.sided};
    return hb;
}

GroupExtension group_extension(const Sft& s, int g,
                               const std::map<std::pair<int, int>, int>& cocycle,
                               const SftCaps& caps) {
    if (g < 1) throw std::invalid_argument("group_extension: g must be >= 1");
    TrimResult t = trim(s);
    if (t.empty) throw std::invalid_argument("group_extension: empty shift");
    if (s.alphabet_size() * g > caps.max_expanded_states)
        throw CapExceeded("group_extension: extension state count exceeds cap");
    GroupExtension ext;
    ext.g = g;
    ext.cocycle = cocycle;
    if (g == 1) {
        ext.sft = s;
        return ext;
    }
    const int n = s.alphabet_size();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (s.edge(a, b) && !cocycle.count({a, b}))
                throw std::invalid_argument("group_extension: cocycle missing admissible edge " +
                                            std::to_string(a) + "->" + std::to_string(b));
    const Eigen::Index m = static_cast<Eigen::Index>(n) * g;
    IntMatrix tr = IntMatrix::Zero(m, m);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (!s.edge(a, b)) continue;
            int c = ((cocycle.at({a, b}) % g) + g) % g;
            for (int h = 0; h < g; ++h)
                tr(ext.state_of(a, h), ext.state_of(b, (h + c) % g)) = 1;
        }
    ext.sft = Sft{std::move(tr), s.sided};
    return ext;
}

}  // namespace etale
