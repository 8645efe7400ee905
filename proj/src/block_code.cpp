#include "etale/block_code.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace etale {

int SlidingBlockCode::apply_window(const std::vector<int>& word) const {
    auto it = block_map.find(word);
    if (it == block_map.end())
        throw std::invalid_argument("SlidingBlockCode: window not in block map");
    return it->second;
}

std::vector<int> SlidingBlockCode::apply(const std::vector<int>& word) const {
    const int w = window();
    if (static_cast<int>(word.size()) < w)
        throw std::invalid_argument("SlidingBlockCode: word shorter than window");
    std::vector<int> out;
    for (std::size_t i = 0; i + static_cast<std::size_t>(w) <= word.size(); ++i)
        out.push_back(apply_window(std::vector<int>(word.begin() + static_cast<long>(i),
                                                    word.begin() + static_cast<long>(i) + w)));
    return out;
}

SlidingBlockCode identity_code(const Sft& s) {
    SlidingBlockCode c;
    c.source = s;
    c.target = s;
    for (int v = 0; v < s.alphabet_size(); ++v) c.block_map[{v}] = v;
    return c;
}

SlidingBlockCode higher_block_code(const Sft& s, const HigherBlock& hb) {
    SlidingBlockCode c;
    c.source = hb.sft;
    c.target = s;
    for (std::size_t v = 0; v < hb.states.size(); ++v)
        c.block_map[{static_cast<int>(v)}] = hb.states[v].front();
    return c;
}

SlidingBlockCode group_extension_code(const Sft& base, const GroupExtension& ext) {
    SlidingBlockCode c;
    c.source = ext.sft;
    c.target = base;
    for (int v = 0; v < ext.sft.alphabet_size(); ++v) c.block_map[{v}] = v / ext.g;
    return c;
}

std::optional<std::string> validate_code(const SlidingBlockCode& code, int check_length) {
    const int w = code.window();
    for (const auto& word : admissible_words(code.source, w)) {
        auto it = code.block_map.find(word);
        if (it == code.block_map.end()) {
            std::string s = "block map missing admissible window:";
            for (int v : word) s += " " + std::to_string(v);
            return s;
        }
        if (it->second < 0 || it->second >= code.target.alphabet_size())
            return "block map image symbol out of target range";
    }
    const int check = std::max(check_length, w + 2);
    for (const auto& word : admissible_words(code.source, check)) {
        std::vector<int> img = code.apply(word);
        for (std::size_t i = 0; i + 1 < img.size(); ++i)
            if (!code.target.edge(img[i], img[i + 1])) {
                std::string s = "image word not admissible in target:";
                for (int v : img) s += " " + std::to_string(v);
                return s;
            }
    }
    return std::nullopt;
}

namespace {

// 1-block form of a code: vertices of the window-block presentation of the
// source, labeled by the code's output symbol.
struct OneBlockForm {
    Sft graph;                             // window-block source presentation
    std::vector<int> label;                // state -> target symbol
    std::vector<std::vector<int>> states;  // state -> source window word
};

OneBlockForm recode_one_block(const SlidingBlockCode& code, const SftCaps& caps) {
    OneBlockForm f;
    const int w = code.window();
    HigherBlock hb = higher_block(code.source, w, caps);
    f.graph = hb.sft;
    f.states = hb.states;
    f.label.reserve(f.states.size());
    for (const auto& st : f.states) f.label.push_back(code.block_map.at(st));
    return f;
}

}  // namespace

FiniteToOneVerdict is_finite_to_one(const SlidingBlockCode& code, const SftCaps& caps) {
    OneBlockForm f = recode_one_block(code, caps);
    const int n = f.graph.alphabet_size();
    const int nlabels = code.target.alphabet_size();
    auto pair_id = [n](int u, int v) { return u * n + v; };

    // Successors/predecessors bucketed by label, so pair-graph edges cost
    // out-degree products per label instead of n^2 scans.
    std::vector<std::vector<std::vector<int>>> succ(static_cast<std::size_t>(n)),
        pred(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u) {
        succ[static_cast<std::size_t>(u)].assign(static_cast<std::size_t>(nlabels), {});
        pred[static_cast<std::size_t>(u)].assign(static_cast<std::size_t>(nlabels), {});
    }
    for (int u = 0; u < n; ++u)
        for (int x = 0; x < n; ++x)
            if (f.graph.edge(u, x)) {
                int l = f.label[static_cast<std::size_t>(x)];
                succ[static_cast<std::size_t>(u)][static_cast<std::size_t>(l)].push_back(x);
                int lu = f.label[static_cast<std::size_t>(u)];
                pred[static_cast<std::size_t>(x)][static_cast<std::size_t>(lu)].push_back(u);
            }

    // Label product graph on pairs (u, v) with equal labels.
    // A diamond exists iff some non-diagonal pair is reachable from the
    // diagonal and co-reachable to it.
    std::vector<int> fwd_parent(static_cast<std::size_t>(n) * n, -2);  // -2 unseen, -1 root
    std::vector<int> bwd_parent(static_cast<std::size_t>(n) * n, -2);
    std::deque<int> queue;
    for (int u = 0; u < n; ++u) {
        queue.push_back(pair_id(u, u));
        fwd_parent[static_cast<std::size_t>(pair_id(u, u))] = -1;
    }
    while (!queue.empty()) {
        int id = queue.front();
        queue.pop_front();
        int u = id / n, v = id % n;
        for (int l = 0; l < nlabels; ++l)
            for (int x : succ[static_cast<std::size_t>(u)][static_cast<std::size_t>(l)])
                for (int y : succ[static_cast<std::size_t>(v)][static_cast<std::size_t>(l)]) {
                    int nid = pair_id(x, y);
                    if (fwd_parent[static_cast<std::size_t>(nid)] == -2) {
                        fwd_parent[static_cast<std::size_t>(nid)] = id;
                        queue.push_back(nid);
                    }
                }
    }
    for (int u = 0; u < n; ++u) {
        queue.push_back(pair_id(u, u));
        bwd_parent[static_cast<std::size_t>(pair_id(u, u))] = -1;
    }
    while (!queue.empty()) {
        int id = queue.front();
        queue.pop_front();
        int u = id / n, v = id % n;
        for (int l = 0; l < nlabels; ++l)
            for (int x : pred[static_cast<std::size_t>(u)][static_cast<std::size_t>(l)])
                for (int y : pred[static_cast<std::size_t>(v)][static_cast<std::size_t>(l)]) {
                    int nid = pair_id(x, y);
                    if (bwd_parent[static_cast<std::size_t>(nid)] == -2) {
                        bwd_parent[static_cast<std::size_t>(nid)] = id;
                        queue.push_back(nid);
                    }
                }
    }

    int hit = -1;
    for (int u = 0; u < n && hit < 0; ++u)
        for (int v = 0; v < n && hit < 0; ++v) {
            if (u == v) continue;
            int id = pair_id(u, v);
            if (fwd_parent[static_cast<std::size_t>(id)] != -2 &&
                bwd_parent[static_cast<std::size_t>(id)] != -2)
                hit = id;
        }

    FiniteToOneVerdict verdict;
    if (hit < 0) return verdict;
    verdict.finite_to_one = false;

    // Reconstruct the pair path (s,s) ->* (u,v) ->* (t,t) through `hit`.
    std::vector<int> pre, post;
    for (int id = hit; id != -1; id = fwd_parent[static_cast<std::size_t>(id)]) pre.push_back(id);
    std::reverse(pre.begin(), pre.end());
    for (int id = bwd_parent[static_cast<std::size_t>(hit)]; id != -1;
         id = bwd_parent[static_cast<std::size_t>(id)])
        post.push_back(id);
    std::vector<int> path = pre;
    path.insert(path.end(), post.begin(), post.end());

    // Expand the two recoded state tracks into source words.  A path of
    // window-block states of length L spells a source word of length
    // L + window - 1 by overlap.
    auto track_word = [&](bool second) {
        std::vector<int> word;
        for (std::size_t i = 0; i < path.size(); ++i) {
            int st = second ? path[i] % n : path[i] / n;
            const auto& sym = f.states[static_cast<std::size_t>(st)];
            if (i == 0)
                word = sym;
            else
                word.push_back(sym.back());
        }
        return word;
    };
    verdict.witness = FiniteToOneVerdict::Diamond{track_word(false), track_word(true)};
    return verdict;
}

bool replay_diamond(const SlidingBlockCode& code, const FiniteToOneVerdict::Diamond& d) {
    if (d.word_a.size() != d.word_b.size()) return false;
    if (d.word_a == d.word_b) return false;
    auto admissible = [&](const std::vector<int>& w) {
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            if (!code.source.edge(w[i], w[i + 1])) return false;
        return true;
    };
    if (!admissible(d.word_a) || !admissible(d.word_b)) return false;
    return code.apply(d.word_a) == code.apply(d.word_b);
}

SurjectivityResult code_onto(const SlidingBlockCode& code, std::size_t cap_states) {
    SurjectivityResult res;
    // Subset search: states are (target symbol, set of recoded source states
    // whose label is that symbol and that are reachable by some preimage of
    // the target word read so far).  An admissible target word with an empty
    // preimage set witnesses non-surjectivity.
    SftCaps caps;
    OneBlockForm f = recode_one_block(code, caps);
    const int n = f.graph.alphabet_size();
    const int m = code.target.alphabet_size();

    std::map<std::pair<int, std::vector<int>>, std::pair<int, std::vector<int>>> parents;
    std::deque<std::pair<int, std::vector<int>>> queue;
    for (int t = 0; t < m; ++t) {
        std::vector<int> set;
        for (int u = 0; u < n; ++u)
            if (f.label[static_cast<std::size_t>(u)] == t) set.push_back(u);
        std::pair<int, std::vector<int>> node{t, set};
        if (!parents.count(node)) {
            parents[node] = {-1, {}};
            queue.push_back(node);
        }
    }
    while (!queue.empty()) {
        auto node = queue.front();
        queue.pop_front();
        const auto& [t, set] = node;
        if (set.empty()) {
            // reconstruct the failing word
            std::vector<int> word;
            auto cur = node;
            while (cur.first != -1) {
                word.push_back(cur.first);
                auto it = parents.find(cur);
                if (it == parents.end() || it->second.first == -1) break;
                cur = it->second;
            }
            std::reverse(word.begin(), word.end());
            res.onto = false;
            res.failing_word = word;
            return res;
        }
        for (int t2 = 0; t2 < m; ++t2) {
            if (!code.target.edge(t, t2)) continue;
            std::set<int> next;
            for (int u : set)
                for (int x = 0; x < n; ++x)
                    if (f.graph.edge(u, x) && f.label[static_cast<std::size_t>(x)] == t2)
                        next.insert(x);
            std::pair<int, std::vector<int>> nnode{t2, {next.begin(), next.end()}};
            if (!parents.count(nnode)) {
                if (parents.size() >= cap_states) {
                    res.exhausted = true;
                    return res;
                }
                parents[nnode] = node;
                queue.push_back(nnode);
            }
        }
    }
    res.onto = true;
    return res;
}

}  // namespace etale
