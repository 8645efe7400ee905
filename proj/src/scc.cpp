#include "etale/scc.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace etale {

namespace {

struct TarjanState {
    const std::vector<std::vector<int>>& adj;
    std::vector<int> index, low, stack_pos;
    std::vector<int> stack;
    std::vector<std::vector<int>> sccs;
    int counter = 0;

    explicit TarjanState(const std::vector<std::vector<int>>& g)
        : adj(g),
          index(g.size(), -1),
          low(g.size(), -1),
          stack_pos(g.size(), -1) {}

    // Iterative Tarjan; the explicit frame stack keeps deep graphs safe.
    void run(int root) {
        struct Frame { int v; std::size_t edge; };
        std::vector<Frame> frames;
        frames.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack_pos[root] = static_cast<int>(stack.size());
        stack.push_back(root);
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.edge < adj[static_cast<std::size_t>(f.v)].size()) {
                int w = adj[static_cast<std::size_t>(f.v)][f.edge++];
                if (index[static_cast<std::size_t>(w)] == -1) {
                    index[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = counter++;
                    stack_pos[static_cast<std::size_t>(w)] = static_cast<int>(stack.size());
                    stack.push_back(w);
                    frames.push_back({w, 0});
                } else if (stack_pos[static_cast<std::size_t>(w)] >= 0) {
                    low[static_cast<std::size_t>(f.v)] =
                        std::min(low[static_cast<std::size_t>(f.v)], index[static_cast<std::size_t>(w)]);
                }
            } else {
                int v = f.v;
                frames.pop_back();
                if (!frames.empty()) {
                    int p = frames.back().v;
                    low[static_cast<std::size_t>(p)] =
                        std::min(low[static_cast<std::size_t>(p)], low[static_cast<std::size_t>(v)]);
                }
                if (low[static_cast<std::size_t>(v)] == index[static_cast<std::size_t>(v)]) {
                    std::vector<int> comp;
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        stack_pos[static_cast<std::size_t>(w)] = -1;
                        comp.push_back(w);
                        if (w == v) break;
                    }
                    std::sort(comp.begin(), comp.end());
                    sccs.push_back(std::move(comp));
                }
            }
        }
    }
};

}  // namespace

SccDecomposition scc_decompose(const IntMatrix& a) {
    require_square_nonnegative(a, "scc_decompose");
    const int n = static_cast<int>(a.rows());
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (a(i, j) != 0) adj[static_cast<std::size_t>(i)].push_back(j);

    TarjanState t(adj);
    for (int v = 0; v < n; ++v)
        if (t.index[static_cast<std::size_t>(v)] == -1) t.run(v);

    // Provisional ids in Tarjan discovery order.
    std::vector<int> provisional(static_cast<std::size_t>(n), -1);
    for (std::size_t c = 0; c < t.sccs.size(); ++c)
        for (int v : t.sccs[c]) provisional[static_cast<std::size_t>(v)] = static_cast<int>(c);

    const int m = static_cast<int>(t.sccs.size());
    std::vector<std::set<int>> cond(static_cast<std::size_t>(m));
    std::vector<int> indeg(static_cast<std::size_t>(m), 0);
    for (int i = 0; i < n; ++i)
        for (int j : adj[static_cast<std::size_t>(i)]) {
            int ci = provisional[static_cast<std::size_t>(i)];
            int cj = provisional[static_cast<std::size_t>(j)];
            if (ci != cj && cond[static_cast<std::size_t>(ci)].insert(cj).second)
                ++indeg[static_cast<std::size_t>(cj)];
        }

    // Kahn topological order; among ready components pick the one whose
    // smallest vertex index is least, so the order is input-determined.
    auto min_vertex = [&](int c) { return t.sccs[static_cast<std::size_t>(c)].front(); };
    auto cmp = [&](int x, int y) { return min_vertex(x) > min_vertex(y); };
    std::priority_queue<int, std::vector<int>, decltype(cmp)> ready(cmp);
    for (int c = 0; c < m; ++c)
        if (indeg[static_cast<std::size_t>(c)] == 0) ready.push(c);

    SccDecomposition out;
    out.component_of.assign(static_cast<std::size_t>(n), -1);
    std::vector<int> final_id(static_cast<std::size_t>(m), -1);
    while (!ready.empty()) {
        int c = ready.top();
        ready.pop();
        final_id[static_cast<std::size_t>(c)] = static_cast<int>(out.components.size());
        out.components.push_back(t.sccs[static_cast<std::size_t>(c)]);
        for (int d : cond[static_cast<std::size_t>(c)])
            if (--indeg[static_cast<std::size_t>(d)] == 0) ready.push(d);
    }

    out.dag.assign(static_cast<std::size_t>(m), {});
    for (int c = 0; c < m; ++c) {
        for (int d : cond[static_cast<std::size_t>(c)])
            out.dag[static_cast<std::size_t>(final_id[static_cast<std::size_t>(c)])].push_back(
                final_id[static_cast<std::size_t>(d)]);
        std::sort(out.dag[static_cast<std::size_t>(final_id[static_cast<std::size_t>(c)])].begin(),
                  out.dag[static_cast<std::size_t>(final_id[static_cast<std::size_t>(c)])].end());
    }
    for (std::size_t c = 0; c < out.components.size(); ++c)
        for (int v : out.components[c]) out.component_of[static_cast<std::size_t>(v)] = static_cast<int>(c);
    return out;
}

bool is_nilpotent(const IntMatrix& a) {
    SccDecomposition d = scc_decompose(a);
    for (std::size_t c = 0; c < d.components.size(); ++c) {
        if (d.components[c].size() > 1) return false;
        int v = d.components[c].front();
        if (a(v, v) != 0) return false;
    }
    return true;
}

}  // namespace etale
