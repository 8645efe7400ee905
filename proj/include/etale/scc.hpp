// Strongly connected components of the directed graph of a nonnegative
// matrix (edge i -> j iff entry (i,j) != 0), with the condensation DAG.
// Components are reported in a deterministic topological order, ties broken
// by smallest vertex index.

#pragma once

#include "etale/int_matrix.hpp"

#include <vector>

namespace etale {

struct SccDecomposition {
    std::vector<std::vector<int>> components;  // vertex index sets, each sorted
    std::vector<int> component_of;             // vertex -> component id
    std::vector<std::vector<int>> dag;         // condensation adjacency (component ids)

    bool is_trivial(int c) const { return components[static_cast<std::size_t>(c)].size() == 1; }
};

SccDecomposition scc_decompose(const IntMatrix& a);

// True iff the digraph has no cycle, i.e. the matrix is nilpotent.
bool is_nilpotent(const IntMatrix& a);

}  // namespace etale
