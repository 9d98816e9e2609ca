#pragma once

#include "fvtw/graph.hpp"

namespace fvtw {

struct FvsResult {
    VertexSet set;
    int size = 0;
};

// True iff G - s is acyclic.
bool is_fvs(const Graph& g, const VertexSet& s);

// Exact minimum feedback vertex set. Branches on the vertices of a shortest
// cycle after peeling degree <= 1 vertices; prunes on the best size so far.
FvsResult min_fvs(const Graph& g);

// Decision version with early exit.
bool fvs_at_most(const Graph& g, int k);

} // namespace fvtw
