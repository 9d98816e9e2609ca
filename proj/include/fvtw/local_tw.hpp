#pragma once

#include <optional>

#include "fvtw/bags.hpp"
#include "fvtw/decomposition.hpp"

namespace fvtw {

// Optimal tree decomposition of a graph split into a complete part V1 and a
// forest part V2; the root bag is V1. Width lands in {|V1|-1, |V1|, |V1|+1}.
struct CliqueForestResult {
    int width = -1;
    TreeDecomposition td;
};
CliqueForestResult clique_forest_td(const Graph& g, const VertexSet& v1, const VertexSet& v2);

struct LtwResult {
    bool value = false;
    // present iff value: decomposition of G'[bundle union] with root bag x_p
    // and a designated leaf with bag x_min
    std::optional<TreeDecomposition> td;
    int leaf = -1; // the x_min leaf
    int width = -1;
};

// Local treewidth of a bundle: whether the clique-augmented subgraph spanned
// by x_max, x_p, x_min and x_path has treewidth at most k, with the witness
// decomposition used for stitching.
LtwResult ltw(BagContext& ctx, const BagBundle& bundle);

// Standalone variant for a bundle over an explicit graph (test harness use).
LtwResult ltw_eval(const Graph& g, const VertexSet& sset, const BagBundle& bundle, int k, AlgoChecks* checks);

// Graph with clique edges added inside x_max, x_p and x_min (the paper's G').
Graph clique_augmented(const Graph& g, const BagBundle& bundle);

} // namespace fvtw
