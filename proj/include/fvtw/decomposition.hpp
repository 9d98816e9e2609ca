#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fvtw/graph.hpp"

namespace fvtw {

// Tree decomposition: a tree over nodes plus one bag per node. `root` is -1
// for unrooted decompositions.
struct TreeDecomposition {
    std::vector<VertexSet> bags;
    std::vector<std::pair<int, int>> edges;
    int root = -1;

    int node_count() const { return static_cast<int>(bags.size()); }

    int add_node(VertexSet bag) {
        bags.push_back(std::move(bag));
        return node_count() - 1;
    }

    void add_edge(int a, int b) { edges.emplace_back(a, b); }

    // max bag size minus one; -1 when every bag is empty
    int width() const {
        int mx = 0;
        for (const auto& b : bags) mx = std::max(mx, b.count());
        return mx - 1;
    }

    std::vector<std::vector<int>> adjacency() const;
    std::vector<int> parents_from_root() const; // parent per node, -1 at root
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Checks tree shape plus the three decomposition conditions; all violations
// are collected rather than failing on the first.
ValidationReport validate(const TreeDecomposition& td, const Graph& g);

TreeDecomposition root_at(const TreeDecomposition& td, int node);

// Inserts nodes along parent-child edges until every such pair has
// comparable bags whose sizes differ by at most one. Requires a rooted,
// valid input; width is preserved.
TreeDecomposition normalize(const TreeDecomposition& td);

// Standard nice-form conversion: empty root and leaf bags, every internal
// node an introduce/forget/join. Width is preserved.
TreeDecomposition to_nice(const TreeDecomposition& td, const Graph& g);

enum class NiceNodeKind { Leaf, Introduce, Forget, Join, Invalid };
NiceNodeKind classify_nice_node(const TreeDecomposition& td, const std::vector<int>& parent, int node);

// Relabels nodes in preorder from the root (canonical numbering for output).
TreeDecomposition renumber_preorder(const TreeDecomposition& td);

// Width <= 1 decomposition of the forest G[within]; single empty bag when
// `within` is empty. Unrooted.
TreeDecomposition forest_decomposition(const Graph& g, const VertexSet& within);

} // namespace fvtw
