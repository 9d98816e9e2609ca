#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "fvtw/vertex_set.hpp"

namespace fvtw {

// Immutable simple undirected graph. Vertex ids 0..n-1 double as the global
// fixed order used for all tie-breaking.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n), adj_(static_cast<size_t>(n), VertexSet(n)), nbrs_(static_cast<size_t>(n)) {}

    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    int n() const { return n_; }
    int m() const { return m_; }

    bool has_edge(int u, int v) const { return adj_[static_cast<size_t>(u)].contains(v); }
    const VertexSet& adj(int v) const { return adj_[static_cast<size_t>(v)]; }
    const std::vector<int>& nbrs(int v) const { return nbrs_[static_cast<size_t>(v)]; }
    int degree(int v) const { return static_cast<int>(nbrs_[static_cast<size_t>(v)].size()); }

    VertexSet vertices() const { return VertexSet::full(n_); }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < n_; ++u)
            for (int v : nbrs_[static_cast<size_t>(u)])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

private:
    void add_edge_unchecked(int u, int v);

    int n_ = 0;
    int m_ = 0;
    std::vector<VertexSet> adj_;
    std::vector<std::vector<int>> nbrs_;
};

// N(s): union of neighborhoods of s, minus s itself.
VertexSet neighbors_of_set(const Graph& g, const VertexSet& s);

// Connected component of G[within] containing v (v must be in `within`).
VertexSet component_of(const Graph& g, const VertexSet& within, int v);

// Components of G[within], ordered by smallest contained vertex id.
std::vector<VertexSet> connected_components(const Graph& g, const VertexSet& within);

// True iff G[within] is acyclic.
bool is_forest(const Graph& g, const VertexSet& within);

bool is_connected(const Graph& g);

// Number of edges of G[within].
int induced_edge_count(const Graph& g, const VertexSet& within);

} // namespace fvtw
