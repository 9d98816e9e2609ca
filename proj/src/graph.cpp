#include "fvtw/graph.hpp"

#include <algorithm>

namespace fvtw {

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n);
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n) throw std::invalid_argument("vertex out of range");
        if (u == v) throw std::invalid_argument("self-loop");
        if (g.has_edge(u, v)) throw std::invalid_argument("parallel edge");
        g.add_edge_unchecked(u, v);
    }
    for (auto& lst : g.nbrs_) std::sort(lst.begin(), lst.end());
    return g;
}

void Graph::add_edge_unchecked(int u, int v) {
    adj_[static_cast<size_t>(u)].add(v);
    adj_[static_cast<size_t>(v)].add(u);
    nbrs_[static_cast<size_t>(u)].push_back(v);
    nbrs_[static_cast<size_t>(v)].push_back(u);
    ++m_;
}

VertexSet neighbors_of_set(const Graph& g, const VertexSet& s) {
    VertexSet out(g.n());
    FVTW_FOR_SET(v, s) out |= g.adj(v);
    out -= s;
    return out;
}

VertexSet component_of(const Graph& g, const VertexSet& within, int v) {
    VertexSet comp(g.n());
    comp.add(v);
    VertexSet frontier = comp;
    while (!frontier.empty()) {
        VertexSet nxt(g.n());
        FVTW_FOR_SET(u, frontier) nxt |= g.adj(u);
        nxt &= within;
        nxt -= comp;
        comp |= nxt;
        frontier = nxt;
    }
    return comp;
}

std::vector<VertexSet> connected_components(const Graph& g, const VertexSet& within) {
    std::vector<VertexSet> comps;
    VertexSet left = within;
    while (!left.empty()) {
        int v = left.first();
        VertexSet comp = component_of(g, left, v);
        left -= comp;
        comps.push_back(std::move(comp));
    }
    return comps;
}

bool is_forest(const Graph& g, const VertexSet& within) {
    int edges = induced_edge_count(g, within);
    int comps = static_cast<int>(connected_components(g, within).size());
    return edges == within.count() - comps;
}

bool is_connected(const Graph& g) {
    if (g.n() <= 1) return true;
    return component_of(g, VertexSet::full(g.n()), 0).count() == g.n();
}

int induced_edge_count(const Graph& g, const VertexSet& within) {
    int total = 0;
    FVTW_FOR_SET(v, within) total += (g.adj(v) & within).count();
    return total / 2;
}

} // namespace fvtw
