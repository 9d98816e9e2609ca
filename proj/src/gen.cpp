#include "fvtw/gen.hpp"

#include <algorithm>

namespace fvtw {

Graph gen_gnp(int n, double p, uint64_t seed) {
    Rng rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.next_bool(p)) edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
}

Graph gen_fvn_planted(int n, int f, uint64_t seed) {
    if (f > n) f = n;
    Rng rng(seed);
    int forest_n = n - f;
    std::vector<std::pair<int, int>> edges;
    // vertices 0..forest_n-1: random forest (each vertex is a fresh root with
    // probability 0.1, otherwise attaches to a random earlier vertex)
    for (int v = 1; v < forest_n; ++v)
        if (!rng.next_bool(0.1)) edges.emplace_back(rng.next_int(0, v - 1), v);
    // vertices forest_n..n-1: the planted feedback vertices
    for (int s = forest_n; s < n; ++s) {
        int deg = rng.next_int(2, std::min(6, std::max(2, n - 1)));
        VertexSet used(n);
        used.add(s);
        for (int i = 0; i < deg; ++i) {
            int t = static_cast<int>(rng.next_below(static_cast<uint64_t>(n)));
            if (t == s || used.contains(t)) continue;
            used.add(t);
            edges.emplace_back(std::min(s, t), std::max(s, t));
        }
    }
    return Graph::from_edges(n, edges);
}

Graph gen_connected(int n, double p, uint64_t seed) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        Graph g = gen_gnp(n, p, seed + static_cast<uint64_t>(attempt) * 0x51ed2701ull);
        if (is_connected(g)) return g;
    }
    // connect components with a chain of extra edges
    Graph g = gen_gnp(n, p, seed);
    auto edges = g.edges();
    auto comps = connected_components(g, VertexSet::full(n));
    for (size_t i = 0; i + 1 < comps.size(); ++i) edges.emplace_back(comps[i].first(), comps[i + 1].first());
    return Graph::from_edges(n, edges);
}

} // namespace fvtw
