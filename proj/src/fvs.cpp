#include "fvtw/fvs.hpp"

#include <algorithm>

namespace fvtw {

bool is_fvs(const Graph& g, const VertexSet& s) {
    return is_forest(g, VertexSet::full(g.n()) - s);
}

namespace {

// Peel degree <= 1 vertices of G[active]; they are on no cycle.
void peel_leaves(const Graph& g, VertexSet& active) {
    bool changed = true;
    while (changed) {
        changed = false;
        FVTW_FOR_SET(v, active) {
            if ((g.adj(v) & active).count() <= 1) {
                active.remove(v);
                changed = true;
            }
        }
    }
}

// Shortest cycle of G[active] as a vertex list, empty if acyclic.
// BFS from every start vertex, smallest ids first.
std::vector<int> shortest_cycle(const Graph& g, const VertexSet& active) {
    int best_len = g.n() + 1;
    std::vector<int> best;
    std::vector<int> dist(static_cast<size_t>(g.n())), par(static_cast<size_t>(g.n()));
    FVTW_FOR_SET(s, active) {
        std::fill(dist.begin(), dist.end(), -1);
        std::vector<int> queue = {s};
        dist[static_cast<size_t>(s)] = 0;
        par[static_cast<size_t>(s)] = -1;
        size_t qi = 0;
        while (qi < queue.size()) {
            int u = queue[qi++];
            if (2 * dist[static_cast<size_t>(u)] >= best_len) break;
            for (int w : g.nbrs(u)) {
                if (!active.contains(w)) continue;
                if (dist[static_cast<size_t>(w)] == -1) {
                    dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(u)] + 1;
                    par[static_cast<size_t>(w)] = u;
                    queue.push_back(w);
                } else if (w != par[static_cast<size_t>(u)]) {
                    // non-tree edge closes a cycle through s of this length
                    int len = dist[static_cast<size_t>(u)] + dist[static_cast<size_t>(w)] + 1;
                    if (len >= best_len) continue;
                    // reconstruct both root paths; keep only simple cycles
                    std::vector<int> pu, pw;
                    for (int x = u; x != -1; x = par[static_cast<size_t>(x)]) pu.push_back(x);
                    for (int x = w; x != -1; x = par[static_cast<size_t>(x)]) pw.push_back(x);
                    VertexSet seen(g.n());
                    bool simple = true;
                    for (int x : pu) seen.add(x);
                    for (int x : pw)
                        if (x != s && seen.contains(x)) {
                            simple = false;
                            break;
                        }
                    if (!simple) continue;
                    best_len = len;
                    best.assign(pu.begin(), pu.end());
                    for (size_t i = 0; i + 1 < pw.size(); ++i) best.push_back(pw[i]);
                }
            }
        }
    }
    return best;
}

void search(const Graph& g, VertexSet active, int taken, VertexSet chosen, int& best, VertexSet& best_set, int cap) {
    if (taken >= best || taken > cap) return;
    peel_leaves(g, active);
    auto cyc = shortest_cycle(g, active);
    if (cyc.empty()) {
        best = taken;
        best_set = chosen;
        return;
    }
    std::sort(cyc.begin(), cyc.end());
    for (int v : cyc) {
        VertexSet a2 = active;
        a2.remove(v);
        VertexSet c2 = chosen;
        c2.add(v);
        search(g, std::move(a2), taken + 1, std::move(c2), best, best_set, cap);
    }
}

} // namespace

FvsResult min_fvs(const Graph& g) {
    int best = g.n() + 1;
    VertexSet best_set(g.n());
    search(g, VertexSet::full(g.n()), 0, VertexSet(g.n()), best, best_set, g.n());
    return {best_set, best_set.count()};
}

bool fvs_at_most(const Graph& g, int k) {
    int best = k + 1;
    VertexSet best_set(g.n());
    search(g, VertexSet::full(g.n()), 0, VertexSet(g.n()), best, best_set, k);
    return best <= k;
}

} // namespace fvtw
