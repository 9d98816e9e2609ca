#include "fvtw/oracle.hpp"

#include <algorithm>
#include <cstdint>

namespace fvtw {

namespace {

// Q(B, v): vertices outside B+{v} reachable from v through B.
// Masks fit in 32 bits under the oracle cap.
int q_value(const std::vector<uint32_t>& adj, uint32_t b, int v) {
    uint32_t inside = b | (uint32_t(1) << v);
    uint32_t comp = uint32_t(1) << v;
    bool grew = true;
    while (grew) {
        grew = false;
        uint32_t reach = 0;
        uint32_t m = comp;
        while (m) {
            int u = __builtin_ctz(m);
            m &= m - 1;
            reach |= adj[static_cast<size_t>(u)];
        }
        uint32_t add = (reach & inside) & ~comp;
        if (add) {
            comp |= add;
            grew = true;
        }
    }
    uint32_t reach = 0;
    uint32_t m = comp;
    while (m) {
        int u = __builtin_ctz(m);
        m &= m - 1;
        reach |= adj[static_cast<size_t>(u)];
    }
    return __builtin_popcount(reach & ~inside);
}

TreeDecomposition td_from_elimination(const Graph& g, const std::vector<int>& order) {
    int n = g.n();
    std::vector<VertexSet> work(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) work[static_cast<size_t>(v)] = g.adj(v);
    VertexSet remaining = VertexSet::full(n);

    TreeDecomposition td;
    std::vector<int> pos(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) pos[static_cast<size_t>(order[static_cast<size_t>(i)])] = i;
    std::vector<int> node_of(static_cast<size_t>(n), -1);

    for (int i = 0; i < n; ++i) {
        int v = order[static_cast<size_t>(i)];
        VertexSet nb = work[static_cast<size_t>(v)] & remaining;
        nb.remove(v);
        VertexSet bag = nb;
        bag.add(v);
        node_of[static_cast<size_t>(v)] = td.add_node(bag);
        // fill-in among the remaining neighbors
        FVTW_FOR_SET(a, nb) {
            FVTW_FOR_SET(b, nb) {
                if (a < b) {
                    work[static_cast<size_t>(a)].add(b);
                    work[static_cast<size_t>(b)].add(a);
                }
            }
        }
        remaining.remove(v);
    }
    // attach each bag to the bag of its earliest-eliminated later neighbor
    for (int i = 0; i < n; ++i) {
        int v = order[static_cast<size_t>(i)];
        const VertexSet& bag = td.bags[static_cast<size_t>(node_of[static_cast<size_t>(v)])];
        int best = -1;
        FVTW_FOR_SET(u, bag) {
            if (u == v) continue;
            if (best == -1 || pos[static_cast<size_t>(u)] < pos[static_cast<size_t>(best)]) best = u;
        }
        if (best != -1) {
            td.add_edge(node_of[static_cast<size_t>(v)], node_of[static_cast<size_t>(best)]);
        } else if (i + 1 < n) {
            td.add_edge(node_of[static_cast<size_t>(v)], node_of[static_cast<size_t>(order[static_cast<size_t>(i + 1)])]);
        }
    }
    td.root = node_of[static_cast<size_t>(order[static_cast<size_t>(n - 1)])];
    return td;
}

} // namespace

OracleResult oracle_treewidth(const Graph& g, int cap) {
    int n = g.n();
    if (n > cap) throw OracleCapExceeded(n, cap);
    if (n == 0) {
        TreeDecomposition td;
        td.add_node(VertexSet(0));
        td.root = 0;
        return {-1, td};
    }

    std::vector<uint32_t> adj(static_cast<size_t>(n), 0);
    for (int v = 0; v < n; ++v)
        for (int u : g.nbrs(v)) adj[static_cast<size_t>(v)] |= uint32_t(1) << u;

    // tw[A] = width of the best elimination of exactly the set A
    const uint32_t full = (n == 32) ? ~uint32_t(0) : ((uint32_t(1) << n) - 1);
    std::vector<uint8_t> tw(size_t(1) << n, 0);
    for (uint32_t a = 1; a <= full; ++a) {
        int best = n + 1;
        uint32_t m = a;
        while (m) {
            int v = __builtin_ctz(m);
            m &= m - 1;
            uint32_t rest = a & ~(uint32_t(1) << v);
            int cand = std::max<int>(tw[rest], q_value(adj, rest, v));
            best = std::min(best, cand);
        }
        tw[a] = static_cast<uint8_t>(best);
    }

    // recover an optimal elimination order; the vertex picked at set A is
    // eliminated last among A
    std::vector<int> order(static_cast<size_t>(n));
    uint32_t a = full;
    for (int i = n - 1; i >= 0; --i) {
        int pick = -1;
        uint32_t m = a;
        while (m) {
            int v = __builtin_ctz(m);
            m &= m - 1;
            uint32_t rest = a & ~(uint32_t(1) << v);
            if (std::max<int>(tw[rest], q_value(adj, rest, v)) == tw[a]) {
                pick = v;
                break;
            }
        }
        order[static_cast<size_t>(i)] = pick;
        a &= ~(uint32_t(1) << pick);
    }

    OracleResult res;
    res.width = tw[full];
    res.td = td_from_elimination(g, order);
    return res;
}

bool oracle_decide(const Graph& g, int k, int cap) { return oracle_treewidth(g, cap).width <= k; }

} // namespace fvtw
