#include "fvtw/decomposition.hpp"

#include <algorithm>
#include <stdexcept>

namespace fvtw {

std::vector<std::vector<int>> TreeDecomposition::adjacency() const {
    std::vector<std::vector<int>> adj(bags.size());
    for (auto [a, b] : edges) {
        adj[static_cast<size_t>(a)].push_back(b);
        adj[static_cast<size_t>(b)].push_back(a);
    }
    for (auto& lst : adj) std::sort(lst.begin(), lst.end());
    return adj;
}

std::vector<int> TreeDecomposition::parents_from_root() const {
    if (root < 0) throw std::logic_error("decomposition is not rooted");
    auto adj = adjacency();
    std::vector<int> parent(bags.size(), -2);
    std::vector<int> stack = {root};
    parent[static_cast<size_t>(root)] = -1;
    while (!stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        for (int c : adj[static_cast<size_t>(t)])
            if (parent[static_cast<size_t>(c)] == -2) {
                parent[static_cast<size_t>(c)] = t;
                stack.push_back(c);
            }
    }
    return parent;
}

ValidationReport validate(const TreeDecomposition& td, const Graph& g) {
    ValidationReport rep;
    int nn = td.node_count();
    if (nn == 0) {
        rep.violations.push_back("tree: no nodes");
        return rep;
    }
    for (auto [a, b] : td.edges)
        if (a < 0 || a >= nn || b < 0 || b >= nn || a == b) {
            rep.violations.push_back("tree: bad edge endpoint");
            return rep;
        }
    if (static_cast<int>(td.edges.size()) != nn - 1) rep.violations.push_back("tree: edge count != nodes-1");
    // connectivity of the node tree
    {
        auto adj = td.adjacency();
        std::vector<char> seen(static_cast<size_t>(nn), 0);
        std::vector<int> stack = {0};
        seen[0] = 1;
        int cnt = 1;
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            for (int c : adj[static_cast<size_t>(t)])
                if (!seen[static_cast<size_t>(c)]) {
                    seen[static_cast<size_t>(c)] = 1;
                    ++cnt;
                    stack.push_back(c);
                }
        }
        if (cnt != nn) rep.violations.push_back("tree: not connected");
    }
    if (!rep.ok()) return rep;

    // T1: bag union covers V
    VertexSet covered(g.n());
    for (const auto& b : td.bags) covered |= b;
    for (int v = 0; v < g.n(); ++v)
        if (!covered.contains(v)) rep.violations.push_back("T1 violation: vertex " + std::to_string(v) + " in no bag");

    // T2: every edge inside some bag
    for (auto [u, v] : g.edges()) {
        bool found = false;
        for (const auto& b : td.bags)
            if (b.contains(u) && b.contains(v)) {
                found = true;
                break;
            }
        if (!found)
            rep.violations.push_back("T2 violation: edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    }

    // T3: occurrences of each vertex induce a subtree
    auto adj = td.adjacency();
    for (int v = 0; v < g.n(); ++v) {
        int start = -1, total = 0;
        for (int t = 0; t < nn; ++t)
            if (td.bags[static_cast<size_t>(t)].contains(v)) {
                if (start < 0) start = t;
                ++total;
            }
        if (start < 0) continue;
        std::vector<char> seen(static_cast<size_t>(nn), 0);
        std::vector<int> stack = {start};
        seen[static_cast<size_t>(start)] = 1;
        int cnt = 1;
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            for (int c : adj[static_cast<size_t>(t)])
                if (!seen[static_cast<size_t>(c)] && td.bags[static_cast<size_t>(c)].contains(v)) {
                    seen[static_cast<size_t>(c)] = 1;
                    ++cnt;
                    stack.push_back(c);
                }
        }
        if (cnt != total) rep.violations.push_back("T3 violation: vertex " + std::to_string(v) + " occurrences disconnected");
    }
    return rep;
}

TreeDecomposition root_at(const TreeDecomposition& td, int node) {
    if (node < 0 || node >= td.node_count()) throw std::invalid_argument("root node not in decomposition");
    TreeDecomposition out = td;
    out.root = node;
    return out;
}

namespace {

// removable = X_parent \ X_child, smallest id first (the fixed tie-break)
int smallest_in_diff(const VertexSet& a, const VertexSet& b) {
    FVTW_FOR_SET(v, a) if (!b.contains(v)) return v;
    return -1;
}

} // namespace

TreeDecomposition normalize(const TreeDecomposition& td) {
    TreeDecomposition out = td;
    if (out.root < 0) throw std::logic_error("normalize requires a rooted decomposition");
    bool changed = true;
    while (changed) {
        changed = false;
        auto parent = out.parents_from_root();
        for (int t = 0; t < out.node_count() && !changed; ++t) {
            int p = parent[static_cast<size_t>(t)];
            if (p < 0) continue;
            const VertexSet xt = out.bags[static_cast<size_t>(t)];
            const VertexSet xp = out.bags[static_cast<size_t>(p)];
            auto subdivide = [&](VertexSet bag) {
                int mid = out.add_node(std::move(bag));
                for (auto& e : out.edges)
                    if ((e.first == p && e.second == t) || (e.first == t && e.second == p)) {
                        e = {p, mid};
                        break;
                    }
                out.add_edge(mid, t);
                return mid;
            };
            if (smallest_in_diff(xt, xp) != -1 && smallest_in_diff(xp, xt) != -1) {
                subdivide(xt & xp);
                changed = true;
            } else if (xt.count() < xp.count() - 1) {
                // one removal per inserted node, walking down from the parent
                VertexSet bag = xp;
                bag.remove(smallest_in_diff(xp, xt));
                subdivide(std::move(bag));
                changed = true;
            } else if (xp.count() < xt.count() - 1) {
                VertexSet bag = xt;
                bag.remove(smallest_in_diff(xt, xp));
                subdivide(std::move(bag));
                changed = true;
            }
        }
    }
    return out;
}

NiceNodeKind classify_nice_node(const TreeDecomposition& td, const std::vector<int>& parent, int node) {
    std::vector<int> children;
    for (int t = 0; t < td.node_count(); ++t)
        if (parent[static_cast<size_t>(t)] == node) children.push_back(t);
    const VertexSet& bag = td.bags[static_cast<size_t>(node)];
    if (children.empty()) return bag.empty() ? NiceNodeKind::Leaf : NiceNodeKind::Invalid;
    if (children.size() == 1) {
        const VertexSet& cb = td.bags[static_cast<size_t>(children[0])];
        if (cb.is_subset_of(bag) && bag.count() == cb.count() + 1) return NiceNodeKind::Introduce;
        if (bag.is_subset_of(cb) && cb.count() == bag.count() + 1) return NiceNodeKind::Forget;
        return NiceNodeKind::Invalid;
    }
    if (children.size() == 2) {
        if (td.bags[static_cast<size_t>(children[0])] == bag && td.bags[static_cast<size_t>(children[1])] == bag)
            return NiceNodeKind::Join;
        return NiceNodeKind::Invalid;
    }
    return NiceNodeKind::Invalid;
}

TreeDecomposition to_nice(const TreeDecomposition& td, const Graph& g) {
    (void)g;
    TreeDecomposition cur = normalize(root_at(td, td.root >= 0 ? td.root : 0));

    // Rebuild top-down. Each visit returns the id (in `out`) of a node whose
    // bag equals the visited node's bag and under which its subtree hangs.
    TreeDecomposition out;
    auto parent = cur.parents_from_root();
    auto adj = cur.adjacency();

    // chain of single-step bag changes from `from` down to `to`
    auto chain_down = [&](int attach, const VertexSet& from, const VertexSet& to) {
        VertexSet bag = from;
        int at = attach;
        FVTW_FOR_SET(v, from) {
            if (!to.contains(v)) {
                bag.remove(v);
                int nd = out.add_node(bag);
                out.add_edge(at, nd);
                at = nd;
            }
        }
        FVTW_FOR_SET(v, to) {
            if (!from.contains(v)) {
                bag.add(v);
                int nd = out.add_node(bag);
                out.add_edge(at, nd);
                at = nd;
            }
        }
        return at;
    };

    struct Frame {
        int node;
        int attach; // node in `out` with the same bag
    };
    int root_id = out.add_node(cur.bags[static_cast<size_t>(cur.root)]);
    out.root = root_id;
    std::vector<Frame> stack = {{cur.root, root_id}};
    while (!stack.empty()) {
        auto [t, attach] = stack.back();
        stack.pop_back();
        std::vector<int> children;
        for (int c : adj[static_cast<size_t>(t)])
            if (parent[static_cast<size_t>(c)] == t) children.push_back(c);
        const VertexSet& bag = cur.bags[static_cast<size_t>(t)];
        if (children.empty()) {
            // pad down to an empty leaf
            chain_down(attach, bag, VertexSet(bag.universe()));
            continue;
        }
        // binary join fan-out: attach point per child with this node's bag
        std::vector<int> hooks;
        if (children.size() == 1) {
            hooks.push_back(attach);
        } else {
            int at = attach;
            for (size_t i = 0; i + 1 < children.size(); ++i) {
                int l = out.add_node(bag);
                int r = out.add_node(bag);
                out.add_edge(at, l);
                out.add_edge(at, r);
                hooks.push_back(l);
                at = r;
            }
            hooks.push_back(at);
        }
        for (size_t i = 0; i < children.size(); ++i) {
            int c = children[i];
            int at = chain_down(hooks[i], bag, cur.bags[static_cast<size_t>(c)]);
            stack.push_back({c, at});
        }
    }

    // pad the root up to an empty bag
    if (!out.bags[static_cast<size_t>(out.root)].empty()) {
        const VertexSet rb = out.bags[static_cast<size_t>(out.root)];
        VertexSet bag = rb;
        int below = out.root;
        FVTW_FOR_SET(v, rb) {
            bag.remove(v);
            int nd = out.add_node(bag);
            out.add_edge(nd, below);
            below = nd;
        }
        out.root = below;
    }
    return out;
}

TreeDecomposition renumber_preorder(const TreeDecomposition& td) {
    if (td.root < 0) return td;
    auto adj = td.adjacency();
    std::vector<int> order(static_cast<size_t>(td.node_count()), -1);
    int next_id = 0;
    // DFS preorder, children visited in ascending old-id order
    std::vector<int> dfs = {td.root};
    std::vector<char> seen(static_cast<size_t>(td.node_count()), 0);
    seen[static_cast<size_t>(td.root)] = 1;
    while (!dfs.empty()) {
        int t = dfs.back();
        dfs.pop_back();
        order[static_cast<size_t>(t)] = next_id++;
        for (auto it = adj[static_cast<size_t>(t)].rbegin(); it != adj[static_cast<size_t>(t)].rend(); ++it)
            if (!seen[static_cast<size_t>(*it)]) {
                seen[static_cast<size_t>(*it)] = 1;
                dfs.push_back(*it);
            }
    }
    TreeDecomposition out;
    out.bags.resize(td.bags.size());
    for (int t = 0; t < td.node_count(); ++t) out.bags[static_cast<size_t>(order[static_cast<size_t>(t)])] = td.bags[static_cast<size_t>(t)];
    for (auto [a, b] : td.edges) out.add_edge(order[static_cast<size_t>(a)], order[static_cast<size_t>(b)]);
    out.root = order[static_cast<size_t>(td.root)];
    return out;
}

TreeDecomposition forest_decomposition(const Graph& g, const VertexSet& within) {
    TreeDecomposition td;
    if (within.empty()) {
        td.add_node(VertexSet(g.n()));
        td.root = 0;
        return td;
    }
    std::vector<int> node_of(static_cast<size_t>(g.n()), -1);
    int prev_comp_node = -1;
    for (const auto& comp : connected_components(g, within)) {
        int anchor = -1;
        FVTW_FOR_SET(v, comp) {
            // one bag per tree edge to the DFS parent; singleton bag for roots
            if (anchor == -1) {
                VertexSet bag(g.n());
                bag.add(v);
                anchor = td.add_node(bag);
                node_of[static_cast<size_t>(v)] = anchor;
            }
        }
        // BFS the tree, adding {parent, child} bags
        int r = comp.first();
        std::vector<int> queue = {r};
        VertexSet seen(g.n());
        seen.add(r);
        size_t qi = 0;
        while (qi < queue.size()) {
            int u = queue[qi++];
            FVTW_FOR_SET(w, g.adj(u) & comp) {
                if (seen.contains(w)) continue;
                seen.add(w);
                VertexSet bag(g.n());
                bag.add(u);
                bag.add(w);
                int nd = td.add_node(bag);
                td.add_edge(node_of[static_cast<size_t>(u)], nd);
                node_of[static_cast<size_t>(w)] = nd;
                queue.push_back(w);
            }
        }
        if (prev_comp_node >= 0) td.add_edge(prev_comp_node, anchor);
        prev_comp_node = anchor;
    }
    td.root = 0;
    return td;
}

} // namespace fvtw
