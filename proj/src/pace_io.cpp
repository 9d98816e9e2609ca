#include "fvtw/pace_io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace fvtw {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur)) lines.push_back(cur);
    return lines;
}

bool blank(const std::string& s) {
    for (char c : s)
        if (!isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace

Graph parse_gr(const std::string& text) {
    auto lines = split_lines(text);
    int n = -1, m = -1;
    std::vector<std::pair<int, int>> edges;
    for (size_t i = 0; i < lines.size(); ++i) {
        int lineno = static_cast<int>(i) + 1;
        const std::string& line = lines[i];
        if (blank(line) || line[0] == 'c') continue;
        std::istringstream ss(line);
        if (line[0] == 'p') {
            if (n != -1) throw ParseError("duplicate problem line", lineno);
            std::string p, tw;
            ss >> p >> tw >> n >> m;
            if (ss.fail() || tw != "tw" || n < 0 || m < 0) throw ParseError("malformed header", lineno);
            continue;
        }
        if (n == -1) throw ParseError("edge before problem line", lineno);
        int u, v;
        ss >> u >> v;
        if (ss.fail()) throw ParseError("malformed edge line", lineno);
        if (u < 1 || u > n) throw ParseError("vertex " + std::to_string(u) + " out of range", lineno);
        if (v < 1 || v > n) throw ParseError("vertex " + std::to_string(v) + " out of range", lineno);
        if (u == v) throw ParseError("self-loop", lineno);
        edges.emplace_back(u - 1, v - 1);
    }
    if (n == -1) throw ParseError("missing problem line", 1);
    if (static_cast<int>(edges.size()) != m) throw ParseError("edge count does not match header", 1);
    try {
        return Graph::from_edges(n, edges);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), 1);
    }
}

std::string emit_gr(const Graph& g) {
    std::ostringstream out;
    out << "p tw " << g.n() << " " << g.m() << "\n";
    for (auto [u, v] : g.edges()) out << u + 1 << " " << v + 1 << "\n";
    return out.str();
}

std::string emit_td(const TreeDecomposition& td_in, const Graph& g) {
    auto rep = validate(td_in, g);
    if (!rep.ok()) throw std::invalid_argument("refusing to emit invalid decomposition: " + rep.violations.front());
    TreeDecomposition td = td_in.root >= 0 ? renumber_preorder(td_in) : td_in;
    int maxbag = 0;
    for (const auto& b : td.bags) maxbag = std::max(maxbag, b.count());
    std::ostringstream out;
    out << "s td " << td.node_count() << " " << maxbag << " " << g.n() << "\n";
    for (int t = 0; t < td.node_count(); ++t) {
        out << "b " << t + 1;
        FVTW_FOR_SET(v, td.bags[static_cast<size_t>(t)]) out << " " << v + 1;
        out << "\n";
    }
    auto edges = td.edges;
    for (auto& e : edges)
        if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(edges.begin(), edges.end());
    for (auto [a, b] : edges) out << a + 1 << " " << b + 1 << "\n";
    return out.str();
}

TreeDecomposition parse_td(const std::string& text, const Graph& g) {
    auto lines = split_lines(text);
    TreeDecomposition td;
    int bags = -1;
    for (size_t i = 0; i < lines.size(); ++i) {
        int lineno = static_cast<int>(i) + 1;
        const std::string& line = lines[i];
        if (blank(line) || line[0] == 'c') continue;
        std::istringstream ss(line);
        if (line[0] == 's') {
            std::string s, tdw;
            int maxbag, n;
            ss >> s >> tdw >> bags >> maxbag >> n;
            if (ss.fail() || tdw != "td") throw ParseError("malformed solution line", lineno);
            if (n != g.n()) throw ParseError("vertex count mismatch", lineno);
            td.bags.assign(static_cast<size_t>(bags), VertexSet(g.n()));
            continue;
        }
        if (bags == -1) throw ParseError("content before solution line", lineno);
        if (line[0] == 'b') {
            char b;
            int id;
            ss >> b >> id;
            if (ss.fail() || id < 1 || id > bags) throw ParseError("bad bag id", lineno);
            int v;
            while (ss >> v) {
                if (v < 1 || v > g.n()) throw ParseError("bag vertex out of range", lineno);
                td.bags[static_cast<size_t>(id - 1)].add(v - 1);
            }
            continue;
        }
        int a, b;
        ss >> a >> b;
        if (ss.fail() || a < 1 || a > bags || b < 1 || b > bags) throw ParseError("bad tree edge", lineno);
        td.add_edge(a - 1, b - 1);
    }
    if (bags == -1) throw ParseError("missing solution line", 1);
    return td;
}

} // namespace fvtw
