#include "fvtw/states.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fvtw {

bool ExtOp::operator==(const ExtOp& o) const {
    if (kind != o.kind || v != o.v || xts != o.xts || l1 != o.l1 || l2 != o.l2 || slot_r != o.slot_r ||
        slot_l1 != o.slot_l1 || slot_l2 != o.slot_l2 || s_bits != o.s_bits || sub1 != o.sub1 || sub2 != o.sub2)
        return false;
    if (!inner != !o.inner) return false;
    return !inner || *inner == *o.inner;
}

void ExtOp::encode(std::vector<uint64_t>& out) const {
    out.push_back((uint64_t(static_cast<uint8_t>(kind)) << 56) | (uint64_t(static_cast<uint32_t>(v + 1)) << 24) |
                  uint64_t(static_cast<uint32_t>(sub1 * 64 + sub2)));
    out.push_back((uint64_t(xts) << 40) | (uint64_t(l1) << 20) | uint64_t(l2));
    out.push_back((uint64_t(static_cast<uint32_t>(slot_r + 1)) << 42) | (uint64_t(static_cast<uint32_t>(slot_l1 + 1)) << 21) |
                  uint64_t(static_cast<uint32_t>(slot_l2 + 1)));
    out.push_back(s_bits);
    if (inner) inner->encode(out);
}

std::string ExtOp::str(const std::vector<int>& s_verts) const {
    auto mask_str = [&](Smask m) {
        std::string s = "{";
        bool first = true;
        for (size_t i = 0; i < s_verts.size(); ++i)
            if ((m >> i) & 1) {
                if (!first) s += ",";
                s += std::to_string(s_verts[i]);
                first = false;
            }
        return s + "}";
    };
    std::ostringstream ss;
    switch (kind) {
        case OpKind::Void: ss << "void"; break;
        case OpKind::SmallIntroduce: ss << "smallintroduce(v=" << v << ",dr=" << slot_r << ")"; break;
        case OpKind::SmallJoin:
            ss << "smalljoin(X=" << mask_str(xts) << ",L1=" << mask_str(l1) << ",L2=" << mask_str(l2) << ",d=("
               << slot_r << "," << slot_l1 << "," << slot_l2 << "))";
            break;
        case OpKind::BigJoin:
            ss << "bigjoin(X=" << mask_str(xts) << ",L1=" << mask_str(l1) << ",L2=" << mask_str(l2) << ",s=" << s_bits
               << ",d=(" << sub1 << "," << sub2 << "))";
            break;
        case OpKind::ForgetPlain: ss << "forget(v=" << v << ",dl1=" << slot_l1 << ")"; break;
        case OpKind::ForgetChain: ss << "forget(v=" << v << ",chain->" << inner->str(s_verts) << ")"; break;
    }
    return ss.str();
}

ExtOpPtr make_void() {
    static const ExtOpPtr kVoid = std::make_shared<ExtOp>();
    return kVoid;
}

StateKey state_key(const State& st) {
    StateKey k;
    k.words.push_back((uint64_t(st.trace.L) << 32) | uint64_t(st.trace.X));
    st.bottom->encode(k.words);
    k.words.push_back(0xabcdefull); // separator
    st.top->encode(k.words);
    return k;
}

SSpace::SSpace(const Graph& g, const VertexSet& s) : index(static_cast<size_t>(g.n()), -1) {
    verts = s.to_vector();
    if (verts.size() > 20) throw std::invalid_argument("feedback vertex sets above 20 vertices are not supported");
    for (size_t i = 0; i < verts.size(); ++i) index[static_cast<size_t>(verts[i])] = static_cast<int>(i);
    full = verts.empty() ? 0 : (Smask(1) << verts.size()) - 1;
}

bool is_valid_trace(const Graph& g, const SSpace& ss, const STrace& t) {
    if ((t.L | t.X | t.R) != ss.full || (t.L & t.X) || (t.L & t.R) || (t.X & t.R))
        throw std::invalid_argument("trace is not a partition of S");
    if (!t.L || !t.R) return true;
    // reachability from L inside G[S] - X
    Smask avoid = t.X;
    Smask reach = t.L;
    bool grew = true;
    while (grew) {
        grew = false;
        Smask nxt = reach;
        for (int i = 0; i < ss.size(); ++i) {
            if (!((reach >> i) & 1)) continue;
            for (int u : g.nbrs(ss.verts[static_cast<size_t>(i)])) {
                int j = ss.index[static_cast<size_t>(u)];
                if (j >= 0 && !((avoid >> j) & 1)) nxt |= Smask(1) << j;
            }
        }
        if (nxt != reach) {
            reach = nxt;
            grew = true;
        }
    }
    return (reach & t.R) == 0;
}

bool trace_precedes(const STrace& child, const STrace& parent) {
    bool l_sub = (child.L & ~parent.L) == 0;
    if (!l_sub) return false;
    if (child.L != parent.L) return true;
    return (child.X & ~parent.X) == 0 && child.X != parent.X;
}

} // namespace fvtw
