#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fvtw/graph.hpp"

namespace fvtw {

// Subsets of the feedback vertex set S are masks over S-indices (position of
// the vertex in the sorted S).
using Smask = uint32_t;

// Ordered tripartition (L, X, R) of S. R is stored explicitly but always
// equals full ^ L ^ X.
struct STrace {
    Smask L = 0, X = 0, R = 0;

    bool operator==(const STrace& o) const { return L == o.L && X == o.X && R == o.R; }
};

enum class OpKind : uint8_t {
    Void = 0,
    SmallIntroduce,
    SmallJoin,
    BigJoin,
    ForgetPlain, // extendedforget with f = false (inner fixed to void)
    ForgetChain, // extendedforget with f = true  (inner pinned, never a forget)
};

// Extended S-operation. Guess integers d are stored decoded: slot_r/slot_l1/
// slot_l2 hold the guessed vertices (-1 for the blank symbol); for bigjoin,
// s_bits is the advice string and sub1/sub2 the subbag ordinals. Candidates
// that decode to the same bags are collapsed at generation time, so an ExtOp
// value is the canonical representative of its class.
struct ExtOp {
    OpKind kind = OpKind::Void;
    int v = -1;                            // introduce / forget vertex
    Smask xts = 0, l1 = 0, l2 = 0;         // join shape: X^S of the join node, L-split
    int slot_r = -1, slot_l1 = -1, slot_l2 = -1;
    uint64_t s_bits = 0;                   // bigjoin advice string
    int sub1 = 0, sub2 = 0;                // bigjoin subbag ordinals (parent ordinal is unused by the table)
    std::shared_ptr<const ExtOp> inner;    // ForgetChain only

    bool is_void() const { return kind == OpKind::Void; }
    bool is_join() const { return kind == OpKind::SmallJoin || kind == OpKind::BigJoin; }
    bool is_forget() const { return kind == OpKind::ForgetPlain || kind == OpKind::ForgetChain; }

    bool operator==(const ExtOp& o) const;
    void encode(std::vector<uint64_t>& out) const;
    std::string str(const std::vector<int>& s_verts) const;
};

using ExtOpPtr = std::shared_ptr<const ExtOp>;

ExtOpPtr make_void();

// DP key: (bottom op, trace, top op).
struct State {
    ExtOpPtr bottom;
    STrace trace;
    ExtOpPtr top;
};

struct StateKey {
    std::vector<uint64_t> words;
    bool operator==(const StateKey& o) const { return words == o.words; }
};

StateKey state_key(const State& st);

struct StateKeyHash {
    size_t operator()(const StateKey& k) const {
        uint64_t h = 0x2545f4914f6cdd1dull;
        for (uint64_t w : k.words) h = (h ^ w) * 0x100000001b3ull;
        return static_cast<size_t>(h);
    }
};

// Trace helpers against a fixed sorted S.
struct SSpace {
    std::vector<int> verts;        // sorted S
    std::vector<int> index;        // vertex -> S-index, -1 outside S
    Smask full = 0;

    SSpace() = default;
    SSpace(const Graph& g, const VertexSet& s);

    int size() const { return static_cast<int>(verts.size()); }
    VertexSet to_set(Smask m, int n) const {
        VertexSet out(n);
        for (int i = 0; i < size(); ++i)
            if ((m >> i) & 1) out.add(verts[static_cast<size_t>(i)]);
        return out;
    }
    Smask from_set(const VertexSet& s) const {
        Smask m = 0;
        for (int i = 0; i < size(); ++i)
            if (s.contains(verts[static_cast<size_t>(i)])) m |= Smask(1) << i;
        return m;
    }
    bool in_s(int v) const { return index[static_cast<size_t>(v)] >= 0; }
};

// Trace validity: no path from L to R in G[S] - X.
bool is_valid_trace(const Graph& g, const SSpace& ss, const STrace& t);

// Strict predecessor order on traces (the well-foundedness of the DP):
// L' subset L, or L' == L and X' subset X.
bool trace_precedes(const STrace& child, const STrace& parent);

} // namespace fvtw
