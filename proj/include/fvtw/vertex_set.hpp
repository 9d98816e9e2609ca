#pragma once

#include <cstdint>
#include <cstddef>
#include <functional>
#include <vector>

namespace fvtw {

// Fixed-universe vertex set with bitset semantics. Vertices are 0..n-1.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int universe) : n_(universe), w_(static_cast<size_t>((universe + 63) / 64), 0) {}

    static VertexSet full(int universe) {
        VertexSet s(universe);
        for (int v = 0; v < universe; ++v) s.add(v);
        return s;
    }

    int universe() const { return n_; }

    bool contains(int v) const { return (w_[static_cast<size_t>(v) >> 6] >> (v & 63)) & 1u; }
    void add(int v) { w_[static_cast<size_t>(v) >> 6] |= uint64_t(1) << (v & 63); }
    void remove(int v) { w_[static_cast<size_t>(v) >> 6] &= ~(uint64_t(1) << (v & 63)); }

    bool empty() const {
        for (uint64_t w : w_)
            if (w) return false;
        return true;
    }

    int count() const {
        int c = 0;
        for (uint64_t w : w_) c += __builtin_popcountll(w);
        return c;
    }

    void clear() {
        for (uint64_t& w : w_) w = 0;
    }

    VertexSet& operator|=(const VertexSet& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    VertexSet& operator&=(const VertexSet& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    // set minus
    VertexSet& operator-=(const VertexSet& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }

    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

    bool operator==(const VertexSet& o) const { return w_ == o.w_; }
    bool operator!=(const VertexSet& o) const { return w_ != o.w_; }

    bool is_subset_of(const VertexSet& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    bool intersects(const VertexSet& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    int first() const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return static_cast<int>(i * 64 + static_cast<size_t>(__builtin_ctzll(w_[i])));
        return -1;
    }

    int next(int v) const {
        ++v;
        if (v >= n_) return -1;
        size_t i = static_cast<size_t>(v) >> 6;
        uint64_t w = w_[i] & (~uint64_t(0) << (v & 63));
        while (true) {
            if (w) return static_cast<int>(i * 64 + static_cast<size_t>(__builtin_ctzll(w)));
            if (++i >= w_.size()) return -1;
            w = w_[i];
        }
    }

    // i-th smallest member, 0-indexed; -1 if i >= count()
    int nth(int i) const {
        for (int v = first(); v != -1; v = next(v))
            if (i-- == 0) return v;
        return -1;
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        for (int v = first(); v != -1; v = next(v)) out.push_back(v);
        return out;
    }

    size_t hash() const {
        uint64_t h = 0x9e3779b97f4a7c15ull;
        for (uint64_t w : w_) {
            h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<size_t>(h);
    }

private:
    int n_ = 0;
    std::vector<uint64_t> w_;
};

#define FVTW_FOR_SET(v, s) for (int v = (s).first(); v != -1; v = (s).next(v))

} // namespace fvtw

template <>
struct std::hash<fvtw::VertexSet> {
    size_t operator()(const fvtw::VertexSet& s) const { return s.hash(); }
};
