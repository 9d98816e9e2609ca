#include "fvtw/bags.hpp"

#include <algorithm>
#include <cstring>

namespace fvtw {

GuessTriple decode_guess(uint64_t d, int n) {
    uint64_t base = static_cast<uint64_t>(n) + 1;
    if (d < 1 || d > base * base * base) throw std::out_of_range("guess index out of range");
    uint64_t z = d - 1;
    GuessTriple t;
    t.d_l2 = static_cast<int>(z % base) - 1;
    z /= base;
    t.d_l1 = static_cast<int>(z % base) - 1;
    z /= base;
    t.d_r = static_cast<int>(z % base) - 1;
    return t;
}

uint64_t encode_guess(const GuessTriple& t, int n) {
    uint64_t base = static_cast<uint64_t>(n) + 1;
    return 1 + (static_cast<uint64_t>(t.d_r + 1) * base + static_cast<uint64_t>(t.d_l1 + 1)) * base +
           static_cast<uint64_t>(t.d_l2 + 1);
}

VertexSet subbag(const VertexSet& x, int i) {
    if (i == 0) return x;
    int v = x.nth(i - 1);
    if (v < 0) throw std::out_of_range("subbag ordinal exceeds bag size");
    VertexSet out = x;
    out.remove(v);
    return out;
}

// ---------------------------------------------------------------------------
// smallbagcandidate: event-driven 3-partition loop.
//
// Component classification bits, kept per union-find root of G[Out \ S]:
//   bit 0/1/2 : the component neighbors L1 / L2 / R vertices (of S, in Out)
//   bit 3/4/5 : the component neighbors the guessed D_L1 / D_L2 / D_R vertex
// A candidate vertex v merges its own adjacency bits with the roots of its
// Out-forest neighbors; that is exactly the component of v in G[(Out+v)\S].
// ---------------------------------------------------------------------------

namespace {
constexpr uint8_t kRest = 0, kIn = 1, kOutF = 2, kOutS = 3;
constexpr uint8_t CL_L1 = 1, CL_L2 = 2, CL_R = 4;
} // namespace

class SmallRunner {
public:
    explicit SmallRunner(const Graph& g, const SSpace& ss, AlgoChecks& checks)
        : g_(g), ss_(ss), checks_(checks), n_(g.n()), status_(static_cast<size_t>(n_)),
          deg_rest_(static_cast<size_t>(n_)), uf_(static_cast<size_t>(n_)), bits_(static_cast<size_t>(n_)),
          vbits_(static_cast<size_t>(n_)), in_adj_(static_cast<size_t>(n_), VertexSet(n_)),
          rest_adj_(static_cast<size_t>(n_), VertexSet(n_)), in_set_(n_), rest_set_(n_), dirty_(n_) {
        for (auto& m : step_) m = VertexSet(n_);
    }

    // limit: abort once |In| exceeds it (pass n for the unbounded variant)
    SmallBagResult run(Smask rs, Smask xs, Smask l1, Smask l2, const GuessTriple& d, int limit) {
        ++checks_.smallbag_runs;
        init(rs, xs, l1, l2, d);
        SmallBagResult res;
        if (in_count_ > limit) {
            res.aborted = true;
            return res;
        }
        while (true) {
            flush_dirty();
            int step = 0, v = -1;
            for (int s = 1; s <= 6 && v < 0; ++s) {
                v = step_[static_cast<size_t>(s)].first();
                if (v >= 0) step = s;
            }
            if (v < 0) {
                if (!rest_set_.empty()) throw InvariantViolation("smallbagcandidate stuck with nonempty Rest");
                break;
            }
            if (checks_.level >= 1) verify_partition();
            leave_rest(v);
            if (step <= 2) {
                to_in(v);
                if (in_count_ > limit) {
                    res.aborted = true;
                    return res;
                }
            } else {
                to_out(v);
            }
        }
        res.x = in_set_;
        return res;
    }

private:
    void init(Smask rs, Smask xs, Smask l1, Smask l2, const GuessTriple& d) {
        in_set_.clear();
        rest_set_.clear();
        dirty_.clear();
        for (auto& m : step_) m.clear();
        for (int r : created_) {
            in_adj_[static_cast<size_t>(r)].clear();
            rest_adj_[static_cast<size_t>(r)].clear();
        }
        created_.clear();
        std::fill(vbits_.begin(), vbits_.end(), uint8_t(0));

        for (int v = 0; v < n_; ++v) status_[static_cast<size_t>(v)] = kRest;
        for (int i = 0; i < ss_.size(); ++i) {
            int v = ss_.verts[static_cast<size_t>(i)];
            status_[static_cast<size_t>(v)] = ((xs >> i) & 1) ? kIn : kOutS;
        }
        for (int slot : {d.d_r, d.d_l1, d.d_l2})
            if (slot >= 0) status_[static_cast<size_t>(slot)] = kIn;

        in_count_ = 0;
        for (int v = 0; v < n_; ++v) {
            if (status_[static_cast<size_t>(v)] == kIn) {
                in_set_.add(v);
                ++in_count_;
            } else if (status_[static_cast<size_t>(v)] == kRest) {
                rest_set_.add(v);
            }
        }
        // static class adjacency: only classification vertices still in Out count
        auto mark = [&](Smask m, uint8_t bit) {
            for (int i = 0; i < ss_.size(); ++i) {
                if (!((m >> i) & 1)) continue;
                int w = ss_.verts[static_cast<size_t>(i)];
                if (status_[static_cast<size_t>(w)] != kOutS) continue;
                for (int u : g_.nbrs(w)) vbits_[static_cast<size_t>(u)] |= bit;
            }
        };
        mark(l1, CL_L1);
        mark(l2, CL_L2);
        mark(rs, CL_R);
        auto markd = [&](int slot, uint8_t bit) {
            if (slot < 0) return;
            for (int u : g_.nbrs(slot)) vbits_[static_cast<size_t>(u)] |= static_cast<uint8_t>(bit << 3);
        };
        markd(d.d_l1, CL_L1);
        markd(d.d_l2, CL_L2);
        markd(d.d_r, CL_R);

        for (int v = 0; v < n_; ++v)
            if (status_[static_cast<size_t>(v)] == kRest)
                deg_rest_[static_cast<size_t>(v)] = (g_.adj(v) & rest_set_).count();
        dirty_ = rest_set_;
    }

    int find(int x) {
        while (uf_[static_cast<size_t>(x)] != x) {
            uf_[static_cast<size_t>(x)] = uf_[static_cast<size_t>(uf_[static_cast<size_t>(x)])];
            x = uf_[static_cast<size_t>(x)];
        }
        return x;
    }

    void leave_rest(int v) {
        rest_set_.remove(v);
        for (auto& m : step_) m.remove(v);
        for (int u : g_.nbrs(v))
            if (status_[static_cast<size_t>(u)] == kRest) {
                --deg_rest_[static_cast<size_t>(u)];
                dirty_.add(u);
            }
    }

    void to_in(int v) {
        status_[static_cast<size_t>(v)] = kIn;
        in_set_.add(v);
        ++in_count_;
        for (int u : g_.nbrs(v))
            if (status_[static_cast<size_t>(u)] == kOutF) in_adj_[static_cast<size_t>(find(u))].add(v);
        dirty_ |= rest_set_; // |In| changed; every step-5 flag is stale
    }

    void to_out(int v) {
        status_[static_cast<size_t>(v)] = kOutF;
        uf_[static_cast<size_t>(v)] = v;
        bits_[static_cast<size_t>(v)] = vbits_[static_cast<size_t>(v)];
        in_adj_[static_cast<size_t>(v)] = g_.adj(v) & in_set_;
        rest_adj_[static_cast<size_t>(v)] = g_.adj(v) & rest_set_;
        created_.push_back(v);
        int root = v;
        for (int u : g_.nbrs(v)) {
            if (status_[static_cast<size_t>(u)] != kOutF) continue;
            int r = find(u);
            if (r == root) continue;
            // merge r into root
            uf_[static_cast<size_t>(r)] = root;
            bits_[static_cast<size_t>(root)] |= bits_[static_cast<size_t>(r)];
            in_adj_[static_cast<size_t>(root)] |= in_adj_[static_cast<size_t>(r)];
            rest_adj_[static_cast<size_t>(root)] |= rest_adj_[static_cast<size_t>(r)];
        }
        rest_adj_[static_cast<size_t>(root)].remove(v);
        ++checks_.one_neighbor_checks;
        if (rest_adj_[static_cast<size_t>(root)].count() > 1)
            throw InvariantViolation("component of G[Out\\S] with two Rest neighbors");
        dirty_ |= rest_adj_[static_cast<size_t>(root)];
    }

    void flush_dirty() {
        FVTW_FOR_SET(v, dirty_) {
            if (!rest_set_.contains(v)) continue;
            for (auto& m : step_) m.remove(v);
            int s = step_of(v);
            if (s) step_[static_cast<size_t>(s)].add(v);
        }
        dirty_.clear();
    }

    int step_of(int v) {
        uint8_t bits = vbits_[static_cast<size_t>(v)];
        roots_.clear();
        for (int u : g_.nbrs(v)) {
            if (status_[static_cast<size_t>(u)] != kOutF) continue;
            int r = find(u);
            bool fresh = true;
            for (int r2 : roots_)
                if (r2 == r) {
                    fresh = false;
                    break;
                }
            if (fresh) {
                roots_.push_back(r);
                bits |= bits_[static_cast<size_t>(r)];
            }
        }
        uint8_t cls = bits & 7, dadj = static_cast<uint8_t>(bits >> 3);
        int popcls = __builtin_popcount(cls);
        int deg = deg_rest_[static_cast<size_t>(v)];
        if (popcls >= 2) return 1;
        if (popcls == 1 && (cls & dadj)) return 2;
        if (popcls == 1 && deg <= 1) return (cls == CL_R) ? 3 : 4;
        if (deg == 1 && !component_covers_in(v)) return 5;
        if (deg <= 1) return 6;
        return 0;
    }

    // In subset of N(V(C_v))? (the step-5 condition is the negation)
    bool component_covers_in(int v) {
        // merged In-adjacency of C_v = (N(v) & In) | union of root in_adj sets
        VertexSet merged = g_.adj(v) & in_set_;
        for (int r : roots_) merged |= in_adj_[static_cast<size_t>(r)];
        return in_set_.is_subset_of(merged);
    }

    void verify_partition() {
        ++checks_.partition_checks;
        int rest = 0, in = 0, out = 0;
        for (int v = 0; v < n_; ++v) {
            uint8_t s = status_[static_cast<size_t>(v)];
            rest += s == kRest;
            in += s == kIn;
            out += s == kOutF || s == kOutS;
        }
        if (rest + in + out != n_ || rest != rest_set_.count() || in != in_count_)
            throw InvariantViolation("(Rest, In, Out) is not a partition");
    }

    const Graph& g_;
    const SSpace& ss_;
    AlgoChecks& checks_;
    int n_;
    std::vector<uint8_t> status_;
    std::vector<int> deg_rest_;
    std::vector<int> uf_;
    std::vector<uint8_t> bits_;  // per union-find root
    std::vector<uint8_t> vbits_; // per vertex, static for the run
    std::vector<VertexSet> in_adj_, rest_adj_;
    std::vector<int> created_;
    VertexSet in_set_, rest_set_, dirty_;
    VertexSet step_[7];
    std::vector<int> roots_;
    int in_count_ = 0;
};

BagContext::BagContext(const Graph& graph, const VertexSet& s, int width) : g(graph), sset(s), ss(graph, s), k(width) {
    runner_ = std::make_unique<SmallRunner>(g, ss, checks);
}

BagContext::~BagContext() = default;

// ---------------------------------------------------------------------------
// bigbag
// ---------------------------------------------------------------------------

namespace {

VertexSet bigbag_run(BagContext& ctx, Smask xs, uint64_t s_bits) {
    const Graph& g = ctx.g;
    int n = g.n();
    ++ctx.checks.bigbag_runs;

    std::vector<uint8_t> status(static_cast<size_t>(n), kRest); // rest/in/out
    std::vector<int> uf(static_cast<size_t>(n), -1);
    std::vector<uint8_t> has_s(static_cast<size_t>(n), 0);
    VertexSet in_set(n), rest_set(n), out_set(n);

    std::function<int(int)> find = [&](int x) {
        while (uf[static_cast<size_t>(x)] != x) {
            uf[static_cast<size_t>(x)] = uf[static_cast<size_t>(uf[static_cast<size_t>(x)])];
            x = uf[static_cast<size_t>(x)];
        }
        return x;
    };
    auto add_out = [&](int v, bool is_s) {
        status[static_cast<size_t>(v)] = kOutF;
        out_set.add(v);
        uf[static_cast<size_t>(v)] = v;
        has_s[static_cast<size_t>(v)] = is_s;
        for (int u : g.nbrs(v)) {
            if (status[static_cast<size_t>(u)] != kOutF || u == v) continue;
            int r = find(u), rv = find(v);
            if (r != rv) {
                uf[static_cast<size_t>(r)] = rv;
                has_s[static_cast<size_t>(rv)] |= has_s[static_cast<size_t>(r)];
            }
        }
    };

    for (int i = 0; i < ctx.ss.size(); ++i) {
        int v = ctx.ss.verts[static_cast<size_t>(i)];
        if ((xs >> i) & 1) {
            status[static_cast<size_t>(v)] = kIn;
            in_set.add(v);
        }
    }
    for (int i = 0; i < ctx.ss.size(); ++i) {
        int v = ctx.ss.verts[static_cast<size_t>(i)];
        if (!((xs >> i) & 1)) add_out(v, true);
    }
    for (int v = 0; v < n; ++v)
        if (status[static_cast<size_t>(v)] == kRest) rest_set.add(v);

    std::vector<int> deg_rest(static_cast<size_t>(n), 0);
    FVTW_FOR_SET(v, rest_set) deg_rest[static_cast<size_t>(v)] = (g.adj(v) & rest_set).count();

    int bits_used = 0;
    int in_count = in_set.count();
    const int bit_cap = 2 * ctx.ss.size() + 1;

    while (!rest_set.empty() && in_count < ctx.k + 1) {
        if (ctx.checks.level >= 1) {
            // full one-neighbor recheck on G[Out \ S]
            VertexSet outf = out_set - ctx.sset;
            for (const auto& comp : connected_components(g, outf)) {
                ++ctx.checks.one_neighbor_checks;
                if ((neighbors_of_set(g, comp) & rest_set).count() > 1)
                    throw InvariantViolation("bigbag: component of G[Out\\S] with two Rest neighbors");
            }
            ++ctx.checks.partition_checks;
            if (rest_set.count() + in_count + out_set.count() != n)
                throw InvariantViolation("bigbag: (Rest, In, Out) is not a partition");
        }
        // Step 1: degree <= 1 in G[Rest], neighbors in >= 2 S-components of G[Out]
        int pick = -1;
        bool step1 = false;
        FVTW_FOR_SET(v, rest_set) {
            if (deg_rest[static_cast<size_t>(v)] > 1) continue;
            int first_root = -1, count = 0;
            for (int u : g.nbrs(v)) {
                if (status[static_cast<size_t>(u)] != kOutF) continue;
                int r = find(u);
                if (!has_s[static_cast<size_t>(r)]) continue;
                if (first_root == -1) {
                    first_root = r;
                    count = 1;
                } else if (r != first_root) {
                    count = 2;
                    break;
                }
            }
            if (count >= 2) {
                pick = v;
                step1 = true;
                break;
            }
            if (pick == -1) pick = v; // fallback for step 2
        }
        if (pick == -1) throw InvariantViolation("bigbag stuck with nonempty Rest");
        rest_set.remove(pick);
        for (int u : g.nbrs(pick))
            if (status[static_cast<size_t>(u)] == kRest) --deg_rest[static_cast<size_t>(u)];
        bool to_in = false;
        if (step1) {
            if (bits_used >= bit_cap) throw InvariantViolation("bigbag consumed more than 2|S|+1 bits");
            to_in = (s_bits >> bits_used) & 1;
            ++bits_used;
        }
        if (to_in) {
            status[static_cast<size_t>(pick)] = kIn;
            in_set.add(pick);
            ++in_count;
        } else {
            add_out(pick, false);
        }
    }
    ctx.checks.max_bits_consumed = std::max(ctx.checks.max_bits_consumed, bits_used);
    return in_set;
}

} // namespace

VertexSet bigbag(BagContext& ctx, Smask xs, uint64_t s_bits) {
    uint64_t key = (static_cast<uint64_t>(xs) << 42) ^ s_bits;
    auto it = ctx.bigbag_cache_.find(key);
    if (it != ctx.bigbag_cache_.end()) return it->second;
    VertexSet res = bigbag_run(ctx, xs, s_bits);
    ctx.bigbag_cache_.emplace(key, res);
    return res;
}

// ---------------------------------------------------------------------------
// smallbag wrapper (Algorithm 2)
// ---------------------------------------------------------------------------

namespace {

void run_wrapper(BagContext& ctx, Smask l1, Smask l2, SmallBagResult& r) {
    const Graph& g = ctx.g;
    int n = g.n();
    VertexSet l1set = ctx.to_set(l1), l2set = ctx.to_set(l2);
    const VertexSet all = VertexSet::full(n);

    int guard = 4 * n + 16;
    while (guard-- > 0) {
        // Step 1: purge an S-free component of G - X_R that meets the sets
        bool applied = false;
        VertexSet extra = r.x - r.x_r;
        FVTW_FOR_SET(w, extra) {
            VertexSet comp = component_of(g, all - r.x_r, w);
            if (comp.intersects(ctx.sset)) continue;
            r.x -= comp;
            r.x_r -= comp;
            r.x_l1 -= comp;
            r.x_l2 -= comp;
            applied = true;
            break;
        }
        if (applied) continue;

        // connectivity target: L1 + L2 + ((X \ X_R) cap S), taken in G - X_R
        VertexSet target = (l1set | l2set | ((r.x - r.x_r) & ctx.sset)) - r.x_r;
        VertexSet anchored(n);
        FVTW_FOR_SET(w, target) {
            if (anchored.contains(w)) continue;
            anchored |= component_of(g, all - r.x_r, w);
        }

        // Step 2: drop v in X_R \ S whose whole neighborhood is in X_R or unanchored
        FVTW_FOR_SET(v, r.x_r - ctx.sset) {
            bool ok = true;
            for (int u : g.nbrs(v))
                if (!r.x_r.contains(u) && anchored.contains(u)) {
                    ok = false;
                    break;
                }
            if (ok) {
                r.x.remove(v);
                r.x_r.remove(v);
                r.x_l1.remove(v);
                r.x_l2.remove(v);
                applied = true;
                break;
            }
        }
        if (applied) continue;

        // Step 3: swap v for its unique anchored outside neighbor u
        FVTW_FOR_SET(v, r.x_r - ctx.sset) {
            int u = -1;
            bool ok = true;
            for (int w : g.nbrs(v)) {
                if (r.x_r.contains(w) || !anchored.contains(w)) continue;
                if (u != -1) {
                    ok = false;
                    break;
                }
                u = w;
            }
            if (!ok || u == -1 || ctx.sset.contains(u)) continue;
            for (VertexSet* s : {&r.x, &r.x_r, &r.x_l1, &r.x_l2}) {
                s->remove(v);
                s->add(u);
            }
            applied = true;
            break;
        }
        if (!applied) break;
    }
    if (guard <= 0) throw InvariantViolation("smallbag wrapper did not reach a fixpoint");
    ++ctx.checks.wrapper_fixpoint_checks;
}

} // namespace

VertexSet smallbag_candidate(BagContext& ctx, Smask rs, Smask xs, Smask l1, Smask l2, const GuessTriple& d) {
    return ctx.runner_->run(rs, xs, l1, l2, d, ctx.g.n()).x;
}

SmallBagResult smallbag(BagContext& ctx, Smask rs, Smask xs, Smask l1, Smask l2, const GuessTriple& d, bool bounded) {
    BagContext::SmallKey key{
        (static_cast<uint64_t>(rs) << 42) | (static_cast<uint64_t>(xs) << 21) | static_cast<uint64_t>(l1),
        (static_cast<uint64_t>(l2) << 42) | (static_cast<uint64_t>(static_cast<uint32_t>(d.d_r + 1)) << 28) |
            (static_cast<uint64_t>(static_cast<uint32_t>(d.d_l1 + 1)) << 14) |
            (static_cast<uint64_t>(static_cast<uint32_t>(d.d_l2 + 1)) << 1) | static_cast<uint64_t>(bounded)};
    auto it = ctx.small_cache_.find(key);
    if (it != ctx.small_cache_.end()) return it->second;

    SmallBagResult res = ctx.runner_->run(rs, xs, l1, l2, d, bounded ? ctx.k + 1 : ctx.g.n());
    if (!res.aborted) {
        res.x_r = res.x;
        res.x_l1 = res.x;
        res.x_l2 = res.x;
        if (d.d_r >= 0) res.x_r.remove(d.d_r);
        if (d.d_l1 >= 0) res.x_l1.remove(d.d_l1);
        if (d.d_l2 >= 0) res.x_l2.remove(d.d_l2);
        run_wrapper(ctx, l1, l2, res);
    }
    ctx.small_cache_.emplace(key, res);
    return res;
}

void smallbag_sweep(BagContext& ctx, Smask rs, Smask xs, Smask l1, Smask l2, const std::vector<int>& dom_r,
                    const std::vector<int>& dom_l1, const std::vector<int>& dom_l2, bool bounded,
                    const std::function<void(const GuessTriple&, const SmallBagResult&)>& sink) {
    for (int a : dom_r)
        for (int b : dom_l1)
            for (int c : dom_l2) {
                GuessTriple d{a, b, c};
                SmallBagResult res = ctx.runner_->run(rs, xs, l1, l2, d, bounded ? ctx.k + 1 : ctx.g.n());
                if (res.aborted) continue;
                res.x_r = res.x;
                res.x_l1 = res.x;
                res.x_l2 = res.x;
                if (a >= 0) res.x_r.remove(a);
                if (b >= 0) res.x_l1.remove(b);
                if (c >= 0) res.x_l2.remove(c);
                run_wrapper(ctx, l1, l2, res);
                sink(d, res);
            }
}

// ---------------------------------------------------------------------------
// bag bundles
// ---------------------------------------------------------------------------

VertexSet compute_xpath(const Graph& g, const VertexSet& sset, const VertexSet& x_max, const VertexSet& x_p,
                        const VertexSet& x_min, const VertexSet& x_c) {
    VertexSet blocked = x_max | x_p | x_min;
    VertexSet rest = VertexSet::full(g.n()) - blocked;
    VertexSet cminus = x_c - x_min;
    VertexSet out(g.n());
    for (const auto& comp : connected_components(g, rest)) {
        if (comp.intersects(sset)) continue; // not an F-component
        VertexSet nb = neighbors_of_set(g, comp);
        if ((nb | comp).intersects(cminus)) continue;
        if ((nb - x_p).empty()) continue;
        out |= comp;
    }
    return out;
}

namespace {

// Trace of the node admitting `op`, reconstructed from the trace directly
// below it. For joins, `side` reports which child the given trace matches.
bool target_trace(const SSpace& ss, const ExtOp& op, const STrace& tr, STrace& out, int& side) {
    side = 0;
    switch (op.kind) {
        case OpKind::SmallIntroduce: {
            int i = ss.index[static_cast<size_t>(op.v)];
            if (i < 0 || !((tr.R >> i) & 1)) return false;
            Smask bit = Smask(1) << i;
            out = STrace{tr.L, tr.X | bit, tr.R & ~bit};
            return true;
        }
        case OpKind::SmallJoin:
        case OpKind::BigJoin: {
            if (tr.L == op.l1)
                side = 1;
            else if (tr.L == op.l2)
                side = 2;
            else
                return false;
            if (!op.l1 || !op.l2 || (op.l1 & op.l2) || (op.xts & (op.l1 | op.l2))) return false;
            Smask l = op.l1 | op.l2;
            out = STrace{l, op.xts, ss.full & ~(l | op.xts)};
            return true;
        }
        case OpKind::ForgetPlain:
        case OpKind::ForgetChain: {
            int i = ss.index[static_cast<size_t>(op.v)];
            if (i < 0 || !((tr.X >> i) & 1)) return false;
            out = tr;
            return true;
        }
        case OpKind::Void: return false;
    }
    return false;
}

// Bag of the chain bottom for a true-flagged extendedforget: the inner
// operation's own machinery decoded at the chain's trace.
std::optional<VertexSet> decode_chain_inner(BagContext& ctx, const ExtOp& inner, const STrace& tr) {
    switch (inner.kind) {
        case OpKind::SmallIntroduce: {
            int i = ctx.ss.index[static_cast<size_t>(inner.v)];
            if (i < 0 || !((tr.X >> i) & 1)) return std::nullopt;
            auto res = smallbag(ctx, tr.R, tr.X, tr.L, 0, GuessTriple{-1, inner.v, -1}, true);
            if (res.aborted) return std::nullopt;
            return res.x;
        }
        case OpKind::SmallJoin: {
            if (inner.xts != tr.X || (inner.l1 | inner.l2) != tr.L || (inner.l1 & inner.l2) || !inner.l1 || !inner.l2)
                return std::nullopt;
            auto res =
                smallbag(ctx, tr.R, tr.X, inner.l1, inner.l2, GuessTriple{-1, inner.slot_l1, inner.slot_l2}, true);
            if (res.aborted) return std::nullopt;
            return res.x;
        }
        case OpKind::BigJoin: {
            if (inner.xts != tr.X || (inner.l1 | inner.l2) != tr.L || (inner.l1 & inner.l2) || !inner.l1 || !inner.l2)
                return std::nullopt;
            return bigbag(ctx, tr.X, inner.s_bits);
        }
        default: return std::nullopt;
    }
}

} // namespace

TopBags decode_top(BagContext& ctx, const ExtOp& op, const STrace& tr) {
    TopBags out;
    if (op.kind == OpKind::Void) {
        out.x_p = VertexSet(ctx.g.n());
        out.x_max = ctx.to_set(tr.X);
        out.ok = true;
        return out;
    }
    STrace tt;
    int side = 0;
    if (!target_trace(ctx.ss, op, tr, tt, side)) return out;
    switch (op.kind) {
        case OpKind::SmallIntroduce: {
            auto res = smallbag(ctx, tt.R, tt.X, tt.L, 0, GuessTriple{op.slot_r, op.v, -1}, true);
            if (res.aborted) return out;
            out.x_p = res.x;
            out.x_max = res.x_l1;
            break;
        }
        case OpKind::SmallJoin: {
            auto res = smallbag(ctx, tt.R, tt.X, op.l1, op.l2, GuessTriple{op.slot_r, op.slot_l1, op.slot_l2}, true);
            if (res.aborted) return out;
            out.x_p = res.x;
            out.x_max = side == 1 ? res.x_l1 : res.x_l2;
            break;
        }
        case OpKind::BigJoin: {
            VertexSet x = bigbag(ctx, tt.X, op.s_bits);
            int ord = side == 1 ? op.sub1 : op.sub2;
            if (ord > x.count()) return out;
            out.x_p = x;
            out.x_max = subbag(x, ord);
            break;
        }
        case OpKind::ForgetPlain: {
            auto res = smallbag(ctx, tt.R, tt.X, tt.L, 0, GuessTriple{op.v, op.slot_l1, -1}, true);
            if (res.aborted) return out;
            out.x_max = res.x;
            out.x_p = res.x_r;
            break;
        }
        case OpKind::ForgetChain: {
            auto bag = decode_chain_inner(ctx, *op.inner, tt);
            if (!bag) return out;
            out.x_max = *bag;
            out.x_p = *bag;
            out.x_p.remove(op.v);
            break;
        }
        case OpKind::Void: return out;
    }
    // the decoded top bag must realize the trace's S-part
    if (ctx.ss.from_set(out.x_max) != tr.X) return out;
    out.ok = true;
    return out;
}

BottomInfo decode_bottom(BagContext& ctx, const ExtOp& op, const STrace& tr) {
    BottomInfo out;
    if (op.kind == OpKind::Void) {
        if (tr.L) return out; // a void bottom belongs to an empty L only
        out.x_min = ctx.to_set(tr.X);
        out.x_c = VertexSet(ctx.g.n());
        out.ok = true;
        return out;
    }
    if (!tr.L) return out;
    switch (op.kind) {
        case OpKind::SmallIntroduce: {
            int i = ctx.ss.index[static_cast<size_t>(op.v)];
            if (i < 0 || !((tr.X >> i) & 1)) return out;
            Smask bit = Smask(1) << i;
            STrace ct{tr.L, tr.X & ~bit, tr.R | bit};
            TopBags tb = decode_top(ctx, op, ct);
            if (!tb.ok) return out;
            out.children = {ct};
            out.x_min = tb.x_p;
            out.x_c = tb.x_max;
            break;
        }
        case OpKind::ForgetPlain:
        case OpKind::ForgetChain: {
            int i = ctx.ss.index[static_cast<size_t>(op.v)];
            if (i < 0 || !((tr.L >> i) & 1)) return out;
            Smask bit = Smask(1) << i;
            STrace ct{tr.L & ~bit, tr.X | bit, tr.R};
            TopBags tb = decode_top(ctx, op, ct);
            if (!tb.ok) return out;
            out.children = {ct};
            out.x_min = tb.x_p;
            out.x_c = tb.x_max;
            break;
        }
        case OpKind::SmallJoin:
        case OpKind::BigJoin: {
            if (op.xts != tr.X || (op.l1 | op.l2) != tr.L || (op.l1 & op.l2) || !op.l1 || !op.l2) return out;
            VertexSet x, xl1, xl2;
            if (op.kind == OpKind::SmallJoin) {
                auto res =
                    smallbag(ctx, tr.R, tr.X, op.l1, op.l2, GuessTriple{op.slot_r, op.slot_l1, op.slot_l2}, true);
                if (res.aborted) return out;
                x = res.x;
                xl1 = res.x_l1;
                xl2 = res.x_l2;
            } else {
                x = bigbag(ctx, tr.X, op.s_bits);
                if (op.sub1 > x.count() || op.sub2 > x.count()) return out;
                xl1 = subbag(x, op.sub1);
                xl2 = subbag(x, op.sub2);
            }
            Smask x1s = ctx.ss.from_set(xl1), x2s = ctx.ss.from_set(xl2);
            if ((x1s & ~tr.X) || (x2s & ~tr.X)) return out;
            out.children = {STrace{op.l1, x1s, ctx.ss.full & ~(op.l1 | x1s)},
                            STrace{op.l2, x2s, ctx.ss.full & ~(op.l2 | x2s)}};
            out.x_min = x;
            out.x_c = xl1 | xl2;
            break;
        }
        case OpKind::Void: return out;
    }
    out.ok = true;
    return out;
}

std::vector<STrace> child_traces(BagContext& ctx, const State& st) {
    if (st.bottom->is_void()) throw std::invalid_argument("void bottom operation has no child traces");
    BottomInfo info = decode_bottom(ctx, *st.bottom, st.trace);
    if (!info.ok) throw std::invalid_argument("bottom operation inconsistent with the trace");
    return info.children;
}

std::optional<BagBundle> derive_bags(BagContext& ctx, const State& st) {
    if (st.top->is_void() && st.trace.R) return std::nullopt;
    if (st.bottom->is_void() != (st.trace.L == 0)) return std::nullopt;
    TopBags top = decode_top(ctx, *st.top, st.trace);
    if (!top.ok) return std::nullopt;
    BottomInfo bot = decode_bottom(ctx, *st.bottom, st.trace);
    if (!bot.ok) return std::nullopt;
    BagBundle b;
    b.x_max = top.x_max;
    b.x_p = top.x_p;
    b.x_min = bot.x_min;
    b.x_c = bot.x_c;
    b.x_path = compute_xpath(ctx.g, ctx.sset, b.x_max, b.x_p, b.x_min, b.x_c);
    if (st.top->is_forget()) {
        VertexSet expect = b.x_p;
        expect.add(st.top->v);
        if (!(b.x_max == expect)) throw InvariantViolation("forget top must satisfy x_max == x_p + {v}");
    } else if (!b.x_max.is_subset_of(b.x_p) && !b.x_p.is_subset_of(b.x_max)) {
        throw InvariantViolation("x_max and x_p are not nested");
    }
    b.feasible = b.x_max.count() <= ctx.k + 1 && b.x_p.count() <= ctx.k + 1 && b.x_min.count() <= ctx.k + 1;
    return b;
}

} // namespace fvtw
