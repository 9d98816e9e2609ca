#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "fvtw/graph.hpp"
#include "fvtw/states.hpp"

namespace fvtw {

// Guessed vertices attached to a small operation; -1 is the blank symbol.
struct GuessTriple {
    int d_r = -1, d_l1 = -1, d_l2 = -1;
};

// d-th triple of (V + blank)^3, 1-based, mixed radix with the last component
// fastest; blank is digit 0 and vertex i is digit i+1.
GuessTriple decode_guess(uint64_t d, int n);
uint64_t encode_guess(const GuessTriple& t, int n);

// i = 0 keeps X, otherwise the i-th smallest vertex (1-indexed) is removed.
VertexSet subbag(const VertexSet& x, int i);

struct InvariantViolation : std::logic_error {
    explicit InvariantViolation(const std::string& msg) : std::logic_error("invariant violated: " + msg) {}
};

// Telemetry for the algorithm-internal invariants. level >= 1 additionally
// runs the full recomputation checks (partition shape, one-neighbor lemma on
// every component); violations always throw.
struct AlgoChecks {
    int level = 0;
    long long partition_checks = 0;
    long long one_neighbor_checks = 0;
    int max_bits_consumed = 0;
    long long wrapper_fixpoint_checks = 0;
    long long smallbag_runs = 0;
    long long bigbag_runs = 0;
    long long ltw_runs = 0;
};

struct SmallBagResult {
    VertexSet x, x_r, x_l1, x_l2;
    bool aborted = false; // the In set outgrew the caller's bound
};

class SmallRunner;

// Shared context for one (graph, S, k) solve: the fixed vertex order, the
// S-index space, and the bag caches.
class BagContext {
public:
    BagContext(const Graph& g, const VertexSet& s, int k);
    ~BagContext();

    const Graph& g;
    VertexSet sset;
    SSpace ss;
    int k;
    AlgoChecks checks;

    VertexSet to_set(Smask m) const { return ss.to_set(m, g.n()); }

    friend VertexSet bigbag(BagContext&, Smask, uint64_t);
    friend SmallBagResult smallbag(BagContext&, Smask, Smask, Smask, Smask, const GuessTriple&, bool);
    friend VertexSet smallbag_candidate(BagContext&, Smask, Smask, Smask, Smask, const GuessTriple&);
    friend class SmallRunner;

private:
    std::unique_ptr<SmallRunner> runner_;
    std::unordered_map<uint64_t, VertexSet> bigbag_cache_;
    struct SmallKey {
        uint64_t a, b;
        bool operator==(const SmallKey& o) const { return a == o.a && b == o.b; }
    };
    struct SmallKeyHash {
        size_t operator()(const SmallKey& k) const { return k.a * 0x9e3779b97f4a7c15ull ^ k.b; }
    };
    std::unordered_map<SmallKey, SmallBagResult, SmallKeyHash> small_cache_;
};

// Algorithm computing the candidate full bag for a big target node. Consumes
// at most 2|S|+1 bits of s_bits; stops once |In| reaches k+1.
VertexSet bigbag(BagContext& ctx, Smask xs, uint64_t s_bits);

// Candidate-bag algorithm for small target nodes (the greedy 3-partition
// loop, without the wrapper).
VertexSet smallbag_candidate(BagContext& ctx, Smask rs, Smask xs, Smask l1, Smask l2, const GuessTriple& d);

// Candidate plus the three wrapper steps run to fixpoint. With bounded=true
// the run aborts as soon as In exceeds k+1 (such candidates are
// unwitnessable at width k and short-circuit to false downstream).
SmallBagResult smallbag(BagContext& ctx, Smask rs, Smask xs, Smask l1, Smask l2, const GuessTriple& d,
                        bool bounded = false);

// Batch driver: runs smallbag over every slot combination dom_r x dom_l1 x
// dom_l2 (each domain lists -1 and/or vertices, ascending) and hands every
// non-aborted outcome to the sink.
void smallbag_sweep(BagContext& ctx, Smask rs, Smask xs, Smask l1, Smask l2, const std::vector<int>& dom_r,
                    const std::vector<int>& dom_l1, const std::vector<int>& dom_l2, bool bounded,
                    const std::function<void(const GuessTriple&, const SmallBagResult&)>& sink);

struct BagBundle {
    VertexSet x_max, x_p, x_min, x_c, x_path;
    bool feasible = false;
};

VertexSet compute_xpath(const Graph& g, const VertexSet& sset, const VertexSet& x_max, const VertexSet& x_p,
                        const VertexSet& x_min, const VertexSet& x_c);

struct TopBags {
    VertexSet x_p, x_max;
    bool ok = false;
};

// Bags forced by the operation above the top node of a directed path with
// the given trace (x_max for the top node itself, x_p for its parent).
TopBags decode_top(BagContext& ctx, const ExtOp& op, const STrace& trace);

struct BottomInfo {
    std::vector<STrace> children;
    VertexSet x_min, x_c;
    bool ok = false;
};

// Child traces plus the bags forced one level down by the bottom operation.
BottomInfo decode_bottom(BagContext& ctx, const ExtOp& op, const STrace& trace);

std::vector<STrace> child_traces(BagContext& ctx, const State& st);

// Full bundle for a state; nullopt when the operations are inconsistent with
// the trace, feasible=false when some bag exceeds k+1.
std::optional<BagBundle> derive_bags(BagContext& ctx, const State& st);

} // namespace fvtw
