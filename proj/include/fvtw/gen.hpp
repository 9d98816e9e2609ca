#pragma once

#include "fvtw/graph.hpp"
#include "fvtw/rng.hpp"

namespace fvtw {

// G(n, p) with independent edges.
Graph gen_gnp(int n, double p, uint64_t seed);

// Random forest on n - f vertices plus f extra vertices with random
// incident edges; the extras form a feedback vertex set, so fvn <= f.
Graph gen_fvn_planted(int n, int f, uint64_t seed);

// Rejection-sampled connected G(n, p); falls back to adding a random
// spanning structure if too many rejections.
Graph gen_connected(int n, double p, uint64_t seed);

} // namespace fvtw
