#pragma once

#include "fvtw/decomposition.hpp"
#include "fvtw/graph.hpp"

namespace fvtw {

inline constexpr int kDefaultOracleCap = 20;

struct OracleResult {
    int width = -1;
    TreeDecomposition td;
};

// Exact treewidth via the classic subset dynamic program over elimination
// orderings. Ground truth for the tests; refuses graphs above `cap`.
OracleResult oracle_treewidth(const Graph& g, int cap = kDefaultOracleCap);

bool oracle_decide(const Graph& g, int k, int cap = kDefaultOracleCap);

struct OracleCapExceeded : std::runtime_error {
    explicit OracleCapExceeded(int n, int cap)
        : std::runtime_error("oracle refuses n=" + std::to_string(n) + " above cap " + std::to_string(cap)) {}
};

} // namespace fvtw
