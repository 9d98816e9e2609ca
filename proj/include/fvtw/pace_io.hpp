#pragma once

#include <stdexcept>
#include <string>

#include "fvtw/decomposition.hpp"
#include "fvtw/graph.hpp"

namespace fvtw {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line) : std::runtime_error("line " + std::to_string(line) + ": " + msg) {}
};

// PACE 2017 .gr format ("p tw <n> <m>", 1-based edge lines, 'c' comments).
Graph parse_gr(const std::string& text);
std::string emit_gr(const Graph& g);

// PACE 2017 .td format ("s td <bags> <width+1> <n>", "b <i> <v...>", edges).
// Output is stable: preorder node ids, ascending vertices per bag.
std::string emit_td(const TreeDecomposition& td, const Graph& g);
TreeDecomposition parse_td(const std::string& text, const Graph& g);

} // namespace fvtw
