#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "latcount/polyhedron.hpp"
#include "latcount/solver.hpp"

namespace latcount {

// The five multiset problems share two ILP shapes: variables indexed by
// vertices with a load bound per edge, or variables indexed by edges with a
// load bound per vertex.  GENERAL allows bounds on both sides of the load.
enum class HyperMode {
    STABLE_MULTISET,    // vertex variables, per-edge upper bounds, maximize
    VERTEX_MULTICOVER,  // vertex variables, per-edge lower bounds, minimize
    MULTIMATCHING,      // edge variables, per-vertex upper bounds, maximize
    SET_MULTICOVER,     // edge variables, per-vertex lower bounds, minimize
    GENERAL,
};

struct HypergraphInstance {
    std::size_t vertexCount = 0;
    std::vector<std::vector<std::size_t>> edges;  // 0-based, strictly increasing

    // Bound vectors are either empty or fully sized; absent entries mean
    // unconstrained.  Whether a bound applies to a constraint row or to a
    // variable depends on which side carries the variables.
    std::vector<std::optional<Int>> edgeLo, edgeHi;
    std::vector<std::optional<Int>> vertexLo, vertexHi;
    std::vector<Int> weights;  // empty = all ones
    std::vector<Int> mult;     // per-variable caps, empty = uncapped

    std::size_t d1 = 0;  // largest vertex degree, counting duplicate edges once
    std::size_t d2 = 0;  // largest edge cardinality

    HypergraphInstance(std::size_t nv, std::vector<std::vector<std::size_t>> es);
};

// 0/1 matrix, vertex rows by edge columns.
Matrix incidence_matrix(const HypergraphInstance& h);

struct EncodedProblem {
    CanonicalSystem system;
    std::vector<Int> objective;
    bool maximize;
};

struct EncodedStandardProblem {
    StandardSystem system;  // load rows with one slack variable each
    std::vector<Int> objective;
    bool maximize;
    std::size_t primaryVars;  // edge variables; the rest are slacks
};

EncodedProblem encode_vertex_based(const HypergraphInstance& h, HyperMode mode);
EncodedProblem encode_edge_based(const HypergraphInstance& h, HyperMode mode);

// Equality form over edge + slack variables.  Needs one-sided vertex bounds
// (a vertex with both a lower and an upper load bound does not fit the
// single-slack row) and either caps on every edge variable or on none.
EncodedStandardProblem encode_edge_based_standard(const HypergraphInstance& h, HyperMode mode);

// Merges edges with identical vertex sets.  Only defined for unweighted,
// uncapped instances without edge bounds; vertex bounds pass through.
HypergraphInstance glue_duplicate_edges(const HypergraphInstance& h);

// Optimizes an encoded problem in its native direction: the report's optimum
// and witness are in the original sense even for minimization.  withCount
// adds the number of optimal solutions.
SolveReport solve_encoded(const EncodedProblem& ep, bool withCount);

// Same through the equality form; the witness is trimmed back to the edge
// variables (slacks are determined by them anyway).
SolveReport solve_encoded_standard(const EncodedStandardProblem& ep, bool withCount);

// The set-multicover instance dominating_multiset solves: one pick-edge per
// vertex with a nonempty neighborhood, demands from vertexLo (default 1).
HypergraphInstance dominating_cover_instance(const HypergraphInstance& graph,
                                             bool openNeighborhoods = false);

// Encode by mode and solve, with a structural shortcut: a maximization whose
// feasible region obviously contains an unbounded coordinate ray is reported
// UNBOUNDED without touching the counting stack.
SolveReport solve_hyper(const HypergraphInstance& h, HyperMode mode, bool withCount);

// Minimum-weight dominating multiset of a simple graph (edges of size two):
// pick vertices with multiplicity so every vertex v has at least its demand
// (vertexLo, default 1) inside the picked neighborhoods.  Reduces to
// SET_MULTICOVER over the neighborhood hypergraph.
SolveReport dominating_multiset(const HypergraphInstance& graph, bool openNeighborhoods = false);

}  // namespace latcount
