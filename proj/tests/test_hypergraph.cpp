#include "doctest.h"

#include <set>

#include "latcount/hypergraph.hpp"
#include "latcount/oracle.hpp"
#include "test_util.hpp"

using namespace latcount;
using testutil::ints;
using testutil::mat;

namespace {

HypergraphInstance k3() {
    return HypergraphInstance(3, {{0, 1}, {0, 2}, {1, 2}});
}

// path on three vertices: edges {0,1} and {1,2}
HypergraphInstance p3() {
    return HypergraphInstance(3, {{0, 1}, {1, 2}});
}

void cap_edges(HypergraphInstance& h, long p) {
    h.edgeHi.assign(h.edges.size(), Int(p));
}

void demand_edges(HypergraphInstance& h, long c) {
    h.edgeLo.assign(h.edges.size(), Int(c));
}

void cap_vertices(HypergraphInstance& h, long p) {
    h.vertexHi.assign(h.vertexCount, Int(p));
}

void demand_vertices(HypergraphInstance& h, long c) {
    h.vertexLo.assign(h.vertexCount, Int(c));
}

}  // namespace

TEST_CASE("instance validation and degree statistics") {
    HypergraphInstance h = k3();
    CHECK(h.d1 == 2);
    CHECK(h.d2 == 2);

    HypergraphInstance single(2, {{0}, {0, 1}});
    CHECK(single.d1 == 2);
    CHECK(single.d2 == 2);

    // duplicate edges count once toward vertex degrees
    HypergraphInstance dup(2, {{0, 1}, {0, 1}, {0}});
    CHECK(dup.d1 == 2);

    CHECK_THROWS_AS(HypergraphInstance(0, {}), std::invalid_argument);
    CHECK_NOTHROW(HypergraphInstance(2, {}));  // edgeless graphs are fine
    CHECK_THROWS_AS(HypergraphInstance(2, {{}}), std::invalid_argument);
    CHECK_THROWS_AS(HypergraphInstance(2, {{0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(HypergraphInstance(2, {{0, 0}}), std::invalid_argument);

    // unsorted edges are normalized on construction
    HypergraphInstance swapped(2, {{1, 0}});
    CHECK(swapped.edges[0] == std::vector<std::size_t>{0, 1});
}

TEST_CASE("incidence matrix is vertices by edges") {
    Matrix a = incidence_matrix(k3());
    CHECK(a == mat({{1, 1, 0}, {1, 0, 1}, {0, 1, 1}}));
}

TEST_CASE("stable multiset on the triangle") {
    HypergraphInstance h = k3();
    cap_edges(h, 1);
    SolveReport r = solve_hyper(h, HyperMode::STABLE_MULTISET, true);
    CHECK(r.status == SolveStatus::FEASIBLE);
    CHECK(*r.optimum == 1);
    CHECK(*r.optimaCount == 3);

    cap_edges(h, 2);
    SolveReport r2 = solve_hyper(h, HyperMode::STABLE_MULTISET, true);
    CHECK(*r2.optimum == 3);
    CHECK(*r2.optimaCount == 1);  // only (1,1,1) loads every edge with 2
}

TEST_CASE("vertex multicover on the triangle") {
    HypergraphInstance h = k3();
    demand_edges(h, 1);
    SolveReport r = solve_hyper(h, HyperMode::VERTEX_MULTICOVER, true);
    CHECK(*r.optimum == 2);
    CHECK(*r.optimaCount == 3);
}

TEST_CASE("multimatching on the path") {
    HypergraphInstance h = p3();
    cap_vertices(h, 1);
    SolveReport r = solve_hyper(h, HyperMode::MULTIMATCHING, true);
    CHECK(*r.optimum == 1);
    CHECK(*r.optimaCount == 2);

    cap_vertices(h, 2);
    SolveReport r2 = solve_hyper(h, HyperMode::MULTIMATCHING, true);
    CHECK(*r2.optimum == 2);
    CHECK(*r2.optimaCount == 3);  // loads on the middle vertex: (2,0), (1,1), (0,2)
}

TEST_CASE("set multicover with nested sets") {
    HypergraphInstance h(2, {{0}, {0, 1}});
    h.vertexLo = {Int(2), Int(1)};
    SolveReport r = solve_hyper(h, HyperMode::SET_MULTICOVER, true);
    CHECK(*r.optimum == 2);
    CHECK(*r.optimaCount == 2);  // (1,1) and (0,2)
}

TEST_CASE("weights and multiplicity caps change the optimum") {
    SUBCASE("weighted stable multiset") {
        HypergraphInstance h = k3();
        cap_edges(h, 1);
        h.weights = ints({2, 1, 1});
        SolveReport r = solve_hyper(h, HyperMode::STABLE_MULTISET, true);
        CHECK(*r.optimum == 2);
        CHECK(*r.optimaCount == 1);
        CHECK(*r.witness == ints({1, 0, 0}));
    }

    SUBCASE("capped stable multiset") {
        HypergraphInstance h = k3();
        cap_edges(h, 2);
        h.mult = ints({1, 1, 0});
        SolveReport r = solve_hyper(h, HyperMode::STABLE_MULTISET, true);
        CHECK(*r.optimum == 2);
        CHECK(*r.optimaCount == 1);
        CHECK(*r.witness == ints({1, 1, 0}));
    }
}

TEST_CASE("uncapped maximization is reported unbounded before encoding") {
    HypergraphInstance h = k3();  // no edge caps at all
    SolveReport r = solve_hyper(h, HyperMode::STABLE_MULTISET, false);
    CHECK(r.status == SolveStatus::UNBOUNDED);

    // an edge none of whose vertices carry a cap is a free ray
    HypergraphInstance m = p3();
    m.vertexHi = {Int(1), std::nullopt, std::nullopt};
    SolveReport r2 = solve_hyper(m, HyperMode::MULTIMATCHING, false);
    CHECK(r2.status == SolveStatus::UNBOUNDED);

    // capping both endpoints of every edge keeps it finite
    HypergraphInstance capped = p3();
    capped.vertexHi = {Int(1), std::nullopt, Int(1)};
    SolveReport r3 = solve_hyper(capped, HyperMode::MULTIMATCHING, true);
    CHECK(r3.status == SolveStatus::FEASIBLE);
    CHECK(*r3.optimum == 2);
}

TEST_CASE("general mode accepts two sided bounds") {
    // demand every edge load exactly 1: impossible on an odd cycle
    HypergraphInstance h = k3();
    h.edgeLo.assign(3, Int(1));
    h.edgeHi.assign(3, Int(1));
    EncodedProblem ep = encode_vertex_based(h, HyperMode::GENERAL);
    SolveReport r = solve_encoded(ep, false);
    CHECK(r.status == SolveStatus::INFEASIBLE);

    CHECK_THROWS_AS(solve_hyper(h, HyperMode::GENERAL, false), std::invalid_argument);
}

TEST_CASE("mode preconditions on the bound vectors") {
    HypergraphInstance stable = k3();
    demand_edges(stable, 1);
    CHECK_THROWS_AS(encode_vertex_based(stable, HyperMode::STABLE_MULTISET),
                    std::invalid_argument);

    HypergraphInstance cover = k3();
    cap_edges(cover, 1);
    CHECK_THROWS_AS(encode_vertex_based(cover, HyperMode::VERTEX_MULTICOVER),
                    std::invalid_argument);

    HypergraphInstance match = p3();
    demand_vertices(match, 1);
    CHECK_THROWS_AS(encode_edge_based(match, HyperMode::MULTIMATCHING), std::invalid_argument);
}

TEST_CASE("equality encoding with slack variables matches the inequality route") {
    SUBCASE("multimatching on the path") {
        HypergraphInstance h = p3();
        cap_vertices(h, 1);
        SolveReport viaCanonical = solve_hyper(h, HyperMode::MULTIMATCHING, true);
        EncodedStandardProblem ep = encode_edge_based_standard(h, HyperMode::MULTIMATCHING);
        CHECK(ep.primaryVars == 2);
        SolveReport viaStandard = solve_encoded_standard(ep, true);
        CHECK(viaStandard.status == SolveStatus::FEASIBLE);
        CHECK(*viaStandard.optimum == *viaCanonical.optimum);
        CHECK(*viaStandard.optimaCount == *viaCanonical.optimaCount);
        REQUIRE(viaStandard.witness.has_value());
        CHECK(viaStandard.witness->size() == 2);
    }

    SUBCASE("set multicover") {
        HypergraphInstance h(2, {{0}, {0, 1}});
        h.vertexLo = {Int(2), Int(1)};
        EncodedStandardProblem ep = encode_edge_based_standard(h, HyperMode::SET_MULTICOVER);
        SolveReport r = solve_encoded_standard(ep, true);
        CHECK(*r.optimum == 2);
        CHECK(*r.optimaCount == 2);
    }

    SUBCASE("rejected shapes") {
        HypergraphInstance both = p3();
        both.vertexLo.assign(3, Int(1));
        both.vertexHi.assign(3, Int(2));
        CHECK_THROWS_AS(encode_edge_based_standard(both, HyperMode::MULTIMATCHING),
                        std::invalid_argument);

        // caps on every edge variable are fine, partial caps cannot be
        // expressed in the bounded equality form
        HypergraphInstance allCapped = p3();
        cap_vertices(allCapped, 1);
        allCapped.mult = {Int(1), Int(1)};
        CHECK_NOTHROW(encode_edge_based_standard(allCapped, HyperMode::MULTIMATCHING));

        HypergraphInstance partial = p3();
        cap_vertices(partial, 1);
        partial.edgeHi = {Int(1), std::nullopt};
        CHECK_THROWS_AS(encode_edge_based_standard(partial, HyperMode::MULTIMATCHING),
                        std::invalid_argument);
    }

    SUBCASE("no edges with a zero demand is trivially feasible") {
        HypergraphInstance none(1, {});
        none.vertexLo = {Int(0)};
        EncodedStandardProblem ep = encode_edge_based_standard(none, HyperMode::SET_MULTICOVER);
        CHECK(ep.primaryVars == 0);
        SolveReport r = solve_encoded_standard(ep, true);
        CHECK(r.status == SolveStatus::FEASIBLE);
        CHECK(*r.optimum == 0);
        REQUIRE(r.witness.has_value());
        CHECK(r.witness->empty());
    }
}

TEST_CASE("gluing merges duplicate edges") {
    HypergraphInstance dup(3, {{0, 1}, {0, 1}, {1, 2}});
    HypergraphInstance glued = glue_duplicate_edges(dup);
    CHECK(glued.edges.size() == 2);
    CHECK(glued.vertexCount == 3);

    HypergraphInstance weighted = dup;
    weighted.weights = ints({1, 1, 1});
    CHECK_THROWS_AS(glue_duplicate_edges(weighted), std::invalid_argument);
}

TEST_CASE("dominating multiset on frozen graphs") {
    SUBCASE("triangle") {
        SolveReport r = dominating_multiset(k3());
        CHECK(*r.optimum == 1);
        CHECK(*r.optimaCount == 3);
    }

    SUBCASE("edgeless graphs need one pick per vertex") {
        HypergraphInstance iso(2, {});
        SolveReport r = dominating_multiset(iso);
        CHECK(*r.optimum == 2);
        CHECK(*r.optimaCount == 1);
        // an isolated vertex has an empty open neighborhood: uncoverable
        CHECK(dominating_multiset(iso, true).status == SolveStatus::INFEASIBLE);
    }

    SUBCASE("single edge") {
        HypergraphInstance pair(2, {{0, 1}});
        SolveReport closed = dominating_multiset(pair);
        CHECK(*closed.optimum == 1);
        CHECK(*closed.optimaCount == 2);

        SolveReport open = dominating_multiset(pair, true);
        CHECK(*open.optimum == 2);
        CHECK(*open.optimaCount == 1);  // x = (1,1) is forced
    }

    SUBCASE("path") {
        SolveReport r = dominating_multiset(p3());
        CHECK(*r.optimum == 1);
        CHECK(*r.optimaCount == 1);  // the middle vertex
    }

    SUBCASE("open neighborhoods on the triangle") {
        SolveReport r = dominating_multiset(k3(), true);
        CHECK(*r.optimum == 2);
        CHECK(*r.optimaCount == 3);  // the three 0/1 pairs
    }

    SUBCASE("demands raise the optimum") {
        HypergraphInstance g = k3();
        g.vertexLo.assign(3, Int(2));
        SolveReport r = dominating_multiset(g);
        CHECK(*r.optimum == 2);
    }

    SUBCASE("non graphs are rejected") {
        CHECK_THROWS_AS(dominating_multiset(HypergraphInstance(3, {{0, 1, 2}})),
                        std::invalid_argument);
        CHECK_THROWS_AS(dominating_multiset(HypergraphInstance(2, {{0, 1}, {0, 1}})),
                        std::invalid_argument);
    }
}

TEST_CASE("neighborhood instance construction") {
    HypergraphInstance cover = dominating_cover_instance(k3());
    // closed neighborhoods of the triangle all equal the whole vertex set
    CHECK(cover.vertexCount == 3);
    REQUIRE(cover.edges.size() == 3);
    for (const auto& e : cover.edges) CHECK(e.size() == 3);

    // gluing the duplicate neighborhoods collapses the triangle cover to one
    // pick-set; the glued count groups solutions that differ only by which
    // duplicate neighborhood supplied the pick
    HypergraphInstance glued = glue_duplicate_edges(cover);
    CHECK(glued.edges.size() == 1);
    HypergraphInstance gluedCover = glued;
    SolveReport direct = dominating_multiset(k3());
    SolveReport merged = solve_hyper(gluedCover, HyperMode::SET_MULTICOVER, true);
    CHECK(*merged.optimum == *direct.optimum);
    CHECK(*merged.optimaCount == 1);
    CHECK(*direct.optimaCount == 3);
}

TEST_CASE("encoded systems agree with direct enumeration") {
    // brute-force the stable multiset optima of the triangle over the box
    HypergraphInstance h = k3();
    cap_edges(h, 2);
    EncodedProblem ep = encode_vertex_based(h, HyperMode::STABLE_MULTISET);
    auto box = oracle_box(ep.system);
    REQUIRE(box.has_value());
    SolveReport viaOracle = oracle_optimize(ep.system, *box, ep.objective);
    SolveReport viaPipeline = solve_hyper(h, HyperMode::STABLE_MULTISET, false);
    CHECK(*viaOracle.optimum == *viaPipeline.optimum);
}
