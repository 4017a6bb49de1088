#include "doctest.h"

#include <cstdlib>

#include "latcount/errors.hpp"
#include "latcount/solver.hpp"
#include "test_util.hpp"

using namespace latcount;
using testutil::ints;
using testutil::mat;
using testutil::rats;

namespace {

CanonicalSystem square() {
    return CanonicalSystem(mat({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}), rats({2, 2, 0, 0}));
}

CanonicalSystem triangle() {
    return CanonicalSystem(mat({{1, 1}, {-1, 0}, {0, -1}}), rats({3, 0, 0}));
}

bool satisfies(const CanonicalSystem& c, const std::vector<Int>& x) {
    for (std::size_t i = 0; i < c.num_rows(); ++i) {
        Rat lhs(0);
        for (std::size_t j = 0; j < c.num_vars(); ++j) lhs += Rat(c.A()(i, j)) * Rat(x[j]);
        if (lhs > c.b()[i]) return false;
    }
    return true;
}

unsigned long call_cap(std::size_t n, const Int& delta) {
    Int range = Int(2) * Int(static_cast<unsigned long>(n)) * delta + 1;
    unsigned long bits = 0;
    Int p(1);
    while (p < range) { p *= 2; ++bits; }
    return static_cast<unsigned long>(n) * (2 * bits + 2);
}

}  // namespace

TEST_CASE("feasibility with witness recovery") {
    SolveReport r = feasible(square());
    CHECK(r.status == SolveStatus::FEASIBLE);
    REQUIRE(r.witness.has_value());
    CHECK(satisfies(square(), *r.witness));

    SolveReport t = feasible(triangle());
    CHECK(t.status == SolveStatus::FEASIBLE);
    CHECK(satisfies(triangle(), *t.witness));

    // unique lattice point: 2x + 3y = 7, x, y >= 0
    CanonicalSystem uniq(mat({{2, 3}, {-2, -3}, {-1, 0}, {0, -1}}), rats({7, -7, 0, 0}));
    SolveReport u = feasible(uniq);
    CHECK(u.status == SolveStatus::FEASIBLE);
    CHECK(*u.witness == ints({2, 1}));

    // empty
    CanonicalSystem empty(mat({{1}, {-1}}), rats({0, -1}));
    SolveReport e = feasible(empty);
    CHECK(e.status == SolveStatus::INFEASIBLE);
    CHECK_FALSE(e.witness.has_value());

    // rationally nonempty, integrally empty
    CanonicalSystem odd(mat({{2}, {-2}}), rats({3, -3}));
    CHECK(feasible(odd).status == SolveStatus::INFEASIBLE);

    // unbounded region still yields a witness
    CanonicalSystem half(mat({{1, 1}}), rats({3}));
    SolveReport h = feasible(half);
    CHECK(h.status == SolveStatus::FEASIBLE);
    CHECK(satisfies(half, *h.witness));
}

TEST_CASE("feasibility consumes few counting calls") {
    struct Case {
        CanonicalSystem c;
        Int delta;
    };
    std::vector<Case> cases;
    cases.push_back({square(), Int(1)});
    cases.push_back({triangle(), Int(1)});
    cases.push_back({CanonicalSystem(mat({{2, 1}, {-1, 2}, {0, -1}, {-1, 0}}),
                                     rats({7, 4, 1, 1})),
                     Int(5)});
    for (const Case& cs : cases) {
        SolveReport r = feasible(cs.c);
        CHECK(r.countingCalls >= 1);
        CHECK(r.countingCalls <= call_cap(cs.c.num_vars(), cs.delta));
    }
}

TEST_CASE("optimization over bounded polytopes") {
    SolveReport r = optimize(triangle(), ints({1, 1}));
    CHECK(r.status == SolveStatus::FEASIBLE);
    REQUIRE(r.optimum.has_value());
    CHECK(*r.optimum == 3);
    REQUIRE(r.witness.has_value());
    CHECK(satisfies(triangle(), *r.witness));
    CHECK((*r.witness)[0] + (*r.witness)[1] == 3);

    SolveReport mn = optimize(triangle(), ints({-1, -1}));
    CHECK(*mn.optimum == 0);
    CHECK(*mn.witness == ints({0, 0}));

    SolveReport sq = optimize(square(), ints({3, -2}));
    CHECK(*sq.optimum == 6);
    CHECK(*sq.witness == ints({2, 0}));

    CHECK(optimize(CanonicalSystem(mat({{1}, {-1}}), rats({0, -1})), ints({1})).status ==
          SolveStatus::INFEASIBLE);

    CHECK_THROWS_AS(optimize(square(), ints({1})), std::invalid_argument);
}

TEST_CASE("optimization over unbounded regions") {
    CanonicalSystem half(mat({{1, 1}}), rats({3}));
    SolveReport bounded = optimize(half, ints({1, 1}));
    CHECK(bounded.status == SolveStatus::FEASIBLE);
    CHECK(*bounded.optimum == 3);

    SolveReport ray = optimize(half, ints({1, 0}));
    CHECK(ray.status == SolveStatus::UNBOUNDED);
    CHECK_FALSE(ray.optimum.has_value());

    // galloping upward from a witness when no vertex bound exists
    CanonicalSystem ray1(mat({{-1}}), rats({0}));
    SolveReport g = optimize(ray1, ints({-1}));
    CHECK(g.status == SolveStatus::FEASIBLE);
    CHECK(*g.optimum == 0);
    CHECK(*g.witness == ints({0}));
}

TEST_CASE("optimum slab counting") {
    SolveReport r = optimize_and_count(triangle(), ints({1, 1}));
    CHECK(*r.optimum == 3);
    REQUIRE(r.optimaCount.has_value());
    CHECK(*r.optimaCount == 4);
    CHECK_FALSE(r.optimaInfinite);

    SolveReport sq = optimize_and_count(square(), ints({1, 0}));
    CHECK(*sq.optimum == 2);
    CHECK(*sq.optimaCount == 3);

    // the optimal slab of an unbounded region can be infinite
    CanonicalSystem wall(mat({{1, 0}}), rats({0}));
    SolveReport w = optimize_and_count(wall, ints({1, 0}));
    CHECK(w.status == SolveStatus::FEASIBLE);
    CHECK(*w.optimum == 0);
    CHECK(w.optimaInfinite);

    SolveReport u = optimize_and_count(wall, ints({1, 1}));
    CHECK(u.status == SolveStatus::UNBOUNDED);
}

TEST_CASE("bellman optimization over the rhs lattice") {
    StandardSystem s(mat({{1, 1}}), rats({3}));
    SolveReport r = standard_dp_optimize(s, ints({1, 0}));
    CHECK(r.status == SolveStatus::FEASIBLE);
    CHECK(*r.optimum == 3);
    CHECK(*r.witness == ints({3, 0}));

    StandardSystem capped(mat({{1, 1}}), rats({3}), std::vector<Int>{2, 2});
    SolveReport c = standard_dp_optimize(capped, ints({1, 0}));
    CHECK(*c.optimum == 2);
    CHECK(*c.witness == ints({2, 1}));

    SolveReport wts = standard_dp_optimize(s, ints({2, 3}));
    CHECK(*wts.optimum == 9);
    CHECK(*wts.witness == ints({0, 3}));

    SUBCASE("two rows") {
        StandardSystem two(mat({{1, 1, 0}, {0, 1, 1}}), rats({2, 2}));
        SolveReport t = standard_dp_optimize(two, ints({1, 1, 1}));
        // x2 counts twice in the constraints but once in the objective
        CHECK(*t.optimum == 4);
        CHECK(*t.witness == ints({2, 0, 2}));
    }

    SUBCASE("infeasible fibers") {
        CHECK(standard_dp_optimize(StandardSystem(mat({{2}}), rats({3})), ints({1})).status ==
              SolveStatus::INFEASIBLE);
        StandardSystem fr(mat({{2, 0}}), rats({3}));
        CHECK(standard_dp_optimize(fr, ints({1, 1})).status == SolveStatus::INFEASIBLE);
    }

    SUBCASE("free columns") {
        StandardSystem free1(mat({{1, 0}}), rats({3}));
        CHECK(standard_dp_optimize(free1, ints({0, 1})).status == SolveStatus::UNBOUNDED);
        StandardSystem freeCapped(mat({{1, 0}}), rats({3}), std::vector<Int>{5, 5});
        SolveReport f = standard_dp_optimize(freeCapped, ints({0, 1}));
        CHECK(*f.optimum == 5);
        CHECK(*f.witness == ints({3, 5}));
    }

    SUBCASE("preconditions") {
        CHECK_THROWS_AS(standard_dp_optimize(StandardSystem(mat({{1, -1}}), rats({0})),
                                             ints({1, 1})),
                        std::invalid_argument);
        CHECK_THROWS_AS(standard_dp_optimize(StandardSystem(mat({{1, 1}}), rats({-3})),
                                             ints({1, 1})),
                        std::invalid_argument);
        CHECK_THROWS_AS(standard_dp_optimize(StandardSystem(mat({{1}}), rats({3})), ints({1, 1})),
                        std::invalid_argument);
    }

    SUBCASE("oversized tables are refused") {
        StandardSystem big(mat({{1, 1}}), rats({100000000}));
        CHECK_THROWS_AS(standard_dp_optimize(big, ints({1, 1})), BudgetError);
    }
}
