#pragma once

#include <optional>
#include <vector>

#include "latcount/polyhedron.hpp"
#include "latcount/solver.hpp"

namespace latcount {

// Integer search box, one closed interval per variable.
struct BoxSpec {
    std::vector<Int> lo;
    std::vector<Int> hi;
};

// Ground truth by exhaustion.  Everything here is deliberately independent of
// the production pipeline: its own rational elimination, its own basis scan,
// no calls into linalg/ or the counting stack, so a bug over there cannot
// cancel out over here.

// All integer points of {x in box : A x <= b}, lexicographic order.
// BudgetError when the box volume exceeds the work budget.
std::vector<std::vector<Int>> oracle_enumerate(const CanonicalSystem& c, const BoxSpec& box);

Int oracle_count(const CanonicalSystem& c, const BoxSpec& box);  // parallel over slices
Int oracle_count_serial(const CanonicalSystem& c, const BoxSpec& box);

SolveReport oracle_optimize(const CanonicalSystem& c, const BoxSpec& box,
                            const std::vector<Int>& obj);
SolveReport oracle_optcount(const CanonicalSystem& c, const BoxSpec& box,
                            const std::vector<Int>& obj);

// Box enclosing every integer point of a bounded system: coordinate extremes
// of the basic feasible points, ceiled/floored.  nullopt when no basic
// feasible point exists (the system is empty).  Meaningless for unbounded
// systems; callers check boundedness themselves.
std::optional<BoxSpec> oracle_box(const CanonicalSystem& c);

}  // namespace latcount
