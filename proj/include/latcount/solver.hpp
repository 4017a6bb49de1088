#pragma once

#include <optional>
#include <vector>

#include "latcount/counting.hpp"

namespace latcount {

enum class SolveStatus { FEASIBLE, INFEASIBLE, UNBOUNDED };

struct SolveReport {
    SolveStatus status = SolveStatus::INFEASIBLE;
    std::optional<std::vector<Int>> witness;  // present iff FEASIBLE
    std::optional<Int> optimum;
    std::optional<Int> optimaCount;
    bool optimaInfinite = false;
    unsigned long countingCalls = 0;  // full counting invocations consumed
};

// Decides P cap Z^n != {} by counting; a feasible instance also yields a
// witness, recovered coordinate by coordinate: binary search for a value of
// x_j that keeps the restricted system nonempty, pin it, move on.  The search
// window combines the proximity bound around an LP vertex (n * max-minor)
// with the vertex coordinate extremes.
SolveReport feasible(const CanonicalSystem& c);

// max obj^T x over P cap Z^n via binary search on the slab {obj^T x >= beta}.
// Unbounded objectives are detected through an improving integer recession
// ray; otherwise the slab bound comes from vertex extremes (bounded P) or
// from galloping upward from a known point (unbounded P, bounded objective).
SolveReport optimize(const CanonicalSystem& c, const std::vector<Int>& obj);

// optimize, then count the points of the optimal slab.
SolveReport optimize_and_count(const CanonicalSystem& c, const std::vector<Int>& obj);

// Bellman table over the rhs lattice for Ax = b, 0 <= x (<= u) with A >= 0
// entrywise and b >= 0: exact max of w^T x, witness by backward recovery.
// Free columns (all-zero) with positive weight and no cap make the objective
// unbounded once the rest is feasible.
SolveReport standard_dp_optimize(const StandardSystem& s, const std::vector<Int>& w);

}  // namespace latcount
