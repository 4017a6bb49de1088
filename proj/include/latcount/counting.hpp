#pragma once

#include <vector>

#include "latcount/genfun.hpp"
#include "latcount/polyhedron.hpp"

namespace latcount {

struct CountReport {
    bool infinite = false;
    Int count = 0;             // meaningful when !infinite
    std::size_t vertices = 0;  // vertices of the perturbed polytope
    std::size_t reducedDim = 0;
    Int deltaMax = 0;  // worst tangent-cone group order
    Int sigmaMax = 0;  // worst elementary divisor
    Int chiMax = 0;    // worst |<c, h>| under the chosen direction
};

// An integer direction with nonzero inner product against every adjugate
// column of every cone.  A pool of small candidates is tried first and the
// one with the smallest worst-case |<c, h>| wins; a moment-curve vector that
// is always valid serves as the fallback.
std::vector<Int> choose_direction(const std::vector<TangentCone>& cones);

// Exact number of integer points of {x : A x <= b}.  Unbounded systems are
// resolved to either a finite count or the infinite flag; a BudgetError means
// the instance was refused, never silently truncated.
CountReport count_canonical(const CanonicalSystem& c);
// Same pipeline with the serial vertex scan and the naive convolution at
// every dynamic-program level; kept as the reference for testing.
CountReport count_canonical_serial(const CanonicalSystem& c);

CountReport count_standard(const StandardSystem& s);
CountReport count_standard_serial(const StandardSystem& s);

}  // namespace latcount
