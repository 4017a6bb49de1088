#pragma once

#include <optional>
#include <vector>

#include "latcount/linalg.hpp"

namespace latcount {

// Inequality system A x <= b.  Construction normalizes each row by the gcd of
// its coefficients (the rhs entry is divided by the same factor, exactly) and
// merges rows with identical coefficient vectors, keeping the tightest rhs.
class CanonicalSystem {
public:
    CanonicalSystem(Matrix a, std::vector<Rat> b);

    const Matrix& A() const { return a_; }
    const std::vector<Rat>& b() const { return b_; }
    std::size_t num_rows() const { return a_.rows(); }
    std::size_t num_vars() const { return a_.cols(); }

private:
    Matrix a_;
    std::vector<Rat> b_;
};

// Equality system A x = b, 0 <= x (<= u).  Construction drops linearly
// dependent rows; if the dropped rows were inconsistent with the kept ones
// the system is flagged and every solver treats it as empty.
class StandardSystem {
public:
    StandardSystem(Matrix a, std::vector<Rat> b,
                   std::optional<std::vector<Int>> u = std::nullopt);

    const Matrix& A() const { return a_; }
    const std::vector<Rat>& b() const { return b_; }
    const std::optional<std::vector<Int>>& u() const { return u_; }
    std::size_t num_rows() const { return a_.rows(); }
    std::size_t num_vars() const { return a_.cols(); }
    bool inconsistent() const { return inconsistent_; }

private:
    Matrix a_;
    std::vector<Rat> b_;
    std::optional<std::vector<Int>> u_;
    bool inconsistent_ = false;
};

struct Vertex {
    std::vector<Rat> point;
    std::vector<std::size_t> basis;  // sorted row indices, |basis| = n
    Int basisDet;                    // det of the basis submatrix
};

// Square tangent-cone subsystem at a vertex.  The rhs is floored entrywise:
// the cone's integer points are unchanged because the rows are integral.
struct TangentCone {
    Matrix A;
    std::vector<Int> b;
    Vertex vertex;
};

// Affine lift y -> M y + t mapping reduced-space integer points bijectively
// onto the original solution set.
struct AffineMap {
    Matrix basis;             // n x n' integer matrix
    std::vector<Int> offset;  // length n

    std::vector<Int> apply(const std::vector<Int>& y) const;
};

enum class ReductionStatus { REDUCED, INFEASIBLE, INTEGER_INFEASIBLE };

struct ReductionResult {
    ReductionStatus status;
    std::optional<CanonicalSystem> system;  // full-dimensional, possibly 0 vars
    AffineMap map;
};

enum class Boundedness { BOUNDED, UNBOUNDED, UNKNOWN };

// Recession-cone test: {x : Ax <= 0} = {0}?  UNKNOWN when the (n-1)-subset
// ray scan would exceed the budget.
Boundedness boundedness(const CanonicalSystem& c);

CanonicalSystem standard_to_canonical(const StandardSystem& s);

ReductionResult reduce_to_full_dim(const CanonicalSystem& c);

// Shift b_i by eps^i for a single rational eps in (0, 1) chosen so no integer
// point is gained; halves eps until every feasible basic point has exactly n
// tight rows.
CanonicalSystem perturb_to_simple(const CanonicalSystem& c);

// Exhaustive basis scan.  Requires rank(A) = n and a bounded polytope
// (throws UnboundedError otherwise).  Duplicate points are merged; the
// lexicographically smallest basis is kept.
std::vector<Vertex> enumerate_vertices(const CanonicalSystem& c);
std::vector<Vertex> enumerate_vertices_serial(const CanonicalSystem& c);

TangentCone tangent_cone(const CanonicalSystem& c, const Vertex& v);

// Identity on bounded systems; otherwise appends |x_i| <= (n+1) * Delta_ext
// where Delta_ext is the top-rank minor bound of the denominator-cleared
// extended matrix (A b), with a Hadamard upper estimate when the exact scan
// is over budget.  Integer feasibility is preserved in both directions for
// bounded systems and nonemptiness is preserved for unbounded ones.
CanonicalSystem box_if_unbounded(const CanonicalSystem& c);

// min(2^n * totn^n, (2 maxNorm)^n * weakSparse^n); an upper bound on the
// number of vertices.
Int vertex_count_bound(const CanonicalSystem& c);

}  // namespace latcount
