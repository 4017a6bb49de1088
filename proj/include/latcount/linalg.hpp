#pragma once

#include <optional>
#include <vector>

#include "latcount/matrix.hpp"

namespace latcount {

// Smith normal form S = P * A * Q with P, Q unimodular, S diagonal with
// nonnegative entries forming a divisibility chain S(0,0) | S(1,1) | ...
struct SNFDecomposition {
    Matrix S;
    Matrix P;
    Matrix Q;
};

// Row-style Hermite normal form H = A * Q with Q unimodular.  H is a lower
// staircase: each pivot is positive, entries right of a pivot are zero and
// entries left of it in the same row lie in [0, pivot).  A row dependent on
// the ones above it gets no pivot: it is zero from the next free pivot
// column rightward and its leading entries stay unreduced.
struct HNFDecomposition {
    Matrix H;
    Matrix Q;
};

struct SparsityStats {
    std::size_t rowSparse = 0;       // max nonzeros in a row
    std::size_t colSparse = 0;       // max nonzeros in a column
    std::size_t weakRowSparse = 0;   // rowSparse over nondegenerate square submatrices
    std::size_t weakColSparse = 0;
    Int norm1 = 0;                   // max row l1 norm
    Int normInf = 0;                 // max column l1 norm
    Int maxNorm = 0;                 // max |entry|
    Int gamma1 = 0;                  // largest row l1 norm over nondegenerate square submatrices
    Int gammaInf = 0;                // largest column l1 norm over the same family
    Int totn = 0;                    // min(gamma1, gammaInf)
    std::vector<Int> deltaK;         // deltaK[k-1] = max |k x k minor|
    Int deltaGcd = 0;                // gcd of all minors of the top order examined
    std::size_t detlbOrder = 0;      // order t maximizing (deltaK[t-1])^(1/t)
    Int detlbValue = 0;              // deltaK at that order
};

// Exact determinant via fraction-free elimination.
Int det_exact(const Matrix& a);

// Classical adjugate: a * adjugate(a) = det(a) * I.  Errors on singular input.
Matrix adjugate(const Matrix& a);

HNFDecomposition hnf(const Matrix& a);

SNFDecomposition snf(const Matrix& a);  // square input only

// Exhaustive minor / submatrix statistics up to the given order.  Refuses
// (BudgetError) when the number of submatrices to scan exceeds the budget.
SparsityStats sparsity_stats(const Matrix& a, std::size_t maxMinorOrder);

// Solve a square system A x = b exactly; nullopt when A is singular.
std::optional<std::vector<Rat>> solve_square(const Matrix& a, const std::vector<Rat>& b);

// Integer kernel vector of an (n-1) x n matrix via signed maximal minors;
// the zero vector when the rows are dependent.
std::vector<Int> cross_kernel(const Matrix& a);

std::size_t rank_of(const Matrix& a);

}  // namespace latcount
