#pragma once

#include <cstddef>
#include <vector>

#include "latcount/bigfloat.hpp"
#include "latcount/linalg.hpp"

namespace latcount {

// Exponential sum with a short product denominator:
//
//   f(tau) = sum_i eps_i * e^(alpha_i tau) / prod_j (1 - e^(beta_j tau))
//
// For a simplicial cone whose adjugate columns all have positive inner
// product with the counting direction, every beta_j is negative and f is the
// convergent sum of e^(<c,z> tau) over the cone's integer points for tau > 0.
// With mixed signs it is the meromorphic continuation of that sum, which is
// exactly what the per-vertex summation needs.
struct NumeratorTerm {
    Int eps;    // positive integer coefficient
    Rat alpha;  // exponent multiplier
};

struct ShortRatExpFun {
    std::vector<NumeratorTerm> numerator;
    std::vector<Rat> denominator;  // the beta_j, each nonzero

    // Construction diagnostics filled in by cone_genfun.
    Int delta = 0;  // group order |det A|
    Int sigma = 0;  // largest elementary divisor
    Int chi = 0;    // max |<c, h_i>| over adjugate columns
};

// Dense integer-coefficient Laurent polynomial in x = e^(-tau/delta).
// Kept trimmed: no leading or trailing zero coefficients, and the zero
// polynomial is represented by an empty coefficient vector.
struct LaurentPoly {
    long low = 0;             // exponent of coeffs[0]
    std::vector<Int> coeffs;  // empty means zero

    bool zero() const { return coeffs.empty(); }
    void trim();
    LaurentPoly shifted(long by) const;
    static LaurentPoly monomial(const Int& c, long e);
    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    bool operator==(const LaurentPoly& o) const;
};

// The finite abelian group Z^n / S Z^n for the Smith form S = P A Q of the
// cone matrix, with the images of the unit slack vectors as generators.
// Elements are addressed by mixed-radix index over the elementary divisors.
struct GroupContext {
    SNFDecomposition snf;
    Int delta;  // group order, equals |det A|
    Int sigma;  // last elementary divisor
    std::vector<Int> diag;
    std::vector<unsigned long> diagUl;
    std::vector<unsigned long> strides;
    unsigned long orderUl = 1;
    std::vector<std::vector<Int>> gens;  // canonical residues of P's columns
    std::vector<Int> g0;                 // canonical residue of P b

    std::size_t order() const { return orderUl; }
    std::size_t index_of(const std::vector<Int>& residue) const;
    std::vector<Int> residue_of(std::size_t idx) const;
    Int element_order(const std::vector<Int>& g) const;
};

// Requires square nonsingular a; refuses (BudgetError) when the group order
// exceeds the work budget.
GroupContext make_group_context(const Matrix& a, const std::vector<Int>& b);

// One table of the group dynamic program: a numerator polynomial per element.
using LevelTable = std::vector<LaurentPoly>;

// Level-by-level driver.  The per-level tables are exposed so the
// sliding-window update can be checked against the naive convolution as an
// exact polynomial identity, level by level.
class GroupDp {
public:
    GroupDp(const Matrix& a, const std::vector<Int>& b, const std::vector<Int>& c);

    std::size_t levels() const { return dVals_.size(); }
    std::size_t level() const { return level_; }
    const LevelTable& table() const { return table_; }
    const std::vector<Int>& step_sizes() const { return dVals_; }
    const std::vector<Int>& orders() const { return rVals_; }
    const GroupContext& context() const { return ctx_; }
    Int chi() const;

    // Advance one level.  smart = three-term sliding window over the cosets
    // of the current generator; otherwise a full convolution per element.
    void step(bool smart, bool parallelCosets);

    // Assemble the rational exponential form once every level is done.
    ShortRatExpFun finish() const;

private:
    GroupContext ctx_;
    Matrix aStar_;           // |det A| * A^{-1}
    std::vector<Int> bVec_;
    std::vector<Int> cVec_;
    std::vector<Int> dVals_;  // <c, h_k> per slack coordinate
    std::vector<Int> rVals_;  // generator orders
    LevelTable table_;
    std::size_t level_ = 0;
};

// Generating function of {x : A x <= b} for square nonsingular integer A and
// integer b.  Requires <c, h_i> != 0 for every column h_i of |det A| * A^{-1}
// (DirectionError otherwise).  The first form uses the sliding-window update
// with cosets processed in parallel; the second is the serial reference that
// convolves naively at every level.
ShortRatExpFun cone_genfun(const Matrix& a, const std::vector<Int>& b,
                           const std::vector<Int>& c);
ShortRatExpFun cone_genfun_naive(const Matrix& a, const std::vector<Int>& b,
                                 const std::vector<Int>& c);

// Coefficients td_0..td_upToDegree of prod_i (b_i t) / (1 - e^(-b_i t)).
std::vector<Rat> todd_polynomials(const std::vector<Rat>& betas,
                                  std::size_t upToDegree);

// Constant Laurent coefficient of f at tau = 0.  Production path: truncated
// power series division in exact rationals.  The Todd variant recomputes it
// through the closed-form expansion of the denominator and is kept as an
// independent cross-check.
Rat constant_term(const ShortRatExpFun& f);
Rat constant_term_todd(const ShortRatExpFun& f);

// High-precision evaluation.  tau > 0 is required whenever the denominator
// is nonempty; a denominator-free f is entire and can be evaluated anywhere.
BigFloat evaluate_numeric(const ShortRatExpFun& f, const Rat& tau);
BigFloat evaluate_numeric(const ShortRatExpFun& f, const BigFloat& tau);

}  // namespace latcount
