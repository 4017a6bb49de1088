#include "latcount/solver.hpp"

#include <algorithm>
#include <stdexcept>

#include "latcount/errors.hpp"

namespace latcount {

namespace {

struct ExtraRow {
    std::vector<Int> coeffs;
    Rat rhs;
};

CanonicalSystem with_rows(const CanonicalSystem& c, const std::vector<ExtraRow>& extra) {
    const std::size_t m = c.num_rows(), n = c.num_vars();
    Matrix a(m + extra.size(), n);
    std::vector<Rat> b(m + extra.size());
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = c.A()(i, j);
        b[i] = c.b()[i];
    }
    for (std::size_t t = 0; t < extra.size(); ++t) {
        for (std::size_t j = 0; j < n; ++j) a(m + t, j) = extra[t].coeffs[j];
        b[m + t] = extra[t].rhs;
    }
    return CanonicalSystem(std::move(a), std::move(b));
}

ExtraRow unit_row(std::size_t n, std::size_t j, int sign, const Rat& rhs) {
    ExtraRow r{std::vector<Int>(n, Int(0)), rhs};
    r.coeffs[j] = sign;
    return r;
}

ExtraRow obj_row(const std::vector<Int>& obj, int sign, const Rat& rhs) {
    ExtraRow r{obj, rhs};
    if (sign < 0)
        for (Int& v : r.coeffs) v = -v;
    return r;
}

// {x in P : obj^T x >= beta} and {x in P : obj^T x = beta}.
CanonicalSystem slab_ge(const CanonicalSystem& c, const std::vector<Int>& obj, const Int& beta) {
    return with_rows(c, {obj_row(obj, -1, Rat(-beta))});
}

CanonicalSystem slab_eq(const CanonicalSystem& c, const std::vector<Int>& obj, const Int& beta) {
    return with_rows(c, {obj_row(obj, +1, Rat(beta)), obj_row(obj, -1, Rat(-beta))});
}

bool nonempty(const CountReport& r) { return r.infinite || r.count > 0; }

Int floor_div2(const Int& a) {
    Int q;
    mpz_fdiv_q_2exp(q.get_mpz_t(), a.get_mpz_t(), 1);
    return q;
}

// Largest minor magnitude over every order, floored at 1.  Any square
// submatrix of the system extended with unit rows expands to a lower-order
// minor of A, so this single number bounds the proximity radius for the
// whole pinning sequence.  nullopt when the exact scan is over budget.
std::optional<Int> proximity_delta(const Matrix& a) {
    try {
        SparsityStats st = sparsity_stats(a, std::min(a.rows(), a.cols()));
        Int d(1);
        for (const Int& v : st.deltaK) d = std::max(d, v);
        return d;
    } catch (const BudgetError&) {
        return std::nullopt;
    }
}

std::vector<Int> recover_witness(const CanonicalSystem& c, unsigned long& calls) {
    const std::size_t n = c.num_vars();
    CanonicalSystem w = box_if_unbounded(c);
    std::optional<Int> prox = proximity_delta(c.A());
    std::vector<Int> z(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Vertex> verts = enumerate_vertices(w);
        if (verts.empty()) throw std::logic_error("recover_witness: vertex scan came up empty");
        Rat mn = verts[0].point[j], mx = verts[0].point[j];
        for (const Vertex& v : verts) {
            mn = std::min(mn, v.point[j]);
            mx = std::max(mx, v.point[j]);
        }
        Int lo = ceil_rat(mn), hi = floor_rat(mx);
        if (prox) {
            Rat radius(Int(static_cast<unsigned long>(n)) * *prox);
            lo = std::max(lo, ceil_rat(verts[0].point[j] - radius));
            hi = std::min(hi, floor_rat(verts[0].point[j] + radius));
        }
        if (lo > hi) throw std::logic_error("recover_witness: empty search window");
        // Restrict to the window first so both bisection invariants hold:
        // something exists at <= hi, nothing below lo.
        w = with_rows(w, {unit_row(n, j, +1, Rat(hi)), unit_row(n, j, -1, Rat(-lo))});
        while (lo < hi) {
            Int mid = floor_div2(lo + hi);
            ++calls;
            if (nonempty(count_canonical(with_rows(w, {unit_row(n, j, +1, Rat(mid))}))))
                hi = mid;
            else
                lo = mid + 1;
        }
        z[j] = lo;
        w = with_rows(w, {unit_row(n, j, +1, Rat(lo)), unit_row(n, j, -1, Rat(-lo))});
    }
    // The witness must satisfy the original rows exactly.
    for (std::size_t i = 0; i < c.num_rows(); ++i) {
        Rat lhs(0);
        for (std::size_t j = 0; j < n; ++j) lhs += Rat(c.A()(i, j)) * Rat(z[j]);
        if (lhs > c.b()[i]) throw std::logic_error("recover_witness: point violates the system");
    }
    return z;
}

}  // namespace

SolveReport feasible(const CanonicalSystem& c) {
    SolveReport rep;
    ++rep.countingCalls;
    CountReport first = count_canonical(c);
    if (!nonempty(first)) {
        rep.status = SolveStatus::INFEASIBLE;
        return rep;
    }
    rep.witness = recover_witness(c, rep.countingCalls);
    rep.status = SolveStatus::FEASIBLE;
    return rep;
}

SolveReport optimize(const CanonicalSystem& c, const std::vector<Int>& obj) {
    const std::size_t n = c.num_vars();
    if (obj.size() != n) throw std::invalid_argument("optimize: objective length mismatch");
    SolveReport rep;
    ++rep.countingCalls;
    if (!nonempty(count_canonical(c))) {
        rep.status = SolveStatus::INFEASIBLE;
        return rep;
    }

    Boundedness bd = boundedness(c);
    if (bd == Boundedness::UNKNOWN) throw BudgetError("optimize: boundedness test over budget");

    Int optimum;
    if (bd == Boundedness::UNBOUNDED) {
        // Improving integer recession ray {A r <= 0, obj r >= 1}?
        Matrix ra(c.num_rows() + 1, n);
        std::vector<Rat> rb(c.num_rows() + 1, Rat(0));
        for (std::size_t i = 0; i < c.num_rows(); ++i)
            for (std::size_t j = 0; j < n; ++j) ra(i, j) = c.A()(i, j);
        for (std::size_t j = 0; j < n; ++j) ra(c.num_rows(), j) = -obj[j];
        rb[c.num_rows()] = Rat(-1);
        ++rep.countingCalls;
        if (nonempty(count_canonical(CanonicalSystem(std::move(ra), std::move(rb))))) {
            rep.status = SolveStatus::UNBOUNDED;
            return rep;
        }
        // Bounded objective on an unbounded region: gallop up from a point.
        SolveReport base = feasible(c);
        rep.countingCalls += base.countingCalls;
        if (base.status != SolveStatus::FEASIBLE)
            throw std::logic_error("optimize: feasibility flipped");
        Int start = dot<Int, Int>(obj, *base.witness);
        ++rep.countingCalls;
        if (!nonempty(count_canonical(slab_ge(c, obj, start + 1)))) {
            optimum = start;
        } else {
            Int lo(1), hi(2);
            while (true) {
                ++rep.countingCalls;
                if (!nonempty(count_canonical(slab_ge(c, obj, start + hi)))) break;
                lo = hi;
                hi *= 2;
            }
            while (lo + 1 < hi) {
                Int mid = floor_div2(lo + hi);
                ++rep.countingCalls;
                if (nonempty(count_canonical(slab_ge(c, obj, start + mid))))
                    lo = mid;
                else
                    hi = mid;
            }
            optimum = start + lo;
        }
    } else {
        // Slab bounds from the vertex objective extremes; every integer point
        // scores at least ceil(LP min), so that end is known feasible.
        std::vector<Vertex> verts = enumerate_vertices(c);
        if (verts.empty()) throw std::logic_error("optimize: no vertices on a nonempty polytope");
        Rat mn(0), mx(0);
        bool init = false;
        for (const Vertex& v : verts) {
            Rat val = dot<Int, Rat>(obj, v.point);
            if (!init) {
                mn = mx = val;
                init = true;
            } else {
                mn = std::min(mn, val);
                mx = std::max(mx, val);
            }
        }
        Int lo = ceil_rat(mn), hi = floor_rat(mx);
        while (lo < hi) {
            Int mid = floor_div2(lo + hi + 1);
            ++rep.countingCalls;
            if (nonempty(count_canonical(slab_ge(c, obj, mid))))
                lo = mid;
            else
                hi = mid - 1;
        }
        optimum = lo;
    }

    SolveReport wit = feasible(slab_eq(c, obj, optimum));
    rep.countingCalls += wit.countingCalls;
    if (wit.status != SolveStatus::FEASIBLE)
        throw std::logic_error("optimize: optimal slab is empty");
    rep.status = SolveStatus::FEASIBLE;
    rep.optimum = optimum;
    rep.witness = wit.witness;
    return rep;
}

SolveReport optimize_and_count(const CanonicalSystem& c, const std::vector<Int>& obj) {
    SolveReport rep = optimize(c, obj);
    if (rep.status != SolveStatus::FEASIBLE) return rep;
    ++rep.countingCalls;
    CountReport oc = count_canonical(slab_eq(c, obj, *rep.optimum));
    if (oc.infinite)
        rep.optimaInfinite = true;
    else
        rep.optimaCount = oc.count;
    return rep;
}

SolveReport standard_dp_optimize(const StandardSystem& s, const std::vector<Int>& w) {
    const std::size_t k = s.num_rows(), n = s.num_vars();
    if (w.size() != n) throw std::invalid_argument("standard_dp_optimize: weight length mismatch");
    SolveReport rep;
    if (s.inconsistent()) {
        rep.status = SolveStatus::INFEASIBLE;
        return rep;
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (s.A()(i, j) < 0)
                throw std::invalid_argument("standard_dp_optimize: needs nonnegative coefficients");
    std::vector<Int> b(k);
    for (std::size_t i = 0; i < k; ++i) {
        if (!is_integer(s.b()[i])) {
            rep.status = SolveStatus::INFEASIBLE;  // integer lhs, fractional rhs
            return rep;
        }
        b[i] = s.b()[i].get_num();
        if (b[i] < 0) throw std::invalid_argument("standard_dp_optimize: needs nonnegative rhs");
    }

    // Mixed-radix addressing of the rhs lattice 0 <= y <= b.
    Int statesI(1);
    for (std::size_t i = 0; i < k; ++i) statesI *= b[i] + 1;
    if (!statesI.fits_ulong_p() || statesI.get_ui() > work_budget())
        throw BudgetError("standard_dp_optimize: rhs table of " + statesI.get_str() +
                          " states exceeds the budget");
    const std::size_t states = statesI.get_ui();
    std::vector<unsigned long> dims(k), strides(k, 1);
    for (std::size_t i = 0; i < k; ++i) dims[i] = Int(b[i] + 1).get_ui();
    for (std::size_t i = k; i-- > 1;) strides[i - 1] = strides[i] * dims[i];

    struct Cell {
        bool reach = false;
        Int value;
    };
    std::vector<std::vector<Cell>> snaps;  // table after each nonzero column
    std::vector<std::size_t> nonzeroCols;
    std::vector<Cell> cur(states);
    cur[0].reach = true;
    cur[0].value = 0;

    for (std::size_t j = 0; j < n; ++j) {
        bool zero = true;
        for (std::size_t i = 0; i < k && zero; ++i)
            if (s.A()(i, j) != 0) zero = false;
        if (zero) continue;
        nonzeroCols.push_back(j);

        std::vector<unsigned long> step(k);
        for (std::size_t i = 0; i < k; ++i) step[i] = s.A()(i, j).get_ui();
        std::optional<unsigned long> cap;
        if (s.u()) cap = (*s.u())[j].fits_ulong_p() ? (*s.u())[j].get_ui() : work_budget();

        std::vector<Cell> next(states);
        std::vector<unsigned long> digits(k, 0);
        for (std::size_t idx = 0; idx < states; ++idx) {
            // Bounded convolution: best over t copies of column j that fit
            // under the current rhs digits.
            Cell best;
            std::vector<unsigned long> rem = digits;
            std::size_t at = idx;
            unsigned long t = 0;
            while (true) {
                if (cur[at].reach) {
                    Int cand = cur[at].value + Int(t) * w[j];
                    if (!best.reach || cand > best.value) {
                        best.reach = true;
                        best.value = cand;
                    }
                }
                if (cap && t == *cap) break;
                bool fits = true;
                for (std::size_t i = 0; i < k && fits; ++i)
                    if (rem[i] < step[i]) fits = false;
                if (!fits) break;
                for (std::size_t i = 0; i < k; ++i) {
                    rem[i] -= step[i];
                    at -= step[i] * strides[i];
                }
                ++t;
            }
            next[idx] = std::move(best);
            for (std::size_t i = k; i-- > 0;) {
                if (++digits[i] < dims[i]) break;
                digits[i] = 0;
            }
        }
        cur = std::move(next);
        snaps.push_back(cur);
    }

    std::size_t target = 0;
    for (std::size_t i = 0; i < k; ++i) target += Int(b[i]).get_ui() * strides[i];
    if (!cur[target].reach) {
        rep.status = SolveStatus::INFEASIBLE;
        return rep;
    }

    // Free columns never touch the table; a positive weight with no cap is an
    // unbounded ray once the rest is feasible.
    Int freeGain(0);
    std::vector<Int> x(n, Int(0));
    for (std::size_t j = 0; j < n; ++j) {
        bool zero = true;
        for (std::size_t i = 0; i < k && zero; ++i)
            if (s.A()(i, j) != 0) zero = false;
        if (!zero || w[j] <= 0) continue;
        if (!s.u()) {
            rep.status = SolveStatus::UNBOUNDED;
            return rep;
        }
        x[j] = (*s.u())[j];
        freeGain += w[j] * x[j];
    }

    // Backward recovery through the snapshots.
    std::size_t at = target;
    std::vector<unsigned long> digits(k);
    for (std::size_t i = 0; i < k; ++i) digits[i] = (at / strides[i]) % dims[i];
    for (std::size_t cidx = nonzeroCols.size(); cidx-- > 0;) {
        const std::size_t j = nonzeroCols[cidx];
        const std::vector<Cell>& after = snaps[cidx];
        const std::vector<Cell>* before = cidx == 0 ? nullptr : &snaps[cidx - 1];
        std::vector<unsigned long> step(k);
        for (std::size_t i = 0; i < k; ++i) step[i] = s.A()(i, j).get_ui();
        std::optional<unsigned long> cap;
        if (s.u()) cap = (*s.u())[j].fits_ulong_p() ? (*s.u())[j].get_ui() : work_budget();

        std::vector<unsigned long> rem = digits;
        std::size_t probe = at;
        unsigned long chosen = 0;
        bool found = false;
        for (unsigned long t = 0;; ++t) {
            bool srcReach = before ? (*before)[probe].reach : probe == 0;
            Int srcValue(0);
            if (before && srcReach) srcValue = (*before)[probe].value;
            if (srcReach && srcValue + Int(t) * w[j] == after[at].value) {
                chosen = t;
                found = true;
                break;
            }
            if (cap && t == *cap) break;
            bool fits = true;
            for (std::size_t i = 0; i < k && fits; ++i)
                if (rem[i] < step[i]) fits = false;
            if (!fits) break;
            for (std::size_t i = 0; i < k; ++i) {
                rem[i] -= step[i];
                probe -= step[i] * strides[i];
            }
        }
        if (!found) throw std::logic_error("standard_dp_optimize: witness trace broke");
        x[j] = Int(chosen);
        for (std::size_t i = 0; i < k; ++i) {
            digits[i] -= step[i] * chosen;
            at -= step[i] * strides[i] * chosen;
        }
    }

    rep.status = SolveStatus::FEASIBLE;
    rep.optimum = snaps.empty() ? freeGain : snaps.back()[target].value + freeGain;
    rep.witness = x;
    return rep;
}

}  // namespace latcount
