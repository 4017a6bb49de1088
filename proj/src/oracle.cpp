#include "latcount/oracle.hpp"

#include <cstddef>
#include <stdexcept>

#include "latcount/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace latcount {

namespace {

void check_box(const CanonicalSystem& c, const BoxSpec& box) {
    if (box.lo.size() != c.num_vars() || box.hi.size() != c.num_vars())
        throw std::invalid_argument("oracle: box dimension does not match the system");
}

Int box_volume(const BoxSpec& box) {
    Int vol(1);
    for (std::size_t j = 0; j < box.lo.size(); ++j) {
        if (box.lo[j] > box.hi[j]) return Int(0);
        vol *= box.hi[j] - box.lo[j] + 1;
    }
    return vol;
}

// Walks every lattice point of the box in lexicographic order (first
// coordinate most significant), keeping A x up to date incrementally, and
// hands each feasible point to the visitor.
template <typename Visit>
void scan_box(const CanonicalSystem& c, const BoxSpec& box, Visit&& visit) {
    const std::size_t m = c.num_rows();
    const std::size_t n = c.num_vars();
    Int vol = box_volume(box);
    if (vol == 0) return;
    if (vol > Int(work_budget())) throw BudgetError("oracle: box volume exceeds the work budget");

    // Rows are integral, so a_i x <= b_i is the same as a_i x <= floor(b_i).
    std::vector<Int> bf(m);
    for (std::size_t i = 0; i < m; ++i) bf[i] = floor_rat(c.b()[i]);

    if (n == 0) {
        for (std::size_t i = 0; i < m; ++i)
            if (bf[i] < 0) return;
        visit(std::vector<Int>{});
        return;
    }

    std::vector<Int> x = box.lo;
    std::vector<Int> lhs(m, Int(0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) lhs[i] += c.A()(i, j) * x[j];

    while (true) {
        bool ok = true;
        for (std::size_t i = 0; i < m && ok; ++i)
            if (lhs[i] > bf[i]) ok = false;
        if (ok) visit(x);

        bool advanced = false;
        std::size_t j = n;
        while (j-- > 0) {
            if (x[j] < box.hi[j]) {
                x[j] += 1;
                for (std::size_t i = 0; i < m; ++i) lhs[i] += c.A()(i, j);
                advanced = true;
                break;
            }
            Int span = x[j] - box.lo[j];
            if (span != 0)
                for (std::size_t i = 0; i < m; ++i) lhs[i] -= c.A()(i, j) * span;
            x[j] = box.lo[j];
        }
        if (!advanced) return;
    }
}

// Exact Gauss-Jordan solve of an n x n rational system.  Local on purpose;
// the oracle must not borrow the production elimination code.
std::optional<std::vector<Rat>> gauss_solve(std::vector<std::vector<Rat>> a, std::vector<Rat> b) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rat f = a[r][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
            b[r] -= f * b[col];
        }
    }
    std::vector<Rat> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

Int binomial(std::size_t m, std::size_t n) {
    if (n > m) return Int(0);
    Int r(1);
    for (std::size_t i = 0; i < n; ++i) {
        r *= Int(static_cast<unsigned long>(m - i));
        r /= Int(static_cast<unsigned long>(i + 1));
    }
    return r;
}

SolveReport scan_optimum(const CanonicalSystem& c, const BoxSpec& box,
                         const std::vector<Int>& obj, bool withCount) {
    check_box(c, box);
    if (obj.size() != c.num_vars())
        throw std::invalid_argument("oracle: objective dimension does not match the system");

    bool found = false;
    Int best(0);
    Int ties(0);
    std::vector<Int> witness;
    scan_box(c, box, [&](const std::vector<Int>& x) {
        Int v(0);
        for (std::size_t j = 0; j < x.size(); ++j) v += obj[j] * x[j];
        if (!found || v > best) {
            found = true;
            best = v;
            ties = 1;
            witness = x;  // lex-first maximizer sticks
        } else if (v == best) {
            ties += 1;
        }
    });

    SolveReport rep;
    if (!found) {
        rep.status = SolveStatus::INFEASIBLE;
        return rep;
    }
    rep.status = SolveStatus::FEASIBLE;
    rep.witness = witness;
    rep.optimum = best;
    if (withCount) rep.optimaCount = ties;
    return rep;
}

}  // namespace

std::vector<std::vector<Int>> oracle_enumerate(const CanonicalSystem& c, const BoxSpec& box) {
    check_box(c, box);
    std::vector<std::vector<Int>> pts;
    scan_box(c, box, [&](const std::vector<Int>& x) { pts.push_back(x); });
    return pts;
}

Int oracle_count_serial(const CanonicalSystem& c, const BoxSpec& box) {
    check_box(c, box);
    Int n(0);
    scan_box(c, box, [&](const std::vector<Int>&) { n += 1; });
    return n;
}

Int oracle_count(const CanonicalSystem& c, const BoxSpec& box) {
    check_box(c, box);
    const std::size_t n = c.num_vars();
    Int vol = box_volume(box);
    if (vol == 0) return Int(0);
    if (vol > Int(work_budget())) throw BudgetError("oracle: box volume exceeds the work budget");
    if (n < 2) return oracle_count_serial(c, box);
    Int width = box.hi[0] - box.lo[0] + 1;
    if (width < 2) return oracle_count_serial(c, box);

    // One slice per value of the first coordinate; slice counts fit in
    // unsigned long because the whole volume passed the budget check.
    long slices = static_cast<long>(width.get_ui());
    std::vector<unsigned long> part(static_cast<std::size_t>(slices), 0);
#pragma omp parallel for schedule(dynamic)
    for (long s = 0; s < slices; ++s) {
        BoxSpec sub = box;
        sub.lo[0] = box.lo[0] + s;
        sub.hi[0] = sub.lo[0];
        unsigned long cnt = 0;
        scan_box(c, sub, [&](const std::vector<Int>&) { ++cnt; });
        part[static_cast<std::size_t>(s)] = cnt;
    }
    Int total(0);
    for (unsigned long p : part) total += Int(p);
    return total;
}

SolveReport oracle_optimize(const CanonicalSystem& c, const BoxSpec& box,
                            const std::vector<Int>& obj) {
    return scan_optimum(c, box, obj, false);
}

SolveReport oracle_optcount(const CanonicalSystem& c, const BoxSpec& box,
                            const std::vector<Int>& obj) {
    return scan_optimum(c, box, obj, true);
}

std::optional<BoxSpec> oracle_box(const CanonicalSystem& c) {
    const std::size_t m = c.num_rows();
    const std::size_t n = c.num_vars();
    if (n == 0 || m < n) return std::nullopt;
    if (binomial(m, n) > Int(work_budget()))
        throw BudgetError("oracle: too many row subsets for the basis scan");

    std::vector<Rat> mins(n), maxs(n);
    bool any = false;

    std::vector<std::size_t> pick(n);
    for (std::size_t i = 0; i < n; ++i) pick[i] = i;
    while (true) {
        std::vector<std::vector<Rat>> sub(n, std::vector<Rat>(n));
        std::vector<Rat> rhs(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) sub[i][j] = Rat(c.A()(pick[i], j));
            rhs[i] = c.b()[pick[i]];
        }
        if (auto x = gauss_solve(std::move(sub), std::move(rhs))) {
            bool feasible = true;
            for (std::size_t i = 0; i < m && feasible; ++i) {
                Rat lhs(0);
                for (std::size_t j = 0; j < n; ++j) lhs += Rat(c.A()(i, j)) * (*x)[j];
                if (lhs > c.b()[i]) feasible = false;
            }
            if (feasible) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (!any || (*x)[j] < mins[j]) mins[j] = (*x)[j];
                    if (!any || (*x)[j] > maxs[j]) maxs[j] = (*x)[j];
                }
                any = true;
            }
        }

        // next n-subset of {0..m-1} in lexicographic order
        bool more = false;
        std::size_t i = n;
        while (i-- > 0) {
            if (pick[i] < m - (n - i)) {
                pick[i] += 1;
                for (std::size_t l = i + 1; l < n; ++l) pick[l] = pick[l - 1] + 1;
                more = true;
                break;
            }
        }
        if (!more) break;
    }
    if (!any) return std::nullopt;

    BoxSpec box;
    box.lo.resize(n);
    box.hi.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        box.lo[j] = ceil_rat(mins[j]);
        box.hi[j] = floor_rat(maxs[j]);
    }
    return box;
}

}  // namespace latcount
