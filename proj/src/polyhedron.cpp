#include "latcount/polyhedron.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "latcount/errors.hpp"
#include "latcount/parallel.hpp"

namespace latcount {

namespace {

unsigned long binom_capped(std::size_t n, std::size_t k, unsigned long cap) {
    if (k > n) return 0;
    Int b(1);
    for (std::size_t i = 0; i < k; ++i) {
        b *= Int(static_cast<unsigned long>(n - i));
        b /= Int(static_cast<unsigned long>(i + 1));
        if (b > static_cast<long>(cap)) return cap + 1;
    }
    return b.get_ui();
}

std::vector<std::vector<std::size_t>> all_subsets(std::size_t n, std::size_t k,
                                                  const char* what) {
    // Subsets are materialized (the parallel scans index into the list), so
    // cap the count below the general work budget.
    unsigned long budget = std::min(work_budget(), 2000000UL);
    unsigned long cnt = binom_capped(n, k, budget);
    if (cnt > budget) throw BudgetError(std::string(what) + ": subset scan exceeds budget");
    std::vector<std::vector<std::size_t>> out;
    if (k > n) return out;
    out.reserve(cnt);
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        out.push_back(idx);
        std::size_t i = k;
        bool advanced = false;
        while (i-- > 0) {
            if (idx[i] + (k - i) < n) {
                ++idx[i];
                for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
        if (k == 0) break;
    }
    return out;
}

Matrix select_rows(const Matrix& a, const std::vector<std::size_t>& rows) {
    Matrix m(rows.size(), a.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(rows[i], j);
    return m;
}

}  // namespace

CanonicalSystem::CanonicalSystem(Matrix a, std::vector<Rat> b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.rows() != b_.size())
        throw std::invalid_argument("CanonicalSystem: row/rhs count mismatch");
    if (a_.rows() == 0) throw std::invalid_argument("CanonicalSystem: need at least one row");
    const std::size_t m = a_.rows(), n = a_.cols();
    for (std::size_t i = 0; i < m; ++i) {
        Int g(0);
        for (std::size_t j = 0; j < n; ++j) g = gcd_int(g, a_(i, j));
        if (g > 1) {
            for (std::size_t j = 0; j < n; ++j) a_(i, j) /= g;
            b_[i] /= Rat(g);
        }
    }
    // Merge duplicate coefficient rows, keeping the tightest rhs.
    std::map<std::vector<Int>, std::size_t> seen;
    std::vector<std::vector<Int>> keptRows;
    std::vector<Rat> keptB;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<Int> r = a_.row(i);
        auto it = seen.find(r);
        if (it == seen.end()) {
            seen.emplace(r, keptRows.size());
            keptRows.push_back(std::move(r));
            keptB.push_back(b_[i]);
        } else if (b_[i] < keptB[it->second]) {
            keptB[it->second] = b_[i];
        }
    }
    Matrix res(keptRows.size(), n);
    for (std::size_t i = 0; i < keptRows.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) res(i, j) = keptRows[i][j];
    a_ = std::move(res);
    b_ = std::move(keptB);
}

StandardSystem::StandardSystem(Matrix a, std::vector<Rat> b, std::optional<std::vector<Int>> u)
    : a_(std::move(a)), b_(std::move(b)), u_(std::move(u)) {
    if (a_.rows() != b_.size())
        throw std::invalid_argument("StandardSystem: row/rhs count mismatch");
    if (u_ && u_->size() != a_.cols())
        throw std::invalid_argument("StandardSystem: bound vector length mismatch");
    if (u_)
        for (const Int& v : *u_)
            if (v < 0) throw std::invalid_argument("StandardSystem: negative multiplicity bound");

    // Row-reduce [A | b] over the rationals to find a maximal independent row
    // subset; rank growth in the augmented column means inconsistency.
    const std::size_t m = a_.rows(), n = a_.cols();
    RatMatrix w(m, n + 1);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) w(i, j) = Rat(a_(i, j));
        w(i, n) = b_[i];
    }
    std::vector<std::size_t> keep;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t p = m;
        for (std::size_t i = r; i < m; ++i)
            if (w(i, c) != 0) { p = i; break; }
        if (p == m) continue;
        w.swap_rows(r, p);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || w(i, c) == 0) continue;
            Rat f = w(i, c) / w(r, c);
            for (std::size_t j = c; j <= n; ++j) w(i, j) -= f * w(r, j);
        }
        ++r;
    }
    // Any remaining nonzero augmented entry in a zero coefficient row is a
    // contradiction 0 = nonzero.
    for (std::size_t i = 0; i < m; ++i) {
        bool zeroRow = true;
        for (std::size_t j = 0; j < n; ++j)
            if (w(i, j) != 0) { zeroRow = false; break; }
        if (zeroRow && w(i, n) != 0) inconsistent_ = true;
    }
    // Re-identify an independent subset of the *original* rows so the kept
    // data stays integral.
    if (!inconsistent_) {
        std::vector<std::size_t> chosen;
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<std::size_t> cand = chosen;
            cand.push_back(i);
            Matrix sub = select_rows(a_, cand);
            if (rank_of(sub) == cand.size()) chosen = std::move(cand);
        }
        std::vector<Rat> nb;
        for (std::size_t i : chosen) nb.push_back(b_[i]);
        a_ = select_rows(a_, chosen);
        b_ = std::move(nb);
    }
}

std::vector<Int> AffineMap::apply(const std::vector<Int>& y) const {
    if (y.size() != basis.cols()) throw std::invalid_argument("AffineMap: dimension mismatch");
    std::vector<Int> x = offset;
    for (std::size_t i = 0; i < basis.rows(); ++i)
        for (std::size_t j = 0; j < basis.cols(); ++j) x[i] += basis(i, j) * y[j];
    return x;
}

CanonicalSystem standard_to_canonical(const StandardSystem& s) {
    const std::size_t k = s.num_rows(), n = s.num_vars();
    if (n == 0) throw std::invalid_argument("standard_to_canonical: no variables");
    if (s.inconsistent()) {
        // Trivially empty surrogate: 0 <= -1.
        Matrix a(1, n);
        return CanonicalSystem(a, {Rat(-1)});
    }
    std::size_t rows = 2 * k + n + (s.u() ? n : 0);
    Matrix a(rows, n);
    std::vector<Rat> b(rows, Rat(0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = s.A()(i, j);
            a(k + i, j) = -s.A()(i, j);
        }
        b[i] = s.b()[i];
        b[k + i] = -s.b()[i];
    }
    for (std::size_t j = 0; j < n; ++j) {
        a(2 * k + j, j) = -1;
        b[2 * k + j] = Rat(0);
    }
    if (s.u()) {
        for (std::size_t j = 0; j < n; ++j) {
            a(2 * k + n + j, j) = 1;
            b[2 * k + n + j] = Rat((*s.u())[j]);
        }
    }
    return CanonicalSystem(std::move(a), std::move(b));
}

Boundedness boundedness(const CanonicalSystem& c) {
    const std::size_t m = c.num_rows(), n = c.num_vars();
    if (n == 0) return Boundedness::BOUNDED;
    if (rank_of(c.A()) < n) return Boundedness::UNBOUNDED;
    unsigned long budget = std::min(work_budget(), 2000000UL);
    if (binom_capped(m, n - 1, budget) > budget) return Boundedness::UNKNOWN;
    // The recession cone {Ax <= 0} has rank n, hence is pointed; it is
    // nontrivial iff it has an extreme ray, i.e. a direction with n-1 tight
    // independent rows.  The signed-minor kernel of each such row subset
    // produces the candidate ray exactly.
    auto subsets = all_subsets(m, n - 1, "boundedness");
    for (const auto& sub : subsets) {
        Matrix rowsM = select_rows(c.A(), sub);
        if (rank_of(rowsM) != n - 1) continue;
        std::vector<Int> r = cross_kernel(rowsM);
        bool zero = true;
        for (const Int& v : r)
            if (v != 0) { zero = false; break; }
        if (zero) continue;
        for (int sgn : {+1, -1}) {
            bool ok = true;
            for (std::size_t i = 0; i < m && ok; ++i) {
                Int s(0);
                for (std::size_t j = 0; j < n; ++j) s += c.A()(i, j) * r[j];
                if (Int(sgn) * s > 0) ok = false;
            }
            if (ok) return Boundedness::UNBOUNDED;
        }
    }
    return Boundedness::BOUNDED;
}

namespace {

std::vector<Vertex> enumerate_vertices_impl(const CanonicalSystem& c, bool parallel) {
    const std::size_t m = c.num_rows(), n = c.num_vars();
    if (n == 0) throw std::invalid_argument("enumerate_vertices: zero-dimensional system");
    if (rank_of(c.A()) < n)
        throw UnboundedError("enumerate_vertices: coefficient rank below dimension");
    Boundedness bd = boundedness(c);
    if (bd == Boundedness::UNBOUNDED)
        throw UnboundedError("enumerate_vertices: unbounded polyhedron");
    if (bd == Boundedness::UNKNOWN)
        throw BudgetError("enumerate_vertices: boundedness test over budget");

    auto subsets = all_subsets(m, n, "enumerate_vertices");
    std::vector<std::optional<Vertex>> found(subsets.size());

    auto probe = [&](std::size_t t) {
        const auto& sub = subsets[t];
        Matrix basisM = select_rows(c.A(), sub);
        Int d = det_exact(basisM);
        if (d == 0) return;
        std::vector<Rat> rhs(n);
        for (std::size_t i = 0; i < n; ++i) rhs[i] = c.b()[sub[i]];
        auto x = solve_square(basisM, rhs);
        for (std::size_t i = 0; i < m; ++i) {
            Rat lhs(0);
            for (std::size_t j = 0; j < n; ++j) lhs += Rat(c.A()(i, j)) * (*x)[j];
            if (lhs > c.b()[i]) return;
        }
        found[t] = Vertex{*x, sub, d};
    };

    if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (long t = 0; t < static_cast<long>(subsets.size()); ++t)
            probe(static_cast<std::size_t>(t));
    } else {
        for (std::size_t t = 0; t < subsets.size(); ++t) probe(t);
    }

    // Merge duplicates; subset order is lexicographic, so the first basis
    // seen for a point is the lexicographically smallest.
    std::map<std::vector<Rat>, std::size_t> byPoint;
    std::vector<Vertex> out;
    for (auto& f : found) {
        if (!f) continue;
        auto it = byPoint.find(f->point);
        if (it == byPoint.end()) {
            byPoint.emplace(f->point, out.size());
            out.push_back(std::move(*f));
        }
    }
    return out;
}

}  // namespace

std::vector<Vertex> enumerate_vertices(const CanonicalSystem& c) {
    return enumerate_vertices_impl(c, true);
}

std::vector<Vertex> enumerate_vertices_serial(const CanonicalSystem& c) {
    return enumerate_vertices_impl(c, false);
}

ReductionResult reduce_to_full_dim(const CanonicalSystem& c) {
    const std::size_t n0 = c.num_vars();
    Matrix lift = Matrix::identity(n0);
    std::vector<Int> offset(n0, Int(0));
    CanonicalSystem cur = c;

    while (true) {
        const std::size_t n = cur.num_vars();
        if (n == 0) break;
        std::vector<Vertex> verts = enumerate_vertices(cur);
        if (verts.empty())
            return {ReductionStatus::INFEASIBLE, std::nullopt, {lift, offset}};
        // A row is an implicit equality iff it is tight at every vertex
        // (the polytope is the convex hull of its vertices).
        std::size_t eqRow = cur.num_rows();
        for (std::size_t i = 0; i < cur.num_rows() && eqRow == cur.num_rows(); ++i) {
            bool zeroRow = true;
            for (std::size_t j = 0; j < n && zeroRow; ++j)
                if (cur.A()(i, j) != 0) zeroRow = false;
            if (zeroRow) continue;  // vacuous 0 <= b row, not an equality
            bool allTight = true;
            for (const Vertex& v : verts) {
                Rat lhs(0);
                for (std::size_t j = 0; j < n; ++j) lhs += Rat(cur.A()(i, j)) * v.point[j];
                if (lhs != cur.b()[i]) { allTight = false; break; }
            }
            if (allTight) eqRow = i;
        }
        if (eqRow == cur.num_rows())
            return {ReductionStatus::REDUCED, cur, {lift, offset}};

        // Row coefficients are primitive (normalized), so the HNF of the row
        // is (1, 0, ..., 0): the change of variables x = Q x' pins x'_1.
        Matrix rowM(1, n);
        for (std::size_t j = 0; j < n; ++j) rowM(0, j) = cur.A()(eqRow, j);
        HNFDecomposition h = hnf(rowM);
        if (h.H(0, 0) != 1)
            throw std::logic_error("reduce_to_full_dim: non-primitive implicit equality row");
        const Rat& val = cur.b()[eqRow];
        if (!is_integer(val))
            return {ReductionStatus::INTEGER_INFEASIBLE, std::nullopt, {lift, offset}};
        Int fixed = val.get_num();

        Matrix at = mat_mul(cur.A(), h.Q);
        // Substitute x'_1 = fixed; build the system over x'_2..x'_n.
        std::vector<std::vector<Int>> rows;
        std::vector<Rat> rhs;
        for (std::size_t i = 0; i < cur.num_rows(); ++i) {
            if (i == eqRow) continue;
            std::vector<Int> r(n - 1);
            bool zero = true;
            for (std::size_t j = 1; j < n; ++j) {
                r[j - 1] = at(i, j);
                if (r[j - 1] != 0) zero = false;
            }
            Rat nb = cur.b()[i] - Rat(at(i, 0) * fixed);
            if (zero) {
                if (nb < 0)
                    return {ReductionStatus::INFEASIBLE, std::nullopt, {lift, offset}};
                continue;
            }
            rows.push_back(std::move(r));
            rhs.push_back(nb);
        }
        // Update the lift: x = lift * Q * (fixed; y) + offset.
        Matrix lq = mat_mul(lift, h.Q);
        for (std::size_t i = 0; i < n0; ++i) offset[i] += lq(i, 0) * fixed;
        Matrix nl(n0, n - 1);
        for (std::size_t i = 0; i < n0; ++i)
            for (std::size_t j = 1; j < n; ++j) nl(i, j - 1) = lq(i, j);
        lift = std::move(nl);

        if (n - 1 == 0) break;  // fully pinned; all rows were checked above
        if (rows.empty())
            throw UnboundedError("reduce_to_full_dim: remainder is unconstrained");
        Matrix na(rows.size(), n - 1);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j + 1 < n; ++j) na(i, j) = rows[i][j];
        cur = CanonicalSystem(std::move(na), std::move(rhs));
    }
    return {ReductionStatus::REDUCED, std::nullopt, {lift, offset}};
}

CanonicalSystem perturb_to_simple(const CanonicalSystem& c) {
    const std::size_t m = c.num_rows(), n = c.num_vars();
    // eps below the distance from each b_i to the next larger integer keeps
    // every integer point count unchanged (shifts only relax, by less than
    // the gap to the next achievable integer value of A_i x).
    Rat eps(1, 2);
    for (std::size_t i = 0; i < m; ++i) {
        Rat gap = Rat(floor_rat(c.b()[i]) + 1) - c.b()[i];
        Rat half = gap / Rat(2);
        if (half < eps) eps = half;
    }
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<Rat> nb(m);
        Rat p = eps;
        for (std::size_t i = 0; i < m; ++i) {
            nb[i] = c.b()[i] + p;
            p *= eps;
        }
        CanonicalSystem cand(c.A(), nb);
        // Simplicity check: every feasible basic point must have exactly n
        // tight rows.
        bool simple = true;
        auto subsets = all_subsets(m, n, "perturb_to_simple");
        for (const auto& sub : subsets) {
            Matrix basisM = select_rows(cand.A(), sub);
            if (det_exact(basisM) == 0) continue;
            std::vector<Rat> rhs(n);
            for (std::size_t i = 0; i < n; ++i) rhs[i] = cand.b()[sub[i]];
            auto x = solve_square(basisM, rhs);
            bool feasible = true;
            std::size_t tight = 0;
            for (std::size_t i = 0; i < m && feasible; ++i) {
                Rat lhs(0);
                for (std::size_t j = 0; j < n; ++j) lhs += Rat(cand.A()(i, j)) * (*x)[j];
                if (lhs > cand.b()[i]) feasible = false;
                else if (lhs == cand.b()[i]) ++tight;
            }
            if (feasible && tight != n) { simple = false; break; }
        }
        if (simple) return cand;
        eps /= Rat(2);
    }
    throw std::logic_error("perturb_to_simple: no simple perturbation found (bug)");
}

TangentCone tangent_cone(const CanonicalSystem& c, const Vertex& v) {
    const std::size_t m = c.num_rows(), n = c.num_vars();
    std::vector<std::size_t> tight;
    for (std::size_t i = 0; i < m; ++i) {
        Rat lhs(0);
        for (std::size_t j = 0; j < n; ++j) lhs += Rat(c.A()(i, j)) * v.point[j];
        if (lhs == c.b()[i]) tight.push_back(i);
    }
    if (tight.size() != n)
        throw std::invalid_argument("tangent_cone: vertex is degenerate (simplify first)");
    Matrix a = select_rows(c.A(), tight);
    std::vector<Int> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = floor_rat(c.b()[tight[i]]);
    return {std::move(a), std::move(b), v};
}

CanonicalSystem box_if_unbounded(const CanonicalSystem& c) {
    Boundedness bd = boundedness(c);
    if (bd == Boundedness::BOUNDED) return c;
    const std::size_t m = c.num_rows(), n = c.num_vars();

    // Extended matrix (A | b) with each row scaled by its rhs denominator.
    Matrix ext(m, n + 1);
    for (std::size_t i = 0; i < m; ++i) {
        Int den = c.b()[i].get_den();
        for (std::size_t j = 0; j < n; ++j) ext(i, j) = c.A()(i, j) * den;
        ext(i, n) = c.b()[i].get_num();
    }
    std::size_t r = rank_of(ext);
    Int deltaExt(1);
    bool exact = r == 0;
    if (r > 0) {
        try {
            SparsityStats st = sparsity_stats(ext, r);
            deltaExt = st.deltaK[r - 1];
            exact = true;
        } catch (const BudgetError&) {
        }
    }
    if (!exact) {
        // Hadamard estimate on the top-order minors: r^(r/2) * maxEntry^r,
        // rounded up; always at least the exact value.
        Int maxEnt(1);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j <= n; ++j) {
                Int e = abs_int(ext(i, j));
                if (e > maxEnt) maxEnt = e;
            }
        deltaExt = isqrt_ceil(pow_int(Int(static_cast<unsigned long>(r)),
                                      static_cast<unsigned long>(r))) *
                   pow_int(maxEnt, static_cast<unsigned long>(r));
    }
    if (deltaExt < 1) deltaExt = 1;
    Int bound = Int(static_cast<unsigned long>(n + 1)) * deltaExt;

    Matrix a(m + 2 * n, n);
    std::vector<Rat> b(m + 2 * n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = c.A()(i, j);
        b[i] = c.b()[i];
    }
    for (std::size_t j = 0; j < n; ++j) {
        a(m + 2 * j, j) = 1;
        b[m + 2 * j] = Rat(bound);
        a(m + 2 * j + 1, j) = -1;
        b[m + 2 * j + 1] = Rat(bound);
    }
    return CanonicalSystem(std::move(a), std::move(b));
}

Int vertex_count_bound(const CanonicalSystem& c) {
    const std::size_t n = c.num_vars();
    SparsityStats st = sparsity_stats(c.A(), std::min(c.num_rows(), n));
    Int totn = st.totn;
    if (totn == 0) totn = 1;
    std::size_t ws = std::max<std::size_t>(st.weakRowSparse, 1);
    Int byTotn = pow_int(Int(2) * totn, static_cast<unsigned long>(n));
    Int bySparse = pow_int(Int(2) * st.maxNorm, static_cast<unsigned long>(n)) *
                   pow_int(Int(static_cast<unsigned long>(ws)), static_cast<unsigned long>(n));
    return std::min(byTotn, bySparse);
}

}  // namespace latcount
