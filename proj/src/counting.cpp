#include "latcount/counting.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "latcount/errors.hpp"

namespace latcount {

namespace {

bool candidate_valid(const std::vector<Int>& c, const std::vector<Matrix>& stars, Int& chiOut) {
    Int chi(0);
    for (const Matrix& st : stars) {
        const std::size_t n = st.rows();
        for (std::size_t k = 0; k < n; ++k) {
            Int d(0);
            for (std::size_t i = 0; i < n; ++i) d += c[i] * st(i, k);
            if (d == 0) return false;
            Int a = abs_int(d);
            if (a > chi) chi = a;
        }
    }
    chiOut = chi;
    return true;
}

}  // namespace

std::vector<Int> choose_direction(const std::vector<TangentCone>& cones) {
    if (cones.empty()) throw std::invalid_argument("choose_direction: no cones");
    const std::size_t n = cones[0].A.cols();
    std::vector<Matrix> stars;
    stars.reserve(cones.size());
    Int maxH(0);
    for (const TangentCone& cone : cones) {
        if (cone.A.rows() != n || cone.A.cols() != n)
            throw std::invalid_argument("choose_direction: cones must be square");
        Matrix st = adjugate(cone.A);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Int e = abs_int(st(i, j));
                if (e > maxH) maxH = e;
            }
        stars.push_back(std::move(st));
    }

    std::vector<std::vector<Int>> pool;
    pool.emplace_back(n, Int(1));
    for (std::size_t t = 0; t < cones.size() && t < 4; ++t) {
        std::vector<Int> rowSum(n, Int(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) rowSum[j] += cones[t].A(i, j);
        pool.push_back(std::move(rowSum));
    }
    std::uint64_t state = 0x9e3779b97f4a7c15ULL;
    for (int t = 0; t < 40; ++t) {
        std::vector<Int> cand(n);
        bool allZero = true;
        for (std::size_t j = 0; j < n; ++j) {
            state = state * 6364136223846793005ULL + 1442695040888963407ULL;
            long v = static_cast<long>((state >> 33) % 7) - 3;
            cand[j] = Int(v);
            if (v != 0) allZero = false;
        }
        if (allZero) cand[0] = 1;
        pool.push_back(std::move(cand));
    }
    // Moment-curve fallback (1, M, M^2, ...) with M past the largest adjugate
    // entry; a nonzero integer vector cannot be orthogonal to it.
    {
        Int m = maxH + 1;
        std::vector<Int> cand(n);
        Int p(1);
        for (std::size_t j = 0; j < n; ++j) {
            cand[j] = p;
            p *= m;
        }
        pool.push_back(std::move(cand));
    }

    bool haveBest = false;
    std::vector<Int> best;
    Int bestChi(0);
    for (const std::vector<Int>& cand : pool) {
        Int chi(0);
        if (!candidate_valid(cand, stars, chi)) continue;
        if (!haveBest || chi < bestChi) {
            haveBest = true;
            best = cand;
            bestChi = chi;
        }
    }
    if (!haveBest)
        throw DirectionError("choose_direction: no valid direction found");
    return best;
}

namespace {

CountReport zero_report() { return CountReport{}; }

CountReport count_impl(const CanonicalSystem& c, bool parallel) {
    const std::size_t n = c.num_vars();
    CountReport rep;

    if (n == 0) {
        for (const Rat& bi : c.b())
            if (bi < 0) return zero_report();
        rep.count = 1;
        return rep;
    }

    Boundedness bd = boundedness(c);
    if (bd == Boundedness::UNKNOWN)
        throw BudgetError("count: boundedness test over budget");
    if (bd == Boundedness::UNBOUNDED) {
        // Any integer point of an unbounded rational polyhedron generates
        // infinitely many along an integer recession ray, so the decision
        // reduces to feasibility inside the solution-size box.
        CanonicalSystem boxed = box_if_unbounded(c);
        CountReport inner = count_impl(boxed, parallel);
        if (inner.infinite || inner.count > 0) {
            inner.infinite = true;
            inner.count = 0;
            return inner;
        }
        return zero_report();
    }

    ReductionResult red = reduce_to_full_dim(c);
    if (red.status == ReductionStatus::INFEASIBLE ||
        red.status == ReductionStatus::INTEGER_INFEASIBLE)
        return zero_report();
    if (!red.system) {
        rep.count = 1;  // every coordinate pinned to an integer
        return rep;
    }

    CanonicalSystem simple = perturb_to_simple(*red.system);
    std::vector<Vertex> verts =
        parallel ? enumerate_vertices(simple) : enumerate_vertices_serial(simple);
    if (verts.empty()) return zero_report();

    std::vector<TangentCone> cones;
    cones.reserve(verts.size());
    for (const Vertex& v : verts) cones.push_back(tangent_cone(simple, v));
    std::vector<Int> dir = choose_direction(cones);

    Rat total(0);
    for (const TangentCone& cone : cones) {
        ShortRatExpFun f = parallel ? cone_genfun(cone.A, cone.b, dir)
                                    : cone_genfun_naive(cone.A, cone.b, dir);
        total += constant_term(f);
        rep.deltaMax = std::max(rep.deltaMax, f.delta);
        rep.sigmaMax = std::max(rep.sigmaMax, f.sigma);
        rep.chiMax = std::max(rep.chiMax, f.chi);
    }
    if (!is_integer(total) || total < 0)
        throw std::logic_error("count: vertex sum is not a nonnegative integer: " +
                               total.get_str());
    rep.count = total.get_num();
    rep.vertices = verts.size();
    rep.reducedDim = red.system->num_vars();
    return rep;
}

CountReport count_standard_impl(const StandardSystem& s, bool parallel) {
    if (s.inconsistent()) return zero_report();
    return count_impl(standard_to_canonical(s), parallel);
}

}  // namespace

CountReport count_canonical(const CanonicalSystem& c) { return count_impl(c, true); }

CountReport count_canonical_serial(const CanonicalSystem& c) { return count_impl(c, false); }

CountReport count_standard(const StandardSystem& s) { return count_standard_impl(s, true); }

CountReport count_standard_serial(const StandardSystem& s) {
    return count_standard_impl(s, false);
}

}  // namespace latcount
