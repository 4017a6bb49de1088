#include "latcount/linalg.hpp"

#include <algorithm>
#include <stdexcept>

#include "latcount/errors.hpp"

namespace latcount {

namespace {

// Fraction-free Gaussian elimination (Bareiss).  Returns the determinant of a
// square matrix; every intermediate division is exact.
Int bareiss_det(Matrix m) {
    const std::size_t n = m.rows();
    if (n == 0) return Int(1);
    Int sign(1), prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return Int(0);
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                m(i, j) = t / prev;  // exact by Bareiss
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

Matrix minor_matrix(const Matrix& a, std::size_t skipRow, std::size_t skipCol) {
    Matrix m(a.rows() - 1, a.cols() - 1);
    std::size_t r = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (i == skipRow) continue;
        std::size_t c = 0;
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (j == skipCol) continue;
            m(r, c) = a(i, j);
            ++c;
        }
        ++r;
    }
    return m;
}

// Apply [colA, colB] <- [x*colA + y*colB, u*colA + v*colB] to m (and mirror
// into q so the running product A*Q stays equal to m).
void combine_cols(Matrix& m, Matrix& q, std::size_t a, std::size_t b,
                  const Int& x, const Int& y, const Int& u, const Int& v) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Int ca = m(i, a), cb = m(i, b);
        m(i, a) = x * ca + y * cb;
        m(i, b) = u * ca + v * cb;
    }
    for (std::size_t i = 0; i < q.rows(); ++i) {
        Int ca = q(i, a), cb = q(i, b);
        q(i, a) = x * ca + y * cb;
        q(i, b) = u * ca + v * cb;
    }
}

void add_col_multiple(Matrix& m, Matrix& q, std::size_t dst, std::size_t src, const Int& f) {
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += f * m(i, src);
    for (std::size_t i = 0; i < q.rows(); ++i) q(i, dst) += f * q(i, src);
}

void negate_col(Matrix& m, Matrix& q, std::size_t c) {
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, c) = -m(i, c);
    for (std::size_t i = 0; i < q.rows(); ++i) q(i, c) = -q(i, c);
}

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

// Visit every k-subset of [0, n) in lexicographic order.
template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F&& fn) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        fn(idx);
        std::size_t i = k;
        while (i-- > 0) {
            if (idx[i] + (k - i) < n) {
                ++idx[i];
                for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) return;
        }
    }
}

}  // namespace

Int det_exact(const Matrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("det_exact: matrix not square");
    return bareiss_det(a);
}

Matrix adjugate(const Matrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("adjugate: matrix not square");
    const std::size_t n = a.rows();
    if (n == 0) throw std::invalid_argument("adjugate: empty matrix");
    Int d = det_exact(a);
    if (d == 0) throw std::invalid_argument("adjugate: singular matrix");
    if (n == 1) return Matrix::identity(1);
    Matrix adj(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Int c = det_exact(minor_matrix(a, j, i));
            adj(i, j) = ((i + j) % 2 == 0) ? c : Int(-c);
        }
    return adj;
}

HNFDecomposition hnf(const Matrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    Matrix h = a;
    Matrix q = Matrix::identity(n);
    std::size_t pivotCol = 0;
    std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
    for (std::size_t r = 0; r < m && pivotCol < n; ++r) {
        // Gather the gcd of row r over columns [pivotCol, n) into pivotCol.
        std::size_t firstNz = n;
        for (std::size_t j = pivotCol; j < n; ++j)
            if (h(r, j) != 0) { firstNz = j; break; }
        if (firstNz == n) continue;  // no pivot in this row
        if (firstNz != pivotCol) {
            h.swap_cols(pivotCol, firstNz);
            q.swap_cols(pivotCol, firstNz);
        }
        for (std::size_t j = pivotCol + 1; j < n; ++j) {
            if (h(r, j) == 0) continue;
            Int g, x, y;
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(),
                       h(r, pivotCol).get_mpz_t(), h(r, j).get_mpz_t());
            Int u = -h(r, j) / g, v = h(r, pivotCol) / g;
            combine_cols(h, q, pivotCol, j, x, y, u, v);
        }
        if (h(r, pivotCol) < 0) negate_col(h, q, pivotCol);
        // Reduce the entries left of the pivot into [0, pivot).
        for (std::size_t j = 0; j < pivotCol; ++j) {
            Int f;
            mpz_fdiv_q(f.get_mpz_t(), h(r, j).get_mpz_t(), h(r, pivotCol).get_mpz_t());
            if (f != 0) add_col_multiple(h, q, j, pivotCol, Int(-f));
        }
        pivots.emplace_back(r, pivotCol);
        ++pivotCol;
    }
    return {h, q};
}

SNFDecomposition snf(const Matrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("snf: matrix not square");
    const std::size_t n = a.rows();
    Matrix s = a;
    Matrix p = Matrix::identity(n);
    Matrix q = Matrix::identity(n);

    auto row_op = [&](std::size_t dst, std::size_t src, const Int& f) {
        for (std::size_t j = 0; j < n; ++j) s(dst, j) += f * s(src, j);
        for (std::size_t j = 0; j < n; ++j) p(dst, j) += f * p(src, j);
    };
    auto swap_rows = [&](std::size_t x, std::size_t y) {
        s.swap_rows(x, y);
        p.swap_rows(x, y);
    };
    auto negate_row = [&](std::size_t r) {
        for (std::size_t j = 0; j < n; ++j) s(r, j) = -s(r, j);
        for (std::size_t j = 0; j < n; ++j) p(r, j) = -p(r, j);
    };

    for (std::size_t t = 0; t < n; ++t) {
        while (true) {
            // Pull the absolutely smallest nonzero entry of the trailing
            // block into the (t, t) slot; growth stays modest this way.
            std::size_t bi = n, bj = n;
            for (std::size_t i = t; i < n; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (s(i, j) != 0 &&
                        (bi == n || abs_int(s(i, j)) < abs_int(s(bi, bj)))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == n) break;  // trailing block all zero
            swap_rows(t, bi);
            if (bj != t) {
                s.swap_cols(t, bj);
                q.swap_cols(t, bj);
            }
            bool clean = true;
            for (std::size_t i = t + 1; i < n; ++i) {
                if (s(i, t) == 0) continue;
                Int f = -(s(i, t) / s(t, t));
                if (f != 0) row_op(i, t, f);
                if (s(i, t) != 0) clean = false;  // remainder left, loop again
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (s(t, j) == 0) continue;
                Int f = -(s(t, j) / s(t, t));
                if (f != 0) {
                    for (std::size_t i = 0; i < n; ++i) s(i, j) += f * s(i, t);
                    for (std::size_t i = 0; i < n; ++i) q(i, j) += f * q(i, t);
                }
                if (s(t, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (s(t, t) < 0) negate_row(t);
    }

    // Enforce the divisibility chain on the diagonal.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t t = 0; t + 1 < n; ++t) {
            if (s(t, t) == 0 && s(t + 1, t + 1) != 0) {
                swap_rows(t, t + 1);
                s.swap_cols(t, t + 1);
                q.swap_cols(t, t + 1);
                changed = true;
                continue;
            }
            if (s(t, t) != 0 && s(t + 1, t + 1) % s(t, t) != 0) {
                // Fold the offender into column t and redo the local pivot.
                for (std::size_t i = 0; i < n; ++i) s(i, t) += s(i, t + 1);
                for (std::size_t i = 0; i < n; ++i) q(i, t) += q(i, t + 1);
                Int aa = s(t, t), bb = s(t + 1, t);
                Int g, x, y;
                mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(),
                           aa.get_mpz_t(), bb.get_mpz_t());
                // 2x2 unimodular row mix to leave gcd at (t, t).
                for (std::size_t j = 0; j < n; ++j) {
                    Int rt = s(t, j), rn = s(t + 1, j);
                    s(t, j) = x * rt + y * rn;
                    s(t + 1, j) = -(bb / g) * rt + (aa / g) * rn;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    Int rt = p(t, j), rn = p(t + 1, j);
                    p(t, j) = x * rt + y * rn;
                    p(t + 1, j) = -(bb / g) * rt + (aa / g) * rn;
                }
                // Clear the off-diagonal remains in row t / column t.
                if (s(t, t + 1) != 0) {
                    Int f = -(s(t, t + 1) / s(t, t));
                    for (std::size_t i = 0; i < n; ++i) s(i, t + 1) += f * s(i, t);
                    for (std::size_t i = 0; i < n; ++i) q(i, t + 1) += f * q(i, t);
                }
                if (s(t + 1, t + 1) < 0) negate_row(t + 1);
                if (s(t, t) < 0) negate_row(t);
                changed = true;
            }
        }
    }
    return {s, p, q};
}

std::size_t rank_of(const Matrix& a) {
    // Fraction-free elimination with full pivoting; counts pivots.
    Matrix m = a;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    Int prev(1);
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (m(i, c) != 0) { p = i; break; }
        if (p == rows) continue;
        m.swap_rows(r, p);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                Int t = m(i, j) * m(r, c) - m(i, c) * m(r, j);
                m(i, j) = t / prev;
            }
            m(i, c) = 0;
        }
        prev = m(r, c);
        ++r;
    }
    return r;
}

SparsityStats sparsity_stats(const Matrix& a, std::size_t maxMinorOrder) {
    const std::size_t m = a.rows(), n = a.cols();
    if (maxMinorOrder == 0 || maxMinorOrder > std::min(m, n))
        throw std::invalid_argument("sparsity_stats: minor order out of range");

    SparsityStats st;
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t nz = 0;
        Int l1(0);
        for (std::size_t j = 0; j < n; ++j) {
            if (a(i, j) != 0) ++nz;
            l1 += abs_int(a(i, j));
            Int e = abs_int(a(i, j));
            if (e > st.maxNorm) st.maxNorm = e;
        }
        st.rowSparse = std::max(st.rowSparse, nz);
        if (l1 > st.norm1) st.norm1 = l1;
    }
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t nz = 0;
        Int l1(0);
        for (std::size_t i = 0; i < m; ++i) {
            if (a(i, j) != 0) ++nz;
            l1 += abs_int(a(i, j));
        }
        st.colSparse = std::max(st.colSparse, nz);
        if (l1 > st.normInf) st.normInf = l1;
    }

    const unsigned long budget = work_budget();
    unsigned long total = 0;
    for (std::size_t k = 1; k <= maxMinorOrder; ++k) {
        unsigned long c = binom_capped(m, k, budget) ;
        unsigned long d = binom_capped(n, k, budget);
        if (c > budget || d > budget || c * static_cast<double>(d) > static_cast<double>(budget))
            throw BudgetError("sparsity_stats: submatrix scan exceeds budget");
        total += c * d;
        if (total > budget) throw BudgetError("sparsity_stats: submatrix scan exceeds budget");
    }

    st.deltaK.assign(maxMinorOrder, Int(0));
    bool anyNondegenerate = false;
    for (std::size_t k = 1; k <= maxMinorOrder; ++k) {
        Int bestDelta(0), gcdAll(0);
        for_each_subset(m, k, [&](const std::vector<std::size_t>& ri) {
            for_each_subset(n, k, [&](const std::vector<std::size_t>& ci) {
                Matrix sub(k, k);
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) sub(i, j) = a(ri[i], ci[j]);
                Int d = abs_int(bareiss_det(sub));
                if (d > bestDelta) bestDelta = d;
                if (k == maxMinorOrder) gcdAll = gcd_int(gcdAll, d);
                if (d != 0) {
                    anyNondegenerate = true;
                    std::size_t rs = 0, cs = 0;
                    Int g1(0), gi(0);
                    for (std::size_t i = 0; i < k; ++i) {
                        std::size_t nz = 0;
                        Int l1(0);
                        for (std::size_t j = 0; j < k; ++j) {
                            if (sub(i, j) != 0) ++nz;
                            l1 += abs_int(sub(i, j));
                        }
                        rs = std::max(rs, nz);
                        if (l1 > g1) g1 = l1;
                    }
                    for (std::size_t j = 0; j < k; ++j) {
                        std::size_t nz = 0;
                        Int l1(0);
                        for (std::size_t i = 0; i < k; ++i) {
                            if (sub(i, j) != 0) ++nz;
                            l1 += abs_int(sub(i, j));
                        }
                        cs = std::max(cs, nz);
                        if (l1 > gi) gi = l1;
                    }
                    st.weakRowSparse = std::max(st.weakRowSparse, rs);
                    st.weakColSparse = std::max(st.weakColSparse, cs);
                    if (st.gamma1 == 0 || g1 > st.gamma1) st.gamma1 = g1;
                    if (st.gammaInf == 0 || gi > st.gammaInf) st.gammaInf = gi;
                }
            });
        });
        st.deltaK[k - 1] = bestDelta;
        if (k == maxMinorOrder) st.deltaGcd = gcdAll;
    }
    (void)anyNondegenerate;
    st.totn = std::min(st.gamma1, st.gammaInf);

    // detlb: the order t maximizing deltaK[t]^(1/t); compared exactly via
    // deltaK[t]^s vs deltaK[s]^t.
    for (std::size_t t = 1; t <= maxMinorOrder; ++t) {
        if (st.deltaK[t - 1] == 0) continue;
        if (st.detlbOrder == 0) {
            st.detlbOrder = t;
            st.detlbValue = st.deltaK[t - 1];
            continue;
        }
        Int lhs = pow_int(st.deltaK[t - 1], static_cast<unsigned long>(st.detlbOrder));
        Int rhs = pow_int(st.detlbValue, static_cast<unsigned long>(t));
        if (lhs > rhs) {
            st.detlbOrder = t;
            st.detlbValue = st.deltaK[t - 1];
        }
    }
    return st;
}

std::optional<std::vector<Rat>> solve_square(const Matrix& a, const std::vector<Rat>& b) {
    if (a.rows() != a.cols() || a.rows() != b.size())
        throw std::invalid_argument("solve_square: shape mismatch");
    Int d = det_exact(a);
    if (d == 0) return std::nullopt;
    Matrix adj = adjugate(a);
    std::vector<Rat> x(a.rows(), Rat(0));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Rat s(0);
        for (std::size_t j = 0; j < a.cols(); ++j) s += Rat(adj(i, j)) * b[j];
        x[i] = s / Rat(d);
    }
    return x;
}

std::vector<Int> cross_kernel(const Matrix& a) {
    const std::size_t n = a.cols();
    if (a.rows() + 1 != n) throw std::invalid_argument("cross_kernel: need (n-1) x n input");
    std::vector<Int> v(n, Int(0));
    for (std::size_t i = 0; i < n; ++i) {
        Matrix sub(n - 1, n - 1);
        for (std::size_t r = 0; r < n - 1; ++r) {
            std::size_t c = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                sub(r, c++) = a(r, j);
            }
        }
        Int d = (n >= 1) ? bareiss_det(sub) : Int(1);
        v[i] = (i % 2 == 0) ? d : Int(-d);
    }
    return v;
}

}  // namespace latcount
