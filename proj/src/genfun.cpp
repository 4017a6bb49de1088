#include "latcount/genfun.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "latcount/errors.hpp"
#include "latcount/parallel.hpp"

namespace latcount {

void LaurentPoly::trim() {
    std::size_t front = 0;
    while (front < coeffs.size() && coeffs[front] == 0) ++front;
    std::size_t back = coeffs.size();
    while (back > front && coeffs[back - 1] == 0) --back;
    if (front == back) {
        coeffs.clear();
        low = 0;
        return;
    }
    if (front > 0) coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(front));
    coeffs.resize(back - front);
    low += static_cast<long>(front);
}

LaurentPoly LaurentPoly::shifted(long by) const {
    LaurentPoly r = *this;
    if (!r.zero()) r.low += by;
    return r;
}

LaurentPoly LaurentPoly::monomial(const Int& c, long e) {
    LaurentPoly r;
    if (c != 0) {
        r.low = e;
        r.coeffs.push_back(c);
    }
    return r;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    if (zero()) return o;
    if (o.zero()) return *this;
    long lo = std::min(low, o.low);
    long hi = std::max(low + static_cast<long>(coeffs.size()),
                       o.low + static_cast<long>(o.coeffs.size()));
    LaurentPoly r;
    r.low = lo;
    r.coeffs.assign(static_cast<std::size_t>(hi - lo), Int(0));
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        r.coeffs[static_cast<std::size_t>(low - lo) + i] += coeffs[i];
    for (std::size_t i = 0; i < o.coeffs.size(); ++i)
        r.coeffs[static_cast<std::size_t>(o.low - lo) + i] += o.coeffs[i];
    r.trim();
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
    if (o.zero()) return *this;
    long lo = std::min(zero() ? o.low : low, o.low);
    long selfHi = zero() ? o.low : low + static_cast<long>(coeffs.size());
    long hi = std::max(selfHi, o.low + static_cast<long>(o.coeffs.size()));
    LaurentPoly r;
    r.low = lo;
    r.coeffs.assign(static_cast<std::size_t>(hi - lo), Int(0));
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        r.coeffs[static_cast<std::size_t>(low - lo) + i] += coeffs[i];
    for (std::size_t i = 0; i < o.coeffs.size(); ++i)
        r.coeffs[static_cast<std::size_t>(o.low - lo) + i] -= o.coeffs[i];
    r.trim();
    return r;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
    LaurentPoly a = *this;
    LaurentPoly b = o;
    a.trim();
    b.trim();
    return a.low == b.low && a.coeffs == b.coeffs;
}

std::size_t GroupContext::index_of(const std::vector<Int>& residue) const {
    std::size_t idx = 0;
    for (std::size_t l = 0; l < diag.size(); ++l)
        idx += residue[l].get_ui() * strides[l];
    return idx;
}

std::vector<Int> GroupContext::residue_of(std::size_t idx) const {
    std::vector<Int> r(diag.size());
    for (std::size_t l = 0; l < diag.size(); ++l)
        r[l] = Int(static_cast<unsigned long>((idx / strides[l]) % diagUl[l]));
    return r;
}

Int GroupContext::element_order(const std::vector<Int>& g) const {
    Int ord = 1;
    for (std::size_t l = 0; l < diag.size(); ++l) {
        Int d = gcd_int(diag[l], g[l]);
        ord = lcm_int(ord, diag[l] / d);
    }
    return ord;
}

GroupContext make_group_context(const Matrix& a, const std::vector<Int>& b) {
    if (a.rows() != a.cols()) throw std::invalid_argument("group context needs a square matrix");
    if (b.size() != a.rows()) throw std::invalid_argument("group context: rhs length mismatch");
    const std::size_t n = a.rows();
    GroupContext ctx;
    ctx.snf = snf(a);
    ctx.diag.resize(n);
    ctx.delta = 1;
    for (std::size_t l = 0; l < n; ++l) {
        ctx.diag[l] = ctx.snf.S(l, l);
        if (ctx.diag[l] == 0) throw std::invalid_argument("group context: singular matrix");
        ctx.delta *= ctx.diag[l];
    }
    ctx.sigma = n ? ctx.diag[n - 1] : Int(1);
    if (!ctx.delta.fits_ulong_p() || ctx.delta.get_ui() > work_budget())
        throw BudgetError("group order " + ctx.delta.get_str() + " exceeds the work budget");
    ctx.orderUl = ctx.delta.get_ui();
    ctx.diagUl.resize(n);
    ctx.strides.assign(n, 1);
    for (std::size_t l = 0; l < n; ++l) ctx.diagUl[l] = ctx.diag[l].get_ui();
    for (std::size_t l = n; l-- > 1;) {
        // strides[l-1] = strides[l] * diag[l]
        ctx.strides[l - 1] = ctx.strides[l] * ctx.diagUl[l];
    }
    ctx.gens.assign(n, std::vector<Int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l)
            mpz_mod(ctx.gens[i][l].get_mpz_t(), ctx.snf.P(l, i).get_mpz_t(),
                    ctx.diag[l].get_mpz_t());
    std::vector<Int> pb = mat_vec(ctx.snf.P, b);
    ctx.g0.resize(n);
    for (std::size_t l = 0; l < n; ++l)
        mpz_mod(ctx.g0[l].get_mpz_t(), pb[l].get_mpz_t(), ctx.diag[l].get_mpz_t());
    return ctx;
}

namespace {

// For every group element index, the index of element + offset.  The offset
// comes in as canonical machine residues; the walk is a plain odometer over
// the mixed-radix digits, so no bignum arithmetic is involved.
std::vector<std::size_t> index_map_for_offset(const GroupContext& ctx,
                                              const std::vector<unsigned long>& off) {
    const std::size_t n = ctx.diagUl.size();
    std::vector<std::size_t> map(ctx.order());
    std::vector<unsigned long> cur(n, 0);
    for (std::size_t idx = 0; idx < map.size(); ++idx) {
        std::size_t t = 0;
        for (std::size_t l = 0; l < n; ++l) {
            unsigned long v = cur[l] + off[l];
            if (v >= ctx.diagUl[l]) v -= ctx.diagUl[l];
            t += v * ctx.strides[l];
        }
        map[idx] = t;
        for (std::size_t l = n; l-- > 0;) {
            if (++cur[l] < ctx.diagUl[l]) break;
            cur[l] = 0;
        }
    }
    return map;
}

long checked_long(const Int& v, const char* what) {
    if (!v.fits_slong_p()) throw BudgetError(std::string(what) + " too large: " + v.get_str());
    return v.get_si();
}

}  // namespace

GroupDp::GroupDp(const Matrix& a, const std::vector<Int>& b, const std::vector<Int>& c)
    : ctx_(make_group_context(a, b)), bVec_(b), cVec_(c) {
    const std::size_t n = a.rows();
    if (c.size() != n) throw std::invalid_argument("group dp: direction length mismatch");
    Int det = det_exact(a);
    aStar_ = adjugate(a);
    if (det < 0)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) aStar_(i, j) = -aStar_(i, j);
    dVals_.resize(n);
    rVals_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        Int d = 0;
        for (std::size_t i = 0; i < n; ++i) d += c[i] * aStar_(i, k);
        if (d == 0)
            throw DirectionError("direction is orthogonal to adjugate column " +
                                 std::to_string(k));
        dVals_[k] = d;
        rVals_[k] = ctx_.element_order(ctx_.gens[k]);
    }
    table_.assign(ctx_.order(), LaurentPoly{});
    table_[0] = LaurentPoly::monomial(1, 0);
}

Int GroupDp::chi() const {
    Int m = 0;
    for (const Int& d : dVals_) m = std::max(m, abs_int(d));
    return m;
}

void GroupDp::step(bool smart, bool parallelCosets) {
    if (level_ >= levels()) throw std::logic_error("group dp: all levels already done");
    const std::size_t k = level_;
    const long d = checked_long(dVals_[k], "direction coefficient");
    const unsigned long r = rVals_[k].get_ui();
    const long rd = checked_long(rVals_[k] * dVals_[k], "period shift");
    const std::size_t n = ctx_.diagUl.size();
    const std::size_t m = ctx_.order();

    std::vector<unsigned long> goff(n), negoff(n);
    for (std::size_t l = 0; l < n; ++l) {
        goff[l] = ctx_.gens[k][l].get_ui();
        negoff[l] = goff[l] ? ctx_.diagUl[l] - goff[l] : 0;
    }

    LevelTable next(m);
    if (smart) {
        std::vector<std::size_t> addIdx = index_map_for_offset(ctx_, goff);
        std::vector<char> visited(m, 0);
        std::vector<std::vector<std::size_t>> cosets;
        for (std::size_t e0 = 0; e0 < m; ++e0) {
            if (visited[e0]) continue;
            std::vector<std::size_t> chain;
            std::size_t e = e0;
            do {
                chain.push_back(e);
                visited[e] = 1;
                e = addIdx[e];
            } while (e != e0);
            if (chain.size() != r) throw std::logic_error("group dp: coset size mismatch");
            cosets.push_back(std::move(chain));
        }
        const long numCosets = static_cast<long>(cosets.size());
#pragma omp parallel for schedule(dynamic) if (parallelCosets)
        for (long ci = 0; ci < numCosets; ++ci) {
            const std::vector<std::size_t>& chain = cosets[static_cast<std::size_t>(ci)];
            // One full convolution seeds the coset, then each later entry is a
            // three-term update: multiplying by x^d advances the window by one
            // slot, the fresh slot enters once, and the slot that wrapped a
            // whole period ago leaves with weight x^(r d).
            LaurentPoly h = table_[chain[0]];
            for (unsigned long s = 1; s < r; ++s)
                h = h + table_[chain[r - s]].shifted(static_cast<long>(s) * d);
            next[chain[0]] = std::move(h);
            for (unsigned long j = 1; j < r; ++j) {
                const LaurentPoly& f = table_[chain[j]];
                next[chain[j]] = next[chain[j - 1]].shifted(d) + f - f.shifted(rd);
            }
        }
    } else {
        std::vector<std::size_t> subIdx = index_map_for_offset(ctx_, negoff);
        for (std::size_t gp = 0; gp < m; ++gp) {
            LaurentPoly acc = table_[gp];
            std::size_t cur = gp;
            for (unsigned long s = 1; s < r; ++s) {
                cur = subIdx[cur];
                acc = acc + table_[cur].shifted(static_cast<long>(s) * d);
            }
            next[gp] = std::move(acc);
        }
    }
    table_ = std::move(next);
    ++level_;
}

ShortRatExpFun GroupDp::finish() const {
    if (level_ != levels()) throw std::logic_error("group dp: levels remain");
    const std::size_t n = levels();
    const LaurentPoly& num = table_[ctx_.index_of(ctx_.g0)];
    if (num.zero()) throw std::logic_error("group dp: empty numerator");

    // Mass check: summed over the whole group the table carries one monomial
    // per tuple of slack residues, and the fibers of the residue map all have
    // the same size prod(r_l) / delta.
    Int sumEps = 0;
    for (const Int& cf : num.coeffs) {
        if (cf < 0) throw std::logic_error("group dp: negative numerator coefficient");
        sumEps += cf;
    }
    Int prodR = 1;
    for (const Int& r : rVals_) prodR *= r;
    if (sumEps * ctx_.delta != prodR) throw std::logic_error("group dp: numerator mass mismatch");

    Int window = Int(static_cast<unsigned long>(n)) * ctx_.sigma * chi();
    std::vector<Int> ab = mat_vec(aStar_, bVec_);
    Int cb = 0;
    for (std::size_t i = 0; i < n; ++i) cb += cVec_[i] * ab[i];

    ShortRatExpFun f;
    f.delta = ctx_.delta;
    f.sigma = ctx_.sigma;
    f.chi = chi();
    for (std::size_t i = 0; i < num.coeffs.size(); ++i) {
        if (num.coeffs[i] == 0) continue;
        Int mI(num.low + static_cast<long>(i));
        if (abs_int(mI) > window) throw std::logic_error("group dp: numerator outside window");
        f.numerator.push_back({num.coeffs[i], make_rat(cb - mI, ctx_.delta)});
    }
    for (std::size_t l = 0; l < n; ++l)
        f.denominator.push_back(make_rat(-(rVals_[l] * dVals_[l]), ctx_.delta));
    return f;
}

ShortRatExpFun cone_genfun(const Matrix& a, const std::vector<Int>& b,
                           const std::vector<Int>& c) {
    GroupDp dp(a, b, c);
    while (dp.level() < dp.levels()) dp.step(true, true);
    return dp.finish();
}

ShortRatExpFun cone_genfun_naive(const Matrix& a, const std::vector<Int>& b,
                                 const std::vector<Int>& c) {
    GroupDp dp(a, b, c);
    while (dp.level() < dp.levels()) dp.step(false, false);
    return dp.finish();
}

namespace {

using Series = std::vector<Rat>;  // coefficients 0..deg of a power series

Series series_mul(const Series& a, const Series& b, std::size_t deg) {
    Series r(deg + 1, Rat(0));
    for (std::size_t i = 0; i <= deg && i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; i + j <= deg && j < b.size(); ++j) {
            if (b[j] == 0) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

Series series_inv(const Series& a, std::size_t deg) {
    if (a.empty() || a[0] == 0) throw std::invalid_argument("series has no inverse");
    Series r(deg + 1, Rat(0));
    r[0] = Rat(1) / a[0];
    for (std::size_t k = 1; k <= deg; ++k) {
        Rat s(0);
        for (std::size_t j = 1; j <= k && j < a.size(); ++j) s += a[j] * r[k - j];
        Rat t = s / a[0];
        r[k] = -t;
    }
    return r;
}

// Series of (1 - e^(b t)) / (-b t): coefficient k is b^k / (k+1)!.
Series denominator_factor_series(const Rat& beta, std::size_t deg) {
    Series e(deg + 1, Rat(0));
    Rat pw(1);
    Rat fact(1);  // (k+1)!
    for (std::size_t k = 0; k <= deg; ++k) {
        e[k] = pw / fact;
        pw *= beta;
        fact *= Rat(static_cast<unsigned long>(k + 2));
    }
    return e;
}

Rat numerator_value_at_zero(const ShortRatExpFun& f) {
    Rat s(0);
    for (const NumeratorTerm& t : f.numerator) s += Rat(t.eps);
    return s;
}

}  // namespace

std::vector<Rat> todd_polynomials(const std::vector<Rat>& betas, std::size_t upToDegree) {
    Series result(upToDegree + 1, Rat(0));
    result[0] = 1;
    for (const Rat& beta : betas) {
        // (1 - e^(-x)) / x at x = beta t, then inverted.
        Series q(upToDegree + 1, Rat(0));
        Rat pw(1);
        Rat fact(1);
        for (std::size_t k = 0; k <= upToDegree; ++k) {
            q[k] = pw / fact;
            if (k % 2 == 1) q[k] = -q[k];
            pw *= beta;
            fact *= Rat(static_cast<unsigned long>(k + 2));
        }
        result = series_mul(result, series_inv(q, upToDegree), upToDegree);
    }
    return result;
}

Rat constant_term(const ShortRatExpFun& f) {
    const std::size_t n = f.denominator.size();
    if (n == 0) return numerator_value_at_zero(f);

    // Pull -beta_l t out of each denominator factor: the product becomes
    // prod(-beta_l) * t^n * E(t) with E(0) = 1, so the constant coefficient
    // of f is the t^n coefficient of N(t) / E(t), scaled by 1/prod(-beta_l).
    Series num(n + 1, Rat(0));
    for (const NumeratorTerm& t : f.numerator) {
        Rat pw(t.eps);
        for (std::size_t j = 0; j <= n; ++j) {
            num[j] += pw;
            pw = pw * t.alpha / Rat(static_cast<unsigned long>(j + 1));
        }
    }
    Series den(n + 1, Rat(0));
    den[0] = 1;
    Rat lead(1);
    for (const Rat& beta : f.denominator) {
        if (beta == 0) throw std::invalid_argument("denominator exponent must be nonzero");
        lead *= -beta;
        den = series_mul(den, denominator_factor_series(beta, n), n);
    }
    Series quot = series_mul(num, series_inv(den, n), n);
    return quot[n] / lead;
}

Rat constant_term_todd(const ShortRatExpFun& f) {
    const std::size_t n = f.denominator.size();
    if (n == 0) return numerator_value_at_zero(f);
    std::vector<Rat> negb;
    negb.reserve(n);
    Rat lead(1);
    for (const Rat& beta : f.denominator) {
        if (beta == 0) throw std::invalid_argument("denominator exponent must be nonzero");
        negb.push_back(-beta);
        lead *= -beta;
    }
    std::vector<Rat> td = todd_polynomials(negb, n);
    Rat total(0);
    for (const NumeratorTerm& t : f.numerator) {
        Rat pw(t.eps);
        for (std::size_t j = 0; j <= n; ++j) {
            total += pw * td[n - j];
            pw = pw * t.alpha / Rat(static_cast<unsigned long>(j + 1));
        }
    }
    return total / lead;
}

BigFloat evaluate_numeric(const ShortRatExpFun& f, const BigFloat& tau) {
    if (!f.denominator.empty() && tau <= BigFloat::of(0L))
        throw std::domain_error("evaluation needs tau > 0 with a nonempty denominator");
    BigFloat num = BigFloat::of(0L);
    for (const NumeratorTerm& t : f.numerator)
        num = num + BigFloat::of(Rat(t.eps)) * (BigFloat::of(t.alpha) * tau).exp();
    BigFloat den = BigFloat::of(1L);
    for (const Rat& beta : f.denominator)
        den = den * (BigFloat::of(1L) - (BigFloat::of(beta) * tau).exp());
    return num / den;
}

BigFloat evaluate_numeric(const ShortRatExpFun& f, const Rat& tau) {
    if (!f.denominator.empty() && tau <= 0)
        throw std::domain_error("evaluation needs tau > 0 with a nonempty denominator");
    return evaluate_numeric(f, BigFloat::of(tau));
}

}  // namespace latcount
