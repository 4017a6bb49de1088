#include "doctest.h"

#include <cmath>

#include "latcount/errors.hpp"
#include "latcount/genfun.hpp"
#include "test_util.hpp"

using namespace latcount;
using testutil::ints;
using testutil::mat;
using testutil::Rng;

namespace {

bool same_fun(const ShortRatExpFun& f, const ShortRatExpFun& g) {
    if (f.numerator.size() != g.numerator.size()) return false;
    for (std::size_t i = 0; i < f.numerator.size(); ++i) {
        if (f.numerator[i].eps != g.numerator[i].eps) return false;
        if (f.numerator[i].alpha != g.numerator[i].alpha) return false;
    }
    return f.denominator == g.denominator;
}

// lattice-width sum: directly add e^(x tau) over the integer points of the
// 1-dimensional cone {x <= ub} down to a cutoff
double direct_ray_sum(long ub, double tau, int terms) {
    double s = 0;
    for (int k = 0; k < terms; ++k) s += std::exp(static_cast<double>(ub - k) * tau);
    return s;
}

}  // namespace

TEST_CASE("laurent polynomial arithmetic") {
    LaurentPoly a = LaurentPoly::monomial(Int(3), -2);
    LaurentPoly b = LaurentPoly::monomial(Int(-3), -2);
    CHECK((a + b).zero());

    LaurentPoly c = LaurentPoly::monomial(Int(1), 0);
    LaurentPoly d = c + LaurentPoly::monomial(Int(2), 3);
    CHECK(d.low == 0);
    CHECK(d.coeffs.size() == 4);
    CHECK(d.coeffs[0] == 1);
    CHECK(d.coeffs[3] == 2);

    LaurentPoly e = d.shifted(-5);
    CHECK(e.low == -5);
    CHECK(e.coeffs == d.coeffs);

    CHECK((d - d).zero());
    CHECK(d == d.shifted(2).shifted(-2));
    CHECK_FALSE(d == e);
}

TEST_CASE("group context from the smith form") {
    Matrix a = mat({{1, 0}, {1, 2}});
    GroupContext ctx = make_group_context(a, ints({1, 1}));
    CHECK(ctx.delta == 2);
    CHECK(ctx.sigma == 2);
    CHECK(ctx.order() == 2);

    for (std::size_t i = 0; i < ctx.order(); ++i)
        CHECK(ctx.index_of(ctx.residue_of(i)) == i);

    std::vector<Int> id(ctx.diag.size(), Int(0));
    CHECK(ctx.element_order(id) == 1);
    bool sawOrder2 = false;
    for (std::size_t i = 0; i < ctx.order(); ++i)
        if (ctx.element_order(ctx.residue_of(i)) == 2) sawOrder2 = true;
    CHECK(sawOrder2);

    SUBCASE("group order beyond the work budget is refused") {
        Matrix big = mat({{4000, 0}, {0, 4000}});
        CHECK_THROWS_AS(make_group_context(big, ints({0, 0})), BudgetError);
    }

    CHECK_THROWS_AS(make_group_context(mat({{1, 2}, {2, 4}}), ints({0, 0})),
                    std::invalid_argument);
}

TEST_CASE("one dimensional cones have the classic closed forms") {
    SUBCASE("x <= 0 with weight 1") {
        ShortRatExpFun f = cone_genfun(mat({{1}}), ints({0}), ints({1}));
        CHECK(f.delta == 1);
        REQUIRE(f.denominator.size() == 1);
        CHECK(f.denominator[0] == Rat(-1));
        REQUIRE(f.numerator.size() == 1);
        CHECK(f.numerator[0].eps == 1);
        CHECK(f.numerator[0].alpha == 0);
        CHECK(constant_term(f) == Rat(1, 2));
    }

    SUBCASE("x <= 5 shifts the numerator exponent") {
        ShortRatExpFun f = cone_genfun(mat({{1}}), ints({5}), ints({1}));
        REQUIRE(f.numerator.size() == 1);
        CHECK(f.numerator[0].alpha == 5);
        CHECK(constant_term(f) == Rat(11, 2));
    }

    SUBCASE("2x <= 1 equals x <= 0 on the integers") {
        ShortRatExpFun f = cone_genfun(mat({{2}}), ints({1}), ints({1}));
        CHECK(f.delta == 2);
        ShortRatExpFun ref = cone_genfun(mat({{1}}), ints({0}), ints({1}));
        CHECK(constant_term(f) == constant_term(ref));
        BigFloat diff =
            (evaluate_numeric(f, Rat(1)) - evaluate_numeric(ref, Rat(1))).abs();
        CHECK(diff.to_double() < 1e-40);
    }
}

TEST_CASE("product cone splits into denominator factors") {
    ShortRatExpFun f = cone_genfun(Matrix::identity(2), ints({0, 0}), ints({1, 1}));
    CHECK(f.denominator.size() == 2);
    CHECK(f.denominator[0] == Rat(-1));
    CHECK(f.denominator[1] == Rat(-1));
    CHECK(constant_term(f) == Rat(5, 12));
}

TEST_CASE("direction with a zero inner product is rejected") {
    CHECK_THROWS_AS(cone_genfun(Matrix::identity(2), ints({0, 0}), ints({1, 0})),
                    DirectionError);
    CHECK_THROWS_AS(cone_genfun_naive(Matrix::identity(2), ints({0, 0}), ints({0, 1})),
                    DirectionError);
}

TEST_CASE("sliding window and naive convolution agree level by level") {
    struct Fixture {
        Matrix a;
        std::vector<Int> b, c;
    };
    std::vector<Fixture> fixtures = {
        {mat({{1, 0}, {1, 2}}), ints({1, 1}), ints({1, 1})},
        {mat({{2, 1}, {1, 1}}), ints({3, 2}), ints({3, 2})},
        {mat({{3, 1}, {0, 2}}), ints({2, 5}), ints({1, -2})},
        {mat({{5, 2, 1}, {0, 5, 3}, {0, 0, 5}}), ints({4, 3, 2}), ints({1, 2, 5})},
    };
    for (const Fixture& fx : fixtures) {
        GroupDp smart(fx.a, fx.b, fx.c);
        GroupDp naive(fx.a, fx.b, fx.c);
        REQUIRE(smart.levels() == naive.levels());
        for (std::size_t l = 0; l < smart.levels(); ++l) {
            smart.step(true, false);
            naive.step(false, false);
            REQUIRE(smart.table().size() == naive.table().size());
            for (std::size_t t = 0; t < smart.table().size(); ++t)
                CHECK(smart.table()[t] == naive.table()[t]);
        }
        CHECK(same_fun(smart.finish(), naive.finish()));
        CHECK(same_fun(cone_genfun(fx.a, fx.b, fx.c), cone_genfun_naive(fx.a, fx.b, fx.c)));
    }
}

TEST_CASE("parallel coset update matches the serial one") {
    Matrix a = mat({{2, 1}, {1, 1}});
    GroupDp par(a, ints({3, 2}), ints({3, 2}));
    GroupDp ser(a, ints({3, 2}), ints({3, 2}));
    for (std::size_t l = 0; l < par.levels(); ++l) {
        par.step(true, true);
        ser.step(true, false);
        for (std::size_t t = 0; t < par.table().size(); ++t)
            CHECK(par.table()[t] == ser.table()[t]);
    }
}

TEST_CASE("random lockstep comparison over small determinants") {
    Rng rng(21);
    int done = 0;
    while (done < 25) {
        std::size_t n = static_cast<std::size_t>(rng.range(1, 3));
        Matrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.range(-3, 3);
        Int d = det_exact(a);
        if (d == 0 || abs_int(d) > 20) continue;
        std::vector<Int> b(n), c(n);
        for (std::size_t j = 0; j < n; ++j) b[j] = rng.range(-4, 4);
        // direction via the adjugate: c = A^T w keeps every <c, h_i> nonzero
        Matrix at = a.transposed();
        std::vector<Int> w(n);
        for (std::size_t j = 0; j < n; ++j) w[j] = rng.range(1, 3);
        for (std::size_t i = 0; i < n; ++i) {
            c[i] = 0;
            for (std::size_t j = 0; j < n; ++j) c[i] += at(i, j) * w[j];
        }
        CHECK(same_fun(cone_genfun(a, b, c), cone_genfun_naive(a, b, c)));
        ++done;
    }
}

TEST_CASE("todd coefficients match the defining series") {
    SUBCASE("single unit weight") {
        auto td = todd_polynomials({Rat(1)}, 4);
        REQUIRE(td.size() == 5);
        CHECK(td[0] == Rat(1));
        CHECK(td[1] == Rat(1, 2));
        CHECK(td[2] == Rat(1, 12));
        CHECK(td[3] == Rat(0));
        CHECK(td[4] == Rat(-1, 720));
    }

    SUBCASE("squared factor") {
        auto td = todd_polynomials({Rat(1), Rat(1)}, 3);
        CHECK(td[0] == Rat(1));
        CHECK(td[1] == Rat(1));
        CHECK(td[2] == Rat(5, 12));
        CHECK(td[3] == Rat(1, 12));
    }

    SUBCASE("mixed weights") {
        auto td = todd_polynomials({Rat(1), Rat(2)}, 2);
        CHECK(td[0] == Rat(1));
        CHECK(td[1] == Rat(3, 2));
        CHECK(td[2] == Rat(11, 12));
    }

    SUBCASE("negative weight flips only odd terms") {
        auto plus = todd_polynomials({Rat(1)}, 4);
        auto minus = todd_polynomials({Rat(-1)}, 4);
        for (int k = 0; k <= 4; ++k)
            CHECK(minus[k] == (k % 2 ? -plus[k] : plus[k]));
    }
}

TEST_CASE("constant term via series division and via todd agree") {
    SUBCASE("hand built functions") {
        ShortRatExpFun f;
        f.numerator = {{Int(1), Rat(5)}};
        f.denominator = {Rat(-1)};
        CHECK(constant_term(f) == Rat(11, 2));
        CHECK(constant_term_todd(f) == Rat(11, 2));

        ShortRatExpFun g;
        g.numerator = {{Int(1), Rat(0)}};
        g.denominator = {Rat(1)};
        CHECK(constant_term(g) == Rat(1, 2));
        CHECK(constant_term_todd(g) == Rat(1, 2));

        ShortRatExpFun h;
        h.numerator = {{Int(2), Rat(1, 2)}, {Int(-1), Rat(-3)}};
        h.denominator = {Rat(-1), Rat(2), Rat(-1, 3)};
        CHECK(constant_term(h) == constant_term_todd(h));
    }

    SUBCASE("random functions") {
        Rng rng(22);
        for (int trial = 0; trial < 30; ++trial) {
            ShortRatExpFun f;
            int terms = static_cast<int>(rng.range(1, 4));
            for (int t = 0; t < terms; ++t)
                f.numerator.push_back(
                    {Int(rng.range(-5, 5)), make_rat(Int(rng.range(-6, 6)), Int(rng.range(1, 4)))});
            int dens = static_cast<int>(rng.range(1, 4));
            for (int d = 0; d < dens; ++d) {
                Int num(rng.range(1, 5) * (rng.range(0, 1) ? 1 : -1));
                f.denominator.push_back(make_rat(num, Int(rng.range(1, 3))));
            }
            CHECK(constant_term(f) == constant_term_todd(f));
        }
    }
}

TEST_CASE("numeric evaluation matches direct lattice sums") {
    ShortRatExpFun f = cone_genfun(mat({{1}}), ints({3}), ints({1}));
    double tau = 1.0;
    double direct = direct_ray_sum(3, tau, 200);
    CHECK(std::abs(evaluate_numeric(f, Rat(1)).to_double() - direct) < 1e-9);

    // rational and bigfloat arguments agree
    BigFloat a = evaluate_numeric(f, Rat(1, 2));
    BigFloat b = evaluate_numeric(f, BigFloat::of(Rat(1, 2)));
    CHECK((a - b).abs().to_double() < 1e-60);
    CHECK(std::abs(a.to_double() - direct_ray_sum(3, 0.5, 400)) < 1e-9);
}
