#include <doctest.h>

#include "multiplane/exactmath.hpp"

#include <random>

using namespace multiplane;

namespace {

FieldElement w_elem(long a, long b)
{
    return FieldElement(NumberField::eisenstein(), {Fraction(a), Fraction(b)});
}

RationalMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c)
{
    std::uniform_int_distribution<int> d(-3, 3);
    RationalMatrix m(r, c, Fraction(0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = d(rng);
    // force some dependency
    if (r >= 3)
        for (std::size_t j = 0; j < c; ++j)
            m(2, j) = m(0, j) + 2 * m(1, j);
    return m;
}

}  // namespace

TEST_CASE("fraction helpers")
{
    CHECK(floor_of(Fraction(-1, 2)) == -1);
    CHECK(ceil_of(Fraction(-1, 2)) == 0);
    CHECK(frac_part(Fraction(-1, 3)) == Fraction(2, 3));
    CHECK(left_floor(Fraction(3)) == 2);
    CHECK(left_floor(Fraction(7, 2)) == 3);
    CHECK(parse_fraction(" -6/4 ") == Fraction(-3, 2));
    CHECK_THROWS_AS(parse_fraction("1/0"), MathError);
    CHECK_THROWS_AS(parse_fraction("abc"), MathError);
}

TEST_CASE("rank of trivial matrices")
{
    RationalMatrix id(2, 2, Fraction(0));
    id(0, 0) = 1;
    id(1, 1) = 1;
    CHECK(rank(id) == 2);
    CHECK(rank(RationalMatrix(3, 4, Fraction(0))) == 0);
}

TEST_CASE("eisenstein field arithmetic")
{
    auto K = NumberField::eisenstein();
    const FieldElement w = FieldElement::generator(K);
    const FieldElement one(K, Fraction(1));
    CHECK(field_arithmetic(w, w * w, FieldOp::mul) == one);
    CHECK(field_arithmetic(w, w * w, FieldOp::add) == -one);
    CHECK(field_arithmetic(one + w, one, FieldOp::inv) == -w);
    CHECK_THROWS_AS(FieldElement(K).inverse(), MathError);
    CHECK(K->irreducibility_verified());
    CHECK_THROWS_AS(NumberField({1, 0, -1}), MathError);
    CHECK_FALSE(NumberField({1, 0, 0, 0, 0, 2}).irreducibility_verified());
}

TEST_CASE("field axioms on random triples")
{
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-5, 5);
    for (int it = 0; it < 50; ++it) {
        FieldElement a = w_elem(d(rng), d(rng)), b = w_elem(d(rng), d(rng)), c = w_elem(d(rng), d(rng));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        if (!a.is_zero()) {
            CHECK(a * a.inverse() == FieldElement(a.field(), Fraction(1)));
            CHECK(a.inverse() * a == FieldElement(a.field(), Fraction(1)));
        }
    }
}

TEST_CASE("rank-nullity on random rational matrices")
{
    std::mt19937 rng(11);
    for (int it = 0; it < 40; ++it) {
        std::size_t r = 1 + rng() % 5, c = 1 + rng() % 6;
        auto m = random_matrix(rng, r, c);
        auto ker = kernel(m);
        CHECK(rank(m) + ker.size() == c);
        for (const auto& v : ker)
            for (std::size_t i = 0; i < r; ++i) {
                Fraction s = 0;
                for (std::size_t j = 0; j < c; ++j)
                    s += m(i, j) * v[j];
                CHECK(s == 0);
            }
    }
}

TEST_CASE("solve_affine")
{
    SUBCASE("line x + y = 2")
    {
        RationalMatrix a(1, 2, Fraction(1));
        FractionVector b{Fraction(2)};
        auto s = solve_affine(a, b);
        REQUIRE(s);
        CHECK(s->dimension() == 1);
        CHECK(s->contains(FractionVector{Fraction(2), Fraction(0)}));
        CHECK(s->contains(FractionVector{Fraction(0), Fraction(2)}));
        CHECK_FALSE(s->contains(FractionVector{Fraction(1), Fraction(0)}));
    }
    SUBCASE("inconsistent")
    {
        RationalMatrix a(2, 1, Fraction(1));
        FractionVector b{Fraction(0), Fraction(1)};
        CHECK_FALSE(solve_affine(a, b));
    }
    SUBCASE("substitution property")
    {
        std::mt19937 rng(3);
        for (int it = 0; it < 30; ++it) {
            std::size_t r = 1 + rng() % 4, c = 2 + rng() % 4;
            auto a = random_matrix(rng, r, c);
            FractionVector x0(c);
            for (auto& v : x0)
                v = make_fraction(long(rng() % 7) - 3, 1 + long(rng() % 3));
            FractionVector b(r);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < c; ++j)
                    b[i] += a(i, j) * x0[j];
            auto s = solve_affine(a, b);
            REQUIRE(s);
            CHECK(s->contains(x0));
            for (std::size_t i = 0; i < r; ++i) {
                Fraction lhs = 0;
                for (std::size_t j = 0; j < c; ++j)
                    lhs += a(i, j) * s->base_point[j];
                CHECK(lhs == b[i]);
                for (const auto& d : s->direction_basis) {
                    Fraction ad = 0;
                    for (std::size_t j = 0; j < c; ++j)
                        ad += a(i, j) * d[j];
                    CHECK(ad == 0);
                }
            }
        }
    }
}

TEST_CASE("half-open box feasibility")
{
    // x + y = 2 touches [0,1)^2 only at the excluded corner (1,1)
    RationalMatrix a(1, 2, Fraction(1));
    auto s = solve_affine(a, FractionVector{Fraction(2)});
    CHECK_FALSE(meets_half_open_box(*s));
    auto s2 = solve_affine(a, FractionVector{Fraction(3, 2)});
    CHECK(meets_half_open_box(*s2));
    // 4x + y = 4 meets the box for x in (3/4, 1); 4x + y = 5 does not
    RationalMatrix w(1, 2, Fraction(1));
    w(0, 0) = 4;
    CHECK(meets_half_open_box(*solve_affine(w, FractionVector{Fraction(4)})));
    CHECK_FALSE(meets_half_open_box(*solve_affine(w, FractionVector{Fraction(5)})));
}

TEST_CASE("lp with negative right-hand side")
{
    // maximize x subject to -x <= -1 (x >= 1), x <= 3
    RationalMatrix a(0, 0, Fraction(0));
    a.append_row(FractionVector{Fraction(-1)});
    a.append_row(FractionVector{Fraction(1)});
    auto r = maximize_lp(a, FractionVector{Fraction(-1), Fraction(3)}, FractionVector{Fraction(1)});
    REQUIRE(r.status == LpResult::Status::optimal);
    CHECK(r.value == 3);
    auto bad = maximize_lp(a, FractionVector{Fraction(-4), Fraction(3)}, FractionVector{Fraction(1)});
    CHECK(bad.status == LpResult::Status::infeasible);
}

TEST_CASE("negative definiteness and inverse")
{
    RationalMatrix m(2, 2, Fraction(0));
    m(0, 0) = -2;
    m(0, 1) = 1;
    m(1, 0) = 1;
    m(1, 1) = -1;
    CHECK(is_negative_definite(m));
    auto inv = inverse(m);
    CHECK(inv(0, 0) == -1);
    CHECK(inv(1, 1) == -2);
    m(1, 1) = 0;
    CHECK_FALSE(is_negative_definite(m));
}
