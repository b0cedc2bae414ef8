#include "eusys/hecke/lfactor.hpp"

#include <gtest/gtest.h>

using namespace eusys;
using namespace eusys::hecke;

TEST(Spin, CoefficientsVerbatim)
{
    for (long ell : {2L, 3L, 5L}) {
        Poly L = Poly::var(Var::lam), M = Poly::var(Var::mu), W = Poly::var(Var::om);
        auto p = p_spin_poly(ell, L, M, W);
        ASSERT_EQ(p.size(), 5u);
        BigRat l(ell);
        SqrtPrimeExt l32 = SqrtPrimeExt(ell, 0, 1 / (l * l));   // l^{-3/2} = l^{-2} sqrt(l)
        EXPECT_EQ(p[0], Poly(1));
        EXPECT_EQ(p[1], Poly(-l32) * L);
        EXPECT_EQ(p[2], Poly(SqrtPrimeExt(1 / (l * l))) * M + Poly(SqrtPrimeExt(1 + 1 / (l * l))) * W);
        EXPECT_EQ(p[3], Poly(-l32) * W * L);
        EXPECT_EQ(p[4], W * W);
    }
}

TEST(Spin, ZeroCase)
{
    auto p = p_spin_poly(3, Poly(0), Poly(0), Poly(1));
    EXPECT_EQ(p[1], Poly(0));
    EXPECT_EQ(p[2], Poly(SqrtPrimeExt(make_rat(10, 9))));
    EXPECT_EQ(p[3], Poly(0));
    EXPECT_EQ(p[4], Poly(1));
}

TEST(Nov, UnitGl2GivesSpinSquared)
{
    Poly L = Poly::var(Var::lam), M = Poly::var(Var::mu), W = Poly::var(Var::om);
    auto s = p_spin_poly(2, L, M, W);
    auto n = p_nov_poly(2, L, M, W, Poly(1), Poly(1));
    EXPECT_TRUE(xpoly_is_zero(xpoly_sub(n, xpoly_mul(s, s))));
    EXPECT_EQ(n.size(), 9u);
    EXPECT_EQ(n[0], Poly(1));
}

TEST(Nov, FactorizationAtTwoAndThree)
{
    for (long ell : {2L, 3L}) {
        auto r = verify_nov_factorization(ell);
        EXPECT_TRUE(r.spin_pass);
        EXPECT_TRUE(r.nov_pass);
        EXPECT_TRUE(xpoly_is_zero(r.residual));
    }
    auto bad = verify_nov_factorization(2, true);
    EXPECT_FALSE(bad.pass());
    EXPECT_FALSE(xpoly_is_zero(bad.residual));
}

TEST(Grading, PrimedAndUnprimed)
{
    for (long ell : {2L, 3L}) {
        auto r = multiplier_grading_check(ell, true);
        EXPECT_TRUE(r.pass);
        EXPECT_EQ(r.x5_gsp4_part, (std::vector<std::string>{"S'T'R'", "S'^2T'"}));
        EXPECT_EQ(r.valuations[0], std::vector<int>{0});
        EXPECT_TRUE(multiplier_grading_check(ell, false).pass);
    }
    auto v = multiplier_valuations(2, false);
    EXPECT_EQ(v, (std::array<int, 3>{1, 2, 2}));
}
