#include "eusys/arith/finab.hpp"
#include "eusys/arith/laurent.hpp"
#include "eusys/arith/snf.hpp"
#include "eusys/arith/sqrt_ext.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace eusys;

namespace {

BigRat rnd_rat(std::mt19937_64& g)
{
    std::uniform_int_distribution<long> n(-20, 20), d(1, 9);
    return make_rat(n(g), d(g));
}

CycNum rnd_cyc(std::mt19937_64& g, int m)
{
    std::vector<BigRat> c;
    for (int i = 0; i < detail::euler_phi(m); ++i) c.push_back(rnd_rat(g));
    return CycNum(m, c);
}

} // namespace

TEST(BigRat, ValuationAndResidue)
{
    EXPECT_EQ(valuation(make_rat(12, 5), 2), 2);
    EXPECT_EQ(valuation(make_rat(5, 12), 2), -2);
    EXPECT_EQ(valuation(BigRat(0), 3), kValInf);
    EXPECT_EQ(residue(make_rat(1, 3), 2, 3), 3);   // 3*3 = 9 = 1 mod 8
    EXPECT_EQ(to_string(make_rat(-6, 4)), "-3/2");
}

TEST(SqrtExt, NormIdentity)
{
    std::mt19937_64 g(7);
    for (int i = 0; i < 100; ++i) {
        BigRat a = rnd_rat(g), b = rnd_rat(g);
        SqrtPrimeExt x(3, a, b), y(3, a, -b);
        EXPECT_EQ(x * y, SqrtPrimeExt(BigRat(a * a - 3 * b * b)));
    }
}

TEST(SqrtExt, HalfPowers)
{
    auto s = SqrtPrimeExt::half_power(2, 3);
    EXPECT_EQ(s * s, SqrtPrimeExt(BigRat(8)));
    auto t = SqrtPrimeExt::half_power(2, -3);
    EXPECT_EQ(s * t, SqrtPrimeExt(1));
    EXPECT_EQ(SqrtPrimeExt::half_power(5, -4), SqrtPrimeExt(make_rat(1, 25)));
}

TEST(SqrtExt, RingAxiomsRandom)
{
    std::mt19937_64 g(11);
    for (int i = 0; i < 50; ++i) {
        SqrtPrimeExt a(5, rnd_rat(g), rnd_rat(g)), b(5, rnd_rat(g), rnd_rat(g)), c(5, rnd_rat(g), rnd_rat(g));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), SqrtPrimeExt(1));
    }
}

TEST(CycNum, RootsOfUnity)
{
    EXPECT_EQ(CycNum::zeta(4, 1) * CycNum::zeta(4, 1), CycNum(-1));
    EXPECT_EQ(CycNum::zeta(6, 1).pow(6), CycNum(1));
    EXPECT_EQ(CycNum::zeta(12, 3), CycNum::zeta(4, 1));
    EXPECT_TRUE((CycNum::zeta(3, 1) + CycNum::zeta(3, 2)).is_rational());
    EXPECT_EQ((CycNum::zeta(3, 1) + CycNum::zeta(3, 2)).rational_value(), BigRat(-1));
}

TEST(CycNum, SqrtPrimes)
{
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
        CycNum s = cyc_sqrt_prime(p);
        EXPECT_EQ(s * s, CycNum(p)) << p;
        EXPECT_GT(s.to_complex().real(), 0.0);
        EXPECT_NEAR(s.to_complex().imag(), 0.0, 1e-9);
    }
}

TEST(CycNum, RingAxiomsAndInverse)
{
    std::mt19937_64 g(3);
    for (int i = 0; i < 30; ++i) {
        CycNum a = rnd_cyc(g, 12), b = rnd_cyc(g, 8), c = rnd_cyc(g, 5);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), CycNum(1));
        EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
    }
}

TEST(MultiLaurent, ArithmeticAndEval)
{
    using ML = MultiLaurent<SqrtPrimeExt>;
    ML p = ML::var(Var::x1) * ML::var(Var::x2) * ML::var(Var::x0, 2);
    std::map<int, SqrtPrimeExt> one{{Var::x0, 1}, {Var::x1, 1}, {Var::x2, 1}};
    auto v = laurent_eval(p, one, [](const SqrtPrimeExt& c) { return c; });
    EXPECT_EQ(v, MultiLaurent<SqrtPrimeExt>(1));
    ML q = ML::var(Var::x1, -1) * ML::var(Var::x1);
    EXPECT_EQ(q, ML(1));
    EXPECT_THROW(ML::var(Var::x1, 65), ExponentOverflow);
    std::mt19937_64 g(5);
    for (int i = 0; i < 20; ++i) {
        auto r = [&] {
            ML s;
            for (int k = 0; k < 3; ++k) {
                ExpVec e{};
                e[g() % 3] = static_cast<int>(g() % 5) - 2;
                s.add_term(e, SqrtPrimeExt(2, rnd_rat(g), rnd_rat(g)));
            }
            return s;
        };
        ML a = r(), b = r(), c = r();
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
    }
}

TEST(MultiLaurent, EvalZeroCase)
{
    using ML = MultiLaurent<SqrtPrimeExt>;
    ML p = ML(1) - ML(SqrtPrimeExt::half_power(2, -3)) * ML::var(Var::lam) * ML::var(Var::X);
    auto v = laurent_eval(p, std::map<int, SqrtPrimeExt>{{Var::lam, 0}}, [](const SqrtPrimeExt& c) { return c; });
    EXPECT_EQ(v, MultiLaurent<SqrtPrimeExt>(1));
    EXPECT_THROW(laurent_eval(p, std::map<int, SqrtPrimeExt>{}, [](const SqrtPrimeExt& c) { return c; }),
                 std::invalid_argument);
}

TEST(FinAb, QuotientP)
{
    auto q = finab_quotient_p(FinAbGroup({6}), 3);
    EXPECT_EQ(q.target.orders(), (std::vector<long long>{3}));
    auto q2 = finab_quotient_p(FinAbGroup({4, 2}), 2);
    EXPECT_EQ(q2.target.orders(), (std::vector<long long>{4, 2}));
    auto q3 = finab_quotient_p(FinAbGroup({12, 10}), 5);
    EXPECT_EQ(q3.target.order(), 5);
    // composing over two primes
    FinAbGroup G({12, 10});
    auto a = finab_quotient_p(G, 2), b = finab_quotient_p(G, 3);
    EXPECT_EQ(a.target.order() * b.target.order() * finab_quotient_p(G, 5).target.order(), G.order());
    auto ab = finab_quotient_p(a.target, 3);
    EXPECT_EQ(ab.target.order(), 1);
}

TEST(FinAb, SmithPresentation)
{
    // Z^2 / <(2,0),(0,3)> = Z/6
    std::vector<std::vector<BigInt>> R{{2, 0}, {0, 3}};
    auto P = smith_presentation(R, 2);
    EXPECT_EQ(P.group.order(), 6);
    EXPECT_EQ(P.map({2, 0}), P.group.identity());
    EXPECT_EQ(P.map({0, 3}), P.group.identity());
    EXPECT_NE(P.map({1, 0}), P.group.identity());
    std::vector<std::vector<BigInt>> R2{{4, 6}, {6, 4}};
    auto P2 = smith_presentation(R2, 2);
    EXPECT_EQ(P2.group.order(), 20);
    EXPECT_EQ(P2.map({4, 6}), P2.group.identity());
    EXPECT_EQ(P2.map({6, 4}), P2.group.identity());
}

TEST(GroupRing, CharacterIsHomomorphism)
{
    auto G = std::make_shared<const FinAbGroup>(std::vector<long long>{4, 2});
    std::mt19937_64 g(9);
    auto rnd = [&] {
        GroupRingElt e(G);
        for (int i = 0; i < 3; ++i)
            e.add_term(Elem{static_cast<long long>(g() % 4), static_cast<long long>(g() % 2)}, CycNum(rnd_rat(g)) * CycNum::zeta(4, static_cast<long>(g() % 4)));
        return e;
    };
    for (auto& chi : all_characters(*G))
        for (int i = 0; i < 10; ++i) {
            auto a = rnd(), b = rnd();
            EXPECT_EQ(groupring_apply_char(a * b, chi), groupring_apply_char(a, chi) * groupring_apply_char(b, chi));
        }
    GroupRingElt one = GroupRingElt::one(G);
    EXPECT_EQ(groupring_apply_char(one, all_characters(*G)[5]), CycNum(1));
    auto Z2 = std::make_shared<const FinAbGroup>(std::vector<long long>{2});
    GroupRingElt h(Z2, Elem{1}, CycNum(1));
    EXPECT_EQ(groupring_apply_char(h, std::vector<CycNum>{CycNum(-1)}), CycNum(-1));
    EXPECT_THROW(groupring_apply_char(h, std::vector<CycNum>{CycNum::zeta(3, 1)}), std::invalid_argument);
}
