#include "eusys/hecke/siegel.hpp"

#include <gtest/gtest.h>

using namespace eusys;
using namespace eusys::hecke;

namespace {

// additive-residue oracle: sum over x in Z/l^N, x != 0, weighting x + l^N Z_l by its d^x-measure
std::map<int, SqrtPrimeExt> mellin_oracle(const SchwartzPhi& phi, const MatQ& k, const SqrtPrimeExt& lam, int N)
{
    long ell = k.prime();
    long long q = ipow(ell, N);
    std::map<int, SqrtPrimeExt> out;
    for (long long x = 1; x < q; ++x) {
        int n = 0;
        for (long long y = x; y % ell == 0; y /= ell) ++n;
        BigRat X(static_cast<long>(x));
        if (!phi.contains(X * k(1, 0), X * k(1, 1), ell)) continue;
        BigRat meas = ppow(ell, n - N) * BigRat(ell) / BigRat(ell - 1);
        out[n] += SqrtPrimeExt(meas) * (lam * SqrtPrimeExt::half_power(ell, -1)).pow(n);
    }
    return out;
}

} // namespace

TEST(Mellin, UnramifiedSeriesMatchesOracle)
{
    for (long ell : {2L, 3L}) {
        MatQ I = MatQ::identity(2, ell);
        auto r = mellin_siegel_eval({0}, I, SqrtPrimeExt(1));
        EXPECT_EQ(r.num.size(), 1u);
        EXPECT_EQ(r.num.at(0), SqrtPrimeExt(1));
        EXPECT_EQ(r.rho, SqrtPrimeExt::half_power(ell, -1));
        int N = ell == 2 ? 9 : 6;
        auto o = mellin_oracle({0}, I, SqrtPrimeExt(1), N);
        auto e = r.expand(N - 2);
        for (int n = 0; n <= N - 2; ++n) EXPECT_EQ(e[n], o[n]) << ell << " " << n;
    }
}

TEST(Mellin, LevelSectionsMatchOracle)
{
    SqrtPrimeExt lam(3);
    for (long ell : {2L, 3L})
        for (int t : {1, 2})
            for (const auto& k : {mat2(ell, 1, 0, 0, 1), mat2(ell, 2, 1, 1, 1), mat2(ell, 1, 1, ell * ell, 1 + ell * ell),
                                  mat2(ell, 5, ell, ell, 1)}) {
                if (k.det() == 0) continue;
                auto r = mellin_siegel_eval({t}, k, lam);
                int N = ell == 2 ? 8 : 5;
                auto o = mellin_oracle({t}, k, lam, N);
                auto e = r.expand(N - t - 1);
                for (int n = 0; n <= N - t - 1; ++n) EXPECT_EQ(e[n], o[n]) << ell << " t=" << t << " n=" << n;
            }
}

TEST(Mellin, SupportedOnU0WithConstantValue)
{
    for (long ell : {2L, 3L, 5L}) {
        long l2 = ell * ell;
        SqrtPrimeExt want(make_rat(1, ell * (ell - 1)));
        for (const auto& k : {MatQ::identity(2, ell), mat2(ell, 1, 7, l2, 1 + 7 * l2), mat2(ell, 1 - 2 * l2, 1, -2 * l2, 1),
                              mat2(ell, 1, 3, l2 * ell, 1 + 3 * l2 * ell)}) {
            ASSERT_TRUE(member(k, SubgroupTag::u0(2)));
            for (const auto& lam : {SqrtPrimeExt(1), SqrtPrimeExt(ell + 4), SqrtPrimeExt::half_power(ell, 3)}) {
                auto r = mellin_siegel_eval({2}, k, lam);
                ASSERT_TRUE(r.is_constant());
                EXPECT_EQ(r.constant(), want) << ell;
            }
        }
        // bottom-left entry a unit, or of valuation one
        for (const auto& k : {mat2(ell, 0, -1, 1, 0), mat2(ell, 1, 0, 1, 1), mat2(ell, 1, 0, ell, 1), mat2(ell, 1, 1, ell, 1 + ell)}) {
            ASSERT_FALSE(member(k, SubgroupTag::u0(2)));
            auto r = mellin_siegel_eval({2}, k, SqrtPrimeExt(1));
            EXPECT_TRUE(r.is_constant());
            EXPECT_TRUE(r.constant().is_zero());
        }
    }
}

TEST(Mellin, PoleRaisesOnEvaluation)
{
    long ell = 3;
    auto r = mellin_siegel_eval({0}, MatQ::identity(2, ell), SqrtPrimeExt(1));
    // 1 - l^{-1/2} Y vanishes at Y = l^{1/2}
    EXPECT_THROW(r.eval(SqrtPrimeExt::half_power(ell, 1)), DivergentSeries);
    EXPECT_EQ(r.eval(SqrtPrimeExt(0)), SqrtPrimeExt(1));
    EXPECT_NO_THROW(r.eval(SqrtPrimeExt(make_rat(1, 9))));
}

TEST(Integrality, ContainmentsAndVolume)
{
    for (long ell : {2L, 3L}) {
        auto r = integrality_volume_check(ell);
        EXPECT_GT(r.pairs, 0);
        EXPECT_TRUE(r.stab_ok()) << ell;
        EXPECT_TRUE(r.conj_ok()) << ell << " " << r.conj_fail[0] << " " << r.conj_fail[1];
        EXPECT_EQ(r.index, r.index_expected);
        EXPECT_TRUE(r.is_power);
        EXPECT_EQ(r.power, -1);
        EXPECT_TRUE(r.pass());
    }
}

TEST(Integrality, CoarserLevelFails)
{
    auto r = integrality_volume_check(2, 1);
    EXPECT_FALSE(r.stab_ok());
    EXPECT_FALSE(r.conj_ok());
    EXPECT_FALSE(r.pass());
}

TEST(VolumeAlgebra, Identity)
{
    auto r2 = volume_algebra_check(2);
    EXPECT_EQ(r2.V, make_rat(1, 12));
    EXPECT_EQ(r2.C, 72);
    EXPECT_EQ(r2.lhs, make_rat(1, 72));
    EXPECT_TRUE(r2.pass());
    auto r3 = volume_algebra_check(3);
    EXPECT_EQ(r3.C, 3456);
    EXPECT_TRUE(r3.pass());
    EXPECT_TRUE(volume_algebra_check(5).pass());
}
