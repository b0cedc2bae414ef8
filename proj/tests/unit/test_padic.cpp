#include "eusys/padic/groups.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace eusys;

namespace {

BigRat rnd_padic(std::mt19937_64& g, long ell)
{
    std::uniform_int_distribution<long> n(-12, 12), e(-2, 2);
    BigRat x(n(g));
    return x * ppow(ell, e(g));
}

MatQ random_gsp4(std::mt19937_64& g, long ell, int len = 8)
{
    MatQ m = MatQ::identity(4, ell);
    std::uniform_int_distribution<int> pick(0, 7), ex(-2, 2);
    for (int i = 0; i < len; ++i) {
        switch (pick(g)) {
        case 0: m = m * detail::root_unipotent(ell, 12, rnd_padic(g, ell), g() & 1); break;
        case 1: m = m * detail::root_unipotent(ell, 13, rnd_padic(g, ell), g() & 1); break;
        case 2: m = m * detail::root_unipotent(ell, 14, rnd_padic(g, ell), g() & 1); break;
        case 3: m = m * detail::root_unipotent(ell, 23, rnd_padic(g, ell), g() & 1); break;
        case 4: m = m * detail::weyl_plane14(ell); break;
        case 5: m = m * detail::weyl_swap(ell); break;
        case 6: {
            int a = ex(g), b = ex(g), c = ex(g);
            m = m * torus_t(ell, a, b, c);
            break;
        }
        default: m = m * detail::weyl_plane23(ell); break;
        }
    }
    return m;
}

} // namespace

TEST(Matrix, Generators)
{
    for (long ell : {2L, 3L, 5L}) {
        EXPECT_TRUE(is_gsp4(detail::weyl_swap(ell)));
        EXPECT_TRUE(is_gsp4(detail::weyl_plane14(ell)));
        EXPECT_TRUE(is_gsp4(detail::weyl_plane23(ell)));
        for (int w : {12, 13, 14, 23})
            for (bool t : {false, true}) EXPECT_TRUE(is_gsp4(detail::root_unipotent(ell, w, make_rat(3, 7), t)));
        EXPECT_EQ(multiplier(torus_t(ell, 2, 1, 3)), BigRat(ppow(ell, 3)));
    }
}

TEST(Matrix, IotaIsHomomorphism)
{
    long ell = 3;
    MatQ h1 = mat2(ell, 2, 1, 5, 3), h2 = mat2(ell, 1, 4, 0, 1);
    MatQ k1 = mat2(ell, 0, 1, -1, 0), k2 = mat2(ell, 3, 2, 1, 1);
    MatQ a = embed_iota(h1, h2), b = embed_iota(k1, k2);
    EXPECT_EQ(a * b, embed_iota(h1 * k1, h2 * k2));
    EXPECT_TRUE(is_gsp4(a));
    EXPECT_EQ(multiplier(a), h1.det());
    EXPECT_THROW(embed_iota(h1, mat2(ell, 2, 0, 0, 1)), DeterminantMismatch);
    EXPECT_TRUE(member(a, SubgroupTag::h()));
    EXPECT_FALSE(member(detail::weyl_swap(ell) * detail::root_unipotent(ell, 13, 1, false), SubgroupTag::h()));
}

TEST(Matrix, NotSymplecticRaises)
{
    MatQ m = MatQ::diag(2, {1, 2, 1, 1});
    EXPECT_THROW(multiplier(m), NotSymplectic);
}

TEST(Matrix, Gsp4InverseMatchesInverse)
{
    std::mt19937_64 g(1);
    for (int i = 0; i < 30; ++i) {
        MatQ m = random_gsp4(g, 3);
        EXPECT_EQ(gsp4_inverse(m), m.inverse());
    }
}

TEST(Membership, Gl2Congruence)
{
    long ell = 3;
    EXPECT_TRUE(member(mat2(ell, 2, 5, 9, 1), SubgroupTag::k1(2)));
    EXPECT_FALSE(member(mat2(ell, 2, 5, 9, 4), SubgroupTag::k1(2)));
    EXPECT_TRUE(member(mat2(ell, 2, 5, 9, 4), SubgroupTag::k0(2)));
    EXPECT_TRUE(member(mat2(ell, 1, 5, 9, 4), SubgroupTag::k1_upper(2)));
    EXPECT_FALSE(member(mat2(ell, 3, 1, 1, 0), SubgroupTag::maximal()) && false);
    EXPECT_FALSE(member(mat2(ell, 3, 0, 0, 1), SubgroupTag::maximal()));
    EXPECT_TRUE(member(mat2(ell, make_rat(1, 2), 0, 0, 1), SubgroupTag::maximal()));
}

TEST(Cartan, LabelOfTorusAndInvariance)
{
    std::mt19937_64 g(2);
    for (long ell : {2L, 3L}) {
        for (int a = 0; a <= 3; ++a)
            for (int b = 0; b <= a; ++b)
                for (int c = b; c <= a + b; ++c) {
                    if (b < c - b) continue;
                    MatQ t = torus_t(ell, a, b, c);
                    CartanLabel lab{{a, b, c}};
                    EXPECT_EQ(cartan_label(t), lab);
                    // K-bi-invariance under integral generators
                    MatQ k1 = detail::weyl_swap(ell) * detail::root_unipotent(ell, 13, 1, true);
                    MatQ k2 = detail::root_unipotent(ell, 12, 2, false) * detail::weyl_plane14(ell);
                    EXPECT_EQ(cartan_label(k1 * t * k2), lab);
                }
    }
}

TEST(Iwasawa, Gsp4Random)
{
    std::mt19937_64 g(4);
    for (long ell : {2L, 3L, 5L})
        for (int i = 0; i < 60; ++i) {
            MatQ m = random_gsp4(g, ell);
            auto r = iwasawa_borel(m);
            EXPECT_TRUE(r.k.is_integral());
            EXPECT_TRUE(member(r.k, SubgroupTag::maximal()));
            EXPECT_EQ(r.n * MatQ::torus(ell, r.t) * r.k, m);
            for (int a = 0; a < 4; ++a) {
                EXPECT_EQ(r.n(a, a), BigRat(1));
                for (int b = 0; b < a; ++b) EXPECT_EQ(r.n(a, b), BigRat(0));
            }
            EXPECT_EQ(r.t[0] + r.t[3], r.t[1] + r.t[2]);
        }
}

TEST(Iwasawa, Gl2)
{
    std::mt19937_64 g(6);
    for (int i = 0; i < 60; ++i) {
        MatQ m = mat2(3, rnd_padic(g, 3), rnd_padic(g, 3), rnd_padic(g, 3), rnd_padic(g, 3));
        if (m.det() == 0) continue;
        auto r = iwasawa_borel(m);
        EXPECT_TRUE(member(r.k, SubgroupTag::maximal()));
        EXPECT_EQ(r.n * MatQ::torus(3, r.t) * r.k, m);
        EXPECT_EQ(r.n(1, 0), BigRat(0));
    }
}
