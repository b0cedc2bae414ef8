#include "eusys/hecke/degeneracy.hpp"

#include <gtest/gtest.h>

using namespace eusys;
using namespace eusys::hecke;

TEST(Degeneracy, CosetCounts)
{
    for (long ell : {2L, 3L, 5L}) {
        auto o = degeneracy_ops(ell);
        EXPECT_EQ(o.pr1.size(), static_cast<size_t>(ell * ell - 1));
        EXPECT_EQ(o.pr2.size(), static_cast<size_t>(ell * ell - 1));
        EXPECT_EQ(o.t_n.size(), static_cast<size_t>(ell + 1));
        EXPECT_EQ(o.t_nl.size(), static_cast<size_t>(ell));
        EXPECT_EQ(o.index_k1, static_cast<size_t>(ell));
    }
}

TEST(Degeneracy, KeysSeparateCosets)
{
    long ell = 3;
    MatQ g = mat2(ell, 3, 1, 0, 1);
    MatQ k1 = mat2(ell, 2, 5, 3, 1);   // in K_1(3)
    EXPECT_TRUE(member(k1, SubgroupTag::k1(1)));
    EXPECT_FALSE(gl2_k1_key(g, 1) < gl2_k1_key(g * k1, 1));
    EXPECT_FALSE(gl2_k1_key(g * k1, 1) < gl2_k1_key(g, 1));
    MatQ k = mat2(ell, 1, 0, 1, 1);   // in K but not K_1
    auto a = gl2_k1_key(g, 1), b = gl2_k1_key(g * k, 1);
    EXPECT_TRUE(a < b || b < a);
    EXPECT_TRUE(gl2_k_key(g) == gl2_k_key(g * k));
}

TEST(Degeneracy, IdentitiesHold)
{
    for (long ell : {2L, 3L}) {
        auto r = gl2_degeneracy_identities(ell);
        EXPECT_GT(r.elements, 5u);
        EXPECT_TRUE(r.eq13) << ell;
        EXPECT_TRUE(r.eq14) << ell;
        EXPECT_TRUE(r.index_ok);
        EXPECT_TRUE(r.k0_system_ok);
        EXPECT_EQ(r.k0_system_size, static_cast<size_t>(ell + 1));
    }
}

TEST(Degeneracy, DroppedTermFails)
{
    long ell = 2;
    auto o = degeneracy_ops(ell);
    auto xs = degeneracy_test_elements(ell);
    const auto& x = xs.front();
    EXPECT_FALSE(apply_op(o.pr1, apply_op(o.t_nl, x)) == apply_op(o.t_n, apply_op(o.pr1, x)));
}
