#include "eusys/gejima/gejima.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace eusys;
using namespace eusys::gejima;

namespace {

MatQ random_h(long ell, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> pick(0, 3);
    std::uniform_int_distribution<long> x(-3, 3);
    MatQ I = MatQ::identity(2, ell);
    MatQ h = MatQ::identity(4, ell);
    for (int i = 0; i < 5; ++i) {
        long t = x(rng);
        MatQ u = mat2(ell, 1, t, 0, 1), l = mat2(ell, 1, 0, t, 1);
        switch (pick(rng)) {
        case 0: h = h * embed_iota(u, I); break;
        case 1: h = h * embed_iota(l, I); break;
        case 2: h = h * embed_iota(I, u); break;
        default: h = h * embed_iota(I, l); break;
        }
    }
    long u = ell == 2 ? 3 : 2;
    return h * embed_iota(mat2(ell, u, 0, 0, 1), mat2(ell, 1, 0, 0, u));
}

MatQ random_k(long ell, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> pick(0, 5);
    std::uniform_int_distribution<long> x(-4, 4);
    const int roots[4] = {12, 13, 14, 23};
    MatQ k = MatQ::identity(4, ell);
    for (int i = 0; i < 6; ++i) {
        int c = pick(rng);
        if (c < 4)
            k = k * eusys::detail::root_unipotent(ell, roots[c], BigRat(x(rng)), i % 2 == 1);
        else if (c == 4)
            k = k * eusys::detail::weyl_plane23(ell);
        else
            k = k * eusys::detail::weyl_swap(ell);
    }
    return k;
}

} // namespace

TEST(Gejima, RepMatrix)
{
    long ell = 3;
    EXPECT_EQ(rep_matrix(CocharPair({0, 0, 0}, {0, 0, 0}), ell).matrix, gejima_B(ell));
    MatQ m = rep_matrix(CocharPair({0, 0, 0}, {1, 1, 1}), ell).matrix;
    EXPECT_EQ(m, gejima_B(ell) * MatQ::torus(ell, {1, 1, 0, 0}));
    EXPECT_EQ(multiplier(m), 3);
    EXPECT_THROW(CocharPair({-1, 0, 0}, {0, 0, 0}), ConeViolation);
    EXPECT_THROW(CocharPair({0, 0, 1}, {0, 0, 0}), ConeViolation);
    EXPECT_THROW(CocharPair({0, 0, 0}, {0, 1, 0}), ConeViolation);

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> d(-3, 3);
    int n = 0;
    while (n < 50) {
        std::array<int, 3> a{d(rng), d(rng), d(rng)}, b{d(rng), d(rng), d(rng)};
        if (a[0] < 0 || 2 * a[1] < a[2] || b[0] < b[1] || 2 * b[1] < b[2]) continue;
        ++n;
        MatQ g = rep_matrix(CocharPair(a, b), 2).matrix;
        EXPECT_EQ(multiplier(g), ppow(2, a[2] + b[2]));
    }
}

TEST(Gejima, LatticeKeyIsCosetInvariant)
{
    std::mt19937_64 rng(5);
    for (long ell : {2L, 3L}) {
        MatQ r = rep_matrix(CocharPair({1, 0, 0}, {2, 1, 1}), ell).matrix;
        auto k0 = lattice_of(r).second;
        for (int i = 0; i < 20; ++i) EXPECT_TRUE(lattice_of(r * random_k(ell, rng)).second == k0);
        EXPECT_FALSE(lattice_of(r * MatQ::torus(ell, {1, 0, 1, 0})).second == k0);
    }
}

// the orbit decision agrees with the literal h-sweep, and the sweep is stable at higher precision
TEST(Gejima, OrbitMembershipMatchesSweep)
{
    long ell = 2;
    auto cands = candidate_pairs(1, CandidateSet::stated);
    int compared = 0;
    for (size_t i = 0; i < cands.size(); i += 3)
        for (size_t j = 0; j < cands.size(); j += 2) {
            MatQ g = rep_matrix(cands[j], ell).matrix;
            SweepResult s;
            try {
                s = double_coset_member_sweep(g, cands[i], ell, 4);
            } catch (const PrecisionOverflow&) {
                continue;
            }
            ++compared;
            EXPECT_EQ(s.member, double_coset_member(g, cands[i], ell)) << cands[i].str() << " " << cands[j].str();
            if (compared % 25 == 0) EXPECT_EQ(double_coset_member_sweep(g, cands[i], ell, 5, 1).member, s.member);
        }
    EXPECT_GT(compared, 200);
    EXPECT_THROW(double_coset_member_sweep(rep_matrix(CocharPair({1, 1, 1}, {1, 1, -1}), ell).matrix,
                                           CocharPair({1, 1, 1}, {1, 1, -1}), ell, 2),
                 PrecisionOverflow);
}

TEST(Gejima, TwoSidedInvariance)
{
    std::mt19937_64 rng(3);
    long ell = 2;
    for (const auto& p : candidate_pairs(1, CandidateSet::normalized)) {
        MatQ r = rep_matrix(p, ell).matrix;
        MatQ g = random_h(ell, rng) * r * random_k(ell, rng);
        EXPECT_TRUE(double_coset_member(g, p, ell)) << p.str();
        EXPECT_EQ(gejima_reduce(g, ell, 1), p);
    }
}

TEST(Gejima, ReduceConstructedWitness)
{
    std::mt19937_64 rng(9);
    for (long ell : {2L, 3L}) {
        CocharPair p({1, 0, 0}, {2, 1, 1});
        MatQ g = torus_t(ell, 1, 0, 0) * gejima_B(ell) * torus_t(ell, 2, 1, 1) * random_k(ell, rng);
        EXPECT_EQ(gejima_reduce(g, ell, 1), p);
        EXPECT_EQ(gejima_reduce(gejima_B(ell), ell, 1), CocharPair({0, 0, 0}, {0, 0, 0}));
    }
}

// the cone as stated has coincident double cosets; frozen at l = 2, bound 1
TEST(Gejima, StatedConeOverlaps)
{
    auto r = verify_partition(2, 1, 0, 1, CandidateSet::stated);
    EXPECT_EQ(r.candidates.size(), 70u);
    EXPECT_EQ(r.overlaps.size(), 9u);
    EXPECT_FALSE(r.disjoint);
    // the central shift: (mu' + (1,1,2), mu) ~ (mu', mu + (1,1,2))
    MatQ g = rep_matrix(CocharPair({1, 1, 1}, {0, 0, -1}), 2).matrix;
    EXPECT_TRUE(double_coset_member(g, CocharPair({0, 0, -1}, {1, 1, 1}), 2));
}

TEST(Gejima, PartitionAtTwo)
{
    auto r = verify_partition(2, 1, 200, 7);
    EXPECT_EQ(r.candidates.size(), 35u);
    EXPECT_TRUE(r.disjoint);
    EXPECT_EQ(r.samples, 200u);
    EXPECT_DOUBLE_EQ(r.exhaustion(), 1.0);
    EXPECT_TRUE(r.pass());
    auto bad = verify_partition(2, 1, 0, 7, CandidateSet::normalized, true);
    EXPECT_FALSE(bad.disjoint);
}

TEST(Gejima, PartitionAtThree)
{
    auto r = verify_partition(3, 1, 40, 7);
    EXPECT_TRUE(r.disjoint);
    EXPECT_DOUBLE_EQ(r.exhaustion(), 1.0);
}
