#include "eusys/cm/spin.hpp"

#include <gtest/gtest.h>

using namespace eusys;
using namespace eusys::cm;
using iq::RayClassGroup;

namespace {

Ideal gaussian(const QuadField& K, long long x, long long y)   // (x + y i)
{
    return K.principal({x + 2 * y, y});
}

HeckeChar psi_gauss()
{
    QuadField K(-4);
    return iq::hecke_char_construct(K, gaussian(K, 2, 2));
}

HeckeChar psi_eisenstein()
{
    QuadField K(-3);
    return iq::hecke_char_construct(K, K.principal({3, 0}));
}

SqrtCyc z(int m, long k) { return SqrtCyc(CycNum::zeta(m, k)); }

} // namespace

TEST(QExpansion, GaussianCharacter)
{
    HeckeChar psi = psi_gauss();
    const QuadField& K = psi.field();
    auto f = q_expansion(psi, 500);
    EXPECT_EQ(f.level, 32);
    EXPECT_EQ(f.a[1], CycNum(1));
    for (long long ell : {3LL, 7LL, 11LL, 19LL, 23LL}) EXPECT_TRUE(f.a[static_cast<size_t>(ell)].is_zero());
    EXPECT_TRUE(f.a[2].is_zero());
    auto p5 = K.split_prime(5);
    EXPECT_EQ(f.a[5], psi(gaussian(K, 2, 1)) + psi(gaussian(K, 2, -1)));
    EXPECT_EQ(f.a[5], psi(p5.p) + psi(p5.pbar));
    // the coefficients are rational here
    for (long long n = 1; n <= 60; ++n) EXPECT_TRUE(f.a[static_cast<size_t>(n)].is_rational()) << n;
    auto rep = verify_eigenform(f, psi);
    EXPECT_TRUE(rep.pass()) << (rep.failures.empty() ? "" : rep.failures[0]);
    EXPECT_GT(rep.mult_checked, 600);
    EXPECT_GT(rep.rec_checked, 10);
    // a_{l^2} = psi(l)^2 + psi(l lbar) + psi(lbar)^2 at a split prime
    CycNum x = psi(p5.p), y = psi(p5.pbar);
    EXPECT_EQ(f.a[25], x * x + x * y + y * y);

    auto bad = f;
    bad.a[2] = CycNum(1);
    EXPECT_FALSE(verify_eigenform(bad, psi).pass());
}

// a_p(y^2 = x^3 - x) = p - #{(x, y) mod p}, counted directly
TEST(QExpansion, MatchesCurveWithCMByGaussianIntegers)
{
    HeckeChar psi = psi_gauss();
    auto f = q_expansion(psi, 200);
    for (long long p : primes_up_to(200)) {
        if (p == 2) continue;
        long long n = 0;
        for (long long x = 0; x < p; ++x)
            for (long long y = 0; y < p; ++y)
                if ((y * y - (x * x * x - x)) % p == 0) ++n;
        EXPECT_EQ(f.a[static_cast<size_t>(p)], CycNum(static_cast<long>(p - n))) << p;
    }
}

TEST(QExpansion, TwistsAndOtherFields)
{
    HeckeChar psi = psi_gauss();
    const QuadField& K = psi.field();
    auto H = std::make_shared<const RayClassGroup>(K, K.mul(psi.modulus(), K.principal({3, 0})));
    for (const auto& chi : all_characters(H->group())) {
        HeckeChar g = psi.twist(H, chi);
        auto f = q_expansion(g, 200);
        EXPECT_TRUE(verify_eigenform(f, g).pass());
    }
    HeckeChar e = psi_eisenstein();
    EXPECT_TRUE(verify_eigenform(q_expansion(e, 300), e).pass());
}

TEST(Phi, ImagesAndSpecialization)
{
    HeckeChar psi = psi_gauss();
    const QuadField& K = psi.field();
    EXPECT_THROW(phi_n(psi, std::make_shared<const RayClassGroup>(K, K.principal({3, 0})), {5}), ModulusNotDivisible);
    // l | n: one term survives
    Ideal n5 = K.mul(psi.modulus(), K.split_prime(5).p);
    auto H5 = std::make_shared<const RayClassGroup>(K, n5);
    auto im5 = phi_n(psi, H5, {3, 5, 13});
    EXPECT_TRUE(im5.T.at(3).is_zero());
    EXPECT_EQ(im5.T.at(5).terms().size(), 1u);
    EXPECT_EQ(im5.T_terms.at(5)[0].ideal, K.split_prime(5).pbar);
    EXPECT_EQ(im5.T.at(13).terms().size(), 2u);

    const std::vector<std::pair<long long, Ideal>> configs{
        {-4, K.mul(psi.modulus(), K.principal({3, 0}))}, {-4, K.mul(psi.modulus(), gaussian(K, 2, 1))}};
    for (const auto& [d, n] : configs) {
        auto H = std::make_shared<const RayClassGroup>(K, n);
        EXPECT_GT(H->group().order(), 1);
        auto im = phi_n(psi, H, primes_up_to(100));
        for (const auto& chi : all_characters(H->group())) {
            auto r = check_phi_specialization(im, psi, chi, 100);
            EXPECT_TRUE(r.pass()) << n.str();
            EXPECT_GT(r.primes_checked, 20);
        }
        auto bad = phi_n(psi, H, primes_up_to(100), true);
        bool flagged = false;
        for (const auto& chi : all_characters(H->group())) flagged = flagged || !check_phi_specialization(bad, psi, chi, 100).pass();
        EXPECT_TRUE(flagged);
    }
    HeckeChar e = psi_eisenstein();
    const QuadField& E = e.field();
    auto H = std::make_shared<const RayClassGroup>(E, E.principal({6, 0}));
    EXPECT_EQ(H->group().orders(), std::vector<long long>{3});
    auto im = phi_n(e, H, primes_up_to(100));
    for (const auto& chi : all_characters(H->group())) EXPECT_TRUE(check_phi_specialization(im, e, chi, 100).pass());
}

TEST(NormRelation, GroupRingIdentity)
{
    for (auto psi : {psi_gauss(), psi_eisenstein()}) {
        const QuadField& K = psi.field();
        std::vector<long long> primes = K.disc() == -4 ? std::vector<long long>{5, 13, 17} : std::vector<long long>{7, 13, 19};
        for (long long ell : primes) {
            auto r = norm_relation_identity(psi, psi.modulus(), ell);
            EXPECT_TRUE(r.pass()) << K.disc() << " " << ell;
            EXPECT_TRUE(r.s_prime_equals_scaled_product);
            EXPECT_FALSE(r.s_prime_equals_unscaled_product);
            EXPECT_FALSE(norm_relation_identity(psi, psi.modulus(), ell, true).identity_holds);
        }
        EXPECT_THROW(norm_relation_identity(psi, psi.modulus(), K.disc() == -4 ? 3 : 5), NotSplit);
    }
    HeckeChar psi = psi_gauss();
    const QuadField& K = psi.field();
    EXPECT_THROW(norm_relation_identity(psi, K.principal({3, 0}), 5), ModulusViolation);
    // a larger n
    EXPECT_TRUE(norm_relation_identity(psi, K.mul(psi.modulus(), K.principal({3, 0})), 13).pass());
}

TEST(Spin, FrobeniusPolynomial)
{
    // lam = mu = 0, om = 1, w = 3
    for (long ell : {2L, 3L, 5L}) {
        SpinFrobData d{3, 3, ell, SqrtCyc(0), SqrtCyc(0), SqrtCyc(1)};
        auto P = spin_frobenius_poly(d);
        BigRat l(ell);
        EXPECT_EQ(P[0], CycNum(1));
        EXPECT_TRUE(P[1].is_zero());
        EXPECT_EQ(P[2], CycNum((1 + 1 / (l * l)) * l * l * l));
        EXPECT_TRUE(P[3].is_zero());
        EXPECT_EQ(P[4], CycNum(l * l * l * l * l * l));
    }
    // even w with a rational lambda leaves sqrt(l)
    SpinFrobData leak{4, 3, 2, SqrtCyc(1), SqrtCyc(0), SqrtCyc(1)};
    EXPECT_THROW(spin_frobenius_poly(leak), HalfIntegerLeak);

    // unitary Satake data: even w with roots of unity, odd w with pi / sqrt(l)
    auto s = synthetic_spin_data(4, 3, 5, z(12, 1), z(12, 5), z(12, 2));
    auto P = spin_frobenius_poly(s.data);
    EXPECT_EQ(P[0], CycNum(1));
    EXPECT_TRUE(purity_check(s).pass());
    SqrtCyc pi_over = SqrtCyc(5, CycNum(0), (CycNum(2) + CycNum::zeta(4, 1)) * CycNum(make_rat(1, 5)));   // (2+i)/sqrt 5
    auto s2 = synthetic_spin_data(4, 4, 5, pi_over, z(4, 1), z(3, 1));
    EXPECT_EQ(s2.data.w(), 5);
    EXPECT_EQ(s2.roots[0] * cconj(s2.roots[0]), SqrtCyc(1));
    EXPECT_TRUE(purity_check(s2).pass());
    auto s3 = synthetic_spin_data(4, 4, 5, z(8, 1), z(4, 1), z(3, 1));
    EXPECT_THROW(spin_frobenius_poly(s3.data), HalfIntegerLeak);
}

TEST(Spin, QlTwistConsistency)
{
    HeckeChar psi = psi_gauss();
    const QuadField& K = psi.field();
    Ideal n = K.mul(psi.modulus(), K.principal({3, 0}));
    auto s = synthetic_spin_data(4, 3, 5, z(12, 1), z(12, 5), z(12, 2));
    auto r = q_l_twist_consistency(s.data, psi, n, 2, 5);
    EXPECT_EQ(r.p_part, std::vector<long long>{8});
    EXPECT_TRUE(r.q_is_scaled_p);
    EXPECT_EQ(r.chars.size(), 8u);
    EXPECT_TRUE(r.pass());
    EXPECT_FALSE(q_l_twist_consistency(s.data, psi, n, 2, 5, ArtinConvention::arithmetic).pass());
    EXPECT_EQ(r.frob_order, 8);
    // trivial p-part: a single character
    auto t = q_l_twist_consistency(s.data, psi, n, 7, 5);
    EXPECT_EQ(t.chars.size(), 1u);
    EXPECT_TRUE(t.pass());

    auto s17 = synthetic_spin_data(5, 4, 17, z(5, 1), z(5, 2), z(10, 3));
    Ideal n7 = K.mul(psi.modulus(), K.principal({7, 0}));
    auto r3 = q_l_twist_consistency(s17.data, psi, n7, 3, 17);
    EXPECT_EQ(r3.p_part, std::vector<long long>{3});
    EXPECT_EQ(r3.frob_order, 3);
    EXPECT_TRUE(r3.pass());
    EXPECT_FALSE(q_l_twist_consistency(s17.data, psi, n7, 3, 17, ArtinConvention::arithmetic).pass());
    EXPECT_THROW(q_l_twist_consistency(s17.data, psi, n7, 3, 7), std::invalid_argument);
}

TEST(Spin, WeightExponents)
{
    auto w = weight_exponents(4, 3);
    EXPECT_EQ(w.e_V, BigRat(3, 2));
    EXPECT_EQ(w.e_V_dual1, BigRat(-1, 2));
    EXPECT_TRUE(w.matches_stated);
    EXPECT_FALSE(w.matches_swapped);
    EXPECT_TRUE(w.both_nonzero);
    auto d = weight_exponents(3, 3);
    EXPECT_EQ(d.e_V, 1);
    EXPECT_EQ(d.e_V_dual1, 0);
    EXPECT_FALSE(d.both_nonzero);
    for (int k1 = 3; k1 < 12; ++k1)
        for (int k2 = 3; k2 <= k1; ++k2) {
            auto e = weight_exponents(k1, k2);
            EXPECT_TRUE(e.sum_is_one);
            EXPECT_TRUE(e.matches_stated);
            EXPECT_EQ(e.both_nonzero, k1 > k2);
        }
    EXPECT_THROW(weight_exponents(3, 4), std::invalid_argument);
}
