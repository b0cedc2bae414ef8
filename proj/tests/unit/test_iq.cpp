#include "eusys/iq/heckechar.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace eusys;
using namespace eusys::iq;

namespace {

// random ideal coprime to m, built from prime ideals of norm < 60
Ideal random_ideal(const QuadField& K, const Ideal& m, std::mt19937_64& rng, int factors = 3)
{
    std::vector<Ideal> primes;
    for (long long ell = 2; ell < 60; ++ell) {
        if (!iq::detail::is_prime(ell)) continue;
        auto pd = K.split_prime(ell);
        for (const auto& P : {pd.p, pd.pbar})
            if (K.coprime(P, m) && std::find(primes.begin(), primes.end(), P) == primes.end()) primes.push_back(P);
    }
    std::uniform_int_distribution<size_t> pick(0, primes.size() - 1);
    std::uniform_int_distribution<int> cnt(0, factors);
    Ideal I = K.unit_ideal();
    for (int i = cnt(rng); i > 0; --i) I = K.mul(I, primes[pick(rng)]);
    return I;
}

QElt random_elt(std::mt19937_64& rng, long long r = 30)
{
    std::uniform_int_distribution<long long> d(-r, r);
    return {d(rng), d(rng)};
}

Ideal gaussian(const QuadField& K, long long x, long long y)   // (x + y i)
{
    return K.principal({x + 2 * y, y});
}

} // namespace

TEST(QuadField, Basics)
{
    EXPECT_TRUE(is_fundamental_discriminant(-4));
    EXPECT_TRUE(is_fundamental_discriminant(-8));
    EXPECT_TRUE(is_fundamental_discriminant(-3));
    EXPECT_FALSE(is_fundamental_discriminant(-12));
    EXPECT_FALSE(is_fundamental_discriminant(-16));
    EXPECT_FALSE(is_fundamental_discriminant(-1));
    EXPECT_THROW(QuadField(-36), NotFundamental);
    for (long long d : {-3LL, -4LL, -7LL, -8LL, -15LL, -23LL}) {
        QuadField K(d);
        EXPECT_EQ(K.sqrt_disc() * K.sqrt_disc(), CycNum(static_cast<long>(d)));
        EXPECT_GT(K.sqrt_disc().to_complex().imag(), 0);
        std::mt19937_64 rng(static_cast<unsigned long>(-d));
        for (int i = 0; i < 20; ++i) {
            QElt u = random_elt(rng), v = random_elt(rng);
            EXPECT_EQ(K.embed(K.mul(u, v)), K.embed(u) * K.embed(v));
            EXPECT_EQ(K.embed(K.conj(u)), K.embed(u).conj());
            EXPECT_EQ(K.norm(K.mul(u, v)), K.norm(u) * K.norm(v));
        }
        for (auto& u : K.units()) EXPECT_EQ(K.norm(u), 1);
    }
    QuadField G(-4);
    EXPECT_EQ(G.embed(G.unit_generator()), CycNum::zeta(4, 1));
}

TEST(QuadField, IdealOps)
{
    for (long long d : {-4LL, -3LL, -15LL, -23LL}) {
        QuadField K(d);
        std::mt19937_64 rng(1);
        Ideal O = K.unit_ideal();
        for (long long a : {2LL, 5LL, 12LL}) EXPECT_EQ(K.mul(K.principal({a, 0}), O), K.principal({a, 0}));
        for (int i = 0; i < 40; ++i) {
            Ideal A = random_ideal(K, O, rng), B = random_ideal(K, O, rng), C = random_ideal(K, O, rng);
            Ideal AB = K.mul(A, B);
            EXPECT_EQ(AB, K.mul(B, A));
            EXPECT_EQ(K.mul(AB, C), K.mul(A, K.mul(B, C)));
            EXPECT_EQ(K.norm(AB), K.norm(A) * K.norm(B));
            // generator oracle: the product contains all basis products and has the right index
            auto [a1, a2] = K.basis(A);
            auto [b1, b2] = K.basis(B);
            for (auto& u : {K.mul(a1, b1), K.mul(a1, b2), K.mul(a2, b1), K.mul(a2, b2)}) EXPECT_TRUE(K.contains(AB, u));
            EXPECT_TRUE(K.divides(A, AB));
            EXPECT_EQ(K.mul(A, K.conj(A)), K.principal({K.norm(A), 0}));
        }
    }
}

TEST(QuadField, SplitPrime)
{
    QuadField K(-4);
    auto p5 = K.split_prime(5);
    EXPECT_EQ(p5.kind, Splitting::split);
    EXPECT_TRUE(p5.p == gaussian(K, 2, 1) || p5.pbar == gaussian(K, 2, 1));
    EXPECT_EQ(K.norm(p5.p), 5);
    EXPECT_EQ(K.mul(p5.p, p5.pbar), K.principal({5, 0}));
    EXPECT_EQ(K.conj(p5.p), p5.pbar);
    EXPECT_EQ(K.split_prime(3).kind, Splitting::inert);
    auto p2 = K.split_prime(2);
    EXPECT_EQ(p2.kind, Splitting::ramified);
    EXPECT_EQ(K.mul(p2.p, p2.p), K.principal({2, 0}));

    for (long long d : {-3LL, -4LL, -7LL, -8LL, -15LL, -20LL, -23LL, -84LL})
        for (long long ell = 2; ell <= 100; ++ell) {
            if (!iq::detail::is_prime(ell)) continue;
            QuadField F(d);
            auto pd = F.split_prime(ell);
            int eps = F.epsilon(ell);
            EXPECT_EQ(eps == 1, pd.kind == Splitting::split);
            EXPECT_EQ(eps == -1, pd.kind == Splitting::inert);
            EXPECT_EQ(eps == 0, pd.kind == Splitting::ramified);
            if (pd.kind == Splitting::split) {
                EXPECT_NE(pd.p, pd.pbar);
                EXPECT_EQ(F.norm(pd.p), ell);
                EXPECT_EQ(F.mul(pd.p, pd.pbar), F.principal({ell, 0}));
            } else if (pd.kind == Splitting::ramified) {
                EXPECT_EQ(F.mul(pd.p, pd.p), F.principal({ell, 0}));
            } else {
                EXPECT_EQ(F.norm(pd.p), ell * ell);
            }
        }
}

TEST(ClassGroup, SmallDiscriminants)
{
    // class groups of small discriminants
    const std::vector<std::pair<long long, std::vector<long long>>> table{
        {-3, {}}, {-4, {}}, {-7, {}}, {-8, {}}, {-15, {2}}, {-20, {2}}, {-23, {3}}, {-47, {5}}, {-56, {4}}, {-84, {2, 2}}};
    for (auto& [d, orders] : table) {
        QuadField K(d);
        ClassGroup C(K);
        EXPECT_EQ(C.group().orders(), orders) << d;
        long long h = 1;
        for (auto o : orders) h *= o;
        EXPECT_EQ(C.class_number(), h);
        EXPECT_EQ(C.dlog(K.unit_ideal()), C.group().identity());
        std::mt19937_64 rng(4);
        for (int i = 0; i < 30; ++i) {
            Ideal A = random_ideal(K, K.unit_ideal(), rng), B = random_ideal(K, K.unit_ideal(), rng);
            EXPECT_EQ(C.dlog(K.mul(A, B)), C.group().add(C.dlog(A), C.dlog(B)));
            EXPECT_EQ(K.generator(A).has_value(), C.dlog(A) == C.group().identity());
        }
    }
    discriminant_bound() = 100;
    EXPECT_THROW(ClassGroup(QuadField(-107)), DiscriminantBoundExceeded);
    discriminant_bound() = 20000;
}

TEST(RayClassGroup, Examples)
{
    QuadField K(-4);
    RayClassGroup H1(K, K.unit_ideal());
    EXPECT_EQ(H1.group().order(), 1);
    RayClassGroup H3(K, K.principal({3, 0}));
    EXPECT_EQ(H3.residues().size(), 8);
    EXPECT_EQ(H3.unit_image(), 4);
    EXPECT_EQ(H3.group().orders(), std::vector<long long>{2});
}

TEST(RayClassGroup, OrderFormulaAndDlog)
{
    struct Case {
        long long d;
        QElt gen;
    };
    const std::vector<Case> cases{{-4, {3, 0}}, {-4, {6, 2}}, {-4, {9, 3}}, {-4, {21, 7}}, {-3, {3, 0}}, {-3, {7, 0}},
                                  {-15, {2, 0}}, {-15, {3, 0}}, {-23, {5, 0}}, {-23, {4, 1}}, {-84, {5, 0}}};
    std::mt19937_64 rng(21);
    for (const auto& cs : cases) {
        QuadField K(cs.d);
        Ideal n = K.principal(cs.gen);
        RayClassGroup H(K, n);
        EXPECT_EQ(H.group().order() * H.unit_image(), H.class_group().class_number() * H.residues().size())
            << cs.d << " " << n.str();
        for (int i = 0; i < 100; ++i) {
            Ideal A = random_ideal(K, n, rng), B = random_ideal(K, n, rng);
            EXPECT_EQ(H.dlog(K.mul(A, B)), H.group().add(H.dlog(A), H.dlog(B)));
        }
        // alpha = 1 mod n maps to the identity
        auto [b1, b2] = K.basis(n);
        for (int i = 0; i < 20; ++i) {
            std::uniform_int_distribution<long long> c(-6, 6);
            QElt alpha = K.add({1, 0}, K.add(K.scale(b1, c(rng)), K.scale(b2, c(rng))));
            if (K.norm(alpha) == 0) continue;
            EXPECT_EQ(H.dlog(alpha), H.group().identity());
        }
        // every class is hit by a prime ideal of small norm
        std::set<Elem> hit;
        for (long long ell = 2; ell < 3000; ++ell) {
            if (!iq::detail::is_prime(ell) || K.norm(n) % ell == 0) continue;
            auto pd = K.split_prime(ell);
            hit.insert(H.dlog(pd.p));
            hit.insert(H.dlog(pd.pbar));
        }
        EXPECT_EQ(static_cast<long long>(hit.size()), H.group().order()) << cs.d;
    }
    EXPECT_THROW(RayClassGroup(QuadField(-4), QuadField(-4).principal({3, 0})).dlog(QuadField(-4).principal({3, 0})), NotCoprime);
}

TEST(HeckeChar, Construction)
{
    QuadField K(-4);
    EXPECT_THROW(hecke_char_construct(K, K.unit_ideal()), UnitObstruction);
    EXPECT_THROW(hecke_char_construct(K, K.principal({2, 0})), UnitObstruction);
    Ideal f = gaussian(K, 2, 2);
    HeckeChar psi = hecke_char_construct(K, f);
    EXPECT_EQ(psi.omega_tilde(K.unit_generator()), CycNum::zeta(4, 3));
    std::mt19937_64 rng(8);
    int checked = 0;
    while (checked < 30) {
        QElt a = random_elt(rng);
        if (K.norm(a) == 0 || !K.coprime(K.principal(a), f)) continue;
        ++checked;
        EXPECT_EQ(psi(a), K.embed(a) * psi.omega_tilde(a));
        for (auto& u : K.units()) EXPECT_EQ(psi(K.mul(u, a)), psi(a));
    }
    for (int i = 0; i < 100; ++i) {
        Ideal A = random_ideal(K, f, rng), B = random_ideal(K, f, rng);
        EXPECT_EQ(psi(K.mul(A, B)), psi(A) * psi(B));
        EXPECT_EQ(psi(A) * psi(A).conj(), CycNum(static_cast<long>(K.norm(A))));
    }
    EXPECT_THROW(psi(K.split_prime(2).p), NotCoprime);
    EXPECT_THROW(hecke_char_construct(QuadField(-15), QuadField(-15).principal({4, 0})), ClassExtensionUnsupported);
}

TEST(HeckeChar, OtherFields)
{
    for (long long d : {-3LL, -7LL, -8LL}) {
        QuadField K(d);
        long long f0 = d == -3 ? 3 : d == -7 ? 7 : 4;
        Ideal f = K.principal({f0, 0});
        auto R = ResidueUnits(K, f);
        auto n = unit_compatible_characters(K, R).size();
        EXPECT_EQ(static_cast<long long>(n) * K.unit_count(), R.size()) << d;
        HeckeChar psi = hecke_char_construct(K, f, n - 1);
        std::mt19937_64 rng(2);
        for (int i = 0; i < 40; ++i) {
            Ideal A = random_ideal(K, f, rng), B = random_ideal(K, f, rng);
            EXPECT_EQ(psi(K.mul(A, B)), psi(A) * psi(B));
            EXPECT_EQ(psi(A) * psi(A).conj(), CycNum(static_cast<long>(K.norm(A))));
        }
    }
}

TEST(HeckeChar, OmegaAndTwist)
{
    QuadField K(-4);
    Ideal f = gaussian(K, 2, 2);
    HeckeChar psi = hecke_char_construct(K, f);
    auto w = omega_of(psi);
    EXPECT_EQ(w.modulus, 8);
    EXPECT_TRUE(w.multiplicative);
    for (long long n = 1; n <= 50; ++n) {
        if (n % 2 == 0) continue;
        EXPECT_EQ(w(n) * CycNum(static_cast<long>(n)), psi(QElt{n, 0})) << n;
    }
    // w takes values in {+-1}, and w * eps_K is even or odd consistently
    for (long long n : {1LL, 3LL, 5LL, 7LL}) EXPECT_TRUE(w(n) == CycNum(1) || w(n) == CycNum(-1));

    Ideal N = K.mul(f, K.principal({3, 0}));
    auto H = std::make_shared<const RayClassGroup>(K, N);
    EXPECT_THROW(psi.twist(std::make_shared<const RayClassGroup>(K, K.principal({3, 0})), Character{{0}}), ModulusMismatch);
    auto chars = all_characters(H->group());
    HeckeChar triv = char_twist(psi, H, chars[0]);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 30; ++i) {
        Ideal A = random_ideal(K, N, rng);
        EXPECT_EQ(triv(A), psi(A));
    }
    for (const auto& chi : chars) {
        HeckeChar t = char_twist(psi, H, chi);
        for (long long ell : {5LL, 13LL, 17LL, 29LL}) {
            auto pd = K.split_prime(ell);
            EXPECT_EQ(t(pd.p) * t(pd.pbar), t(QElt{ell, 0}));
            EXPECT_EQ(t(pd.p) * t(pd.p).conj(), CycNum(static_cast<long>(ell)));
        }
        EXPECT_TRUE(omega_of(t).multiplicative);
    }
}
