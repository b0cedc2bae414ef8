#pragma once
#include "eusys/iq/heckechar.hpp"

#include <string>
#include <vector>

namespace eusys::cm {

using iq::HeckeChar;
using iq::Ideal;
using iq::QElt;
using iq::QuadField;

// a_n = sum of psi over ideals of norm n coprime to the modulus of psi
inline CycNum qexp_coefficient(const HeckeChar& psi, long long n)
{
    const QuadField& K = psi.field();
    CycNum s(0);
    for (const auto& A : K.ideals_of_norm(n))
        if (K.coprime(A, psi.modulus())) s += psi(A);
    return s;
}

struct QExpansion {
    long long bound = 0;
    long long level = 1;            // N(modulus) |disc|
    std::vector<CycNum> a;          // a[n], a[0] unused
};

inline QExpansion q_expansion(const HeckeChar& psi, long long B)
{
    if (B < 1) throw std::invalid_argument("q_expansion: bound must be positive");
    const QuadField& K = psi.field();
    QExpansion f;
    f.bound = B;
    f.level = K.norm(psi.modulus()) * -K.disc();
    f.a.assign(static_cast<size_t>(B + 1), CycNum(0));
    for (long long n = 1; n <= B; ++n) f.a[static_cast<size_t>(n)] = qexp_coefficient(psi, n);
    return f;
}

// nebentypus n -> psi((n))/n * eps_K(n), for n coprime to the level
inline CycNum nebentypus(const HeckeChar& psi, long long n)
{
    return psi(QElt{n, 0}) * CycNum(make_rat(psi.field().epsilon(n), static_cast<long>(n)));
}

struct EigenformReport {
    long long bound = 0, prime_bound = 0;
    bool normalized = false;
    long long mult_checked = 0, mult_failed = 0;
    long long rec_checked = 0, rec_failed = 0;
    long long local_checked = 0, local_failed = 0;
    std::vector<std::string> failures;
    bool pass() const { return normalized && mult_failed == 0 && rec_failed == 0 && local_failed == 0; }
};

inline EigenformReport verify_eigenform(const QExpansion& f, const HeckeChar& psi, long long P = 0)
{
    const QuadField& K = psi.field();
    long long B = f.bound;
    if (P == 0)
        while ((P + 1) * (P + 1) <= B) ++P;
    if (P * P > B) throw std::invalid_argument("verify_eigenform: bound must be at least P^2");
    EigenformReport r;
    r.bound = B;
    r.prime_bound = P;
    auto a = [&](long long n) -> const CycNum& { return f.a[static_cast<size_t>(n)]; };
    auto note = [&](const std::string& s) {
        if (r.failures.size() < 20) r.failures.push_back(s);
    };
    r.normalized = a(1) == CycNum(1);
    for (long long m = 2; m <= B; ++m)
        for (long long n = m + 1; m * n <= B; ++n) {
            if (std::gcd(m, n) != 1) continue;
            ++r.mult_checked;
            if (!(a(m * n) == a(m) * a(n))) {
                ++r.mult_failed;
                note("a(" + std::to_string(m * n) + ") != a(" + std::to_string(m) + ")a(" + std::to_string(n) + ")");
            }
        }
    for (long long ell = 2; ell <= B; ++ell) {
        if (!iq::detail::is_prime(ell)) continue;
        auto pd = K.split_prime(ell);
        // a_l from the prime ideals above l
        CycNum want(0);
        if (pd.kind == iq::Splitting::split) {
            for (const auto& P1 : {pd.p, pd.pbar})
                if (K.coprime(P1, psi.modulus())) want += psi(P1);
        } else if (pd.kind == iq::Splitting::ramified && K.coprime(pd.p, psi.modulus())) {
            want = psi(pd.p);
        }
        ++r.local_checked;
        if (!(a(ell) == want)) {
            ++r.local_failed;
            note("a(" + std::to_string(ell) + ") differs from the prime-ideal sum");
        }
        if (ell > P || f.level % ell == 0) continue;
        CycNum chi = nebentypus(psi, ell) * CycNum(static_cast<long>(ell));
        long long prev = 1, cur = ell;
        while (cur <= B / ell) {
            long long next = cur * ell;
            ++r.rec_checked;
            if (!(a(next) == a(ell) * a(cur) - chi * a(prev))) {
                ++r.rec_failed;
                note("recurrence fails at " + std::to_string(next));
            }
            prev = cur;
            cur = next;
        }
    }
    return r;
}

} // namespace eusys::cm
