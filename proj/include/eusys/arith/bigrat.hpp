#pragma once
#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace eusys {

using BigInt = mpz_class;
using BigRat = mpq_class;

constexpr int kValInf = std::numeric_limits<int>::max();

inline BigRat make_rat(long n, long d = 1)
{
    BigRat q(n, d);
    q.canonicalize();
    return q;
}

inline int valuation(const BigInt& n, long p)
{
    if (n == 0) return kValInf;
    BigInt t = n;
    mpz_class pp(p);
    return static_cast<int>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), pp.get_mpz_t()));
}

inline int valuation(const BigRat& q, long p)
{
    if (q == 0) return kValInf;
    return valuation(BigInt(q.get_num()), p) - valuation(BigInt(q.get_den()), p);
}

inline BigRat rat_pow(const BigRat& b, long e)
{
    BigRat r = 1;
    BigRat base = e < 0 ? BigRat(1 / b) : b;
    unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    while (k) {
        if (k & 1) r *= base;
        base *= base;
        k >>= 1;
    }
    return r;
}

inline BigRat ppow(long p, long e) { return rat_pow(BigRat(p), e); }

inline std::string to_string(const BigRat& q)
{
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline BigRat rat_from_string(const std::string& s)
{
    BigRat q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    q.canonicalize();
    return q;
}

// residue of an l-integral rational modulo l^k, in [0, l^k)
inline long long residue(const BigRat& q, long p, int k)
{
    if (valuation(q, p) < 0) throw std::domain_error("residue of non-integral rational");
    BigInt m;
    mpz_ui_pow_ui(m.get_mpz_t(), p, k);
    BigInt d = q.get_den(), inv;
    mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
    BigInt r = (BigInt(q.get_num()) * inv) % m;
    if (r < 0) r += m;
    return r.get_si();
}

inline long long ipow(long long b, int e)
{
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

} // namespace eusys
