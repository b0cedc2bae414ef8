#pragma once
#include "eusys/arith/bigrat.hpp"
#include "eusys/arith/cycnum.hpp"

#include <stdexcept>

namespace eusys {

inline bool is_zero(const BigRat& q) { return q == 0; }

// a + b*sqrt(l) over a base field F (BigRat or CycNum); l = 0 means "not yet fixed"
template <class F>
class SqrtExt {
public:
    SqrtExt() = default;
    SqrtExt(long n) : a_(n) {}
    SqrtExt(const F& a) : a_(a) {}
    SqrtExt(long l, const F& a, const F& b) : l_(l), a_(a), b_(b)
    {
        if (eusys::is_zero(b_) && l_ == 0) return;
        if (l_ <= 0) throw std::invalid_argument("SqrtExt: prime must be positive");
    }

    // l^{k/2}
    static SqrtExt half_power(long l, long k)
    {
        long q = k >= 0 ? k / 2 : -((-k + 1) / 2);
        long r = k - 2 * q;
        F p = F(ppow(l, q));
        return r == 0 ? SqrtExt(l, p, F(0)) : SqrtExt(l, F(0), p);
    }
    static SqrtExt sqrt_prime(long l) { return SqrtExt(l, F(0), F(1)); }

    long prime() const { return l_; }
    const F& a() const { return a_; }
    const F& b() const { return b_; }
    bool is_zero() const { return eusys::is_zero(a_) && eusys::is_zero(b_); }
    bool in_base() const { return eusys::is_zero(b_); }

    friend SqrtExt operator+(const SqrtExt& x, const SqrtExt& y)
    {
        return SqrtExt(join(x, y), x.a_ + y.a_, x.b_ + y.b_);
    }
    friend SqrtExt operator-(const SqrtExt& x) { return SqrtExt(x.l_, -x.a_, -x.b_); }
    friend SqrtExt operator-(const SqrtExt& x, const SqrtExt& y) { return x + (-y); }
    friend SqrtExt operator*(const SqrtExt& x, const SqrtExt& y)
    {
        long l = join(x, y);
        F lf = F(BigRat(l));
        return SqrtExt(l, x.a_ * y.a_ + lf * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_);
    }
    SqrtExt& operator+=(const SqrtExt& o) { return *this = *this + o; }
    SqrtExt& operator-=(const SqrtExt& o) { return *this = *this - o; }
    SqrtExt& operator*=(const SqrtExt& o) { return *this = *this * o; }

    SqrtExt conj_sqrt() const { return SqrtExt(l_, a_, -b_); }
    F norm() const { return a_ * a_ - F(BigRat(l_)) * b_ * b_; }

    SqrtExt inverse() const
    {
        F n = norm();
        if (eusys::is_zero(n)) throw std::domain_error("SqrtExt: inverse of zero");
        F ni = inv(n);
        return SqrtExt(l_, a_ * ni, -b_ * ni);
    }
    friend SqrtExt operator/(const SqrtExt& x, const SqrtExt& y) { return x * y.inverse(); }

    SqrtExt pow(long e) const
    {
        SqrtExt base = e < 0 ? inverse() : *this, r(1);
        unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
        while (k) {
            if (k & 1) r *= base;
            base *= base;
            k >>= 1;
        }
        return r;
    }

    friend bool operator==(const SqrtExt& x, const SqrtExt& y)
    {
        if (!(x.a_ == y.a_)) return false;
        if (!(x.b_ == y.b_)) return false;
        return eusys::is_zero(x.b_) || x.l_ == y.l_;
    }
    friend bool operator!=(const SqrtExt& x, const SqrtExt& y) { return !(x == y); }

private:
    long l_ = 0;
    F a_ = F(0);
    F b_ = F(0);

    static long join(const SqrtExt& x, const SqrtExt& y)
    {
        if (x.l_ == 0) return y.l_;
        if (y.l_ == 0 || y.l_ == x.l_) return x.l_;
        throw std::invalid_argument("SqrtExt: mismatched primes");
    }
    static F inv(const F& n)
    {
        if constexpr (std::is_same_v<F, BigRat>)
            return BigRat(1) / n;
        else
            return n.inverse();
    }
};

template <class F>
bool is_zero(const SqrtExt<F>& x)
{
    return x.is_zero();
}

using SqrtPrimeExt = SqrtExt<BigRat>;
using SqrtCyc = SqrtExt<CycNum>;

inline SqrtCyc to_cyc(const SqrtPrimeExt& x) { return SqrtCyc(x.prime(), CycNum(x.a()), CycNum(x.b())); }

// collapse sqrt(l) into the cyclotomic field
inline CycNum flatten(const SqrtCyc& x)
{
    if (x.in_base()) return x.a();
    return x.a() + x.b() * cyc_sqrt_prime(x.prime());
}

} // namespace eusys
