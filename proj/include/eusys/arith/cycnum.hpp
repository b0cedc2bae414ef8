#pragma once
#include "eusys/arith/bigrat.hpp"

#include <complex>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace eusys {

namespace detail {

using IPoly = std::vector<long long>;

inline const IPoly& cyclotomic_poly(int m)
{
    static std::map<int, IPoly> cache;
    static std::recursive_mutex mu;
    std::lock_guard<std::recursive_mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    // x^m - 1 divided by Phi_d for proper divisors d
    IPoly num(m + 1, 0);
    num[0] = -1;
    num[m] = 1;
    for (int d = 1; d < m; ++d) {
        if (m % d) continue;
        IPoly div = cyclotomic_poly(d);
        int dn = static_cast<int>(num.size()) - 1, dd = static_cast<int>(div.size()) - 1;
        IPoly q(dn - dd + 1, 0);
        for (int i = dn; i >= dd; --i) {
            long long c = num[i];
            q[i - dd] = c;
            for (int j = 0; j <= dd; ++j) num[i - dd + j] -= c * div[j];
        }
        num = q;
    }
    return cache.emplace(m, num).first->second;
}

inline int euler_phi(int m)
{
    int r = m, n = m;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        r -= r / p;
    }
    if (n > 1) r -= r / n;
    return r;
}

} // namespace detail

// Element of Q(zeta_m) in the power basis 1, z, ..., z^{phi(m)-1}; z -> exp(2 pi i / m).
class CycNum {
public:
    CycNum() : m_(1), c_(1, BigRat(0)) {}
    CycNum(const BigRat& q) : m_(1), c_(1, q) {}
    CycNum(long n) : m_(1), c_(1, BigRat(n)) {}
    CycNum(int m, std::vector<BigRat> coeffs) : m_(m), c_(std::move(coeffs))
    {
        if (static_cast<int>(c_.size()) != detail::euler_phi(m_))
            throw std::invalid_argument("CycNum: coefficient count must equal phi(m)");
    }

    static CycNum zeta(int m, long k = 1)
    {
        k %= m;
        if (k < 0) k += m;
        std::vector<BigRat> big(m, BigRat(0));
        big[k] = 1;
        return from_dense(m, big);
    }

    int modulus() const { return m_; }
    const std::vector<BigRat>& coeffs() const { return c_; }

    bool is_zero() const
    {
        for (auto& x : c_)
            if (x != 0) return false;
        return true;
    }

    bool is_rational() const
    {
        auto r = reduce_modulus();
        return r.m_ == 1;
    }
    BigRat rational_value() const
    {
        auto r = reduce_modulus();
        if (r.m_ != 1) throw std::domain_error("CycNum is not rational");
        return r.c_[0];
    }

    CycNum embed(int M) const
    {
        if (M % m_) throw std::invalid_argument("CycNum::embed: modulus must divide target");
        if (M == m_) return *this;
        int s = M / m_;
        std::vector<BigRat> big(M, BigRat(0));
        for (size_t i = 0; i < c_.size(); ++i) big[(i * s) % M] += c_[i];
        return from_dense(M, big);
    }

    CycNum conj() const
    {
        std::vector<BigRat> big(m_, BigRat(0));
        for (size_t i = 0; i < c_.size(); ++i) big[(m_ - static_cast<int>(i)) % m_] += c_[i];
        return from_dense(m_, big);
    }

    // smallest modulus in which the value lives (tries divisors of m)
    CycNum reduce_modulus() const
    {
        for (int d = 1; d < m_; ++d) {
            if (m_ % d) continue;
            CycNum t = try_descend(d);
            if (t.m_ == d) return t;
        }
        return *this;
    }

    friend CycNum operator+(const CycNum& a, const CycNum& b)
    {
        int M = std::lcm(a.m_, b.m_);
        CycNum x = a.embed(M), y = b.embed(M);
        for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
        return x;
    }
    friend CycNum operator-(const CycNum& a) { CycNum r = a; for (auto& x : r.c_) x = -x; return r; }
    friend CycNum operator-(const CycNum& a, const CycNum& b) { return a + (-b); }
    friend CycNum operator*(const CycNum& a, const CycNum& b)
    {
        int M = std::lcm(a.m_, b.m_);
        CycNum x = a.embed(M), y = b.embed(M);
        size_t n = x.c_.size();
        std::vector<BigRat> big(2 * n, BigRat(0));
        for (size_t i = 0; i < n; ++i) {
            if (x.c_[i] == 0) continue;
            for (size_t j = 0; j < n; ++j)
                if (y.c_[j] != 0) big[i + j] += x.c_[i] * y.c_[j];
        }
        return from_poly(M, big);
    }
    CycNum& operator+=(const CycNum& o) { return *this = *this + o; }
    CycNum& operator-=(const CycNum& o) { return *this = *this - o; }
    CycNum& operator*=(const CycNum& o) { return *this = *this * o; }

    friend bool operator==(const CycNum& a, const CycNum& b)
    {
        int M = std::lcm(a.m_, b.m_);
        return a.embed(M).c_ == b.embed(M).c_;
    }
    friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

    CycNum inverse() const
    {
        size_t n = c_.size();
        // columns: this * z^j reduced
        std::vector<std::vector<BigRat>> A(n, std::vector<BigRat>(n + 1, BigRat(0)));
        for (size_t j = 0; j < n; ++j) {
            CycNum col = *this * zeta(m_, static_cast<long>(j)).embed(m_);
            for (size_t i = 0; i < n; ++i) A[i][j] = col.c_[i];
        }
        A[0][n] = 1;
        for (size_t col = 0, row = 0; col < n; ++col, ++row) {
            size_t piv = row;
            while (piv < n && A[piv][col] == 0) ++piv;
            if (piv == n) throw std::domain_error("CycNum::inverse of zero");
            std::swap(A[piv], A[row]);
            BigRat inv = 1 / A[row][col];
            for (auto& x : A[row]) x *= inv;
            for (size_t r = 0; r < n; ++r) {
                if (r == row || A[r][col] == 0) continue;
                BigRat f = A[r][col];
                for (size_t k = col; k <= n; ++k) A[r][k] -= f * A[row][k];
            }
        }
        std::vector<BigRat> x(n);
        for (size_t i = 0; i < n; ++i) x[i] = A[i][n];
        return CycNum(m_, x);
    }

    friend CycNum operator/(const CycNum& a, const CycNum& b) { return a * b.inverse(); }

    CycNum pow(long e) const
    {
        CycNum base = e < 0 ? inverse() : *this, r(1);
        unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
        while (k) {
            if (k & 1) r *= base;
            base *= base;
            k >>= 1;
        }
        return r;
    }

    std::complex<double> to_complex() const
    {
        std::complex<double> s = 0;
        for (size_t i = 0; i < c_.size(); ++i)
            s += c_[i].get_d() * std::polar(1.0, 2 * M_PI * static_cast<double>(i) / m_);
        return s;
    }

    bool operator<(const CycNum& o) const
    {
        if (m_ != o.m_) return m_ < o.m_;
        for (size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
        return false;
    }

private:
    int m_;
    std::vector<BigRat> c_;

    static CycNum from_poly(int m, std::vector<BigRat> p)
    {
        const auto& phi = detail::cyclotomic_poly(m);
        size_t d = phi.size() - 1;
        for (size_t i = p.size(); i-- > d;) {
            if (p[i] == 0) continue;
            BigRat c = p[i];
            for (size_t j = 0; j <= d; ++j) p[i - d + j] -= c * static_cast<long>(phi[j]);
        }
        p.resize(d);
        return CycNum(m, p);
    }
    static CycNum from_dense(int m, std::vector<BigRat> big)
    {
        // reduce x^m = 1 first, then mod Phi_m
        return from_poly(m, std::move(big));
    }

    CycNum try_descend(int d) const
    {
        // find x in Q(zeta_d) with embed(x) == self, if any
        int pd = detail::euler_phi(d);
        size_t n = c_.size();
        std::vector<std::vector<BigRat>> A(n, std::vector<BigRat>(pd + 1, BigRat(0)));
        for (int j = 0; j < pd; ++j) {
            CycNum col = zeta(d, j).embed(m_);
            for (size_t i = 0; i < n; ++i) A[i][j] = col.c_[i];
        }
        for (size_t i = 0; i < n; ++i) A[i][pd] = c_[i];
        size_t row = 0;
        std::vector<int> pivcol;
        for (int col = 0; col < pd && row < n; ++col) {
            size_t piv = row;
            while (piv < n && A[piv][col] == 0) ++piv;
            if (piv == n) continue;
            std::swap(A[piv], A[row]);
            BigRat inv = 1 / A[row][col];
            for (auto& x : A[row]) x *= inv;
            for (size_t r = 0; r < n; ++r) {
                if (r == row || A[r][col] == 0) continue;
                BigRat f = A[r][col];
                for (int k = col; k <= pd; ++k) A[r][k] -= f * A[row][k];
            }
            pivcol.push_back(col);
            ++row;
        }
        for (size_t r = row; r < n; ++r)
            if (A[r][pd] != 0) return *this;
        std::vector<BigRat> x(pd, BigRat(0));
        for (size_t r = 0; r < pivcol.size(); ++r) x[pivcol[r]] = A[r][pd];
        return CycNum(d, x);
    }
};

inline bool is_zero(const CycNum& c) { return c.is_zero(); }

// sqrt(p) for an odd prime or 2, as a cyclotomic number
inline CycNum cyc_sqrt_prime(long p)
{
    if (p == 2) return CycNum::zeta(8, 1) + CycNum::zeta(8, 7);
    CycNum g;
    for (long a = 1; a < p; ++a) {
        long t = 1;
        for (long k = 0; k < (p - 1) / 2; ++k) t = t * a % p;
        g += (t == 1 ? CycNum(1) : CycNum(-1)) * CycNum::zeta(static_cast<int>(p), a);
    }
    if (p % 4 == 1) return g;
    return CycNum::zeta(4, 3) * g;
}

} // namespace eusys
