#pragma once
#include "eusys/arith/bigrat.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace eusys {

struct NotSymplectic : std::domain_error {
    using std::domain_error::domain_error;
};
struct DeterminantMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// square rational matrix with a context prime
class MatQ {
public:
    MatQ() = default;
    MatQ(int n, long ell) : n_(n), ell_(ell), a_(static_cast<size_t>(n * n), BigRat(0)) {}
    MatQ(int n, long ell, std::initializer_list<BigRat> rows) : MatQ(n, ell)
    {
        if (rows.size() != a_.size()) throw std::invalid_argument("MatQ: wrong entry count");
        std::copy(rows.begin(), rows.end(), a_.begin());
    }
    MatQ(int n, long ell, const std::vector<long long>& rows) : MatQ(n, ell)
    {
        if (rows.size() != a_.size()) throw std::invalid_argument("MatQ: wrong entry count");
        for (size_t i = 0; i < a_.size(); ++i) a_[i] = BigRat(static_cast<long>(rows[i]));
    }

    static MatQ identity(int n, long ell)
    {
        MatQ m(n, ell);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static MatQ diag(long ell, const std::vector<BigRat>& d)
    {
        MatQ m(static_cast<int>(d.size()), ell);
        for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
        return m;
    }
    // diag(l^e_1, ..., l^e_n)
    static MatQ torus(long ell, const std::vector<int>& e)
    {
        std::vector<BigRat> d;
        for (int x : e) d.push_back(ppow(ell, x));
        return diag(ell, d);
    }

    int size() const { return n_; }
    long prime() const { return ell_; }
    BigRat& operator()(int i, int j) { return a_[static_cast<size_t>(i * n_ + j)]; }
    const BigRat& operator()(int i, int j) const { return a_[static_cast<size_t>(i * n_ + j)]; }
    const std::vector<BigRat>& entries() const { return a_; }

    friend MatQ operator*(const MatQ& x, const MatQ& y)
    {
        if (x.n_ != y.n_) throw std::invalid_argument("MatQ: size mismatch");
        MatQ r(x.n_, x.ell_);
        for (int i = 0; i < x.n_; ++i)
            for (int k = 0; k < x.n_; ++k) {
                const BigRat& xik = x(i, k);
                if (xik == 0) continue;
                for (int j = 0; j < x.n_; ++j) r(i, j) += xik * y(k, j);
            }
        return r;
    }
    friend MatQ operator*(const BigRat& s, const MatQ& x)
    {
        MatQ r = x;
        for (auto& v : r.a_) v *= s;
        return r;
    }
    friend MatQ operator+(const MatQ& x, const MatQ& y)
    {
        MatQ r = x;
        for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += y.a_[i];
        return r;
    }
    friend MatQ operator-(const MatQ& x, const MatQ& y)
    {
        MatQ r = x;
        for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= y.a_[i];
        return r;
    }
    friend bool operator==(const MatQ& x, const MatQ& y) { return x.n_ == y.n_ && x.a_ == y.a_; }
    friend bool operator!=(const MatQ& x, const MatQ& y) { return !(x == y); }

    MatQ transpose() const
    {
        MatQ r(n_, ell_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    BigRat det() const
    {
        MatQ m = *this;
        BigRat d = 1;
        for (int c = 0; c < n_; ++c) {
            int p = c;
            while (p < n_ && m(p, c) == 0) ++p;
            if (p == n_) return 0;
            if (p != c) {
                m.swap_rows(p, c);
                d = -d;
            }
            d *= m(c, c);
            for (int r = c + 1; r < n_; ++r) {
                if (m(r, c) == 0) continue;
                BigRat f = m(r, c) / m(c, c);
                for (int k = c; k < n_; ++k) m(r, k) -= f * m(c, k);
            }
        }
        return d;
    }

    MatQ inverse() const
    {
        MatQ m = *this, inv = identity(n_, ell_);
        for (int c = 0; c < n_; ++c) {
            int p = c;
            while (p < n_ && m(p, c) == 0) ++p;
            if (p == n_) throw std::domain_error("MatQ: singular matrix");
            m.swap_rows(p, c);
            inv.swap_rows(p, c);
            BigRat f = 1 / m(c, c);
            for (int k = 0; k < n_; ++k) {
                m(c, k) *= f;
                inv(c, k) *= f;
            }
            for (int r = 0; r < n_; ++r) {
                if (r == c || m(r, c) == 0) continue;
                BigRat g = m(r, c);
                for (int k = 0; k < n_; ++k) {
                    m(r, k) -= g * m(c, k);
                    inv(r, k) -= g * inv(c, k);
                }
            }
        }
        return inv;
    }

    int min_valuation() const
    {
        int v = kValInf;
        for (auto& x : a_) v = std::min(v, valuation(x, ell_));
        return v;
    }
    // smallest d >= 0 with l^d * M integral at l
    int den_exponent() const
    {
        int v = min_valuation();
        return v == kValInf || v >= 0 ? 0 : -v;
    }
    bool is_integral() const { return min_valuation() >= 0; }

    void swap_rows(int i, int j)
    {
        if (i == j) return;
        for (int k = 0; k < n_; ++k) std::swap((*this)(i, k), (*this)(j, k));
    }
    void swap_cols(int i, int j)
    {
        if (i == j) return;
        for (int k = 0; k < n_; ++k) std::swap((*this)(k, i), (*this)(k, j));
    }
    // col j += f * col i
    void add_col(int j, int i, const BigRat& f)
    {
        for (int k = 0; k < n_; ++k) (*this)(k, j) += f * (*this)(k, i);
    }

    std::vector<std::string> to_strings() const
    {
        std::vector<std::string> s;
        for (auto& x : a_) s.push_back(eusys::to_string(x));
        return s;
    }

private:
    int n_ = 0;
    long ell_ = 2;
    std::vector<BigRat> a_;
};

inline MatQ mat2(long ell, const BigRat& a, const BigRat& b, const BigRat& c, const BigRat& d)
{
    return MatQ(2, ell, {a, b, c, d});
}

inline MatQ J4(long ell)
{
    return MatQ(4, ell, std::vector<long long>{0, 0, 0, 1, 0, 0, 1, 0, 0, -1, 0, 0, -1, 0, 0, 0});
}

// g^t J g = mu J
inline BigRat multiplier(const MatQ& g)
{
    if (g.size() != 4) throw std::invalid_argument("multiplier: 4x4 matrix expected");
    MatQ J = J4(g.prime());
    MatQ m = g.transpose() * J * g;
    BigRat mu = m(0, 3);
    if (m != mu * J || mu == 0) throw NotSymplectic("matrix does not preserve the symplectic form up to scalar");
    return mu;
}

inline bool is_gsp4(const MatQ& g)
{
    try {
        multiplier(g);
        return true;
    } catch (const NotSymplectic&) {
        return false;
    }
}

inline MatQ embed_iota(const MatQ& h1, const MatQ& h2)
{
    if (h1.size() != 2 || h2.size() != 2) throw std::invalid_argument("embed_iota: 2x2 blocks expected");
    if (h1.det() != h2.det()) throw DeterminantMismatch("embed_iota: det h1 != det h2");
    MatQ m(4, h1.prime());
    m(0, 0) = h1(0, 0);
    m(0, 3) = h1(0, 1);
    m(3, 0) = h1(1, 0);
    m(3, 3) = h1(1, 1);
    m(1, 1) = h2(0, 0);
    m(1, 2) = h2(0, 1);
    m(2, 1) = h2(1, 0);
    m(2, 2) = h2(1, 1);
    return m;
}

// inverse of a GSp4 element through J: g^{-1} = mu^{-1} J^{-1} g^t J
inline MatQ gsp4_inverse(const MatQ& g)
{
    BigRat mu = multiplier(g);
    MatQ J = J4(g.prime());
    MatQ Jinv = BigRat(-1) * J;
    return (1 / mu) * (Jinv * g.transpose() * J);
}

} // namespace eusys
