#pragma once
#include "eusys/padic/matrix.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace eusys {

struct SubgroupTag {
    enum Kind { K, K1, K1Upper, K0, U0, H } kind = K;
    int e = 0;   // congruence exponent: l^e

    static SubgroupTag maximal() { return {K, 0}; }
    static SubgroupTag k1(int e) { return {K1, e}; }
    static SubgroupTag k1_upper(int e) { return {K1Upper, e}; }
    static SubgroupTag k0(int e) { return {K0, e}; }
    static SubgroupTag u0(int e) { return {U0, e}; }
    static SubgroupTag h() { return {H, 0}; }
};

inline bool congruent(const BigRat& x, long target, long ell, int e)
{
    return valuation(x - BigRat(target), ell) >= e;
}

struct MembershipResult {
    BigRat mu;
    bool member;
};

inline bool unit_at(const BigRat& x, long ell) { return x != 0 && valuation(x, ell) == 0; }

inline MembershipResult multiplier_and_membership(const MatQ& g, SubgroupTag tag)
{
    long ell = g.prime();
    if (g.size() == 4) {
        BigRat mu = multiplier(g);
        bool m = g.is_integral() && unit_at(mu, ell);
        if (m && tag.kind == SubgroupTag::H) {
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    bool block = ((i == 0 || i == 3) && (j == 0 || j == 3)) || ((i == 1 || i == 2) && (j == 1 || j == 2));
                    if (!block && g(i, j) != 0) m = false;
                }
        } else if (tag.kind != SubgroupTag::K && tag.kind != SubgroupTag::H) {
            throw std::invalid_argument("membership: congruence tags are defined for GL2 only");
        }
        return {mu, m};
    }
    BigRat d = g.det();
    if (g.size() != 2) return {d, g.is_integral() && unit_at(d, ell)};
    bool m = g.is_integral() && unit_at(d, ell);
    const BigRat &a = g(0, 0), &c = g(1, 0), &dd = g(1, 1);
    switch (tag.kind) {
    case SubgroupTag::K:
        break;
    case SubgroupTag::K1:
        m = m && valuation(c, ell) >= tag.e && congruent(dd, 1, ell, tag.e);
        break;
    case SubgroupTag::K1Upper:
        m = m && valuation(c, ell) >= tag.e && congruent(a, 1, ell, tag.e);
        break;
    case SubgroupTag::K0:
        m = m && valuation(c, ell) >= tag.e;
        break;
    case SubgroupTag::U0:
        m = m && d == 1 && valuation(c, ell) >= tag.e;
        break;
    case SubgroupTag::H:
        throw std::invalid_argument("membership: H is a 4x4 tag");
    }
    return {d, m};
}

inline bool member(const MatQ& g, SubgroupTag tag) { return multiplier_and_membership(g, tag).member; }

// elementary divisor valuations over Z_(l), ascending
inline std::vector<int> smith_invariants(const MatQ& g)
{
    long ell = g.prime();
    int n = g.size();
    MatQ m = g;
    std::vector<int> out;
    for (int t = 0; t < n; ++t) {
        int br = -1, bc = -1, bv = kValInf;
        for (int i = t; i < n; ++i)
            for (int j = t; j < n; ++j) {
                int v = valuation(m(i, j), ell);
                if (v < bv) {
                    bv = v;
                    br = i;
                    bc = j;
                }
            }
        if (bv == kValInf) throw std::domain_error("smith_invariants: singular matrix");
        m.swap_rows(t, br);
        m.swap_cols(t, bc);
        for (int i = t + 1; i < n; ++i) {
            if (m(i, t) == 0) continue;
            BigRat f = m(i, t) / m(t, t);
            for (int k = t; k < n; ++k) m(i, k) -= f * m(t, k);
        }
        for (int j = t + 1; j < n; ++j) m(t, j) = 0;
        out.push_back(bv);
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct InconsistentInvariants : std::logic_error {
    using std::logic_error::logic_error;
};

// gl2: (e1 >= e2); gsp4: (a, b, c) with a >= b >= c - b
struct CartanLabel {
    std::vector<int> v;
    bool operator<(const CartanLabel& o) const { return v < o.v; }
    bool operator==(const CartanLabel& o) const { return v == o.v; }
    std::string str() const
    {
        std::string s = "(";
        for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
        return s + ")";
    }
};

inline CartanLabel gsp4_label_from(const std::vector<int>& s, int c)
{
    // s ascending: {c-a, c-b, b, a}
    int a = s[3], b = s[2];
    if (s[0] + s[3] != c || s[1] + s[2] != c || b < c - b)
        throw InconsistentInvariants("Smith invariants incompatible with multiplier valuation");
    return CartanLabel{{a, b, c}};
}

inline CartanLabel cartan_label(const MatQ& g)
{
    auto s = smith_invariants(g);
    if (g.size() == 2) return CartanLabel{{s[1], s[0]}};
    if (g.size() != 4) throw std::invalid_argument("cartan_label: size 2 or 4 expected");
    BigRat mu = multiplier(g);
    return gsp4_label_from(s, valuation(mu, g.prime()));
}

// torus element t(nu) = diag(l^nu1, l^nu2, l^(nu3-nu2), l^(nu3-nu1))
inline MatQ torus_t(long ell, int n1, int n2, int n3) { return MatQ::torus(ell, {n1, n2, n3 - n2, n3 - n1}); }

inline MatQ label_matrix(long ell, const CartanLabel& lab)
{
    if (lab.v.size() == 2) return MatQ::torus(ell, {lab.v[0], lab.v[1]});
    return torus_t(ell, lab.v[0], lab.v[1], lab.v[2]);
}

inline bool coset_equal(const MatQ& g, const MatQ& h, SubgroupTag tag, bool left = true)
{
    MatQ x = left ? g.inverse() * h : h * g.inverse();
    return member(x, tag);
}

struct Iwasawa {
    std::vector<int> t;   // exponents of the diagonal torus part
    MatQ n;               // upper unitriangular
    MatQ k;               // integral, in K
};

namespace detail {

// symplectic column operations, recorded as right multiplications
struct ColOps {
    MatQ g;
    MatQ acc;   // product of applied operations
    void apply(const MatQ& e)
    {
        g = g * e;
        acc = acc * e;
    }
};

inline MatQ root_unipotent(long ell, int which, const BigRat& x, bool transposed)
{
    MatQ e = MatQ::identity(4, ell);
    switch (which) {
    case 12: e(0, 1) = x; e(2, 3) = -x; break;
    case 13: e(0, 2) = x; e(1, 3) = x; break;
    case 14: e(0, 3) = x; break;
    case 23: e(1, 2) = x; break;
    default: throw std::invalid_argument("root_unipotent");
    }
    return transposed ? e.transpose() : e;
}

inline MatQ weyl_plane14(long ell)
{
    return embed_iota(mat2(ell, 0, 1, -1, 0), MatQ::identity(2, ell));
}
inline MatQ weyl_plane23(long ell)
{
    return embed_iota(MatQ::identity(2, ell), mat2(ell, 0, 1, -1, 0));
}
inline MatQ weyl_swap(long ell)
{
    return MatQ(4, ell, std::vector<long long>{0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0});
}

inline Iwasawa finish(const MatQ& g, const MatQ& b, const MatQ& acc)
{
    long ell = g.prime();
    int n = g.size();
    Iwasawa r;
    std::vector<BigRat> tdiag, eps;
    for (int i = 0; i < n; ++i) {
        int v = valuation(b(i, i), ell);
        r.t.push_back(v);
        tdiag.push_back(ppow(ell, v));
        eps.push_back(b(i, i) / ppow(ell, v));
    }
    MatQ te = MatQ::diag(ell, tdiag) * MatQ::diag(ell, eps);
    r.n = b * te.inverse();
    // g * acc = b = n t eps  =>  g = n t (eps acc^{-1})
    r.k = MatQ::diag(ell, eps) * acc.inverse();
    return r;
}

} // namespace detail

// g = n t k with n upper unitriangular, t a power-of-l diagonal, k integral
inline Iwasawa iwasawa_borel(const MatQ& g)
{
    long ell = g.prime();
    int n = g.size();
    if (n == 4) {
        multiplier(g);
        detail::ColOps ops{g, MatQ::identity(4, ell)};
        // bottom row -> (0,0,0,p)
        int best = 0, bv = kValInf;
        for (int j = 0; j < 4; ++j) {
            int v = valuation(ops.g(3, j), ell);
            if (v < bv) {
                bv = v;
                best = j;
            }
        }
        if (best == 1) {
            ops.apply(detail::weyl_swap(ell));
            best = 0;
        }
        if (best == 0) ops.apply(detail::weyl_plane14(ell));
        if (best == 2) ops.apply(detail::weyl_swap(ell));
        BigRat p = ops.g(3, 3);
        ops.apply(detail::root_unipotent(ell, 12, ops.g(3, 2) / p, true));
        ops.apply(detail::root_unipotent(ell, 13, -ops.g(3, 1) / p, true));
        ops.apply(detail::root_unipotent(ell, 14, -ops.g(3, 0) / p, true));
        // middle plane: clear (2,1)
        if (valuation(ops.g(2, 1), ell) < valuation(ops.g(2, 2), ell)) ops.apply(detail::weyl_plane23(ell));
        if (ops.g(2, 1) != 0) {
            BigRat f = -ops.g(2, 1) / ops.g(2, 2);
            ops.apply(embed_iota(MatQ::identity(2, ell), mat2(ell, 1, 0, f, 1)));
        }
        for (int i = 1; i < 4; ++i)
            for (int j = 0; j < i; ++j)
                if (ops.g(i, j) != 0) throw std::logic_error("iwasawa_borel: reduction did not triangularize");
        return detail::finish(g, ops.g, ops.acc);
    }
    // GL_n: bottom-up pivoting by minimal valuation
    MatQ b = g, acc = MatQ::identity(n, ell);
    for (int i = n - 1; i >= 0; --i) {
        int best = -1, bv = kValInf;
        for (int j = 0; j <= i; ++j) {
            int v = valuation(b(i, j), ell);
            if (v < bv) {
                bv = v;
                best = j;
            }
        }
        if (best < 0) throw std::domain_error("iwasawa_borel: singular matrix");
        b.swap_cols(best, i);
        acc.swap_cols(best, i);
        for (int j = 0; j < i; ++j) {
            if (b(i, j) == 0) continue;
            BigRat f = -b(i, j) / b(i, i);
            b.add_col(j, i, f);
            acc.add_col(j, i, f);
        }
    }
    return detail::finish(g, b, acc);
}

} // namespace eusys
