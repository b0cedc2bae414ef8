#pragma once
#include "eusys/arith/laurent.hpp"
#include "eusys/hecke/cosets.hpp"

#include <map>
#include <set>

namespace eusys::hecke {

using Poly = MultiLaurent<SqrtPrimeExt>;

struct HeckeOp {
    Group group = Group::GSp4;
    long ell = 2;
    std::map<CartanLabel, BigRat> terms;

    static HeckeOp single(Group g, long ell, const CartanLabel& lab, const BigRat& c = 1)
    {
        HeckeOp h{g, ell, {}};
        h.terms[canonical_label(g, lab)] = c;
        return h;
    }
    static HeckeOp unit(Group g, long ell)
    {
        return single(g, ell, g == Group::GL2 ? CartanLabel{{0, 0}} : CartanLabel{{0, 0, 0}});
    }

    friend HeckeOp operator+(HeckeOp a, const HeckeOp& b)
    {
        check_same(a, b);
        for (auto& [l, c] : b.terms) {
            a.terms[l] += c;
            if (a.terms[l] == 0) a.terms.erase(l);
        }
        return a;
    }
    friend HeckeOp operator*(const BigRat& s, HeckeOp a)
    {
        if (s == 0) a.terms.clear();
        for (auto& [l, c] : a.terms) c *= s;
        return a;
    }
    friend bool operator==(const HeckeOp& a, const HeckeOp& b)
    {
        return a.group == b.group && a.ell == b.ell && a.terms == b.terms;
    }

    static void check_same(const HeckeOp& a, const HeckeOp& b)
    {
        if (a.group != b.group || a.ell != b.ell) throw std::invalid_argument("HeckeOp: group or prime mismatch");
    }
};

// the named operators: T, R, S on GSp4 and T, S on GL2; primes denote t^{-1}
inline HeckeOp op_T(long ell) { return HeckeOp::single(Group::GSp4, ell, {{1, 1, 1}}); }
inline HeckeOp op_R(long ell) { return HeckeOp::single(Group::GSp4, ell, {{2, 1, 2}}); }
inline HeckeOp op_S(long ell) { return HeckeOp::single(Group::GSp4, ell, {{1, 1, 2}}); }
inline HeckeOp op_T_prime(long ell) { return HeckeOp::single(Group::GSp4, ell, {{0, 0, -1}}); }
inline HeckeOp op_R_prime(long ell) { return HeckeOp::single(Group::GSp4, ell, {{0, -1, -2}}); }
inline HeckeOp op_S_prime(long ell) { return HeckeOp::single(Group::GSp4, ell, {{-1, -1, -2}}); }
inline HeckeOp op_gl2_T(long ell) { return HeckeOp::single(Group::GL2, ell, {{1, 0}}); }
inline HeckeOp op_gl2_S(long ell) { return HeckeOp::single(Group::GL2, ell, {{1, 1}}); }

inline std::map<CartanLabel, long long> convolve_labels(Group g, long ell, const CartanLabel& la, const CartanLabel& lb)
{
    auto A = decompose_double_coset(g, ell, la);
    auto B = decompose_double_coset(g, ell, lb);
    std::set<CartanLabel> cand;
    for (const auto& a : A->reps)
        for (const auto& b : B->reps) cand.insert(imat_label(a.m * b.m, ell));
    std::vector<IMat> inv;
    for (const auto& a : A->reps) inv.push_back(imat_inverse(a.m, ell));
    std::map<CartanLabel, long long> out;
    for (const auto& c : cand) {
        MatQ t = label_matrix(ell, c);
        IMat tc;
        tc.n = group_dim(g);
        int lo = kValInf;
        for (int i = 0; i < tc.n; ++i) lo = std::min(lo, valuation(t(i, i), ell));
        for (int i = 0; i < tc.n; ++i) tc.at(i, i) = ipow_ll(ell, valuation(t(i, i), ell) - lo);
        tc.shift = lo;
        tc.cval = g == Group::GL2 ? valuation(t.det(), ell) - 2 * lo : c.v[2] - 2 * lo;
        long long m = 0;
        for (const auto& ai : inv)
            if (imat_label(ai * tc, ell) == lb) ++m;
        if (m) out[c] = m;
    }
    return out;
}

// product in the spherical Hecke algebra, vol(K) = 1
inline HeckeOp convolve(const HeckeOp& a, const HeckeOp& b)
{
    HeckeOp::check_same(a, b);
    HeckeOp r{a.group, a.ell, {}};
    for (const auto& [la, ca] : a.terms)
        for (const auto& [lb, cb] : b.terms)
            for (const auto& [lc, m] : convolve_labels(a.group, a.ell, la, lb)) {
                r.terms[lc] += ca * cb * BigRat(static_cast<long>(m));
                if (r.terms[lc] == 0) r.terms.erase(lc);
            }
    return r;
}

// torus parametrization: GL2 diag(l^e1, l^e2) uses (e1,e2); GSp4 diag(l^e1, l^e2, l^(c-e2), l^(c-e1)) uses (e1,e2,c)
inline std::vector<int> torus_coords(Group g, const std::vector<int>& diag)
{
    if (g == Group::GL2) return {diag[0], diag[1]};
    return {diag[0], diag[1], diag[0] + diag[3]};
}

// sum of positive-root characters on the unipotent radical, as a linear form in torus coordinates
inline std::vector<int> rho_form(Group g)
{
    int n = group_dim(g);
    // a linear form for each diagonal entry's exponent in terms of the coordinates
    std::vector<std::vector<int>> entry;
    if (g == Group::GL2)
        entry = {{1, 0}, {0, 1}};
    else
        entry = {{1, 0, 0}, {0, 1, 0}, {0, -1, 1}, {-1, 0, 1}};
    std::set<std::vector<int>> roots;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::vector<int> f(entry[0].size());
            for (size_t k = 0; k < f.size(); ++k) f[k] = entry[i][k] - entry[j][k];
            roots.insert(f);
        }
    std::vector<int> sum(entry[0].size(), 0);
    for (const auto& r : roots)
        for (size_t k = 0; k < r.size(); ++k) sum[k] += r[k];
    return sum;
}

// unramified character times delta^{1/2} on the torus exponent vector t
inline Poly ps_character(Group g, long ell, const std::vector<int>& diag)
{
    auto co = torus_coords(g, diag);
    auto rho = rho_form(g);
    int dexp = 0;
    for (size_t k = 0; k < co.size(); ++k) dexp += rho[k] * co[k];
    // |l^dexp|^{1/2} = l^{-dexp/2}
    Poly m(SqrtPrimeExt::half_power(ell, -dexp));
    if (g == Group::GL2) return m * Poly::var(Var::ynu, co[0]) * Poly::var(Var::ymu, co[1]);
    return m * Poly::var(Var::x1, co[0]) * Poly::var(Var::x2, co[1]) * Poly::var(Var::x0, co[2]);
}

// eigenvalue on the spherical vector; reps may be right-translated by k to test independence
inline Poly ps_eigenvalue_label(Group g, long ell, const CartanLabel& lab, const MatQ* right_k = nullptr)
{
    auto L = decompose_double_coset(g, ell, lab);
    Poly s;
    for (const auto& r : L->reps) {
        MatQ m = r.mat(ell);
        if (right_k) m = m * *right_k;
        auto iw = iwasawa_borel(m);
        s += ps_character(g, ell, iw.t);
    }
    return s;
}

inline Poly ps_eigenvalue(const HeckeOp& op, const MatQ* right_k = nullptr)
{
    Poly s;
    for (const auto& [l, c] : op.terms) s += Poly(SqrtPrimeExt(c)) * ps_eigenvalue_label(op.group, op.ell, l, right_k);
    return s;
}

} // namespace eusys::hecke
