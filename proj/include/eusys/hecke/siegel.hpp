#pragma once
#include "eusys/arith/sqrt_ext.hpp"
#include "eusys/padic/groups.hpp"

#include <array>
#include <map>
#include <stdexcept>
#include <vector>

namespace eusys::hecke {

struct DivergentSeries : std::domain_error {
    using std::domain_error::domain_error;
};

// ch(Z_l^2) for t = 0, else ch(l^t Z_l x (1 + l^t Z_l))
struct SchwartzPhi {
    int t = 0;
    bool contains(const BigRat& x, const BigRat& y, long ell) const
    {
        if (valuation(x, ell) < 0 || valuation(y, ell) < 0) return false;
        if (t == 0) return true;
        return valuation(x, ell) >= t && valuation(y - 1, ell) >= t;
    }
    // membership of (l^n u a, l^n u b) depends on u only mod l^modulus_exp()
    int modulus_exp() const { return t == 0 ? 1 : t; }
};

// num(Y) / (1 - rho Y) with Y = l^{-s}; num is a Laurent polynomial in Y
struct YRational {
    long ell = 2;
    std::map<int, SqrtPrimeExt> num;
    SqrtPrimeExt rho;   // zero when there is no tail

    bool is_constant() const { return rho.is_zero() && (num.empty() || (num.size() == 1 && num.begin()->first == 0)); }
    SqrtPrimeExt constant() const
    {
        if (!is_constant()) throw std::logic_error("YRational: not a constant");
        return num.empty() ? SqrtPrimeExt(0) : num.begin()->second;
    }
    SqrtPrimeExt eval(const SqrtPrimeExt& Y) const
    {
        SqrtPrimeExt den = SqrtPrimeExt(1) - rho * Y;
        if (den.is_zero()) throw DivergentSeries("Mellin transform evaluated at its pole");
        SqrtPrimeExt s(0);
        for (const auto& [k, c] : num) s += c * Y.pow(k);
        return s / den;
    }
    // first terms of the power series, for comparisons against truncated sums
    std::map<int, SqrtPrimeExt> expand(int upto) const
    {
        std::map<int, SqrtPrimeExt> out;
        for (const auto& [k, c] : num) {
            SqrtPrimeExt r(1);
            for (int j = 0; k + j <= upto; ++j) {
                out[k + j] += c * r;
                if (rho.is_zero()) break;
                r *= rho;
            }
        }
        return out;
    }
};

namespace detail {

// d^x-volume of {u in Z_l^x : phi(l^n u k10, l^n u k11)}
inline BigRat shell_volume(const SchwartzPhi& phi, long ell, int n, const BigRat& a, const BigRat& b)
{
    int M = phi.modulus_exp();
    long long mod = ipow(ell, M), hits = 0, units = 0;
    BigRat s = ppow(ell, n);
    for (long long u = 1; u < mod; ++u) {
        if (u % ell == 0) continue;
        ++units;
        BigRat U(static_cast<long>(u));
        if (phi.contains(s * U * a, s * U * b, ell)) ++hits;
    }
    return BigRat(static_cast<long>(hits)) / BigRat(static_cast<long>(units));
}

} // namespace detail

// integral over Q_l^x of phi((0,x)k) lam(x) |x|^{s+1/2} d^x x, with lam(l) = lam
inline YRational mellin_siegel_eval(const SchwartzPhi& phi, const MatQ& k, const SqrtPrimeExt& lam)
{
    long ell = k.prime();
    if (k.size() != 2 || !k.is_integral() || k.det() == 0) throw std::invalid_argument("mellin_siegel_eval: integral invertible 2x2 k expected");
    if (phi.t < 0) throw std::invalid_argument("mellin_siegel_eval: negative level");
    const BigRat &a = k(1, 0), &b = k(1, 1);
    // below n_lo the vector (0,x)k is not integral
    int n_lo = -std::min(valuation(a, ell), valuation(b, ell));
    // beyond n_st the shell volume no longer changes: the second coordinate is in l Z_l
    int n_st = phi.t == 0 || b == 0 ? n_lo : std::max(n_lo, -valuation(b, ell) + 1);
    YRational r;
    r.ell = ell;
    SqrtPrimeExt step = lam * SqrtPrimeExt::half_power(ell, -1);   // lam l^{-1/2} per unit of n, times Y^n
    for (int n = n_lo; n < n_st; ++n) {
        BigRat v = detail::shell_volume(phi, ell, n, a, b);
        if (v != 0) r.num[n] += SqrtPrimeExt(v) * step.pow(n);
    }
    BigRat tail = detail::shell_volume(phi, ell, n_st, a, b);
    if (tail != detail::shell_volume(phi, ell, n_st + 1, a, b)) throw std::logic_error("mellin_siegel_eval: tail not stable");
    if (tail != 0) {
        r.num[n_st] += SqrtPrimeExt(tail) * step.pow(n_st);
        r.rho = step;
    }
    for (auto it = r.num.begin(); it != r.num.end();) it = it->second.is_zero() ? r.num.erase(it) : std::next(it);
    return r;
}

// ---- integrality of the level structure

struct IntegralityReport {
    long ell = 0;
    int level = 2;
    long long h1_count = 0, h2_count = 0, pairs = 0;
    long long stab_fail = 0;
    std::array<long long, 2> conj_fail{0, 0};   // per choice of m
    BigInt index;                               // [H(Z_l) : K_1(l^2) x K^1(l^2)]
    BigInt index_expected;                      // l^4 (l^2-1)^2
    BigRat c_over_index;                        // C_l / (l-1) / index
    int power = 0;                              // the exponent when c_over_index is a power of l
    bool is_power = false;
    bool stab_ok() const { return stab_fail == 0; }
    bool conj_ok() const { return conj_fail[0] == 0 && conj_fail[1] == 0; }
    bool volume_ok() const { return index == index_expected && is_power; }
    bool pass() const { return stab_ok() && conj_ok() && volume_ok(); }
};

inline BigInt c_ell(long ell)
{
    BigInt l(static_cast<long>(ell));
    return l * l * l * (l - 1) * (l - 1) * (l - 1) * (l + 1) * (l + 1);
}

namespace detail {

using M2 = std::array<long long, 4>;

inline long long md(long long x, long long m) { return ((x % m) + m) % m; }

// residues mod l^r of K_1(l^e) (upper = false) or K^1(l^e) (upper = true)
inline std::vector<M2> congruence_residues(long ell, int r, int e, bool upper)
{
    long long q = ipow(ell, r), le = ipow(ell, e);
    std::vector<M2> out;
    for (long long a = 0; a < q; ++a)
        for (long long b = 0; b < q; ++b)
            for (long long c = 0; c < q; c += le)
                for (long long d = 0; d < q; ++d) {
                    long long one = upper ? a : d, other = upper ? d : a;
                    if (md(one - 1, le) != 0 || other % ell == 0) continue;
                    out.push_back({a, b, c, d});
                }
    return out;
}

inline long long det_mod(const M2& h, long long q) { return md(h[0] * h[3] - h[1] * h[2], q); }

// is eta^{-1} iota(h1,h2) eta integral; l eta = l I + N, l eta^{-1} = l I - N
inline bool eta_conj_integral(const M2& h1, const M2& h2, long ell)
{
    long long M[4][4] = {};
    M[0][0] = h1[0], M[0][3] = h1[1], M[3][0] = h1[2], M[3][3] = h1[3];
    M[1][1] = h2[0], M[1][2] = h2[1], M[2][1] = h2[2], M[2][2] = h2[3];
    long long P[4][4], Q[4][4], R[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            long long n = (i == 0 && j == 2) || (i == 1 && j == 3) ? 1 : 0;
            P[i][j] = (i == j ? ell : 0) - n;
            Q[i][j] = (i == j ? ell : 0) + n;
        }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            R[i][j] = 0;
            for (int k = 0; k < 4; ++k) R[i][j] += P[i][k] * M[k][j];
        }
    long long l2 = ell * ell;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            long long s = 0;
            for (int k = 0; k < 4; ++k) s += R[i][k] * Q[k][j];
            if (s % l2 != 0) return false;
        }
    return true;
}

// m^{-1} h m in K_1(l), computed as adj(m) h m / det m
inline bool m_conj_in_k1(const M2& h, const M2& m, long ell)
{
    long long D = m[0] * m[3] - m[1] * m[2];
    M2 adj{m[3], -m[1], -m[2], m[0]};
    auto mul = [](const M2& x, const M2& y) {
        return M2{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
    };
    M2 r = mul(mul(adj, h), m);
    for (auto x : r)
        if (x % D != 0) return false;
    for (auto& x : r) x /= D;
    return md(r[2], ell) == 0 && md(r[3] - 1, ell) == 0 && md(r[0] * r[3] - r[1] * r[2], ell) != 0;
}

// elements of GL2(Z/l^r) bucketed by determinant
inline std::map<long long, long long> det_histogram(const std::vector<M2>& xs, long long q)
{
    std::map<long long, long long> h;
    for (const auto& x : xs) ++h[det_mod(x, q)];
    return h;
}

inline std::vector<M2> gl2_residues(long ell, int r)
{
    long long q = ipow(ell, r);
    std::vector<M2> out;
    for (long long a = 0; a < q; ++a)
        for (long long b = 0; b < q; ++b)
            for (long long c = 0; c < q; ++c)
                for (long long d = 0; d < q; ++d)
                    if (md(a * d - b * c, ell) != 0) out.push_back({a, b, c, d});
    return out;
}

// largest k with l^k | n, and whether n is exactly +-l^k
inline std::pair<int, bool> ell_power_of(const BigRat& x, long ell)
{
    int v = valuation(x, ell);
    return {v, x == ppow(ell, v)};
}

} // namespace detail

// all conditions on (h1, h2) involved depend only on residues mod l^3
inline IntegralityReport integrality_volume_check(long ell, int level = 2)
{
    using namespace detail;
    IntegralityReport r;
    r.ell = ell;
    r.level = level;
    const int R = 3;
    long long q = ipow(ell, R), l2 = ell * ell;
    auto H1 = congruence_residues(ell, R, level, false);
    auto H2 = congruence_residues(ell, R, level, true);
    r.h1_count = static_cast<long long>(H1.size());
    r.h2_count = static_cast<long long>(H2.size());

    // (a) phi_{l,2} = ch(l^2 Z x (1 + l^2 Z)) is preserved by x -> x h1
    for (const auto& h : H1)
        for (long long al = 0; al < ell; ++al)
            for (long long be = 0; be < ell; ++be) {
                long long x0 = l2 * al, x1 = 1 + l2 * be;
                long long y0 = x0 * h[0] + x1 * h[2], y1 = x0 * h[1] + x1 * h[3];
                if (md(y0, l2) != 0 || md(y1 - 1, l2) != 0) ++r.stab_fail;
            }

    // (b) conjugation by (eta, m) for both m
    const std::array<M2, 2> ms{M2{0, -1, l2, 0}, M2{0, -ell, l2, 0}};
    std::map<long long, std::vector<size_t>> by_det;
    for (size_t i = 0; i < H2.size(); ++i) by_det[det_mod(H2[i], q)].push_back(i);
    std::vector<std::array<bool, 2>> h2_ok(H2.size());
    for (size_t i = 0; i < H2.size(); ++i)
        for (int j = 0; j < 2; ++j) h2_ok[i][static_cast<size_t>(j)] = m_conj_in_k1(H2[i], ms[static_cast<size_t>(j)], ell);
    for (const auto& h1 : H1) {
        auto it = by_det.find(det_mod(h1, q));
        if (it == by_det.end()) continue;
        for (size_t i : it->second) {
            ++r.pairs;
            bool e = eta_conj_integral(h1, H2[i], ell);
            for (size_t j = 0; j < 2; ++j)
                if (!e || !h2_ok[i][j]) ++r.conj_fail[j];
        }
    }

    // (c) index by counting mod l^2, where both subgroups are defined
    auto all = det_histogram(gl2_residues(ell, 2), l2);
    auto s1 = det_histogram(congruence_residues(ell, 2, level, false), l2);
    auto s2 = det_histogram(congruence_residues(ell, 2, level, true), l2);
    BigInt big = 0, small = 0;
    for (auto& [d, n] : all) big += BigInt(static_cast<long>(n)) * BigInt(static_cast<long>(n));
    for (auto& [d, n] : s1)
        if (s2.count(d)) small += BigInt(static_cast<long>(n)) * BigInt(static_cast<long>(s2[d]));
    r.index = big / small;
    BigInt l(static_cast<long>(ell));
    r.index_expected = l * l * l * l * (l * l - 1) * (l * l - 1);
    r.c_over_index = BigRat(c_ell(ell)) / BigRat(l - 1) / BigRat(r.index);
    auto [p, exact] = ell_power_of(r.c_over_index, ell);
    r.power = p;
    r.is_power = exact;
    return r;
}

// ---- the volume identity l V^2 / (l-1) = 1 / C_l

struct VolumeAlgebraReport {
    long ell = 0;
    BigRat V, V_counted, lhs, rhs;
    BigInt C;
    bool symbolic = false;
    bool pass() const { return V == V_counted && lhs == rhs && symbolic; }
};

namespace detail {

using IPoly = std::vector<BigInt>;   // coefficient of l^i at index i

inline IPoly ipoly_mul(const IPoly& a, const IPoly& b)
{
    IPoly r(a.size() + b.size() - 1, BigInt(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

inline IPoly ipoly_trim(IPoly a)
{
    while (a.size() > 1 && a.back() == 0) a.pop_back();
    return a;
}

} // namespace detail

inline VolumeAlgebraReport volume_algebra_check(long ell)
{
    using namespace detail;
    VolumeAlgebraReport r;
    r.ell = ell;
    BigRat l(static_cast<long>(ell));
    r.V = 1 / (l * l * (l * l - 1));
    // vol of {c = 0, d = 1 mod l^2} in SL2(Z_l), by counting mod l^2
    long long q = ell * ell, total = 0, sub = 0;
    for (const auto& g : gl2_residues(ell, 2)) {
        if (det_mod(g, q) != 1) continue;
        ++total;
        if (g[2] == 0 && g[3] == 1) ++sub;
    }
    r.V_counted = BigRat(static_cast<long>(sub)) / BigRat(static_cast<long>(total));
    r.C = c_ell(ell);
    r.lhs = l * r.V * r.V / (l - 1);
    r.rhs = 1 / BigRat(r.C);
    // as polynomials in l: l C_l = (l-1) (l^2 (l^2-1))^2
    IPoly L{0, 1}, Lm1{-1, 1}, Lp1{1, 1}, L2m1{-1, 0, 1}, L2{0, 0, 1};
    IPoly lhs = L;
    for (const auto& f : {L, L, L, Lm1, Lm1, Lm1, Lp1, Lp1}) lhs = ipoly_mul(lhs, f);
    IPoly w = ipoly_mul(L2, L2m1);
    IPoly rhs = ipoly_mul(Lm1, ipoly_mul(w, w));
    r.symbolic = ipoly_trim(lhs) == ipoly_trim(rhs);
    return r;
}

} // namespace eusys::hecke
