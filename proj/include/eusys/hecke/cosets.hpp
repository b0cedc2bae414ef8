#pragma once
#include "eusys/padic/groups.hpp"

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <stdexcept>
#include <vector>

namespace eusys::hecke {

enum class Group { GL2, GSp4 };

inline int group_dim(Group g) { return g == Group::GL2 ? 2 : 4; }
inline const char* group_name(Group g) { return g == Group::GL2 ? "GL2" : "GSp4"; }

struct EnumerationBoundExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using i128 = __int128;

inline int val128(i128 x, long ell)
{
    if (x == 0) return kValInf;
    int v = 0;
    while (x % ell == 0) {
        x /= ell;
        ++v;
    }
    return v;
}

inline long long ipow_ll(long ell, int e)
{
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= ell;
    return r;
}

// l^shift * M with M integral; cval = v(mu(M)) (GSp4) or v(det M) (GL2)
struct IMat {
    int n = 0;
    std::array<long long, 16> a{};
    int shift = 0;
    int cval = 0;

    long long& at(int i, int j) { return a[static_cast<size_t>(i * n + j)]; }
    long long at(int i, int j) const { return a[static_cast<size_t>(i * n + j)]; }

    friend IMat operator*(const IMat& x, const IMat& y)
    {
        IMat r;
        r.n = x.n;
        r.shift = x.shift + y.shift;
        r.cval = x.cval + y.cval;
        for (int i = 0; i < x.n; ++i)
            for (int j = 0; j < x.n; ++j) {
                i128 s = 0;
                for (int k = 0; k < x.n; ++k) s += static_cast<i128>(x.at(i, k)) * y.at(k, j);
                if (s > INT64_MAX || s < INT64_MIN) throw std::overflow_error("IMat: entry overflow");
                r.at(i, j) = static_cast<long long>(s);
            }
        return r;
    }

    MatQ to_mat(long ell) const
    {
        std::vector<long long> v(a.begin(), a.begin() + n * n);
        MatQ m(n, ell, v);
        return ppow(ell, shift) * m;
    }
};

// l^{-shift} adj: the inverse, kept integral
inline IMat imat_inverse(const IMat& g, long /*ell*/)
{
    IMat r;
    r.n = g.n;
    if (g.n == 2) {
        r.at(0, 0) = g.at(1, 1);
        r.at(0, 1) = -g.at(0, 1);
        r.at(1, 0) = -g.at(1, 0);
        r.at(1, 1) = g.at(0, 0);
        r.shift = -g.shift - g.cval;
        r.cval = g.cval;
        return r;
    }
    // J^{-1} g^t J with J^{-1} = -J; equals mu(g) g^{-1}
    static const int Jm[4][4] = {{0, 0, 0, 1}, {0, 0, 1, 0}, {0, -1, 0, 0}, {-1, 0, 0, 0}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            long long s = 0;
            for (int p = 0; p < 4; ++p)
                for (int q = 0; q < 4; ++q) {
                    long long w = -Jm[i][p] * Jm[q][j];
                    if (w) s += w * g.at(q, p);
                }
            r.at(i, j) = s;
        }
    r.shift = -g.shift - g.cval;
    r.cval = g.cval;
    return r;
}

namespace detail {

inline i128 minor_det(const IMat& m, const std::vector<int>& rows, const std::vector<int>& cols)
{
    size_t k = rows.size();
    if (k == 1) return m.at(rows[0], cols[0]);
    i128 s = 0;
    for (size_t c = 0; c < k; ++c) {
        std::vector<int> r2(rows.begin() + 1, rows.end()), c2;
        for (size_t d = 0; d < k; ++d)
            if (d != c) c2.push_back(cols[d]);
        i128 t = static_cast<i128>(m.at(rows[0], cols[c])) * minor_det(m, r2, c2);
        s += (c % 2 ? -t : t);
    }
    return s;
}

inline void subsets(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

inline const std::vector<std::vector<int>>& subsets_cached(int n, int k)
{
    static const auto table = [] {
        std::array<std::array<std::vector<std::vector<int>>, 5>, 5> t;
        for (int nn = 1; nn <= 4; ++nn)
            for (int kk = 1; kk <= nn; ++kk) {
                std::vector<int> cur;
                subsets(nn, kk, 0, cur, t[nn][kk]);
            }
        return t;
    }();
    return table[n][k];
}

} // namespace detail

// elementary divisors of the integral part via determinantal divisors, ascending
inline std::vector<int> imat_smith(const IMat& m, long ell)
{
    std::vector<int> d(static_cast<size_t>(m.n) + 1, 0);
    for (int k = 1; k <= m.n; ++k) {
        int best = kValInf;
        int floor_v = k == 1 ? 0 : 2 * d[k - 1] - (k >= 2 ? d[k - 2] : 0);   // d_k >= d_{k-1} + s_{k-1}
        const auto& S = detail::subsets_cached(m.n, k);
        for (const auto& r : S) {
            for (const auto& c : S) {
                int v = val128(detail::minor_det(m, r, c), ell);
                if (v < best) best = v;
                if (best <= floor_v) break;
            }
            if (best <= floor_v) break;
        }
        if (best == kValInf) throw std::domain_error("imat_smith: singular matrix");
        d[k] = best;
    }
    std::vector<int> s;
    for (int k = 1; k <= m.n; ++k) s.push_back(d[k] - d[k - 1] + m.shift);
    return s;
}

// for GSp4 the first two determinantal divisors and the multiplier fix the label
inline CartanLabel imat_label(const IMat& m, long ell)
{
    if (m.n == 2) {
        auto s = imat_smith(m, ell);
        return CartanLabel{{s[1], s[0]}};
    }
    int d1 = kValInf, d2 = kValInf;
    for (int i = 0; i < 16; ++i) d1 = std::min(d1, val128(m.a[static_cast<size_t>(i)], ell));
    for (int r0 = 0; r0 < 4 && d2 > 2 * d1; ++r0)
        for (int r1 = r0 + 1; r1 < 4 && d2 > 2 * d1; ++r1)
            for (int c0 = 0; c0 < 4; ++c0)
                for (int c1 = c0 + 1; c1 < 4; ++c1) {
                    i128 x = static_cast<i128>(m.at(r0, c0)) * m.at(r1, c1) - static_cast<i128>(m.at(r0, c1)) * m.at(r1, c0);
                    d2 = std::min(d2, val128(x, ell));
                }
    if (d1 == kValInf || d2 == kValInf) throw std::domain_error("imat_label: singular matrix");
    int c = m.cval + 2 * m.shift;
    int s0 = d1 + m.shift, s1 = d2 - d1 + m.shift;
    return gsp4_label_from({s0, s1, c - s1, c - s0}, c);
}

struct CosetRep {
    IMat m;   // upper triangular Borel form
    MatQ mat(long ell) const { return m.to_mat(ell); }
};

struct CosetList {
    Group group;
    long ell;
    CartanLabel label;
    std::vector<CosetRep> reps;
    int radius;
};

// canonical column-echelon key of the lattice M Z_l^n (upper triangular M)
inline std::vector<long long> lattice_key(const IMat& m, long ell)
{
    IMat r = m;
    int n = m.n;
    std::vector<long long> key;
    for (int i = n - 1; i >= 0; --i) {
        long long d = r.at(i, i);
        for (int j = i + 1; j < n; ++j) {
            long long x = r.at(i, j);
            long long q = x >= 0 ? x / d : -((-x + d - 1) / d);
            if (q == 0) continue;
            for (int k = 0; k <= i; ++k) r.at(k, j) -= q * r.at(k, i);
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) key.push_back(r.at(i, j));
    (void)ell;
    return key;
}

inline CartanLabel canonical_label(Group g, const CartanLabel& lab)
{
    if (g == Group::GL2) {
        if (lab.v.size() != 2 || lab.v[0] < lab.v[1]) throw std::invalid_argument("GL2 label must be (e1 >= e2)");
        return lab;
    }
    if (lab.v.size() != 3) throw std::invalid_argument("GSp4 label must be (a,b,c)");
    int a = lab.v[0], b = lab.v[1], c = lab.v[2];
    if (!(a >= b && b >= c - b)) throw std::invalid_argument("GSp4 label must satisfy a >= b >= c-b");
    return lab;
}

namespace detail {

// one pass over the residue box of the given radius
inline std::vector<CosetRep> enumerate_box(Group grp, long ell, const CartanLabel& lab, int radius)
{
    std::vector<CosetRep> out;
    std::set<std::vector<long long>> seen;
    auto push = [&](IMat m) {
        if (!(imat_label(m, ell) == lab)) return;
        if (seen.insert(lattice_key(m, ell)).second) out.push_back(CosetRep{m});
    };
    if (grp == Group::GL2) {
        int s = lab.v[1], E = lab.v[0] - s;
        for (int u = 0; u <= E; ++u) {
            long long du = ipow_ll(ell, u), dv = ipow_ll(ell, E - u);
            long long bx = ipow_ll(ell, std::min(u, radius));
            for (long long x = 0; x < bx; ++x) {
                IMat m;
                m.n = 2;
                m.shift = s;
                m.cval = E;
                m.at(0, 0) = du;
                m.at(0, 1) = x;
                m.at(1, 1) = dv;
                push(m);
            }
        }
        return out;
    }
    int s = lab.v[2] - lab.v[0];
    int C = lab.v[2] - 2 * s;
    for (int e1 = 0; e1 <= C; ++e1)
        for (int e2 = 0; e2 <= C; ++e2) {
            long long d1 = ipow_ll(ell, e1), d2 = ipow_ll(ell, e2), d3 = ipow_ll(ell, C - e2), d4 = ipow_ll(ell, C - e1);
            long long b1 = ipow_ll(ell, std::min(e1, radius)), b2 = ipow_ll(ell, std::min(e2, radius));
            for (long long x12 = 0; x12 < b1; ++x12) {
                if ((d4 * x12) % d2 != 0) continue;
                long long x34 = -(d4 * x12) / d2;
                for (long long x13 = 0; x13 < b1; ++x13)
                    for (long long x23 = 0; x23 < b2; ++x23) {
                        long long num = d4 * x13 + x23 * x34;
                        if (num % d3 != 0) continue;
                        long long x24 = num / d3;
                        for (long long x14 = 0; x14 < b1; ++x14) {
                            IMat m;
                            m.n = 4;
                            m.shift = s;
                            m.cval = C;
                            m.at(0, 0) = d1;
                            m.at(0, 1) = x12;
                            m.at(0, 2) = x13;
                            m.at(0, 3) = x14;
                            m.at(1, 1) = d2;
                            m.at(1, 2) = x23;
                            m.at(1, 3) = x24;
                            m.at(2, 2) = d3;
                            m.at(2, 3) = x34;
                            m.at(3, 3) = d4;
                            push(m);
                        }
                    }
            }
        }
    return out;
}

struct CosetCache {
    std::shared_mutex mu;
    std::map<std::tuple<int, long, std::vector<int>, int>, std::shared_ptr<const CosetList>> memo;
};

inline CosetCache& coset_cache()
{
    static CosetCache c;
    return c;
}

} // namespace detail

inline int max_diag_exponent(Group g, const CartanLabel& lab)
{
    if (g == Group::GL2) return lab.v[0] - lab.v[1];
    return 2 * lab.v[0] - lab.v[2];
}

inline int default_radius(Group g, const CartanLabel& lab)
{
    if (g == Group::GL2) return lab.v[0] - lab.v[1] + 1;
    return 2 * lab.v[0] - lab.v[2] + 1;
}

// left cosets g K of K t K, certified by stability under radius + 1
inline std::shared_ptr<const CosetList> decompose_double_coset(Group grp, long ell, const CartanLabel& label, int radius = -1)
{
    CartanLabel lab = canonical_label(grp, label);
    if (radius < 0) radius = default_radius(grp, lab);
    auto& cache = detail::coset_cache();
    auto key = std::make_tuple(static_cast<int>(grp), ell, lab.v, radius);
    {
        std::shared_lock lk(cache.mu);
        auto it = cache.memo.find(key);
        if (it != cache.memo.end()) return it->second;
    }
    auto reps = detail::enumerate_box(grp, ell, lab, radius);
    // once the radius covers every diagonal exponent the wider box is the same box
    if (radius < max_diag_exponent(grp, lab)) {
        auto wider = detail::enumerate_box(grp, ell, lab, radius + 1);
        if (wider.size() != reps.size())
            throw EnumerationBoundExceeded("coset count changed when the residue radius was increased");
    }
    auto list = std::make_shared<const CosetList>(CosetList{grp, ell, lab, std::move(reps), radius});
    std::unique_lock lk(cache.mu);
    return cache.memo.emplace(key, list).first->second;
}

} // namespace eusys::hecke
