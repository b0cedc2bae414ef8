#pragma once
#include "eusys/padic/groups.hpp"

#include <deque>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace eusys::hecke {

// canonical data of gK in GL2(Q_l)/GL2(Z_l): (a, b, y) with gK = [[l^a, y],[0, l^b]]K, y reduced mod l^a
struct GlKey {
    int a = 0, b = 0;
    BigRat y;
    bool operator<(const GlKey& o) const
    {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return y < o.y;
    }
    bool operator==(const GlKey& o) const { return a == o.a && b == o.b && y == o.y; }
};

inline BigRat reduce_mod_power(const BigRat& y, long ell, int a)
{
    if (y == 0) return 0;
    int v = std::min(valuation(y, ell), a);
    int s = v < 0 ? -v : 0;
    BigRat scaled = y * ppow(ell, s);   // in Z_(l)
    long long r = residue(scaled, ell, a + s);
    return BigRat(static_cast<long>(r)) / ppow(ell, s);
}

inline GlKey gl2_k_key(const MatQ& g, MatQ* canon = nullptr)
{
    long ell = g.prime();
    auto iw = iwasawa_borel(g);
    GlKey k;
    k.a = iw.t[0];
    k.b = iw.t[1];
    BigRat y = iw.n(0, 1) * ppow(ell, k.b);
    k.y = reduce_mod_power(y, ell, k.a);
    if (canon) *canon = mat2(ell, ppow(ell, k.a), k.y, 0, ppow(ell, k.b));
    return k;
}

// gK_1(l^e): the K-key plus the bottom row of k^{-1} mod l^e where g = b k
struct K1Key {
    GlKey k;
    long long c = 0, d = 0;
    bool operator<(const K1Key& o) const
    {
        if (!(k == o.k)) return k < o.k;
        if (c != o.c) return c < o.c;
        return d < o.d;
    }
};

inline K1Key gl2_k1_key(const MatQ& g, int e)
{
    long ell = g.prime();
    MatQ b;
    K1Key r;
    r.k = gl2_k_key(g, &b);
    MatQ kinv = g.inverse() * b;
    r.c = residue(kinv(1, 0), ell, e);
    r.d = residue(kinv(1, 1), ell, e);
    return r;
}

// topological generators of Z_l^x
inline std::vector<long> unit_generators(long ell)
{
    if (ell == 2) return {-1, 3};
    long l2 = ell * ell;
    for (long g = 2; g < l2; ++g) {
        if (g % ell == 0) continue;
        long x = 1, ord = 0;
        do {
            x = x * g % l2;
            ++ord;
        } while (x != 1);
        if (ord == ell * (ell - 1)) return {g};
    }
    throw std::logic_error("no primitive root");
}

inline std::vector<MatQ> gens_K(long ell)
{
    std::vector<MatQ> g{mat2(ell, 1, 1, 0, 1), mat2(ell, 1, 0, 1, 1)};
    for (long u : unit_generators(ell)) g.push_back(mat2(ell, u, 0, 0, 1));
    return g;
}

inline std::vector<MatQ> gens_K1(long ell)
{
    std::vector<MatQ> g{mat2(ell, 1, 1, 0, 1), mat2(ell, 1, 0, ell, 1), mat2(ell, 1, 0, 0, 1 + ell)};
    for (long u : unit_generators(ell)) g.push_back(mat2(ell, u, 0, 0, 1));
    if (ell == 2) g.push_back(mat2(ell, 1, 0, 0, -1));
    return g;
}

// orbit of the coset of start under the group generated by gens, keyed by keyfn
template <class Key>
std::vector<MatQ> coset_orbit(const MatQ& start, const std::vector<MatQ>& gens, const std::function<Key(const MatQ&)>& keyfn)
{
    std::map<Key, bool> seen;
    std::vector<MatQ> out;
    std::deque<MatQ> q{start};
    seen[keyfn(start)] = true;
    out.push_back(start);
    while (!q.empty()) {
        MatQ g = q.front();
        q.pop_front();
        for (const auto& s : gens) {
            MatQ h = s * g;
            Key k = keyfn(h);
            if (seen.count(k)) continue;
            seen[k] = true;
            out.push_back(h);
            q.push_back(h);
        }
    }
    return out;
}

// a formal sum of left K_1(l) cosets applied to a universal K_1(l)-fixed vector
struct CosetMultiset {
    std::map<K1Key, std::pair<long, MatQ>> items;

    void add(const MatQ& g, long n = 1)
    {
        auto k = gl2_k1_key(g, 1);
        auto it = items.find(k);
        if (it == items.end())
            items.emplace(k, std::make_pair(n, g));
        else
            it->second.first += n;
    }
    long size() const
    {
        long s = 0;
        for (auto& [k, v] : items) s += v.first;
        return s;
    }
    friend CosetMultiset operator+(CosetMultiset a, const CosetMultiset& b)
    {
        for (auto& [k, v] : b.items) a.add(v.second, v.first);
        return a;
    }
    CosetMultiset scaled(long n) const
    {
        CosetMultiset r;
        for (auto& [k, v] : items) r.add(v.second, v.first * n);
        return r;
    }
    bool operator==(const CosetMultiset& o) const
    {
        if (items.size() != o.items.size()) return false;
        for (auto& [k, v] : items) {
            auto it = o.items.find(k);
            if (it == o.items.end() || it->second.first != v.first) return false;
        }
        return true;
    }
};

using FormalOp = std::vector<MatQ>;

inline CosetMultiset apply_op(const FormalOp& op, const CosetMultiset& x)
{
    CosetMultiset r;
    for (const auto& g : op)
        for (auto& [k, v] : x.items) r.add(g * v.second, v.first);
    return r;
}

struct DegeneracyOps {
    long ell;
    FormalOp pr1, pr2, t_nl, t_n, s_prime;
    size_t index_k1 = 0;   // [K_1 : K_1 cap t^{-1} K_1 t]
};

inline MatQ t_ell(long ell) { return mat2(ell, 1, 0, 0, ell); }

inline DegeneracyOps degeneracy_ops(long ell)
{
    DegeneracyOps o;
    o.ell = ell;
    MatQ I = MatQ::identity(2, ell), t = t_ell(ell), tinv = t.inverse();
    MatQ sp = mat2(ell, make_rat(1, ell), 0, 0, make_rat(1, ell));
    MatQ dl = mat2(ell, ell, 0, 0, 1);
    std::function<K1Key(const MatQ&)> k1 = [](const MatQ& g) { return gl2_k1_key(g, 1); };
    std::function<GlKey(const MatQ&)> kk = [](const MatQ& g) { return gl2_k_key(g); };
    // cosets of t^{-1} K_1 t: k t^{-1} K_1 t = k' t^{-1} K_1 t iff k t^{-1} K_1 = k' t^{-1} K_1
    std::function<K1Key(const MatQ&)> kt = [tinv](const MatQ& g) { return gl2_k1_key(g * tinv, 1); };
    o.pr1 = coset_orbit(I, gens_K(ell), k1);
    for (const auto& k : coset_orbit(I, gens_K(ell), kt)) o.pr2.push_back(k * dl);
    for (const auto& g : coset_orbit(t, gens_K1(ell), k1)) o.t_nl.push_back(sp * g);
    for (const auto& g : coset_orbit(t, gens_K(ell), kk)) o.t_n.push_back(sp * g);
    o.s_prime = {sp};
    o.index_k1 = coset_orbit(I, gens_K1(ell), kt).size();
    return o;
}

// K_1(l)-invariant test elements: orbits of single cosets
inline std::vector<CosetMultiset> degeneracy_test_elements(long ell)
{
    std::function<K1Key(const MatQ&)> k1 = [](const MatQ& g) { return gl2_k1_key(g, 1); };
    std::vector<MatQ> seeds;
    std::vector<MatQ> ks{MatQ::identity(2, ell), mat2(ell, 0, 1, 1, 0), mat2(ell, 1, 0, 1, 1)};
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b)
            for (const auto& k : ks) {
                seeds.push_back(MatQ::torus(ell, {a, b}) * k);
                seeds.push_back(mat2(ell, 1, make_rat(1, ell), 0, 1) * MatQ::torus(ell, {a, b}) * k);
            }
    std::vector<CosetMultiset> out;
    std::set<K1Key> used;
    for (const auto& s : seeds) {
        auto orbit = coset_orbit(s, gens_K1(ell), k1);
        if (used.count(k1(orbit.front()))) continue;
        CosetMultiset m;
        for (const auto& g : orbit) {
            used.insert(k1(g));
            m.add(g);
        }
        out.push_back(m);
    }
    return out;
}

struct DegeneracyReport {
    long ell = 0;
    size_t elements = 0;
    bool eq13 = false, eq14 = false, index_ok = false, k0_system_ok = false;
    size_t index = 0;
    size_t k0_system_size = 0;
    bool pass() const { return eq13 && eq14 && index_ok && k0_system_ok; }
};

inline DegeneracyReport gl2_degeneracy_identities(long ell)
{
    DegeneracyReport r;
    r.ell = ell;
    auto o = degeneracy_ops(ell);
    auto xs = degeneracy_test_elements(ell);
    r.elements = xs.size();
    r.eq13 = r.eq14 = true;
    for (const auto& x : xs) {
        CosetMultiset p1x = apply_op(o.pr1, x);
        CosetMultiset lhs = apply_op(o.pr1, apply_op(o.t_nl, x)) + apply_op(o.s_prime, apply_op(o.pr2, x));
        CosetMultiset rhs = apply_op(o.t_n, p1x);
        if (!(lhs == rhs)) r.eq13 = false;
        if (!(apply_op(o.pr2, apply_op(o.t_nl, x)) == p1x.scaled(ell))) r.eq14 = false;
    }
    r.index = o.index_k1;
    r.index_ok = o.index_k1 == static_cast<size_t>(ell);
    // the displayed system for K/K_0(l): lower unipotents and the antidiagonal
    std::vector<MatQ> sys;
    for (long v = 0; v < ell; ++v) sys.push_back(mat2(ell, 1, 0, v, 1));
    sys.push_back(mat2(ell, 0, 1, 1, 0));
    r.k0_system_size = sys.size();
    bool distinct = true;
    for (size_t i = 0; i < sys.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            if (coset_equal(sys[i], sys[j], SubgroupTag::k0(1))) distinct = false;
    // completeness: [K : K_0(l)] computed by orbit size
    std::function<long long(const MatQ&)> proj = [ell](const MatQ& g) {
        // kK_0(l) <-> the line through the first column of k mod l
        long long x = residue(g(0, 0), ell, 1), y = residue(g(1, 0), ell, 1);
        if (x != 0) {
            long long xi = 1;
            while ((x * xi) % ell != 1) ++xi;
            return (y * xi) % ell;
        }
        return static_cast<long long>(ell);
    };
    size_t idx = coset_orbit(MatQ::identity(2, ell), gens_K(ell), proj).size();
    r.k0_system_ok = distinct && sys.size() == static_cast<size_t>(ell + 1) && idx == sys.size();
    return r;
}

} // namespace eusys::hecke
