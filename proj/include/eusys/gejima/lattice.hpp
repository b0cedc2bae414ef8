#pragma once
#include "eusys/padic/groups.hpp"

#include <array>
#include <deque>
#include <set>
#include <stdexcept>
#include <vector>

namespace eusys::gejima {

struct PrecisionOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline long long mod_pow(long ell, int e)
{
    long long r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > (1LL << 62) / ell) throw PrecisionOverflow("lattice modulus too large");
        r *= ell;
    }
    return r;
}

inline long long mmod(__int128 x, long long q)
{
    long long r = static_cast<long long>(x % q);
    return r < 0 ? r + q : r;
}

inline int vmod(long long x, long ell, int R)
{
    if (x == 0) return R;
    int v = 0;
    while (x % ell == 0) {
        x /= ell;
        ++v;
    }
    return v;
}

inline long long inv_mod(long long a, long long q)
{
    long long g = q, x = 0, x1 = 1, b = a;
    while (b) {
        long long t = g / b;
        std::swap(g, b);
        b -= t * g;
        std::swap(x, x1);
        x1 -= t * x;
    }
    if (g != 1) throw std::domain_error("inv_mod: not a unit");
    return x < 0 ? x + q : x;
}

} // namespace detail

using Mat4 = std::array<long long, 16>;

// the lattice g Z_l^4 = l^shift M Z_l^4, M primitive, stored as a canonical upper-triangular basis mod l^R
struct LatticeKey {
    int shift = 0;
    Mat4 hnf{};
    bool operator<(const LatticeKey& o) const { return shift != o.shift ? shift < o.shift : hnf < o.hnf; }
    bool operator==(const LatticeKey& o) const { return shift == o.shift && hnf == o.hnf; }
};

// arithmetic mod l^R, R above the largest elementary divisor exponent
struct LatticeCtx {
    long ell = 2;
    int R = 1;
    long long q = 2;
    LatticeCtx(long l, int r) : ell(l), R(r), q(detail::mod_pow(l, r)) {}

    // column echelon form over Z/l^R; the lattice must contain l^{R-1} Z^4.
    // after each pivot the annihilated multiple l^{R-e} * pivot column is kept as a generator
    Mat4 hnf(const Mat4& m0) const
    {
        std::vector<std::array<long long, 4>> cols;
        for (int j = 0; j < 4; ++j) {
            std::array<long long, 4> c{};
            for (int i = 0; i < 4; ++i) c[static_cast<size_t>(i)] = detail::mmod(m0[static_cast<size_t>(i * 4 + j)], q);
            cols.push_back(c);
        }
        std::array<std::array<long long, 4>, 4> piv{};
        std::array<long long, 4> pe{};
        for (int i = 3; i >= 0; --i) {
            int best = -1, bv = R;
            for (size_t j = 0; j < cols.size(); ++j) {
                int v = detail::vmod(cols[j][static_cast<size_t>(i)], ell, R);
                if (v < bv) {
                    bv = v;
                    best = static_cast<int>(j);
                }
            }
            if (best < 0) throw PrecisionOverflow("lattice: pivot vanishes mod l^R");
            auto p = cols[static_cast<size_t>(best)];
            cols.erase(cols.begin() + best);
            long long e = detail::mod_pow(ell, bv);
            long long u = detail::inv_mod(p[static_cast<size_t>(i)] / e, q);
            for (auto& x : p) x = detail::mmod(static_cast<__int128>(x) * u, q);
            for (auto& c : cols) {
                long long f = c[static_cast<size_t>(i)] / e;
                if (f == 0) continue;
                for (int k = 0; k < 4; ++k)
                    c[static_cast<size_t>(k)] = detail::mmod(c[static_cast<size_t>(k)] - static_cast<__int128>(f) * p[static_cast<size_t>(k)], q);
            }
            long long ann = detail::mod_pow(ell, R - bv);
            std::array<long long, 4> a{};
            bool nz = false;
            for (int k = 0; k < 4; ++k) {
                a[static_cast<size_t>(k)] = detail::mmod(static_cast<__int128>(ann) * p[static_cast<size_t>(k)], q);
                nz = nz || a[static_cast<size_t>(k)] != 0;
            }
            if (nz) cols.push_back(a);
            piv[static_cast<size_t>(i)] = p;
            pe[static_cast<size_t>(i)] = e;
        }
        Mat4 m{};
        auto at = [&](int i, int j) -> long long& { return m[static_cast<size_t>(i * 4 + j)]; };
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 4; ++i) at(i, j) = piv[static_cast<size_t>(j)][static_cast<size_t>(i)];
        for (int i = 3; i >= 0; --i) {
            long long d = pe[static_cast<size_t>(i)];
            for (int j = i + 1; j < 4; ++j) {
                long long f = at(i, j) / d;
                if (f == 0) continue;
                for (int k = 0; k <= i; ++k) at(k, j) = detail::mmod(at(k, j) - static_cast<__int128>(f) * at(k, i), q);
            }
        }
        return m;
    }

    Mat4 mul(const Mat4& h, const Mat4& m) const
    {
        Mat4 r{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                __int128 s = 0;
                for (int k = 0; k < 4; ++k) s += static_cast<__int128>(h[static_cast<size_t>(i * 4 + k)]) * m[static_cast<size_t>(k * 4 + j)];
                r[static_cast<size_t>(i * 4 + j)] = detail::mmod(s, q);
            }
        return r;
    }
};

// l^-shift g is primitive integral; R exceeds its largest elementary divisor exponent
inline std::pair<LatticeCtx, LatticeKey> lattice_of(const MatQ& g)
{
    long ell = g.prime();
    if (g.size() != 4) throw std::invalid_argument("lattice_of: 4x4 expected");
    int s = g.min_valuation();
    MatQ M = ppow(ell, -s) * g;
    auto sm = smith_invariants(M);
    LatticeCtx ctx(ell, sm.back() + 1);
    Mat4 m{};
    for (int i = 0; i < 16; ++i) m[static_cast<size_t>(i)] = residue(M.entries()[static_cast<size_t>(i)], ell, ctx.R);
    LatticeKey k;
    k.shift = s;
    k.hnf = ctx.hnf(m);
    return {ctx, k};
}

// topological generators of H(Z_l) inside GSp4(Z_l), as integer matrices
inline std::vector<Mat4> h_generators(long ell)
{
    auto iota = [](std::array<long long, 4> a, std::array<long long, 4> b) {
        Mat4 m{};
        m[0] = a[0], m[3] = a[1], m[12] = a[2], m[15] = a[3];
        m[5] = b[0], m[6] = b[1], m[9] = b[2], m[10] = b[3];
        return m;
    };
    std::array<long long, 4> I{1, 0, 0, 1}, x{1, 1, 0, 1}, y{1, 0, 1, 1};
    std::vector<Mat4> g{iota(x, I), iota(y, I), iota(I, x), iota(I, y)};
    std::vector<long> units;
    if (ell == 2)
        units = {-1, 3};
    else
        for (long u = 2; u < ell * ell; ++u) {
            if (u % ell == 0) continue;
            long z = 1, ord = 0;
            do {
                z = z * u % (ell * ell);
                ++ord;
            } while (z != 1);
            if (ord == ell * (ell - 1)) {
                units = {u};
                break;
            }
        }
    for (long u : units) g.push_back(iota({u, 0, 0, 1}, {u, 0, 0, 1}));
    return g;
}

// the H(Z_l)-orbit of the coset g GSp4(Z_l), as lattice keys
inline std::set<LatticeKey> h_orbit(const MatQ& g, size_t cap = 2000000)
{
    auto [ctx, k0] = lattice_of(g);
    auto gens = h_generators(g.prime());
    std::set<LatticeKey> seen{k0};
    std::deque<Mat4> q{k0.hnf};
    while (!q.empty()) {
        Mat4 m = q.front();
        q.pop_front();
        for (const auto& h : gens) {
            LatticeKey k{k0.shift, ctx.hnf(ctx.mul(h, m))};
            if (seen.insert(k).second) {
                if (seen.size() > cap) throw PrecisionOverflow("H-orbit exceeds the configured cap");
                q.push_back(k.hnf);
            }
        }
    }
    return seen;
}

} // namespace eusys::gejima
