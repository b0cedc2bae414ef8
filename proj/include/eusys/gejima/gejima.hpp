#pragma once
#include "eusys/gejima/lattice.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <unordered_map>

namespace eusys::gejima {

struct ConeViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotFoundWithinBound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CocharPair {
    std::array<int, 3> mu_p{};   // mu'
    std::array<int, 3> mu{};

    CocharPair() = default;
    CocharPair(std::array<int, 3> p, std::array<int, 3> m) : mu_p(p), mu(m)
    {
        if (mu_p[0] < 0 || 2 * mu_p[1] < mu_p[2]) throw ConeViolation("mu' outside the cone");
        if (mu[0] < mu[1] || 2 * mu[1] < mu[2]) throw ConeViolation("mu outside the cone");
    }
    bool operator<(const CocharPair& o) const { return std::tie(mu_p, mu) < std::tie(o.mu_p, o.mu); }
    bool operator==(const CocharPair& o) const { return mu_p == o.mu_p && mu == o.mu; }
    std::string str() const
    {
        auto f = [](const std::array<int, 3>& v) {
            return "(" + std::to_string(v[0]) + "," + std::to_string(v[1]) + "," + std::to_string(v[2]) + ")";
        };
        return f(mu_p) + f(mu);
    }
};

inline MatQ gejima_B(long ell)
{
    return MatQ(4, ell, std::vector<long long>{1, 1, 1, 0, 0, 1, 0, 1, 0, 0, 1, -1, 0, 0, 0, 1});
}

struct GejimaRep {
    CocharPair pair;
    MatQ matrix;
};

inline GejimaRep rep_matrix(const CocharPair& p, long ell)
{
    CocharPair checked(p.mu_p, p.mu);
    return {checked, torus_t(ell, p.mu_p[0], p.mu_p[1], p.mu_p[2]) * gejima_B(ell) * torus_t(ell, p.mu[0], p.mu[1], p.mu[2])};
}

// ---- exhaustive h-sweep: is r^{-1} h g integral for some h in H(Z/l^N)

namespace detail {

using Q2 = std::array<long long, 4>;

// GL2(Z/l^N) bucketed by determinant
inline const std::map<long long, std::vector<Q2>>& gl2_by_det(long ell, int N)
{
    static std::mutex mu;
    static std::map<std::pair<long, int>, std::unique_ptr<std::map<long long, std::vector<Q2>>>> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto& slot = cache[{ell, N}];
    if (!slot) {
        slot = std::make_unique<std::map<long long, std::vector<Q2>>>();
        long long q = mod_pow(ell, N);
        for (long long a = 0; a < q; ++a)
            for (long long b = 0; b < q; ++b)
                for (long long c = 0; c < q; ++c)
                    for (long long d = 0; d < q; ++d) {
                        long long det = mmod(static_cast<__int128>(a) * d - static_cast<__int128>(b) * c, q);
                        if (det % ell == 0) continue;
                        (*slot)[det].push_back({a, b, c, d});
                    }
    }
    return *slot;
}

// l^e M integral with e minimal (e >= 0); returns e and the residues mod l^R
inline std::pair<int, std::vector<long long>> scaled_residues(const MatQ& m, int R)
{
    long ell = m.prime();
    int e = m.den_exponent();
    MatQ s = ppow(ell, e) * m;
    std::vector<long long> out;
    for (const auto& x : s.entries()) out.push_back(residue(x, ell, R));
    return {e, out};
}

} // namespace detail

struct SweepResult {
    bool member = false;
    int N = 0;
    long long h_checked = 0;
};

// X E(h) Y is linear in h = (h1, h2): split into the h1 and h2 halves and match
// extra > 0 raises the working precision, to probe that the answer is stable
inline SweepResult double_coset_member_sweep(const MatQ& g, const CocharPair& pair, long ell, int max_N = 4, int extra = 0)
{
    using namespace detail;
    MatQ r = rep_matrix(pair, ell).matrix;
    SweepResult res;
    if (valuation(multiplier(g), ell) != valuation(multiplier(r), ell)) return res;
    MatQ rinv = gsp4_inverse(r);
    int a = rinv.den_exponent(), b = g.den_exponent();
    int N = a + b + 1 + extra;
    res.N = N;
    if (N > max_N) throw PrecisionOverflow("h-sweep precision " + std::to_string(N) + " exceeds bound " + std::to_string(max_N));
    int T = a + b;   // X h Y must vanish mod l^T
    long long qT = mod_pow(ell, T);
    auto X = scaled_residues(rinv, N + T).second;
    auto Y = scaled_residues(g, N + T).second;
    // contribution of a 2x2 block placed at coordinates (i0,i1)
    auto part = [&](const Q2& h, int i0, int i1) {
        std::array<long long, 16> out{};
        int idx[2] = {i0, i1};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                __int128 s = 0;
                for (int p = 0; p < 2; ++p)
                    for (int q = 0; q < 2; ++q)
                        s += static_cast<__int128>(X[static_cast<size_t>(i * 4 + idx[p])]) * h[static_cast<size_t>(p * 2 + q)] *
                             Y[static_cast<size_t>(idx[q] * 4 + j)];
                out[static_cast<size_t>(i * 4 + j)] = mmod(s, qT);
            }
        return out;
    };
    const auto& table = gl2_by_det(ell, N);
    for (const auto& [det, hs] : table) {
        std::set<std::array<long long, 16>> firsts;
        for (const auto& h1 : hs) {
            firsts.insert(part(h1, 0, 3));
            ++res.h_checked;
        }
        for (const auto& h2 : hs) {
            auto p2 = part(h2, 1, 2);
            for (auto& x : p2) x = mmod(-static_cast<__int128>(x), qT);
            ++res.h_checked;
            if (firsts.count(p2)) {
                res.member = true;
                return res;
            }
        }
    }
    return res;
}

// ---- orbit-based membership: g in H(Z_l) r K iff the lattice of g lies in the H(Z_l)-orbit of that of r

inline const std::set<LatticeKey>& rep_orbit(const CocharPair& pair, long ell)
{
    static std::mutex mu;
    static std::map<std::pair<long, CocharPair>, std::unique_ptr<std::set<LatticeKey>>> cache;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find({ell, pair});
        if (it != cache.end()) return *it->second;
    }
    auto orbit = std::make_unique<std::set<LatticeKey>>(h_orbit(rep_matrix(pair, ell).matrix));
    std::lock_guard<std::mutex> lk(mu);
    auto& slot = cache[{ell, pair}];
    if (!slot) slot = std::move(orbit);
    return *slot;
}

inline bool double_coset_member(const MatQ& g, const CocharPair& pair, long ell)
{
    MatQ r = rep_matrix(pair, ell).matrix;
    if (valuation(multiplier(g), ell) != valuation(multiplier(r), ell)) return false;
    return rep_orbit(pair, ell).count(lattice_of(g).second) > 0;
}

// ---- candidates, reduction, partition check

// the stated cone also admits the central shift (mu'+(1,1,2), mu-(1,1,2)) and the flip mu'_1 -> mu'_3-mu'_1;
// the normalized cone keeps one representative: mu'_3 in {0,1} and 2 mu'_1 >= mu'_3
inline bool in_normalized_cone(const CocharPair& p)
{
    return (p.mu_p[2] == 0 || p.mu_p[2] == 1) && 2 * p.mu_p[0] >= p.mu_p[2];
}

enum class CandidateSet { normalized, stated };

inline std::vector<CocharPair> candidate_pairs(int bound, CandidateSet set, int mu3_bound = -1)
{
    if (mu3_bound < 0) mu3_bound = bound;
    std::vector<CocharPair> out;
    for (int a1 = 0; a1 <= bound; ++a1)
        for (int a2 = -bound; a2 <= bound; ++a2)
            for (int a3 = -bound; a3 <= bound; ++a3) {
                if (2 * a2 < a3) continue;
                for (int b1 = -bound; b1 <= bound; ++b1)
                    for (int b2 = -bound; b2 <= b1; ++b2)
                        for (int b3 = -mu3_bound; b3 <= std::min(mu3_bound, 2 * b2); ++b3) {
                            CocharPair p({a1, a2, a3}, {b1, b2, b3});
                            if (set == CandidateSet::normalized && !in_normalized_cone(p)) continue;
                            out.push_back(p);
                        }
            }
    return out;
}

struct PairInvariants {
    int mult_val = 0;
    std::vector<int> smith;
    LatticeKey key;
};

inline const std::vector<std::pair<CocharPair, PairInvariants>>& reduction_table(long ell, int window)
{
    static std::mutex mu;
    static std::map<std::pair<long, int>, std::unique_ptr<std::vector<std::pair<CocharPair, PairInvariants>>>> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto& slot = cache[{ell, window}];
    if (!slot) {
        slot = std::make_unique<std::vector<std::pair<CocharPair, PairInvariants>>>();
        for (const auto& p : candidate_pairs(window, CandidateSet::normalized, 2 * window)) {
            MatQ r = rep_matrix(p, ell).matrix;
            slot->push_back({p, {valuation(multiplier(r), ell), smith_invariants(r), lattice_of(r).second}});
        }
    }
    return *slot;
}

// the search window for elements whose entries have valuations in [-bound, bound]
inline int reduction_window(int bound) { return 2 * bound + 1; }

struct Reduction {
    CocharPair pair;
    size_t prefiltered = 0;   // candidates surviving the multiplier and Smith filters
    size_t matches = 0;
    size_t orbit = 0;
};

inline Reduction gejima_reduce_detail(const MatQ& g, long ell, int exponent_bound, size_t orbit_cap = 2000000)
{
    if (g.size() != 4) throw std::invalid_argument("gejima_reduce: 4x4 expected");
    int mv = valuation(multiplier(g), ell);
    auto sm = smith_invariants(g);
    const auto& table = reduction_table(ell, reduction_window(exponent_bound));
    std::vector<const std::pair<CocharPair, PairInvariants>*> cands;
    for (const auto& c : table)
        if (c.second.mult_val == mv && c.second.smith == sm) cands.push_back(&c);
    Reduction r;
    r.prefiltered = cands.size();
    if (cands.empty()) throw NotFoundWithinBound("no candidate pair with matching invariants");
    auto orbit = h_orbit(g, orbit_cap);
    r.orbit = orbit.size();
    for (const auto* c : cands)
        if (orbit.count(c->second.key)) {
            if (r.matches == 0) r.pair = c->first;
            ++r.matches;
        }
    if (r.matches == 0) throw NotFoundWithinBound("no candidate double coset contains the element");
    if (r.matches > 1) throw std::logic_error("gejima_reduce: element lies in several candidate double cosets");
    return r;
}

inline CocharPair gejima_reduce(const MatQ& g, long ell, int exponent_bound)
{
    return gejima_reduce_detail(g, ell, exponent_bound).pair;
}

// random product of root unipotents, torus elements and Weyl elements whose entries have valuations in [-bound, bound]
template <class Rng>
MatQ random_bounded_element(long ell, int bound, Rng& rng)
{
    std::uniform_int_distribution<int> kind(0, 5), ex(-bound, bound), root(0, 3), bit(0, 1);
    std::uniform_int_distribution<long> unit(1, 2 * ell);
    const int roots[4] = {12, 13, 14, 23};
    for (;;) {
        MatQ g = MatQ::identity(4, ell);
        for (int s = 0; s < 6; ++s) {
            int c = kind(rng);
            if (c < 4)
                g = g * eusys::detail::root_unipotent(ell, roots[root(rng)], BigRat(unit(rng)) * ppow(ell, ex(rng)), bit(rng) != 0);
            else if (c == 4)
                g = g * torus_t(ell, ex(rng), ex(rng), ex(rng));
            else
                g = g * (bit(rng) ? eusys::detail::weyl_plane14(ell) : eusys::detail::weyl_swap(ell));
        }
        bool ok = true;
        for (const auto& x : g.entries())
            if (x != 0 && std::abs(valuation(x, ell)) > bound) ok = false;
        if (ok) return g;
    }
}

struct PartitionReport {
    long ell = 0;
    int bound = 0;
    CandidateSet set = CandidateSet::normalized;
    std::vector<CocharPair> candidates;
    std::vector<std::vector<int>> matrix;   // matrix[i][j] = rep j lies in coset i
    std::vector<std::pair<size_t, size_t>> overlaps;
    bool disjoint = false;
    size_t samples = 0, reduced = 0;
    std::vector<std::string> failures;
    double exhaustion() const { return samples ? static_cast<double>(reduced) / static_cast<double>(samples) : 0.0; }
    bool pass() const { return disjoint && samples > 0 && reduced == samples; }
};

inline PartitionReport verify_partition(long ell, int exponent_bound, size_t samples = 200, unsigned long long seed = 1,
                                        CandidateSet set = CandidateSet::normalized, bool inject_duplicate = false)
{
    PartitionReport r;
    r.ell = ell;
    r.bound = exponent_bound;
    r.set = set;
    r.candidates = candidate_pairs(exponent_bound, set);
    if (inject_duplicate && !r.candidates.empty()) r.candidates.push_back(r.candidates.front());
    size_t n = r.candidates.size();
    std::vector<LatticeKey> keys;
    for (const auto& p : r.candidates) keys.push_back(lattice_of(rep_matrix(p, ell).matrix).second);
    r.matrix.assign(n, std::vector<int>(n, 0));
    for (size_t i = 0; i < n; ++i) {
        const auto& orb = rep_orbit(r.candidates[i], ell);
        for (size_t j = 0; j < n; ++j) {
            r.matrix[i][j] = orb.count(keys[j]) ? 1 : 0;
            if (i < j && r.matrix[i][j]) r.overlaps.push_back({i, j});
        }
    }
    r.disjoint = r.overlaps.empty();
    std::mt19937_64 rng(seed);
    for (size_t s = 0; s < samples; ++s) {
        MatQ g = random_bounded_element(ell, exponent_bound, rng);
        ++r.samples;
        try {
            gejima_reduce(g, ell, exponent_bound);
            ++r.reduced;
        } catch (const std::exception& e) {
            r.failures.push_back(e.what());
        }
    }
    return r;
}

} // namespace eusys::gejima
