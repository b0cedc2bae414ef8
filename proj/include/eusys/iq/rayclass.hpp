#pragma once
#include "eusys/arith/snf.hpp"
#include "eusys/iq/field.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

namespace eusys::iq {

struct DiscriminantBoundExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotCoprime : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline long long& discriminant_bound()
{
    static long long b = 20000;
    return b;
}
inline long long& residue_enumeration_bound()
{
    static long long b = 1000000;
    return b;
}

namespace detail {

// finite abelian group from a black-box multiplication on integer keys.
// generators are adjoined greedily in the order of `elements`; coordinates are exact.
struct BlackBoxGroup {
    Presentation pres;
    std::vector<long long> gen_keys;
    std::unordered_map<long long, std::vector<long long>> coords;

    Elem dlog(long long key) const
    {
        auto it = coords.find(key);
        if (it == coords.end()) throw std::out_of_range("element not in group");
        std::vector<long long> x = it->second;
        x.resize(gen_keys.size(), 0);
        return pres.map(x);
    }
};

inline BlackBoxGroup build_group(const std::vector<long long>& elements, long long id,
                                 const std::function<long long(long long, long long)>& mul)
{
    BlackBoxGroup G;
    G.coords[id] = {};
    std::vector<std::vector<BigInt>> rel;
    for (long long u : elements) {
        if (G.coords.count(u)) continue;
        size_t r = G.gen_keys.size();
        G.gen_keys.push_back(u);
        long long k = 1, p = u;
        while (!G.coords.count(p)) {
            p = mul(p, u);
            ++k;
        }
        std::vector<BigInt> row(r + 1, 0);
        const auto& back = G.coords[p];
        for (size_t i = 0; i < back.size(); ++i) row[i] = -static_cast<long>(back[i]);
        row[r] = static_cast<long>(k);
        rel.push_back(row);
        std::vector<std::pair<long long, std::vector<long long>>> old(G.coords.begin(), G.coords.end());
        for (auto& [s, ex] : old) {
            long long q = s;
            for (long long j = 1; j < k; ++j) {
                q = mul(q, u);
                auto e = ex;
                e.resize(r + 1, 0);
                e[r] = j;
                G.coords[q] = e;
            }
        }
    }
    size_t n = G.gen_keys.size();
    for (auto& row : rel) row.resize(n, 0);
    if (n == 0)
        G.pres.group = FinAbGroup(std::vector<long long>{});
    else
        G.pres = smith_presentation(rel, n);
    return G;
}

} // namespace detail

struct ReducedForm {
    long long a, b, c;
    bool operator<(const ReducedForm& o) const { return std::tie(a, b, c) < std::tie(o.a, o.b, o.c); }
    bool operator==(const ReducedForm& o) const { return a == o.a && b == o.b && c == o.c; }
};

inline ReducedForm reduce_form(__int128 a, __int128 b, __int128 c)
{
    for (;;) {
        if (b > a || b <= -a) {
            __int128 k = (a - b) / (2 * a);
            if ((a - b) % (2 * a) != 0 && a - b < 0) --k;
            __int128 nb = b + 2 * k * a;
            c = c + k * b + k * k * a;
            b = nb;
        }
        if (a > c) {
            std::swap(a, c);
            b = -b;
            continue;
        }
        if (a == c && b < 0) b = -b;
        return {detail::checked(a), detail::checked(b), detail::checked(c)};
    }
}

// reduced primitive forms of discriminant d, in lexicographic order
inline std::vector<ReducedForm> reduced_forms(long long d)
{
    std::vector<ReducedForm> out;
    long long D = -d;
    for (long long a = 1; 3 * a * a <= D; ++a)
        for (long long b = -a + 1; b <= a; ++b) {
            if (((b * b - d) % (4 * a)) != 0) continue;
            long long c = (b * b - d) / (4 * a);
            if (c < a) continue;
            if (c == a && b < 0) continue;
            if (std::gcd(std::gcd(a, std::llabs(b)), c) != 1) continue;
            out.push_back({a, b, c});
        }
    std::sort(out.begin(), out.end());
    return out;
}

inline Ideal form_to_ideal(const QuadField& K, const ReducedForm& f)
{
    long long d = K.disc();
    return {f.a, detail::pmod((-f.b - d) / 2, f.a), 1};
}

inline ReducedForm ideal_to_form(const QuadField& K, const Ideal& I)
{
    long long a = I.a / I.c, bb = I.b / I.c, d = K.disc();
    __int128 B = -(2 * static_cast<__int128>(bb) + d);
    return reduce_form(a, B, (B * B - d) / (4 * a));
}

class ClassGroup {
public:
    explicit ClassGroup(const QuadField& K) : K_(K)
    {
        if (-K.disc() > discriminant_bound()) throw DiscriminantBoundExceeded("|disc| exceeds the configured bound");
        forms_ = reduced_forms(K.disc());
        for (size_t i = 0; i < forms_.size(); ++i) index_[forms_[i]] = static_cast<long long>(i);
        long long id = index_.at(ideal_to_form(K, K.unit_ideal()));
        std::vector<long long> el(forms_.size());
        std::iota(el.begin(), el.end(), 0);
        bb_ = detail::build_group(el, id, [&](long long i, long long j) {
            return index_.at(ideal_to_form(K_, K_.mul(form_to_ideal(K_, forms_[static_cast<size_t>(i)]),
                                                      form_to_ideal(K_, forms_[static_cast<size_t>(j)]))));
        });
        for (size_t i = 0; i < forms_.size(); ++i) by_elem_[bb_.dlog(static_cast<long long>(i))] = static_cast<long long>(i);
    }

    const FinAbGroup& group() const { return bb_.pres.group; }
    long long class_number() const { return static_cast<long long>(forms_.size()); }
    const std::vector<ReducedForm>& forms() const { return forms_; }
    Elem dlog(const Ideal& I) const { return bb_.dlog(index_.at(ideal_to_form(K_, I))); }
    // representative ideal of a class (the one attached to its reduced form)
    Ideal representative(const Elem& g) const
    {
        return form_to_ideal(K_, forms_[static_cast<size_t>(by_elem_.at(group().reduce(g)))]);
    }

private:
    QuadField K_;
    std::vector<ReducedForm> forms_;
    std::map<ReducedForm, long long> index_;
    std::map<Elem, long long> by_elem_;
    detail::BlackBoxGroup bb_;
};

// (O_K / m)^x by enumeration of residues
class ResidueUnits {
public:
    ResidueUnits(const QuadField& K, const Ideal& m) : K_(K), m_(m)
    {
        long long N = K.norm(m);
        if (N > residue_enumeration_bound()) throw std::runtime_error("residue ring exceeds the enumeration bound");
        std::vector<long long> units;
        for (long long y = 0; y < m.c; ++y)
            for (long long x = 0; x < m.a; ++x)
                if (N == 1 || ((x || y) && K.coprime(K.principal({x, y}), m))) units.push_back(x + m.a * y);
        long long id = K.residue_key(m, {1, 0});
        bb_ = detail::build_group(units, id, [&](long long s, long long t) { return K_.residue_key(m_, K_.mul(elt(s), elt(t))); });
        count_ = static_cast<long long>(units.size());
    }

    const FinAbGroup& group() const { return bb_.pres.group; }
    long long size() const { return count_; }
    QElt elt(long long key) const { return {key % m_.a, key / m_.a}; }
    Elem dlog(QElt u) const { return bb_.dlog(K_.residue_key(m_, u)); }

private:
    QuadField K_;
    Ideal m_;
    long long count_ = 0;
    detail::BlackBoxGroup bb_;
};

// H_n: O_K^x -> (O_K/n)^x -> H_n -> Cl_K -> 1
class RayClassGroup {
public:
    RayClassGroup(const QuadField& K, const Ideal& n) : K_(K), n_(n), cl_(K), res_(K, n)
    {
        const auto& C = cl_.group();
        const auto& R = res_.group();
        rc_ = C.rank();
        size_t rr = R.rank(), dim = rc_ + rr;
        // a prime ideal coprime to n in each generator class
        for (size_t j = 0; j < rc_; ++j) {
            Elem g = C.generator(j);
            bool found = false;
            for (long long ell = 2; !found && ell < 100000; ++ell) {
                if (!detail::is_prime(ell) || K.norm(n) % ell == 0) continue;
                auto pd = K.split_prime(ell);
                if (pd.kind == Splitting::inert) continue;
                for (const auto& P : {pd.p, pd.pbar})
                    if (!found && cl_.dlog(P) == g) {
                        cls_rep_.push_back(P);
                        found = true;
                    }
            }
            if (!found) throw std::runtime_error("no small prime found in a class");
        }
        std::vector<std::vector<BigInt>> rel;
        auto res_row = [&](QElt u, size_t lead, long long k) {
            std::vector<BigInt> row(dim, 0);
            if (lead < rc_) row[lead] = static_cast<long>(k);
            Elem e = res_.dlog(u);
            for (size_t i = 0; i < rr; ++i) row[rc_ + i] -= static_cast<long>(e[i]);
            return row;
        };
        for (size_t i = 0; i < rr; ++i) {
            std::vector<BigInt> row(dim, 0);
            row[rc_ + i] = static_cast<long>(R.orders()[i]);
            rel.push_back(row);
        }
        rel.push_back(res_row(K.unit_generator(), dim, 0));
        for (size_t j = 0; j < rc_; ++j) {
            long long h = C.orders()[j];
            auto gen = K.generator(K.pow(cls_rep_[j], h));
            if (!gen) throw std::logic_error("class relation is not principal");
            rel.push_back(res_row(*gen, j, h));
        }
        if (dim == 0)
            pres_.group = FinAbGroup(std::vector<long long>{});
        else
            pres_ = smith_presentation(rel, dim);
        unit_image_ = unit_image_order();
    }

    const QuadField& field() const { return K_; }
    const Ideal& modulus() const { return n_; }
    const FinAbGroup& group() const { return pres_.group; }
    const ClassGroup& class_group() const { return cl_; }
    const ResidueUnits& residues() const { return res_; }
    long long unit_image() const { return unit_image_; }

    Elem dlog(const Ideal& A) const
    {
        if (!K_.coprime(A, n_)) throw NotCoprime("ideal not coprime to the modulus");
        Elem c = cl_.dlog(A);
        std::vector<long long> v(rc_ + res_.group().rank(), 0);
        Ideal B = A;
        for (size_t j = 0; j < rc_; ++j) {
            long long h = cl_.group().orders()[j];
            long long dj = detail::pmod(-c[j], h);
            B = K_.mul(B, K_.pow(cls_rep_[j], dj));
            v[j] = -dj;
        }
        auto gamma = K_.generator(B);
        if (!gamma) throw std::logic_error("class reduction left a non-principal ideal");
        Elem e = res_.dlog(*gamma);
        for (size_t i = 0; i < e.size(); ++i) v[rc_ + i] = e[i];
        return pres_.map(v);
    }
    Elem dlog(QElt alpha) const { return dlog(K_.principal(alpha)); }

private:
    QuadField K_;
    Ideal n_;
    ClassGroup cl_;
    ResidueUnits res_;
    size_t rc_ = 0;
    std::vector<Ideal> cls_rep_;
    Presentation pres_;
    long long unit_image_ = 1;

    long long unit_image_order() const
    {
        std::set<long long> s;
        for (auto& u : K_.units()) s.insert(K_.residue_key(n_, u));
        return static_cast<long long>(s.size());
    }
};

} // namespace eusys::iq
