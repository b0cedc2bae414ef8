#pragma once
#include "eusys/arith/cycnum.hpp"

#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace eusys {

using Elem = std::vector<long long>;

class FinAbGroup {
public:
    FinAbGroup() = default;
    explicit FinAbGroup(std::vector<long long> orders, std::vector<std::string> labels = {})
        : ord_(std::move(orders)), lab_(std::move(labels))
    {
        for (auto d : ord_)
            if (d < 1) throw std::invalid_argument("FinAbGroup: factor orders must be positive");
        if (lab_.empty())
            for (size_t i = 0; i < ord_.size(); ++i) lab_.push_back("g" + std::to_string(i));
    }

    const std::vector<long long>& orders() const { return ord_; }
    const std::vector<std::string>& labels() const { return lab_; }
    size_t rank() const { return ord_.size(); }

    long long order() const
    {
        long long n = 1;
        for (auto d : ord_) n *= d;
        return n;
    }

    Elem identity() const { return Elem(ord_.size(), 0); }
    Elem reduce(Elem x) const
    {
        for (size_t i = 0; i < ord_.size(); ++i) {
            x[i] %= ord_[i];
            if (x[i] < 0) x[i] += ord_[i];
        }
        return x;
    }
    Elem add(const Elem& a, const Elem& b) const
    {
        Elem c(ord_.size());
        for (size_t i = 0; i < ord_.size(); ++i) c[i] = a[i] + b[i];
        return reduce(c);
    }
    Elem neg(const Elem& a) const
    {
        Elem c(ord_.size());
        for (size_t i = 0; i < ord_.size(); ++i) c[i] = -a[i];
        return reduce(c);
    }
    Elem mul(const Elem& a, long long k) const
    {
        Elem c(ord_.size());
        for (size_t i = 0; i < ord_.size(); ++i) c[i] = a[i] * (k % ord_[i]);
        return reduce(c);
    }
    Elem generator(size_t i) const
    {
        Elem e = identity();
        if (ord_[i] > 1) e[i] = 1;
        return e;
    }

    long long element_order(const Elem& a) const
    {
        long long r = 1;
        for (size_t i = 0; i < ord_.size(); ++i) r = std::lcm(r, ord_[i] / std::gcd(ord_[i], a[i]));
        return r;
    }

    std::vector<Elem> elements() const
    {
        std::vector<Elem> out{identity()};
        for (size_t i = 0; i < ord_.size(); ++i) {
            std::vector<Elem> next;
            for (auto& e : out)
                for (long long k = 0; k < ord_[i]; ++k) {
                    Elem f = e;
                    f[i] = k;
                    next.push_back(f);
                }
            out.swap(next);
        }
        return out;
    }

    long long exponent() const
    {
        long long e = 1;
        for (auto d : ord_) e = std::lcm(e, d);
        return e;
    }

    friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) { return a.ord_ == b.ord_; }

private:
    std::vector<long long> ord_;
    std::vector<std::string> lab_;
};

// character given by exponents k_i: chi(g_i) = zeta_{d_i}^{k_i}
struct Character {
    Elem k;

    CycNum operator()(const FinAbGroup& G, const Elem& x) const
    {
        long long M = G.exponent(), e = 0;
        for (size_t i = 0; i < x.size(); ++i) e += k[i] * x[i] * (M / G.orders()[i]);
        return CycNum::zeta(static_cast<int>(M), static_cast<long>(e % M));
    }
    std::vector<CycNum> generator_values(const FinAbGroup& G) const
    {
        std::vector<CycNum> v;
        for (size_t i = 0; i < G.rank(); ++i) v.push_back((*this)(G, G.generator(i)));
        return v;
    }
};

inline std::vector<Character> all_characters(const FinAbGroup& G)
{
    std::vector<Character> out;
    for (auto& e : G.elements()) out.push_back(Character{e});
    return out;
}

struct QuotientMap {
    FinAbGroup target;
    std::vector<size_t> src;     // source factor feeding each target factor
    Elem project(const Elem& x) const
    {
        Elem y(src.size());
        for (size_t j = 0; j < src.size(); ++j) y[j] = x[src[j]];
        return target.reduce(y);
    }
};

// largest quotient of p-power order; G must be in invariant-factor or any cyclic-sum form
inline QuotientMap finab_quotient_p(const FinAbGroup& G, long long p)
{
    std::vector<long long> ord;
    std::vector<std::string> lab;
    std::vector<size_t> src;
    for (size_t i = 0; i < G.rank(); ++i) {
        long long d = G.orders()[i], q = 1;
        while (d % p == 0) {
            d /= p;
            q *= p;
        }
        if (q > 1) {
            ord.push_back(q);
            lab.push_back(G.labels()[i]);
            src.push_back(i);
        }
    }
    return QuotientMap{FinAbGroup(ord, lab), src};
}

class GroupRingElt {
public:
    GroupRingElt() = default;
    explicit GroupRingElt(std::shared_ptr<const FinAbGroup> G) : G_(std::move(G)) {}
    GroupRingElt(std::shared_ptr<const FinAbGroup> G, const Elem& g, const CycNum& c) : G_(std::move(G))
    {
        add_term(g, c);
    }

    static GroupRingElt one(std::shared_ptr<const FinAbGroup> G)
    {
        Elem e = G->identity();
        return GroupRingElt(G, e, CycNum(1));
    }

    const FinAbGroup& group() const { return *G_; }
    std::shared_ptr<const FinAbGroup> group_ptr() const { return G_; }
    const std::map<Elem, CycNum>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    void add_term(const Elem& g, const CycNum& c)
    {
        Elem r = G_->reduce(g);
        auto it = t_.find(r);
        if (it == t_.end()) {
            if (!c.is_zero()) t_.emplace(r, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }

    friend GroupRingElt operator+(GroupRingElt a, const GroupRingElt& b)
    {
        check(a, b);
        for (auto& [g, c] : b.t_) a.add_term(g, c);
        return a;
    }
    friend GroupRingElt operator-(const GroupRingElt& a)
    {
        GroupRingElt r(a.G_);
        for (auto& [g, c] : a.t_) r.t_.emplace(g, -c);
        return r;
    }
    friend GroupRingElt operator-(const GroupRingElt& a, const GroupRingElt& b) { return a + (-b); }
    friend GroupRingElt operator*(const GroupRingElt& a, const GroupRingElt& b)
    {
        check(a, b);
        GroupRingElt r(a.G_);
        for (auto& [g, c] : a.t_)
            for (auto& [h, d] : b.t_) r.add_term(a.G_->add(g, h), c * d);
        return r;
    }
    friend GroupRingElt operator*(const CycNum& s, const GroupRingElt& a)
    {
        GroupRingElt r(a.G_);
        for (auto& [g, c] : a.t_) r.add_term(g, s * c);
        return r;
    }
    friend bool operator==(const GroupRingElt& a, const GroupRingElt& b) { return a.t_ == b.t_; }
    friend bool operator!=(const GroupRingElt& a, const GroupRingElt& b) { return !(a == b); }

    // inverse of a unit monomial c*[g]; general inverses are not needed
    GroupRingElt monomial_inverse() const
    {
        if (t_.size() != 1) throw std::domain_error("GroupRingElt: only monomials are inverted");
        auto& [g, c] = *t_.begin();
        return GroupRingElt(G_, G_->neg(g), c.inverse());
    }

    GroupRingElt pushforward(std::shared_ptr<const FinAbGroup> H, const QuotientMap& q) const
    {
        GroupRingElt r(std::move(H));
        for (auto& [g, c] : t_) r.add_term(q.project(g), c);
        return r;
    }

private:
    std::shared_ptr<const FinAbGroup> G_;
    std::map<Elem, CycNum> t_;

    static void check(const GroupRingElt& a, const GroupRingElt& b)
    {
        if (!a.G_ || !b.G_ || !(*a.G_ == *b.G_)) throw std::invalid_argument("GroupRingElt: group mismatch");
    }
};

// chi given by its values on the generators
inline CycNum groupring_apply_char(const GroupRingElt& e, const std::vector<CycNum>& gen_values)
{
    const FinAbGroup& G = e.group();
    if (gen_values.size() != G.rank()) throw std::invalid_argument("character: wrong number of generator values");
    for (size_t i = 0; i < G.rank(); ++i)
        if (!(gen_values[i].pow(G.orders()[i]) == CycNum(1)))
            throw std::invalid_argument("character value order incompatible with generator order");
    CycNum s(0);
    for (auto& [g, c] : e.terms()) {
        CycNum v = c;
        for (size_t i = 0; i < G.rank(); ++i) v = v * gen_values[i].pow(g[i]);
        s += v;
    }
    return s;
}

inline CycNum groupring_apply_char(const GroupRingElt& e, const Character& chi)
{
    return groupring_apply_char(e, chi.generator_values(e.group()));
}

} // namespace eusys
