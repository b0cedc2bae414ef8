#pragma once
#include "eusys/arith/sqrt_ext.hpp"

#include <array>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace eusys {

constexpr int kNumVars = 9;
using ExpVec = std::array<int, kNumVars>;

enum Var : int { x0 = 0, x1, x2, ynu, ymu, X, lam, mu, om };

// slot names; the last three double as Hecke symbols T, R, S in the grading check
inline const std::array<std::string, kNumVars>& satake_names()
{
    static const std::array<std::string, kNumVars> n{"x0", "x1", "x2", "ynu", "ymu", "X", "lam", "mu", "om"};
    return n;
}
inline const std::array<std::string, kNumVars>& hecke_names()
{
    static const std::array<std::string, kNumVars> n{"x0", "x1", "x2", "b1", "b2", "X", "T", "R", "S"};
    return n;
}

struct ExponentOverflow : std::overflow_error {
    using std::overflow_error::overflow_error;
};

inline int& laurent_exponent_bound()
{
    static int b = 64;
    return b;
}

template <class C>
class MultiLaurent {
public:
    using Terms = std::map<ExpVec, C>;

    MultiLaurent() = default;
    MultiLaurent(long n) { add_term(ExpVec{}, C(n)); }
    MultiLaurent(const C& c) { add_term(ExpVec{}, c); }

    static MultiLaurent var(int v, int e = 1)
    {
        ExpVec x{};
        x[v] = e;
        MultiLaurent p;
        p.add_term(x, C(1));
        return p;
    }
    static MultiLaurent monomial(const ExpVec& x, const C& c)
    {
        MultiLaurent p;
        p.add_term(x, c);
        return p;
    }

    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    void add_term(const ExpVec& x, const C& c)
    {
        for (int e : x)
            if (e > laurent_exponent_bound() || -e > laurent_exponent_bound())
                throw ExponentOverflow("Laurent exponent exceeds configured bound");
        auto it = t_.find(x);
        if (it == t_.end()) {
            if (!eusys::is_zero(c)) t_.emplace(x, c);
            return;
        }
        it->second += c;
        if (eusys::is_zero(it->second)) t_.erase(it);
    }

    friend MultiLaurent operator+(MultiLaurent a, const MultiLaurent& b)
    {
        for (auto& [x, c] : b.t_) a.add_term(x, c);
        return a;
    }
    friend MultiLaurent operator-(const MultiLaurent& a)
    {
        MultiLaurent r;
        for (auto& [x, c] : a.t_) r.t_.emplace(x, -c);
        return r;
    }
    friend MultiLaurent operator-(const MultiLaurent& a, const MultiLaurent& b) { return a + (-b); }
    friend MultiLaurent operator*(const MultiLaurent& a, const MultiLaurent& b)
    {
        MultiLaurent r;
        for (auto& [x, c] : a.t_)
            for (auto& [y, d] : b.t_) {
                ExpVec z;
                for (int i = 0; i < kNumVars; ++i) z[i] = x[i] + y[i];
                r.add_term(z, c * d);
            }
        return r;
    }
    MultiLaurent& operator+=(const MultiLaurent& o) { return *this = *this + o; }
    MultiLaurent& operator-=(const MultiLaurent& o) { return *this = *this - o; }
    MultiLaurent& operator*=(const MultiLaurent& o) { return *this = *this * o; }

    MultiLaurent pow(unsigned e) const
    {
        MultiLaurent r(1);
        for (unsigned i = 0; i < e; ++i) r *= *this;
        return r;
    }

    friend bool operator==(const MultiLaurent& a, const MultiLaurent& b) { return a.t_ == b.t_; }
    friend bool operator!=(const MultiLaurent& a, const MultiLaurent& b) { return !(a == b); }

    int max_degree(int v) const
    {
        int d = 0;
        bool first = true;
        for (auto& [x, c] : t_) {
            if (first || x[v] > d) d = x[v];
            first = false;
        }
        return d;
    }

    // coefficient of v^k as a Laurent polynomial in the remaining slots
    MultiLaurent coeff_of(int v, int k) const
    {
        MultiLaurent r;
        for (auto& [x, c] : t_)
            if (x[v] == k) {
                ExpVec y = x;
                y[v] = 0;
                r.add_term(y, c);
            }
        return r;
    }

    // substitute v -> v * s, e.g. X -> beta X
    MultiLaurent scale_var(int v, const MultiLaurent& s) const
    {
        MultiLaurent r;
        for (auto& [x, c] : t_) r += single(x, c) * power_signed(s, x[v]);
        return r;
    }

    std::string to_string(const std::array<std::string, kNumVars>& names = satake_names()) const;

private:
    Terms t_;

    static MultiLaurent single(const ExpVec& x, const C& c)
    {
        MultiLaurent m;
        m.add_term(x, c);
        return m;
    }
    static MultiLaurent power_signed(const MultiLaurent& s, int e)
    {
        if (e < 0) throw std::domain_error("scale_var: negative power of a non-monomial");
        return s.pow(static_cast<unsigned>(e));
    }
};

template <class C>
bool is_zero(const MultiLaurent<C>& p)
{
    return p.is_zero();
}

inline std::string coeff_string(const BigRat& q) { return q.get_str(); }
inline std::string coeff_string(const CycNum& c)
{
    std::ostringstream os;
    os << "cyc" << c.modulus() << "[";
    for (size_t i = 0; i < c.coeffs().size(); ++i) os << (i ? "," : "") << c.coeffs()[i].get_str();
    os << "]";
    return os.str();
}
template <class F>
std::string coeff_string(const SqrtExt<F>& s)
{
    if (s.in_base()) return coeff_string(s.a());
    return "(" + coeff_string(s.a()) + "+" + coeff_string(s.b()) + "*sqrt" + std::to_string(s.prime()) + ")";
}

template <class C>
std::string MultiLaurent<C>::to_string(const std::array<std::string, kNumVars>& names) const
{
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [x, c] : t_) {
        if (!first) os << " + ";
        first = false;
        os << coeff_string(c);
        for (int i = 0; i < kNumVars; ++i)
            if (x[i]) os << "*" << names[i] << (x[i] != 1 ? "^" + std::to_string(x[i]) : "");
    }
    return os.str();
}

// Specialization: each slot is replaced by a value of the target ring T (slot X may be left symbolic).
template <class T, class C, class Conv>
MultiLaurent<T> laurent_eval(const MultiLaurent<C>& p, const std::map<int, T>& assignment, Conv conv)
{
    MultiLaurent<T> r;
    for (auto& [x, c] : p.terms()) {
        T v = conv(c);
        ExpVec rest{};
        for (int i = 0; i < kNumVars; ++i) {
            if (x[i] == 0) continue;
            auto it = assignment.find(i);
            if (it == assignment.end()) {
                if (i == Var::X) {
                    rest[i] = x[i];
                    continue;
                }
                throw std::invalid_argument("laurent_eval: missing assignment for " + satake_names()[i]);
            }
            v = v * it->second.pow(x[i]);
        }
        r.add_term(rest, v);
    }
    return r;
}

template <class C>
using LFactorPoly = std::vector<MultiLaurent<C>>;

} // namespace eusys
