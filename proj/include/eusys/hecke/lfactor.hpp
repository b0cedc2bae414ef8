#pragma once
#include "eusys/hecke/op.hpp"

#include <string>
#include <type_traits>
#include <vector>

namespace eusys::hecke {

template <class C>
using XPoly = LFactorPoly<C>;   // coefficient of X^k at index k

template <class C>
XPoly<C> xpoly_mul(const XPoly<C>& a, const XPoly<C>& b)
{
    XPoly<C> r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

template <class C>
XPoly<C> xpoly_sub(XPoly<C> a, const XPoly<C>& b)
{
    if (b.size() > a.size()) a.resize(b.size());
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    return a;
}

template <class C>
bool xpoly_is_zero(const XPoly<C>& a)
{
    for (const auto& c : a)
        if (!c.is_zero()) return false;
    return true;
}

// X -> s X
template <class C>
XPoly<C> xpoly_scale(XPoly<C> a, const MultiLaurent<C>& s)
{
    MultiLaurent<C> p(1);
    for (auto& c : a) {
        c = c * p;
        p = p * s;
    }
    return a;
}

template <class C>
C coeff_from(const SqrtPrimeExt& x)
{
    if constexpr (std::is_same_v<C, SqrtCyc>)
        return to_cyc(x);
    else
        return x;
}

// 1 - l^{-3/2} lam X + (l^{-2} mu + (1 + l^{-2}) om) X^2 - l^{-3/2} om lam X^3 + om^2 X^4
template <class C>
XPoly<C> p_spin_poly(long ell, const MultiLaurent<C>& lam, const MultiLaurent<C>& mu, const MultiLaurent<C>& om)
{
    using P = MultiLaurent<C>;
    auto h = [&](long k) { return P(coeff_from<C>(SqrtPrimeExt::half_power(ell, k))); };
    return {P(1), -(h(-3) * lam), h(-4) * mu + (P(1) + h(-4)) * om, -(h(-3) * om * lam), om * om};
}

template <class C>
XPoly<C> p_nov_poly(long ell, const MultiLaurent<C>& lam, const MultiLaurent<C>& mu, const MultiLaurent<C>& om,
                    const MultiLaurent<C>& ynu, const MultiLaurent<C>& ymu)
{
    auto s = p_spin_poly(ell, lam, mu, om);
    return xpoly_mul(xpoly_scale(s, ynu), xpoly_scale(s, ymu));
}

// prod (1 - a X)
template <class C>
XPoly<C> product_of_linear(const std::vector<MultiLaurent<C>>& roots)
{
    XPoly<C> r{MultiLaurent<C>(1)};
    for (const auto& a : roots) r = xpoly_mul(r, XPoly<C>{MultiLaurent<C>(1), -a});
    return r;
}

struct GspEigen {
    Poly lam, mu, om;
};

inline GspEigen enumerated_eigen(long ell)
{
    return {ps_eigenvalue(op_T(ell)), ps_eigenvalue(op_R(ell)), ps_eigenvalue(op_S(ell))};
}

// Satake parameters of the two GL2 principal series the GSp4 one lifts from
inline std::vector<std::vector<Poly>> theta_lift_parameters()
{
    Poly x0 = Poly::var(Var::x0), x1 = Poly::var(Var::x1), x2 = Poly::var(Var::x2);
    return {{x0 * x1 * x2, x0}, {x0 * x1, x0 * x2}};
}

struct FactorizationReport {
    long ell = 0;
    bool spin_pass = false;
    bool nov_pass = false;
    XPoly<SqrtPrimeExt> nov, rankin_selberg, residual;
    bool pass() const { return spin_pass && nov_pass; }
};

inline FactorizationReport verify_nov_factorization(long ell, bool corrupt_lambda = false)
{
    FactorizationReport r;
    r.ell = ell;
    auto e = enumerated_eigen(ell);
    if (corrupt_lambda) e.lam += Poly(1);
    Poly ynu = Poly::var(Var::ynu), ymu = Poly::var(Var::ymu);
    std::vector<Poly> alphas;
    for (const auto& pair : theta_lift_parameters())
        for (const auto& a : pair) alphas.push_back(a);
    r.spin_pass = xpoly_is_zero(xpoly_sub(p_spin_poly(ell, e.lam, e.mu, e.om), product_of_linear(alphas)));
    r.nov = p_nov_poly(ell, e.lam, e.mu, e.om, ynu, ymu);
    // each GL2 x GL2 Rankin-Selberg factor is prod over (alpha, beta) of (1 - alpha beta X)
    r.rankin_selberg = XPoly<SqrtPrimeExt>{Poly(1)};
    for (const auto& pair : theta_lift_parameters()) {
        std::vector<Poly> ab;
        for (const auto& a : pair)
            for (const auto& b : {ynu, ymu}) ab.push_back(a * b);
        r.rankin_selberg = xpoly_mul(r.rankin_selberg, product_of_linear(ab));
    }
    r.residual = xpoly_sub(r.nov, r.rankin_selberg);
    r.nov_pass = xpoly_is_zero(r.residual);
    return r;
}

// valuations of the multiplier on the matrices defining T, R, S (or their primed versions)
inline std::array<int, 3> multiplier_valuations(long ell, bool primed)
{
    std::array<HeckeOp, 3> ops = primed ? std::array<HeckeOp, 3>{op_T_prime(ell), op_R_prime(ell), op_S_prime(ell)}
                                        : std::array<HeckeOp, 3>{op_T(ell), op_R(ell), op_S(ell)};
    std::array<int, 3> v{};
    for (size_t i = 0; i < 3; ++i) v[i] = valuation(multiplier(label_matrix(ell, ops[i].terms.begin()->first)), ell);
    return v;
}

struct GradingReport {
    long ell = 0;
    bool primed = true;
    XPoly<SqrtPrimeExt> poly;                     // in the Hecke symbols T, R, S (slots lam, mu, om) and b1, b2
    std::vector<std::vector<int>> valuations;     // per X^i, the multiplier valuation of each GSp4 monomial
    std::vector<std::string> x5_gsp4_part;        // distinct GSp4 monomials in the X^5 coefficient
    bool pass = false;
};

inline std::string gsp4_monomial_name(const ExpVec& e, bool primed)
{
    std::string s;
    const char* tag = primed ? "'" : "";
    // ordering S, T, R as written in the displayed coefficient
    for (auto [slot, name] : {std::pair{Var::om, "S"}, std::pair{Var::lam, "T"}, std::pair{Var::mu, "R"}}) {
        if (e[slot] == 0) continue;
        s += std::string(name) + tag;
        if (e[slot] != 1) s += "^" + std::to_string(e[slot]);
    }
    return s.empty() ? "1" : s;
}

inline GradingReport multiplier_grading_check(long ell, bool primed = true)
{
    GradingReport r;
    r.ell = ell;
    r.primed = primed;
    Poly T = Poly::var(Var::lam), R = Poly::var(Var::mu), S = Poly::var(Var::om);
    // the GL2 Satake parameters enter as b1, b2 (slots ynu, ymu) and carry no GSp4 multiplier
    r.poly = p_nov_poly(ell, T, R, S, Poly::var(Var::ynu), Poly::var(Var::ymu));
    auto v = multiplier_valuations(ell, primed);
    r.pass = true;
    for (size_t i = 0; i < r.poly.size(); ++i) {
        std::vector<int> vals;
        std::set<std::string> names;
        for (const auto& [e, c] : r.poly[i].terms()) {
            int val = e[Var::lam] * v[0] + e[Var::mu] * v[1] + e[Var::om] * v[2];
            vals.push_back(val);
            int want = primed ? -static_cast<int>(i) : static_cast<int>(i);
            if (val != want) r.pass = false;
            if (i == 5) names.insert(gsp4_monomial_name(e, primed));
        }
        r.valuations.push_back(vals);
        if (i == 5) r.x5_gsp4_part.assign(names.begin(), names.end());
    }
    std::vector<std::string> want{gsp4_monomial_name({0, 0, 0, 0, 0, 0, 1, 0, 2}, primed),
                                  gsp4_monomial_name({0, 0, 0, 0, 0, 0, 1, 1, 1}, primed)};
    std::sort(want.begin(), want.end());
    if (r.x5_gsp4_part != want) r.pass = false;
    return r;
}

} // namespace eusys::hecke
