#pragma once
#include "eusys/cm/phi.hpp"
#include "eusys/hecke/lfactor.hpp"

#include <array>

namespace eusys::cm {

struct HalfIntegerLeak : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline SqrtCyc cconj(const SqrtCyc& x) { return SqrtCyc(x.prime(), x.a().conj(), x.b().conj()); }

// spin eigen-data at one unramified prime, weights k1 >= k2 >= 3
struct SpinFrobData {
    int k1 = 3, k2 = 3;
    long ell = 2;
    SqrtCyc lam, mu, om;
    int w() const { return k1 + k2 - 3; }
};

inline void check_weights(int k1, int k2)
{
    if (!(k1 >= k2 && k2 >= 3)) throw std::invalid_argument("weights must satisfy k1 >= k2 >= 3");
}

// data whose unitary spin roots are g0, g0 g1, g0 g2, g0 g1 g2
struct SatakeData {
    SpinFrobData data;
    std::array<SqrtCyc, 4> roots;
};

inline SatakeData synthetic_spin_data(int k1, int k2, long ell, const SqrtCyc& g0, const SqrtCyc& g1, const SqrtCyc& g2)
{
    check_weights(k1, k2);
    SatakeData s;
    s.roots = {g0, g0 * g1, g0 * g2, g0 * g1 * g2};
    const auto& b = s.roots;
    SqrtCyc e1 = b[0] + b[1] + b[2] + b[3];
    SqrtCyc e2 = b[0] * b[1] + b[0] * b[2] + b[0] * b[3] + b[1] * b[2] + b[1] * b[3] + b[2] * b[3];
    SqrtCyc om = b[0] * b[3];
    SqrtCyc l2(static_cast<long>(ell * ell));
    s.data = {k1, k2, ell, SqrtCyc::half_power(ell, 3) * e1, l2 * e2 - (l2 + SqrtCyc(1)) * om, om};
    return s;
}

// P_l(X) = spin polynomial with X -> l^{w/2} X; coefficients of X^0..X^4
inline std::vector<CycNum> spin_frobenius_poly(const SpinFrobData& d)
{
    using ML = MultiLaurent<SqrtCyc>;
    auto s = hecke::p_spin_poly<SqrtCyc>(d.ell, ML(d.lam), ML(d.mu), ML(d.om));
    std::vector<CycNum> out;
    for (size_t k = 0; k < s.size(); ++k) {
        SqrtCyc c(0);
        for (const auto& [e, v] : s[k].terms()) {
            if (e != ExpVec{}) throw std::invalid_argument("spin data must be constants");
            c = v;
        }
        c = c * SqrtCyc::half_power(d.ell, static_cast<long>(d.w()) * static_cast<long>(k));
        if (!c.in_base()) throw HalfIntegerLeak("a sqrt(l) survives in the coefficient of X^" + std::to_string(k));
        out.push_back(c.a());
    }
    return out;
}

struct PurityReport {
    bool zeros_ok = false, norms_ok = false;
    bool pass() const { return zeros_ok && norms_ok; }
};

// the zeros l^{-w/2} b^{-1} of P_l all have square-norm l^{-w}
inline PurityReport purity_check(const SatakeData& s)
{
    const auto& d = s.data;
    auto P = spin_frobenius_poly(d);
    PurityReport r{true, true};
    SqrtCyc target = SqrtCyc::half_power(d.ell, -2L * d.w());
    for (const auto& b : s.roots) {
        SqrtCyc x = SqrtCyc::half_power(d.ell, -d.w()) * b.inverse();
        SqrtCyc v(0), p(1);
        for (const auto& c : P) {
            v += SqrtCyc(c) * p;
            p *= x;
        }
        r.zeros_ok = r.zeros_ok && v.is_zero();
        r.norms_ok = r.norms_ok && x * cconj(x) == target;
    }
    return r;
}

inline CycNum poly_eval(const std::vector<CycNum>& c, const CycNum& x)
{
    CycNum v(0);
    for (size_t k = c.size(); k-- > 0;) v = v * x + c[k];
    return v;
}

// det(1 - X A) by Faddeev-LeVerrier
inline std::vector<CycNum> det_one_minus_xa(const std::vector<std::vector<CycNum>>& A)
{
    size_t n = A.size();
    auto mul = [&](const std::vector<std::vector<CycNum>>& X, const std::vector<std::vector<CycNum>>& Y) {
        std::vector<std::vector<CycNum>> Z(n, std::vector<CycNum>(n, CycNum(0)));
        for (size_t i = 0; i < n; ++i)
            for (size_t k = 0; k < n; ++k) {
                if (X[i][k].is_zero()) continue;
                for (size_t j = 0; j < n; ++j) Z[i][j] += X[i][k] * Y[k][j];
            }
        return Z;
    };
    std::vector<CycNum> c(n + 1, CycNum(0));   // char poly coefficients, c[n] = 1
    c[n] = 1;
    std::vector<std::vector<CycNum>> M(n, std::vector<CycNum>(n, CycNum(0)));
    for (size_t k = 1; k <= n; ++k) {
        M = mul(A, M);
        for (size_t i = 0; i < n; ++i) M[i][i] += c[n - k + 1];
        auto AM = mul(A, M);
        CycNum tr(0);
        for (size_t i = 0; i < n; ++i) tr += AM[i][i];
        c[n - k] = -(tr * CycNum(make_rat(1, static_cast<long>(k))));
    }
    std::vector<CycNum> q(n + 1);
    for (size_t k = 0; k <= n; ++k) q[k] = c[n - k];
    return q;
}

// the Artin map sends uniformizers to geometric (default) or arithmetic Frobenius
enum class ArtinConvention { geometric, arithmetic };

struct QlCharResult {
    Elem chi;
    CycNum lhs, rhs;
    bool ok = false;
};

struct QlTwistReport {
    long long ell = 0, p = 0;
    std::vector<long long> p_part;   // factor orders of H_n^{(p)}
    long long frob_order = 1;        // order of [l] in H_n^{(p)}
    std::vector<CycNum> P, Q;
    bool q_is_scaled_p = false;
    std::vector<QlCharResult> chars;
    bool pass() const
    {
        if (!q_is_scaled_p || chars.empty()) return false;
        for (const auto& c : chars)
            if (!c.ok) return false;
        return true;
    }
};

// chi(P_l([l] psi(l) l^{-(k2-1)})) = Q_l(chi(sigma_l)^{-1}) on every character of H_n^{(p)};
// sigma_l is arithmetic Frobenius, Q_l = det(1 - X s C) with C the companion matrix of the reversed P_l
inline QlTwistReport q_l_twist_consistency(const SpinFrobData& d, const HeckeChar& psi, const Ideal& n, long long p, long long ell,
                                           ArtinConvention conv = ArtinConvention::geometric)
{
    const QuadField& K = psi.field();
    if (d.ell != ell) throw std::invalid_argument("spin data belongs to another prime");
    if (!K.divides(psi.modulus(), n)) throw ModulusViolation("the modulus of psi does not divide n");
    auto pd = K.split_prime(ell);
    if (pd.kind != iq::Splitting::split) throw NotSplit("prime is not split");
    if ((K.norm(n) * -K.disc() * p) % ell == 0) throw ModulusViolation("l divides the level or p");
    RayClassGroup H(K, n);
    auto qm = finab_quotient_p(H.group(), p);
    auto Gp = std::make_shared<const FinAbGroup>(qm.target);
    Elem frob_geo = qm.project(H.dlog(pd.p));   // [l]
    Elem sigma = conv == ArtinConvention::geometric ? Gp->neg(frob_geo) : frob_geo;

    QlTwistReport r;
    r.ell = ell;
    r.p = p;
    r.p_part = Gp->orders();
    r.frob_order = Gp->element_order(frob_geo);
    r.P = spin_frobenius_poly(d);
    CycNum s = psi(pd.p) * CycNum(ppow(ell, -(d.k2 - 1)));

    GroupRingElt E(Gp);
    CycNum sk(1);
    for (size_t k = 0; k < r.P.size(); ++k) {
        E.add_term(Gp->mul(frob_geo, static_cast<long long>(k)), r.P[k] * sk);
        sk = sk * s;
    }
    // companion matrix of X^4 + c1 X^3 + c2 X^2 + c3 X + c4, scaled by s
    std::vector<std::vector<CycNum>> A(4, std::vector<CycNum>(4, CycNum(0)));
    for (size_t i = 1; i < 4; ++i) A[i][i - 1] = s;
    for (size_t i = 0; i < 4; ++i) A[i][3] = -(s * r.P[4 - i]);
    r.Q = det_one_minus_xa(A);
    r.q_is_scaled_p = true;
    sk = CycNum(1);
    for (size_t k = 0; k < 5; ++k) {
        r.q_is_scaled_p = r.q_is_scaled_p && r.Q[k] == r.P[k] * sk;
        sk = sk * s;
    }
    for (const auto& chi : all_characters(*Gp)) {
        QlCharResult c;
        c.chi = chi.k;
        c.lhs = groupring_apply_char(E, chi);
        c.rhs = poly_eval(r.Q, chi(*Gp, sigma).inverse());
        c.ok = c.lhs == c.rhs;
        r.chars.push_back(c);
    }
    return r;
}

struct WeightExponents {
    BigRat e_V, e_V_dual1;              // derived: V = V_Pi^*(-a-1)(psi^{-1}) and V^*(1)
    BigRat stated_V, stated_V_dual1;    // (k1-k2+2)/2 and (k2-k1)/2
    bool matches_stated = false, matches_swapped = false;
    bool sum_is_one = false, both_nonzero = false;
};

// exponents e with |Frob| = l^e; V_Pi has weight -w, (n) adds n, psi^{-1} adds 1/2
inline WeightExponents weight_exponents(int k1, int k2)
{
    check_weights(k1, k2);
    WeightExponents r;
    BigRat w(k1 + k2 - 3), a(k2 - 3);
    BigRat e_pi = -w / 2;
    r.e_V = -e_pi - (a + 1) + BigRat(1, 2);
    r.e_V_dual1 = -r.e_V + 1;
    r.stated_V = BigRat(k1 - k2 + 2, 2);
    r.stated_V_dual1 = BigRat(k2 - k1, 2);
    r.stated_V.canonicalize();
    r.stated_V_dual1.canonicalize();
    r.matches_stated = r.e_V == r.stated_V && r.e_V_dual1 == r.stated_V_dual1;
    r.matches_swapped = r.e_V == r.stated_V_dual1 && r.e_V_dual1 == r.stated_V;
    r.sum_is_one = r.e_V + r.e_V_dual1 == 1;
    r.both_nonzero = r.e_V != 0 && r.e_V_dual1 != 0;
    return r;
}

} // namespace eusys::cm
