#pragma once
#include "eusys/cm/qexp.hpp"

#include <map>
#include <memory>

namespace eusys::cm {

using iq::RayClassGroup;

struct ModulusNotDivisible : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotSplit : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ModulusViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct PhiTerm {
    Ideal ideal;
    CycNum coeff;
};

// images of T'_l and S'_l in L[H_n]
struct PhiImage {
    std::shared_ptr<const RayClassGroup> H;
    std::shared_ptr<const FinAbGroup> G;
    std::map<long long, std::vector<PhiTerm>> T_terms;
    std::map<long long, GroupRingElt> T, S;
};

inline std::shared_ptr<const FinAbGroup> group_of(const RayClassGroup& H)
{
    return std::make_shared<const FinAbGroup>(H.group());
}

// T'_l -> sum over l | l, l prime to n, of [l] psi(l);  S'_l -> [(l)] (w eps_K)(l)
// swap_first_split exchanges the group labels of the first split prime (a negative control)
inline PhiImage phi_n(const HeckeChar& psi, std::shared_ptr<const RayClassGroup> H, const std::vector<long long>& primes,
                      bool swap_first_split = false)
{
    const QuadField& K = psi.field();
    if (psi.twisted()) throw std::invalid_argument("phi_n expects an untwisted character");
    if (!K.divides(psi.modulus(), H->modulus())) throw ModulusNotDivisible("the modulus of psi does not divide n");
    PhiImage im;
    im.H = H;
    im.G = group_of(*H);
    bool swapped = false;
    for (long long ell : primes) {
        auto pd = K.split_prime(ell);
        std::vector<Ideal> above;
        if (pd.kind == iq::Splitting::split)
            above = {pd.p, pd.pbar};
        else if (pd.kind == iq::Splitting::ramified)
            above = {pd.p};
        GroupRingElt t(im.G);
        std::vector<PhiTerm> terms;
        std::vector<Elem> labels;
        for (const auto& P : above) {
            if (!K.coprime(P, H->modulus())) continue;
            terms.push_back({P, psi(P)});
            labels.push_back(H->dlog(P));
        }
        if (swap_first_split && !swapped && labels.size() == 2) {
            std::swap(labels[0], labels[1]);
            swapped = true;
        }
        for (size_t i = 0; i < terms.size(); ++i) t.add_term(labels[i], terms[i].coeff);
        im.T.emplace(ell, t);
        im.T_terms[ell] = terms;
        if (K.norm(H->modulus()) % ell != 0) {
            Ideal L = K.principal({ell, 0});
            im.S.emplace(ell, GroupRingElt(im.G, H->dlog(L), nebentypus(psi, ell)));
        }
    }
    return im;
}

inline std::vector<long long> primes_up_to(long long B)
{
    std::vector<long long> v;
    for (long long p = 2; p <= B; ++p)
        if (iq::detail::is_prime(p)) v.push_back(p);
    return v;
}

struct PhiSpecializationReport {
    long long primes_checked = 0, failures = 0;
    long long s_checked = 0, s_failures = 0;
    std::vector<long long> failed_primes;
    bool pass() const { return primes_checked > 0 && failures == 0 && s_failures == 0; }
};

// chi(phi_n(T'_l)) = a_l(g_{psi chi}) for every l <= bound, and l chi(phi_n(S'_l)) = a_l^2 - a_{l^2} for l prime to N(n) |disc|
inline PhiSpecializationReport check_phi_specialization(const PhiImage& im, const HeckeChar& psi, const Character& chi, long long bound)
{
    const QuadField& K = psi.field();
    HeckeChar g = psi.twist(im.H, chi);
    long long Nn = K.norm(im.H->modulus()) * -K.disc();
    PhiSpecializationReport r;
    for (long long ell : primes_up_to(bound)) {
        if (!im.T.count(ell)) continue;
        ++r.primes_checked;
        CycNum al = qexp_coefficient(g, ell);
        if (!(groupring_apply_char(im.T.at(ell), chi) == al)) {
            ++r.failures;
            r.failed_primes.push_back(ell);
        }
        if (Nn % ell != 0 && ell * ell <= bound && im.S.count(ell)) {
            ++r.s_checked;
            CycNum lhs = CycNum(static_cast<long>(ell)) * groupring_apply_char(im.S.at(ell), chi);
            if (!(lhs == al * al - qexp_coefficient(g, ell * ell))) ++r.s_failures;
        }
    }
    return r;
}

// pair (coefficient of (pr1)_* x, coefficient of (pr2)_* x)
struct NormSymbol {
    GroupRingElt p1, p2;
    bool operator==(const NormSymbol& o) const { return p1 == o.p1 && p2 == o.p2; }
};

struct NormRelationReport {
    long long ell = 0;
    NormSymbol lhs, rhs, displayed;
    bool relations_match_display = false;
    bool identity_holds = false;
    bool normalizer_invertible = false;
    bool s_prime_equals_scaled_product = false;   // phi(S') = [l lbar] psi(l lbar) / l
    bool s_prime_equals_unscaled_product = false; // phi(S') = [l lbar] psi(l lbar)
    bool pass() const { return identity_holds && relations_match_display && normalizer_invertible; }
};

// the norm map N = 1 (x) pr1 - ([l] psi(l) / l) (x) pr2 on a level-n l vector, with
// pr1 T' = T' pr1 - S' pr2 and pr2 T' = l pr1 as the operator relations
inline NormRelationReport norm_relation_identity(const HeckeChar& psi, const Ideal& n, long long ell, bool drop_correction = false)
{
    const QuadField& K = psi.field();
    if (!K.divides(psi.modulus(), n)) throw ModulusViolation("the modulus of psi does not divide n");
    auto pd = K.split_prime(ell);
    if (pd.kind != iq::Splitting::split) throw NotSplit("prime is not split");
    if ((K.norm(n) * -K.disc()) % ell == 0) throw ModulusViolation("l divides the level");
    const Ideal& l = pd.p;
    const Ideal& lb = pd.pbar;
    auto Hn = std::make_shared<const RayClassGroup>(K, n);
    auto Hnl = std::make_shared<const RayClassGroup>(K, K.mul(n, l));
    PhiImage phn = phi_n(psi, Hn, {ell});
    PhiImage phl = phi_n(psi, Hnl, {ell});
    auto G = phn.G;

    NormRelationReport r;
    r.ell = ell;
    GroupRingElt Tn = phn.T.at(ell), Sn = phn.S.at(ell);
    GroupRingElt corr(G, Hn->dlog(l), psi(l));                        // [l] psi(l)
    CycNum inv_ell(make_rat(1, static_cast<long>(ell)));
    // the level-nl image of T', pushed to H_n along the natural map
    GroupRingElt Tnl(G);
    for (const auto& t : phl.T_terms.at(ell)) Tnl.add_term(Hn->dlog(t.ideal), t.coeff);

    GroupRingElt p1 = Tn;
    if (!drop_correction) p1 = p1 - CycNum(static_cast<long>(ell)) * (inv_ell * corr);
    r.lhs = {p1, -Sn};
    r.displayed = {Tn - corr, -Sn};
    r.relations_match_display = drop_correction || r.lhs == r.displayed;
    r.rhs = {Tnl, -(inv_ell * (Tnl * corr))};
    r.identity_holds = r.lhs == r.rhs;

    GroupRingElt prod(G, Hn->dlog(K.mul(l, lb)), psi(l) * psi(lb));
    r.s_prime_equals_scaled_product = Sn == inv_ell * prod;
    r.s_prime_equals_unscaled_product = Sn == prod;
    GroupRingElt u = GroupRingElt(G, Hn->dlog(lb), psi(lb)) * GroupRingElt(G, Hn->dlog(lb), psi(lb));
    u = u.monomial_inverse();
    r.normalizer_invertible = u * u.monomial_inverse() == GroupRingElt::one(G);
    return r;
}

} // namespace eusys::cm
