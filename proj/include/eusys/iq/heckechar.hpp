#pragma once
#include "eusys/iq/rayclass.hpp"

#include <memory>

namespace eusys::iq {

struct UnitObstruction : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ModulusMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ClassExtensionUnsupported : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// psi of infinity type (-1,0): psi((alpha)) = alpha * w(alpha), optionally twisted by a ray class character
class HeckeChar {
public:
    HeckeChar(const QuadField& K, const Ideal& f, std::shared_ptr<const ResidueUnits> res, Character omega)
        : K_(K), f_(f), res_(std::move(res)), omega_(std::move(omega))
    {
    }

    const QuadField& field() const { return K_; }
    const Ideal& conductor_modulus() const { return f_; }
    // ideals must be coprime to this
    const Ideal& modulus() const { return twist_ ? twist_->modulus() : f_; }
    const ResidueUnits& residues() const { return *res_; }
    const Character& omega_character() const { return omega_; }
    bool twisted() const { return twist_ != nullptr; }
    const RayClassGroup* twist_group() const { return twist_.get(); }
    const Character& twist_character() const { return chi_; }

    CycNum omega_tilde(QElt u) const { return omega_(res_->group(), res_->dlog(u)); }

    CycNum operator()(const Ideal& A) const
    {
        if (!K_.coprime(A, modulus())) throw NotCoprime("ideal not coprime to the character modulus");
        auto g = K_.generator(A);
        if (!g) throw ClassExtensionUnsupported("non-principal ideal: class extension needs h_K = 1");
        CycNum v = K_.embed(*g) * omega_tilde(*g);
        if (twist_) v = v * chi_(twist_->group(), twist_->dlog(A));
        return v;
    }
    CycNum operator()(QElt alpha) const { return (*this)(K_.principal(alpha)); }

    HeckeChar twist(std::shared_ptr<const RayClassGroup> H, const Character& chi) const
    {
        if (twist_) throw ModulusMismatch("character is already twisted");
        if (!(H->field() == K_)) throw ModulusMismatch("ray class group over a different field");
        if (!K_.divides(f_, H->modulus())) throw ModulusMismatch("modulus of psi does not divide the ray class modulus");
        if (chi.k.size() != H->group().rank()) throw ModulusMismatch("character does not belong to the ray class group");
        HeckeChar r = *this;
        r.twist_ = std::move(H);
        r.chi_ = chi;
        return r;
    }

private:
    QuadField K_;
    Ideal f_;
    std::shared_ptr<const ResidueUnits> res_;
    Character omega_;
    std::shared_ptr<const RayClassGroup> twist_;
    Character chi_;
};

// characters w of (O/f)^x with w(u) = u^{-1} on units, in enumeration order
inline std::vector<Character> unit_compatible_characters(const QuadField& K, const ResidueUnits& R)
{
    QElt z = K.unit_generator();
    CycNum target = K.embed(z).inverse();
    Elem e = R.dlog(z);
    std::vector<Character> out;
    for (auto& chi : all_characters(R.group()))
        if (chi(R.group(), e) == target) out.push_back(chi);
    return out;
}

inline HeckeChar hecke_char_construct(const QuadField& K, const Ideal& f, size_t choice = 0)
{
    if (ClassGroup(K).class_number() != 1)
        throw ClassExtensionUnsupported("class extension is implemented for class number one only");
    auto R = std::make_shared<const ResidueUnits>(K, f);
    auto cands = unit_compatible_characters(K, *R);
    if (cands.empty()) throw UnitObstruction("no character of (O/f)^x restricts to u -> u^{-1} on units");
    if (choice >= cands.size()) throw std::out_of_range("character choice out of range");
    return HeckeChar(K, f, R, cands[choice]);
}

inline HeckeChar char_twist(const HeckeChar& psi, std::shared_ptr<const RayClassGroup> H, const Character& chi)
{
    return psi.twist(std::move(H), chi);
}

// w(n) = psi((n))/n on integers coprime to N(modulus)
struct DirichletTable {
    long long modulus = 1;
    std::vector<CycNum> values;   // index n mod modulus; zero off the units
    bool multiplicative = false;
    CycNum operator()(long long n) const { return values[static_cast<size_t>(detail::pmod(n, modulus))]; }
};

inline DirichletTable omega_of(const HeckeChar& psi)
{
    const QuadField& K = psi.field();
    DirichletTable t;
    t.modulus = K.norm(psi.modulus());
    t.values.assign(static_cast<size_t>(t.modulus), CycNum(0));
    for (long long n = 1; n <= t.modulus; ++n) {
        if (std::gcd(n, t.modulus) != 1) continue;
        t.values[static_cast<size_t>(n % t.modulus)] = psi(QElt{n, 0}) * CycNum(make_rat(1, static_cast<long>(n)));
    }
    t.multiplicative = true;
    for (long long m = 1; m <= t.modulus && t.multiplicative; ++m)
        for (long long n = 1; n <= t.modulus; ++n)
            if (!(t(m * n) == t(m) * t(n))) {
                t.multiplicative = false;
                break;
            }
    return t;
}

} // namespace eusys::iq
