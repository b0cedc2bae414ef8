#pragma once
#include "eusys/arith/cycnum.hpp"

#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace eusys::iq {

struct NotFundamental : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline long long checked(__int128 v)
{
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("quadratic field arithmetic overflow");
    return static_cast<long long>(v);
}

inline long long floor_div(long long a, long long b)
{
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline long long pmod(long long a, long long m)
{
    long long r = a % m;
    return r < 0 ? r + m : r;
}

inline bool squarefree(long long n)
{
    n = n < 0 ? -n : n;
    for (long long p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0) return false;
    return true;
}

inline bool is_prime(long long n)
{
    if (n < 2) return false;
    for (long long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

inline std::vector<std::pair<long long, int>> factor(long long n)
{
    std::vector<std::pair<long long, int>> f;
    for (long long p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) f.emplace_back(p, e);
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

} // namespace detail

inline bool is_fundamental_discriminant(long long d)
{
    if (d >= 0) return false;
    if (detail::pmod(d, 4) == 1) return detail::squarefree(d);
    if (detail::pmod(d, 4) != 0) return false;
    long long m = d / 4;
    long long r = detail::pmod(m, 4);
    return (r == 2 || r == 3) && detail::squarefree(m);
}

// Kronecker symbol (d / n) for n > 0
inline int kronecker(long long d, long long n)
{
    int s = 1;
    for (auto [p, e] : detail::factor(n)) {
        int v;
        if (p == 2) {
            long long r = detail::pmod(d, 8);
            v = (r % 2 == 0) ? 0 : (r == 1 || r == 7) ? 1 : -1;
        } else {
            long long a = detail::pmod(d, p);
            if (a == 0)
                v = 0;
            else {
                long long t = 1, b = a;
                for (long long k = (p - 1) / 2; k; k >>= 1) {
                    if (k & 1) t = static_cast<long long>(static_cast<__int128>(t) * b % p);
                    b = static_cast<long long>(static_cast<__int128>(b) * b % p);
                }
                v = t == 1 ? 1 : -1;
            }
        }
        for (int i = 0; i < e; ++i) s *= v;
    }
    return s;
}

// x + y theta
struct QElt {
    long long x = 0, y = 0;
    bool operator==(const QElt& o) const { return x == o.x && y == o.y; }
    bool operator!=(const QElt& o) const { return !(*this == o); }
    bool operator<(const QElt& o) const { return x != o.x ? x < o.x : y < o.y; }
};

// Z-basis {a, b + c theta}
struct Ideal {
    long long a = 1, b = 0, c = 1;
    bool operator==(const Ideal& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator!=(const Ideal& o) const { return !(*this == o); }
    bool operator<(const Ideal& o) const
    {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
    std::string str() const
    {
        return "[" + std::to_string(a) + "," + std::to_string(b) + ";0," + std::to_string(c) + "]";
    }
};

enum class Splitting { split, inert, ramified };

struct PrimeDecomp {
    long long ell = 0;
    Splitting kind = Splitting::inert;
    Ideal p, pbar;   // pbar == p unless split
};

// imaginary quadratic field of fundamental discriminant d, theta = (d + sqrt d)/2
class QuadField {
public:
    explicit QuadField(long long d) : d_(d)
    {
        if (!is_fundamental_discriminant(d)) throw NotFundamental("not a negative fundamental discriminant: " + std::to_string(d));
        n0_ = (d * d - d) / 4;
        std::vector<BigRat> co;
        int m = static_cast<int>(-d);
        CycNum g;
        for (long long a = 1; a < -d; ++a) {
            int k = kronecker(d, a);
            if (k) g += CycNum(k) * CycNum::zeta(m, static_cast<long>(a));
        }
        sqrt_d_ = g;
        if (!(g * g == CycNum(static_cast<long>(d)))) throw std::logic_error("Gauss sum does not square to the discriminant");
    }

    long long disc() const { return d_; }
    const CycNum& sqrt_disc() const { return sqrt_d_; }
    int epsilon(long long n) const { return kronecker(d_, n); }

    QElt theta() const { return {0, 1}; }
    QElt add(QElt u, QElt v) const { return {detail::checked(static_cast<__int128>(u.x) + v.x), detail::checked(static_cast<__int128>(u.y) + v.y)}; }
    QElt sub(QElt u, QElt v) const { return {detail::checked(static_cast<__int128>(u.x) - v.x), detail::checked(static_cast<__int128>(u.y) - v.y)}; }
    QElt scale(QElt u, long long k) const { return {detail::checked(static_cast<__int128>(u.x) * k), detail::checked(static_cast<__int128>(u.y) * k)}; }
    QElt mul(QElt u, QElt v) const
    {
        __int128 yy = static_cast<__int128>(u.y) * v.y;
        return {detail::checked(static_cast<__int128>(u.x) * v.x - yy * n0_),
                detail::checked(static_cast<__int128>(u.x) * v.y + static_cast<__int128>(u.y) * v.x + yy * d_)};
    }
    QElt conj(QElt u) const { return {detail::checked(static_cast<__int128>(u.x) + static_cast<__int128>(u.y) * d_), -u.y}; }
    long long norm(QElt u) const
    {
        return detail::checked(static_cast<__int128>(u.x) * u.x + static_cast<__int128>(d_) * u.x * u.y + static_cast<__int128>(n0_) * u.y * u.y);
    }
    long long trace(QElt u) const { return detail::checked(2 * static_cast<__int128>(u.x) + static_cast<__int128>(d_) * u.y); }
    QElt pow(QElt u, long e) const
    {
        QElt r{1, 0};
        for (long i = 0; i < e; ++i) r = mul(r, u);
        return r;
    }

    // fixed complex embedding: sqrt d -> i sqrt|d|
    CycNum embed(QElt u) const
    {
        CycNum th = (CycNum(static_cast<long>(d_)) + sqrt_d_) * CycNum(make_rat(1, 2));
        return CycNum(static_cast<long>(u.x)) + CycNum(static_cast<long>(u.y)) * th;
    }

    int unit_count() const { return d_ == -4 ? 4 : d_ == -3 ? 6 : 2; }
    // a generator of the unit group
    QElt unit_generator() const
    {
        if (d_ == -4) return {2, 1};    // i
        if (d_ == -3) return {2, 1};    // (1 + sqrt -3)/2
        return {-1, 0};
    }
    std::vector<QElt> units() const
    {
        std::vector<QElt> u{{1, 0}};
        QElt z = unit_generator();
        for (int i = 1; i < unit_count(); ++i) u.push_back(mul(u.back(), z));
        return u;
    }

    // ideal spanned over Z by the given elements
    Ideal span(const std::vector<QElt>& v) const
    {
        // extended-gcd elimination of the theta-coordinate; x kept reduced mod the integers found so far
        long long a = 0;
        bool have = false;
        __int128 px = 0, py = 0;
        auto absorb = [&](__int128 x) {
            a = std::gcd(a, detail::checked(x < 0 ? -x : x));
            if (a) px %= a;
        };
        for (const auto& u : v) {
            __int128 ux = u.x, uy = u.y;
            if (uy == 0) {
                absorb(ux);
                continue;
            }
            if (!have) {
                px = ux;
                py = uy;
                have = true;
                continue;
            }
            // (g, s, t): s py + t uy = g
            __int128 r0 = py, r1 = uy, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
            while (r1 != 0) {
                __int128 q = r0 / r1, tmp;
                tmp = r0 - q * r1, r0 = r1, r1 = tmp;
                tmp = s0 - q * s1, s0 = s1, s1 = tmp;
                tmp = t0 - q * t1, t0 = t1, t1 = tmp;
            }
            __int128 g = r0;
            __int128 zx = (uy / g) * px - (py / g) * ux;
            px = s0 * px + t0 * ux;
            py = g;
            absorb(zx);
        }
        if (!have || a == 0) throw std::domain_error("span: not a full-rank lattice");
        if (py < 0) {
            py = -py;
            px = -px;
        }
        Ideal I{a, detail::pmod(detail::checked(px % a), a), detail::checked(py)};
        if (I.a % I.c != 0 || I.b % I.c != 0) throw std::domain_error("span: lattice is not an ideal");
        return I;
    }

    // closes a Z-lattice under theta before spanning
    Ideal ideal(const std::vector<QElt>& gens) const
    {
        std::vector<QElt> v;
        for (auto& g : gens) {
            v.push_back(g);
            v.push_back(mul(g, theta()));
        }
        return span(v);
    }

    Ideal unit_ideal() const { return {1, 0, 1}; }
    Ideal principal(QElt u) const { return ideal({u}); }
    std::pair<QElt, QElt> basis(const Ideal& I) const { return {{I.a, 0}, {I.b, I.c}}; }

    Ideal mul(const Ideal& A, const Ideal& B) const
    {
        auto [a1, a2] = basis(A);
        auto [b1, b2] = basis(B);
        return span({mul(a1, b1), mul(a1, b2), mul(a2, b1), mul(a2, b2)});
    }
    Ideal pow(const Ideal& A, long e) const
    {
        Ideal r = unit_ideal();
        for (long i = 0; i < e; ++i) r = mul(r, A);
        return r;
    }
    Ideal sum(const Ideal& A, const Ideal& B) const
    {
        auto [a1, a2] = basis(A);
        auto [b1, b2] = basis(B);
        return span({a1, a2, b1, b2});
    }
    Ideal conj(const Ideal& A) const
    {
        auto [a1, a2] = basis(A);
        return span({conj(a1), conj(a2)});
    }
    long long norm(const Ideal& A) const { return A.a * A.c; }
    bool contains(const Ideal& A, QElt u) const
    {
        if (u.y % A.c != 0) return false;
        return detail::pmod(u.x - (u.y / A.c) * A.b, A.a) == 0;
    }
    // A | B, i.e. B inside A
    bool divides(const Ideal& A, const Ideal& B) const
    {
        auto [b1, b2] = basis(B);
        return contains(A, b1) && contains(A, b2);
    }
    bool coprime(const Ideal& A, const Ideal& B) const { return sum(A, B) == unit_ideal(); }

    // canonical representative of u mod A: x in [0,a), y in [0,c)
    QElt reduce(const Ideal& A, QElt u) const
    {
        long long q = detail::floor_div(u.y, A.c);
        u = sub(u, scale({A.b, A.c}, q));
        u.x = detail::pmod(u.x, A.a);
        return u;
    }
    long long residue_key(const Ideal& A, QElt u) const
    {
        QElt r = reduce(A, u);
        return r.x + A.a * r.y;
    }

    // a generator if the ideal is principal (a shortest lattice vector)
    std::optional<QElt> generator(const Ideal& A) const
    {
        // reduce the norm form of the primitive part, tracking the basis
        __int128 a1 = A.a / A.c, b1 = A.b / A.c;
        __int128 fa = a1, fb = 2 * b1 + d_, fc = (b1 * b1 + d_ * b1 + n0_) / a1;
        __int128 e1x = a1, e1y = 0, e2x = b1, e2y = 1;
        for (;;) {
            if (fb > fa || fb <= -fa) {
                __int128 num = fa - fb, den = 2 * fa, k = num / den;
                if (num % den != 0 && num < 0) --k;
                fc += k * fb + k * k * fa;
                fb += 2 * k * fa;
                e2x += k * e1x;
                e2y += k * e1y;
            }
            if (fa <= fc) break;
            std::swap(fa, fc);
            fb = -fb;
            std::swap(e1x, e2x);
            std::swap(e1y, e2y);
            e2x = -e2x;
            e2y = -e2y;
        }
        if (fa != 1) return std::nullopt;
        return QElt{detail::checked(e1x * A.c), detail::checked(e1y * A.c)};
    }

    PrimeDecomp split_prime(long long ell) const
    {
        if (!detail::is_prime(ell)) throw std::invalid_argument("split_prime: not a prime");
        PrimeDecomp r;
        r.ell = ell;
        int k = kronecker(d_, ell);
        if (k == -1) {
            r.kind = Splitting::inert;
            r.p = r.pbar = principal({ell, 0});
            return r;
        }
        // roots of theta^2 - d theta + n0 mod ell
        std::vector<long long> roots;
        for (long long t = 0; t < ell; ++t) {
            __int128 v = static_cast<__int128>(t) * t - static_cast<__int128>(d_) * t + n0_;
            if (v % ell == 0) roots.push_back(t);
        }
        if (roots.empty()) throw std::logic_error("split_prime: no root of the minimal polynomial");
        auto prime_of = [&](long long t) { return ideal({{ell, 0}, {-t, 1}}); };
        if (k == 0) {
            r.kind = Splitting::ramified;
            r.p = r.pbar = prime_of(roots[0]);
            return r;
        }
        r.kind = Splitting::split;
        Ideal p = prime_of(roots[0]), q = prime_of(roots.size() > 1 ? roots[1] : roots[0]);
        if (q < p) std::swap(p, q);
        r.p = p;
        r.pbar = q;
        return r;
    }

    // all ideals of norm n, ordered
    std::vector<Ideal> ideals_of_norm(long long n) const
    {
        std::vector<Ideal> out{unit_ideal()};
        for (auto [ell, e] : detail::factor(n)) {
            auto pd = split_prime(ell);
            std::vector<Ideal> local;
            if (pd.kind == Splitting::split)
                for (int i = 0; i <= e; ++i) local.push_back(mul(pow(pd.p, i), pow(pd.pbar, e - i)));
            else if (pd.kind == Splitting::ramified)
                local.push_back(pow(pd.p, e));
            else if (e % 2 == 0)
                local.push_back(pow(pd.p, e / 2));
            std::vector<Ideal> next;
            for (auto& I : out)
                for (auto& J : local) next.push_back(mul(I, J));
            out.swap(next);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    friend bool operator==(const QuadField& a, const QuadField& b) { return a.d_ == b.d_; }

private:
    long long d_;
    long long n0_;
    CycNum sqrt_d_;
};

} // namespace eusys::iq
