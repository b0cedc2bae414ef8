#pragma once
#include "eusys/arith/bigrat.hpp"
#include "eusys/arith/finab.hpp"

#include <stdexcept>
#include <vector>

namespace eusys {

// Z^n / (row span of R) as a finite abelian group, with the coordinate change
struct Presentation {
    FinAbGroup group;
    std::vector<std::vector<BigInt>> coord;   // rows: one per kept factor, applied to generator coords

    Elem map(const std::vector<long long>& x) const
    {
        Elem y(coord.size());
        for (size_t i = 0; i < coord.size(); ++i) {
            BigInt s = 0;
            for (size_t j = 0; j < x.size(); ++j) s += coord[i][j] * static_cast<long>(x[j]);
            BigInt d = static_cast<long>(group.orders()[i]);
            s %= d;
            if (s < 0) s += d;
            y[i] = s.get_si();
        }
        return y;
    }
};

inline Presentation smith_presentation(std::vector<std::vector<BigInt>> R, size_t n)
{
    size_t m = R.size();
    // V accumulates the column operations; new coordinates are x V
    std::vector<std::vector<BigInt>> V(n, std::vector<BigInt>(n, 0));
    for (size_t i = 0; i < n; ++i) V[i][i] = 1;
    auto col_add = [&](size_t j, size_t i, const BigInt& k) {   // col j += k col i
        for (size_t r = 0; r < m; ++r) R[r][j] += k * R[r][i];
        for (size_t r = 0; r < n; ++r) V[r][j] += k * V[r][i];
    };
    auto col_swap = [&](size_t i, size_t j) {
        for (size_t r = 0; r < m; ++r) std::swap(R[r][i], R[r][j]);
        for (size_t r = 0; r < n; ++r) std::swap(V[r][i], V[r][j]);
    };
    std::vector<BigInt> diag;
    size_t t = 0;
    for (; t < n && t < m; ++t) {
        for (;;) {
            // pivot: smallest nonzero |entry| in the trailing block
            size_t pr = m, pc = n;
            for (size_t r = t; r < m; ++r)
                for (size_t c = t; c < n; ++c)
                    if (R[r][c] != 0 && (pr == m || abs(R[r][c]) < abs(R[pr][pc]))) {
                        pr = r;
                        pc = c;
                    }
            if (pr == m) break;
            std::swap(R[t], R[pr]);
            col_swap(t, pc);
            bool clean = true;
            for (size_t r = t + 1; r < m; ++r) {
                BigInt q = R[r][t] / R[t][t];
                if (q != 0)
                    for (size_t c = t; c < n; ++c) R[r][c] -= q * R[t][c];
                if (R[r][t] != 0) clean = false;
            }
            for (size_t c = t + 1; c < n; ++c) {
                BigInt q = R[t][c] / R[t][t];
                if (q != 0) col_add(c, t, -q);
                if (R[t][c] != 0) clean = false;
            }
            if (!clean) continue;
            // divisibility condition
            bool div = true;
            for (size_t r = t + 1; r < m && div; ++r)
                for (size_t c = t + 1; c < n; ++c)
                    if (R[r][c] % R[t][t] != 0) {
                        for (size_t cc = t; cc < n; ++cc) R[t][cc] += R[r][cc];
                        div = false;
                        break;
                    }
            if (div) break;
        }
        if (R[t][t] == 0) break;
        diag.push_back(abs(R[t][t]));
    }
    if (diag.size() < n) throw std::domain_error("presentation is not of a finite group");
    Presentation P;
    std::vector<long long> ord;
    for (size_t i = 0; i < n; ++i)
        if (diag[i] != 1) {
            ord.push_back(diag[i].get_si());
            std::vector<BigInt> col(n);
            for (size_t r = 0; r < n; ++r) col[r] = V[r][i];
            P.coord.push_back(col);
        }
    P.group = FinAbGroup(ord);
    return P;
}

} // namespace eusys
