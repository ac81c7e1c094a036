#pragma once

#include <cmath>
#include <stdexcept>

namespace corput {

/// Residual (x-y)^a - (x^a - y^a) for a in (0,1], 0 <= y <= x.
/// Nonnegative on the whole domain (subadditivity of concave powers).
inline double lemma_concavity_gap(double alpha, double x, double y) {
    if (!(alpha > 0.0) || !(alpha <= 1.0))
        throw std::invalid_argument("lemma_concavity_gap: requires 0 < alpha <= 1");
    if (!(y >= 0.0) || !(x >= y))
        throw std::invalid_argument("lemma_concavity_gap: requires 0 <= y <= x");
    return std::pow(x - y, alpha) - (std::pow(x, alpha) - std::pow(y, alpha));
}

/// True iff |n|/2 <= |p| <= 2|n| for p in [n, n+1]. Holds on the whole valid
/// domain; n in {0, -1} is excluded.
inline bool lemma_dyadic_comparability(long long n, double p) {
    if (n == 0 || n == -1)
        throw std::invalid_argument("lemma_dyadic_comparability: n in {0,-1} excluded");
    const double nd = static_cast<double>(n);
    if (!(p >= nd) || !(p <= nd + 1.0))
        throw std::invalid_argument("lemma_dyadic_comparability: p outside [n, n+1]");
    const double an = std::abs(nd);
    const double ap = std::abs(p);
    return 0.5 * an <= ap && ap <= 2.0 * an;
}

/// sigma/(sigma-1), an upper bound for sum_{n>=1} n^-sigma when sigma > 1.
inline double zeta_tail_bound(double sigma) {
    if (!(sigma > 1.0)) throw std::invalid_argument("zeta_tail_bound: requires sigma > 1");
    return sigma / (sigma - 1.0);
}

}  // namespace corput
