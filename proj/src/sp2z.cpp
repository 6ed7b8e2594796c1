#include "qps/sp2z.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>
#include <string>
#include <utility>

namespace qps {

Sp2ZElement validate_sl2(long long kappa, long long mu, long long lambda, long long nu) {
    Sp2ZElement h{kappa, mu, lambda, nu};
    if (h.det() != 1)
        throw not_unimodular("determinant is " + std::to_string(h.det()) + ", expected 1");
    return h;
}

namespace {

// gcd(a, b) = x*a + y*b with gcd >= 0.
struct Bezout {
    long long gcd, x, y;
};

Bezout extended_gcd(long long a, long long b) {
    long long old_r = a, r = b;
    long long old_x = 1, x = 0;
    long long old_y = 0, y = 1;
    while (r != 0) {
        const long long q = old_r / r;
        old_r = std::exchange(r, old_r - q * r);
        old_x = std::exchange(x, old_x - q * x);
        old_y = std::exchange(y, old_y - q * y);
    }
    if (old_r < 0) { old_r = -old_r; old_x = -old_x; old_y = -old_y; }
    return {old_r, old_x, old_y};
}

} // namespace

Sp2ZElement complete_to_sl2(long long kappa, long long lambda) {
    const Bezout bz = extended_gcd(kappa, lambda);
    if (bz.gcd != 1)
        throw not_coprime("gcd(" + std::to_string(kappa) + ", " + std::to_string(lambda) +
                          ") = " + std::to_string(bz.gcd));
    // kappa*x + lambda*y = 1  ->  nu = x, mu = -y.
    long long mu = -bz.y, nu = bz.x;
    if (kappa != 0) {
        // Shift by t*(kappa, lambda) to minimize |mu|, ties toward mu >= 0.
        const long long t0 =
            std::llround(-static_cast<double>(mu) / static_cast<double>(kappa));
        long long best_mu = mu + kappa * t0, best_nu = nu + lambda * t0;
        for (long long t : {t0 - 1, t0 + 1}) {
            const long long cand = mu + kappa * t;
            if (std::llabs(cand) < std::llabs(best_mu) ||
                (std::llabs(cand) == std::llabs(best_mu) && cand > best_mu)) {
                best_mu = cand;
                best_nu = nu + lambda * t;
            }
        }
        mu = best_mu;
        nu = best_nu;
    } else {
        // kappa = 0 forces lambda = +-1 and mu = -lambda; nu is free.
        nu = 0;
    }
    return validate_sl2(kappa, mu, lambda, nu);
}

OrbitReduction reduce_point(long long dq, long long dp, int N) {
    if (N < 1) throw invalid_dimension("reduce_point requires N >= 1");
    if (dq < 0 || dp < 0 || dq >= 2LL * N || dp >= 2LL * N)
        throw std::out_of_range("doubled coordinates must lie in [0, 2N)");
    if (dq == 0 && dp == 0) return {0, 0, 0, true};
    const long long xi = std::gcd(dp, dq);
    return {xi, dp / xi, dq / xi, false};
}

Sp2ZElement random_sl2(long long bound, unsigned long long seed) {
    if (bound < 1) throw std::invalid_argument("random_sl2 requires bound >= 1");
    static const Sp2ZElement gens[] = {
        {1, 0, 1, 1},     // lower triangular
        {1, 1, 0, 1},     // upper triangular
        {-1, 0, 0, -1},   // negation
    };
    std::mt19937_64 rng(seed);
    Sp2ZElement cur = Sp2ZElement::identity();
    for (int step = 0; step < 64; ++step) {
        const Sp2ZElement cand = cur * gens[rng() % 3];
        const long long m = std::max({std::llabs(cand.kappa), std::llabs(cand.mu),
                                      std::llabs(cand.lambda), std::llabs(cand.nu)});
        if (m <= bound) cur = cand;
    }
    return cur;
}

} // namespace qps
