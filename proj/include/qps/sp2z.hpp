#pragma once

#include <compare>

#include "qps/errors.hpp"

namespace qps {

// 2x2 integer matrix h = [[kappa, mu], [lambda, nu]] with det = 1.
struct Sp2ZElement {
    long long kappa = 1, mu = 0, lambda = 0, nu = 1;

    long long det() const { return kappa * nu - lambda * mu; }

    Sp2ZElement operator*(const Sp2ZElement& o) const {
        return {kappa * o.kappa + mu * o.lambda, kappa * o.mu + mu * o.nu,
                lambda * o.kappa + nu * o.lambda, lambda * o.mu + nu * o.nu};
    }

    Sp2ZElement inverse() const { return {nu, -mu, -lambda, kappa}; }

    static Sp2ZElement identity() { return {}; }

    auto operator<=>(const Sp2ZElement&) const = default;
};

// Validates det = 1; throws not_unimodular otherwise.
Sp2ZElement validate_sl2(long long kappa, long long mu, long long lambda, long long nu);

// Completes coprime (kappa, lambda) to [[kappa, mu], [lambda, nu]] with
// kappa*nu - lambda*mu = 1.  Among the solution family (mu + kappa*t,
// nu + lambda*t) the one with minimal |mu| is chosen (ties toward mu >= 0);
// when kappa = 0 leaves mu fixed, minimal |nu| breaks the remaining freedom.
Sp2ZElement complete_to_sl2(long long kappa, long long lambda);

// gcd-based reduction of a doubled phase-space point: xi * kappa = dp and
// xi * lambda = dq exactly, with gcd(kappa, lambda) = 1.  The (0, 0) point
// carries no orbit data and is flagged degenerate.
struct OrbitReduction {
    long long xi = 0;
    long long kappa = 0, lambda = 0;
    bool degenerate = false;
};

OrbitReduction reduce_point(long long dq, long long dp, int N);

// Deterministic pseudo-random unimodular element: a seed-driven product of
// [[1,0],[1,1]], [[1,1],[0,1]] and -1, with every entry kept <= bound in
// magnitude.
Sp2ZElement random_sl2(long long bound, unsigned long long seed);

} // namespace qps
