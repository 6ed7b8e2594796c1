#pragma once

#include <utility>

#include "qps/algebra.hpp"
#include "qps/sp2z.hpp"

namespace qps {

// The two phase classes whose Fano grids satisfy the marginal conditions,
// plus everything else.  Inadmissible only ever labels grids built through
// the group-orbit path on purpose (negative tests).
enum class Family { New, Leonhardt, Inadmissible };

const char* family_name(Family f);

// Integer parameters (n_plus, n_minus) of the representation's phase
// convention.  The class of (n_plus mod N, n_minus mod N) is all that
// ever matters.
struct PhaseChoice {
    long long n_plus = 0;
    long long n_minus = 0;
    int N = 1;

    // Canonical representative of an admissible family: (0, 0) for New,
    // (N/2, N/2) for Leonhardt (even N only).
    static PhaseChoice for_family(Family f, int N);

    bool same_class(const PhaseChoice& o) const {
        return N == o.N && floor_mod(n_plus, N) == floor_mod(o.n_plus, N) &&
               floor_mod(n_minus, N) == floor_mod(o.n_minus, N);
    }
};

Family classify_phase_choice(const PhaseChoice& pc);

// Phase coefficients of the conjugation rule
//   U Q U* = a_Q P^lambda Q^kappa,   U P U* = a_P P^nu Q^mu,
// as exact w_{2N} exponents:
//   a_Q = w_N^{kappa lambda (N-1)/2 - kappa n+ + (lambda-1) n-}
//   a_P = w_N^{nu mu (N-1)/2 - (mu-1) n+ + nu n-}
std::pair<PhaseExponent, PhaseExponent> coefficients(const Sp2ZElement& h,
                                                     const PhaseChoice& pc);

struct RepUnitary {
    Sp2ZElement h;
    PhaseChoice pc;
    CMat U;
    double unitarity_residual = 0.0;
    double conj_residual_q = 0.0;
    double conj_residual_p = 0.0;

    int dim() const { return pc.N; }
};

// Constructs the representation unitary as the (required one-dimensional)
// null space of the stacked intertwining system
//   (a_Q P^lambda Q^kappa) U - U Q = 0,   (a_P P^nu Q^mu) U - U P = 0,
// solved by SVD over all N^2 matrix unknowns.  The result is scaled to a
// unitary and its global phase fixed by making the first row-major entry
// of magnitude > 1/(2 sqrt N) real and positive.
//
// Throws representation_failure when the solution space is not
// one-dimensional and numerical_failure when a residual bound is violated.
RepUnitary build_unitary(const Sp2ZElement& h, const PhaseChoice& pc);

// Memoized variant keyed by (h, n+ mod N, n- mod N, N); safe for
// concurrent use.
const RepUnitary& build_unitary_cached(const Sp2ZElement& h, const PhaseChoice& pc);

// Verifies U_{h'} U_h = e^{i phi} U_{h'h} and returns phi (convention
// dependent: the global-phase fix above is ours).  u_left is the unitary
// for h', u_right the one for h.  Throws projectivity_violation when the
// product is not proportional to the identity within tol.
double compose_phase(const RepUnitary& u_left, const RepUnitary& u_right,
                     double tol = 1e-9);

// Same check without the throw: phi plus the proportionality residual
// || U_{h'} U_h (U_{h'h})^dagger - e^{i phi} ||_max.
struct CompositionCheck {
    double phi = 0.0;
    double residual = 0.0;
};

CompositionCheck composition_check(const RepUnitary& u_left, const RepUnitary& u_right);

} // namespace qps
