#pragma once

#include <utility>

#include <Eigen/Dense>

#include "qps/phase.hpp"

namespace qps {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

double max_abs(const CMat& a);
double max_abs_diff(const CMat& a, const CMat& b);

// phase * P^m * Q^n with all phase arithmetic carried as exact w_{2N}
// exponents.  P and Q are the shift and clock operators of dimension N;
// monomial powers are reduced mod N (Q^N = P^N = 1 exactly), so the
// multiplication, power and adjoint rules below close on this set.
class PhasedMonomial {
public:
    PhasedMonomial(PhaseExponent phase, long long p_pow, long long q_pow)
        : phase_(phase),
          p_(floor_mod(p_pow, phase.dim())),
          q_(floor_mod(q_pow, phase.dim())) {}

    static PhasedMonomial identity(int N) { return {{0, N}, 0, 0}; }
    static PhasedMonomial clock(int N) { return {{0, N}, 0, 1}; }   // Q
    static PhasedMonomial shift(int N) { return {{0, N}, 1, 0}; }   // P
    static PhasedMonomial monomial(long long m, long long n, int N) {
        return {{0, N}, m, n};
    }

    int dim() const { return phase_.dim(); }
    const PhaseExponent& phase() const { return phase_; }
    long long p_pow() const { return p_; }
    long long q_pow() const { return q_; }

    // Q^b P^a = w_N^{-ab} P^a Q^b is the only reorder needed.
    PhasedMonomial operator*(const PhasedMonomial& other) const {
        PhaseExponent reorder(-2 * q_ * other.p_, dim());
        return {phase_ * other.phase_ * reorder, p_ + other.p_, q_ + other.q_};
    }

    // (P^a Q^b)^e = w_N^{-ab e(e-1)/2} P^{ea} Q^{eb}.
    PhasedMonomial pow(long long e) const {
        if (e < 0) return adjoint().pow(-e);
        long long er = floor_mod(e, 2LL * dim());
        PhaseExponent twist(-p_ * q_ * er * (er - 1), dim());
        return {phase_.pow(e) * twist, p_ * er, q_ * er};
    }

    // Monomials are unitary, so the adjoint is also the inverse.
    PhasedMonomial adjoint() const {
        PhaseExponent reorder(-2 * p_ * q_, dim());
        return {phase_.conj() * reorder, -p_, -q_};
    }

    CMat matrix() const;

    bool operator==(const PhasedMonomial&) const = default;

private:
    PhaseExponent phase_;
    long long p_, q_;
};

// Clock operator Q = diag(w_N^0, ..., w_N^{N-1}).
CMat clock_operator(int N);

// Shift operator, <q'|P|q> = delta_{q', q-1 mod N}; the Fourier conjugate
// of the clock.
CMat shift_operator(int N);

std::pair<CMat, CMat> build_clock_shift(int N);

// P^m Q^n as a dense matrix (m, n reduced mod N).
CMat monomial(long long m, long long n, int N);

// Basis vectors: |q> in the computational basis and its Fourier transform
// |p> = N^{-1/2} sum_q w_N^{pq} |q>.
CVec position_ket(int q, int N);
CVec momentum_ket(int p, int N);

// Coefficients of the trace-orthogonal expansion X = sum c_{mn} P^m Q^n.
struct MonomialCoefficients {
    int dim = 0;
    CMat coeffs;  // coeffs(m, n) = c_{mn}

    cplx at(int m, int n) const { return coeffs(m, n); }
};

// c_{mn} = Tr[X (P^m Q^n)^dagger] / N.
MonomialCoefficients decompose(const CMat& X);

// sum c_{mn} P^m Q^n.
CMat reconstruct(const MonomialCoefficients& c);

} // namespace qps
