#pragma once

#include <optional>
#include <vector>

#include "qps/representation.hpp"

namespace qps {

// Phase-space coordinates live on a doubled grid: q = dq/2 with
// dq in {0, ..., 2N-1}, so even dq are the N integer (physical) points and
// odd dq the N half-integer ones.  All index arithmetic is done on the
// doubled integers mod 2N; half-integers never appear as floating values.
struct HalfPoint {
    int dq = 0;
    int dp = 0;

    bool q_is_integer() const { return dq % 2 == 0; }
    bool p_is_integer() const { return dp % 2 == 0; }

    bool operator==(const HalfPoint&) const = default;
};

// Fourier-transformed Fano operator at one point: 1/(2N) times a unit
// phase times a single monomial.  `mono` carries the exact content when
// the cell came from the closed form; the group-orbit path fills only the
// numerical matrix.
struct FourierFano {
    HalfPoint point;
    CMat op;
    std::optional<PhasedMonomial> mono;
    double scale = 0.0;  // 1/(2N)
};

// Closed forms, with the argument order fixed by the marginality anchors
// Delta_F(0, p_f) = Q^{2 p_f}/2N and Delta_F(q_f, 0) = P^{-2 q_f}/2N:
//   Leonhardt: 1/(2N) w_N^{ 2 p_f q_f}        P^{-2 q_f} Q^{2 p_f}
//   New:       1/(2N) w_N^{-2 (N-1) p_f q_f}  P^{-2 q_f} Q^{2 p_f}
FourierFano fano_fourier_closed(HalfPoint pt, Family family, int N);

// Group-orbit construction: reduce the point to (xi, kappa, lambda),
// complete to h = [[kappa, -mu], [-lambda, nu]], build U_h and conjugate
// the anchor cell Q^xi / 2N.  Must reproduce the closed form for
// admissible phase classes.  `completion_shift` picks the Bezout
// completion (mu + kappa t, nu + lambda t); the result is completion
// independent.  Inadmissible phase classes are rejected unless
// enforce_admissible is false (negative-test path).
FourierFano fano_fourier_via_group(HalfPoint pt, const PhaseChoice& pc, int N,
                                   bool enforce_admissible = true,
                                   long long completion_shift = 0);

// Position-space Fano operators on the full doubled grid.
struct FanoGrid {
    int N = 0;
    Family family = Family::New;
    std::vector<CMat> cells;  // row-major by (dq, dp), (2N)^2 entries

    const CMat& at(int dq, int dp) const { return cells[index(dq, dp)]; }
    CMat& at(int dq, int dp) { return cells[index(dq, dp)]; }

    std::size_t index(int dq, int dp) const {
        return static_cast<std::size_t>(dq) * (2 * N) + dp;
    }
};

// One grid cell by the inverse Fourier sum
//   Delta(q, p) = 1/2N sum_{q_f, p_f} w_2N^{-2q 2p_f} w_2N^{2p 2q_f}
//                 Delta_F(q_f, p_f)
// over the closed-form cells, with all phases combined at the exponent
// level before assembly.
CMat fano_cell(Family family, int N, int dq, int dp);

// Eager grid; cells are independent, so `threads` > 1 splits rows across
// std::thread workers with identical output.
FanoGrid build_fano_grid(Family family, int N, int threads = 1);

// Same inverse transform but over group-orbit Fourier cells.  Admissible
// classes reproduce build_fano_grid; inadmissible ones (built with
// enforce_admissible = false) yield grids that violate marginality, which
// is the point of the negative test.
FanoGrid build_fano_grid_via_group(const PhaseChoice& pc, int N,
                                   bool enforce_admissible = true);

struct MarginalityReport {
    bool pass = false;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    std::vector<double> position_deviation;  // per dq row, vs |q><q| or 0
    std::vector<double> momentum_deviation;  // per dp column, vs |p><p| or 0
};

// Sums over one axis must give the projector on the matching eigenvector
// at integer points and vanish at half-integer points.
MarginalityReport check_marginality(const FanoGrid& grid,
                                    double tol = default_tolerance);

struct CovarianceReport {
    bool pass = false;
    double max_deviation = 0.0;
    double tolerance = 0.0;
};

// U_h Delta(q, p) U_h* = Delta(nu q - lambda p, -mu q + kappa p), checked
// on every cell with doubled-coordinate index arithmetic mod 2N.
CovarianceReport check_covariance(const FanoGrid& grid, const Sp2ZElement& h,
                                  const PhaseChoice& pc,
                                  double tol = default_tolerance);

// Literal double-sum reference for the Leonhardt-family cell (even N):
//   1/(2N)^2 sum_{p_f, q_f} w_N^{2(p_f q_f - p_f q + q_f p)}
//            P^{-2 q_f} Q^{2 p_f}
CMat leonhardt_reference(int dq, int dp, int N);

// Odd-N reduction of the New family at integer points:
//   1/N^2 sum_{m,n} w_N^{-(N-1) n m / 2} w_N^{-q n} w_N^{p m} P^{-m} Q^n
CMat odd_reduction_reference(int q, int p, int N);

} // namespace qps
