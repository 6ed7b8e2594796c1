#pragma once

#include "qps/fano.hpp"

namespace qps {

struct DensityMatrix {
    int N = 0;
    CMat rho;
};

// Validates hermiticity, unit trace and positivity (within tol) and
// returns the wrapped matrix; the thrown message carries the measured
// deviation.
DensityMatrix make_density(const CMat& rho, double tol = 1e-9);

// Normalizes the vector and forms |psi><psi|.
DensityMatrix density_from_pure(const CVec& psi);

// W(q, p) = Tr[Delta(q, p) rho] on the doubled grid.  Values are real up
// to a residue that is asserted below `imag_tol` and recorded before
// truncation.
struct WignerGrid {
    int N = 0;
    Family family = Family::New;
    Eigen::MatrixXd values;  // (2N) x (2N), row dq, column dp
    double max_imag_residue = 0.0;

    double at(int dq, int dp) const { return values(dq, dp); }
};

WignerGrid wigner_transform(const DensityMatrix& rho, const FanoGrid& grid,
                            double imag_tol = default_tolerance);

// Axis sums: entry dq of `position` is sum_p W(q, p), entry dp of
// `momentum` is sum_q W(q, p).  Integer-indexed entries are the outcome
// probabilities; half-integer entries vanish for a marginal grid.
struct Marginals {
    Eigen::VectorXd position;
    Eigen::VectorXd momentum;
};

Marginals marginals(const WignerGrid& w);

// Phase-weighted grid sum against the ordered monomial:
//   lhs = sum_{q,p} w_N^{b p + a q} Delta(q, p)
//   rhs = w_N^{(N-1)ab/2} P^b Q^a   (new family)
//         w_N^{-ab/2}     P^b Q^a   (leonhardt family)
struct MomentIdentityResult {
    CMat lhs, rhs;
    double deviation = 0.0;
};

MomentIdentityResult moment_identity(const FanoGrid& grid, int a, int b);

// Inverts the transform by extracting the monomial moments from
// phase-weighted sums of W and feeding them through the trace-orthogonal
// expansion.
DensityMatrix reconstruct_density(const WignerGrid& w, const FanoGrid& grid);

} // namespace qps
