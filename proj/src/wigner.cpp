#include "qps/wigner.hpp"

#include <string>

#include <Eigen/Eigenvalues>

namespace qps {

namespace {

// w_2N exponent relating the phase-weighted grid sum to P^b Q^a.
long long ordering_exponent(Family family, int a, int b, int N) {
    return family == Family::New ? static_cast<long long>(N - 1) * a * b
                                 : -static_cast<long long>(a) * b;
}

} // namespace

DensityMatrix make_density(const CMat& rho, double tol) {
    if (rho.rows() != rho.cols() || rho.rows() < 1)
        throw state_format_error("density matrix must be square");
    const double herm = max_abs_diff(rho, rho.adjoint());
    if (herm >= tol)
        throw state_format_error("density matrix not hermitian: asymmetry " +
                                 std::to_string(herm));
    const double trace_dev = std::abs(rho.trace() - cplx(1.0, 0.0));
    if (trace_dev >= tol)
        throw state_format_error("density matrix trace deviates from 1 by " +
                                 std::to_string(trace_dev));
    Eigen::SelfAdjointEigenSolver<CMat> eig((rho + rho.adjoint()) / 2.0);
    const double lambda_min = eig.eigenvalues().minCoeff();
    if (lambda_min < -tol)
        throw state_format_error("density matrix has negative eigenvalue " +
                                 std::to_string(lambda_min));
    return {static_cast<int>(rho.rows()), rho};
}

DensityMatrix density_from_pure(const CVec& psi) {
    if (psi.size() < 1) throw state_format_error("empty state vector");
    const double norm = psi.norm();
    if (!(norm > 0.0)) throw state_format_error("state vector has zero norm");
    const CVec unit = psi / norm;
    return {static_cast<int>(psi.size()), unit * unit.adjoint()};
}

WignerGrid wigner_transform(const DensityMatrix& rho, const FanoGrid& grid,
                            double imag_tol) {
    if (rho.N != grid.N)
        throw dimension_mismatch("state and grid dimensions disagree");
    const int N = grid.N;
    WignerGrid w{N, grid.family, Eigen::MatrixXd(2 * N, 2 * N), 0.0};
    for (int dq = 0; dq < 2 * N; ++dq) {
        for (int dp = 0; dp < 2 * N; ++dp) {
            // Tr[Delta rho] without forming the product matrix.
            const cplx t = (grid.at(dq, dp).transpose().array() * rho.rho.array()).sum();
            w.max_imag_residue = std::max(w.max_imag_residue, std::abs(t.imag()));
            w.values(dq, dp) = t.real();
        }
    }
    if (w.max_imag_residue >= imag_tol)
        throw numerical_failure("wigner values carry imaginary residue " +
                                std::to_string(w.max_imag_residue));
    const double total_dev = std::abs(w.values.sum() - 1.0);
    if (total_dev >= 1e-9)
        throw numerical_failure("wigner grid sum deviates from 1 by " +
                                std::to_string(total_dev));
    return w;
}

Marginals marginals(const WignerGrid& w) {
    return {w.values.rowwise().sum(), w.values.colwise().sum().transpose()};
}

MomentIdentityResult moment_identity(const FanoGrid& grid, int a, int b) {
    const int N = grid.N;
    if (a < 0 || a >= N || b < 0 || b >= N)
        throw std::out_of_range("moment orders must lie in [0, N)");
    if (grid.family == Family::Inadmissible)
        throw admissibility_error("moment identity needs an admissible grid");

    CMat lhs = CMat::Zero(N, N);
    for (int dq = 0; dq < 2 * N; ++dq)
        for (int dp = 0; dp < 2 * N; ++dp)
            lhs += PhaseExponent(static_cast<long long>(a) * dq +
                                     static_cast<long long>(b) * dp,
                                 N)
                       .to_complex() *
                   grid.at(dq, dp);

    const CMat rhs = PhaseExponent(ordering_exponent(grid.family, a, b, N), N).to_complex() *
                     monomial(b, a, N);
    return {lhs, rhs, max_abs_diff(lhs, rhs)};
}

DensityMatrix reconstruct_density(const WignerGrid& w, const FanoGrid& grid) {
    if (w.N != grid.N || w.family != grid.family)
        throw dimension_mismatch("wigner grid and fano grid metadata disagree");
    if (grid.family == Family::Inadmissible)
        throw admissibility_error("reconstruction needs an admissible grid");
    const int N = w.N;

    // S(a, b) = sum w_N^{a q + b p} W = phase(a, b) Tr[P^b Q^a rho], so the
    // monomial moments follow by dividing out the ordering phase.
    MonomialCoefficients coeffs{N, CMat::Zero(N, N)};
    for (int a = 0; a < N; ++a) {
        for (int b = 0; b < N; ++b) {
            cplx s = 0.0;
            for (int dq = 0; dq < 2 * N; ++dq)
                for (int dp = 0; dp < 2 * N; ++dp)
                    s += PhaseExponent(static_cast<long long>(a) * dq +
                                           static_cast<long long>(b) * dp,
                                       N)
                             .to_complex() *
                         w.values(dq, dp);
            const cplx moment =
                s * PhaseExponent(-ordering_exponent(grid.family, a, b, N), N).to_complex();
            // Tr[P^m Q^n rho] with (m, n) = (b, a); rho hermitian gives
            // c_{mn} = conj(Tr[P^m Q^n rho]) / N.
            coeffs.coeffs(b, a) = std::conj(moment) / static_cast<double>(N);
        }
    }
    return make_density(reconstruct(coeffs));
}

} // namespace qps
