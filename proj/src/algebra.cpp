#include "qps/algebra.hpp"

namespace qps {

double max_abs(const CMat& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double max_abs_diff(const CMat& a, const CMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw dimension_mismatch("comparing matrices of different shapes");
    return max_abs(a - b);
}

CMat PhasedMonomial::matrix() const {
    const int N = dim();
    CMat out = CMat::Zero(N, N);
    // (phase * P^m Q^n)|q> = phase * w_N^{nq} |q - m mod N>
    for (int q = 0; q < N; ++q) {
        const int row = static_cast<int>(floor_mod(q - p_, N));
        out(row, q) = (phase_ * PhaseExponent(2 * q_ * q, N)).to_complex();
    }
    return out;
}

namespace {

int checked_dim(int N) {
    if (N < 1) throw invalid_dimension("state-space dimension requires N >= 1");
    return N;
}

} // namespace

CMat clock_operator(int N) {
    checked_dim(N);
    return PhasedMonomial::clock(N).matrix();
}

CMat shift_operator(int N) {
    checked_dim(N);
    return PhasedMonomial::shift(N).matrix();
}

std::pair<CMat, CMat> build_clock_shift(int N) {
    return {clock_operator(N), shift_operator(N)};
}

CMat monomial(long long m, long long n, int N) {
    checked_dim(N);
    return PhasedMonomial::monomial(m, n, N).matrix();
}

CVec position_ket(int q, int N) {
    checked_dim(N);
    CVec v = CVec::Zero(N);
    v(static_cast<int>(floor_mod(q, N))) = 1.0;
    return v;
}

CVec momentum_ket(int p, int N) {
    checked_dim(N);
    CVec v(N);
    const double scale = 1.0 / std::sqrt(static_cast<double>(N));
    for (int q = 0; q < N; ++q)
        v(q) = scale * PhaseExponent(2LL * p * q, N).to_complex();
    return v;
}

MonomialCoefficients decompose(const CMat& X) {
    if (X.rows() != X.cols() || X.rows() < 1)
        throw dimension_mismatch("decompose requires a square N x N matrix");
    const int N = static_cast<int>(X.rows());
    MonomialCoefficients out{N, CMat::Zero(N, N)};
    // Tr[X B^dagger] = sum_{entries} X .* conj(B); B = P^m Q^n has one
    // nonzero per column, at row (q - m) mod N with value w_N^{nq}.
    for (int m = 0; m < N; ++m) {
        for (int n = 0; n < N; ++n) {
            cplx acc = 0.0;
            for (int q = 0; q < N; ++q) {
                const int row = static_cast<int>(floor_mod(q - m, N));
                acc += X(row, q) * PhaseExponent(-2LL * n * q, N).to_complex();
            }
            out.coeffs(m, n) = acc / static_cast<double>(N);
        }
    }
    return out;
}

CMat reconstruct(const MonomialCoefficients& c) {
    const int N = c.dim;
    if (c.coeffs.rows() != N || c.coeffs.cols() != N)
        throw dimension_mismatch("coefficient table shape disagrees with dim");
    CMat out = CMat::Zero(N, N);
    for (int m = 0; m < N; ++m) {
        for (int n = 0; n < N; ++n) {
            if (c.coeffs(m, n) == cplx(0.0, 0.0)) continue;
            for (int q = 0; q < N; ++q) {
                const int row = static_cast<int>(floor_mod(q - m, N));
                out(row, q) += c.coeffs(m, n) * PhaseExponent(2LL * n * q, N).to_complex();
            }
        }
    }
    return out;
}

} // namespace qps
