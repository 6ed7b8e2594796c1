#include "qps/representation.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include <Eigen/SVD>

namespace qps {

const char* family_name(Family f) {
    switch (f) {
        case Family::New: return "new";
        case Family::Leonhardt: return "leonhardt";
        case Family::Inadmissible: return "inadmissible";
    }
    return "?";
}

PhaseChoice PhaseChoice::for_family(Family f, int N) {
    if (N < 1) throw invalid_dimension("phase choice requires N >= 1");
    switch (f) {
        case Family::New: return {0, 0, N};
        case Family::Leonhardt:
            if (N % 2 != 0)
                throw invalid_dimension("the leonhardt family needs even N");
            return {N / 2, N / 2, N};
        case Family::Inadmissible: break;
    }
    throw admissibility_error("no canonical phase choice for an inadmissible class");
}

Family classify_phase_choice(const PhaseChoice& pc) {
    if (pc.N < 1) throw invalid_dimension("phase choice requires N >= 1");
    const long long rp = floor_mod(pc.n_plus, pc.N);
    const long long rm = floor_mod(pc.n_minus, pc.N);
    if (rp == 0 && rm == 0) return Family::New;
    if (pc.N % 2 == 0 && rp == pc.N / 2 && rm == pc.N / 2) return Family::Leonhardt;
    return Family::Inadmissible;
}

std::pair<PhaseExponent, PhaseExponent> coefficients(const Sp2ZElement& h,
                                                     const PhaseChoice& pc) {
    const long long N = pc.N;
    const long long eq =
        h.kappa * h.lambda * (N - 1) + 2 * (-h.kappa * pc.n_plus + (h.lambda - 1) * pc.n_minus);
    const long long ep =
        h.nu * h.mu * (N - 1) + 2 * (-(h.mu - 1) * pc.n_plus + h.nu * pc.n_minus);
    return {PhaseExponent(eq, pc.N), PhaseExponent(ep, pc.N)};
}

namespace {

// kron(A, B), column-major vec convention: vec(A X B) = kron(B^T, A) vec(X).
CMat kron(const CMat& a, const CMat& b) {
    CMat k(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return k;
}

} // namespace

RepUnitary build_unitary(const Sp2ZElement& h, const PhaseChoice& pc) {
    validate_sl2(h.kappa, h.mu, h.lambda, h.nu);
    const int N = pc.N;
    const auto [a_q, a_p] = coefficients(h, pc);

    const CMat Q = clock_operator(N);
    const CMat P = shift_operator(N);
    const CMat Qp = a_q.to_complex() * monomial(h.lambda, h.kappa, N);
    const CMat Pp = a_p.to_complex() * monomial(h.nu, h.mu, N);

    // Stack {Qp U - U Q = 0, Pp U - U P = 0} over vec(U).
    const CMat eye = CMat::Identity(N, N);
    CMat sys(2 * N * N, N * N);
    sys.topRows(N * N) = kron(eye, Qp) - kron(Q.transpose(), eye);
    sys.bottomRows(N * N) = kron(eye, Pp) - kron(P.transpose(), eye);

    Eigen::JacobiSVD<CMat> svd(sys, Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double s_max = sv(0);
    const double s_min = sv(N * N - 1);
    if (s_min > 1e-8 * std::max(s_max, 1.0))
        throw representation_failure("intertwining system has no null direction");
    if (N * N >= 2) {
        const double s_next = sv(N * N - 2);
        if (s_next <= 1e6 * std::max(s_min, 1e-16 * s_max))
            throw representation_failure("intertwining null space is not one-dimensional");
    }

    CMat U = Eigen::Map<const CMat>(svd.matrixV().col(N * N - 1).data(), N, N);

    // The null vector is c * U for some unitary U; rescale and check.
    const double scale = std::sqrt((U * U.adjoint()).trace().real() / N);
    if (!(scale > 0.0))
        throw numerical_failure("degenerate null vector");
    U /= scale;
    RepUnitary rep{h, pc, CMat(), 0.0, 0.0, 0.0};
    rep.unitarity_residual = max_abs_diff(U * U.adjoint(), eye);
    if (rep.unitarity_residual > 1e-8)
        throw numerical_failure("unitarization residual " +
                                std::to_string(rep.unitarity_residual) + " exceeds 1e-8");

    // Global phase: first row-major entry of magnitude > 1/(2 sqrt N)
    // becomes real positive.  Every unitary has such an entry.
    const double floor_mag = 0.5 / std::sqrt(static_cast<double>(N));
    for (int r = 0; r < N; ++r) {
        bool done = false;
        for (int c = 0; c < N; ++c) {
            const cplx u = U(r, c);
            if (std::abs(u) > floor_mag) {
                U *= std::conj(u) / std::abs(u);
                done = true;
                break;
            }
        }
        if (done) break;
    }

    rep.U = U;
    rep.conj_residual_q = max_abs_diff(U * Q * U.adjoint(), Qp);
    rep.conj_residual_p = max_abs_diff(U * P * U.adjoint(), Pp);
    const double worst = std::max(rep.conj_residual_q, rep.conj_residual_p);
    if (worst > default_tolerance)
        throw numerical_failure("conjugation residual " + std::to_string(worst) +
                                " exceeds tolerance");
    return rep;
}

const RepUnitary& build_unitary_cached(const Sp2ZElement& h, const PhaseChoice& pc) {
    using Key = std::tuple<int, long long, long long, long long, long long, long long, long long>;
    static std::map<Key, RepUnitary> cache;
    static std::mutex mutex;

    const Key key{pc.N, h.kappa, h.mu, h.lambda, h.nu,
                  floor_mod(pc.n_plus, pc.N), floor_mod(pc.n_minus, pc.N)};
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    RepUnitary built = build_unitary(h, pc);
    std::lock_guard lock(mutex);
    return cache.try_emplace(key, std::move(built)).first->second;
}

CompositionCheck composition_check(const RepUnitary& u_left, const RepUnitary& u_right) {
    if (u_left.pc.N != u_right.pc.N || !u_left.pc.same_class(u_right.pc))
        throw dimension_mismatch("composition needs matching N and phase class");
    const int N = u_left.pc.N;
    const RepUnitary& prod = build_unitary_cached(u_left.h * u_right.h, u_left.pc);
    const CMat M = u_left.U * u_right.U * prod.U.adjoint();
    const double phi = std::arg(M.trace() / static_cast<double>(N));
    const CMat target = std::polar(1.0, phi) * CMat::Identity(N, N);
    return {phi, max_abs_diff(M, target)};
}

double compose_phase(const RepUnitary& u_left, const RepUnitary& u_right, double tol) {
    const CompositionCheck check = composition_check(u_left, u_right);
    if (check.residual >= tol)
        throw projectivity_violation("product deviates from a pure phase by " +
                                     std::to_string(check.residual));
    return check.phi;
}

} // namespace qps
