#include "qps/fano.hpp"

#include <string>
#include <thread>

namespace qps {

namespace {

void check_point(HalfPoint pt, int N) {
    if (N < 1) throw invalid_dimension("fano operators require N >= 1");
    if (pt.dq < 0 || pt.dq >= 2 * N || pt.dp < 0 || pt.dp >= 2 * N)
        throw std::out_of_range("doubled coordinates must lie in [0, 2N)");
}

void check_family(Family family, int N) {
    if (family == Family::Inadmissible)
        throw admissibility_error("no closed form for an inadmissible class");
    if (family == Family::Leonhardt && N % 2 != 0)
        throw invalid_dimension("the leonhardt family needs even N");
}

// w_{2N} exponent of the closed-form prefactor at doubled (dqf, dpf).
long long closed_exponent(Family family, long long dqf, long long dpf, int N) {
    return family == Family::Leonhardt ? dpf * dqf : -(N - 1) * dpf * dqf;
}

} // namespace

FourierFano fano_fourier_closed(HalfPoint pt, Family family, int N) {
    check_point(pt, N);
    check_family(family, N);
    PhasedMonomial mono(PhaseExponent(closed_exponent(family, pt.dq, pt.dp, N), N),
                        -pt.dq, pt.dp);
    const double scale = 1.0 / (2.0 * N);
    return {pt, scale * mono.matrix(), mono, scale};
}

FourierFano fano_fourier_via_group(HalfPoint pt, const PhaseChoice& pc, int N,
                                   bool enforce_admissible, long long completion_shift) {
    check_point(pt, N);
    if (pc.N != N) throw dimension_mismatch("phase choice dimension disagrees");
    if (enforce_admissible && classify_phase_choice(pc) == Family::Inadmissible)
        throw admissibility_error("phase class admits no marginal fano operator");

    const double scale = 1.0 / (2.0 * N);
    const OrbitReduction red = reduce_point(pt.dq, pt.dp, N);
    if (red.degenerate) {
        // Fixed directly by the marginality anchor at the origin.
        PhasedMonomial one = PhasedMonomial::identity(N);
        return {pt, scale * one.matrix(), one, scale};
    }

    Sp2ZElement base = complete_to_sl2(red.kappa, red.lambda);
    const long long mu = base.mu + base.kappa * completion_shift;
    const long long nu = base.nu + base.lambda * completion_shift;
    const Sp2ZElement h{red.kappa, -mu, -red.lambda, nu};

    const RepUnitary& rep = build_unitary_cached(h, pc);
    const CMat anchor = PhasedMonomial::monomial(0, red.xi, N).matrix();  // Q^xi
    CMat op = scale * (rep.U * anchor * rep.U.adjoint());
    return {pt, std::move(op), std::nullopt, scale};
}

CMat fano_cell(Family family, int N, int dq, int dp) {
    check_point({dq, dp}, N);
    check_family(family, N);
    CMat cell = CMat::Zero(N, N);
    const double scale = 1.0 / (4.0 * N * N);
    // Each Fourier cell is 1/(2N) w^e P^{-dqf} Q^{dpf}, which touches one
    // entry per column: row (q + dqf) mod N, value w_2N^{e + 2 dpf q}.
    for (long long dqf = 0; dqf < 2 * N; ++dqf) {
        for (long long dpf = 0; dpf < 2 * N; ++dpf) {
            const long long base = -static_cast<long long>(dq) * dpf +
                                   static_cast<long long>(dp) * dqf +
                                   closed_exponent(family, dqf, dpf, N);
            for (int q = 0; q < N; ++q) {
                const int row = static_cast<int>((q + dqf) % N);
                cell(row, q) += scale * PhaseExponent(base + 2 * dpf * q, N).to_complex();
            }
        }
    }
    return cell;
}

namespace {

template <typename CellFn>
FanoGrid assemble_grid(Family family, int N, int threads, CellFn&& cell_fn) {
    FanoGrid grid{N, family, std::vector<CMat>(static_cast<std::size_t>(4) * N * N)};
    auto rows = [&](int lo, int hi) {
        for (int dq = lo; dq < hi; ++dq)
            for (int dp = 0; dp < 2 * N; ++dp)
                grid.at(dq, dp) = cell_fn(dq, dp);
    };
    if (threads <= 1) {
        rows(0, 2 * N);
    } else {
        std::vector<std::thread> pool;
        const int n = std::min(threads, 2 * N);
        for (int t = 0; t < n; ++t) {
            const int lo = 2 * N * t / n, hi = 2 * N * (t + 1) / n;
            pool.emplace_back(rows, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    return grid;
}

} // namespace

FanoGrid build_fano_grid(Family family, int N, int threads) {
    check_family(family, N);
    if (N < 1) throw invalid_dimension("fano grid requires N >= 1");
    return assemble_grid(family, N, threads,
                         [&](int dq, int dp) { return fano_cell(family, N, dq, dp); });
}

FanoGrid build_fano_grid_via_group(const PhaseChoice& pc, int N, bool enforce_admissible) {
    if (N < 1) throw invalid_dimension("fano grid requires N >= 1");
    const Family cls = classify_phase_choice(pc);
    if (enforce_admissible && cls == Family::Inadmissible)
        throw admissibility_error("phase class admits no marginal fano operator");

    // All Fourier cells once, then the inverse transform per position cell.
    std::vector<CMat> fourier(static_cast<std::size_t>(4) * N * N);
    for (int dqf = 0; dqf < 2 * N; ++dqf)
        for (int dpf = 0; dpf < 2 * N; ++dpf)
            fourier[static_cast<std::size_t>(dqf) * 2 * N + dpf] =
                fano_fourier_via_group({dqf, dpf}, pc, N, enforce_admissible).op;

    auto cell = [&](int dq, int dp) {
        CMat acc = CMat::Zero(N, N);
        for (long long dqf = 0; dqf < 2 * N; ++dqf)
            for (long long dpf = 0; dpf < 2 * N; ++dpf) {
                const PhaseExponent w(-static_cast<long long>(dq) * dpf +
                                          static_cast<long long>(dp) * dqf,
                                      N);
                acc += w.to_complex() * fourier[static_cast<std::size_t>(dqf) * 2 * N + dpf];
            }
        return CMat(acc / (2.0 * N));
    };
    return assemble_grid(cls, N, 1, cell);
}

MarginalityReport check_marginality(const FanoGrid& grid, double tol) {
    const int N = grid.N;
    MarginalityReport report;
    report.tolerance = tol;
    report.position_deviation.resize(2 * N);
    report.momentum_deviation.resize(2 * N);

    for (int dq = 0; dq < 2 * N; ++dq) {
        CMat sum = CMat::Zero(N, N);
        for (int dp = 0; dp < 2 * N; ++dp) sum += grid.at(dq, dp);
        CMat expect = CMat::Zero(N, N);
        if (dq % 2 == 0) expect(dq / 2, dq / 2) = 1.0;
        report.position_deviation[dq] = max_abs_diff(sum, expect);
    }
    for (int dp = 0; dp < 2 * N; ++dp) {
        CMat sum = CMat::Zero(N, N);
        for (int dq = 0; dq < 2 * N; ++dq) sum += grid.at(dq, dp);
        CMat expect = CMat::Zero(N, N);
        if (dp % 2 == 0) {
            const CVec ket = momentum_ket(dp / 2, N);
            expect = ket * ket.adjoint();
        }
        report.momentum_deviation[dp] = max_abs_diff(sum, expect);
    }

    double worst = 0.0;
    for (double d : report.position_deviation) worst = std::max(worst, d);
    for (double d : report.momentum_deviation) worst = std::max(worst, d);
    report.max_deviation = worst;
    report.pass = worst < tol;
    return report;
}

CovarianceReport check_covariance(const FanoGrid& grid, const Sp2ZElement& h,
                                  const PhaseChoice& pc, double tol) {
    if (pc.N != grid.N) throw dimension_mismatch("phase choice dimension disagrees");
    if (classify_phase_choice(pc) != grid.family)
        throw admissibility_error("phase class does not match the grid family");
    validate_sl2(h.kappa, h.mu, h.lambda, h.nu);

    const int N = grid.N;
    const RepUnitary& rep = build_unitary_cached(h, pc);
    double worst = 0.0;
    for (int dq = 0; dq < 2 * N; ++dq) {
        for (int dp = 0; dp < 2 * N; ++dp) {
            const int tq = static_cast<int>(floor_mod(h.nu * dq - h.lambda * dp, 2 * N));
            const int tp = static_cast<int>(floor_mod(-h.mu * dq + h.kappa * dp, 2 * N));
            const CMat lhs = rep.U * grid.at(dq, dp) * rep.U.adjoint();
            worst = std::max(worst, max_abs_diff(lhs, grid.at(tq, tp)));
        }
    }
    return {worst < tol, worst, tol};
}

CMat leonhardt_reference(int dq, int dp, int N) {
    check_point({dq, dp}, N);
    if (N % 2 != 0) throw invalid_dimension("leonhardt reference needs even N");
    CMat acc = CMat::Zero(N, N);
    for (long long dpf = 0; dpf < 2 * N; ++dpf) {
        for (long long dqf = 0; dqf < 2 * N; ++dqf) {
            // w_N^{2(p_f q_f - p_f q + q_f p)} in doubled coordinates.
            const PhaseExponent w(dpf * dqf - dpf * dq + dqf * dp, N);
            acc += (PhasedMonomial(w, -dqf, dpf).matrix());
        }
    }
    return acc / (4.0 * N * N);
}

CMat odd_reduction_reference(int q, int p, int N) {
    if (N < 1 || N % 2 == 0) throw invalid_dimension("odd-N reduction needs odd N");
    if (q < 0 || q >= N || p < 0 || p >= N)
        throw std::out_of_range("integer coordinates must lie in [0, N)");
    CMat acc = CMat::Zero(N, N);
    for (long long m = 0; m < N; ++m) {
        for (long long n = 0; n < N; ++n) {
            const PhaseExponent w(-(N - 1) * n * m - 2LL * q * n + 2LL * p * m, N);
            acc += (PhasedMonomial(w, -m, n).matrix());
        }
    }
    return acc / (static_cast<double>(N) * N);
}

} // namespace qps
