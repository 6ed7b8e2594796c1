#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qps/fano.hpp"

using namespace qps;

namespace {

// Forward transform of a position grid, evaluated with libm phases only;
// recovers the Fourier cells if the grid was assembled correctly.
CMat forward_fourier(const FanoGrid& grid, int dqf, int dpf) {
    const int N = grid.N;
    CMat acc = CMat::Zero(N, N);
    for (int dq = 0; dq < 2 * N; ++dq)
        for (int dp = 0; dp < 2 * N; ++dp)
            acc += std::polar(1.0, M_PI * (dq * dpf - dp * dqf) / static_cast<double>(N)) *
                   grid.at(dq, dp);
    return acc / (2.0 * N);
}

} // namespace

TEST_CASE("fourier anchors: rows and columns through the origin") {
    for (int N : {2, 3, 4}) {
        for (Family f : {Family::New, Family::Leonhardt}) {
            if (f == Family::Leonhardt && N % 2 != 0) continue;
            const double s = 1.0 / (2.0 * N);
            for (int d = 0; d < 2 * N; ++d) {
                CHECK(max_abs_diff(fano_fourier_closed({0, d}, f, N).op,
                                   s * monomial(0, d, N)) == 0.0);
                CHECK(max_abs_diff(fano_fourier_closed({d, 0}, f, N).op,
                                   s * monomial(-d, 0, N)) == 0.0);
            }
        }
    }
}

TEST_CASE("the two families differ by a frozen phase at N=2, point (1/2, 1/2)") {
    const CMat base = 0.25 * monomial(-1, 1, 2);
    const FourierFano neu = fano_fourier_closed({1, 1}, Family::New, 2);
    const FourierFano leo = fano_fourier_closed({1, 1}, Family::Leonhardt, 2);
    CHECK(max_abs_diff(neu.op, cplx(0.0, -1.0) * base) < 1e-15);
    CHECK(max_abs_diff(leo.op, cplx(0.0, 1.0) * base) < 1e-15);
    REQUIRE(neu.mono.has_value());
    CHECK(neu.mono->phase().exponent() == 3);  // w_4^3 = -i
    CHECK(leo.mono->phase().exponent() == 1);  // w_4^1 = +i

    // cross-check against the group-orbit route
    CHECK(max_abs_diff(neu.op, fano_fourier_via_group({1, 1}, {0, 0, 2}, 2).op) < 1e-12);
    CHECK(max_abs_diff(leo.op, fano_fourier_via_group({1, 1}, {1, 1, 2}, 2).op) < 1e-12);
}

TEST_CASE("fourier cells decompose to a single monomial of weight 1/2N") {
    for (int N : {2, 3}) {
        for (Family f : {Family::New, Family::Leonhardt}) {
            if (f == Family::Leonhardt && N % 2 != 0) continue;
            for (int dq = 0; dq < 2 * N; ++dq)
                for (int dp = 0; dp < 2 * N; ++dp) {
                    const auto c = decompose(fano_fourier_closed({dq, dp}, f, N).op);
                    int nonzero = 0;
                    for (int m = 0; m < N; ++m)
                        for (int n = 0; n < N; ++n)
                            if (std::abs(c.at(m, n)) > 1e-13) {
                                ++nonzero;
                                CHECK(std::abs(c.at(m, n)) ==
                                      doctest::Approx(1.0 / (2 * N)).epsilon(1e-12));
                            }
                    CHECK(nonzero == 1);
                }
        }
    }
}

TEST_CASE("degenerate point is the scaled identity") {
    for (int N : {2, 3, 5}) {
        const FourierFano f = fano_fourier_via_group({0, 0}, {0, 0, N}, N);
        CHECK(max_abs_diff(f.op, CMat::Identity(N, N) / (2.0 * N)) == 0.0);
    }
}

TEST_CASE("orbit route reproduces the closed form everywhere") {
    for (int N : {2, 3}) {
        for (Family f : {Family::New, Family::Leonhardt}) {
            if (f == Family::Leonhardt && N % 2 != 0) continue;
            const PhaseChoice pc = PhaseChoice::for_family(f, N);
            for (int dq = 0; dq < 2 * N; ++dq)
                for (int dp = 0; dp < 2 * N; ++dp)
                    CHECK(max_abs_diff(fano_fourier_closed({dq, dp}, f, N).op,
                                       fano_fourier_via_group({dq, dp}, pc, N).op) < 1e-10);
        }
    }
    // spot check at a mixed point: N=2, (1/2, 3/2), new family
    CHECK(max_abs_diff(fano_fourier_closed({1, 3}, Family::New, 2).op,
                       fano_fourier_via_group({1, 3}, {0, 0, 2}, 2).op) < 1e-10);
}

TEST_CASE("orbit output does not depend on the bezout completion") {
    for (long long shift : {1LL, 5LL, -3LL}) {
        const CMat a = fano_fourier_via_group({1, 1}, {0, 0, 4}, 4, true, 0).op;
        const CMat b = fano_fourier_via_group({1, 1}, {0, 0, 4}, 4, true, shift).op;
        CHECK(max_abs_diff(a, b) < 1e-12);
    }
}

TEST_CASE("inadmissible phase choices are rejected unless forced") {
    CHECK_THROWS_AS(fano_fourier_via_group({1, 1}, {1, 0, 4}, 4), admissibility_error);
    CHECK_NOTHROW(fano_fourier_via_group({1, 1}, {1, 0, 4}, 4, false));
    CHECK_THROWS_AS(build_fano_grid_via_group({1, 0, 4}, 4), admissibility_error);
}

TEST_CASE("grid cells sum to the identity") {
    for (int N : {2, 3, 4, 6}) {
        for (Family f : {Family::New, Family::Leonhardt}) {
            if (f == Family::Leonhardt && N % 2 != 0) continue;
            const FanoGrid grid = build_fano_grid(f, N);
            CMat sum = CMat::Zero(N, N);
            for (const CMat& cell : grid.cells) sum += cell;
            CHECK(max_abs_diff(sum, CMat::Identity(N, N)) < 1e-12);
        }
    }
}

TEST_CASE("traces: 1/N on the physical sublattice, zero elsewhere") {
    const FanoGrid grid = build_fano_grid(Family::New, 2);
    for (int dq = 0; dq < 4; ++dq)
        for (int dp = 0; dp < 4; ++dp) {
            const cplx t = grid.at(dq, dp).trace();
            const double want = (dq % 2 == 0 && dp % 2 == 0) ? 0.5 : 0.0;
            CHECK(std::abs(t - cplx(want, 0.0)) < 1e-13);
        }
}

TEST_CASE("odd N: the new family lives on the integer sublattice") {
    const FanoGrid grid = build_fano_grid(Family::New, 3);
    for (int dq = 0; dq < 6; ++dq)
        for (int dp = 0; dp < 6; ++dp)
            if (dq % 2 != 0 || dp % 2 != 0) CHECK(max_abs(grid.at(dq, dp)) < 1e-13);
}

TEST_CASE("every grid cell is hermitian") {
    for (int N : {2, 4, 6}) {
        for (Family f : {Family::New, Family::Leonhardt}) {
            const FanoGrid grid = build_fano_grid(f, N);
            for (const CMat& cell : grid.cells)
                CHECK(max_abs_diff(cell, cell.adjoint()) < 1e-12);
        }
    }
    // source of hermiticity: Delta_F(q,p)^+ = Delta_F(-q,-p)
    for (Family f : {Family::New, Family::Leonhardt}) {
        const int N = 4;
        for (int dq = 0; dq < 2 * N; ++dq)
            for (int dp = 0; dp < 2 * N; ++dp) {
                const CMat lhs = fano_fourier_closed({dq, dp}, f, N).op.adjoint();
                const CMat rhs = fano_fourier_closed({static_cast<int>(floor_mod(-dq, 2 * N)),
                                                      static_cast<int>(floor_mod(-dp, 2 * N))},
                                                     f, N)
                                     .op;
                CHECK(max_abs_diff(lhs, rhs) < 1e-14);
            }
    }
}

TEST_CASE("marginality holds on closed-form grids") {
    for (int N : {2, 4, 6}) {
        const MarginalityReport r = check_marginality(build_fano_grid(Family::New, N), 1e-12);
        CHECK(r.pass);
        CHECK(r.max_deviation < 1e-12);
    }
    const MarginalityReport leo = check_marginality(build_fano_grid(Family::Leonhardt, 2), 1e-12);
    CHECK(leo.pass);
    CHECK(leo.max_deviation < 1e-12);
    CHECK(leo.position_deviation.size() == 4);
    CHECK(leo.momentum_deviation.size() == 4);
}

TEST_CASE("marginality detects a perturbed cell") {
    FanoGrid grid = build_fano_grid(Family::New, 2);
    grid.at(0, 1)(0, 0) += 1e-3;
    const MarginalityReport r = check_marginality(grid);
    CHECK(!r.pass);
    CHECK(r.max_deviation == doctest::Approx(1e-3).epsilon(1e-6));
}

TEST_CASE("covariance under generators and random elements") {
    const Sp2ZElement lower{1, 0, 1, 1};
    for (Family f : {Family::New, Family::Leonhardt}) {
        const FanoGrid grid = build_fano_grid(f, 2);
        const PhaseChoice pc = PhaseChoice::for_family(f, 2);
        CHECK(check_covariance(grid, Sp2ZElement::identity(), pc).max_deviation < 1e-14);
        const CovarianceReport r = check_covariance(grid, lower, pc, 1e-9);
        CHECK(r.pass);
        CHECK(r.max_deviation < 1e-9);
    }
    const FanoGrid grid = build_fano_grid(Family::New, 4);
    const PhaseChoice pc{0, 0, 4};
    for (unsigned long long seed = 0; seed < 10; ++seed)
        CHECK(check_covariance(grid, random_sl2(7, 4000 + seed), pc, 1e-9).pass);
}

TEST_CASE("covariance rejects a mismatched phase class") {
    const FanoGrid grid = build_fano_grid(Family::New, 4);
    CHECK_THROWS_AS(check_covariance(grid, Sp2ZElement::identity(), {2, 2, 4}),
                    admissibility_error);
}

TEST_CASE("leonhardt double-sum reference") {
    for (int N : {2, 4}) {
        const FanoGrid grid = build_fano_grid(Family::Leonhardt, N);
        for (int dq = 0; dq < 2 * N; ++dq)
            for (int dp = 0; dp < 2 * N; ++dp)
                CHECK(max_abs_diff(grid.at(dq, dp), leonhardt_reference(dq, dp, N)) < 1e-13);
    }

    // marginal dichotomy of the reference itself at N=2
    const int N = 2;
    for (int dq = 0; dq < 2 * N; ++dq) {
        CMat sum = CMat::Zero(N, N);
        for (int dp = 0; dp < 2 * N; ++dp) sum += leonhardt_reference(dq, dp, N);
        CMat want = CMat::Zero(N, N);
        if (dq % 2 == 0) want(dq / 2, dq / 2) = 1.0;
        CHECK(max_abs_diff(sum, want) < 1e-13);
    }
    for (int dq = 0; dq < 2 * N; ++dq)
        for (int dp = 0; dp < 2 * N; ++dp) {
            const CMat cell = leonhardt_reference(dq, dp, N);
            CHECK(max_abs_diff(cell, cell.adjoint()) < 1e-14);
        }

    CHECK_THROWS_AS(leonhardt_reference(0, 0, 3), invalid_dimension);
}

TEST_CASE("odd-N reduction reference") {
    const int N = 3;
    const FanoGrid grid = build_fano_grid(Family::New, N);
    for (int q = 0; q < N; ++q)
        for (int p = 0; p < N; ++p)
            CHECK(max_abs_diff(grid.at(2 * q, 2 * p), odd_reduction_reference(q, p, N)) <
                  1e-13);

    CMat sum = CMat::Zero(N, N);
    for (int q = 0; q < N; ++q)
        for (int p = 0; p < N; ++p) sum += odd_reduction_reference(q, p, N);
    CHECK(max_abs_diff(sum, CMat::Identity(N, N)) < 1e-13);

    // direct double-sum oracle at the origin, libm phases only
    CMat oracle = CMat::Zero(N, N);
    for (int m = 0; m < N; ++m)
        for (int n = 0; n < N; ++n)
            oracle += std::polar(1.0, -M_PI * (N - 1.0) * n * m / N) * monomial(-m, n, N);
    oracle /= static_cast<double>(N) * N;
    CHECK(max_abs_diff(odd_reduction_reference(0, 0, N), oracle) < 1e-13);

    CHECK_THROWS_AS(odd_reduction_reference(0, 0, 4), invalid_dimension);
    CHECK_THROWS_AS(odd_reduction_reference(3, 0, 3), std::out_of_range);
}

TEST_CASE("forward transform of the grid recovers the closed forms") {
    for (int N : {2, 3, 4}) {
        for (Family f : {Family::New, Family::Leonhardt}) {
            if (f == Family::Leonhardt && N % 2 != 0) continue;
            const FanoGrid grid = build_fano_grid(f, N);
            for (int dqf = 0; dqf < 2 * N; ++dqf)
                for (int dpf = 0; dpf < 2 * N; ++dpf)
                    CHECK(max_abs_diff(forward_fourier(grid, dqf, dpf),
                                       fano_fourier_closed({dqf, dpf}, f, N).op) < 1e-10);
        }
    }
}

TEST_CASE("threaded assembly is identical to sequential") {
    for (Family f : {Family::New, Family::Leonhardt}) {
        const FanoGrid seq = build_fano_grid(f, 4, 1);
        const FanoGrid par = build_fano_grid(f, 4, 3);
        for (std::size_t i = 0; i < seq.cells.size(); ++i)
            CHECK(max_abs_diff(seq.cells[i], par.cells[i]) == 0.0);
    }
}

TEST_CASE("orbit-built grids match closed-form grids for admissible classes") {
    for (int N : {2, 3}) {
        const FanoGrid closed = build_fano_grid(Family::New, N);
        const FanoGrid orbit = build_fano_grid_via_group({0, 0, N}, N);
        CHECK(orbit.family == Family::New);
        for (std::size_t i = 0; i < closed.cells.size(); ++i)
            CHECK(max_abs_diff(closed.cells[i], orbit.cells[i]) < 1e-10);
    }
}

TEST_CASE("inadmissible orbit grid breaks marginality grossly") {
    const FanoGrid grid = build_fano_grid_via_group({1, 0, 4}, 4, false);
    CHECK(grid.family == Family::Inadmissible);
    const MarginalityReport r = check_marginality(grid);
    CHECK(!r.pass);
    CHECK(r.max_deviation > 1e-2);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(build_fano_grid(Family::Leonhardt, 3), invalid_dimension);
    CHECK_THROWS_AS(fano_cell(Family::New, 2, 4, 0), std::out_of_range);
    CHECK_THROWS_AS(fano_fourier_closed({0, -1}, Family::New, 2), std::out_of_range);
    CHECK_THROWS_AS(fano_fourier_closed({0, 0}, Family::Inadmissible, 2),
                    admissibility_error);
}
