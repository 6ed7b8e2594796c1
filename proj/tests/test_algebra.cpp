#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qps/algebra.hpp"

using namespace qps;

namespace {

// Independent oracle for the shift operator: <q'|P|q> = (1/N) sum_p
// w_N^{p(1 + q' - q)}, summed directly with libm phases.
CMat shift_by_summation(int N) {
    CMat p = CMat::Zero(N, N);
    for (int qp = 0; qp < N; ++qp)
        for (int q = 0; q < N; ++q) {
            cplx acc = 0.0;
            for (int k = 0; k < N; ++k)
                acc += std::polar(1.0, 2.0 * M_PI * k * (1.0 + qp - q) / N);
            p(qp, q) = acc / static_cast<double>(N);
        }
    return p;
}

CMat random_matrix(int N, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CMat m(N, N);
    for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c) m(r, c) = cplx(u(rng), u(rng));
    return m;
}

} // namespace

TEST_CASE("clock operator entries are forced") {
    CHECK(max_abs_diff(clock_operator(2), (CMat(2, 2) << 1, 0, 0, -1).finished()) == 0.0);

    const cplx w3 = std::polar(1.0, 2.0 * M_PI / 3.0);
    CMat q3 = CMat::Zero(3, 3);
    q3(0, 0) = 1.0;
    q3(1, 1) = w3;
    q3(2, 2) = w3 * w3;
    CHECK(max_abs_diff(clock_operator(3), q3) < 1e-15);
}

TEST_CASE("shift operator matches the direct-summation oracle") {
    CHECK(max_abs_diff(shift_operator(2), (CMat(2, 2) << 0, 1, 1, 0).finished()) == 0.0);
    for (int N : {2, 3, 5, 7})
        CHECK(max_abs_diff(shift_operator(N), shift_by_summation(N)) < 1e-13);
}

TEST_CASE("dimension must be positive") {
    CHECK_THROWS_AS(clock_operator(0), invalid_dimension);
    CHECK_THROWS_AS(build_clock_shift(-1), invalid_dimension);
}

TEST_CASE("N-th powers collapse exactly at the exponent level") {
    for (int N = 1; N <= 12; ++N) {
        const auto one = PhasedMonomial::identity(N);
        CHECK(PhasedMonomial::clock(N).pow(N) == one);
        CHECK(PhasedMonomial::shift(N).pow(N) == one);
    }
}

TEST_CASE("commutation P Q = w_N Q P, exactly and numerically") {
    for (int N = 1; N <= 12; ++N) {
        const auto q = PhasedMonomial::clock(N);
        const auto p = PhasedMonomial::shift(N);
        const PhasedMonomial twisted = PhasedMonomial(PhaseExponent(2, N), 0, 0) * (q * p);
        CHECK(p * q == twisted);

        const auto [Q, P] = build_clock_shift(N);
        const cplx w = PhaseExponent(2, N).to_complex();
        CHECK(max_abs_diff(P * Q, w * (Q * P)) < 1e-15);
    }
}

TEST_CASE("monomial matrices agree with explicit products") {
    CHECK(max_abs_diff(monomial(0, 0, 4), CMat::Identity(4, 4)) == 0.0);

    // P Q at N=2, frozen from the direct product.
    CMat pq(2, 2);
    pq << 0, -1, 1, 0;
    CHECK(max_abs_diff(monomial(1, 1, 2), pq) == 0.0);
    CHECK(max_abs_diff(monomial(1, 1, 2), shift_operator(2) * clock_operator(2)) == 0.0);

    std::mt19937_64 rng(5);
    for (int N : {2, 3, 4, 6}) {
        const auto [Q, P] = build_clock_shift(N);
        for (int i = 0; i < 20; ++i) {
            const long long m = rng() % (2 * N), n = rng() % (2 * N);
            CMat direct = CMat::Identity(N, N);
            for (long long k = 0; k < m; ++k) direct = P * direct;
            for (long long k = 0; k < n; ++k) direct = direct * Q;
            CHECK(max_abs_diff(monomial(m, n, N), direct) < 1e-13);
        }
    }
}

TEST_CASE("reorder rule Q^a P^b = w^{-ab} P^b Q^a by explicit multiplication") {
    std::mt19937_64 rng(17);
    for (int N : {2, 3, 5}) {
        for (int i = 0; i < 25; ++i) {
            const long long a = rng() % N, b = rng() % N;
            const CMat lhs = monomial(0, a, N) * monomial(b, 0, N);
            const CMat rhs = PhaseExponent(-2 * a * b, N).to_complex() *
                             (monomial(b, 0, N) * monomial(0, a, N));
            CHECK(max_abs_diff(lhs, rhs) < 1e-14);

            // the exact layer agrees with the matrix layer
            const auto mono = PhasedMonomial::monomial(0, a, N) * PhasedMonomial::monomial(b, 0, N);
            CHECK(max_abs_diff(mono.matrix(), lhs) < 1e-14);
        }
    }
}

TEST_CASE("trace orthogonality") {
    const CMat b10 = monomial(1, 0, 5);
    CHECK(std::abs((b10 * b10.adjoint()).trace() - cplx(5.0, 0.0)) < 1e-13);

    for (int N : {2, 3, 4}) {
        for (int k = 0; k < N; ++k)
            for (int l = 0; l < N; ++l)
                for (int m = 0; m < N; ++m)
                    for (int n = 0; n < N; ++n) {
                        const cplx t =
                            (monomial(k, l, N) * monomial(m, n, N).adjoint()).trace();
                        const cplx want = (k == m && l == n) ? cplx(N, 0) : cplx(0, 0);
                        CHECK(std::abs(t - want) < 1e-13);
                    }
    }
}

TEST_CASE("decompose: identity has a single coefficient") {
    const auto c = decompose(CMat::Identity(4, 4));
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
            CHECK(std::abs(c.at(m, n) - (m == 0 && n == 0 ? cplx(1, 0) : cplx(0, 0))) < 1e-15);
}

TEST_CASE("decompose |0><1| at N=2") {
    CMat x = CMat::Zero(2, 2);
    x(0, 1) = 1.0;
    const auto c = decompose(x);
    // frozen from the trace inner-product oracle c_mn = Tr[X (P^m Q^n)^+]/N
    CHECK(std::abs(c.at(1, 0) - cplx(0.5, 0.0)) < 1e-15);
    CHECK(std::abs(c.at(1, 1) - cplx(-0.5, 0.0)) < 1e-15);
    CHECK(std::abs(c.at(0, 0)) < 1e-15);
    CHECK(std::abs(c.at(0, 1)) < 1e-15);

    // oracle recomputation, independent of decompose()'s sparse walk
    for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n) {
            const cplx direct = (x * monomial(m, n, 2).adjoint()).trace() / 2.0;
            CHECK(std::abs(c.at(m, n) - direct) < 1e-15);
        }
}

TEST_CASE("projector expansion keeps only clock powers") {
    // |q><q| = (1/N) sum_n (w_N^{-q} Q)^n, so c_{0n} = w_N^{-qn}/N.
    const int N = 4;
    for (int q = 0; q < N; ++q) {
        CMat proj = CMat::Zero(N, N);
        proj(q, q) = 1.0;
        const auto c = decompose(proj);
        for (int m = 0; m < N; ++m)
            for (int n = 0; n < N; ++n) {
                const cplx want = m == 0
                                      ? PhaseExponent(-2LL * q * n, N).to_complex() /
                                            static_cast<double>(N)
                                      : cplx(0, 0);
                CHECK(std::abs(c.at(m, n) - want) < 1e-14);
            }
    }
}

TEST_CASE("decompose round-trips random operators") {
    std::mt19937_64 rng(23);
    for (int N : {2, 3, 4, 5, 6}) {
        for (int i = 0; i < 50; ++i) {
            const CMat x = random_matrix(N, rng);
            CHECK(max_abs_diff(reconstruct(decompose(x)), x) < 1e-12);
        }
    }
}

TEST_CASE("shape errors") {
    CHECK_THROWS_AS(decompose(CMat::Zero(2, 3)), dimension_mismatch);
    MonomialCoefficients bad{3, CMat::Zero(2, 2)};
    CHECK_THROWS_AS(reconstruct(bad), dimension_mismatch);
    CHECK_THROWS_AS(max_abs_diff(CMat::Zero(2, 2), CMat::Zero(3, 3)), dimension_mismatch);
}

TEST_CASE("monomial adjoint is the inverse") {
    std::mt19937_64 rng(31);
    for (int N : {2, 5, 8}) {
        for (int i = 0; i < 10; ++i) {
            const PhasedMonomial m(PhaseExponent(rng() % (2 * N), N), rng() % N, rng() % N);
            CHECK(m * m.adjoint() == PhasedMonomial::identity(N));
            CHECK(max_abs_diff(m.matrix().adjoint(), m.adjoint().matrix()) < 1e-15);
        }
    }
}
