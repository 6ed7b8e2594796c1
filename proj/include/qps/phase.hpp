#pragma once

#include <complex>

#include "qps/errors.hpp"

namespace qps {

using cplx = std::complex<double>;

// Default max-entry tolerance for floating matrix comparisons.
inline constexpr double default_tolerance = 1e-10;

// Floor-style modulus, result in [0, m) for m > 0.
constexpr long long floor_mod(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

// An exact power of w_{2N} = exp(i*pi/N), stored as the integer exponent
// reduced mod 2N.  Every phase occurring in the construction -- including
// half-integer powers of w_N = w_{2N}^2 -- is an integer power of w_{2N},
// so products, powers and conjugates stay exact.  Conversion to a complex
// number happens only at matrix-assembly boundaries.
class PhaseExponent {
public:
    PhaseExponent(long long exponent, int dim)
        : dim_(checked(dim)), k_(floor_mod(exponent, 2LL * dim)) {}

    int dim() const { return dim_; }
    long long exponent() const { return k_; }
    long long modulus() const { return 2LL * dim_; }

    PhaseExponent operator*(const PhaseExponent& other) const {
        if (other.dim_ != dim_)
            throw dimension_mismatch("phase exponents with different moduli");
        return {k_ + other.k_, dim_};
    }

    // (w^k)^e = w^{k e}; e may be any integer.
    PhaseExponent pow(long long e) const {
        return {k_ * floor_mod(e, modulus()), dim_};
    }

    PhaseExponent conj() const { return {-k_, dim_}; }

    // exp(i*pi*k/N).  The four cardinal directions come out bit-exact.
    cplx to_complex() const {
        if (k_ == 0) return {1.0, 0.0};
        if (2 * k_ == dim_) return {0.0, 1.0};
        if (k_ == dim_) return {-1.0, 0.0};
        if (2 * k_ == 3LL * dim_) return {0.0, -1.0};
        constexpr double pi = 3.14159265358979323846;
        return std::polar(1.0, pi * static_cast<double>(k_) / dim_);
    }

    bool operator==(const PhaseExponent&) const = default;

private:
    static int checked(int dim) {
        if (dim < 1) throw invalid_dimension("phase modulus requires N >= 1");
        return dim;
    }

    int dim_;
    long long k_;
};

// w_{2N}^k as an exact exponent; use omega_pow(2*j, N) for w_N^j.
inline PhaseExponent omega_pow(long long k, int N) { return {k, N}; }

} // namespace qps
