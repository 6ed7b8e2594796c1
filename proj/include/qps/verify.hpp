#pragma once

#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "qps/wigner.hpp"

namespace qps::verify {

struct CheckResult {
    std::string name;
    double deviation = 0.0;
    double threshold = 0.0;
    bool require_below = true;  // pass iff deviation < threshold (or > for witnesses)
    bool pass = false;

    static CheckResult below(std::string name, double deviation, double threshold) {
        return {std::move(name), deviation, threshold, true, deviation < threshold};
    }
    static CheckResult above(std::string name, double deviation, double threshold) {
        return {std::move(name), deviation, threshold, false, deviation > threshold};
    }
};

using Results = std::vector<CheckResult>;

bool all_pass(const Results& results);
void print_table(std::ostream& os, const Results& results);

// Deterministic test-data helpers shared with the acceptance suite.
double uniform01(std::mt19937_64& rng);
CMat random_complex_matrix(int N, std::mt19937_64& rng);
DensityMatrix random_density(int N, std::mt19937_64& rng);

// Exponent-level exactness of Q^N = P^N = 1 and P Q = w_N Q P, plus the
// trace orthogonality of the monomial basis.
Results algebra_exactness(const std::vector<int>& dims);
Results trace_orthogonality(const std::vector<int>& dims, double tol);
Results decompose_roundtrip(const std::vector<int>& dims, int n_matrices,
                            unsigned long long seed, double tol);

Results marginality(Family family, const std::vector<int>& dims, double tol);

// Generators plus `n_random` seeded elements with entries bounded by
// `bound`, against the full grid.
Results covariance(Family family, const std::vector<int>& dims, int n_random,
                   long long bound, unsigned long long seed, double tol);

// Projective composition residuals for `n_pairs` random pairs per phase
// class: the two admissible classes plus one inadmissible choice.
Results projective(const std::vector<int>& dims, int n_pairs,
                   unsigned long long seed, double tol);

// One phase class only; used to assemble custom class lists.
Results projective_for_class(const PhaseChoice& pc, const std::string& label,
                             int n_pairs, unsigned long long seed, double tol);

Results leonhardt_equivalence(const std::vector<int>& dims, double tol);
Results odd_reduction(const std::vector<int>& dims, double tol);

// Exhaustive (a, b) moment/ordering identity.
Results moments(Family family, const std::vector<int>& dims, double tol);

// Group-orbit vs closed-form Fourier cells at every grid point, plus
// completion independence on a sample of points.
Results orbit_agreement(Family family, const std::vector<int>& dims, double tol);
Results completion_independence(Family family, int N, int n_points, double tol);

// Realness, normalization and reconstruction round-trip on seeded random
// density matrices.
Results wigner_contract(Family family, const std::vector<int>& dims, int n_states,
                        unsigned long long seed, double real_tol, double norm_tol,
                        double roundtrip_tol);

// Negative witness: a grid built through the orbit path with an
// inadmissible phase choice must violate marginality grossly.
Results inadmissible_witness(int N, double min_deviation);

// Named-suite frontend used by the CLI.
struct SuiteOptions {
    int N = 2;
    std::vector<Family> families;  // empty: every family valid for N
    double tol = default_tolerance;
    unsigned long long seed = 12345;
    int n_random = 10;
    int n_pairs = 20;
    int n_states = 10;
};

const std::vector<std::string>& suite_names();
Results run_suite(const std::string& name, const SuiteOptions& options);

} // namespace qps::verify
