#include "qps/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace qps::verify {

bool all_pass(const Results& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CheckResult& r) { return r.pass; });
}

void print_table(std::ostream& os, const Results& results) {
    char line[160];
    for (const auto& r : results) {
        std::snprintf(line, sizeof line, "%-44s %12.5e %s %-9.3e %s\n", r.name.c_str(),
                      r.deviation, r.require_below ? "<" : ">", r.threshold,
                      r.pass ? "pass" : "FAIL");
        os << line;
    }
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

namespace {

double gauss(std::mt19937_64& rng) {
    const double u = 1.0 - uniform01(rng);
    const double v = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586 * v);
}

std::string tag(const char* what, Family family, int N) {
    return std::string(what) + " " + family_name(family) + " N=" + std::to_string(N);
}

std::vector<Family> families_for(int N) {
    if (N % 2 == 0) return {Family::New, Family::Leonhardt};
    return {Family::New};
}

void append(Results& into, Results more) {
    into.insert(into.end(), std::make_move_iterator(more.begin()),
                std::make_move_iterator(more.end()));
}

} // namespace

CMat random_complex_matrix(int N, std::mt19937_64& rng) {
    CMat m(N, N);
    for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c) m(r, c) = cplx(gauss(rng), gauss(rng));
    return m;
}

DensityMatrix random_density(int N, std::mt19937_64& rng) {
    const CMat a = random_complex_matrix(N, rng);
    CMat rho = a * a.adjoint();
    rho /= rho.trace().real();
    return make_density(rho);
}

Results algebra_exactness(const std::vector<int>& dims) {
    Results out;
    for (int N : dims) {
        const auto q = PhasedMonomial::clock(N);
        const auto p = PhasedMonomial::shift(N);
        const auto one = PhasedMonomial::identity(N);
        bool ok = q.pow(N) == one && p.pow(N) == one;
        // P Q = w_N Q P at the exponent level.
        const PhasedMonomial lhs = p * q;
        const PhasedMonomial rhs = PhasedMonomial(PhaseExponent(2, N), 0, 0) * (q * p);
        ok = ok && lhs == rhs;
        out.push_back(CheckResult::below("clock-shift exactness N=" + std::to_string(N),
                                         ok ? 0.0 : 1.0, 0.5));
    }
    return out;
}

Results trace_orthogonality(const std::vector<int>& dims, double tol) {
    Results out;
    for (int N : dims) {
        double worst = 0.0;
        std::vector<CMat> basis(static_cast<std::size_t>(N) * N);
        for (int m = 0; m < N; ++m)
            for (int n = 0; n < N; ++n) basis[m * N + n] = monomial(m, n, N);
        for (int k = 0; k < N; ++k)
            for (int l = 0; l < N; ++l)
                for (int m = 0; m < N; ++m)
                    for (int n = 0; n < N; ++n) {
                        const cplx t = (basis[k * N + l] * basis[m * N + n].adjoint()).trace();
                        const cplx want = (k == m && l == n) ? cplx(N, 0.0) : cplx(0.0, 0.0);
                        worst = std::max(worst, std::abs(t - want));
                    }
        out.push_back(
            CheckResult::below("trace orthogonality N=" + std::to_string(N), worst, tol));
    }
    return out;
}

Results decompose_roundtrip(const std::vector<int>& dims, int n_matrices,
                            unsigned long long seed, double tol) {
    Results out;
    for (int N : dims) {
        std::mt19937_64 rng(seed + static_cast<unsigned long long>(N));
        double worst = 0.0;
        for (int i = 0; i < n_matrices; ++i) {
            const CMat x = random_complex_matrix(N, rng);
            worst = std::max(worst, max_abs_diff(reconstruct(decompose(x)), x));
        }
        out.push_back(
            CheckResult::below("decompose round-trip N=" + std::to_string(N), worst, tol));
    }
    return out;
}

Results marginality(Family family, const std::vector<int>& dims, double tol) {
    Results out;
    for (int N : dims) {
        const FanoGrid grid = build_fano_grid(family, N);
        const MarginalityReport report = check_marginality(grid, tol);
        out.push_back(
            CheckResult::below(tag("marginality", family, N), report.max_deviation, tol));
    }
    return out;
}

Results covariance(Family family, const std::vector<int>& dims, int n_random,
                   long long bound, unsigned long long seed, double tol) {
    static const Sp2ZElement generators[] = {
        {1, 0, 1, 1},    // lower shear
        {1, 1, 0, 1},    // upper shear
        {0, -1, 1, 0},   // quarter rotation
        {-1, 0, 0, -1},  // negation
    };
    Results out;
    for (int N : dims) {
        const FanoGrid grid = build_fano_grid(family, N);
        const PhaseChoice pc = PhaseChoice::for_family(family, N);
        double worst = 0.0;
        for (const auto& h : generators)
            worst = std::max(worst, check_covariance(grid, h, pc, tol).max_deviation);
        for (int i = 0; i < n_random; ++i) {
            const Sp2ZElement h = random_sl2(bound, seed + 7919ULL * i + N);
            worst = std::max(worst, check_covariance(grid, h, pc, tol).max_deviation);
        }
        out.push_back(CheckResult::below(tag("covariance", family, N), worst, tol));
    }
    return out;
}

namespace {

double worst_composition_residual(const PhaseChoice& pc, int n_pairs,
                                  unsigned long long seed) {
    double worst = 0.0;
    for (int i = 0; i < n_pairs; ++i) {
        const Sp2ZElement a = random_sl2(7, seed + 2ULL * i * 104729ULL + pc.N);
        const Sp2ZElement b = random_sl2(7, seed + (2ULL * i + 1) * 104729ULL + pc.N);
        const CompositionCheck check =
            composition_check(build_unitary_cached(a, pc), build_unitary_cached(b, pc));
        worst = std::max(worst, check.residual);
    }
    return worst;
}

} // namespace

Results projective_for_class(const PhaseChoice& pc, const std::string& label, int n_pairs,
                             unsigned long long seed, double tol) {
    return {CheckResult::below(label, worst_composition_residual(pc, n_pairs, seed), tol)};
}

// The composition law holds exactly on the phase classes with
// n+ + n- = 0 (mod N).  That set contains both admissible families and,
// for N >= 3, marginality-inadmissible classes such as (1, N-1); the
// remaining classes violate the law outright, which the last check
// witnesses.
Results projective(const std::vector<int>& dims, int n_pairs, unsigned long long seed,
                   double tol) {
    Results out;
    for (int N : dims) {
        std::vector<std::pair<std::string, PhaseChoice>> classes;
        classes.emplace_back("new", PhaseChoice{0, 0, N});
        if (N % 2 == 0) classes.emplace_back("leonhardt", PhaseChoice{N / 2, N / 2, N});
        if (N >= 3) classes.emplace_back("inadmissible", PhaseChoice{1, N - 1, N});
        for (const auto& [label, pc] : classes)
            append(out, projective_for_class(pc, "projective " + label + " N=" + std::to_string(N),
                                             n_pairs, seed, tol));
        out.push_back(CheckResult::above(
            "projective violation witness n+=1 n-=0 N=" + std::to_string(N),
            worst_composition_residual({1, 0, N}, n_pairs, seed), 1e-2));
    }
    return out;
}

Results leonhardt_equivalence(const std::vector<int>& dims, double tol) {
    Results out;
    for (int N : dims) {
        const FanoGrid grid = build_fano_grid(Family::Leonhardt, N);
        double worst = 0.0;
        for (int dq = 0; dq < 2 * N; ++dq)
            for (int dp = 0; dp < 2 * N; ++dp)
                worst = std::max(worst,
                                 max_abs_diff(grid.at(dq, dp), leonhardt_reference(dq, dp, N)));
        out.push_back(
            CheckResult::below("leonhardt equivalence N=" + std::to_string(N), worst, tol));
    }
    return out;
}

Results odd_reduction(const std::vector<int>& dims, double tol) {
    Results out;
    for (int N : dims) {
        const FanoGrid grid = build_fano_grid(Family::New, N);
        double worst_half = 0.0, worst_int = 0.0;
        for (int dq = 0; dq < 2 * N; ++dq)
            for (int dp = 0; dp < 2 * N; ++dp) {
                if (dq % 2 == 0 && dp % 2 == 0) {
                    const CMat ref = odd_reduction_reference(dq / 2, dp / 2, N);
                    worst_int = std::max(worst_int, max_abs_diff(grid.at(dq, dp), ref));
                } else {
                    worst_half = std::max(worst_half, max_abs(grid.at(dq, dp)));
                }
            }
        out.push_back(CheckResult::below(
            "odd-N half-integer cells vanish N=" + std::to_string(N), worst_half, tol));
        out.push_back(CheckResult::below(
            "odd-N integer-cell reduction N=" + std::to_string(N), worst_int, tol));
    }
    return out;
}

Results moments(Family family, const std::vector<int>& dims, double tol) {
    Results out;
    for (int N : dims) {
        const FanoGrid grid = build_fano_grid(family, N);
        double worst = 0.0;
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b)
                worst = std::max(worst, moment_identity(grid, a, b).deviation);
        out.push_back(CheckResult::below(tag("moment identity", family, N), worst, tol));
    }
    return out;
}

Results orbit_agreement(Family family, const std::vector<int>& dims, double tol) {
    Results out;
    for (int N : dims) {
        const PhaseChoice pc = PhaseChoice::for_family(family, N);
        double worst = 0.0;
        for (int dq = 0; dq < 2 * N; ++dq)
            for (int dp = 0; dp < 2 * N; ++dp) {
                const CMat closed = fano_fourier_closed({dq, dp}, family, N).op;
                const CMat orbit = fano_fourier_via_group({dq, dp}, pc, N).op;
                worst = std::max(worst, max_abs_diff(closed, orbit));
            }
        out.push_back(CheckResult::below(tag("orbit vs closed form", family, N), worst, tol));
    }
    return out;
}

Results completion_independence(Family family, int N, int n_points, double tol) {
    const PhaseChoice pc = PhaseChoice::for_family(family, N);
    double worst = 0.0;
    int taken = 0;
    for (int dq = 0; dq < 2 * N && taken < n_points; ++dq)
        for (int dp = 0; dp < 2 * N && taken < n_points; ++dp) {
            if (dq == 0 && dp == 0) continue;
            const CMat a = fano_fourier_via_group({dq, dp}, pc, N, true, 0).op;
            const CMat b = fano_fourier_via_group({dq, dp}, pc, N, true, 1).op;
            const CMat c = fano_fourier_via_group({dq, dp}, pc, N, true, -2).op;
            worst = std::max({worst, max_abs_diff(a, b), max_abs_diff(a, c)});
            ++taken;
        }
    return {CheckResult::below(tag("completion independence", family, N), worst, tol)};
}

Results wigner_contract(Family family, const std::vector<int>& dims, int n_states,
                        unsigned long long seed, double real_tol, double norm_tol,
                        double roundtrip_tol) {
    Results out;
    for (int N : dims) {
        const FanoGrid grid = build_fano_grid(family, N);
        std::mt19937_64 rng(seed + static_cast<unsigned long long>(N));
        double worst_imag = 0.0, worst_norm = 0.0, worst_round = 0.0;
        for (int i = 0; i < n_states; ++i) {
            const DensityMatrix rho = random_density(N, rng);
            const WignerGrid w = wigner_transform(rho, grid);
            worst_imag = std::max(worst_imag, w.max_imag_residue);
            worst_norm = std::max(worst_norm, std::abs(w.values.sum() - 1.0));
            const DensityMatrix back = reconstruct_density(w, grid);
            worst_round = std::max(worst_round, max_abs_diff(back.rho, rho.rho));
        }
        out.push_back(CheckResult::below(tag("wigner realness", family, N), worst_imag, real_tol));
        out.push_back(
            CheckResult::below(tag("wigner normalization", family, N), worst_norm, norm_tol));
        out.push_back(
            CheckResult::below(tag("wigner round-trip", family, N), worst_round, roundtrip_tol));
    }
    return out;
}

Results inadmissible_witness(int N, double min_deviation) {
    const PhaseChoice pc{1, 0, N};
    const FanoGrid grid = build_fano_grid_via_group(pc, N, false);
    const MarginalityReport report = check_marginality(grid);
    return {CheckResult::above("inadmissible marginality violation N=" + std::to_string(N),
                               report.max_deviation, min_deviation)};
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "algebra",   "marginality", "covariance", "projective",   "leonhardt",
        "odd-reduction", "moments", "orbit",      "inadmissible", "wigner",
        "all"};
    return names;
}

Results run_suite(const std::string& name, const SuiteOptions& opt) {
    const int N = opt.N;
    const std::vector<int> dims{N};
    const std::vector<Family> fams = opt.families.empty() ? families_for(N) : opt.families;
    Results out;

    const bool all = name == "all";
    bool known = all;
    auto wants = [&](const char* suite) { return all || name == suite; };

    if (wants("algebra")) {
        known = true;
        append(out, algebra_exactness(dims));
        append(out, trace_orthogonality(dims, opt.tol));
        append(out, decompose_roundtrip(dims, 10, opt.seed, opt.tol));
    }
    if (wants("marginality")) {
        known = true;
        for (Family f : fams) append(out, marginality(f, dims, opt.tol));
    }
    if (wants("covariance")) {
        known = true;
        for (Family f : fams)
            append(out, covariance(f, dims, opt.n_random, 7, opt.seed, opt.tol));
    }
    if (wants("projective")) {
        known = true;
        append(out, projective(dims, opt.n_pairs, opt.seed, std::max(opt.tol, 1e-9)));
    }
    if (wants("leonhardt")) {
        known = true;
        if (N % 2 == 0)
            append(out, leonhardt_equivalence(dims, opt.tol));
        else if (!all)
            throw invalid_dimension("the leonhardt suite needs even N");
    }
    if (wants("odd-reduction")) {
        known = true;
        if (N % 2 == 1)
            append(out, odd_reduction(dims, opt.tol));
        else if (!all)
            throw invalid_dimension("the odd-reduction suite needs odd N");
    }
    if (wants("moments")) {
        known = true;
        for (Family f : fams) append(out, moments(f, dims, opt.tol));
    }
    if (wants("orbit")) {
        known = true;
        for (Family f : fams) {
            append(out, orbit_agreement(f, dims, opt.tol));
            append(out, completion_independence(f, N, 10, opt.tol));
        }
    }
    if (wants("inadmissible")) {
        known = true;
        append(out, inadmissible_witness(N, 1e-2));
    }
    if (wants("wigner")) {
        known = true;
        for (Family f : fams)
            append(out, wigner_contract(f, dims, opt.n_states, opt.seed, opt.tol,
                                        std::max(opt.tol, 1e-9), opt.tol));
    }
    if (!known) throw std::invalid_argument("unknown suite: " + name);
    return out;
}

} // namespace qps::verify
