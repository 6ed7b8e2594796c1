// Command-line frontend: fano grids, wigner transforms, representation
// unitaries, moment identities and the verification suites.
//
// Exit codes: 0 success, 1 identity violation, 2 usage error, 3 I/O error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qps/io.hpp"
#include "qps/verify.hpp"

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double resolve_tolerance(const std::optional<double>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("QPS_TOLERANCE")) {
        try {
            return std::stod(env);
        } catch (const std::exception&) {
            throw UsageError("QPS_TOLERANCE is not a number");
        }
    }
    return qps::default_tolerance;
}

// --out accepts a path, or one of the format keywords as a convenience for
// "write that format to stdout".
struct Output {
    std::string format = "csv";  // csv | json
    std::string path;            // empty: stdout
};

Output resolve_output(const std::string& out, const std::string& format) {
    Output o;
    if (out == "csv" || out == "json" || out == "structured") {
        o.format = out == "structured" ? "json" : out;
    } else {
        o.path = out;
        if (out.size() > 5 && out.substr(out.size() - 5) == ".json") o.format = "json";
    }
    if (!format.empty()) o.format = format == "structured" ? "json" : format;
    if (o.format != "csv" && o.format != "json")
        throw UsageError("format must be csv, json or structured");
    return o;
}

// Emits through a callback so the stream can be stdout or a file.
template <typename Fn>
void with_stream(const Output& out, Fn&& fn) {
    if (out.path.empty()) {
        fn(std::cout);
        return;
    }
    std::ofstream file(out.path);
    if (!file) throw qps::state_format_error("cannot open output file: " + out.path);
    fn(file);
    if (!file) throw qps::state_format_error("failed writing output file: " + out.path);
}

qps::PhaseChoice resolve_phase_choice(int N, const std::string& family,
                                      const std::optional<long long>& nplus,
                                      const std::optional<long long>& nminus,
                                      bool need_admissible) {
    if (nplus.has_value() != nminus.has_value())
        throw UsageError("--nplus and --nminus must be given together");
    if (nplus) {
        const qps::PhaseChoice pc{*nplus, *nminus, N};
        const qps::Family cls = qps::classify_phase_choice(pc);
        if (!family.empty() && cls != qps::family_from_string(family))
            throw UsageError("explicit n+/n- classify as " +
                             std::string(qps::family_name(cls)) +
                             ", which contradicts --family " + family);
        if (need_admissible && cls == qps::Family::Inadmissible)
            throw UsageError("phase choice is inadmissible; no marginal fano grid exists");
        return pc;
    }
    const qps::Family fam =
        family.empty() ? qps::Family::New : qps::family_from_string(family);
    return qps::PhaseChoice::for_family(fam, N);
}

int run(int argc, char** argv) {
    CLI::App app{"discrete phase-space toolkit: fano operators, wigner grids and "
                 "their symmetry checks"};
    // --h is a real option of the rep subcommand, so help stays long-form only.
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);

    int dim = 2;
    std::string family;
    std::optional<long long> nplus, nminus;
    std::optional<double> tol_flag;
    std::string out_spec, format_spec;
    unsigned long long seed = 12345;
    int threads = 1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--dim", dim, "state-space dimension N")->required();
        cmd->add_option("--family", family, "fano family: new | leonhardt");
        cmd->add_option("--nplus", nplus, "phase integer n+");
        cmd->add_option("--nminus", nminus, "phase integer n-");
        cmd->add_option("--tol", tol_flag, "tolerance (default 1e-10, or QPS_TOLERANCE)");
        cmd->add_option("--out", out_spec, "output path, or csv|json for stdout");
        cmd->add_option("--format", format_spec, "output format: csv | json");
    };

    auto* fano_cmd = app.add_subcommand("fano", "emit fano grid cells");
    add_common(fano_cmd);
    std::vector<int> point;
    fano_cmd->add_option("--point", point, "single doubled point dq,dp")->delimiter(',');
    fano_cmd->add_option("--threads", threads, "worker threads for grid assembly");

    auto* wigner_cmd = app.add_subcommand("wigner", "wigner grid of a state document");
    add_common(wigner_cmd);
    std::string state_path;
    wigner_cmd->add_option("--state", state_path, "state document (json)")->required();
    wigner_cmd->add_option("--threads", threads, "worker threads for grid assembly");

    auto* rep_cmd = app.add_subcommand("rep", "representation unitary for one element");
    add_common(rep_cmd);
    std::vector<long long> h_entries;
    rep_cmd->add_option("--h", h_entries, "element kappa,mu,lambda,nu")
        ->delimiter(',')
        ->required();

    auto* moments_cmd = app.add_subcommand("moments", "moment/ordering identity check");
    add_common(moments_cmd);
    int a = 0, b = 0;
    moments_cmd->add_option("--a", a, "clock power")->required();
    moments_cmd->add_option("--b", b, "shift power")->required();

    auto* verify_cmd = app.add_subcommand("verify", "run invariant suites");
    add_common(verify_cmd);
    std::string suite = "all";
    int n_random = 10, n_pairs = 20, n_states = 10;
    verify_cmd->add_option("--suite", suite, "suite name or 'all'");
    verify_cmd->add_option("--seed", seed, "seed for randomized checks");
    verify_cmd->add_option("--rand", n_random, "random elements per covariance check");
    verify_cmd->add_option("--pairs", n_pairs, "random pairs per projective check");
    verify_cmd->add_option("--states", n_states, "random states per wigner check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const double tol = resolve_tolerance(tol_flag);
    const Output output = resolve_output(out_spec, format_spec);

    if (fano_cmd->parsed()) {
        const qps::PhaseChoice pc = resolve_phase_choice(dim, family, nplus, nminus, true);
        const qps::Family fam = qps::classify_phase_choice(pc);
        const qps::FanoGrid grid = qps::build_fano_grid(fam, dim, threads);
        std::optional<qps::HalfPoint> only;
        if (!point.empty()) {
            if (point.size() != 2) throw UsageError("--point needs exactly dq,dp");
            if (point[0] < 0 || point[0] >= 2 * dim || point[1] < 0 || point[1] >= 2 * dim)
                throw UsageError("--point coordinates must lie in [0, 2N)");
            only = qps::HalfPoint{point[0], point[1]};
        }
        with_stream(output, [&](std::ostream& os) {
            if (output.format == "csv")
                qps::write_fano_csv(os, grid, only);
            else
                os << qps::fano_to_json(grid, only).dump(2) << '\n';
        });
        return 0;
    }

    if (wigner_cmd->parsed()) {
        const qps::PhaseChoice pc = resolve_phase_choice(dim, family, nplus, nminus, true);
        const qps::Family fam = qps::classify_phase_choice(pc);
        const qps::DensityMatrix rho = qps::load_state(state_path);
        if (rho.N != dim)
            throw UsageError("state dimension " + std::to_string(rho.N) +
                             " disagrees with --dim " + std::to_string(dim));
        const qps::FanoGrid grid = qps::build_fano_grid(fam, dim, threads);
        const qps::WignerGrid w = qps::wigner_transform(rho, grid, tol);
        with_stream(output, [&](std::ostream& os) {
            if (output.format == "csv")
                qps::write_wigner_csv(os, w);
            else
                os << qps::wigner_to_json(w).dump(2) << '\n';
        });
        return 0;
    }

    if (rep_cmd->parsed()) {
        if (h_entries.size() != 4) throw UsageError("--h needs exactly kappa,mu,lambda,nu");
        const qps::Sp2ZElement h =
            qps::validate_sl2(h_entries[0], h_entries[1], h_entries[2], h_entries[3]);
        const qps::PhaseChoice pc = resolve_phase_choice(dim, family, nplus, nminus, false);
        const qps::RepUnitary rep = qps::build_unitary(h, pc);
        with_stream(output, [&](std::ostream& os) {
            if (output.format == "csv")
                qps::write_rep_csv(os, rep);
            else
                os << qps::rep_to_json(rep).dump(2) << '\n';
        });
        const double worst = std::max({rep.unitarity_residual, rep.conj_residual_q,
                                       rep.conj_residual_p});
        if (worst >= tol) {
            std::cerr << "conjugation-rule residual " << worst << " exceeds tolerance\n";
            return 1;
        }
        return 0;
    }

    if (moments_cmd->parsed()) {
        const qps::PhaseChoice pc = resolve_phase_choice(dim, family, nplus, nminus, true);
        const qps::Family fam = qps::classify_phase_choice(pc);
        if (a < 0 || a >= dim || b < 0 || b >= dim)
            throw UsageError("--a and --b must lie in [0, N)");
        const qps::FanoGrid grid = qps::build_fano_grid(fam, dim);
        const qps::MomentIdentityResult res = qps::moment_identity(grid, a, b);
        with_stream(output, [&](std::ostream& os) {
            if (output.format == "csv") {
                os << "a,b,deviation\n"
                   << a << ',' << b << ',' << qps::fmt17(res.deviation) << '\n';
            } else {
                nlohmann::ordered_json doc;
                doc["dim"] = dim;
                doc["family"] = qps::family_name(fam);
                doc["a"] = a;
                doc["b"] = b;
                doc["deviation"] = res.deviation;
                os << doc.dump(2) << '\n';
            }
        });
        if (res.deviation >= tol) {
            std::cerr << "moment/ordering identity violated: deviation " << res.deviation
                      << '\n';
            return 1;
        }
        return 0;
    }

    // verify
    qps::verify::SuiteOptions opt;
    opt.N = dim;
    opt.tol = tol;
    opt.seed = seed;
    opt.n_random = n_random;
    opt.n_pairs = n_pairs;
    opt.n_states = n_states;
    if (!family.empty()) opt.families = {qps::family_from_string(family)};
    const qps::verify::Results results = qps::verify::run_suite(suite, opt);
    qps::verify::print_table(std::cout, results);
    if (!qps::verify::all_pass(results)) {
        for (const auto& r : results)
            if (!r.pass)
                std::cerr << "violated: " << r.name << " (deviation " << r.deviation
                          << ")\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const qps::state_format_error& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 3;
    } catch (const qps::projectivity_violation& e) {
        std::cerr << "projective composition law violated: " << e.what() << '\n';
        return 1;
    } catch (const qps::representation_failure& e) {
        std::cerr << "representation construction failed: " << e.what() << '\n';
        return 1;
    } catch (const qps::numerical_failure& e) {
        std::cerr << "numerical residual bound violated: " << e.what() << '\n';
        return 1;
    } catch (const qps::admissibility_error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
