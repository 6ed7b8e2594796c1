#include "qps/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

namespace qps {

Family family_from_string(const std::string& s) {
    if (s == "new") return Family::New;
    if (s == "leonhardt") return Family::Leonhardt;
    throw std::invalid_argument("unknown family '" + s + "' (expected new|leonhardt)");
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v + 0.0);
    return buf;
}

namespace {

std::string fmt_half(int doubled) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%.1f", doubled / 2.0);
    return buf;
}

cplx parse_entry(const nlohmann::json& e) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw state_format_error("each data entry must be a [re, im] pair");
    return {e[0].get<double>(), e[1].get<double>()};
}

} // namespace

DensityMatrix parse_state(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("kind") ||
        !doc.contains("data"))
        throw state_format_error("state document needs dim, kind and data fields");
    if (!doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 1)
        throw state_format_error("dim must be a positive integer");
    const int N = doc["dim"].get<int>();
    const std::string kind = doc["kind"].is_string() ? doc["kind"].get<std::string>() : "";
    const auto& data = doc["data"];
    if (!data.is_array()) throw state_format_error("data must be an array");

    if (kind == "pure") {
        if (static_cast<int>(data.size()) != N)
            throw state_format_error("pure state needs exactly dim entries");
        CVec psi(N);
        for (int i = 0; i < N; ++i) psi(i) = parse_entry(data[i]);
        return density_from_pure(psi);
    }
    if (kind == "density") {
        if (data.size() != static_cast<std::size_t>(N) * N)
            throw state_format_error("density state needs dim^2 row-major entries");
        CMat rho(N, N);
        for (int r = 0; r < N; ++r)
            for (int c = 0; c < N; ++c) rho(r, c) = parse_entry(data[r * N + c]);
        return make_density(rho);
    }
    throw state_format_error("kind must be 'pure' or 'density'");
}

DensityMatrix load_state(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw state_format_error("cannot open state file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw state_format_error("invalid state document: " + std::string(e.what()));
    }
    return parse_state(doc);
}

void write_wigner_csv(std::ostream& os, const WignerGrid& w) {
    os << "dq,dp,q,p,w\n";
    for (int dq = 0; dq < 2 * w.N; ++dq)
        for (int dp = 0; dp < 2 * w.N; ++dp)
            os << dq << ',' << dp << ',' << fmt_half(dq) << ',' << fmt_half(dp) << ','
               << fmt17(w.values(dq, dp)) << '\n';
}

nlohmann::ordered_json wigner_to_json(const WignerGrid& w) {
    nlohmann::ordered_json out;
    out["dim"] = w.N;
    out["family"] = family_name(w.family);
    auto values = nlohmann::ordered_json::array();
    for (int dq = 0; dq < 2 * w.N; ++dq)
        for (int dp = 0; dp < 2 * w.N; ++dp) values.push_back(w.values(dq, dp));
    out["values"] = std::move(values);
    out["max_imag_residue"] = w.max_imag_residue;
    return out;
}

nlohmann::ordered_json matrix_to_json(const CMat& m) {
    auto out = nlohmann::ordered_json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            out.push_back({m(r, c).real(), m(r, c).imag()});
    return out;
}

void write_fano_csv(std::ostream& os, const FanoGrid& grid, std::optional<HalfPoint> only) {
    os << "dq,dp,row,col,re,im\n";
    auto emit = [&](int dq, int dp) {
        const CMat& cell = grid.at(dq, dp);
        for (int r = 0; r < grid.N; ++r)
            for (int c = 0; c < grid.N; ++c)
                os << dq << ',' << dp << ',' << r << ',' << c << ','
                   << fmt17(cell(r, c).real()) << ',' << fmt17(cell(r, c).imag()) << '\n';
    };
    if (only) {
        emit(only->dq, only->dp);
        return;
    }
    for (int dq = 0; dq < 2 * grid.N; ++dq)
        for (int dp = 0; dp < 2 * grid.N; ++dp) emit(dq, dp);
}

nlohmann::ordered_json fano_to_json(const FanoGrid& grid, std::optional<HalfPoint> only) {
    nlohmann::ordered_json out;
    out["dim"] = grid.N;
    out["family"] = family_name(grid.family);
    auto cells = nlohmann::ordered_json::array();
    auto emit = [&](int dq, int dp) {
        nlohmann::ordered_json cell;
        cell["dq"] = dq;
        cell["dp"] = dp;
        cell["matrix"] = matrix_to_json(grid.at(dq, dp));
        cells.push_back(std::move(cell));
    };
    if (only) {
        emit(only->dq, only->dp);
    } else {
        for (int dq = 0; dq < 2 * grid.N; ++dq)
            for (int dp = 0; dp < 2 * grid.N; ++dp) emit(dq, dp);
    }
    out["cells"] = std::move(cells);
    return out;
}

void write_rep_csv(std::ostream& os, const RepUnitary& rep) {
    os << "row,col,re,im\n";
    for (int r = 0; r < rep.dim(); ++r)
        for (int c = 0; c < rep.dim(); ++c)
            os << r << ',' << c << ',' << fmt17(rep.U(r, c).real()) << ','
               << fmt17(rep.U(r, c).imag()) << '\n';
    os << "unitarity_residual," << fmt17(rep.unitarity_residual) << ",,\n";
    os << "conj_residual_q," << fmt17(rep.conj_residual_q) << ",,\n";
    os << "conj_residual_p," << fmt17(rep.conj_residual_p) << ",,\n";
}

nlohmann::ordered_json rep_to_json(const RepUnitary& rep) {
    nlohmann::ordered_json out;
    out["dim"] = rep.dim();
    out["h"] = {rep.h.kappa, rep.h.mu, rep.h.lambda, rep.h.nu};
    out["n_plus"] = rep.pc.n_plus;
    out["n_minus"] = rep.pc.n_minus;
    out["unitary"] = matrix_to_json(rep.U);
    out["unitarity_residual"] = rep.unitarity_residual;
    out["conj_residual_q"] = rep.conj_residual_q;
    out["conj_residual_p"] = rep.conj_residual_p;
    return out;
}

} // namespace qps
