#include "psdisc/serialize.hpp"

#include <cmath>

namespace psdisc {

namespace {

using nlohmann::json;

cplx entry_from_json(const json& j) {
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return cplx(j[0].get<double>(), j[1].get<double>());
    throw Error("matrix entry must be a number or a [re, im] pair");
}

json optional_to_json(const std::optional<double>& v) {
    if (v && std::isfinite(*v)) return json(*v);
    return json(nullptr);
}

const char* method_name(AcceptanceMethod m) {
    return m == AcceptanceMethod::ClosedForm ? "closed_form" : "numeric_upsilon";
}

double require_number(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw Error(std::string("missing or non-numeric field \"") + key + "\"");
    return j.at(key).get<double>();
}

Matrix require_matrix(const json& j, const char* key) {
    if (!j.contains(key)) throw Error(std::string("missing field \"") + key + "\"");
    return matrix_from_json(j.at(key));
}

std::optional<Matrix> optional_matrix(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return matrix_from_json(j.at(key));
}

void put_residual(json& j, const char* key, const std::optional<Matrix>& r) {
    if (r) j[key] = matrix_to_json(*r);
}

}  // namespace

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.dim(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.dim(); ++c) {
            const cplx z = m(r, c);
            row.push_back(json::array({z.real(), z.imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw Error("matrix must be a non-empty array of rows");
    const int dim = static_cast<int>(j.size());
    Matrix m(dim);
    for (int r = 0; r < dim; ++r) {
        const json& row = j[static_cast<size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            throw Error("matrix must be square: row length differs from row count");
        for (int c = 0; c < dim; ++c) m(r, c) = entry_from_json(row[static_cast<size_t>(c)]);
    }
    return m;
}

json tolerances_to_json(const Tolerances& tol) {
    return json{{"rank_tol", tol.rank_tol},
                {"cluster_tol", tol.cluster_tol},
                {"psd_tol", tol.psd_tol}};
}

Tolerances tolerances_from_json(const json& j) {
    Tolerances tol;
    if (j.is_null()) return tol;
    if (!j.is_object()) throw Error("\"tolerances\" must be an object");
    if (j.contains("rank_tol")) tol.rank_tol = j.at("rank_tol").get<double>();
    if (j.contains("cluster_tol")) tol.cluster_tol = j.at("cluster_tol").get<double>();
    if (j.contains("psd_tol")) tol.psd_tol = j.at("psd_tol").get<double>();
    return tol;
}

json instance_to_json(const ProblemInstance& inst) {
    return json{{"dim", inst.dim()},
                {"rho", matrix_to_json(inst.rho.mat())},
                {"sigma", matrix_to_json(inst.sigma.mat())},
                {"p_rho", inst.p_rho},
                {"tolerances", tolerances_to_json(inst.tol)}};
}

ProblemInstance instance_from_json(const json& j) {
    if (!j.is_object()) throw Error("instance file must be a JSON object");
    const Matrix rho = require_matrix(j, "rho");
    const Matrix sigma = require_matrix(j, "sigma");
    const double p_rho = require_number(j, "p_rho");
    Tolerances tol;
    if (j.contains("tolerances")) tol = tolerances_from_json(j.at("tolerances"));
    if (j.contains("dim")) {
        const int dim = j.at("dim").get<int>();
        if (dim != rho.dim())
            throw Error("declared \"dim\" does not match the operator dimension");
    }
    return make_instance(DensityOperator::create(rho, tol), DensityOperator::create(sigma, tol),
                         p_rho, tol);
}

json measurement_to_json(const Measurement& m) {
    return json{{"lambda_rho", matrix_to_json(m.lambda_rho)},
                {"lambda_sigma", matrix_to_json(m.lambda_sigma)}};
}

Measurement measurement_from_json(const json& j, const Tolerances& tol) {
    if (!j.is_object()) throw Error("measurement file must be a JSON object");
    return validate_measurement(require_matrix(j, "lambda_rho"),
                                require_matrix(j, "lambda_sigma"), tol);
}

json params_to_json(const ConstructionParams& params) {
    json j;
    j["variant"] = variant_name(params);
    std::visit(
        [&](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, EqualC1Params>) {
                j["psi_max"] = matrix_to_json(p.psi_max);
                j["c"] = p.c;
                put_residual(j, "residual_sigma", p.residual_sigma);
            } else if constexpr (std::is_same_v<P, EqualC2Params>) {
                j["psi_min"] = matrix_to_json(p.psi_min);
                j["c"] = p.c;
                put_residual(j, "residual_rho", p.residual_rho);
            } else if constexpr (std::is_same_v<P, EqualC3Params>) {
                j["psi_max"] = matrix_to_json(p.psi_max);
                j["psi_min"] = matrix_to_json(p.psi_min);
                j["c"] = p.c;
                j["c_r"] = p.c_r;
            } else if constexpr (std::is_same_v<P, Unequal1Params>) {
                j["psi_rho"] = matrix_to_json(p.psi_rho);
                j["c1"] = p.c1;
                put_residual(j, "residual_sigma", p.residual_sigma);
            } else if constexpr (std::is_same_v<P, Unequal2Params>) {
                j["psi_sigma"] = matrix_to_json(p.psi_sigma);
                j["c2"] = p.c2;
                put_residual(j, "residual_rho", p.residual_rho);
            } else {
                j["psi_rho"] = matrix_to_json(p.psi_rho);
                j["psi_sigma"] = matrix_to_json(p.psi_sigma);
                j["c3"] = p.c3;
                j["c_r"] = p.c_r;
            }
        },
        params);
    return j;
}

ConstructionParams params_from_json(const json& j) {
    if (!j.is_object() || !j.contains("variant") || !j.at("variant").is_string())
        throw Error("params file must be an object with a \"variant\" string");
    const std::string variant = j.at("variant").get<std::string>();
    const auto number_or = [&](const char* key, double fallback) {
        return j.contains(key) ? j.at(key).get<double>() : fallback;
    };
    if (variant == "EqualC1") {
        EqualC1Params p;
        p.psi_max = require_matrix(j, "psi_max");
        p.c = number_or("c", 0.0);
        p.residual_sigma = optional_matrix(j, "residual_sigma");
        return p;
    }
    if (variant == "EqualC2") {
        EqualC2Params p;
        p.psi_min = require_matrix(j, "psi_min");
        p.c = number_or("c", 0.0);
        p.residual_rho = optional_matrix(j, "residual_rho");
        return p;
    }
    if (variant == "EqualC3") {
        EqualC3Params p;
        p.psi_max = require_matrix(j, "psi_max");
        p.psi_min = require_matrix(j, "psi_min");
        p.c = number_or("c", 0.0);
        p.c_r = number_or("c_r", 0.5);
        return p;
    }
    if (variant == "Unequal1") {
        Unequal1Params p;
        p.psi_rho = require_matrix(j, "psi_rho");
        p.c1 = number_or("c1", 0.0);
        p.residual_sigma = optional_matrix(j, "residual_sigma");
        return p;
    }
    if (variant == "Unequal2") {
        Unequal2Params p;
        p.psi_sigma = require_matrix(j, "psi_sigma");
        p.c2 = number_or("c2", 0.0);
        p.residual_rho = optional_matrix(j, "residual_rho");
        return p;
    }
    if (variant == "Unequal3") {
        Unequal3Params p;
        p.psi_rho = require_matrix(j, "psi_rho");
        p.psi_sigma = require_matrix(j, "psi_sigma");
        p.c3 = number_or("c3", 0.0);
        p.c_r = number_or("c_r", 0.5);
        return p;
    }
    throw Error("unknown params variant: " + variant);
}

json metrics_to_json(const MetricsReport& rep) {
    json j;
    j["e_s"] = rep.e_s;
    j["xi"] = std::isfinite(rep.xi) ? json(rep.xi) : json(nullptr);
    j["case"] = to_string(rep.label);
    j["support_relation"] = to_string(rep.label.support);
    if (rep.p_star)
        j["p_star"] = json::array({rep.p_star->first, rep.p_star->second});
    else
        j["p_star"] = nullptr;
    return j;
}

json acceptance_to_json(const MaxAcceptance& acc) {
    json j;
    j["a_rho_max"] = acc.for_rho.a_rho;
    j["a_sigma_max"] = acc.for_sigma.a_sigma;
    const bool numeric = acc.for_rho.method == AcceptanceMethod::NumericUpsilon ||
                         acc.for_sigma.method == AcceptanceMethod::NumericUpsilon;
    j["method"] = numeric ? "numeric_upsilon" : "closed_form";
    j["method_rho"] = method_name(acc.for_rho.method);
    j["method_sigma"] = method_name(acc.for_sigma.method);
    j["c_r_star_rho"] = optional_to_json(acc.for_rho.c_r_star);
    j["c_r_star_sigma"] = optional_to_json(acc.for_sigma.c_r_star);
    j["achieving_rho"] =
        acc.for_rho.achieving ? measurement_to_json(*acc.for_rho.achieving) : json(nullptr);
    j["achieving_sigma"] =
        acc.for_sigma.achieving ? measurement_to_json(*acc.for_sigma.achieving) : json(nullptr);
    return j;
}

json lemma_to_json(const LemmaReport& rep) {
    return json{{"lemma", to_string(rep.lemma)}, {"dim", rep.dim},
                {"trials", rep.trials},         {"seed", rep.seed},
                {"worst_violation", rep.worst_violation},
                {"best_value", rep.best_value}, {"pass", rep.pass}};
}

json sim_to_json(const SimReport& rep) {
    json counts = json::array();
    for (int h = 0; h < 2; ++h)
        counts.push_back(json::array({rep.counts[h][0], rep.counts[h][1], rep.counts[h][2]}));
    json j;
    j["n"] = rep.n;
    j["counts"] = std::move(counts);
    j["e_hat"] = optional_to_json(rep.e_hat);
    j["a_rho_hat"] = optional_to_json(rep.a_rho_hat);
    j["a_sigma_hat"] = optional_to_json(rep.a_sigma_hat);
    j["ci95"] = json{
        {"e_hat", rep.ci95.e_hat}, {"a_rho", rep.ci95.a_rho}, {"a_sigma", rep.ci95.a_sigma}};
    j["no_accepts"] = rep.no_accepts;
    return j;
}

}  // namespace psdisc
