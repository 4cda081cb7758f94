// Command-line front-end for the postselected-discrimination library.
//
// Every subcommand reads and writes the JSON formats of serialize.hpp and
// prints a single JSON document on standard output. Exit codes: 0 success,
// 2 validation or input error (the message names what was violated),
// 3 when `check` is given a measurement that rejects every state.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "psdisc/serialize.hpp"

namespace {

using nlohmann::json;
using namespace psdisc;

struct Opts {
    std::string in;
    std::string measurement;
    std::string params;
    std::string out;
    uint64_t seed = 1;
    int trials = 0;     // 0 = per-command default
    long long n = 0;    // 0 = per-command default
    double tol_rank = -1.0;
    double tol_cluster = -1.0;
    bool pretty = false;
};

void add_output_flags(CLI::App* cmd, Opts& o) {
    cmd->add_option("--out", o.out, "Also write the JSON document to this file");
    cmd->add_flag("--pretty", o.pretty, "Indent the JSON output");
}

void add_instance_flags(CLI::App* cmd, Opts& o) {
    cmd->add_option("--in", o.in, "Problem instance JSON file")->required();
    cmd->add_option("--tol-rank", o.tol_rank, "Override the rank tolerance");
    cmd->add_option("--tol-cluster", o.tol_cluster, "Override the eigenvalue cluster tolerance");
}

json load_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open file: " + path);
    return json::parse(f);
}

ProblemInstance load_instance(const Opts& o) {
    json j = load_json(o.in);
    if (o.tol_rank > 0.0 || o.tol_cluster > 0.0) {
        json t = j.contains("tolerances") ? j["tolerances"] : json::object();
        if (o.tol_rank > 0.0) t["rank_tol"] = o.tol_rank;
        if (o.tol_cluster > 0.0) t["cluster_tol"] = o.tol_cluster;
        j["tolerances"] = t;
    }
    return instance_from_json(j);
}

void emit(const json& j, const Opts& o) {
    const std::string text = (o.pretty ? j.dump(2) : j.dump()) + "\n";
    std::cout << text;
    if (!o.out.empty()) {
        std::ofstream f(o.out);
        if (!f) throw Error("cannot write file: " + o.out);
        f << text;
    }
}

json run_analyze(const Opts& o) {
    const ProblemInstance inst = load_instance(o);
    json out = metrics_to_json(min_postselected_error(inst));
    out["tolerances"] = tolerances_to_json(inst.tol);
    return out;
}

json run_construct(const Opts& o) {
    const ProblemInstance inst = load_instance(o);
    const ConstructionParams params = params_from_json(load_json(o.params));
    const Measurement m =
        params.index() <= 2 ? construct_equal(inst, params) : construct_unequal(inst, params);
    return measurement_to_json(m);
}

json run_check(const Opts& o) {
    const ProblemInstance inst = load_instance(o);
    const Measurement m = measurement_from_json(load_json(o.measurement), inst.tol);
    const auto e = postselected_error(inst, m);
    if (!e)
        throw Undefined("check: the measurement rejects every state; "
                        "the postselected error is undefined");
    const AcceptancePair a = acceptance(inst, m);
    const MembershipReport mem = classify(inst).equal_supports()
                                     ? is_error_minimizing_equal(inst, m)
                                     : is_error_minimizing_unequal(inst, m);
    json out;
    out["e"] = *e;
    out["a_rho"] = a.a_rho;
    out["a_sigma"] = a.a_sigma;
    out["minimizing"] = mem.minimizing;
    out["detail"] = mem.detail;
    out["equal_case"] = mem.equal_case ? json(to_string(*mem.equal_case)) : json(nullptr);
    out["set"] = mem.set_tag ? json(*mem.set_tag) : json(nullptr);
    out["tolerances"] = tolerances_to_json(inst.tol);
    return out;
}

json run_max_acceptance(const Opts& o) {
    const ProblemInstance inst = load_instance(o);
    const MaxAcceptance acc = classify(inst).equal_supports() ? max_acceptance_equal(inst)
                                                              : max_acceptance_unequal(inst);
    json out = acceptance_to_json(acc);
    out["tolerances"] = tolerances_to_json(inst.tol);
    return out;
}

json run_oracle(const Opts& o) {
    const ProblemInstance inst = load_instance(o);
    OracleConfig cfg;
    cfg.trials = o.trials > 0 ? o.trials : cfg.trials;
    cfg.seed = o.seed;
    const double min_error = oracle_min_error(inst, cfg);
    const AcceptancePair best = oracle_max_acceptance(inst, cfg);
    return json{{"min_error", min_error},
                {"a_rho_best", best.a_rho},
                {"a_sigma_best", best.a_sigma},
                {"trials", cfg.trials},
                {"seed", cfg.seed}};
}

json run_simulate(const Opts& o) {
    const ProblemInstance inst = load_instance(o);
    const Measurement m = measurement_from_json(load_json(o.measurement), inst.tol);
    const long long n = o.n > 0 ? o.n : 100000;
    return sim_to_json(simulate(inst, m, n, o.seed));
}

json run_verify_lemmas(const Opts& o) {
    const int dim = o.n > 0 ? static_cast<int>(o.n) : 4;
    const int trials = o.trials > 0 ? o.trials : 200;
    json reports = json::array();
    bool all_pass = true;
    for (const Lemma lemma : {Lemma::MaxTraceBound, Lemma::MinTraceBound, Lemma::SingleMin,
                              Lemma::GenProjEquivalence, Lemma::ProjectorSubset}) {
        const LemmaReport rep = check_lemma(lemma, dim, o.seed, trials);
        all_pass = all_pass && rep.pass;
        reports.push_back(lemma_to_json(rep));
    }
    return json{{"dim", dim},
                {"trials", trials},
                {"seed", o.seed},
                {"all_pass", all_pass},
                {"reports", reports}};
}

ProblemInstance instance_of(const Matrix& rho, const Matrix& sigma, double p_rho) {
    return make_instance(DensityOperator::create(rho), DensityOperator::create(sigma), p_rho, {});
}

// The two-state families quoted throughout the docs, evaluated through the
// closed-form code paths only, so repeated runs emit identical bytes.
json run_examples() {
    json root;

    json family = json::array();
    for (const double mu : {0.2, 0.5, 0.8}) {
        const Matrix rho{{mu / 2, 0.0, 0.0}, {0.0, mu / 2, 0.0}, {0.0, 0.0, 1.0 - mu}};
        const Matrix sigma{{mu / 4, 0.0, 0.0}, {0.0, 3 * mu / 4, 0.0}, {0.0, 0.0, 1.0 - mu}};
        const ProblemInstance inst = instance_of(rho, sigma, 0.5);
        const MetricsReport met = min_postselected_error(inst);
        const ExtremalSubspaces subs = extremal_subspaces(inst);

        EqualC1Params params;
        params.psi_max = (1.0 / subs.p_max.rank) * subs.p_max.mat;
        const double bound = max_c(inst, params);
        params.c = bound;
        const Measurement m = construct_equal(inst, params);
        const AcceptancePair a = acceptance(inst, m);

        json entry;
        entry["mu"] = mu;
        entry["e_s"] = met.e_s;
        entry["case"] = to_string(met.label);
        entry["p_star"] = json::array({met.p_star->first, met.p_star->second});
        entry["t_max"] = matrix_to_json(subs.t_max.mat);
        entry["max_c"] = bound;
        entry["measurement"] = measurement_to_json(m);
        entry["error"] = *postselected_error(inst, m);
        entry["acceptance"] = json{{"a_rho", a.a_rho}, {"a_sigma", a.a_sigma}};
        family.push_back(std::move(entry));
    }
    root["example_1"] = std::move(family);

    const Matrix rho_q{{0.5, 0.25}, {0.25, 0.5}};
    const Matrix sigma_q{{0.75, 0.0}, {0.0, 0.25}};
    {
        const ProblemInstance inst = instance_of(rho_q, sigma_q, 0.5);
        const Matrix rel = relative_operator(inst.rho.mat(), inst.sigma.mat(), inst.tol.rank_tol);
        const EigenSystem es = eig(rel);
        json q1;
        q1["relative_operator_eigenvalues"] = json::array({es.values[0], es.values[1]});
        const auto p_star = critical_prior(inst.rho, inst.sigma, inst.tol);
        q1["p_star"] = json::array({p_star.first, p_star.second});
        json errs = json::array();
        for (const double p : {0.4, 0.5, 0.6}) {
            const ProblemInstance at_p = instance_of(rho_q, sigma_q, p);
            errs.push_back(json{{"p_rho", p}, {"e_s", min_postselected_error(at_p).e_s}});
        }
        q1["e_s"] = std::move(errs);
        q1["max_acceptance"] = acceptance_to_json(max_acceptance_equal(inst));
        root["example_q1"] = std::move(q1);
    }
    {
        json q2;
        char printed[8];
        const ProblemInstance at_07 = instance_of(rho_q, sigma_q, 0.7);
        const ExtremalSubspaces subs = extremal_subspaces(at_07);
        EqualC1Params c1;
        c1.psi_max = (1.0 / subs.p_max.rank) * subs.p_max.mat;
        const double bound_rho = max_c(at_07, c1);
        q2["max_c_detect_rho"] = bound_rho;
        std::snprintf(printed, sizeof(printed), "%.3f", bound_rho);
        q2["printed_detect_rho"] = printed;
        q2["max_acceptance_p_0_7"] = acceptance_to_json(max_acceptance_equal(at_07));

        const ProblemInstance at_03 = instance_of(rho_q, sigma_q, 0.3);
        EqualC2Params c2;
        c2.psi_min = (1.0 / subs.p_min.rank) * subs.p_min.mat;
        const double bound_sigma = max_c(at_03, c2);
        q2["max_c_detect_sigma"] = bound_sigma;
        std::snprintf(printed, sizeof(printed), "%.3f", bound_sigma);
        q2["printed_detect_sigma"] = printed;
        q2["max_acceptance_p_0_3"] = acceptance_to_json(max_acceptance_equal(at_03));
        root["example_q2"] = std::move(q2);
    }
    return root;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimum postselected error, error-minimizing measurements, and maximum "
                 "acceptance for one-shot discrimination of two quantum states",
                 "psdisc"};
    app.require_subcommand(1);
    Opts o;

    CLI::App* analyze =
        app.add_subcommand("analyze", "Minimum postselected error, regime, critical prior");
    add_instance_flags(analyze, o);
    add_output_flags(analyze, o);

    CLI::App* construct =
        app.add_subcommand("construct", "Build a measurement from family parameters");
    add_instance_flags(construct, o);
    construct->add_option("--params", o.params, "Construction parameters JSON file")->required();
    add_output_flags(construct, o);

    CLI::App* check =
        app.add_subcommand("check", "Evaluate a measurement: error, acceptance, membership");
    add_instance_flags(check, o);
    check->add_option("--measurement", o.measurement, "Measurement JSON file")->required();
    add_output_flags(check, o);

    CLI::App* max_acc = app.add_subcommand(
        "max-acceptance", "Maximum acceptance over error-minimizing measurements");
    add_instance_flags(max_acc, o);
    add_output_flags(max_acc, o);

    CLI::App* oracle = app.add_subcommand(
        "oracle", "Brute-force search over random measurements (independent cross-check)");
    add_instance_flags(oracle, o);
    oracle->add_option("--trials", o.trials, "Random measurements to sample (default 2000)");
    oracle->add_option("--seed", o.seed, "Sampling seed");
    add_output_flags(oracle, o);

    CLI::App* simulate_cmd =
        app.add_subcommand("simulate", "Monte Carlo outcome sampling for a measurement");
    add_instance_flags(simulate_cmd, o);
    simulate_cmd->add_option("--measurement", o.measurement, "Measurement JSON file")->required();
    simulate_cmd->add_option("--n", o.n, "Number of trials (default 100000)");
    simulate_cmd->add_option("--seed", o.seed, "Simulation seed");
    add_output_flags(simulate_cmd, o);

    CLI::App* lemmas = app.add_subcommand(
        "verify-lemmas", "Randomized checks of the supporting matrix inequalities");
    lemmas->add_option("--n", o.n, "Operator dimension, at most 8 (default 4)");
    lemmas->add_option("--trials", o.trials, "Trials per lemma (default 200)");
    lemmas->add_option("--seed", o.seed, "Sampling seed");
    add_output_flags(lemmas, o);

    CLI::App* examples =
        app.add_subcommand("examples", "Regenerate the documented worked examples (deterministic)");
    add_output_flags(examples, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*analyze) emit(run_analyze(o), o);
        if (*construct) emit(run_construct(o), o);
        if (*check) emit(run_check(o), o);
        if (*max_acc) emit(run_max_acceptance(o), o);
        if (*oracle) emit(run_oracle(o), o);
        if (*simulate_cmd) emit(run_simulate(o), o);
        if (*lemmas) emit(run_verify_lemmas(o), o);
        if (*examples) emit(run_examples(), o);
    } catch (const Undefined& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
