// command-line front end: convergence / energy / run studies, the verification
// battery, and the method catalog, all emitting machine-readable output
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sei/harness.hpp"

namespace {

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

// accepts plain decimals and p/q fractions ("1/8")
double parse_number(const std::string& tok) {
    try {
        const auto slash = tok.find('/');
        if (slash == std::string::npos) return std::stod(tok);
        const double num = std::stod(tok.substr(0, slash));
        const double den = std::stod(tok.substr(slash + 1));
        if (den == 0.0) throw std::invalid_argument("zero denominator");
        return num / den;
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse number '" + tok + "'");
    }
}

std::vector<double> parse_number_list(const std::string& s) {
    std::vector<double> out;
    for (const std::string& tok : split_commas(s)) out.push_back(parse_number(tok));
    return out;
}

std::map<std::string, double> parse_params(const std::string& s) {
    std::map<std::string, double> out;
    for (const std::string& tok : split_commas(s)) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument("expected key=value in --param, got '" + tok + "'");
        out[tok.substr(0, eq)] = parse_number(tok.substr(eq + 1));
    }
    return out;
}

sei::ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("config '" + path + "': " + e.what());
    }
    sei::ExperimentConfig cfg;
    for (const auto& [key, val] : j.items()) {
        if (key == "experiment") cfg.experiment = val.get<std::string>();
        else if (key == "problem") cfg.problem = val.get<std::string>();
        else if (key == "params") cfg.params = val.get<std::map<std::string, double>>();
        else if (key == "methods") cfg.methods = val.get<std::vector<std::string>>();
        else if (key == "h_list") cfg.h_list = val.get<std::vector<double>>();
        else if (key == "t_end_list") cfg.t_end_list = val.get<std::vector<double>>();
        else if (key == "output_path") cfg.output_path = val.get<std::string>();
        else if (key == "solver") {
            for (const auto& [sk, sv] : val.items()) {
                if (sk == "fp_tol") cfg.solver.fp_tol = sv.get<double>();
                else if (sk == "max_iters") cfg.solver.max_iters = sv.get<int>();
                else throw std::invalid_argument("config: unknown solver key '" + sk + "'");
            }
        } else {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }
    return cfg;
}

// per-subcommand option holder; strings stay raw until the subcommand runs so
// config-file values and flag overrides compose predictably
struct Opts {
    std::string config_path;
    std::string problem;
    std::string methods;
    std::string h_list;
    std::string t_end;
    std::string t_end_list;
    std::string out_path;
    std::string params;
    double fp_tol = 0.0;
    int max_iters = 0;

    CLI::Option* o_problem = nullptr;
    CLI::Option* o_methods = nullptr;
    CLI::Option* o_h_list = nullptr;
    CLI::Option* o_t_end = nullptr;
    CLI::Option* o_t_end_list = nullptr;
    CLI::Option* o_out = nullptr;
    CLI::Option* o_params = nullptr;
    CLI::Option* o_fp_tol = nullptr;
    CLI::Option* o_max_iters = nullptr;
};

void add_common(CLI::App* cmd, Opts& o, bool with_t_end_list) {
    cmd->add_option("--config", o.config_path, "JSON experiment config (flags override it)");
    o.o_problem = cmd->add_option("--problem", o.problem, "duffing | wind");
    o.o_methods = cmd->add_option("--methods", o.methods, "comma list of method names (default: all)");
    o.o_h_list = cmd->add_option("--h-list", o.h_list, "comma list of step sizes, fractions allowed (1/8)");
    o.o_t_end = cmd->add_option("--t-end", o.t_end, "integration horizon");
    if (with_t_end_list)
        o.o_t_end_list = cmd->add_option("--t-end-list", o.t_end_list, "comma list of horizons");
    o.o_out = cmd->add_option("--out", o.out_path, "also write the CSV to this file");
    o.o_params = cmd->add_option("--param", o.params, "problem parameters, e.g. k=0.07,omega=20");
    o.o_fp_tol = cmd->add_option("--fp-tol", o.fp_tol, "stage fixed-point tolerance");
    o.o_max_iters = cmd->add_option("--max-iters", o.max_iters, "stage iteration cap");
}

sei::ExperimentConfig build_config(const Opts& o, const std::string& experiment) {
    sei::ExperimentConfig cfg;
    if (!o.config_path.empty()) cfg = load_config(o.config_path);
    cfg.experiment = experiment;
    if (o.o_problem->count()) cfg.problem = o.problem;
    if (o.o_methods->count()) cfg.methods = split_commas(o.methods);
    if (o.o_h_list->count()) cfg.h_list = parse_number_list(o.h_list);
    if (o.o_t_end->count()) cfg.t_end_list = {parse_number(o.t_end)};
    if (o.o_t_end_list && o.o_t_end_list->count()) cfg.t_end_list = parse_number_list(o.t_end_list);
    if (o.o_out->count()) cfg.output_path = o.out_path;
    if (o.o_params->count()) cfg.params = parse_params(o.params);
    if (o.o_fp_tol->count()) cfg.solver.fp_tol = o.fp_tol;
    if (o.o_max_iters->count()) cfg.solver.max_iters = o.max_iters;
    return cfg;
}

int finish_experiment(const std::vector<sei::MetricRow>& rows, bool print_slopes) {
    std::cout << sei::to_csv(rows);
    if (print_slopes) {
        // one slope summary line per method on stderr, leaving stdout pure CSV
        size_t i = 0;
        while (i < rows.size()) {
            size_t j = i;
            while (j < rows.size() && rows[j].method == rows[i].method) ++j;
            const std::vector<sei::MetricRow> block(rows.begin() + i, rows.begin() + j);
            const std::vector<double> slopes = sei::estimate_order(block);
            std::fprintf(stderr, "# %s slopes:", rows[i].method.c_str());
            double sum = 0.0;
            for (double s : slopes) {
                std::fprintf(stderr, " %.3f", s);
                sum += s;
            }
            if (slopes.empty())
                std::fprintf(stderr, " (none: rows divergent or at rounding floor)\n");
            else
                std::fprintf(stderr, "  mean %.3f\n", sum / double(slopes.size()));
            i = j;
        }
    }
    for (const sei::MetricRow& r : rows)
        if (r.divergent) return 1;
    return 0;
}

int run_verify_cmd(const std::vector<std::string>& tableau_files, double fp_tol, int max_iters) {
    sei::SolverSettings s;
    if (fp_tol > 0.0) s.fp_tol = fp_tol;
    if (max_iters > 0) s.max_iters = max_iters;

    std::vector<sei::SEIMethod> extra;
    for (const std::string& path : tableau_files) {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open tableau file '" + path + "'");
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        extra.push_back(sei::tableau_from_json(text));
    }

    const sei::VerifyReport rep = sei::run_verify(s, extra);
    int failed = 0;
    for (const auto& c : rep.checks) {
        std::printf("%s  %-58s residual %10.3e  (tol %.1e)\n", c.pass ? "PASS" : "FAIL",
                    c.name.c_str(), c.residual, c.threshold);
        if (!c.pass) ++failed;
    }
    if (failed == 0) {
        std::printf("all %zu checks passed\n", rep.checks.size());
        return 0;
    }
    std::printf("%d of %zu checks FAILED\n", failed, rep.checks.size());
    return 1;
}

void list_methods() {
    std::printf("%-10s %6s %6s  %s\n", "name", "stages", "order", "kind");
    for (const auto& m : sei::builtin_methods())
        std::printf("%-10s %6d %6d  %s\n", m.name.c_str(), m.tableau.s, m.order,
                    m.classical_rk ? "classical" : "exponential");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symmetric & symplectic exponential integrators for y' = My + f(y)"};
    app.require_subcommand(1);

    Opts conv_o, energy_o, run_o;
    CLI::App* conv = app.add_subcommand("convergence", "halving-h global-error study (CSV on stdout, slopes on stderr)");
    add_common(conv, conv_o, false);
    CLI::App* energy = app.add_subcommand("energy", "long-horizon energy-drift study");
    add_common(energy, energy_o, true);
    CLI::App* runc = app.add_subcommand("run", "single integration, one metrics row");
    add_common(runc, run_o, false);

    CLI::App* verify = app.add_subcommand("verify", "symmetry/symplecticity/order condition battery");
    std::vector<std::string> tableau_files;
    double v_fp_tol = 0.0;
    int v_max_iters = 0;
    verify->add_option("--tableau", tableau_files, "extra tableau JSON file (repeatable)");
    verify->add_option("--fp-tol", v_fp_tol, "stage fixed-point tolerance for step-map checks");
    verify->add_option("--max-iters", v_max_iters, "stage iteration cap");

    CLI::App* list = app.add_subcommand("list-methods", "print the built-in method catalog");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            list_methods();
            return 0;
        }
        if (verify->parsed()) return run_verify_cmd(tableau_files, v_fp_tol, v_max_iters);
        if (conv->parsed()) return finish_experiment(sei::run_convergence(build_config(conv_o, "convergence")), true);
        if (energy->parsed()) return finish_experiment(sei::run_energy(build_config(energy_o, "energy")), false);
        if (runc->parsed()) return finish_experiment(sei::run_single(build_config(run_o, "run")), false);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
