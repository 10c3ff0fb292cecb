#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pqn/errors.hpp"
#include "pqn/flow.hpp"
#include "pqn/model_io.hpp"
#include "pqn/models.hpp"
#include "pqn/parse.hpp"
#include "pqn/structure.hpp"

using nlohmann::ordered_json;
using namespace pqn;

namespace {

constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitModelLoad = 3;

struct ModelLoadFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ModelDescriptor resolve_model(const std::string& selector, int n) {
    if (is_builtin_model_name(selector)) {
        try {
            return builtin_model(selector, n);
        } catch (const DomainError& err) {
            throw ModelLoadFailure(err.what());
        }
    }
    try {
        return load_model(selector);
    } catch (const std::exception& err) {
        throw ModelLoadFailure(err.what());
    }
}

ordered_json checks_to_json(const CheckReport& report) {
    ordered_json list = ordered_json::array();
    for (const auto& c : report.checks()) {
        ordered_json entry;
        entry["name"] = c.name;
        entry["pass"] = c.pass;
        entry["witness"] = c.pass ? ordered_json(nullptr) : ordered_json(c.witness);
        list.push_back(std::move(entry));
    }
    return list;
}

void emit_report(const std::string& model_name, const CheckReport& report,
                 const ordered_json& tables, const std::string& report_path) {
    ordered_json doc;
    doc["model"] = model_name;
    doc["checks"] = checks_to_json(report);
    doc["tables"] = tables;
    const std::string body = doc.dump(2) + "\n";
    if (report_path.empty()) {
        std::cout << body;
        return;
    }
    const std::string tmp = report_path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw DomainError("cannot write report '" + report_path + "'");
        out << body;
    }
    if (std::rename(tmp.c_str(), report_path.c_str()) != 0)
        throw DomainError("cannot move report into place at '" + report_path + "'");
}

DifferentialForm scalar_differential(const ModelDescriptor& model, const std::string& key) {
    auto it = model.scalars.find(key);
    if (it == model.scalars.end())
        throw DomainError("model '" + model.name + "' lacks scalar '" + key + "'");
    return differential(model.chart, it->second);
}

std::vector<double> read_state_csv(const std::string& path, std::size_t m) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open initial state file '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.find_first_not_of("0123456789+-.eE, \t\r") != std::string::npos) continue;
        std::vector<double> state;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) state.push_back(std::stod(cell));
        if (state.size() != m)
            throw DomainError("initial state needs " + std::to_string(m) + " values");
        return state;
    }
    throw DomainError("no numeric row in initial state file '" + path + "'");
}

int run_verify(const ModelDescriptor& model, const std::string& report_path) {
    Classification cls = classify_structure(model.structure());
    ordered_json tables;
    tables["classification"] = to_string(cls.label);
    emit_report(model.name, cls.report, tables, report_path);
    return cls.report.all_pass() ? 0 : kExitCheckFailure;
}

int run_deform(const ModelDescriptor& model, const std::string& two_form,
               const std::string& out_path, const std::string& report_path) {
    auto it = model.two_forms.find(two_form);
    if (it == model.two_forms.end()) {
        std::cerr << "model '" << model.name << "' has no 2-form named '" << two_form << "'\n";
        return kExitUsage;
    }
    CheckReport report("deform");
    ordered_json tables;
    try {
        PqNStructure deformed = deform(model.structure(), it->second);
        report.add("two-form closed", true);
        ModelDescriptor out{model.name + "+" + two_form, model.n, model.chart,
                            model.pi, deformed.N, deformed.phi};
        if (!out_path.empty()) save_model(out, out_path);
        tables["deformed"] = out.name;
        if (!out_path.empty()) tables["written"] = out_path;
        emit_report(model.name, report, tables, report_path);
        return 0;
    } catch (const DomainError& err) {
        report.add("two-form closed", false, err.what());
        emit_report(model.name, report, tables, report_path);
        return kExitCheckFailure;
    }
}

int run_hierarchy(const ModelDescriptor& model, int kmax, const std::string& report_path) {
    Hierarchy h = hierarchy(model.structure(), kmax);
    CheckReport report("hierarchy");
    std::string witness;
    if (!h.ladder_residuals.empty())
        witness = "k=" + std::to_string(h.ladder_residuals.front().first) + ": " +
                  to_string(h.ladder_residuals.front().second);
    report.add("trace ladder consistent", h.ladder_residuals.empty(), witness);

    ordered_json tables;
    ordered_json hs = ordered_json::array();
    for (const auto& H : h.H) hs.push_back(to_string(H, model.chart));
    tables["H"] = std::move(hs);
    ordered_json ys = ordered_json::array();
    for (const auto& Y : h.Y) ys.push_back(to_string(Y));
    tables["Y"] = std::move(ys);
    ordered_json phis = ordered_json::array();
    for (const auto& ph : h.phiK) phis.push_back(to_string(ph));
    tables["phi_k"] = std::move(phis);
    emit_report(model.name, report, tables, report_path);
    return report.all_pass() ? 0 : kExitCheckFailure;
}

int run_involutivity(const ModelDescriptor& model, int kmax, const std::string& report_path) {
    auto table = involutivity_table(model.structure(), kmax);
    CheckReport report("involutivity");
    bool zero = true;
    std::string witness;
    ordered_json rows = ordered_json::array();
    for (int l = 0; l < kmax; ++l) {
        ordered_json row = ordered_json::array();
        for (int r = 0; r < kmax; ++r) {
            row.push_back(to_string(table[l][r], model.chart));
            if (!table[l][r].is_zero() && zero) {
                zero = false;
                witness = "(" + std::to_string(l + 1) + "," + std::to_string(r + 1) +
                          "): " + to_string(table[l][r], model.chart);
            }
        }
        rows.push_back(std::move(row));
    }
    report.add("involutivity table vanishes", zero, witness);
    ordered_json tables;
    tables["brackets"] = std::move(rows);
    emit_report(model.name, report, tables, report_path);
    return report.all_pass() ? 0 : kExitCheckFailure;
}

int run_identities(const ModelDescriptor& model, const std::string& suite, int kmax,
                   const std::string& report_path) {
    PqNStructure S = model.structure();
    CheckReport report("identities:" + suite);
    bool ran_any = false;

    auto want = [&](const char* name) { return suite == name || suite == "all"; };
    auto have_scalars = [&](std::initializer_list<const char*> keys) {
        for (const char* k : keys)
            if (!model.scalars.count(k)) return false;
        return true;
    };

    if (want("recursion")) {
        report.merge(verify_recursion_identity(S, kmax));
        ran_any = true;
    }
    if (want("omega")) {
        auto it = model.two_forms.find("omega");
        if (it != model.two_forms.end()) {
            report.merge(verify_two_form_criterion(S, it->second, kmax));
            ran_any = true;
        } else if (suite == "omega") {
            std::cerr << "model '" << model.name << "' has no 2-form named 'omega'\n";
            return kExitUsage;
        }
    }
    if (want("factored")) {
        if (have_scalars({"thm3_beta", "thm3_gamma"})) {
            report.merge(verify_factored_involutivity(S,
                                                      scalar_differential(model, "thm3_beta"),
                                                      scalar_differential(model, "thm3_gamma"),
                                                      kmax));
            ran_any = true;
        } else if (suite == "factored") {
            std::cerr << "model '" << model.name << "' lacks thm3_beta/thm3_gamma scalars\n";
            return kExitUsage;
        }
    }
    if (want("torsion-identities")) {
        if (have_scalars({"fac_alpha", "fac_beta", "fac_gamma"})) {
            report.merge(verify_factored_identities(S, scalar_differential(model, "fac_alpha"),
                                                    scalar_differential(model, "fac_beta"),
                                                    scalar_differential(model, "fac_gamma"),
                                                    kmax));
            ran_any = true;
        } else if (suite == "torsion-identities") {
            std::cerr << "model '" << model.name << "' lacks fac_alpha/fac_beta/fac_gamma\n";
            return kExitUsage;
        }
    }
    if (!ran_any) {
        std::cerr << "no identity suite could run for '" << model.name << "'\n";
        return kExitUsage;
    }
    emit_report(model.name, report, ordered_json::object(), report_path);
    return report.all_pass() ? 0 : kExitCheckFailure;
}

int run_flow(const ModelDescriptor& model, int hamiltonian, double t, double dt,
             const std::string& x0_path, const std::string& out_path,
             const std::string& report_path) {
    PqNStructure S = model.structure();
    int kmax = std::max(hamiltonian, std::max(1, static_cast<int>(model.chart.dim()) / 2));
    Hierarchy h = hierarchy(S, kmax);
    VectorField X = hamiltonian_vf(model.pi, h.H[hamiltonian - 1]);

    std::vector<double> x0 = x0_path.empty()
                                 ? default_initial_state(static_cast<int>(model.chart.dim()) / 2)
                                 : read_state_csv(x0_path, model.chart.dim());
    int steps = static_cast<int>(t / dt + 0.5);
    Trajectory traj = integrate_rk4(X, std::move(x0), dt, steps);

    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::trunc);
        if (!out) throw DomainError("cannot write trajectory '" + out_path + "'");
        write_trajectory_csv(traj, out);
    }

    CheckReport report("flow");
    report.add("integration completed", !traj.aborted, "trajectory hit a pole and was truncated");
    ordered_json tables;
    ordered_json drifts = ordered_json::object();
    auto drift = conservation_report(traj, h.H);
    char buf[64];
    for (int k = 1; k <= kmax; ++k) {
        std::snprintf(buf, sizeof buf, "%.17g", drift[k - 1]);
        drifts["H" + std::to_string(k)] = std::string(buf);
    }
    tables["relative_drift"] = std::move(drifts);
    tables["steps"] = steps;
    emit_report(model.name, report, tables, report_path);
    return report.all_pass() ? 0 : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification engine for Poisson recursion structures"};
    app.require_subcommand(1);

    std::string model_arg, report_path, out_path, two_form, suite = "all", x0_path;
    int n = 3, kmax = 0, hamiltonian = 2;
    double t = 10.0, dt = 1e-3;

    auto add_model_opts = [&](CLI::App* cmd) {
        cmd->add_option("--model", model_arg, "built-in model name or model file path")
            ->required();
        cmd->add_option("--n", n, "particle number for built-in models (default 3)");
        cmd->add_option("--report", report_path, "write the JSON report here (default stdout)");
    };

    CLI::App* verify = app.add_subcommand("verify", "classify a structure and check its axioms");
    add_model_opts(verify);

    CLI::App* deform_cmd = app.add_subcommand("deform", "deform a structure by a named 2-form");
    add_model_opts(deform_cmd);
    deform_cmd->add_option("--two-form", two_form, "omega1 | omega2 | omega-ts | omega-bc | omega")
        ->required();
    deform_cmd->add_option("--out", out_path, "write the deformed structure as a model file");

    CLI::App* hier = app.add_subcommand("hierarchy", "trace ladder, fields, obstruction forms");
    add_model_opts(hier);
    hier->add_option("--kmax", kmax, "truncation order (default: chart dimension)");

    CLI::App* invol = app.add_subcommand("involutivity", "exact table of {H_l, H_m}");
    add_model_opts(invol);
    invol->add_option("--kmax", kmax, "truncation order (default: chart dimension)");

    CLI::App* ident = app.add_subcommand("identities", "exact identity suites");
    add_model_opts(ident);
    ident->add_option("--kmax", kmax, "truncation order (default: chart dimension)");
    ident->add_option("--suite", suite,
                      "recursion | omega | factored | torsion-identities | all");

    CLI::App* flow_cmd = app.add_subcommand("flow", "integrate a ladder Hamiltonian flow");
    add_model_opts(flow_cmd);
    flow_cmd->add_option("--hamiltonian", hamiltonian, "ladder index k of H_k (default 2)");
    flow_cmd->add_option("--t", t, "total integration time (default 10)");
    flow_cmd->add_option("--dt", dt, "step size (default 1e-3)");
    flow_cmd->add_option("--x0", x0_path, "CSV file with the initial state");
    flow_cmd->add_option("--out", out_path, "write the trajectory CSV here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        int code = app.exit(err);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        ModelDescriptor model = resolve_model(model_arg, n);
        if (kmax <= 0) kmax = static_cast<int>(model.chart.dim());
        if (verify->parsed()) return run_verify(model, report_path);
        if (deform_cmd->parsed()) return run_deform(model, two_form, out_path, report_path);
        if (hier->parsed()) return run_hierarchy(model, kmax, report_path);
        if (invol->parsed()) return run_involutivity(model, kmax, report_path);
        if (ident->parsed()) return run_identities(model, suite, kmax, report_path);
        if (flow_cmd->parsed())
            return run_flow(model, hamiltonian, t, dt, x0_path, out_path, report_path);
    } catch (const ModelLoadFailure& err) {
        std::cerr << "model load failure: " << err.what() << "\n";
        return kExitModelLoad;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
