#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "toric/verify.hpp"

using namespace toric;
using json = nlohmann::ordered_json;

namespace {

json rat_json(const Rat& r) { return r.str(); }

json complex_json(const std::complex<double>& z) { return json::array({z.real(), z.imag()}); }

json phase_json(const Phase& ph) { return ph.str(); }

json padic_json(const Padic& x) {
    if (x.is_zero()) return "0";
    return std::to_string(x.unit()) + "*p^" + std::to_string(x.val());
}

void emit(const json& report, const std::string& out_path, bool pretty) {
    std::string text = pretty ? report.dump(2) : report.dump();
    std::cout << text << std::endl;
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << text << std::endl;
    }
}

json echo_config(const RunConfig& cfg) {
    json j = json::object();
    for (const auto& [k, v] : cfg.kv) j[k] = v;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"local toric period integrals for GL(2) supercuspidals"};
    app.require_subcommand(1);

    std::string config_path, out_path, suite = "acceptance", sweep;
    i64 p_override = 0, prec_override = 0;
    int depth_override = 0;
    std::string side_override, pol_override;
    bool pretty = false, timing = false;

    app.add_option("--config", config_path, "instance config file");
    app.add_option("--p", p_override, "base prime (overrides [context] p)");
    app.add_option("--precision", prec_override, "working precision (overrides config)");
    app.add_option("--depth", depth_override, "coset depth M (overrides config)");
    app.add_option("--side", side_override, "matrix | division")
        ->check(CLI::IsMember({"matrix", "division"}));
    app.add_option("--polarization", pol_override, "default | appendix")
        ->check(CLI::IsMember({"default", "appendix"}));
    app.add_option("--sweep", sweep, "sweep parameter (command dependent)");
    app.add_option("--out", out_path, "also write the JSON report to a file");
    app.add_flag("--pretty", pretty, "indented JSON");
    app.add_flag("--timing", timing, "include wall-clock timing in the report");

    auto* cmd_conductor = app.add_subcommand("conductor", "conductor identities for the instance");
    auto* cmd_epsilon = app.add_subcommand("epsilon", "Tunnell-Saito epsilon value");
    auto* cmd_exist = app.add_subcommand("existence", "test-vector existence per algebra side");
    auto* cmd_integrate = app.add_subcommand("integrate", "brute-force period integral");
    auto* cmd_findtv = app.add_subcommand("find-test-vector", "Appendix (u,v) search on GL2");
    auto* cmd_orbital = app.add_subcommand("orbital", "relative-trace-formula orbital integrals");
    auto* cmd_verify = app.add_subcommand("verify-suite", "run a verification suite");
    cmd_verify->add_option("name", suite, "acceptance")->expected(0, 1);

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    auto t0 = std::chrono::steady_clock::now();
    json report;
    int rc = 0;
    try {
        if (cmd_verify->parsed()) {
            require(suite == "acceptance", errc::config_error, "unknown suite " + suite);
            auto results = run_acceptance(std::cout);
            report["command"] = "verify-suite";
            report["suite"] = suite;
            json arr = json::array();
            bool all = true;
            for (const auto& r : results) {
                arr.push_back({{"criterion", r.number},
                               {"name", r.name},
                               {"pass", r.pass},
                               {"detail", r.detail}});
                all = all && r.pass;
            }
            report["results"] = arr;
            report["pass"] = all;
            if (!all) rc = 3;
        } else {
            require(!config_path.empty(), errc::config_error, "--config is required");
            RunConfig cfg = parse_config_file(config_path);
            if (p_override) cfg.kv["context.p"] = std::to_string(p_override);
            if (prec_override) cfg.kv["context.precision"] = std::to_string(prec_override);
            if (depth_override) cfg.kv["run.depth"] = std::to_string(depth_override);
            if (!side_override.empty()) cfg.kv["run.side"] = side_override;
            if (!pol_override.empty()) cfg.kv["run.polarization"] = pol_override;
            Instance inst = build_instance(cfg);
            report["config"] = echo_config(cfg);

            if (cmd_conductor->parsed()) {
                report["command"] = "conductor";
                CuspidalDatum d = inst.datum();
                PeriodProblem pr = inst.problem();
                report["c_theta"] = d.c_theta;
                report["c_chi"] = conductor_of(inst.chi);
                report["c_pi"] = conductor_pi(d);
                report["case"] = d.case_idx;
                report["dim_lambda"] = d.dim_lambda;
                report["whole_torus_gate"] = pr.whole_torus_gate;
                if (!pr.whole_torus_gate) {
                    auto rs = conductor_rs(pr);
                    report["c_rs_norm_route"] = rs.c_rs;
                    report["c_rs_case_route"] = rs_conductor_case_formula(pr);
                    report["l"] = rs.l;
                }
            } else if (cmd_epsilon->parsed()) {
                report["command"] = "epsilon";
                PeriodProblem pr = inst.problem();
                report["epsilon"] = tunnell_epsilon(pr);
            } else if (cmd_exist->parsed()) {
                report["command"] = "existence";
                PeriodProblem pr = inst.problem();
                bool m = geometric_existence(pr, +1);
                bool dv = geometric_existence(pr, -1);
                report["matrix"] = m;
                report["division"] = dv;
                report["dichotomy"] = (m != dv);
            } else if (cmd_integrate->parsed()) {
                report["command"] = "integrate";
                PeriodProblem pr = inst.problem();
                IntegralReport rep = brute_force_integral(pr, inst.default_depth());
                report["depth"] = rep.depth;
                report["existence"] = rep.existence;
                report["whole_torus"] = rep.whole_torus;
                report["predicted"] = rat_json(rep.predicted);
                if (rep.predicted_alt) report["predicted_alt"] = rat_json(*rep.predicted_alt);
                report["brute"] = complex_json(rep.brute);
                report["brute_tolerance"] = 1e-8;
                report["support_measure"] = rat_json(rep.support_measure);
                report["all_phases_zero"] = rep.all_phases_zero;
                report["match"] = rep.match;
                if (!rep.match) rc = 3;
            } else if (cmd_findtv->parsed()) {
                report["command"] = "find-test-vector";
                PeriodProblem pr = inst.problem();
                AppendixReport rep = appendix_test_vector_search(pr);
                report["epsilon"] = rep.epsilon;
                report["solutions_exist"] = rep.solutions_exist;
                report["discriminant_square"] = rep.discriminant_square;
                report["parity_obstruction"] = rep.parity_obstruction;
                json sols = json::array();
                for (const auto& s : rep.solutions)
                    sols.push_back({{"u", padic_json(s.u)},
                                    {"v", padic_json(s.v)},
                                    {"brute", complex_json(s.brute)},
                                    {"phases_zero", s.phases_zero},
                                    {"value", rat_json(s.value)}});
                report["solutions"] = sols;
            } else if (cmd_orbital->parsed()) {
                report["command"] = "orbital";
                PeriodProblem pr = inst.problem();
                TestFunction tf = make_test_function(pr);
                int depth = std::min(inst.default_depth(), inst.ctx->N() - 4);
                report["norm_vol"] = rat_json(tf.norm_vol);
                report["I0"] = complex_json(orbital_zero(tf, depth));
                int dmax = sweep.empty() ? 0 : std::stoi(sweep);
                json arr = json::array();
                for (int dd = 1; dd <= dmax; ++dd) {
                    for (i64 uu : {1, 2}) {
                        Padic xi = Padic::of(*inst.ctx, 1) - Padic::make(*inst.ctx, dd, uu);
                        auto x = orbit_representative(tf, xi);
                        if (!x.has_value()) continue;
                        OrbitalResult r = orbital_xi(tf, *x, depth);
                        arr.push_back({{"xi", padic_json(r.xi)},
                                       {"d", dd},
                                       {"value", complex_json(r.value)},
                                       {"raw", complex_json(r.raw)}});
                    }
                }
                if (dmax > 0) report["xi_sweep"] = arr;
            }
        }
    } catch (const error& e) {
        json err;
        err["error"] = e.what();
        err["kind"] = (int)e.code();
        emit(err, out_path, pretty);
        return e.code() == errc::config_error ? 2 : 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 3;
    }
    auto t1 = std::chrono::steady_clock::now();
    report["timing_ms"] =
        timing ? (double)std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()
               : 0.0;
    emit(report, out_path, pretty);
    return rc;
}
