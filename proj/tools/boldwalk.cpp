// boldwalk — simulate and verify the max-reinforced random walk.
//
// Subcommands:
//   predict    closed-form exponent and limit law for a gamma
//   simulate   run an ensemble (direct or cycle engine) to a file
//   analyze    summarize a stored run: moments, transforms, exponent fit
//   verify     run a verification suite (exit 1 when any check fails)

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "boldwalk/driver.hpp"
#include "boldwalk/io.hpp"
#include "boldwalk/model.hpp"
#include "boldwalk/verify.hpp"

namespace {

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string field;
    while (std::getline(ss, field, ',')) {
        try {
            out.push_back(std::stod(field));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad numeric list entry '" + field + "'");
        }
    }
    if (out.empty()) throw std::invalid_argument("empty numeric list");
    return out;
}

int cmd_predict(double gamma) {
    const auto p = boldwalk::model::predict_regime(gamma);
    nlohmann::ordered_json j;
    j["gamma"] = p.gamma;
    j["nu"] = p.nu;
    j["regime"] = boldwalk::model::regime_name(p.regime);
    j["limit"] = p.limit;
    std::cout << j.dump() << '\n';
    return 0;
}

int cmd_simulate(const boldwalk::driver::SimulateConfig& config,
                 const std::string& out_path) {
    const boldwalk::io::RunData run = boldwalk::driver::run_simulate(config);
    if (out_path.empty() || out_path == "-") {
        boldwalk::io::write_run(std::cout, run);
        return 0;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) {
        std::cerr << "error: cannot open '" << out_path << "' for writing\n";
        return 2;
    }
    boldwalk::io::write_run(os, run);
    return 0;
}

int cmd_analyze(const std::string& in_path, const std::string& out_path,
                const boldwalk::driver::AnalyzeConfig& config) {
    const boldwalk::io::RunData run = boldwalk::io::read_run_file(in_path);
    const auto result = boldwalk::driver::analyze_run(run, config);
    if (out_path.empty() || out_path == "-") {
        boldwalk::driver::write_analysis_records(std::cout, result, config);
        return 0;
    }
    boldwalk::driver::write_analysis(result, config, out_path);
    return 0;
}

int cmd_verify(const std::string& suite, const boldwalk::verify::VerifyConfig& cfg,
               double gamma) {
    const auto results = boldwalk::verify::run_suites(suite, cfg, gamma);
    bool ok = true;
    std::size_t total = 0, passed = 0;
    for (const auto& r : results) {
        boldwalk::verify::print_suite(std::cout, r);
        ok = ok && r.all_pass();
        total += r.checks.size();
        for (const auto& c : r.checks)
            if (c.pass) ++passed;
    }
    std::cout << (ok ? "VERIFY PASS" : "VERIFY FAIL") << " (" << passed << "/"
              << total << " checks)\n";
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulation and verification toolkit for the max-reinforced "
                 "(bold) random walk"};
    app.require_subcommand(1);

    // predict
    double predict_gamma = 0.0;
    CLI::App* predict = app.add_subcommand(
        "predict", "print exponent, regime and limit law for a gamma");
    predict->add_option("--gamma", predict_gamma, "memory exponent")->required();

    // simulate
    boldwalk::driver::SimulateConfig sim;
    std::string sim_out = "-";
    CLI::App* simulate =
        app.add_subcommand("simulate", "run an ensemble and store it");
    simulate->add_option("--gamma", sim.gamma, "memory exponent")->required();
    simulate->add_option("--engine", sim.engine, "direct | cycles")
        ->check(CLI::IsMember({"direct", "cycles"}));
    simulate->add_option("--t-max", sim.t_max, "time horizon");
    simulate->add_option("--k-max", sim.k_max, "cycle horizon (cycles engine)");
    simulate->add_option("--walkers", sim.n_walkers, "ensemble size");
    simulate->add_option("--seed", sim.seed, "master seed");
    simulate->add_option("--checkpoints", sim.checkpoints,
                         "geometric:RATIO[:START] or list:t1,t2,... "
                         "(direct engine)");
    simulate->add_option("--format", sim.format, "jsonl | csv")
        ->check(CLI::IsMember({"jsonl", "csv"}));
    simulate->add_option("--threads", sim.threads, "worker threads");
    simulate->add_option("--out", sim_out, "output path ('-' = stdout)");

    // analyze
    std::string an_in, an_out = "-", an_lambdas, an_qs, an_times;
    boldwalk::driver::AnalyzeConfig an;
    CLI::App* analyze =
        app.add_subcommand("analyze", "summarize a stored run");
    analyze->add_option("--in", an_in, "input run file")->required();
    analyze->add_option("--out", an_out,
                        "output path ('-' = stdout; side tables are written "
                        "only for file output)");
    analyze->add_option("--lambdas", an_lambdas,
                        "comma list of Laplace points (default 0.5,1,2)");
    analyze->add_option("--q", an_qs,
                        "comma list of moment orders (default 1,1.5,2)");
    analyze->add_option("--at-times", an_times,
                        "comma list of analysis times (default: derived)");
    analyze->add_option("--format", an.format, "jsonl | csv")
        ->check(CLI::IsMember({"jsonl", "csv"}));

    // verify
    std::string suite = "all";
    double verify_gamma = -1.0;
    std::int64_t verify_tmax = 0;
    boldwalk::verify::VerifyConfig vcfg;
    CLI::App* verify = app.add_subcommand("verify", "run verification suites");
    verify
        ->add_option("suite", suite,
                     "analytic | oracle | journeys | regimes | equivalence | all")
        ->check(CLI::IsMember(
            {"analytic", "oracle", "journeys", "regimes", "equivalence", "all"}));
    verify->add_option("--gamma", verify_gamma,
                       "restrict the regimes suite to one gamma (0, 0.25, 0.5)");
    verify->add_option("--seed", vcfg.seed, "master seed");
    verify->add_option("--threads", vcfg.threads, "worker threads");
    verify->add_option("--tolerance-scale", vcfg.tolerance_scale,
                       "scale statistical tolerances (reduced budgets)");
    verify->add_option("--walkers", vcfg.regime_walkers,
                       "regime ensemble size");
    verify->add_option("--t-max", verify_tmax,
                       "override the regime horizon (all regimes, or the one "
                       "selected by --gamma)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*predict) return cmd_predict(predict_gamma);
        if (*simulate) return cmd_simulate(sim, sim_out);
        if (*analyze) {
            if (!an_lambdas.empty()) an.lambdas = parse_double_list(an_lambdas);
            if (!an_qs.empty()) an.qs = parse_double_list(an_qs);
            if (!an_times.empty()) {
                an.at_times.clear();
                for (double v : parse_double_list(an_times))
                    an.at_times.push_back(static_cast<std::int64_t>(v));
            }
            return cmd_analyze(an_in, an_out, an);
        }
        if (*verify) {
            if (verify_tmax > 0) {
                if (verify_gamma == 0.0) {
                    vcfg.t_diffusive = verify_tmax;
                } else if (verify_gamma == 0.25) {
                    vcfg.t_super = verify_tmax;
                } else if (verify_gamma == 0.5) {
                    vcfg.t_edge = verify_tmax;
                } else {
                    vcfg.t_diffusive = vcfg.t_super = vcfg.t_edge = verify_tmax;
                }
            }
            return cmd_verify(suite, vcfg, verify_gamma);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
