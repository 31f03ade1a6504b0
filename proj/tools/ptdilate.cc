// Copyright 2026 The ptdilate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ptdilate run <experiment> | decompose | tomo

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ptdilate/density_matrix.h"
#include "ptdilate/harness.h"
#include "ptdilate/metrics.h"

namespace {

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char **argv) {
    using namespace ptdilate;
    CLI::App app{"PT-symmetric qubit dynamics through a dilated two-qubit unitary"};
    app.require_subcommand(1);

    // run
    auto *run = app.add_subcommand("run", "run one experiment and write CSV, report and manifest");
    std::string experiment;
    std::string config_file;
    std::string out_dir = "out";
    std::string mode;
    std::optional<uint64_t> seed;
    std::optional<uint64_t> shots;
    std::optional<int> threads;
    std::vector<double> r_values;
    run->add_option("experiment", experiment,
                    "fig1, fig2, fig3, fig3e, supp_bloch, supp_norm, supp_subspace or table_s1")
        ->required();
    run->add_option("--config", config_file, "JSON config file")->check(CLI::ExistingFile);
    run->add_option("--seed", seed, "sampling and synthesis seed");
    run->add_option("--mode", mode, "analytic, dilated_exact, dilated_sampled or dilated_sampled_noisy");
    run->add_option("--shots", shots, "shots per setting");
    run->add_option("--threads", threads, "worker threads (default PTDILATE_THREADS or all cores)");
    run->add_option("--r", r_values, "r values (replaces the config list)");
    run->add_option("--out", out_dir, "output directory");

    // decompose
    auto *dec = app.add_subcommand("decompose", "synthesize U(t) at one (r, t) as a 3-CNOT circuit");
    double dec_r = 0.6;
    double dec_t = 0.5;
    double dec_horizon = 8;
    std::string optimizer = "nelder_mead";
    uint64_t dec_seed = 1;
    std::string dec_out;
    dec->add_option("--r", dec_r, "gain/loss strength")->required();
    dec->add_option("--t", dec_t, "evolution time")->required();
    dec->add_option("--horizon", dec_horizon, "calibration horizon (r > 1 uses whole intervals up to t)");
    dec->add_option("--optimizer", optimizer, "nelder_mead or levenberg_marquardt");
    dec->add_option("--seed", dec_seed, "restart seed");
    dec->add_option("--out", dec_out, "write the circuit JSON here instead of stdout");

    // tomo
    auto *tomo = app.add_subcommand("tomo", "reconstruct a state from shot-table JSON files");
    std::vector<std::string> tables;
    size_t system_wires = 2;
    int postselect_on = 0;
    bool correct = false;
    std::string convention = "supplement";
    tomo->add_option("tables", tables, "one shot table per setting (ids end in X/Y/Z or T1..T7)")->required();
    tomo->add_option("--system-wires", system_wires, "1 or 2")->check(CLI::Range(1, 2));
    tomo->add_option("--postselect", postselect_on, "ancilla value kept when tables carry an ancilla")
        ->check(CLI::Range(0, 1));
    tomo->add_flag("--correct", correct, "apply the default device readout correction before post-selection");
    tomo->add_option("--convention", convention, "supplement or main_text");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            auto cfg = default_config(experiment_from_name(experiment));
            if (!config_file.empty()) {
                cfg = config_from_json(slurp(config_file), cfg);
                if (experiment_name(cfg.experiment) != experiment) {
                    throw std::invalid_argument("config names experiment " + std::string(experiment_name(cfg.experiment)));
                }
            }
            if (!mode.empty()) {
                cfg.mode = mode_from_name(mode);
            }
            if (seed) {
                cfg.seed = *seed;
            }
            if (shots) {
                cfg.shots = *shots;
            }
            if (threads) {
                cfg.threads = *threads;
            }
            if (!r_values.empty()) {
                cfg.r_values = r_values;
            }
            auto t0 = std::chrono::steady_clock::now();
            auto result = run_experiment(cfg);
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            auto manifest = write_outputs(result, cfg, out_dir, secs);
            for (const auto &f : manifest.outputs) {
                std::cout << out_dir << "/" << f << "\n";
            }
            for (const auto &f : result.time_fits) {
                std::cout << f.kind << " time r=" << f.r << ": " << f.fitted << " (expected " << f.expected << ")\n";
            }
            for (const auto &e : result.exponents) {
                std::cout << e.quantity << " exponent (" << e.source << ", r=" << e.r << "): " << e.fit.delta
                          << " +- " << e.fit.stderr << "\n";
            }
        } else if (*dec) {
            auto ctx = dec_r > 1 ? calibrate_for_time(dec_r, dec_t, 1.0) : calibrate(dec_r, dec_horizon);
            auto u = propagate_U(ctx, dec_t).unitary;
            SynthesisOptions opts;
            opts.optimizer = optimizer_from_name(optimizer);
            opts.seed = dec_seed;
            auto rep = decompose(u, opts);
            auto text = circuit_to_json(rep.circuit);
            if (dec_out.empty()) {
                std::cout << text << "\n";
            } else {
                std::ofstream(dec_out, std::ios::binary) << text << "\n";
            }
            std::cerr << "eta0 " << format_number(ctx.eta0) << " theta " << format_number(ctx.theta) << " err_u "
                      << format_number(rep.err_u) << (rep.failed ? " FAILED" : "") << "\n";
            return rep.failed ? 2 : 0;
        } else if (*tomo) {
            std::vector<ShotTable> loaded;
            for (const auto &f : tables) {
                loaded.push_back(shot_table_from_json(slurp(f)));
            }
            ReadoutModel model;
            const ReadoutModel *corr = nullptr;
            if (correct) {
                model = ReadoutModel::device_defaults(loaded.front().num_wires);
                corr = &model;
            }
            auto probs = probabilities_from_tables(loaded, system_wires, postselect_on, corr);
            auto rho = system_wires == 1 ? single_qubit_reconstruct(probs)
                                         : two_qubit_reconstruct(probs, convention_from_name(convention));
            nlohmann::ordered_json j;
            j["rho"] = nlohmann::json::parse(density_matrix_to_json(rho.matrix()));
            j["purity"] = rho.purity();
            if (system_wires == 2) {
                j["concurrence"] = concurrence(rho.matrix());
            }
            std::cout << j.dump(2) << "\n";
        }
    } catch (const std::exception &e) {
        std::cerr << "ptdilate: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
