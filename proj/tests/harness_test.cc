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


#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "ptdilate/harness.h"
#include "ptdilate/nonhermitian.h"

namespace ptdilate {
namespace {

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double distance(double r, double t) {
    auto k = nh_propagator({r, t});
    auto a = (k * StateVector::basis(2, 0)).renormalized();
    auto b = (k * StateVector::basis(2, 1)).renormalized();
    return trace_distance(outer(a), outer(b));
}

ExperimentConfig small(Experiment e, Mode m) {
    auto c = default_config(e);
    c.mode = m;
    c.t_grid = {0, 2, 0.5};
    c.threads = 2;
    return c;
}

TEST(Names, RoundTrip) {
    for (auto e : {Experiment::kFig1, Experiment::kFig2, Experiment::kFig3, Experiment::kFig3e,
                   Experiment::kSuppBloch, Experiment::kSuppNorm, Experiment::kSuppSubspace, Experiment::kTableS1}) {
        EXPECT_EQ(experiment_from_name(experiment_name(e)), e);
    }
    for (auto m : {Mode::kAnalytic, Mode::kDilatedExact, Mode::kDilatedSampled, Mode::kDilatedSampledNoisy}) {
        EXPECT_EQ(mode_from_name(mode_name(m)), m);
    }
    EXPECT_EQ(std::string(mode_name(Mode::kDilatedSampledNoisy)), "dilated_sampled_noisy");
    EXPECT_THROW(experiment_from_name("fig9"), std::invalid_argument);
    EXPECT_THROW(mode_from_name("exact"), std::invalid_argument);
}

TEST(Grid, InclusiveValues) {
    auto v = Grid{0, 8, 0.25}.values();
    ASSERT_EQ(v.size(), 33u);
    EXPECT_EQ(v.back(), 8);
    EXPECT_EQ((Grid{0.02, 1.5, 0.04}.values().size()), 38u);
    EXPECT_EQ((Grid{1, 1, 0.5}.values().size()), 1u);
}

TEST(Config, Defaults) {
    auto f1 = default_config(Experiment::kFig1);
    EXPECT_EQ(f1.r_values, std::vector<double>({0.6, 1, 1.3}));
    EXPECT_EQ(f1.shots, 8192u);
    auto e = default_config(Experiment::kFig3e);
    EXPECT_EQ(e.r_values, std::vector<double>({0.3, 1, 1.3}));
    EXPECT_DOUBLE_EQ(e.t_grid.stop, 1.75);
    auto s1 = default_config(Experiment::kTableS1);
    EXPECT_EQ(s1.mode, Mode::kDilatedExact);
    EXPECT_EQ(s1.t_grid.values().size(), 16u);
}

TEST(Config, JsonRoundTripAndHash) {
    auto c = default_config(Experiment::kFig3);
    c.mode = Mode::kDilatedSampledNoisy;
    c.seed = 77;
    c.readout = ReadoutModel::device_defaults(3);
    auto back = config_from_json(config_to_json(c), default_config(Experiment::kFig1));
    EXPECT_EQ(back.experiment, Experiment::kFig3);
    EXPECT_EQ(back.seed, 77u);
    EXPECT_EQ(config_to_json(back), config_to_json(c));
    EXPECT_EQ(config_hash(back), config_hash(c));
    EXPECT_EQ(config_hash(c).size(), 16u);
    c.seed = 78;
    EXPECT_NE(config_hash(back), config_hash(c));
}

TEST(Config, PartialAndInvalid) {
    auto base = default_config(Experiment::kFig2);
    auto c = config_from_json(R"({"shots": 100, "window": [1, 2.5]})", base);
    EXPECT_EQ(c.shots, 100u);
    EXPECT_EQ(c.window_hi, 2.5);
    EXPECT_EQ(c.r_values, base.r_values);
    EXPECT_THROW(config_from_json(R"({"shot": 1})", base), std::invalid_argument);
    EXPECT_THROW(config_from_json(R"({"shots": 0})", base), std::invalid_argument);
    EXPECT_THROW(config_from_json(R"({"t_grid": [2, 1, 0.5]})", base), std::invalid_argument);
    EXPECT_THROW(config_from_json(R"({"postselect_on": 2})", base), std::invalid_argument);
    EXPECT_THROW(config_from_json("[1]", base), std::invalid_argument);
    EXPECT_THROW(config_from_json("{", base), std::invalid_argument);
}

TEST(CsvTable, Format) {
    CsvTable t{"x", {"r", "t", "v"}, {{0.6, 0, 0.5}, {0.6, 0.25, std::nan("")}}, "analytic"};
    EXPECT_EQ(t.to_csv(), "mode,r,t,v\r\nanalytic,0.6,0,0.5\r\nanalytic,0.6,0.25,\r\n");
    EXPECT_EQ(t.column("t"), 1u);
    EXPECT_EQ(t.at(0, "v"), 0.5);
    EXPECT_THROW(t.column("w"), std::out_of_range);
}

TEST(DeltaMethod, BinomialSigma) {
    std::vector<std::vector<double>> p = {{0.3, 0.7}};
    auto s = delta_method_sigma([](const auto &q) { return std::vector<double>{q[0][0]}; }, p, 1000);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_NEAR(s[0], std::sqrt(0.21 / 1000), 1e-8);
    // post-selected ratio p0 / (p0 + p1) over a 4-outcome setting
    std::vector<std::vector<double>> q = {{0.2, 0.3, 0.4, 0.1}};
    auto r = delta_method_sigma([](const auto &x) { return std::vector<double>{x[0][0] / (x[0][0] + x[0][1])}; }, q,
                                1000);
    double ps = 0.5;
    double ratio = 0.4;
    EXPECT_NEAR(r[0], std::sqrt(ratio * (1 - ratio) / (ps * 1000)), 1e-7);
}

TEST(FitTime, RecoversModelTimes) {
    for (double r : {0.6, 1.3}) {
        std::vector<double> t;
        std::vector<double> d;
        for (double x = 0; x <= 8; x += 0.05) {
            t.push_back(x);
            d.push_back(distance(r, x));
        }
        auto fit = fit_characteristic_time(r, t, d);
        double expect = r < 1 ? recurrence_time(r) : decay_time(r);
        EXPECT_NEAR(fit.fitted, expect, 1e-5 * expect) << r;
        EXPECT_EQ(fit.kind, r < 1 ? "recurrence" : "decay");
    }
    std::vector<double> t = {0, 1, 2};
    EXPECT_THROW(fit_characteristic_time(1.0, t, t), std::invalid_argument);
}

TEST(Fig1, AnalyticMatchesPopulations) {
    auto c = small(Experiment::kFig1, Mode::kAnalytic);
    auto res = run_fig1(c);
    const auto &tab = res.tables.at(0);
    EXPECT_EQ(tab.name, "fig1");
    EXPECT_EQ(tab.mode, "analytic");
    for (size_t i = 0; i < tab.rows.size(); i++) {
        double r = tab.at(i, "r");
        double t = tab.at(i, "t");
        EXPECT_NEAR(tab.at(i, "p0"), populations({r, t}, StateVector::basis(2, 0)).p0, 1e-12);
    }
    EXPECT_EQ(res.point_seconds.size(), tab.rows.size());
}

TEST(Fig1, ExactFollowsTheory) {
    auto res = run_fig1(small(Experiment::kFig1, Mode::kDilatedExact));
    const auto &tab = res.tables.at(0);
    for (size_t i = 0; i < tab.rows.size(); i++) {
        EXPECT_NEAR(tab.at(i, "p0"), tab.at(i, "p0_theory"), 1e-6);
        EXPECT_EQ(tab.at(i, "starved"), 0);
    }
}

TEST(Fig3, ExactInvariants) {
    auto res = run_fig3(small(Experiment::kFig3, Mode::kDilatedExact));
    const auto &tab = res.tables.at(0);
    for (size_t i = 0; i < tab.rows.size(); i++) {
        double c = tab.at(i, "c_qq_full");
        EXPECT_NEAR(tab.at(i, "tangle") + c * c, 1, 1e-8);
        EXPECT_NEAR(tab.at(i, "s_q"), 0.5, 1e-8);
        EXPECT_NEAR(tab.at(i, "c_aq"), 0, 1e-8);
        EXPECT_NEAR(tab.at(i, "tangle"), 2 * tab.at(i, "s_a"), 1e-8);
        EXPECT_NEAR(tab.at(i, "c_qq"), tab.at(i, "c_qq_theory"), 1e-6);
    }
}

TEST(Fig3e, InitialConcurrence) {
    auto c = default_config(Experiment::kFig3e);
    c.t_grid = {0, 0, 1};
    c.mode = Mode::kDilatedExact;
    auto res = run_fig3e(c);
    const auto &tab = res.tables.at(0);
    for (size_t i = 0; i < tab.rows.size(); i++) {
        EXPECT_NEAR(tab.at(i, "c"), 0.475, 0.01);
    }
}

TEST(TableS1, Populations) {
    auto c = default_config(Experiment::kTableS1);
    c.t_grid = {0.5, 1.5, 0.5};
    auto tab = run_table_s1(c).tables.at(0);
    const double expect[3] = {0.8613, 0.6547, 0.4535};
    for (size_t i = 0; i < 3; i++) {
        EXPECT_NEAR(tab.at(i, "p0"), expect[i], 5e-5);
        EXPECT_NEAR(tab.at(i, "p0_num"), expect[i], 5e-4);
        EXPECT_LE(tab.at(i, "err_u"), 5e-4);
    }
}

TEST(Sampled, DeterministicAcrossThreadCounts) {
    auto c = small(Experiment::kFig1, Mode::kDilatedSampled);
    c.r_values = {0.6};
    c.t_grid = {0.5, 1.5, 0.5};
    c.threads = 1;
    auto a = run_fig1(c).tables.at(0).to_csv();
    c.threads = 3;
    auto b = run_fig1(c).tables.at(0).to_csv();
    EXPECT_EQ(a, b);
    c.seed = 5;
    EXPECT_NE(run_fig1(c).tables.at(0).to_csv(), a);
}

TEST(Sampled, NoisyFlagsAndSigma) {
    auto c = small(Experiment::kFig1, Mode::kDilatedSampledNoisy);
    c.r_values = {0.6};
    c.t_grid = {0.5, 1.0, 0.5};
    auto tab = run_fig1(c).tables.at(0);
    for (size_t i = 0; i < tab.rows.size(); i++) {
        EXPECT_GT(tab.at(i, "p0_sigma"), 0);
        EXPECT_LT(std::abs(tab.at(i, "p0") - tab.at(i, "p0_theory")), 5 * tab.at(i, "p0_sigma") + 0.02);
    }
}

TEST(Fig1, HermitianLimitIsPeriodic) {
    auto c = small(Experiment::kFig1, Mode::kDilatedExact);
    c.r_values = {0};
    c.t_grid = {0, 8, 0.5};
    auto tab = run_fig1(c).tables.at(0);
    for (size_t i = 0; i < tab.rows.size(); i++) {
        double t = tab.at(i, "t");
        EXPECT_NEAR(tab.at(i, "p0"), std::pow(std::cos(t), 2), 1e-9) << t;
    }
}

TEST(Fig1, BrokenPhaseDecays) {
    auto c = small(Experiment::kFig1, Mode::kAnalytic);
    c.r_values = {1.3};
    c.t_grid = {1, 8, 0.25};
    auto tab = run_fig1(c).tables.at(0);
    for (size_t i = 1; i < tab.rows.size(); i++) {
        EXPECT_LE(tab.at(i, "p0"), tab.at(i - 1, "p0") + 1e-12) << tab.at(i, "t");
    }
}

TEST(Fig2, ExactMatchesAnalyticAndFits) {
    auto c = default_config(Experiment::kFig2);
    c.r_values = {0.6, 1.3};
    c.mode = Mode::kDilatedExact;
    auto res = run_fig2(c);
    const auto &tab = res.tables.at(0);
    for (size_t i = 0; i < tab.rows.size(); i++) {
        EXPECT_NEAR(tab.at(i, "d"), tab.at(i, "d_theory"), 1e-6);
    }
    ASSERT_EQ(res.time_fits.size(), 2u);
    EXPECT_NEAR(res.time_fits[0].fitted, 3.927, 0.02 * 3.927);
    EXPECT_NEAR(res.time_fits[1].fitted, 0.602, 0.02 * 0.602);
    ASSERT_FALSE(res.exponents.empty());
    EXPECT_EQ(res.exponents[0].source, "theory");
    EXPECT_NEAR(res.exponents[0].fit.delta, 1.93, 0.08);
}

TEST(Fig3, RecurrenceAndHermitianBaseline) {
    auto c = default_config(Experiment::kFig3);
    c.mode = Mode::kDilatedExact;
    c.r_values = {0, 0.6};
    c.t_grid = {0, 8, 0.25};
    auto tab = run_fig3(c).tables.at(0);
    double tr = recurrence_time(0.6);
    for (size_t i = 0; i < tab.rows.size(); i++) {
        double r = tab.at(i, "r");
        double t = tab.at(i, "t");
        if (r == 0) {
            EXPECT_NEAR(tab.at(i, "c_qq"), 1, 1e-9) << t;
        } else if (t == 0) {
            EXPECT_NEAR(tab.at(i, "c_qq"), 1, 1e-9);
        }
    }
    // C(T_R) = 1 needs the exact recurrence time, off the 0.25 grid
    c.r_values = {0.6};
    c.t_grid = {tr, tr, 1};
    c.horizon = 8;
    auto at_tr = run_fig3(c).tables.at(0);
    EXPECT_NEAR(at_tr.at(0, "c_qq"), 1, 1e-6);
}

TEST(Fig3, SampledBellAtStart) {
    auto c = default_config(Experiment::kFig3);
    c.mode = Mode::kDilatedSampled;
    c.r_values = {0.6};
    c.t_grid = {0, 0, 1};
    c.horizon = 8;
    auto tab = run_fig3(c).tables.at(0);
    EXPECT_NEAR(tab.at(0, "c_qq"), 1, 0.02);
}

TEST(Fig3e, ExactSeries) {
    auto c = default_config(Experiment::kFig3e);
    c.mode = Mode::kDilatedExact;
    auto tab = run_fig3e(c).tables.at(0);
    double max03 = 0;
    std::map<double, std::vector<double>> series;
    for (size_t i = 0; i < tab.rows.size(); i++) {
        double r = tab.at(i, "r");
        series[r].push_back(tab.at(i, "c"));
        EXPECT_NEAR(tab.at(i, "c"), tab.at(i, "c_theory"), 1e-6);
        if (r == 0.3) {
            max03 = std::max(max03, tab.at(i, "c"));
        }
    }
    for (const auto &[r, v] : series) {
        EXPECT_NEAR(v.front(), 0.475, 1e-3) << r;
    }
    EXPECT_GE(max03, 0.75);
    EXPECT_LE(max03, 0.85);
    for (double r : {1.0, 1.3}) {
        const auto &v = series[r];
        for (size_t k = 1; k < v.size(); k++) {
            EXPECT_LE(v[k], v[k - 1] + 1e-12) << r;
        }
    }
}

TEST(TableS1, LastRow) {
    auto c = default_config(Experiment::kTableS1);
    c.t_grid = {8, 8, 1};
    auto tab = run_table_s1(c).tables.at(0);
    EXPECT_NEAR(tab.at(0, "p0"), 0.9821, 5e-4);
    EXPECT_NEAR(tab.at(0, "p0_num"), 0.9822, 5e-4);
}

TEST(SuppBloch, Examples) {
    auto c = default_config(Experiment::kSuppBloch);
    auto tab = run_supp_bloch(c).tables.at(0);
    auto row = [&](double r) {
        for (size_t i = 0; i < tab.rows.size(); i++) {
            if (std::abs(tab.at(i, "r") - r) < 1e-9) {
                return i;
            }
        }
        return tab.rows.size();
    };
    size_t r0 = row(0);
    ASSERT_LT(r0, tab.rows.size());
    EXPECT_NEAR(std::abs(tab.at(r0, "bloch_x_plus")), 1, 1e-12);
    EXPECT_NEAR(tab.at(r0, "bloch_x_plus") + tab.at(r0, "bloch_x_minus"), 0, 1e-12);
    size_t r1 = row(1);
    ASSERT_LT(r1, tab.rows.size());
    EXPECT_NEAR(tab.at(r1, "bloch_y_plus"), 1, 1e-6);
    EXPECT_NEAR(tab.at(r1, "bloch_y_minus"), 1, 1e-6);
    size_t r2 = row(2);
    ASSERT_LT(r2, tab.rows.size());
    EXPECT_NEAR(tab.at(r2, "bloch_x_plus"), 0, 1e-12);
    EXPECT_NEAR(tab.at(r2, "bloch_y_plus"), tab.at(r2, "bloch_y_minus"), 1e-12);
    EXPECT_NEAR(tab.at(r2, "bloch_z_plus"), -tab.at(r2, "bloch_z_minus"), 1e-12);
}

TEST(SuppNorm, HermitianNormIsOne) {
    auto tab = run_supp_norm(default_config(Experiment::kSuppNorm)).tables.at(0);
    for (size_t i = 0; i < tab.rows.size(); i++) {
        if (tab.at(i, "r") == 0) {
            EXPECT_NEAR(tab.at(i, "inv_norm"), 1, 1e-12);
        }
    }
}

TEST(SuppSubspace, RunsAndStaysPhysical) {
    auto c = default_config(Experiment::kSuppSubspace);
    c.r_values = {0.3, 0.9};
    c.t_grid = {0, 2, 0.5};
    auto tab = run_supp_subspace(c).tables.at(0);
    for (size_t i = 0; i < tab.rows.size(); i++) {
        EXPECT_GE(tab.at(i, "c_qq1"), 0);
        EXPECT_LE(tab.at(i, "c_qq1"), 1);
    }
}

TEST(WriteOutputs, FilesAndManifest) {
    auto dir = std::filesystem::temp_directory_path() / "ptdilate_harness_test";
    std::filesystem::remove_all(dir);
    auto c = small(Experiment::kFig2, Mode::kAnalytic);
    c.t_grid = {0, 8, 0.25};
    auto res = run_fig2(c);
    auto man = write_outputs(res, c, dir.string(), 0.1);
    EXPECT_EQ(man.experiment, "fig2");
    EXPECT_EQ(man.config_hash, config_hash(c));
    EXPECT_TRUE(std::filesystem::exists(dir / "fig2.csv"));
    EXPECT_TRUE(std::filesystem::exists(dir / "fig2_report.json"));
    EXPECT_TRUE(std::filesystem::exists(dir / "fig2_manifest.json"));
    auto text = slurp(dir / "fig2.csv");
    EXPECT_EQ(text.rfind("mode,r,t,d_theory", 0), 0u);
    auto cfg = config_from_json(slurp(dir / "fig2_config.json"), default_config(Experiment::kFig1));
    EXPECT_EQ(config_hash(cfg), config_hash(c));
    std::filesystem::remove_all(dir);
}

TEST(ParallelFor, CoversAndRethrows) {
    std::vector<int> hit(100, 0);
    parallel_for(hit.size(), 4, [&](size_t i) { hit[i]++; });
    for (int h : hit) {
        EXPECT_EQ(h, 1);
    }
    EXPECT_THROW(parallel_for(10, 3, [](size_t i) {
                     if (i == 7) {
                         throw std::runtime_error("x");
                     }
                 }),
                 std::runtime_error);
    EXPECT_EQ(worker_count(3), 3u);
    EXPECT_GE(worker_count(0), 1u);
}

}  // namespace
}  // namespace ptdilate
