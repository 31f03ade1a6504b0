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

#ifndef PTDILATE_HARNESS_H
#define PTDILATE_HARNESS_H

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ptdilate/circuitsim.h"
#include "ptdilate/dilation.h"
#include "ptdilate/metrics.h"
#include "ptdilate/synthesis.h"
#include "ptdilate/tomography.h"

namespace ptdilate {

enum class Experiment { kFig1, kFig2, kFig3, kFig3e, kSuppBloch, kSuppNorm, kSuppSubspace, kTableS1 };

const char *experiment_name(Experiment e);
Experiment experiment_from_name(const std::string &name);

/// Each mode refines the previous one: closed-form theory, the integrated
/// dilation, finite-shot sampling of the synthesized circuit, and the same with
/// readout errors followed by correction.
enum class Mode { kAnalytic, kDilatedExact, kDilatedSampled, kDilatedSampledNoisy };

const char *mode_name(Mode m);
Mode mode_from_name(const std::string &name);

/// Inclusive arithmetic grid; values are start + k * step, with the last value
/// kept when it lies within step * 1e-9 of stop.
struct Grid {
    double start = 0;
    double stop = 0;
    double step = 1;

    std::vector<double> values() const;
};

struct ExperimentConfig {
    Experiment experiment = Experiment::kFig1;
    Mode mode = Mode::kAnalytic;
    std::vector<double> r_values;
    Grid t_grid;
    uint64_t shots = kDefaultShots;
    uint64_t seed = 2024;
    int postselect_on = 0;

    // Empty means ReadoutModel::device_defaults for the experiment's wire count.
    std::optional<ReadoutModel> readout;
    SynthesisOptions synthesis;
    CoherenceConvention convention = CoherenceConvention::kSupplement;

    CalibrationOptions calibration;
    PropagationOptions propagation;
    double horizon = 0;                // 0: the last t of t_grid
    double interval_above = 1.0;       // r above this is calibrated per interval
    double calibration_interval = 1.0;

    double theta_deg = 59.185;         // fig3e initial state
    Grid map_r{-1, 1.5, 0.05};         // fig1 population map
    Grid map_t{0, 8, 0.1};
    Grid theory_t{0, 8, 0.05};         // dense theory series for fits
    double window_lo = 1;              // critical-exponent window
    double window_hi = 3;
    double exponent_r = 1;

    int threads = 0;                   // 0: PTDILATE_THREADS or hardware concurrency
};

/// Defaults per experiment (grids, r values).
ExperimentConfig default_config(Experiment e);

/// Flat JSON document; keys absent from the text keep the values in base.
/// Throws std::invalid_argument on unknown keys or malformed values.
ExperimentConfig config_from_json(const std::string &text, const ExperimentConfig &base);
std::string config_to_json(const ExperimentConfig &config);

/// fnv1a of the canonical config JSON, as 16 hex digits.
std::string config_hash(const ExperimentConfig &config);

/// One CSV file. NaN cells are written empty.
struct CsvTable {
    std::string name;  // file stem
    std::vector<std::string> columns;  // the leading "mode" column excluded
    std::vector<std::vector<double>> rows;
    std::string mode;

    size_t column(const std::string &name) const;
    double at(size_t row, const std::string &name) const;
    std::string to_csv() const;
};

/// Characteristic time fitted to a distance series.
struct TimeFit {
    double r = 0;
    std::string kind;  // "recurrence" or "decay"
    double fitted = 0;
    double expected = 0;
    double rms_residual = 0;
    std::string source;  // mode name of the fitted series
};

struct ExponentRecord {
    std::string quantity;  // "distance" or "concurrence"
    std::string source;    // "theory" or a mode name
    double r = 0;
    ExponentFit fit;
};

struct ExperimentResult {
    Experiment experiment;
    Mode mode;
    std::vector<CsvTable> tables;
    std::vector<TimeFit> time_fits;
    std::vector<ExponentRecord> exponents;
    std::vector<double> point_seconds;  // wall time per (r, t) point, grid order
};

ExperimentResult run_fig1(const ExperimentConfig &config);
ExperimentResult run_fig2(const ExperimentConfig &config);
ExperimentResult run_fig3(const ExperimentConfig &config);
ExperimentResult run_fig3e(const ExperimentConfig &config);
ExperimentResult run_table_s1(const ExperimentConfig &config);
ExperimentResult run_supp_bloch(const ExperimentConfig &config);
ExperimentResult run_supp_norm(const ExperimentConfig &config);
ExperimentResult run_supp_subspace(const ExperimentConfig &config);
ExperimentResult run_experiment(const ExperimentConfig &config);

/// Fit of the recurrence time (r < 1) or decay time (r > 1) to a distance series
/// by a log-spaced scan followed by golden-section refinement. Throws
/// std::runtime_error when the best point sits on the scan boundary.
TimeFit fit_characteristic_time(double r, const std::vector<double> &t, const std::vector<double> &distance);

/// Linearized standard deviation of observables of per-setting outcome
/// distributions under multinomial sampling with `shots` per setting.
/// Returns one sigma per observable output.
std::vector<double> delta_method_sigma(
    const std::function<std::vector<double>(const std::vector<std::vector<double>> &)> &observable,
    const std::vector<std::vector<double>> &probs, uint64_t shots);

struct RunManifest {
    std::string experiment;
    std::string mode;
    std::string config_hash;
    std::string version;
    std::vector<std::string> outputs;
    std::vector<double> point_seconds;
    double total_seconds = 0;
};

/// Writes every table as <dir>/<name>.csv, a <experiment>_report.json with fits
/// when there are any, and <experiment>_manifest.json. Creates dir if needed.
RunManifest write_outputs(const ExperimentResult &result, const ExperimentConfig &config, const std::string &dir,
                          double total_seconds);
std::string manifest_to_json(const RunManifest &manifest);
std::string report_to_json(const ExperimentResult &result);

/// Worker count: config.threads if positive, else PTDILATE_THREADS, else the
/// hardware concurrency (at least 1).
unsigned worker_count(int requested);

/// Runs fn(i) for i in [0, n) on up to `workers` threads. The first exception
/// thrown by any task is rethrown after all workers stop.
void parallel_for(size_t n, unsigned workers, const std::function<void(size_t)> &fn);

}  // namespace ptdilate

#endif
