// gaitcf: extract temporospatial gait features and events from waist-worn
// accelerometer traces. Subcommands cover the full pipeline: synthetic data
// generation, event detection, per-subject calibration, feature estimation,
// gait-map export and report building.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gaitcf/errors.hpp"
#include "gaitcf/signal_io.hpp"

namespace fs = std::filesystem;
using namespace gaitcf;

namespace {

struct PipelineOpts {
    FilterSpec filter;
    PeakParams peaks;
    double rate_hz = 100.0;
    bool resample = false;
};

void add_pipeline_opts(CLI::App* cmd, PipelineOpts& opts) {
    cmd->add_option("--cutoff-hz", opts.filter.cutoff_hz, "Low-pass cutoff frequency")
        ->capture_default_str();
    cmd->add_option("--filter-order", opts.filter.order, "Butterworth order (2/4/6/8)")
        ->capture_default_str();
    cmd->add_flag_callback(
        "--no-zero-phase", [&opts] { opts.filter.zero_phase = false; },
        "Single forward pass instead of forward-backward filtering");
    cmd->add_option("--min-separation-s", opts.peaks.min_separation_s,
                    "Minimum peak separation in seconds")
        ->capture_default_str();
    cmd->add_option("--min-prominence-g", opts.peaks.min_prominence_g,
                    "Minimum peak prominence in g")
        ->capture_default_str();
    cmd->add_option("--rate-hz", opts.rate_hz, "Nominal sample rate")->capture_default_str();
    cmd->add_flag("--resample", opts.resample,
                  "Resample irregular traces to the nominal rate before filtering");
}

AccelSeries load_series(const std::string& path, const PipelineOpts& opts) {
    AccelSeries series = parse_accel_csv(path, opts.rate_hz);
    if (series.irregular()) {
        if (!opts.resample)
            fail(ErrorKind::Spec,
                 path + ": trace is irregularly sampled (median interval " +
                     std::to_string(series.median_interval_s()) +
                     " s); pass --resample to interpolate onto the nominal rate");
        std::cerr << "note: resampling " << path << " to " << opts.rate_hz << " Hz\n";
        return resample_uniform(series, opts.rate_hz);
    }
    return series;
}

std::vector<StepSegment> detect_for(const AccelSeries& series, const PipelineOpts& opts) {
    return detect_steps(series, opts.filter, opts.peaks);
}

int cmd_events(const std::string& trace, const std::string& out, const PipelineOpts& opts) {
    const AccelSeries series = load_series(trace, opts);
    const std::vector<StepSegment> segments = detect_for(series, opts);
    write_events_csv(events_rows(segments, series.times()), out);
    std::cout << "detected " << segments.size() << " steps -> " << out << "\n";
    return 0;
}

int cmd_calibrate(const std::string& manifest_path, const std::string& out, ModelForm form,
                  const PipelineOpts& opts) {
    const std::vector<ManifestEntry> manifest = parse_manifest(manifest_path);
    std::map<Activity, const ManifestEntry*> calibration;
    for (const ManifestEntry& e : manifest) {
        if (!is_calibration_activity(e.activity)) continue;
        if (calibration.count(e.activity))
            fail(ErrorKind::Completeness,
                 manifest_path + ": duplicate calibration activity " + to_string(e.activity));
        calibration[e.activity] = &e;
    }
    for (Activity a : kAllActivities) {
        if (is_calibration_activity(a) && !calibration.count(a))
            fail(ErrorKind::Completeness,
                 manifest_path + ": calibration requires activity " + to_string(a));
    }

    std::vector<CalibrationPoint> points;
    std::string subject_id;
    for (const auto& [activity, entry] : calibration) {
        const ActivityRecord record = load_activity_record(*entry, opts.rate_hz);
        subject_id = record.subject_id;
        const AccelSeries series =
            record.series.irregular() && opts.resample
                ? resample_uniform(record.series, opts.rate_hz)
                : record.series;
        points.push_back(build_point(record, detect_for(series, opts)));
    }
    const CalibrationModel model = fit(points, form, subject_id);
    write_model(model, out);
    std::cout << "fitted " << to_string(model.form) << " model for " << subject_id
              << " (residual rms " << model.residual_rms_m << " m) -> " << out << "\n";
    return 0;
}

int cmd_analyze(const std::string& manifest_path, const std::string& model_path,
                const std::string& out_dir, const PipelineOpts& opts) {
    const std::vector<ManifestEntry> manifest = parse_manifest(manifest_path);
    const CalibrationModel model = read_model(model_path);
    fs::create_directories(out_dir);

    std::vector<EstimateRow> rows;
    for (const ManifestEntry& entry : manifest) {
        const ActivityRecord record = load_activity_record(entry, opts.rate_hz);
        const AccelSeries series =
            record.series.irregular() && opts.resample
                ? resample_uniform(record.series, opts.rate_hz)
                : record.series;
        const std::vector<StepSegment> segments = detect_for(series, opts);
        const std::vector<double> t = series.times();

        EstimateRow row;
        row.subject_id = record.subject_id;
        row.cohort = record.cohort;
        row.activity = record.activity;
        row.estimate = estimate_activity(record.activity, model, segments, t);
        row.observed_steps = record.observed_steps;
        row.observed_distance_m = record.observed_distance_m;
        row.observed_duration_s = record.observed_duration_s;
        row.pedometer_steps = record.pedometer_steps;
        row.pedometer_distance_m = record.pedometer_distance_m;
        rows.push_back(row);

        const DistanceEstimate dist = estimate_distance(model, segments);
        const fs::path events_path =
            fs::path(out_dir) /
            (record.subject_id + "_" + to_string(record.activity) + "_events.csv");
        write_events_csv(events_rows(segments, t, &dist.per_step_lengths_m),
                         events_path.string());
    }
    const std::string subject = rows.empty() ? "subject" : rows.front().subject_id;
    const fs::path estimates_path = fs::path(out_dir) / (subject + "_estimates.csv");
    write_estimates_csv(rows, estimates_path.string());
    std::cout << "analyzed " << rows.size() << " activities -> " << estimates_path.string()
              << "\n";
    return 0;
}

int cmd_gaitmap(const std::string& manifest_path, const std::string& out,
                const PipelineOpts& opts) {
    const std::vector<ManifestEntry> manifest = parse_manifest(manifest_path);
    std::vector<GaitMapBlock> blocks;
    std::vector<NormalizedCycle> all_cycles;
    std::string subject_id;
    int skipped = 0;
    for (const ManifestEntry& entry : manifest) {
        const ActivityRecord record = load_activity_record(entry, opts.rate_hz);
        subject_id = record.subject_id;
        const AccelSeries series =
            record.series.irregular() && opts.resample
                ? resample_uniform(record.series, opts.rate_hz)
                : record.series;
        const std::vector<StepSegment> segments = detect_for(series, opts);
        const CycleExtraction extraction = extract_cycles(
            series.anteroposterior(), segments, record.subject_id, record.activity);
        skipped += extraction.skipped;
        if (!extraction.cycles.empty()) {
            blocks.push_back(
                {record.subject_id, to_string(record.activity), composite(extraction.cycles)});
            all_cycles.insert(all_cycles.end(), extraction.cycles.begin(),
                              extraction.cycles.end());
        }
    }
    if (!all_cycles.empty()) blocks.push_back({subject_id, "ALL", composite(all_cycles)});
    write_gaitmap_csv(blocks, out);
    std::cout << "wrote " << blocks.size() << " composite maps (" << all_cycles.size()
              << " cycles, " << skipped << " skipped) -> " << out << "\n";
    return 0;
}

int cmd_report(const std::string& results_dir, const std::string& out, bool literal) {
    std::vector<std::string> files;
    for (const fs::directory_entry& e : fs::directory_iterator(results_dir)) {
        const std::string name = e.path().filename().string();
        if (e.is_regular_file() && name.size() > 14 &&
            name.substr(name.size() - 14) == "_estimates.csv")
            files.push_back(e.path().string());
    }
    if (files.empty())
        fail(ErrorKind::Completeness, results_dir + ": no *_estimates.csv files found");
    std::sort(files.begin(), files.end());

    std::vector<EstimateRow> rows;
    for (const std::string& f : files) {
        const std::vector<EstimateRow> part = parse_estimates_csv(f);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    const ReportBuild build = build_report(make_pairs(rows), literal);
    write_report(build.rows, out);
    std::cout << "built " << build.rows.size() << " report rows from " << files.size()
              << " subjects -> " << out << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gait clinical features from a waist-worn triaxial accelerometer"};
    app.require_subcommand(1);

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic cohort with known truth");
    std::string synth_out;
    synth::CohortOptions cohort;
    bool force = false;
    synth_cmd->add_option("--out-dir", synth_out, "Output directory")->required();
    synth_cmd->add_option("--subjects-td", cohort.n_td, "Number of TD-like subjects")
        ->capture_default_str();
    synth_cmd->add_option("--subjects-dmd", cohort.n_dmd, "Number of DMD-like subjects")
        ->capture_default_str();
    synth_cmd->add_option("--seed", cohort.seed, "Cohort seed")->capture_default_str();
    synth_cmd->add_option("--snr-db", cohort.snr_db, "Additive-noise SNR in dB (default: none)");
    synth_cmd->add_option("--dmd-peak-scale", cohort.dmd_peak_scale,
                          "DMD peak amplitude relative to TD")
        ->capture_default_str();
    synth_cmd->add_option("--observation-noise-sd", cohort.observation_noise_sd,
                          "Multiplicative noise on observed ground truth")
        ->capture_default_str();
    synth_cmd->add_option("--pedometer-undercount", cohort.pedometer_undercount,
                          "Mean fractional pedometer undercount")
        ->capture_default_str();
    synth_cmd->add_flag("--force", force, "Write into a non-empty directory");

    // events
    auto* events_cmd = app.add_subcommand("events", "Detect steps and gait events in one trace");
    std::string events_trace, events_out;
    PipelineOpts events_opts;
    events_cmd->add_option("--trace", events_trace, "Trace CSV")->required();
    events_cmd->add_option("--out", events_out, "Events CSV to write")->required();
    add_pipeline_opts(events_cmd, events_opts);

    // calibrate
    auto* cal_cmd = app.add_subcommand("calibrate", "Fit a per-subject step-length model");
    std::string cal_manifest, cal_out, cal_form = "linear";
    PipelineOpts cal_opts;
    cal_cmd->add_option("--manifest", cal_manifest, "Subject manifest")->required();
    cal_cmd->add_option("--out", cal_out, "Model file to write")->required();
    cal_cmd->add_option("--form", cal_form, "Model form: linear or quadratic")
        ->check(CLI::IsMember({"linear", "quadratic"}))
        ->capture_default_str();
    add_pipeline_opts(cal_cmd, cal_opts);

    // analyze
    auto* an_cmd = app.add_subcommand("analyze", "Estimate features for every activity");
    std::string an_manifest, an_model, an_out;
    PipelineOpts an_opts;
    an_cmd->add_option("--manifest", an_manifest, "Subject manifest")->required();
    an_cmd->add_option("--model", an_model, "Calibration model file")->required();
    an_cmd->add_option("--out-dir", an_out, "Directory for estimates and events CSVs")
        ->required();
    add_pipeline_opts(an_cmd, an_opts);

    // gaitmap
    auto* gm_cmd = app.add_subcommand("gaitmap", "Export normalized gait-cycle composites");
    std::string gm_manifest, gm_out;
    PipelineOpts gm_opts;
    gm_cmd->add_option("--manifest", gm_manifest, "Subject manifest")->required();
    gm_cmd->add_option("--out", gm_out, "Gait-map CSV to write")->required();
    add_pipeline_opts(gm_cmd, gm_opts);

    // report
    auto* rep_cmd = app.add_subcommand("report", "Aggregate error metrics across subjects");
    std::string rep_dir, rep_out;
    bool rep_literal = false;
    rep_cmd->add_option("--results-dir", rep_dir, "Directory with *_estimates.csv files")
        ->required();
    rep_cmd->add_option("--out", rep_out, "Report CSV to write")->required();
    rep_cmd->add_flag("--literal-error-rate", rep_literal,
                      "Audit variant of the aggregate error-rate formula");

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth_cmd->parsed()) {
            const synth::CohortFiles files = synth::generate_cohort(cohort, synth_out, force);
            std::cout << "wrote " << files.manifest_paths.size() << " subjects under "
                      << synth_out << "\n";
            return 0;
        }
        if (events_cmd->parsed()) return cmd_events(events_trace, events_out, events_opts);
        if (cal_cmd->parsed())
            return cmd_calibrate(cal_manifest, cal_out, *parse_model_form(cal_form), cal_opts);
        if (an_cmd->parsed()) return cmd_analyze(an_manifest, an_model, an_out, an_opts);
        if (gm_cmd->parsed()) return cmd_gaitmap(gm_manifest, gm_out, gm_opts);
        if (rep_cmd->parsed()) return cmd_report(rep_dir, rep_out, rep_literal);
    } catch (const Error& e) {
        std::cerr << "gaitcf: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "gaitcf: unexpected error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
