#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gaitcf/calibration.hpp"
#include "gaitcf/estimate.hpp"
#include "gaitcf/gaitmap.hpp"
#include "gaitcf/metrics.hpp"
#include "gaitcf/step_detect.hpp"
#include "gaitcf/synth.hpp"
#include "gaitcf/types.hpp"

// File formats. All writers are deterministic: stable column order, fixed
// 6-fractional-digit decimals (p-values in scientific notation), LF line
// endings. Identical inputs produce byte-identical files.
namespace gaitcf {

// --- trace CSV: header `t,x,y,z`; t seconds, x/y/z in g ---
AccelSeries parse_accel_csv(const std::string& path, double nominal_rate_hz = 100.0);
void write_accel_csv(const AccelSeries& series, const std::string& path);

// --- per-subject manifest: `key: value` lines, one block per activity ---
std::vector<ManifestEntry> parse_manifest(const std::string& path);
void write_manifest(const std::string& subject_id, Cohort cohort,
                    const std::vector<ManifestEntry>& entries, const std::string& path);

// Loads the trace referenced by a manifest entry.
ActivityRecord load_activity_record(const ManifestEntry& entry, double nominal_rate_hz = 100.0);

// --- events CSV: one row per detected step ---
struct EventsRow {
    int step_index = 0;
    double start_t = 0.0;
    double to_t = 0.0;
    double ic_t = 0.0;
    double end_t = 0.0;
    double ic_peak_g = 0.0;
    std::optional<double> step_length_m; // blank before calibration is applied
};

std::vector<EventsRow> events_rows(const std::vector<StepSegment>& segments,
                                   const std::vector<double>& t,
                                   const std::vector<double>* step_lengths_m = nullptr);
void write_events_csv(const std::vector<EventsRow>& rows, const std::string& path);
std::vector<EventsRow> parse_events_csv(const std::string& path);

// --- metrics report CSV ---
void write_report(const std::vector<MetricsRow>& rows, const std::string& path);
std::vector<MetricsRow> parse_report_csv(const std::string& path);

// --- per-activity estimates CSV (analyze output, report input) ---
struct EstimateRow {
    std::string subject_id;
    Cohort cohort = Cohort::Unknown;
    Activity activity = Activity::ScL1;
    ActivityEstimate estimate;
    std::optional<long> observed_steps;
    std::optional<double> observed_distance_m;
    std::optional<double> observed_duration_s;
    std::optional<long> pedometer_steps;
    std::optional<double> pedometer_distance_m;
};

void write_estimates_csv(const std::vector<EstimateRow>& rows, const std::string& path);
std::vector<EstimateRow> parse_estimates_csv(const std::string& path);

// Comparison pairs for the metrics module.
std::vector<EstimatePair> make_pairs(const std::vector<EstimateRow>& rows);

// --- calibration model file (`key: value`, fit points kept for audit) ---
void write_model(const CalibrationModel& model, const std::string& path);
CalibrationModel read_model(const std::string& path);

// --- gait map CSV: subject_id,activity,phase_pct,mean_g,sd_g,n_cycles ---
struct GaitMapBlock {
    std::string subject_id;
    std::string activity_label; // activity name, or "ALL" for the combined map
    CompositeMap map;
};

void write_gaitmap_csv(const std::vector<GaitMapBlock>& blocks, const std::string& path);

// --- synthetic ground-truth sidecar ---
void write_truth(const std::string& subject_id, const synth::SynthTruth& truth,
                 const std::string& path);
synth::SynthTruth read_truth(const std::string& path);

} // namespace gaitcf
