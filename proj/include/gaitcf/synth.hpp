#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gaitcf/types.hpp"

namespace gaitcf::synth {

// Within-cycle waveform family. TdLike is a single-humped stride wave;
// DmdLike adds a leading shoulder and sits lower overall.
enum class Morphology { TdLike, DmdLike };

std::string to_string(Morphology m);

struct StepLengthLaw {
    double base_m = 0.45;
    double slope_m_per_g = 0.5;

    double length_m(double peak_g) const { return base_m + slope_m_per_g * peak_g; }
};

// Per-subject generator configuration. cadence_steps_per_s is the SC-L3
// (comfortable) rate; activities scale it by a fixed speed ladder. The
// per-level anteroposterior peaks drive the step-length law.
struct GaitProfile {
    double cadence_steps_per_s = 2.0;
    StepLengthLaw law;
    std::array<double, 5> sc_peak_g{0.40, 0.60, 0.80, 1.00, 1.20};
    Morphology morphology = Morphology::TdLike;
    double noise_snr_db = std::numeric_limits<double>::infinity();
    double rate_hz = 100.0;
    std::uint64_t seed = 1;

    void validate() const; // cadence within the dependable detection margin
};

// Exact injected ground truth for one generated activity.
struct SynthTruth {
    Activity activity = Activity::ScL1;
    std::vector<double> ic_times;       // sample-aligned clean-signal peaks
    std::vector<std::size_t> ic_indices;
    std::vector<double> step_lengths_m;
    double total_distance_m = 0.0;
    long step_count = 0;
    double walk_duration_s = 0.0; // sum of step durations (excludes lead-in/out)
};

struct GeneratedActivity {
    AccelSeries series;
    SynthTruth truth;
};

// Exactly one of the two must be set.
struct ActivityGoal {
    std::optional<double> duration_s;
    std::optional<double> target_distance_m;
};

ActivityGoal default_goal(Activity a);
double activity_cadence_scale(Activity a);
double activity_peak_g(const GaitProfile& profile, Activity a);

// Dimensionless within-cycle waveform, phase in [0,1), max value 1 at the
// IC spike. Used both by the generator and by tests that need the analytic
// shape.
double template_value(Morphology m, double phase);
double template_ic_phase(Morphology m);

// Builds the anteroposterior channel by tiling the morphology template once
// per step (peak scaled to the activity's target plus per-step jitter),
// adding white noise at the profile SNR, and recording the exact injected
// truth. Deterministic for a fixed seed.
GeneratedActivity generate_activity(const GaitProfile& profile, Activity activity,
                                    const ActivityGoal& goal, std::uint64_t seed);

// As above with explicit cadence/peak (used by sweep tests across the
// supported envelope).
GeneratedActivity generate_walk(const GaitProfile& profile, Activity activity,
                                const ActivityGoal& goal, double cadence_steps_per_s,
                                double peak_g, std::uint64_t seed);

struct CohortOptions {
    int n_td = 3;
    int n_dmd = 3;
    std::uint64_t seed = 1;
    double snr_db = std::numeric_limits<double>::infinity();
    double dmd_peak_scale = 0.75;     // morphology amplitude gap vs TD
    double observation_noise_sd = 0.0; // multiplicative noise on observed values
    double pedometer_undercount = 0.35;
    double rate_hz = 100.0;
};

struct SubjectSpec {
    std::string subject_id;
    Cohort cohort = Cohort::TD;
    GaitProfile profile;
};

// Deterministic per-subject profiles (cadence/peak variation around the
// defaults, DMD subjects scaled down and switched to the DMD waveform).
std::vector<SubjectSpec> make_subject_specs(const CohortOptions& options);

// Per-subject, per-activity seed derivation (splitmix64 over the cohort
// seed), shared by in-memory generation and file output.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t subject_index,
                          std::uint64_t activity_index);

struct CohortFiles {
    std::vector<std::string> manifest_paths; // one per subject
};

// Writes trace CSVs, per-subject manifests and truth sidecars under out_dir.
// Refuses to touch a non-empty directory unless force is set.
CohortFiles generate_cohort(const CohortOptions& options, const std::string& out_dir,
                            bool force = false);

} // namespace gaitcf::synth
