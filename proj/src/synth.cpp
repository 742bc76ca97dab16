#include "gaitcf/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include "gaitcf/errors.hpp"
#include "gaitcf/signal_io.hpp"

namespace gaitcf::synth {

std::string to_string(Morphology m) {
    return m == Morphology::TdLike ? "TD-like" : "DMD-like";
}

void GaitProfile::validate() const {
    // Keep a 2x margin between the step period and the default peak separation
    // floor (0.25 s) so jitter can never collapse two peaks into one.
    if (!(cadence_steps_per_s > 0.0) || cadence_steps_per_s > 2.0)
        fail(ErrorKind::Config, "base cadence must lie in (0, 2.0] steps/s");
    if (!(rate_hz > 0.0)) fail(ErrorKind::Config, "sample rate must be positive");
    for (double g : sc_peak_g)
        if (!(g > 0.0)) fail(ErrorKind::Config, "per-level peak accelerations must be positive");
}

namespace {

double wrap_dist(double phi, double c) {
    const double d = std::abs(phi - c);
    return std::min(d, 1.0 - d);
}

double hann_lobe(double phi, double c, double w) {
    const double x = wrap_dist(phi, c);
    if (x > w / 2.0) return 0.0;
    const double v = std::cos(std::numbers::pi * x / w);
    return v * v;
}

double tri_spike(double phi, double c, double w) {
    const double x = wrap_dist(phi, c);
    return std::max(0.0, 1.0 - x / (w / 2.0));
}

// Template scale so the spike tip sits exactly at 1.
constexpr double kTdMax = 0.82;
constexpr double kDmdMax = 0.76;

constexpr double kFirstStepFadePhase = 0.3;
constexpr double kLastStepFadePhase = 0.8;

} // namespace

double template_ic_phase(Morphology m) {
    return m == Morphology::TdLike ? 0.45 : 0.55;
}

double template_value(Morphology m, double phase) {
    const double phi = phase - std::floor(phase);
    if (m == Morphology::TdLike) {
        // Single stride hump with a narrow impact spike and a late trough.
        return (0.42 * std::cos(2.0 * std::numbers::pi * (phi - 0.45))
                + 0.40 * tri_spike(phi, 0.45, 0.08)
                + 0.16 * hann_lobe(phi, 0.72, 0.30)
                - 0.10 * hann_lobe(phi, 0.15, 0.22)) / kTdMax;
    }
    // Lower-amplitude wave with a leading shoulder before the main hump.
    return (0.36 * std::cos(2.0 * std::numbers::pi * (phi - 0.55))
            + 0.40 * tri_spike(phi, 0.55, 0.08)
            + 0.15 * hann_lobe(phi, 0.25, 0.40)
            - 0.08 * hann_lobe(phi, 0.90, 0.18)) / kDmdMax;
}

double activity_cadence_scale(Activity a) {
    switch (a) {
        case Activity::ScL1: return 0.70;
        case Activity::ScL2: return 0.85;
        case Activity::ScL3: return 1.00;
        case Activity::ScL4: return 1.15;
        case Activity::ScL5: return 1.30;
        case Activity::SixMwt: return 1.05;
        case Activity::HundredMrw: return 1.22;
        case Activity::FreeWalk: return 0.92;
    }
    return 1.0;
}

double activity_peak_g(const GaitProfile& profile, Activity a) {
    const std::array<double, 5>& sc = profile.sc_peak_g;
    switch (a) {
        case Activity::ScL1: return sc[0];
        case Activity::ScL2: return sc[1];
        case Activity::ScL3: return sc[2];
        case Activity::ScL4: return sc[3];
        case Activity::ScL5: return sc[4];
        case Activity::SixMwt: return 0.5 * (sc[2] + sc[3]);
        case Activity::HundredMrw: return 0.5 * (sc[3] + sc[4]);
        case Activity::FreeWalk: return 0.5 * (sc[1] + sc[2]);
    }
    return sc[2];
}

ActivityGoal default_goal(Activity a) {
    switch (a) {
        case Activity::SixMwt: return {360.0, std::nullopt};
        case Activity::HundredMrw: return {std::nullopt, 100.0};
        case Activity::FreeWalk: return {120.0, std::nullopt};
        default: return {40.0, std::nullopt}; // speed-calibration levels
    }
}

GeneratedActivity generate_walk(const GaitProfile& profile, Activity activity,
                                const ActivityGoal& goal, double cadence_steps_per_s,
                                double peak_g, std::uint64_t seed) {
    if (goal.duration_s.has_value() == goal.target_distance_m.has_value())
        fail(ErrorKind::Config, "exactly one of duration or target distance must be given");
    if (!(cadence_steps_per_s >= 0.2) || cadence_steps_per_s > 3.5)
        fail(ErrorKind::Config, "cadence " + std::to_string(cadence_steps_per_s) +
                                    " steps/s is outside the supported 0.2-3.5 range");
    const double rate = profile.rate_hz;
    if (cadence_steps_per_s > rate / 10.0)
        fail(ErrorKind::Config, "fewer than 10 samples per step at " + std::to_string(rate) +
                                    " Hz; cadence/rate combination is infeasible");
    if (!(peak_g > 0.0)) fail(ErrorKind::Config, "peak acceleration must be positive");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dur_jitter(1.0, 0.02);
    std::normal_distribution<double> scale_jitter(1.0, 0.03);

    // Per-step durations and peak targets, drawn until the goal is met.
    std::vector<double> durations, peaks;
    SynthTruth truth;
    truth.activity = activity;
    const double nominal_dur = 1.0 / cadence_steps_per_s;
    if (goal.duration_s) {
        if (!(*goal.duration_s > 0.0)) fail(ErrorKind::Config, "duration must be positive");
        const auto n = static_cast<std::size_t>(
            std::floor(*goal.duration_s * cadence_steps_per_s + 1e-9));
        for (std::size_t j = 0; j < std::max<std::size_t>(1, n); ++j) {
            durations.push_back(nominal_dur * std::clamp(dur_jitter(rng), 0.9, 1.1));
            peaks.push_back(peak_g * std::clamp(scale_jitter(rng), 0.85, 1.15));
        }
    } else {
        if (!(*goal.target_distance_m > 0.0))
            fail(ErrorKind::Config, "target distance must be positive");
        double dist = 0.0;
        while (dist < *goal.target_distance_m) {
            durations.push_back(nominal_dur * std::clamp(dur_jitter(rng), 0.9, 1.1));
            peaks.push_back(peak_g * std::clamp(scale_jitter(rng), 0.85, 1.15));
            dist += profile.law.length_m(peaks.back());
            if (durations.size() > 2'000'000)
                fail(ErrorKind::Config, "target distance requires an implausible number of steps");
        }
    }
    const std::size_t n_steps = durations.size();

    constexpr double kPad = 0.4; // idle lead-in/out, seconds
    double walk = 0.0;
    for (double d : durations) walk += d;
    truth.walk_duration_s = walk;
    const double total = kPad + walk + kPad;
    const auto n = static_cast<std::size_t>(std::floor(total * rate)) + 1;

    std::vector<double> az(n, 0.0);
    double step_start = kPad;
    for (std::size_t j = 0; j < n_steps; ++j) {
        const double d = durations[j];
        const double step_end = step_start + d;
        auto i0 = static_cast<std::size_t>(std::ceil(step_start * rate - 1e-9));
        auto i1 = std::min(n, static_cast<std::size_t>(std::ceil(step_end * rate - 1e-9)));

        // Unscaled template samples (with edge fades), then scale the whole
        // step so its sampled maximum equals the target peak exactly.
        std::vector<double> seg(i1 - i0);
        std::size_t arg = 0;
        double best = -1e300;
        for (std::size_t i = i0; i < i1; ++i) {
            const double phase =
                std::clamp((static_cast<double>(i) / rate - step_start) / d, 0.0, 1.0);
            double v = template_value(profile.morphology, phase);
            if (j == 0 && phase < kFirstStepFadePhase) {
                const double e = std::sin(std::numbers::pi * phase / (2.0 * kFirstStepFadePhase));
                v *= e * e;
            }
            if (j + 1 == n_steps && phase > kLastStepFadePhase) {
                const double e = std::cos(std::numbers::pi * (phase - kLastStepFadePhase) /
                                          (2.0 * (1.0 - kLastStepFadePhase)));
                v *= e * e;
            }
            seg[i - i0] = v;
            if (v > best) {
                best = v;
                arg = i;
            }
        }
        if (!(best > 0.0)) fail(ErrorKind::Config, "degenerate step waveform");
        const double scale = peaks[j] / best;
        for (std::size_t i = i0; i < i1; ++i) az[i] += scale * seg[i - i0];

        truth.ic_indices.push_back(arg);
        truth.ic_times.push_back(static_cast<double>(arg) / rate);
        truth.step_lengths_m.push_back(profile.law.length_m(peaks[j]));
        step_start = step_end;
    }
    truth.step_count = static_cast<long>(n_steps);
    for (double l : truth.step_lengths_m) truth.total_distance_m += l;

    // Vertical channel carries a scaled copy of the stride wave; the
    // mediolateral channel is noise only. Realism beyond that is out of scope.
    std::vector<AccelSample> samples(n);
    for (std::size_t i = 0; i < n; ++i) {
        samples[i].t = static_cast<double>(i) / rate;
        samples[i].ax = 0.6 * az[i];
        samples[i].az = az[i];
    }
    if (std::isfinite(profile.noise_snr_db)) {
        double rms = 0.0;
        for (double v : az) rms += v * v;
        rms = std::sqrt(rms / static_cast<double>(n));
        const double sigma = rms / std::pow(10.0, profile.noise_snr_db / 20.0);
        std::normal_distribution<double> noise(0.0, sigma);
        for (AccelSample& s : samples) {
            s.ax += noise(rng);
            s.ay += noise(rng);
            s.az += noise(rng);
        }
    }
    return {AccelSeries(std::move(samples), rate), std::move(truth)};
}

GeneratedActivity generate_activity(const GaitProfile& profile, Activity activity,
                                    const ActivityGoal& goal, std::uint64_t seed) {
    profile.validate();
    return generate_walk(profile, activity, goal,
                         profile.cadence_steps_per_s * activity_cadence_scale(activity),
                         activity_peak_g(profile, activity), seed);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t subject_index,
                          std::uint64_t activity_index) {
    // splitmix64 over a combined key.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (subject_index * 131ULL + activity_index + 1ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<SubjectSpec> make_subject_specs(const CohortOptions& options) {
    std::vector<SubjectSpec> specs;
    const int total = options.n_td + options.n_dmd;
    specs.reserve(static_cast<std::size_t>(std::max(0, total)));
    for (int s = 0; s < total; ++s) {
        const bool td = s < options.n_td;
        SubjectSpec spec;
        const int ordinal = td ? s + 1 : s - options.n_td + 1;
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%s%02d", td ? "TD" : "DMD", ordinal);
        spec.subject_id = buf;
        spec.cohort = td ? Cohort::TD : Cohort::DMD;

        std::mt19937_64 rng(derive_seed(options.seed, static_cast<std::uint64_t>(s), 0));
        std::uniform_real_distribution<double> vary(0.92, 1.08);
        GaitProfile& p = spec.profile;
        p.cadence_steps_per_s = (td ? 1.85 : 1.70) * vary(rng);
        const double peak_scale = vary(rng) * (td ? 1.0 : options.dmd_peak_scale);
        for (double& g : p.sc_peak_g) g *= peak_scale;
        p.morphology = td ? Morphology::TdLike : Morphology::DmdLike;
        p.noise_snr_db = options.snr_db;
        p.rate_hz = options.rate_hz;
        p.seed = derive_seed(options.seed, static_cast<std::uint64_t>(s), 1);
        specs.push_back(std::move(spec));
    }
    return specs;
}

CohortFiles generate_cohort(const CohortOptions& options, const std::string& out_dir,
                            bool force) {
    namespace fs = std::filesystem;
    if (options.n_td < 0 || options.n_dmd < 0 || options.n_td + options.n_dmd == 0)
        fail(ErrorKind::Config, "cohort needs at least one subject");
    const fs::path root(out_dir);
    std::error_code ec;
    if (fs::exists(root) && !fs::is_empty(root, ec) && !force)
        fail(ErrorKind::Io, "output directory " + out_dir +
                                " is not empty (pass force to overwrite)");
    fs::create_directories(root, ec);
    if (ec) fail(ErrorKind::Io, "cannot create " + out_dir + ": " + ec.message());

    CohortFiles files;
    const std::vector<SubjectSpec> specs = make_subject_specs(options);
    for (std::size_t s = 0; s < specs.size(); ++s) {
        const SubjectSpec& spec = specs[s];
        const fs::path subject_dir = root / spec.subject_id;
        fs::create_directories(subject_dir, ec);
        if (ec) fail(ErrorKind::Io, "cannot create " + subject_dir.string() + ": " + ec.message());

        std::mt19937_64 obs_rng(derive_seed(options.seed, s, 90));
        std::mt19937_64 ped_rng(derive_seed(options.seed, s, 91));
        std::uniform_real_distribution<double> ped_spread(0.6, 1.4);
        std::normal_distribution<double> obs_noise(1.0, options.observation_noise_sd);

        std::vector<ManifestEntry> entries;
        for (std::size_t a = 0; a < kAllActivities.size(); ++a) {
            const Activity act = kAllActivities[a];
            const GeneratedActivity gen = generate_activity(
                spec.profile, act, default_goal(act), derive_seed(options.seed, s, 10 + a));

            const std::string label = to_string(act);
            write_accel_csv(gen.series, (subject_dir / (label + ".csv")).string());
            write_truth(spec.subject_id, gen.truth, (subject_dir / (label + ".truth")).string());

            ManifestEntry e;
            e.subject_id = spec.subject_id;
            e.cohort = spec.cohort;
            e.activity = act;
            e.trace_path = label + ".csv";
            double distance = gen.truth.total_distance_m;
            double steps = static_cast<double>(gen.truth.step_count);
            double duration = gen.truth.walk_duration_s;
            if (options.observation_noise_sd > 0.0) {
                distance *= std::max(0.1, obs_noise(obs_rng));
                steps = std::max(1.0, std::round(steps * std::max(0.1, obs_noise(obs_rng))));
                duration *= std::max(0.1, obs_noise(obs_rng));
            }
            e.observed_distance_m = distance;
            e.observed_steps = static_cast<long>(steps);
            e.observed_duration_s = duration;

            const double f_steps =
                std::clamp(1.0 - options.pedometer_undercount * ped_spread(ped_rng), 0.05, 1.0);
            const double f_dist =
                std::clamp(1.0 - options.pedometer_undercount * ped_spread(ped_rng), 0.05, 1.0);
            e.pedometer_steps =
                std::max<long>(1, std::lround(static_cast<double>(gen.truth.step_count) * f_steps));
            e.pedometer_distance_m = gen.truth.total_distance_m * f_dist;
            entries.push_back(std::move(e));
        }
        const std::string manifest_path = (subject_dir / "manifest.txt").string();
        write_manifest(spec.subject_id, spec.cohort, entries, manifest_path);
        files.manifest_paths.push_back(manifest_path);
    }
    return files;
}

} // namespace gaitcf::synth
