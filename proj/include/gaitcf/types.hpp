#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gaitcf {

// The eight session activities: five speed-calibration levels (slow walk to
// run) plus the three evaluation tasks.
enum class Activity {
    ScL1,
    ScL2,
    ScL3,
    ScL4,
    ScL5,
    SixMwt,     // 6-minute walk test
    HundredMrw, // 100 m run/walk
    FreeWalk,
};

inline constexpr std::array<Activity, 8> kAllActivities = {
    Activity::ScL1, Activity::ScL2,       Activity::ScL3,    Activity::ScL4,
    Activity::ScL5, Activity::SixMwt,     Activity::HundredMrw,
    Activity::FreeWalk,
};

std::string to_string(Activity a);
std::optional<Activity> parse_activity(std::string_view label);

// SC-L1..SC-L5 are the activities a calibration model is fitted on.
bool is_calibration_activity(Activity a);

enum class Cohort { TD, DMD, Unknown };

std::string to_string(Cohort c);
std::optional<Cohort> parse_cohort(std::string_view label);

// One accelerometer reading. Components are in g; t is seconds since the
// start of the session. The axes follow the waist-worn sensor convention:
// ax vertical, ay mediolateral, az anteroposterior.
struct AccelSample {
    double t = 0.0;
    double ax = 0.0;
    double ay = 0.0;
    double az = 0.0;
};

// Immutable triaxial trace. Construction validates finiteness and strictly
// increasing timestamps; a series whose median sample interval deviates more
// than 20% from the nominal rate is flagged irregular (it is never resampled
// implicitly -- see preprocess::resample_uniform).
class AccelSeries {
public:
    AccelSeries(std::vector<AccelSample> samples, double nominal_rate_hz = 100.0);

    const std::vector<AccelSample>& samples() const { return samples_; }
    double nominal_rate_hz() const { return nominal_rate_hz_; }
    std::size_t size() const { return samples_.size(); }
    bool irregular() const { return irregular_; }
    double median_interval_s() const { return median_interval_s_; }

    std::vector<double> times() const;
    std::vector<double> anteroposterior() const;

private:
    std::vector<AccelSample> samples_;
    double nominal_rate_hz_;
    double median_interval_s_ = 0.0;
    bool irregular_ = false;
};

// Manifest entry: everything known about one recorded activity before the
// trace itself is loaded.
struct ManifestEntry {
    std::string subject_id;
    Cohort cohort = Cohort::Unknown;
    Activity activity = Activity::ScL1;
    std::string trace_path; // resolved against the manifest directory
    std::optional<double> observed_distance_m;
    std::optional<long> observed_steps;
    std::optional<double> observed_duration_s;
    std::optional<long> pedometer_steps;
    std::optional<double> pedometer_distance_m;
};

// A loaded activity: manifest fields plus the parsed trace.
struct ActivityRecord {
    std::string subject_id;
    Cohort cohort = Cohort::Unknown;
    Activity activity = Activity::ScL1;
    AccelSeries series;
    std::optional<double> observed_distance_m;
    std::optional<long> observed_steps;
    std::optional<double> observed_duration_s;
    std::optional<long> pedometer_steps;
    std::optional<double> pedometer_distance_m;
};

} // namespace gaitcf
