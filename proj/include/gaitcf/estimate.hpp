#pragma once

#include <vector>

#include "gaitcf/calibration.hpp"
#include "gaitcf/step_detect.hpp"
#include "gaitcf/types.hpp"

namespace gaitcf {

// Temporospatial features for one activity.
struct ActivityEstimate {
    Activity activity = Activity::ScL1;
    long step_count = 0;
    double distance_m = 0.0;
    double avg_step_length_m = 0.0;
    double avg_step_duration_s = 0.0;
    double cadence_steps_per_min = 0.0;
    double speed_m_per_s = 0.0;
    double extrapolated_step_fraction = 0.0;
    bool empty = false; // no steps detected
};

struct DistanceEstimate {
    double distance_m = 0.0;
    std::vector<double> per_step_lengths_m;
    double extrapolated_fraction = 0.0;
    bool empty = false;
};

// Total distance = sum of per-step predicted lengths. Empty segment lists
// yield zero distance with the empty flag set rather than an error.
DistanceEstimate estimate_distance(const CalibrationModel& model,
                                   const std::vector<StepSegment>& segments);

// Exact quotient; step_count == 0 raises an undefined-average error.
double average_step_length(double distance_m, long step_count);

struct Rates {
    double cadence_steps_per_min = 0.0;
    double speed_m_per_s = 0.0;
    double avg_step_duration_s = 0.0;
};

// Rates over the active span t[last end] - t[first start]; leading and
// trailing idle time in the file does not dilute cadence or speed.
Rates derive_rates(const std::vector<StepSegment>& segments, const std::vector<double>& t,
                   double distance_m);

// Composes distance, average length and rates for one activity.
ActivityEstimate estimate_activity(Activity activity, const CalibrationModel& model,
                                   const std::vector<StepSegment>& segments,
                                   const std::vector<double>& t);

} // namespace gaitcf
