#include "gaitcf/estimate.hpp"

#include <cmath>

#include "gaitcf/errors.hpp"

namespace gaitcf {

DistanceEstimate estimate_distance(const CalibrationModel& model,
                                   const std::vector<StepSegment>& segments) {
    DistanceEstimate out;
    if (segments.empty()) {
        out.empty = true;
        return out;
    }
    out.per_step_lengths_m.reserve(segments.size());
    std::size_t extrapolated = 0;
    for (const StepSegment& seg : segments) {
        const StepLengthPrediction p = predict_step_length(model, seg.ic_peak_g);
        out.per_step_lengths_m.push_back(p.length_m);
        out.distance_m += p.length_m;
        if (p.extrapolated) ++extrapolated;
    }
    out.extrapolated_fraction =
        static_cast<double>(extrapolated) / static_cast<double>(segments.size());
    return out;
}

double average_step_length(double distance_m, long step_count) {
    if (step_count == 0)
        fail(ErrorKind::UndefinedAverage, "average step length over zero steps");
    return distance_m / static_cast<double>(step_count);
}

Rates derive_rates(const std::vector<StepSegment>& segments, const std::vector<double>& t,
                   double distance_m) {
    if (segments.empty()) fail(ErrorKind::EmptyInput, "rates need at least one segment");
    const double duration = t[segments.back().end_idx] - t[segments.front().start_idx];
    if (!(duration > 0.0))
        fail(ErrorKind::DegenerateDuration, "active duration must be positive");
    Rates rates;
    rates.cadence_steps_per_min = 60.0 * static_cast<double>(segments.size()) / duration;
    rates.speed_m_per_s = distance_m / duration;
    const std::vector<double> durations = step_durations(segments, t);
    double sum = 0.0;
    for (double d : durations) sum += d;
    rates.avg_step_duration_s = sum / static_cast<double>(durations.size());
    return rates;
}

ActivityEstimate estimate_activity(Activity activity, const CalibrationModel& model,
                                   const std::vector<StepSegment>& segments,
                                   const std::vector<double>& t) {
    ActivityEstimate est;
    est.activity = activity;
    est.step_count = static_cast<long>(segments.size());
    if (segments.empty()) {
        est.empty = true;
        return est;
    }
    const DistanceEstimate dist = estimate_distance(model, segments);
    est.distance_m = dist.distance_m;
    est.extrapolated_step_fraction = dist.extrapolated_fraction;
    est.avg_step_length_m = average_step_length(dist.distance_m, est.step_count);
    const Rates rates = derive_rates(segments, t, dist.distance_m);
    est.cadence_steps_per_min = rates.cadence_steps_per_min;
    est.speed_m_per_s = rates.speed_m_per_s;
    est.avg_step_duration_s = rates.avg_step_duration_s;
    return est;
}

} // namespace gaitcf
