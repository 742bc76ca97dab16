#pragma once

#include <string>
#include <vector>

#include "gaitcf/step_detect.hpp"
#include "gaitcf/types.hpp"

namespace gaitcf {

// One calibration activity reduced to a point: mean initial-contact peak
// acceleration vs mean observed step length.
struct CalibrationPoint {
    Activity activity = Activity::ScL1;
    double mean_peak_g = 0.0;
    double mean_step_length_m = 0.0;
};

enum class ModelForm { Linear, Quadratic };

std::string to_string(ModelForm form);
std::optional<ModelForm> parse_model_form(std::string_view label);

// Per-subject polynomial mapping from peak anteroposterior acceleration (g)
// to step length (m). Coefficients are ordered intercept first.
struct CalibrationModel {
    std::string subject_id;
    ModelForm form = ModelForm::Linear;
    std::vector<double> coefficients;
    std::vector<CalibrationPoint> fit_points;
    double residual_rms_m = 0.0;
    double domain_lo_g = 0.0;
    double domain_hi_g = 0.0;
};

struct StepLengthPrediction {
    double length_m = 0.0;
    bool extrapolated = false; // peak outside 1.5x the fitted domain envelope
    bool clamped = false;      // raw polynomial value was negative
};

// Point for one calibration activity: the record must carry observed
// distance and steps, and at least 3 steps must have been detected.
CalibrationPoint build_point(const ActivityRecord& record,
                             const std::vector<StepSegment>& segments);

std::vector<CalibrationPoint> build_points(
    const std::vector<std::pair<const ActivityRecord*, const std::vector<StepSegment>*>>& inputs);

// Ordinary least squares via Householder QR on the Vandermonde design
// matrix. Requires at least as many points as coefficients and at least two
// (Linear) / three (Quadratic) distinct x values.
CalibrationModel fit(const std::vector<CalibrationPoint>& points, ModelForm form,
                     const std::string& subject_id);

// Polynomial evaluation, clamped to be non-negative. Peaks outside 1.5x the
// fitted domain envelope (scaled about its midpoint) are flagged
// extrapolated but still evaluated.
StepLengthPrediction predict_step_length(const CalibrationModel& model, double peak_g);

} // namespace gaitcf
