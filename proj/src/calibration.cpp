#include "gaitcf/calibration.hpp"

#include <algorithm>
#include <cmath>

#include "gaitcf/errors.hpp"

namespace gaitcf {

std::string to_string(ModelForm form) {
    return form == ModelForm::Linear ? "linear" : "quadratic";
}

std::optional<ModelForm> parse_model_form(std::string_view label) {
    if (label == "linear") return ModelForm::Linear;
    if (label == "quadratic") return ModelForm::Quadratic;
    return std::nullopt;
}

CalibrationPoint build_point(const ActivityRecord& record,
                             const std::vector<StepSegment>& segments) {
    if (!is_calibration_activity(record.activity))
        fail(ErrorKind::Value, to_string(record.activity) + " is not a calibration activity");
    if (!record.observed_distance_m || !record.observed_steps)
        fail(ErrorKind::Completeness,
             "calibration activity " + to_string(record.activity) +
                 " requires observed distance and steps");
    if (segments.size() < 3)
        fail(ErrorKind::InsufficientSteps,
             "calibration activity " + to_string(record.activity) + " has only " +
                 std::to_string(segments.size()) + " detected steps (need at least 3)");

    double peak_sum = 0.0;
    for (const StepSegment& seg : segments) peak_sum += seg.ic_peak_g;
    CalibrationPoint point;
    point.activity = record.activity;
    point.mean_peak_g = peak_sum / static_cast<double>(segments.size());
    point.mean_step_length_m =
        *record.observed_distance_m / static_cast<double>(segments.size());
    if (!(point.mean_peak_g > 0.0))
        fail(ErrorKind::Value, "mean peak acceleration must be positive for " +
                                   to_string(record.activity));
    if (!(point.mean_step_length_m > 0.0))
        fail(ErrorKind::Value,
             "mean step length must be positive for " + to_string(record.activity));
    return point;
}

std::vector<CalibrationPoint> build_points(
    const std::vector<std::pair<const ActivityRecord*, const std::vector<StepSegment>*>>&
        inputs) {
    std::vector<CalibrationPoint> points;
    points.reserve(inputs.size());
    for (const auto& [record, segments] : inputs) points.push_back(build_point(*record, *segments));
    return points;
}

namespace {

// Least squares min ||A c - y|| by Householder QR, A is m x k column-major.
std::vector<double> qr_solve(std::vector<double> a, std::vector<double> y, std::size_t m,
                             std::size_t k) {
    for (std::size_t col = 0; col < k; ++col) {
        double norm = 0.0;
        for (std::size_t i = col; i < m; ++i) norm = std::hypot(norm, a[col * m + i]);
        if (norm == 0.0) fail(ErrorKind::DegenerateDesign, "design matrix is rank deficient");
        double head = a[col * m + col];
        const double alpha = head > 0.0 ? -norm : norm;
        // Householder vector u stored in place of the column tail.
        a[col * m + col] = head - alpha;
        double unorm2 = 0.0;
        for (std::size_t i = col; i < m; ++i) unorm2 += a[col * m + i] * a[col * m + i];
        if (unorm2 == 0.0) fail(ErrorKind::DegenerateDesign, "design matrix is rank deficient");
        for (std::size_t j = col + 1; j < k; ++j) {
            double dot = 0.0;
            for (std::size_t i = col; i < m; ++i) dot += a[col * m + i] * a[j * m + i];
            const double f = 2.0 * dot / unorm2;
            for (std::size_t i = col; i < m; ++i) a[j * m + i] -= f * a[col * m + i];
        }
        double dot = 0.0;
        for (std::size_t i = col; i < m; ++i) dot += a[col * m + i] * y[i];
        const double f = 2.0 * dot / unorm2;
        for (std::size_t i = col; i < m; ++i) y[i] -= f * a[col * m + i];
        a[col * m + col] = alpha; // R diagonal
    }
    // Back substitution on the upper triangle of R.
    std::vector<double> c(k, 0.0);
    for (std::size_t row = k; row-- > 0;) {
        double sum = y[row];
        for (std::size_t j = row + 1; j < k; ++j) sum -= a[j * m + row] * c[j];
        const double diag = a[row * m + row];
        if (diag == 0.0) fail(ErrorKind::DegenerateDesign, "design matrix is rank deficient");
        c[row] = sum / diag;
    }
    return c;
}

double eval_poly(const std::vector<double>& coeffs, double x) {
    double acc = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

} // namespace

CalibrationModel fit(const std::vector<CalibrationPoint>& points, ModelForm form,
                     const std::string& subject_id) {
    const std::size_t k = form == ModelForm::Linear ? 2 : 3;
    const std::size_t m = points.size();
    if (m < k)
        fail(ErrorKind::Underdetermined, std::to_string(m) + " points cannot determine " +
                                             std::to_string(k) + " coefficients");

    std::vector<double> xs(m), ys(m);
    for (std::size_t i = 0; i < m; ++i) {
        xs[i] = points[i].mean_peak_g;
        ys[i] = points[i].mean_step_length_m;
    }
    std::vector<double> distinct = xs;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 2)
        fail(ErrorKind::DegenerateDesign, "all calibration x values are identical");
    if (form == ModelForm::Quadratic && distinct.size() < 3)
        fail(ErrorKind::DegenerateDesign,
             "quadratic fit needs at least 3 distinct x values");

    std::vector<double> a(m * k);
    for (std::size_t i = 0; i < m; ++i) {
        double p = 1.0;
        for (std::size_t j = 0; j < k; ++j) {
            a[j * m + i] = p;
            p *= xs[i];
        }
    }

    CalibrationModel model;
    model.subject_id = subject_id;
    model.form = form;
    model.coefficients = qr_solve(std::move(a), ys, m, k);
    model.fit_points = points;
    double ss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = points[i].mean_step_length_m - eval_poly(model.coefficients, xs[i]);
        ss += r * r;
    }
    model.residual_rms_m = std::sqrt(ss / static_cast<double>(m));
    model.domain_lo_g = *std::min_element(xs.begin(), xs.end());
    model.domain_hi_g = *std::max_element(xs.begin(), xs.end());
    return model;
}

StepLengthPrediction predict_step_length(const CalibrationModel& model, double peak_g) {
    if (!(peak_g > 0.0) || !std::isfinite(peak_g))
        fail(ErrorKind::Value, "peak acceleration must be positive and finite");
    StepLengthPrediction out;
    const double raw = eval_poly(model.coefficients, peak_g);
    out.clamped = raw < 0.0;
    out.length_m = std::max(0.0, raw);
    const double mid = 0.5 * (model.domain_lo_g + model.domain_hi_g);
    const double half = 0.5 * (model.domain_hi_g - model.domain_lo_g);
    out.extrapolated = peak_g < mid - 1.5 * half || peak_g > mid + 1.5 * half;
    return out;
}

} // namespace gaitcf
