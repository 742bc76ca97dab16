#include "gaitcf/types.hpp"

#include <algorithm>
#include <cmath>

#include "gaitcf/errors.hpp"

namespace gaitcf {

std::string to_string(Activity a) {
    switch (a) {
        case Activity::ScL1: return "SC-L1";
        case Activity::ScL2: return "SC-L2";
        case Activity::ScL3: return "SC-L3";
        case Activity::ScL4: return "SC-L4";
        case Activity::ScL5: return "SC-L5";
        case Activity::SixMwt: return "6MWT";
        case Activity::HundredMrw: return "100MRW";
        case Activity::FreeWalk: return "FW";
    }
    return "?";
}

std::optional<Activity> parse_activity(std::string_view label) {
    for (Activity a : kAllActivities) {
        if (label == to_string(a)) return a;
    }
    return std::nullopt;
}

bool is_calibration_activity(Activity a) {
    switch (a) {
        case Activity::ScL1:
        case Activity::ScL2:
        case Activity::ScL3:
        case Activity::ScL4:
        case Activity::ScL5: return true;
        default: return false;
    }
}

std::string to_string(Cohort c) {
    switch (c) {
        case Cohort::TD: return "TD";
        case Cohort::DMD: return "DMD";
        case Cohort::Unknown: return "unknown";
    }
    return "?";
}

std::optional<Cohort> parse_cohort(std::string_view label) {
    if (label == "TD") return Cohort::TD;
    if (label == "DMD") return Cohort::DMD;
    if (label == "unknown") return Cohort::Unknown;
    return std::nullopt;
}

AccelSeries::AccelSeries(std::vector<AccelSample> samples, double nominal_rate_hz)
    : samples_(std::move(samples)), nominal_rate_hz_(nominal_rate_hz) {
    if (!(nominal_rate_hz_ > 0.0) || !std::isfinite(nominal_rate_hz_))
        fail(ErrorKind::Value, "nominal rate must be a positive finite value");
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const AccelSample& s = samples_[i];
        if (!std::isfinite(s.t) || s.t < 0.0)
            fail(ErrorKind::Value,
                 "timestamp at row " + std::to_string(i + 1) + " is not a non-negative finite value");
        if (!std::isfinite(s.ax) || !std::isfinite(s.ay) || !std::isfinite(s.az))
            fail(ErrorKind::Value, "non-finite acceleration at row " + std::to_string(i + 1));
        if (i > 0 && !(s.t > samples_[i - 1].t))
            fail(ErrorKind::Ordering,
                 "non-monotonic timestamp at row " + std::to_string(i + 1));
    }
    if (samples_.size() >= 2) {
        std::vector<double> dt(samples_.size() - 1);
        for (std::size_t i = 1; i < samples_.size(); ++i) dt[i - 1] = samples_[i].t - samples_[i - 1].t;
        std::nth_element(dt.begin(), dt.begin() + dt.size() / 2, dt.end());
        double hi = dt[dt.size() / 2];
        if (dt.size() % 2 == 0) {
            double lo = *std::max_element(dt.begin(), dt.begin() + dt.size() / 2);
            median_interval_s_ = 0.5 * (lo + hi);
        } else {
            median_interval_s_ = hi;
        }
        const double nominal_dt = 1.0 / nominal_rate_hz_;
        irregular_ = std::abs(median_interval_s_ - nominal_dt) > 0.2 * nominal_dt;
    }
}

std::vector<double> AccelSeries::times() const {
    std::vector<double> t(samples_.size());
    for (std::size_t i = 0; i < samples_.size(); ++i) t[i] = samples_[i].t;
    return t;
}

std::vector<double> AccelSeries::anteroposterior() const {
    std::vector<double> v(samples_.size());
    for (std::size_t i = 0; i < samples_.size(); ++i) v[i] = samples_[i].az;
    return v;
}

} // namespace gaitcf
