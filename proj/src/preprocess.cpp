#include "gaitcf/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gaitcf/errors.hpp"

namespace gaitcf {

void FilterSpec::validate(double rate_hz) const {
    if (order != 2 && order != 4 && order != 6 && order != 8)
        fail(ErrorKind::Spec, "filter order must be one of 2, 4, 6, 8 (got " +
                                  std::to_string(order) + ")");
    if (!(cutoff_hz > 0.0) || !std::isfinite(cutoff_hz))
        fail(ErrorKind::Spec, "cutoff must be a positive finite frequency");
    if (!(cutoff_hz < rate_hz / 2.0))
        fail(ErrorKind::Spec, "cutoff " + std::to_string(cutoff_hz) +
                                  " Hz must be strictly below the Nyquist frequency " +
                                  std::to_string(rate_hz / 2.0) + " Hz");
}

std::vector<Biquad> butterworth_lowpass_sections(double cutoff_hz, double rate_hz, int order) {
    // Analog prototype poles at e^{i pi (2k+n-1)/(2n)}, prewarped and mapped
    // with the bilinear transform; conjugate pairs become one section each.
    const double warp = std::tan(std::numbers::pi * cutoff_hz / rate_hz);
    const double w2 = warp * warp;
    std::vector<Biquad> sections;
    sections.reserve(static_cast<std::size_t>(order / 2));
    for (int k = 1; k <= order / 2; ++k) {
        const double theta = std::numbers::pi * (2.0 * k + order - 1.0) / (2.0 * order);
        const double zeta = -std::cos(theta);
        const double a0 = 1.0 + 2.0 * zeta * warp + w2;
        sections.push_back({w2 / a0, 2.0 * w2 / a0, w2 / a0, 2.0 * (w2 - 1.0) / a0,
                            (1.0 - 2.0 * zeta * warp + w2) / a0});
    }
    return sections;
}

namespace {

// Direct form II transposed, state initialized to the constant steady state
// for x[0] so a constant input maps to itself from the first sample.
void run_biquad(const Biquad& q, std::vector<double>& x) {
    double s1 = (q.b1 - q.a1 + q.b2 - q.a2) * x.front();
    double s2 = (q.b2 - q.a2) * x.front();
    for (double& xi : x) {
        const double y = q.b0 * xi + s1;
        s1 = q.b1 * xi - q.a1 * y + s2;
        s2 = q.b2 * xi - q.a2 * y;
        xi = y;
    }
}

void run_cascade(const std::vector<Biquad>& sections, std::vector<double>& x) {
    for (const Biquad& q : sections) run_biquad(q, x);
}

} // namespace

std::vector<double> lowpass_signal(const std::vector<double>& v, double rate_hz,
                                   const FilterSpec& spec) {
    spec.validate(rate_hz);
    const std::size_t pad = static_cast<std::size_t>(3 * spec.order);
    if (v.size() <= pad)
        fail(ErrorKind::Length, "series of length " + std::to_string(v.size()) +
                                    " is too short to filter (need more than " +
                                    std::to_string(pad) + " samples)");

    // Point-symmetric reflection about each endpoint.
    std::vector<double> x;
    x.reserve(v.size() + 2 * pad);
    for (std::size_t i = 0; i < pad; ++i) x.push_back(2.0 * v.front() - v[pad - i]);
    x.insert(x.end(), v.begin(), v.end());
    for (std::size_t i = 0; i < pad; ++i) x.push_back(2.0 * v.back() - v[v.size() - 2 - i]);

    const std::vector<Biquad> sections =
        butterworth_lowpass_sections(spec.cutoff_hz, rate_hz, spec.order);
    run_cascade(sections, x);
    if (spec.zero_phase) {
        std::reverse(x.begin(), x.end());
        run_cascade(sections, x);
        std::reverse(x.begin(), x.end());
    }
    return std::vector<double>(x.begin() + static_cast<std::ptrdiff_t>(pad),
                               x.end() - static_cast<std::ptrdiff_t>(pad));
}

FilteredSeries lowpass(const AccelSeries& series, const FilterSpec& spec) {
    if (series.size() < 2) fail(ErrorKind::Length, "series must have at least 2 samples");
    if (series.irregular())
        fail(ErrorKind::Spec,
             "series is flagged irregular; resample to a uniform rate before filtering");
    FilteredSeries out;
    out.t = series.times();
    out.spec = spec;
    out.source_len = series.size();
    out.rate_hz = series.nominal_rate_hz();
    out.v = lowpass_signal(series.anteroposterior(), out.rate_hz, spec);
    return out;
}

AccelSeries resample_uniform(const AccelSeries& series, double rate_hz) {
    if (series.size() < 2) fail(ErrorKind::Length, "resampling needs at least 2 samples");
    if (!(rate_hz > 0.0) || !std::isfinite(rate_hz))
        fail(ErrorKind::Value, "resampling rate must be positive and finite");
    const std::vector<AccelSample>& in = series.samples();
    for (std::size_t i = 1; i < in.size(); ++i) {
        if (!(in[i].t > in[i - 1].t))
            fail(ErrorKind::DegenerateInput,
                 "duplicate timestamp at row " + std::to_string(i + 1));
    }
    const double t0 = in.front().t;
    const double span = in.back().t - t0;
    const auto count = static_cast<std::size_t>(std::floor(span * rate_hz + 1e-9)) + 1;

    std::vector<AccelSample> out;
    out.reserve(count);
    std::size_t cursor = 0;
    for (std::size_t k = 0; k < count; ++k) {
        const double t = t0 + static_cast<double>(k) / rate_hz;
        while (cursor + 2 < in.size() && in[cursor + 1].t <= t) ++cursor;
        const AccelSample& a = in[cursor];
        const AccelSample& b = in[cursor + 1];
        const double w = std::clamp((t - a.t) / (b.t - a.t), 0.0, 1.0);
        out.push_back({t, a.ax + w * (b.ax - a.ax), a.ay + w * (b.ay - a.ay),
                       a.az + w * (b.az - a.az)});
    }
    return AccelSeries(std::move(out), rate_hz);
}

} // namespace gaitcf
