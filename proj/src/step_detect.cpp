#include "gaitcf/step_detect.hpp"

#include <algorithm>
#include <cmath>

#include "gaitcf/errors.hpp"

namespace gaitcf {

void PeakParams::validate(double rate_hz) const {
    if (!(min_separation_s > 0.0) || !std::isfinite(min_separation_s))
        fail(ErrorKind::Spec, "min separation must be positive");
    if (min_separation_s * rate_hz < 2.0)
        fail(ErrorKind::Spec, "min separation must cover at least 2 samples at " +
                                  std::to_string(rate_hz) + " Hz");
    if (min_prominence_g < 0.0 || !std::isfinite(min_prominence_g))
        fail(ErrorKind::Spec, "min prominence must be non-negative");
}

namespace {

// Topographic prominence of the strict local maximum at i: height above the
// higher of the two valley floors reached before a taller sample (or the
// signal edge) on each side.
double prominence_at(const std::vector<double>& v, std::size_t i) {
    double left_min = v[i];
    for (std::size_t j = i; j-- > 0;) {
        if (v[j] > v[i]) break;
        left_min = std::min(left_min, v[j]);
    }
    double right_min = v[i];
    for (std::size_t j = i + 1; j < v.size(); ++j) {
        if (v[j] > v[i]) break;
        right_min = std::min(right_min, v[j]);
    }
    return v[i] - std::max(left_min, right_min);
}

} // namespace

std::vector<std::size_t> find_peaks(const std::vector<double>& v, double rate_hz,
                                    const PeakParams& params) {
    params.validate(rate_hz);
    if (v.size() < 3) return {};

    // Height floor: anteroposterior step peaks are positive; without it a
    // flat stretch between two negative dips (an idle gap) counts as a peak,
    // since its prominence is measured from the dip floors.
    std::vector<std::size_t> candidates;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        if (v[i] > v[i - 1] && v[i] > v[i + 1] && v[i] >= params.min_prominence_g &&
            prominence_at(v, i) >= params.min_prominence_g)
            candidates.push_back(i);
    }

    // Separation: highest amplitude wins, earlier index on ties.
    std::vector<std::size_t> order = candidates;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (v[a] != v[b]) return v[a] > v[b];
        return a < b;
    });
    const double min_gap = params.min_separation_s * rate_hz;
    std::vector<std::size_t> kept;
    for (std::size_t i : order) {
        bool ok = true;
        for (std::size_t k : kept) {
            const double gap = i > k ? static_cast<double>(i - k) : static_cast<double>(k - i);
            if (gap < min_gap) {
                ok = false;
                break;
            }
        }
        if (ok) kept.push_back(i);
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

std::vector<std::size_t> find_peaks(const FilteredSeries& filtered, const PeakParams& params) {
    return find_peaks(filtered.v, filtered.rate_hz, params);
}

std::size_t count_steps(const FilteredSeries& filtered, const PeakParams& params) {
    return find_peaks(filtered, params).size();
}

std::vector<StepWindow> segment_steps(const FilteredSeries& filtered,
                                      const std::vector<std::size_t>& peaks) {
    if (peaks.empty()) return {};
    const std::size_t n = filtered.v.size();
    if (peaks.size() == 1) return {{0, n - 1, peaks[0]}};

    std::vector<double> gaps(peaks.size() - 1);
    for (std::size_t i = 1; i < peaks.size(); ++i)
        gaps[i - 1] = static_cast<double>(peaks[i] - peaks[i - 1]);
    std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
    double median_gap = gaps[gaps.size() / 2];
    if (gaps.size() % 2 == 0) {
        median_gap = 0.5 * (median_gap + *std::max_element(gaps.begin(), gaps.begin() + gaps.size() / 2));
    }
    const auto half = static_cast<std::size_t>(std::lround(median_gap / 2.0));

    std::vector<std::size_t> bounds;
    bounds.reserve(peaks.size() + 1);
    bounds.push_back(peaks.front() > half ? peaks.front() - half : 0);
    for (std::size_t i = 1; i < peaks.size(); ++i) bounds.push_back((peaks[i - 1] + peaks[i]) / 2);
    bounds.push_back(std::min(n - 1, peaks.back() + half));

    std::vector<StepWindow> windows(peaks.size());
    for (std::size_t i = 0; i < peaks.size(); ++i)
        windows[i] = {bounds[i], bounds[i + 1], peaks[i]};
    return windows;
}

std::vector<StepSegment> detect_ic(const std::vector<double>& raw_ap,
                                   const std::vector<double>& t,
                                   const std::vector<StepWindow>& windows) {
    if (windows.empty()) return {};
    std::vector<StepSegment> segments(windows.size());
    for (std::size_t w = 0; w < windows.size(); ++w) {
        const StepWindow& win = windows[w];
        StepSegment& seg = segments[w];
        seg.index = static_cast<int>(w);
        seg.start_idx = win.start_idx;
        seg.end_idx = win.end_idx;
        seg.filtered_peak_idx = win.peak_idx;
        seg.to_idx = win.start_idx;

        // Interior local maxima of the raw signal within [start, end);
        // the greatest wins, earliest on ties.
        bool found = false;
        std::size_t best = win.start_idx;
        for (std::size_t i = win.start_idx + 1; i + 1 < win.end_idx; ++i) {
            if (raw_ap[i] > raw_ap[i - 1] && raw_ap[i] > raw_ap[i + 1]) {
                if (!found || raw_ap[i] > raw_ap[best]) {
                    best = i;
                    found = true;
                }
            }
        }
        if (!found) {
            best = win.start_idx;
            for (std::size_t i = win.start_idx; i < win.end_idx; ++i)
                if (raw_ap[i] > raw_ap[best]) best = i;
            seg.degraded = true;
        }
        seg.ic_idx = best;
        seg.ic_peak_g = raw_ap[best];
    }
    const std::vector<double> durations = step_durations(segments, t);
    for (std::size_t i = 0; i < segments.size(); ++i) segments[i].duration_s = durations[i];
    return segments;
}

std::vector<double> step_durations(const std::vector<StepSegment>& segments,
                                   const std::vector<double>& t) {
    std::vector<double> out(segments.size());
    for (std::size_t i = 0; i + 1 < segments.size(); ++i)
        out[i] = t[segments[i + 1].ic_idx] - t[segments[i].ic_idx];
    if (!segments.empty())
        out.back() = t[segments.back().end_idx] - t[segments.back().ic_idx];
    return out;
}

std::vector<GaitEvent> to_events(const std::vector<StepSegment>& segments,
                                 const std::vector<double>& t) {
    std::vector<GaitEvent> events;
    events.reserve(2 * segments.size());
    for (const StepSegment& seg : segments) {
        events.push_back({EventKind::TO, t[seg.to_idx], seg.to_idx, 0.0});
        events.push_back({EventKind::IC, t[seg.ic_idx], seg.ic_idx, seg.ic_peak_g});
    }
    return events;
}

std::vector<StepSegment> detect_steps(const AccelSeries& series, const FilterSpec& filter,
                                      const PeakParams& params) {
    const FilteredSeries filtered = lowpass(series, filter);
    const std::vector<std::size_t> peaks = find_peaks(filtered, params);
    const std::vector<StepWindow> windows = segment_steps(filtered, peaks);
    return detect_ic(series.anteroposterior(), filtered.t, windows);
}

} // namespace gaitcf
