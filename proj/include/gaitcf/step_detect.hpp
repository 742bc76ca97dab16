#pragma once

#include <cstddef>
#include <vector>

#include "gaitcf/preprocess.hpp"
#include "gaitcf/types.hpp"

namespace gaitcf {

// Peak selection thresholds. The separation floor admits fast running
// cadence (4 steps/s) while the prominence floor rejects filter ripple.
struct PeakParams {
    double min_separation_s = 0.25;
    double min_prominence_g = 0.05;

    void validate(double rate_hz) const; // min_separation must cover >= 2 samples
};

// One detected step. Windows partition the covered sample range:
// segment[i].end_idx == segment[i+1].start_idx. The window start doubles as
// the toe-off estimate (inter-peak midpoint); the initial contact is the
// dominant raw-signal peak inside the window.
struct StepSegment {
    int index = 0;
    std::size_t start_idx = 0;
    std::size_t end_idx = 0;
    std::size_t filtered_peak_idx = 0;
    std::size_t to_idx = 0;
    std::size_t ic_idx = 0;
    double ic_peak_g = 0.0;
    double duration_s = 0.0;
    bool degraded = false; // no interior raw local maximum; argmax fallback used
};

enum class EventKind { IC, TO };

struct GaitEvent {
    EventKind kind = EventKind::IC;
    double t = 0.0;
    std::size_t sample_idx = 0;
    double amplitude_g = 0.0;
};

// Step window produced by segment_steps; carries the filtered peak it was
// built around.
struct StepWindow {
    std::size_t start_idx = 0;
    std::size_t end_idx = 0;
    std::size_t peak_idx = 0;
};

// Strict local maxima of v with topographic prominence >= min_prominence_g
// and height >= min_prominence_g (step peaks are positive; the height floor
// keeps idle stretches between negative dips from registering), pairwise
// separated by >= min_separation_s. When two candidates are closer than the
// separation floor the higher one wins (ties: earlier index).
std::vector<std::size_t> find_peaks(const std::vector<double>& v, double rate_hz,
                                    const PeakParams& params);
std::vector<std::size_t> find_peaks(const FilteredSeries& filtered, const PeakParams& params);

// Number of filtered-signal peaks == number of steps.
std::size_t count_steps(const FilteredSeries& filtered, const PeakParams& params);

// Step windows from sorted peaks. Interior boundaries at floor((p+q)/2);
// the first/last windows extend by round(median inter-peak gap / 2), clamped
// to the series. A single peak yields one window spanning the whole series.
std::vector<StepWindow> segment_steps(const FilteredSeries& filtered,
                                      const std::vector<std::size_t>& peaks);

// Initial contact per window: the greatest interior local maximum of the raw
// anteroposterior signal (ties: earliest). A window with no interior local
// maximum falls back to its argmax and is flagged degraded. Fills every
// StepSegment field including durations.
std::vector<StepSegment> detect_ic(const std::vector<double>& raw_ap,
                                   const std::vector<double>& t,
                                   const std::vector<StepWindow>& windows);

// duration[i] = t[ic(i+1)] - t[ic(i)]; the last segment uses the tail rule
// t[end_idx] - t[ic_idx].
std::vector<double> step_durations(const std::vector<StepSegment>& segments,
                                   const std::vector<double>& t);

// Flattened event list (TO then IC per segment, time-ordered).
std::vector<GaitEvent> to_events(const std::vector<StepSegment>& segments,
                                 const std::vector<double>& t);

// Full detection pipeline on one series: low-pass, peaks, windows, ICs.
std::vector<StepSegment> detect_steps(const AccelSeries& series, const FilterSpec& filter,
                                      const PeakParams& params);

} // namespace gaitcf
