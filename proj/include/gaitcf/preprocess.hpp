#pragma once

#include <cstddef>
#include <vector>

#include "gaitcf/types.hpp"

namespace gaitcf {

// Low-pass filter configuration. Defaults isolate the step-frequency band
// (walking/running children step at roughly 0.5-3.5 Hz) while rejecting
// impact transients. All three knobs are surfaced on the CLI.
struct FilterSpec {
    double cutoff_hz = 3.0;
    int order = 4;          // one of 2, 4, 6, 8
    bool zero_phase = true; // forward-backward pass, zero group delay

    // Throws Spec error if the order is unsupported or the cutoff does not
    // sit strictly below the Nyquist frequency for rate_hz.
    void validate(double rate_hz) const;
};

// Anteroposterior channel after low-pass filtering. Same length and
// timestamps as the source series.
struct FilteredSeries {
    std::vector<double> t;
    std::vector<double> v;
    FilterSpec spec;
    std::size_t source_len = 0;
    double rate_hz = 0.0;
};

// One second-order section of the cascade, normalized (a0 == 1).
struct Biquad {
    double b0, b1, b2, a1, a2;
};

// Bilinear-transform Butterworth low-pass design as a cascade of order/2
// second-order sections. Each section has unity DC gain.
std::vector<Biquad> butterworth_lowpass_sections(double cutoff_hz, double rate_hz, int order);

// Filters a uniformly sampled signal. Endpoints are handled by reflecting
// 3*order samples about each end (point symmetry, so value and slope stay
// continuous), and each section starts from its constant steady state, which
// keeps the DC response exact. With spec.zero_phase the cascade runs forward
// then backward: zero net group delay, attenuation applied twice.
std::vector<double> lowpass_signal(const std::vector<double>& v, double rate_hz,
                                   const FilterSpec& spec);

// Convenience wrapper: filter the anteroposterior channel of a series.
// The series must be uniformly sampled (resample first if flagged irregular)
// and longer than 3*order samples.
FilteredSeries lowpass(const AccelSeries& series, const FilterSpec& spec);

// Linear-interpolation resampling onto the uniform grid t0 + k/rate_hz.
// The output spans the same time range; a trailing partial interval is
// dropped. Intended for traces flagged irregular; resampling is always an
// explicit step, never applied behind the caller's back.
AccelSeries resample_uniform(const AccelSeries& series, double rate_hz);

} // namespace gaitcf
