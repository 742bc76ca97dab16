#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "gaitcf/errors.hpp"
#include "gaitcf/step_detect.hpp"
#include "gaitcf/synth.hpp"

using namespace gaitcf;

namespace {

constexpr double kPi = std::numbers::pi;

FilteredSeries wrap_filtered(std::vector<double> v, double rate = 100.0) {
    FilteredSeries f;
    f.v = std::move(v);
    f.t.resize(f.v.size());
    for (std::size_t i = 0; i < f.t.size(); ++i) f.t[i] = static_cast<double>(i) / rate;
    f.rate_hz = rate;
    f.source_len = f.v.size();
    return f;
}

std::vector<double> gaussian_bump(std::size_t n, double center, double amp, double sigma) {
    std::vector<double> v(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = (static_cast<double>(i) - center) / sigma;
        v[i] = amp * std::exp(-0.5 * d * d);
    }
    return v;
}

} // namespace

TEST_CASE("find_peaks: all-zero signal has no peaks") {
    CHECK(find_peaks(std::vector<double>(1000, 0.0), 100.0, PeakParams{}).empty());
}

TEST_CASE("find_peaks: 1 Hz sine gives one peak per cycle at the argmax") {
    const double rate = 100.0;
    std::vector<double> v(1000);
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = std::sin(2.0 * kPi * static_cast<double>(i) / rate);

    // Oracle: per-cycle argmax over [k, k+1) seconds.
    std::vector<std::size_t> expected;
    for (std::size_t k = 0; k < 10; ++k) {
        std::size_t arg = k * 100;
        for (std::size_t i = k * 100; i < (k + 1) * 100; ++i)
            if (v[i] > v[arg]) arg = i;
        expected.push_back(arg);
    }

    CHECK(find_peaks(v, rate, PeakParams{}) == expected);
    CHECK(count_steps(wrap_filtered(v), PeakParams{}) == 10);
}

TEST_CASE("find_peaks: separation keeps the higher bump") {
    // Bumps 0.1 s apart with min separation 0.25 s.
    std::vector<double> v(400, 0.0);
    const std::vector<double> a = gaussian_bump(400, 150.0, 1.0, 3.0);
    const std::vector<double> b = gaussian_bump(400, 160.0, 0.8, 3.0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
    const std::vector<std::size_t> peaks = find_peaks(v, 100.0, PeakParams{});
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0] == 150);
}

TEST_CASE("find_peaks: prominence floor drops low-prominence bumps") {
    // Five tall spikes with a tiny bump between each pair.
    std::vector<double> v(500, 0.0);
    for (std::size_t c = 50; c < 500; c += 100) {
        v[c - 1] = 0.5;
        v[c] = 1.0;
        v[c + 1] = 0.5;
    }
    for (std::size_t c = 100; c < 450; c += 100) v[c] = 0.02;
    PeakParams strict;
    PeakParams loose;
    loose.min_prominence_g = 0.0;
    loose.min_separation_s = 0.02;
    CHECK(find_peaks(v, 100.0, strict).size() == 5);
    CHECK(find_peaks(v, 100.0, loose).size() == 9);
}

TEST_CASE("find_peaks parameter validation") {
    PeakParams p;
    p.min_separation_s = 0.01; // < 2 samples at 100 Hz
    CHECK_THROWS_AS(find_peaks(std::vector<double>(100, 0.0), 100.0, p), Error);
}

TEST_CASE("segment_steps: interior boundaries at floor midpoints") {
    const FilteredSeries f = wrap_filtered(std::vector<double>(400, 0.0));
    {
        const std::vector<StepWindow> w = segment_steps(f, {100, 200});
        REQUIRE(w.size() == 2);
        CHECK(w[0].end_idx == 150);
        CHECK(w[1].start_idx == 150);
        // half median gap = 50
        CHECK(w[0].start_idx == 50);
        CHECK(w[1].end_idx == 250);
    }
    {
        const std::vector<StepWindow> w = segment_steps(f, {100, 201});
        CHECK(w[0].end_idx == 150); // floor((100+201)/2)
    }
}

TEST_CASE("segment_steps: edge windows clamp to the series") {
    const FilteredSeries f = wrap_filtered(std::vector<double>(260, 0.0));
    const std::vector<StepWindow> w = segment_steps(f, {40, 140, 240});
    REQUIRE(w.size() == 3);
    CHECK(w[0].start_idx == 0); // 40 - 50 clamps
    CHECK(w[2].end_idx == 259); // 240 + 50 clamps to n-1
}

TEST_CASE("segment_steps: a single peak spans the whole series") {
    const FilteredSeries f = wrap_filtered(std::vector<double>(100, 0.0));
    const std::vector<StepWindow> w = segment_steps(f, {60});
    REQUIRE(w.size() == 1);
    CHECK(w[0].start_idx == 0);
    CHECK(w[0].end_idx == 99);
    CHECK(segment_steps(f, {}).empty());
}

TEST_CASE("detect_ic: picks the injected spike") {
    std::vector<double> raw(200, 0.0);
    std::vector<double> t(200);
    for (std::size_t i = 0; i < 200; ++i) t[i] = static_cast<double>(i) / 100.0;

    raw[37] = 2.0;
    const std::vector<StepSegment> segs = detect_ic(raw, t, {{0, 100, 50}});
    REQUIRE(segs.size() == 1);
    CHECK(segs[0].ic_idx == 37);
    CHECK(segs[0].ic_peak_g == 2.0);
    CHECK(segs[0].to_idx == 0);
    CHECK_FALSE(segs[0].degraded);
}

TEST_CASE("detect_ic: argmax rule among several spikes") {
    std::vector<double> raw(200, 0.0);
    std::vector<double> t(200);
    for (std::size_t i = 0; i < 200; ++i) t[i] = static_cast<double>(i) / 100.0;
    raw[30] = 2.0;
    raw[60] = 1.5;
    const std::vector<StepSegment> segs = detect_ic(raw, t, {{0, 100, 45}});
    REQUIRE(segs.size() == 1);
    CHECK(segs[0].ic_idx == 30);
}

TEST_CASE("detect_ic: monotone window falls back to argmax and is flagged") {
    std::vector<double> raw(100);
    std::vector<double> t(100);
    for (std::size_t i = 0; i < 100; ++i) {
        raw[i] = static_cast<double>(i); // strictly rising, no interior maximum
        t[i] = static_cast<double>(i) / 100.0;
    }
    const std::vector<StepSegment> segs = detect_ic(raw, t, {{10, 50, 30}});
    REQUIRE(segs.size() == 1);
    CHECK(segs[0].degraded);
    CHECK(segs[0].ic_idx == 49);
}

TEST_CASE("step_durations: IC-to-IC plus tail rule") {
    std::vector<double> t(400);
    for (std::size_t i = 0; i < 400; ++i) t[i] = static_cast<double>(i) / 100.0;
    std::vector<double> raw(400, 0.0);
    raw[100] = 1.0;
    raw[150] = 1.0;
    raw[210] = 1.0;
    const std::vector<StepSegment> segs =
        detect_ic(raw, t, {{80, 120, 100}, {120, 180, 150}, {180, 260, 210}});
    const std::vector<double> d = step_durations(segs, t);
    REQUIRE(d.size() == 3);
    CHECK(d[0] == doctest::Approx(0.50));
    CHECK(d[1] == doctest::Approx(0.60));
    CHECK(d[2] == doctest::Approx(t[260] - t[210]));
    for (std::size_t i = 0; i < segs.size(); ++i)
        CHECK(segs[i].duration_s == doctest::Approx(d[i]));
}

TEST_CASE("step_durations: single step uses the tail rule") {
    std::vector<double> t(100);
    for (std::size_t i = 0; i < 100; ++i) t[i] = static_cast<double>(i) / 100.0;
    std::vector<double> raw(100, 0.0);
    raw[40] = 1.0;
    const std::vector<StepSegment> segs = detect_ic(raw, t, {{0, 99, 40}});
    const std::vector<double> d = step_durations(segs, t);
    REQUIRE(d.size() == 1);
    CHECK(d[0] == doctest::Approx(t[99] - t[40]));
}

TEST_CASE("segments partition their range and events alternate") {
    const synth::GaitProfile profile;
    const synth::GeneratedActivity gen = synth::generate_activity(
        profile, Activity::ScL3, synth::ActivityGoal{20.0, std::nullopt}, 11);
    const std::vector<StepSegment> segs = detect_steps(gen.series, FilterSpec{}, PeakParams{});
    REQUIRE(segs.size() >= 2);
    for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
        CHECK(segs[i].end_idx == segs[i + 1].start_idx);
        CHECK(segs[i].start_idx < segs[i].end_idx);
        CHECK(segs[i].start_idx <= segs[i].ic_idx);
        CHECK(segs[i].ic_idx <= segs[i].end_idx);
    }
    const std::vector<GaitEvent> events = to_events(segs, gen.series.times());
    CHECK(events.size() == 2 * segs.size());
    for (std::size_t i = 0; i < events.size(); ++i) {
        CHECK(events[i].kind == (i % 2 == 0 ? EventKind::TO : EventKind::IC));
        if (i > 0) CHECK(events[i].t >= events[i - 1].t);
    }
}

TEST_CASE("synthetic trace with 42 steps is counted exactly") {
    synth::GaitProfile profile;
    profile.cadence_steps_per_s = 2.0;
    const synth::GeneratedActivity gen = synth::generate_activity(
        profile, Activity::ScL3, synth::ActivityGoal{21.0, std::nullopt}, 5);
    REQUIRE(gen.truth.step_count == 42);
    const FilteredSeries filtered = lowpass(gen.series, FilterSpec{});
    CHECK(count_steps(filtered, PeakParams{}) == 42);
}

TEST_CASE("every injected IC falls strictly inside exactly one window") {
    const synth::GaitProfile profile;
    const synth::GeneratedActivity gen = synth::generate_activity(
        profile, Activity::ScL2, synth::ActivityGoal{30.0, std::nullopt}, 12);
    const FilteredSeries filtered = lowpass(gen.series, FilterSpec{});
    const std::vector<StepWindow> windows =
        segment_steps(filtered, find_peaks(filtered, PeakParams{}));
    REQUIRE(windows.size() == static_cast<std::size_t>(gen.truth.step_count));
    for (std::size_t ic : gen.truth.ic_indices) {
        int containing = 0;
        for (const StepWindow& w : windows)
            if (ic > w.start_idx && ic < w.end_idx) ++containing;
        CHECK(containing == 1);
    }
}

TEST_CASE("time-shift equivariance: prepended silence shifts every index") {
    synth::GaitProfile profile;
    const synth::GeneratedActivity gen = synth::generate_activity(
        profile, Activity::ScL3, synth::ActivityGoal{12.0, std::nullopt}, 21);
    const std::vector<double> az = gen.series.anteroposterior();

    const std::size_t shift = 150;
    std::vector<AccelSample> shifted(az.size() + shift);
    for (std::size_t i = 0; i < shift; ++i)
        shifted[i] = {static_cast<double>(i) / 100.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < az.size(); ++i)
        shifted[shift + i] = {static_cast<double>(shift + i) / 100.0, 0.0, 0.0, az[i]};

    const std::vector<StepSegment> base = detect_steps(gen.series, FilterSpec{}, PeakParams{});
    const std::vector<StepSegment> moved =
        detect_steps(AccelSeries(std::move(shifted), 100.0), FilterSpec{}, PeakParams{});
    REQUIRE(base.size() == moved.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(moved[i].ic_idx == base[i].ic_idx + shift);
        CHECK(moved[i].filtered_peak_idx == base[i].filtered_peak_idx + shift);
    }
}

TEST_CASE("amplitude-scale equivariance when the prominence floor scales too") {
    const synth::GaitProfile profile;
    const synth::GeneratedActivity gen = synth::generate_activity(
        profile, Activity::ScL4, synth::ActivityGoal{15.0, std::nullopt}, 31);
    const FilteredSeries filtered = lowpass(gen.series, FilterSpec{});

    const double c = 3.7;
    FilteredSeries scaled = filtered;
    for (double& v : scaled.v) v *= c;

    PeakParams base;
    PeakParams scaled_params;
    scaled_params.min_prominence_g = base.min_prominence_g * c;
    CHECK(find_peaks(filtered, base) == find_peaks(scaled, scaled_params));
}

TEST_CASE("concatenation with a silent gap preserves IC events") {
    synth::GaitProfile profile;
    const synth::GeneratedActivity a = synth::generate_activity(
        profile, Activity::ScL3, synth::ActivityGoal{12.0, std::nullopt}, 41);
    const synth::GeneratedActivity b = synth::generate_activity(
        profile, Activity::ScL3, synth::ActivityGoal{12.0, std::nullopt}, 42);

    const std::vector<double> az_a = a.series.anteroposterior();
    const std::vector<double> az_b = b.series.anteroposterior();
    const std::size_t gap = 250; // 2.5 s of silence
    std::vector<AccelSample> joined(az_a.size() + gap + az_b.size());
    for (std::size_t i = 0; i < joined.size(); ++i) {
        double v = 0.0;
        if (i < az_a.size())
            v = az_a[i];
        else if (i >= az_a.size() + gap)
            v = az_b[i - az_a.size() - gap];
        joined[i] = {static_cast<double>(i) / 100.0, 0.0, 0.0, v};
    }

    const std::vector<StepSegment> sa = detect_steps(a.series, FilterSpec{}, PeakParams{});
    const std::vector<StepSegment> sb = detect_steps(b.series, FilterSpec{}, PeakParams{});
    const std::vector<StepSegment> sj =
        detect_steps(AccelSeries(std::move(joined), 100.0), FilterSpec{}, PeakParams{});

    REQUIRE(sj.size() == sa.size() + sb.size());
    std::vector<std::size_t> expected_ics;
    for (const StepSegment& s : sa) expected_ics.push_back(s.ic_idx);
    for (const StepSegment& s : sb) expected_ics.push_back(s.ic_idx + az_a.size() + gap);
    for (std::size_t i = 0; i < sj.size(); ++i) CHECK(sj[i].ic_idx == expected_ics[i]);
}
