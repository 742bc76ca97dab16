#pragma once

#include <array>
#include <string>
#include <vector>

#include "gaitcf/step_detect.hpp"
#include "gaitcf/types.hpp"

namespace gaitcf {

inline constexpr int kCyclePhasePoints = 101; // 0%,1%,...,100%

// One step cycle (IC to next IC) resampled onto the fixed phase grid.
struct NormalizedCycle {
    std::string subject_id;
    Activity activity = Activity::ScL1;
    int step_index = 0;
    std::array<double, kCyclePhasePoints> samples{};
};

// Pointwise mean and population SD across a set of normalized cycles.
struct CompositeMap {
    std::array<double, kCyclePhasePoints> mean_cycle{};
    std::array<double, kCyclePhasePoints> sd_cycle{};
    int n_cycles = 0;
};

// Linear interpolation of raw_ap[ic_start..ic_end] onto 101 equispaced phase
// points; endpoints coincide with the raw values at the two ICs. Segments
// shorter than 4 samples raise a short-cycle error.
NormalizedCycle normalize_cycle(const std::vector<double>& raw_ap, std::size_t ic_start,
                                std::size_t ic_end);

CompositeMap composite(const std::vector<NormalizedCycle>& cycles);

struct CycleExtraction {
    std::vector<NormalizedCycle> cycles;
    int skipped = 0; // cycles dropped by the short-cycle rule
};

// Cycles between consecutive detected ICs (N segments -> N-1 cycles).
CycleExtraction extract_cycles(const std::vector<double>& raw_ap,
                               const std::vector<StepSegment>& segments,
                               const std::string& subject_id, Activity activity);

} // namespace gaitcf
