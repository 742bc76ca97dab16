#include "gaitcf/gaitmap.hpp"

#include <cmath>

#include "gaitcf/errors.hpp"

namespace gaitcf {

NormalizedCycle normalize_cycle(const std::vector<double>& raw_ap, std::size_t ic_start,
                                std::size_t ic_end) {
    if (ic_end <= ic_start || ic_end - ic_start < 4)
        fail(ErrorKind::ShortCycle, "cycle of " +
                                        std::to_string(ic_end > ic_start ? ic_end - ic_start : 0) +
                                        " samples is shorter than the 4-sample minimum");
    if (ic_end >= raw_ap.size())
        fail(ErrorKind::Value, "cycle end index past the end of the signal");

    NormalizedCycle cycle;
    const double span = static_cast<double>(ic_end - ic_start);
    for (int k = 0; k < kCyclePhasePoints; ++k) {
        const double pos = static_cast<double>(ic_start) + span * static_cast<double>(k) / 100.0;
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const double w = pos - static_cast<double>(lo);
        cycle.samples[static_cast<std::size_t>(k)] =
            lo + 1 <= ic_end ? raw_ap[lo] + w * (raw_ap[lo + 1] - raw_ap[lo]) : raw_ap[lo];
    }
    cycle.samples[0] = raw_ap[ic_start];
    cycle.samples[kCyclePhasePoints - 1] = raw_ap[ic_end];
    return cycle;
}

CompositeMap composite(const std::vector<NormalizedCycle>& cycles) {
    if (cycles.empty()) fail(ErrorKind::EmptyInput, "composite of zero cycles");
    CompositeMap map;
    map.n_cycles = static_cast<int>(cycles.size());
    const double n = static_cast<double>(cycles.size());
    for (int k = 0; k < kCyclePhasePoints; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        double sum = 0.0;
        for (const NormalizedCycle& c : cycles) sum += c.samples[idx];
        const double mean = sum / n;
        double ss = 0.0;
        for (const NormalizedCycle& c : cycles) {
            const double d = c.samples[idx] - mean;
            ss += d * d;
        }
        map.mean_cycle[idx] = mean;
        map.sd_cycle[idx] = std::sqrt(ss / n); // population SD; 0 when n == 1
    }
    return map;
}

CycleExtraction extract_cycles(const std::vector<double>& raw_ap,
                               const std::vector<StepSegment>& segments,
                               const std::string& subject_id, Activity activity) {
    CycleExtraction out;
    for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
        const std::size_t a = segments[i].ic_idx;
        const std::size_t b = segments[i + 1].ic_idx;
        if (b <= a || b - a < 4) {
            ++out.skipped;
            continue;
        }
        NormalizedCycle cycle = normalize_cycle(raw_ap, a, b);
        cycle.subject_id = subject_id;
        cycle.activity = activity;
        cycle.step_index = segments[i].index;
        out.cycles.push_back(std::move(cycle));
    }
    return out;
}

} // namespace gaitcf
