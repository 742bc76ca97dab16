#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gaitcf/types.hpp"

namespace gaitcf {

enum class Quantity { Steps, Distance, StepLength };
enum class Source { System, Pedometer };

std::string to_string(Quantity q);
std::string to_string(Source s);
std::optional<Quantity> parse_quantity(std::string_view label);
std::optional<Source> parse_source(std::string_view label);

// One (observed, calculated) comparison.
struct EstimatePair {
    std::string subject_id;
    Activity activity = Activity::ScL1;
    Cohort cohort = Cohort::Unknown;
    Quantity quantity = Quantity::Steps;
    Source source = Source::System;
    double v_o = 0.0; // observed ground truth
    double v_c = 0.0; // calculated estimate
};

// Aggregate error rate: 100 * sum|v_c - v_o| / sum|v_o|. All pairs must
// share quantity and source; a zero denominator is an error.
double error_rate(const std::vector<EstimatePair>& pairs);
double error_rate_values(const std::vector<double>& v_o, const std::vector<double>& v_c);

// As-printed variant |sum|v_c-v_o| - sum|v_o|| / sum|v_o| * 100, kept for
// auditing (reads near 100% for near-perfect estimators). Debug flag only.
double error_rate_literal(const std::vector<double>& v_o, const std::vector<double>& v_c);

// Signed per-pair percentage error 100*(v_c - v_o)/v_o (overestimates are
// positive). Pairs with v_o <= 0 are excluded (nullopt); callers tally them.
std::optional<double> pct_error(const EstimatePair& pair);

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;    // sample (n-1) standard deviation
    bool single = false; // n == 1, SD reported as 0
};

MeanSd mean_sd(const std::vector<double>& values);

struct PearsonResult {
    double r = 0.0;
    double p = 1.0; // two-sided, Student t with n-2 dof
};

// Sample Pearson correlation with two-sided p-value. Requires n >= 3 and
// nonzero variance in both lists. Perfectly collinear inputs report p == 0
// (serialized as "<1e-15").
PearsonResult pearson(const std::vector<double>& x, const std::vector<double>& y);

// 1 - (1 - R^2)(n-1)/(n-k-1) against the identity-line prediction
// (no refit). Requires n > k + 1 and nonzero total variance.
double adjusted_r2(const std::vector<double>& observed, const std::vector<double>& predicted,
                   int k);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
// Exposed for the statistics above and their reference tests.
double regularized_incomplete_beta(double a, double b, double x);

// Two-sided tail probability of Student t with dof degrees of freedom.
double student_t_two_sided_p(double t, int dof);

// One report row: metrics for a (activity set, cohort, source, quantity)
// group.
struct MetricsRow {
    std::string activity_set;
    std::string cohort;  // "TD", "DMD", "All"
    Source source = Source::System;
    Quantity quantity = Quantity::Steps;
    long n = 0;
    double gt_total = 0.0;
    double error_rate_pct = 0.0;
    double mean_pct_error = 0.0;
    double sd_pct_error = 0.0;
    double pearson_r = 0.0;  // NaN when undefined
    double p_value = 0.0;    // NaN when undefined
    double adjusted_r2 = 0.0; // NaN when undefined
    long n_excluded = 0;
};

struct ReportBuild {
    std::vector<MetricsRow> rows;
    int omitted_groups = 0; // empty (activity set, cohort, source, quantity) cells
};

// Rows for every populated combination of activity set {SC-L1..SC-L5
// individually, the calibration set combined, the evaluation set combined,
// all}, cohort {TD, DMD, All}, source and quantity. Optionally computes the
// as-printed error-rate variant instead of the default.
ReportBuild build_report(const std::vector<EstimatePair>& pairs, bool literal_error_rate = false);

} // namespace gaitcf
