#include "gaitcf/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gaitcf/errors.hpp"

namespace gaitcf {

std::string to_string(Quantity q) {
    switch (q) {
        case Quantity::Steps: return "Steps";
        case Quantity::Distance: return "Distance";
        case Quantity::StepLength: return "StepLength";
    }
    return "?";
}

std::string to_string(Source s) {
    return s == Source::System ? "System" : "Pedometer";
}

std::optional<Quantity> parse_quantity(std::string_view label) {
    if (label == "Steps") return Quantity::Steps;
    if (label == "Distance") return Quantity::Distance;
    if (label == "StepLength") return Quantity::StepLength;
    return std::nullopt;
}

std::optional<Source> parse_source(std::string_view label) {
    if (label == "System") return Source::System;
    if (label == "Pedometer") return Source::Pedometer;
    return std::nullopt;
}

double error_rate_values(const std::vector<double>& v_o, const std::vector<double>& v_c) {
    if (v_o.empty() || v_o.size() != v_c.size())
        fail(ErrorKind::EmptyInput, "error rate needs matched non-empty observed/calculated lists");
    double resid = 0.0, denom = 0.0;
    for (std::size_t i = 0; i < v_o.size(); ++i) {
        resid += std::abs(v_c[i] - v_o[i]);
        denom += std::abs(v_o[i]);
    }
    if (!(denom > 0.0))
        fail(ErrorKind::DegenerateDenominator, "total observed magnitude is zero");
    return 100.0 * resid / denom;
}

double error_rate_literal(const std::vector<double>& v_o, const std::vector<double>& v_c) {
    if (v_o.empty() || v_o.size() != v_c.size())
        fail(ErrorKind::EmptyInput, "error rate needs matched non-empty observed/calculated lists");
    double resid = 0.0, denom = 0.0;
    for (std::size_t i = 0; i < v_o.size(); ++i) {
        resid += std::abs(v_c[i] - v_o[i]);
        denom += std::abs(v_o[i]);
    }
    if (!(denom > 0.0))
        fail(ErrorKind::DegenerateDenominator, "total observed magnitude is zero");
    return std::abs(resid - denom) / denom * 100.0;
}

double error_rate(const std::vector<EstimatePair>& pairs) {
    if (pairs.empty()) fail(ErrorKind::EmptyInput, "error rate of zero pairs");
    for (const EstimatePair& p : pairs) {
        if (p.quantity != pairs.front().quantity || p.source != pairs.front().source)
            fail(ErrorKind::Value, "error-rate pairs must share quantity and source");
    }
    std::vector<double> v_o(pairs.size()), v_c(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        v_o[i] = pairs[i].v_o;
        v_c[i] = pairs[i].v_c;
    }
    return error_rate_values(v_o, v_c);
}

std::optional<double> pct_error(const EstimatePair& pair) {
    if (!(pair.v_o > 0.0)) return std::nullopt;
    return 100.0 * (pair.v_c - pair.v_o) / pair.v_o;
}

MeanSd mean_sd(const std::vector<double>& values) {
    if (values.empty()) fail(ErrorKind::EmptyInput, "mean of zero values");
    // Welford's recurrence (the tests check it against a plain two-pass sum).
    MeanSd out;
    double mean = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double d = values[i] - mean;
        mean += d / static_cast<double>(i + 1);
        m2 += d * (values[i] - mean);
    }
    out.mean = mean;
    if (values.size() == 1) {
        out.sd = 0.0;
        out.single = true;
    } else {
        out.sd = std::sqrt(m2 / static_cast<double>(values.size() - 1));
    }
    return out;
}

namespace {

// Continued-fraction core of the regularized incomplete beta (modified
// Lentz iteration).
double beta_cf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

} // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) fail(ErrorKind::Value, "beta parameters must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double front =
        std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                 b * std::log1p(-x));
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, int dof) {
    if (dof < 1) fail(ErrorKind::Value, "degrees of freedom must be >= 1");
    if (!std::isfinite(t)) return 0.0;
    const double nu = static_cast<double>(dof);
    return regularized_incomplete_beta(nu / 2.0, 0.5, nu / (nu + t * t));
}

PearsonResult pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n != y.size()) fail(ErrorKind::Value, "correlation needs lists of equal length");
    if (n < 3) fail(ErrorKind::UndefinedCorrelation, "correlation needs at least 3 pairs");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (!(sxx > 0.0) || !(syy > 0.0))
        fail(ErrorKind::UndefinedCorrelation, "zero variance in correlation input");

    PearsonResult out;
    out.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    const double one_minus_r2 = (1.0 - out.r) * (1.0 + out.r);
    if (one_minus_r2 <= 0.0) {
        out.p = 0.0;
        return out;
    }
    const double t = out.r * std::sqrt(static_cast<double>(n - 2) / one_minus_r2);
    out.p = std::clamp(student_t_two_sided_p(t, static_cast<int>(n) - 2), 0.0, 1.0);
    return out;
}

double adjusted_r2(const std::vector<double>& observed, const std::vector<double>& predicted,
                   int k) {
    const std::size_t n = observed.size();
    if (n != predicted.size()) fail(ErrorKind::Value, "adjusted R^2 needs lists of equal length");
    if (k < 0) fail(ErrorKind::Value, "number of predictors must be non-negative");
    if (static_cast<long>(n) <= k + 1)
        fail(ErrorKind::Undefined, "adjusted R^2 needs n > k + 1");
    double mean = 0.0;
    for (double v : observed) mean += v;
    mean /= static_cast<double>(n);
    double ss_tot = 0.0, ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ss_tot += (observed[i] - mean) * (observed[i] - mean);
        ss_res += (observed[i] - predicted[i]) * (observed[i] - predicted[i]);
    }
    if (!(ss_tot > 0.0)) fail(ErrorKind::Undefined, "observed values have zero variance");
    const double r2 = 1.0 - ss_res / ss_tot;
    return 1.0 - (1.0 - r2) * static_cast<double>(n - 1) / static_cast<double>(n - 1 - k);
}

namespace {

struct ActivitySet {
    const char* label;
    bool (*contains)(Activity);
};

constexpr ActivitySet kActivitySets[] = {
    {"SC-L1", [](Activity a) { return a == Activity::ScL1; }},
    {"SC-L2", [](Activity a) { return a == Activity::ScL2; }},
    {"SC-L3", [](Activity a) { return a == Activity::ScL3; }},
    {"SC-L4", [](Activity a) { return a == Activity::ScL4; }},
    {"SC-L5", [](Activity a) { return a == Activity::ScL5; }},
    {"SC-L1..L5", [](Activity a) { return is_calibration_activity(a); }},
    {"6MWT+100MRW+FW", [](Activity a) { return !is_calibration_activity(a); }},
    {"All", [](Activity) { return true; }},
};

constexpr const char* kCohortLabels[] = {"TD", "DMD", "All"};

bool cohort_matches(const char* label, Cohort c) {
    if (std::string_view(label) == "All") return true;
    if (std::string_view(label) == "TD") return c == Cohort::TD;
    return c == Cohort::DMD;
}

} // namespace

ReportBuild build_report(const std::vector<EstimatePair>& pairs, bool literal_error_rate) {
    constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
    ReportBuild out;
    for (const ActivitySet& set : kActivitySets) {
        for (const char* cohort : kCohortLabels) {
            for (Source source : {Source::System, Source::Pedometer}) {
                for (Quantity quantity :
                     {Quantity::Steps, Quantity::Distance, Quantity::StepLength}) {
                    std::vector<double> v_o, v_c, errors;
                    long excluded = 0;
                    for (const EstimatePair& p : pairs) {
                        if (p.source != source || p.quantity != quantity) continue;
                        if (!set.contains(p.activity) || !cohort_matches(cohort, p.cohort))
                            continue;
                        v_o.push_back(p.v_o);
                        v_c.push_back(p.v_c);
                        if (const std::optional<double> e = pct_error(p))
                            errors.push_back(*e);
                        else
                            ++excluded;
                    }
                    if (v_o.empty()) {
                        ++out.omitted_groups;
                        continue;
                    }
                    MetricsRow row;
                    row.activity_set = set.label;
                    row.cohort = cohort;
                    row.source = source;
                    row.quantity = quantity;
                    row.n = static_cast<long>(v_o.size());
                    row.n_excluded = excluded;
                    for (double v : v_o) row.gt_total += v;

                    double denom = 0.0;
                    for (double v : v_o) denom += std::abs(v);
                    row.error_rate_pct =
                        denom > 0.0
                            ? (literal_error_rate ? error_rate_literal(v_o, v_c)
                                                  : error_rate_values(v_o, v_c))
                            : kNan;

                    if (!errors.empty()) {
                        const MeanSd ms = mean_sd(errors);
                        row.mean_pct_error = ms.mean;
                        row.sd_pct_error = ms.sd;
                    } else {
                        row.mean_pct_error = kNan;
                        row.sd_pct_error = kNan;
                    }

                    row.pearson_r = kNan;
                    row.p_value = kNan;
                    row.adjusted_r2 = kNan;
                    if (v_o.size() >= 3) {
                        try {
                            const PearsonResult pr = pearson(v_o, v_c);
                            row.pearson_r = pr.r;
                            row.p_value = pr.p;
                        } catch (const Error&) {
                            // zero variance: leave undefined
                        }
                        try {
                            row.adjusted_r2 = adjusted_r2(v_o, v_c, 1);
                        } catch (const Error&) {
                        }
                    }
                    out.rows.push_back(std::move(row));
                }
            }
        }
    }
    return out;
}

} // namespace gaitcf
