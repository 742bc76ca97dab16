#include "gaitcf/signal_io.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "gaitcf/errors.hpp"

namespace gaitcf {

namespace {

namespace fs = std::filesystem;

std::string fmt_fixed(double v) {
    if (v == 0.0) v = 0.0; // normalize -0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string fmt_audit(double v) {
    if (v == 0.0) v = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return buf;
}

// p-values span many decades; fixed decimals would flatten them.
std::string fmt_pvalue(double p) {
    if (std::isnan(p)) return "";
    if (p < 1e-15) return "<1e-15";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6e", p);
    return buf;
}

std::string fmt_metric(double v) {
    return std::isnan(v) ? std::string() : fmt_fixed(v);
}

std::string rstrip(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == '\n' || s.back() == ' '))
        s.pop_back();
    return s;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

double parse_double(const std::string& token, const std::string& where) {
    double v = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end)
        fail(ErrorKind::Format, "cannot parse number '" + token + "' " + where);
    return v;
}

long parse_long(const std::string& token, const std::string& where) {
    long v = 0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end)
        fail(ErrorKind::Format, "cannot parse integer '" + token + "' " + where);
    return v;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::Io, path + ": " + std::strerror(errno));
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary); // LF line endings everywhere
    if (!out)
        fail(ErrorKind::Io, path + ": " + std::strerror(errno));
    return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out)
        fail(ErrorKind::Io, path + ": " + std::strerror(errno));
}

} // namespace

// --- trace CSV ---

AccelSeries parse_accel_csv(const std::string& path, double nominal_rate_hz) {
    std::ifstream in = open_input(path);
    std::string line;
    if (!std::getline(in, line) || rstrip(line) != "t,x,y,z")
        fail(ErrorKind::Format, path + ": expected header 't,x,y,z'");

    std::vector<AccelSample> samples;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        line = rstrip(line);
        if (line.empty()) continue;
        ++row;
        const std::vector<std::string> f = split(line, ',');
        if (f.size() != 4)
            fail(ErrorKind::Format,
                 path + ": row " + std::to_string(row) + " has " + std::to_string(f.size()) +
                     " fields, expected 4");
        const std::string where = "at row " + std::to_string(row) + " of " + path;
        samples.push_back({parse_double(f[0], where), parse_double(f[1], where),
                           parse_double(f[2], where), parse_double(f[3], where)});
    }
    return AccelSeries(std::move(samples), nominal_rate_hz);
}

void write_accel_csv(const AccelSeries& series, const std::string& path) {
    std::ofstream out = open_output(path);
    out << "t,x,y,z\n";
    for (const AccelSample& s : series.samples())
        out << fmt_fixed(s.t) << ',' << fmt_fixed(s.ax) << ',' << fmt_fixed(s.ay) << ','
            << fmt_fixed(s.az) << '\n';
    finish_output(out, path);
}

// --- manifest ---

std::vector<ManifestEntry> parse_manifest(const std::string& path) {
    std::ifstream in = open_input(path);
    const fs::path base = fs::path(path).parent_path();

    std::string subject_id;
    Cohort cohort = Cohort::Unknown;
    std::vector<ManifestEntry> entries;
    bool in_entry = false;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = rstrip(line);
        if (line.empty() || line[0] == '#') continue;
        const std::size_t colon = line.find(':');
        if (colon == std::string::npos)
            fail(ErrorKind::Format,
                 path + ":" + std::to_string(lineno) + ": expected 'key: value'");
        const std::string key = line.substr(0, colon);
        std::string value = line.substr(colon + 1);
        while (!value.empty() && value.front() == ' ') value.erase(value.begin());
        const std::string where = "at line " + std::to_string(lineno) + " of " + path;

        if (key == "subject_id") {
            subject_id = value;
        } else if (key == "cohort") {
            const std::optional<Cohort> c = parse_cohort(value);
            if (!c) fail(ErrorKind::Format, "unknown cohort '" + value + "' " + where);
            cohort = *c;
        } else if (key == "activity") {
            const std::optional<Activity> a = parse_activity(value);
            if (!a)
                fail(ErrorKind::Enumeration, "unknown activity label '" + value + "' " + where);
            entries.emplace_back();
            entries.back().activity = *a;
            in_entry = true;
        } else if (!in_entry) {
            fail(ErrorKind::Format, "unknown key '" + key + "' " + where);
        } else if (key == "trace") {
            entries.back().trace_path = value;
        } else if (key == "observed_distance_m") {
            entries.back().observed_distance_m = parse_double(value, where);
        } else if (key == "observed_steps") {
            entries.back().observed_steps = parse_long(value, where);
        } else if (key == "observed_duration_s") {
            entries.back().observed_duration_s = parse_double(value, where);
        } else if (key == "pedometer_steps") {
            entries.back().pedometer_steps = parse_long(value, where);
        } else if (key == "pedometer_distance_m") {
            entries.back().pedometer_distance_m = parse_double(value, where);
        } else {
            fail(ErrorKind::Format, "unknown key '" + key + "' " + where);
        }
    }

    if (subject_id.empty())
        fail(ErrorKind::Completeness, path + ": manifest is missing subject_id");
    for (ManifestEntry& e : entries) {
        e.subject_id = subject_id;
        e.cohort = cohort;
        const std::string label = to_string(e.activity);
        if (e.trace_path.empty())
            fail(ErrorKind::Completeness, path + ": activity " + label + " has no trace path");
        const fs::path trace = fs::path(e.trace_path).is_absolute()
                                   ? fs::path(e.trace_path)
                                   : base / e.trace_path;
        if (!fs::exists(trace))
            fail(ErrorKind::Io, path + ": trace file for " + label + " not found: " + trace.string());
        e.trace_path = trace.string();
        if (is_calibration_activity(e.activity) &&
            (!e.observed_distance_m || !e.observed_steps))
            fail(ErrorKind::Completeness,
                 path + ": calibration activity " + label +
                     " is missing observed_distance_m or observed_steps");
    }
    return entries;
}

void write_manifest(const std::string& subject_id, Cohort cohort,
                    const std::vector<ManifestEntry>& entries, const std::string& path) {
    std::ofstream out = open_output(path);
    out << "subject_id: " << subject_id << '\n';
    out << "cohort: " << to_string(cohort) << '\n';
    for (const ManifestEntry& e : entries) {
        out << '\n';
        out << "activity: " << to_string(e.activity) << '\n';
        out << "trace: " << e.trace_path << '\n';
        if (e.observed_distance_m)
            out << "observed_distance_m: " << fmt_fixed(*e.observed_distance_m) << '\n';
        if (e.observed_steps) out << "observed_steps: " << *e.observed_steps << '\n';
        if (e.observed_duration_s)
            out << "observed_duration_s: " << fmt_fixed(*e.observed_duration_s) << '\n';
        if (e.pedometer_steps) out << "pedometer_steps: " << *e.pedometer_steps << '\n';
        if (e.pedometer_distance_m)
            out << "pedometer_distance_m: " << fmt_fixed(*e.pedometer_distance_m) << '\n';
    }
    finish_output(out, path);
}

ActivityRecord load_activity_record(const ManifestEntry& entry, double nominal_rate_hz) {
    return ActivityRecord{entry.subject_id,
                          entry.cohort,
                          entry.activity,
                          parse_accel_csv(entry.trace_path, nominal_rate_hz),
                          entry.observed_distance_m,
                          entry.observed_steps,
                          entry.observed_duration_s,
                          entry.pedometer_steps,
                          entry.pedometer_distance_m};
}

// --- events CSV ---

namespace {
constexpr const char* kEventsComment =
    "# to_t marks the inter-peak midpoint (toe-off estimate); lower confidence than ic_t";
constexpr const char* kEventsHeader =
    "step_index,start_t,to_t,ic_t,end_t,ic_peak_g,step_length_m";
} // namespace

std::vector<EventsRow> events_rows(const std::vector<StepSegment>& segments,
                                   const std::vector<double>& t,
                                   const std::vector<double>* step_lengths_m) {
    if (step_lengths_m && step_lengths_m->size() != segments.size())
        fail(ErrorKind::Value, "step-length list does not match the segment count");
    std::vector<EventsRow> rows;
    rows.reserve(segments.size());
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const StepSegment& seg = segments[i];
        EventsRow row;
        row.step_index = seg.index;
        row.start_t = t[seg.start_idx];
        row.to_t = t[seg.to_idx];
        row.ic_t = t[seg.ic_idx];
        row.end_t = t[seg.end_idx];
        row.ic_peak_g = seg.ic_peak_g;
        if (step_lengths_m) row.step_length_m = (*step_lengths_m)[i];
        rows.push_back(row);
    }
    return rows;
}

void write_events_csv(const std::vector<EventsRow>& rows, const std::string& path) {
    std::ofstream out = open_output(path);
    out << kEventsComment << '\n' << kEventsHeader << '\n';
    for (const EventsRow& r : rows) {
        out << r.step_index << ',' << fmt_fixed(r.start_t) << ',' << fmt_fixed(r.to_t) << ','
            << fmt_fixed(r.ic_t) << ',' << fmt_fixed(r.end_t) << ',' << fmt_fixed(r.ic_peak_g)
            << ',' << (r.step_length_m ? fmt_fixed(*r.step_length_m) : std::string()) << '\n';
    }
    finish_output(out, path);
}

std::vector<EventsRow> parse_events_csv(const std::string& path) {
    std::ifstream in = open_input(path);
    std::string line;
    bool have_header = false;
    std::vector<EventsRow> rows;
    std::size_t rowno = 0;
    while (std::getline(in, line)) {
        line = rstrip(line);
        if (line.empty() || line[0] == '#') continue;
        if (!have_header) {
            if (line != kEventsHeader)
                fail(ErrorKind::Format, path + ": unexpected events header '" + line + "'");
            have_header = true;
            continue;
        }
        ++rowno;
        const std::vector<std::string> f = split(line, ',');
        if (f.size() != 7)
            fail(ErrorKind::Format, path + ": row " + std::to_string(rowno) + " has " +
                                        std::to_string(f.size()) + " fields, expected 7");
        const std::string where = "at row " + std::to_string(rowno) + " of " + path;
        EventsRow row;
        row.step_index = static_cast<int>(parse_long(f[0], where));
        row.start_t = parse_double(f[1], where);
        row.to_t = parse_double(f[2], where);
        row.ic_t = parse_double(f[3], where);
        row.end_t = parse_double(f[4], where);
        row.ic_peak_g = parse_double(f[5], where);
        if (!f[6].empty()) row.step_length_m = parse_double(f[6], where);
        rows.push_back(row);
    }
    if (!have_header) fail(ErrorKind::Format, path + ": missing events header");
    return rows;
}

// --- report CSV ---

namespace {
constexpr const char* kReportHeader =
    "activity_set,cohort,source,quantity,n,gt_total,error_rate_pct,mean_pct_error,"
    "sd_pct_error,pearson_r,p_value,adjusted_r2";

double parse_metric(const std::string& token, const std::string& where) {
    if (token.empty()) return std::numeric_limits<double>::quiet_NaN();
    return parse_double(token, where);
}
} // namespace

void write_report(const std::vector<MetricsRow>& rows, const std::string& path) {
    std::ofstream out = open_output(path);
    out << kReportHeader << '\n';
    for (const MetricsRow& r : rows) {
        out << r.activity_set << ',' << r.cohort << ',' << to_string(r.source) << ','
            << to_string(r.quantity) << ',' << r.n << ',' << fmt_fixed(r.gt_total) << ','
            << fmt_metric(r.error_rate_pct) << ',' << fmt_metric(r.mean_pct_error) << ','
            << fmt_metric(r.sd_pct_error) << ',' << fmt_metric(r.pearson_r) << ','
            << fmt_pvalue(r.p_value) << ',' << fmt_metric(r.adjusted_r2) << '\n';
    }
    finish_output(out, path);
}

std::vector<MetricsRow> parse_report_csv(const std::string& path) {
    std::ifstream in = open_input(path);
    std::string line;
    if (!std::getline(in, line) || rstrip(line) != kReportHeader)
        fail(ErrorKind::Format, path + ": unexpected report header");
    std::vector<MetricsRow> rows;
    std::size_t rowno = 0;
    while (std::getline(in, line)) {
        line = rstrip(line);
        if (line.empty()) continue;
        ++rowno;
        const std::vector<std::string> f = split(line, ',');
        if (f.size() != 12)
            fail(ErrorKind::Format, path + ": row " + std::to_string(rowno) + " has " +
                                        std::to_string(f.size()) + " fields, expected 12");
        const std::string where = "at row " + std::to_string(rowno) + " of " + path;
        MetricsRow r;
        r.activity_set = f[0];
        r.cohort = f[1];
        const std::optional<Source> src = parse_source(f[2]);
        const std::optional<Quantity> qty = parse_quantity(f[3]);
        if (!src || !qty)
            fail(ErrorKind::Format, "unknown source/quantity " + where);
        r.source = *src;
        r.quantity = *qty;
        r.n = parse_long(f[4], where);
        r.gt_total = parse_double(f[5], where);
        r.error_rate_pct = parse_metric(f[6], where);
        r.mean_pct_error = parse_metric(f[7], where);
        r.sd_pct_error = parse_metric(f[8], where);
        r.pearson_r = parse_metric(f[9], where);
        r.p_value = f[10] == "<1e-15" ? 0.0 : parse_metric(f[10], where);
        r.adjusted_r2 = parse_metric(f[11], where);
        rows.push_back(std::move(r));
    }
    return rows;
}

// --- estimates CSV ---

namespace {
constexpr const char* kEstimatesHeader =
    "subject_id,cohort,activity,step_count,distance_m,avg_step_length_m,avg_step_duration_s,"
    "cadence_steps_per_min,speed_m_per_s,extrapolated_step_fraction,observed_steps,"
    "observed_distance_m,observed_duration_s,pedometer_steps,pedometer_distance_m";
} // namespace

void write_estimates_csv(const std::vector<EstimateRow>& rows, const std::string& path) {
    std::ofstream out = open_output(path);
    out << kEstimatesHeader << '\n';
    for (const EstimateRow& r : rows) {
        out << r.subject_id << ',' << to_string(r.cohort) << ',' << to_string(r.activity) << ','
            << r.estimate.step_count << ',' << fmt_fixed(r.estimate.distance_m) << ','
            << fmt_fixed(r.estimate.avg_step_length_m) << ','
            << fmt_fixed(r.estimate.avg_step_duration_s) << ','
            << fmt_fixed(r.estimate.cadence_steps_per_min) << ','
            << fmt_fixed(r.estimate.speed_m_per_s) << ','
            << fmt_fixed(r.estimate.extrapolated_step_fraction) << ','
            << (r.observed_steps ? std::to_string(*r.observed_steps) : std::string()) << ','
            << (r.observed_distance_m ? fmt_fixed(*r.observed_distance_m) : std::string()) << ','
            << (r.observed_duration_s ? fmt_fixed(*r.observed_duration_s) : std::string()) << ','
            << (r.pedometer_steps ? std::to_string(*r.pedometer_steps) : std::string()) << ','
            << (r.pedometer_distance_m ? fmt_fixed(*r.pedometer_distance_m) : std::string())
            << '\n';
    }
    finish_output(out, path);
}

std::vector<EstimateRow> parse_estimates_csv(const std::string& path) {
    std::ifstream in = open_input(path);
    std::string line;
    if (!std::getline(in, line) || rstrip(line) != kEstimatesHeader)
        fail(ErrorKind::Format, path + ": unexpected estimates header");
    std::vector<EstimateRow> rows;
    std::size_t rowno = 0;
    while (std::getline(in, line)) {
        line = rstrip(line);
        if (line.empty()) continue;
        ++rowno;
        const std::vector<std::string> f = split(line, ',');
        if (f.size() != 15)
            fail(ErrorKind::Format, path + ": row " + std::to_string(rowno) + " has " +
                                        std::to_string(f.size()) + " fields, expected 15");
        const std::string where = "at row " + std::to_string(rowno) + " of " + path;
        EstimateRow r;
        r.subject_id = f[0];
        const std::optional<Cohort> cohort = parse_cohort(f[1]);
        const std::optional<Activity> activity = parse_activity(f[2]);
        if (!cohort) fail(ErrorKind::Format, "unknown cohort '" + f[1] + "' " + where);
        if (!activity) fail(ErrorKind::Enumeration, "unknown activity '" + f[2] + "' " + where);
        r.cohort = *cohort;
        r.activity = *activity;
        r.estimate.activity = *activity;
        r.estimate.step_count = parse_long(f[3], where);
        r.estimate.distance_m = parse_double(f[4], where);
        r.estimate.avg_step_length_m = parse_double(f[5], where);
        r.estimate.avg_step_duration_s = parse_double(f[6], where);
        r.estimate.cadence_steps_per_min = parse_double(f[7], where);
        r.estimate.speed_m_per_s = parse_double(f[8], where);
        r.estimate.extrapolated_step_fraction = parse_double(f[9], where);
        r.estimate.empty = r.estimate.step_count == 0;
        if (!f[10].empty()) r.observed_steps = parse_long(f[10], where);
        if (!f[11].empty()) r.observed_distance_m = parse_double(f[11], where);
        if (!f[12].empty()) r.observed_duration_s = parse_double(f[12], where);
        if (!f[13].empty()) r.pedometer_steps = parse_long(f[13], where);
        if (!f[14].empty()) r.pedometer_distance_m = parse_double(f[14], where);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<EstimatePair> make_pairs(const std::vector<EstimateRow>& rows) {
    std::vector<EstimatePair> pairs;
    for (const EstimateRow& r : rows) {
        EstimatePair base;
        base.subject_id = r.subject_id;
        base.activity = r.activity;
        base.cohort = r.cohort;

        const bool have_obs_len = r.observed_steps && *r.observed_steps > 0 &&
                                  r.observed_distance_m;
        const double obs_len = have_obs_len ? *r.observed_distance_m /
                                                  static_cast<double>(*r.observed_steps)
                                            : 0.0;
        if (r.observed_steps) {
            EstimatePair p = base;
            p.quantity = Quantity::Steps;
            p.source = Source::System;
            p.v_o = static_cast<double>(*r.observed_steps);
            p.v_c = static_cast<double>(r.estimate.step_count);
            pairs.push_back(p);
            if (r.pedometer_steps) {
                p.source = Source::Pedometer;
                p.v_c = static_cast<double>(*r.pedometer_steps);
                pairs.push_back(p);
            }
        }
        if (r.observed_distance_m) {
            EstimatePair p = base;
            p.quantity = Quantity::Distance;
            p.source = Source::System;
            p.v_o = *r.observed_distance_m;
            p.v_c = r.estimate.distance_m;
            pairs.push_back(p);
            if (r.pedometer_distance_m) {
                p.source = Source::Pedometer;
                p.v_c = *r.pedometer_distance_m;
                pairs.push_back(p);
            }
        }
        if (have_obs_len) {
            EstimatePair p = base;
            p.quantity = Quantity::StepLength;
            p.source = Source::System;
            p.v_o = obs_len;
            p.v_c = r.estimate.avg_step_length_m;
            pairs.push_back(p);
            if (r.pedometer_steps && *r.pedometer_steps > 0 && r.pedometer_distance_m) {
                p.source = Source::Pedometer;
                p.v_c = *r.pedometer_distance_m / static_cast<double>(*r.pedometer_steps);
                pairs.push_back(p);
            }
        }
    }
    return pairs;
}

// --- calibration model file ---

void write_model(const CalibrationModel& model, const std::string& path) {
    std::ofstream out = open_output(path);
    out << "subject_id: " << model.subject_id << '\n';
    out << "form: " << to_string(model.form) << '\n';
    out << "coefficients:";
    for (double c : model.coefficients) out << ' ' << fmt_audit(c);
    out << '\n';
    out << "residual_rms_m: " << fmt_audit(model.residual_rms_m) << '\n';
    out << "domain_g: " << fmt_audit(model.domain_lo_g) << ' ' << fmt_audit(model.domain_hi_g)
        << '\n';
    for (const CalibrationPoint& p : model.fit_points)
        out << "point: " << to_string(p.activity) << ' ' << fmt_audit(p.mean_peak_g) << ' '
            << fmt_audit(p.mean_step_length_m) << '\n';
    finish_output(out, path);
}

CalibrationModel read_model(const std::string& path) {
    std::ifstream in = open_input(path);
    CalibrationModel model;
    bool have_form = false, have_coeffs = false, have_domain = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = rstrip(line);
        if (line.empty() || line[0] == '#') continue;
        const std::size_t colon = line.find(':');
        if (colon == std::string::npos)
            fail(ErrorKind::Format, path + ":" + std::to_string(lineno) + ": expected 'key: value'");
        const std::string key = line.substr(0, colon);
        std::string value = line.substr(colon + 1);
        while (!value.empty() && value.front() == ' ') value.erase(value.begin());
        const std::string where = "at line " + std::to_string(lineno) + " of " + path;

        if (key == "subject_id") {
            model.subject_id = value;
        } else if (key == "form") {
            const std::optional<ModelForm> form = parse_model_form(value);
            if (!form) fail(ErrorKind::Format, "unknown model form '" + value + "' " + where);
            model.form = *form;
            have_form = true;
        } else if (key == "coefficients") {
            std::istringstream ss(value);
            std::string token;
            while (ss >> token) model.coefficients.push_back(parse_double(token, where));
            have_coeffs = true;
        } else if (key == "residual_rms_m") {
            model.residual_rms_m = parse_double(value, where);
        } else if (key == "domain_g") {
            std::istringstream ss(value);
            std::string lo, hi;
            if (!(ss >> lo >> hi)) fail(ErrorKind::Format, "domain needs two values " + where);
            model.domain_lo_g = parse_double(lo, where);
            model.domain_hi_g = parse_double(hi, where);
            have_domain = true;
        } else if (key == "point") {
            std::istringstream ss(value);
            std::string act, x, y;
            if (!(ss >> act >> x >> y)) fail(ErrorKind::Format, "point needs three values " + where);
            const std::optional<Activity> a = parse_activity(act);
            if (!a) fail(ErrorKind::Enumeration, "unknown activity '" + act + "' " + where);
            model.fit_points.push_back(
                {*a, parse_double(x, where), parse_double(y, where)});
        } else {
            fail(ErrorKind::Format, "unknown key '" + key + "' " + where);
        }
    }
    if (!have_form || !have_coeffs || !have_domain)
        fail(ErrorKind::Completeness, path + ": model file is missing form/coefficients/domain");
    const std::size_t expected = model.form == ModelForm::Linear ? 2 : 3;
    if (model.coefficients.size() != expected)
        fail(ErrorKind::Format, path + ": " + to_string(model.form) + " model needs " +
                                    std::to_string(expected) + " coefficients, found " +
                                    std::to_string(model.coefficients.size()));
    return model;
}

// --- gait map CSV ---

void write_gaitmap_csv(const std::vector<GaitMapBlock>& blocks, const std::string& path) {
    std::ofstream out = open_output(path);
    out << "subject_id,activity,phase_pct,mean_g,sd_g,n_cycles\n";
    for (const GaitMapBlock& b : blocks) {
        for (int k = 0; k < kCyclePhasePoints; ++k) {
            const auto i = static_cast<std::size_t>(k);
            out << b.subject_id << ',' << b.activity_label << ',' << k << ','
                << fmt_fixed(b.map.mean_cycle[i]) << ',' << fmt_fixed(b.map.sd_cycle[i]) << ','
                << b.map.n_cycles << '\n';
        }
    }
    finish_output(out, path);
}

// --- synthetic truth sidecar ---

void write_truth(const std::string& subject_id, const synth::SynthTruth& truth,
                 const std::string& path) {
    std::ofstream out = open_output(path);
    out << "subject_id: " << subject_id << '\n';
    out << "activity: " << to_string(truth.activity) << '\n';
    out << "step_count: " << truth.step_count << '\n';
    out << "total_distance_m: " << fmt_audit(truth.total_distance_m) << '\n';
    out << "walk_duration_s: " << fmt_audit(truth.walk_duration_s) << '\n';
    out << "ic_times:";
    for (double t : truth.ic_times) out << ' ' << fmt_fixed(t);
    out << '\n';
    out << "ic_indices:";
    for (std::size_t i : truth.ic_indices) out << ' ' << i;
    out << '\n';
    out << "step_lengths_m:";
    for (double l : truth.step_lengths_m) out << ' ' << fmt_audit(l);
    out << '\n';
    finish_output(out, path);
}

synth::SynthTruth read_truth(const std::string& path) {
    std::ifstream in = open_input(path);
    synth::SynthTruth truth;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = rstrip(line);
        if (line.empty()) continue;
        const std::size_t colon = line.find(':');
        if (colon == std::string::npos)
            fail(ErrorKind::Format, path + ":" + std::to_string(lineno) + ": expected 'key: value'");
        const std::string key = line.substr(0, colon);
        std::string value = line.substr(colon + 1);
        while (!value.empty() && value.front() == ' ') value.erase(value.begin());
        const std::string where = "at line " + std::to_string(lineno) + " of " + path;

        if (key == "subject_id") {
            // informational; truth struct does not carry it
        } else if (key == "activity") {
            const std::optional<Activity> a = parse_activity(value);
            if (!a) fail(ErrorKind::Enumeration, "unknown activity '" + value + "' " + where);
            truth.activity = *a;
        } else if (key == "step_count") {
            truth.step_count = parse_long(value, where);
        } else if (key == "total_distance_m") {
            truth.total_distance_m = parse_double(value, where);
        } else if (key == "walk_duration_s") {
            truth.walk_duration_s = parse_double(value, where);
        } else if (key == "ic_times") {
            std::istringstream ss(value);
            std::string token;
            while (ss >> token) truth.ic_times.push_back(parse_double(token, where));
        } else if (key == "ic_indices") {
            std::istringstream ss(value);
            std::string token;
            while (ss >> token)
                truth.ic_indices.push_back(static_cast<std::size_t>(parse_long(token, where)));
        } else if (key == "step_lengths_m") {
            std::istringstream ss(value);
            std::string token;
            while (ss >> token) truth.step_lengths_m.push_back(parse_double(token, where));
        } else {
            fail(ErrorKind::Format, "unknown key '" + key + "' " + where);
        }
    }
    return truth;
}

} // namespace gaitcf
