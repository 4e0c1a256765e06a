#include "gdlab/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace gdlab {

std::string format_double(double v, int precision) {
    if (!std::isfinite(v)) throw std::logic_error("refusing to serialize a non-finite value");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    return buf;
}

std::string csv_field(const std::string& raw) {
    if (raw.find_first_of(",\"\n\r") == std::string::npos) return raw;
    std::string quoted = "\"";
    for (char c : raw) {
        quoted.push_back(c);
        if (c == '"') quoted.push_back('"');
    }
    quoted.push_back('"');
    return quoted;
}

void JsonWriter::separator() {
    if (pending_key_) {
        pending_key_ = false;
        return; // value follows its key, no comma
    }
    if (!first_.empty()) {
        if (first_.back()) {
            first_.back() = false;
        } else {
            out_.push_back(',');
        }
    }
}

JsonWriter& JsonWriter::begin_object() {
    separator();
    out_.push_back('{');
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    out_.push_back('}');
    first_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    separator();
    out_.push_back('[');
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    out_.push_back(']');
    first_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::key(const std::string& name) {
    separator();
    out_.push_back('"');
    out_ += name;
    out_ += "\":";
    pending_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(double v) {
    separator();
    out_ += format_double(v, precision_);
    return *this;
}

JsonWriter& JsonWriter::value(u64 v) {
    separator();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(int v) {
    separator();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(bool v) {
    separator();
    out_ += v ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::value(const char* v) { return value(std::string(v)); }

JsonWriter& JsonWriter::value(const std::string& v) {
    separator();
    out_.push_back('"');
    for (char c : v) {
        switch (c) {
            case '"': out_ += "\\\""; break;
            case '\\': out_ += "\\\\"; break;
            case '\n': out_ += "\\n"; break;
            case '\r': out_ += "\\r"; break;
            case '\t': out_ += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out_ += buf;
                } else {
                    out_.push_back(c);
                }
        }
    }
    out_.push_back('"');
    return *this;
}

std::string JsonWriter::take() {
    out_.push_back('\n');
    return std::move(out_);
}

namespace {

void write_series(JsonWriter& w, const SeriesEstimate& s) {
    w.begin_object();
    w.key("value").value(s.value);
    w.key("truncation").value(s.truncation);
    w.key("tail_bound").value(s.tail_bound);
    w.key("tail_kind").value(s.tail_kind == TailKind::rigorous ? "rigorous" : "heuristic");
    w.end_object();
}

} // namespace

std::string constants_json(const std::vector<ConstantsRow>& rows, u64 prime_cutoff,
                           int precision) {
    JsonWriter w(precision);
    w.begin_object();
    w.key("schema").value(1);
    w.key("command").value("constants");
    w.key("prime_cutoff").value(prime_cutoff);
    w.key("results").begin_array();
    for (const ConstantsRow& r : rows) {
        w.begin_object();
        w.key("n").value(r.N);
        w.key("singular_series");
        write_series(w, r.singular);
        w.key("squarefree_density");
        write_series(w, r.density);
        w.key("density_series_partial");
        write_series(w, r.density_series);
        w.key("least_nondividing_odd_prime").value(r.least_nondividing_prime);
        w.key("series_truncation").value(r.series_truncation);
        w.key("gy_sum_log").value(r.gy_log);
        w.key("gy_sum_plain").value(r.gy_plain);
        w.key("weighted_mobius_log_sum").value(r.weighted_log);
        w.key("mobius_double_sum").begin_object();
        w.key("value").value(r.double_sum);
        w.key("theta").value(r.double_sum_theta);
        w.key("B").value(r.double_sum_B);
        w.end_object();
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.take();
}

std::string constants_csv(const std::vector<ConstantsRow>& rows, int precision) {
    std::string out =
        "n,singular_series,singular_tail,squarefree_density,density_tail,"
        "density_series_partial,least_nondividing_odd_prime,series_truncation,"
        "gy_sum_log,gy_sum_plain,weighted_mobius_log_sum,mobius_double_sum,"
        "double_sum_theta,double_sum_B\r\n";
    for (const ConstantsRow& r : rows) {
        out += std::to_string(r.N);
        out += ',' + format_double(r.singular.value, precision);
        out += ',' + format_double(r.singular.tail_bound, precision);
        out += ',' + format_double(r.density.value, precision);
        out += ',' + format_double(r.density.tail_bound, precision);
        out += ',' + format_double(r.density_series.value, precision);
        out += ',' + std::to_string(r.least_nondividing_prime);
        out += ',' + format_double(r.series_truncation, precision);
        out += ',' + format_double(r.gy_log, precision);
        out += ',' + format_double(r.gy_plain, precision);
        out += ',' + format_double(r.weighted_log, precision);
        out += ',' + format_double(r.double_sum, precision);
        out += ',' + format_double(r.double_sum_theta, precision);
        out += ',' + std::to_string(r.double_sum_B);
        out += "\r\n";
    }
    return out;
}

namespace {

void write_report(JsonWriter& w, const DecompositionReport& r) {
    w.begin_object();
    w.key("n").value(r.params.N);
    w.key("odd_target").value(r.odd_target);
    w.key("params").begin_object();
    w.key("Q").value(r.params.Q);
    w.key("alpha").value(r.params.alpha);
    w.key("theta").value(r.params.theta);
    w.key("A").value(r.params.A);
    w.key("B").value(r.params.B);
    w.end_object();
    w.key("rtilde").value(r.rtilde);
    w.key("R0").value(r.r0);
    w.key("R1").value(r.r1);
    w.key("R2").value(r.r2);
    w.key("R3").value(r.r3);
    w.key("S1").value(r.s1);
    w.key("S2").value(r.s2);
    w.key("S3").value(r.s3);
    w.key("S4").value(r.s4);
    w.key("twisted_sum").value(r.twisted_sum);
    w.key("squarefree_weighted").value(r.squarefree_weighted);
    w.key("sq_identity_residual").value(r.sq_identity_residual);
    w.key("main_identity_residual").value(r.main_identity_residual);
    w.key("singular_series_used").value(r.singular_series_used);
    w.key("squarefree_density_used").value(r.squarefree_density_used);
    w.key("density_lower_bound").value(r.density_lower_bound);
    w.key("meets_lower_bound").value(r.meets_lower_bound);
    w.end_object();
}

} // namespace

std::string decomposition_json(const std::vector<DecompositionReport>& reports, int precision) {
    JsonWriter w(precision);
    w.begin_object();
    w.key("schema").value(1);
    w.key("command").value("decompose");
    w.key("reports").begin_array();
    for (const DecompositionReport& r : reports) write_report(w, r);
    w.end_array();
    w.end_object();
    return w.take();
}

std::string decomposition_csv(const std::vector<DecompositionReport>& reports, int precision) {
    std::string out =
        "n,odd_target,Q,alpha,theta,A,B,rtilde,R0,R1,R2,R3,S1,S2,S3,S4,"
        "twisted_sum,squarefree_weighted,sq_identity_residual,main_identity_residual,"
        "singular_series_used,squarefree_density_used,density_lower_bound,"
        "meets_lower_bound\r\n";
    for (const DecompositionReport& r : reports) {
        out += std::to_string(r.params.N);
        out += r.odd_target ? ",1" : ",0";
        out += ',' + format_double(r.params.Q, precision);
        out += ',' + format_double(r.params.alpha, precision);
        out += ',' + format_double(r.params.theta, precision);
        out += ',' + format_double(r.params.A, precision);
        out += ',' + std::to_string(r.params.B);
        for (double v : {r.rtilde, r.r0, r.r1, r.r2, r.r3, r.s1, r.s2, r.s3, r.s4,
                         r.twisted_sum, r.squarefree_weighted, r.sq_identity_residual,
                         r.main_identity_residual, r.singular_series_used,
                         r.squarefree_density_used, r.density_lower_bound})
            out += ',' + format_double(v, precision);
        out += r.meets_lower_bound ? ",1" : ",0";
        out += "\r\n";
    }
    return out;
}

std::string profiles_json(const std::vector<DiscrepancyProfile>& profiles, int precision) {
    JsonWriter w(precision);
    w.begin_object();
    w.key("schema").value(1);
    w.key("command").value("discrepancy");
    w.key("profiles").begin_array();
    for (const DiscrepancyProfile& p : profiles) {
        w.begin_object();
        w.key("n").value(p.N);
        w.key("q_max").value(p.q_max);
        w.key("mode").value(to_string(p.mode));
        w.key("kind").value(to_string(p.kind));
        w.key("comparator").value(to_string(p.comparator));
        w.key("per_q").begin_array();
        for (const auto& [q, d] : p.per_q) {
            w.begin_object();
            w.key("q").value(q);
            w.key("discrepancy").value(d);
            w.end_object();
        }
        w.end_array();
        w.key("skipped_q").begin_array();
        for (u64 q : p.skipped_q) w.value(q);
        w.end_array();
        w.key("total").value(p.total);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.take();
}

std::string profile_csv(const DiscrepancyProfile& profile, int precision) {
    std::string out = "q,discrepancy\r\n";
    for (const auto& [q, d] : profile.per_q) {
        out += std::to_string(q);
        out += ',' + format_double(d, precision);
        out += "\r\n";
    }
    return out;
}

std::string tables_json(const TablesSummary& summary, int precision) {
    JsonWriter w(precision);
    w.begin_object();
    w.key("schema").value(1);
    w.key("command").value("tables");
    w.key("limit").value(summary.limit);
    w.key("bytes").value(summary.bytes);
    w.key("build_seconds").value(summary.build_seconds);
    w.key("cache_written").value(summary.cache_written);
    w.key("cache_path").value(summary.cache_path);
    w.end_object();
    return w.take();
}

} // namespace gdlab
