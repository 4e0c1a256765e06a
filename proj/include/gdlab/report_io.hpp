#pragma once

#include <string>
#include <vector>

#include "gdlab/decomposition.hpp"
#include "gdlab/equidistribution.hpp"
#include "gdlab/run_config.hpp"

namespace gdlab {

// Hand-rolled JSON writer: fixed key order, floats through one snprintf
// path, so identical configs produce byte-identical documents.
class JsonWriter {
public:
    explicit JsonWriter(int precision) : precision_(precision) {}

    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& name);
    JsonWriter& value(double v);
    JsonWriter& value(u64 v);
    JsonWriter& value(int v);
    JsonWriter& value(bool v);
    JsonWriter& value(const char* v);
    JsonWriter& value(const std::string& v);

    std::string take();

private:
    void separator();
    std::string out_;
    std::vector<bool> first_; // per open scope
    bool pending_key_ = false;
    int precision_;
};

// %.{precision}g with non-finite values rejected.
std::string format_double(double v, int precision);

// RFC-4180 field quoting.
std::string csv_field(const std::string& raw);

struct ConstantsRow {
    u64 N = 0;
    SeriesEstimate singular;
    SeriesEstimate density;
    SeriesEstimate density_series;
    u64 least_nondividing_prime = 0;
    double gy_log = 0, gy_plain = 0, weighted_log = 0;
    double series_truncation = 0; // the R used for the three sums
    double double_sum = 0;        // the (d, b) route to the singular series
    double double_sum_theta = 0;
    u64 double_sum_B = 0;
};

std::string constants_json(const std::vector<ConstantsRow>& rows, u64 prime_cutoff,
                           int precision);
std::string constants_csv(const std::vector<ConstantsRow>& rows, int precision);

std::string decomposition_json(const std::vector<DecompositionReport>& reports, int precision);
std::string decomposition_csv(const std::vector<DecompositionReport>& reports, int precision);

std::string profiles_json(const std::vector<DiscrepancyProfile>& profiles, int precision);
// Exactly the documented two-column schema; one profile per document.
std::string profile_csv(const DiscrepancyProfile& profile, int precision);

struct TablesSummary {
    u64 limit = 0;
    double build_seconds = 0;
    u64 bytes = 0;
    std::string cache_path;
    bool cache_written = false;
};

std::string tables_json(const TablesSummary& summary, int precision);

} // namespace gdlab
