#include "gdlab/run_config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace gdlab {

using nlohmann::json;

DecompParams RunConfig::params_for(u64 N) const {
    DecompParams p = DecompParams::defaults(N, table_limit);
    if (theta) {
        p.theta = *theta;
        p.alpha = std::pow(static_cast<double>(N), p.theta);
    }
    if (A) {
        p.A = *A;
        // re-derive the B default under the new exponent
        const double b_raw = std::ceil(std::pow(std::log(static_cast<double>(N)), p.A + 4.0));
        const double b_cap = std::floor(std::sqrt(static_cast<double>(table_limit)));
        p.B = static_cast<u64>(std::max(1.0, std::min(b_raw, b_cap)));
    }
    if (Q) p.Q = *Q;
    if (alpha) p.alpha = *alpha;
    if (B) p.B = *B;
    return p;
}

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& field,
                       const std::string& what) {
    throw ConfigError(origin + ": field '" + field + "': " + what);
}

u64 get_u64(const json& j, const std::string& origin, const std::string& field) {
    if (!j.is_number_unsigned())
        fail(origin, field, "expected a non-negative integer");
    return j.get<u64>();
}

double get_double(const json& j, const std::string& origin, const std::string& field) {
    if (!j.is_number()) fail(origin, field, "expected a number");
    return j.get<double>();
}

std::string get_string(const json& j, const std::string& origin, const std::string& field) {
    if (!j.is_string()) fail(origin, field, "expected a string");
    return j.get<std::string>();
}

void parse_targets(const json& j, const std::string& origin, RunConfig& cfg) {
    if (j.is_array()) {
        for (const auto& e : j) cfg.targets.push_back(get_u64(e, origin, "targets[]"));
        return;
    }
    if (j.is_object()) {
        const u64 from = get_u64(j.at("from"), origin, "targets.from");
        const u64 to = get_u64(j.at("to"), origin, "targets.to");
        const u64 stride = j.contains("stride")
                               ? get_u64(j.at("stride"), origin, "targets.stride")
                               : 2;
        if (stride == 0) fail(origin, "targets.stride", "stride must be positive");
        if (to < from) fail(origin, "targets.to", "range end below range start");
        for (u64 n = from; n <= to; n += stride) cfg.targets.push_back(n);
        return;
    }
    fail(origin, "targets", "expected an array of N or {from, to, stride}");
}

} // namespace

RunConfig parse_config(const std::string& json_text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    if (!doc.is_object()) throw ConfigError(origin + ": top level must be a JSON object");

    RunConfig cfg;
    for (const auto& [key, value] : doc.items()) {
        if (key == "table_limit") {
            cfg.table_limit = get_u64(value, origin, key);
        } else if (key == "cache_path") {
            cfg.cache_path = get_string(value, origin, key);
        } else if (key == "targets") {
            parse_targets(value, origin, cfg);
        } else if (key == "prime_cutoff") {
            cfg.prime_cutoff = get_u64(value, origin, key);
        } else if (key == "params") {
            if (!value.is_object()) fail(origin, key, "expected an object");
            for (const auto& [pk, pv] : value.items()) {
                if (pk == "Q") cfg.Q = get_double(pv, origin, "params.Q");
                else if (pk == "alpha") cfg.alpha = get_double(pv, origin, "params.alpha");
                else if (pk == "theta") cfg.theta = get_double(pv, origin, "params.theta");
                else if (pk == "A") cfg.A = get_double(pv, origin, "params.A");
                else if (pk == "B") cfg.B = get_u64(pv, origin, "params.B");
                else fail(origin, "params." + pk, "unknown parameter");
            }
        } else if (key == "discrepancy") {
            if (!value.is_object()) fail(origin, key, "expected an object");
            DiscrepancySettings ds;
            for (const auto& [dk, dv] : value.items()) {
                if (dk == "q_max") {
                    ds.q_max = get_u64(dv, origin, "discrepancy.q_max");
                } else if (dk == "mode") {
                    if (!parse_mode(get_string(dv, origin, "discrepancy.mode"), ds.mode))
                        fail(origin, "discrepancy.mode",
                             "expected 'fixed_residue' or 'max_over_all'");
                } else if (dk == "kinds") {
                    if (!dv.is_array()) fail(origin, "discrepancy.kinds", "expected an array");
                    ds.kinds.clear();
                    for (const auto& e : dv) {
                        WeightKind k;
                        if (!parse_kind(get_string(e, origin, "discrepancy.kinds[]"), k))
                            fail(origin, "discrepancy.kinds[]",
                                 "expected psi_plain | mu_twisted | mu_twisted_log");
                        ds.kinds.push_back(k);
                    }
                } else if (dk == "comparator") {
                    if (!parse_comparator(get_string(dv, origin, "discrepancy.comparator"),
                                          ds.comparator))
                        fail(origin, "discrepancy.comparator",
                             "expected 'linear_y' or 'scaled_psi'");
                } else {
                    fail(origin, "discrepancy." + dk, "unknown field");
                }
            }
            if (ds.kinds.empty())
                fail(origin, "discrepancy.kinds", "at least one kind required");
            cfg.discrepancy = ds;
        } else if (key == "output") {
            if (!value.is_object()) fail(origin, key, "expected an object");
            for (const auto& [ok, ov] : value.items()) {
                if (ok == "format") {
                    const std::string f = get_string(ov, origin, "output.format");
                    if (f == "json") cfg.output.format = OutputFormat::json;
                    else if (f == "csv") cfg.output.format = OutputFormat::csv;
                    else fail(origin, "output.format", "expected 'json' or 'csv'");
                } else if (ok == "path") {
                    cfg.output.path = get_string(ov, origin, "output.path");
                } else if (ok == "precision") {
                    cfg.output.precision =
                        static_cast<int>(get_u64(ov, origin, "output.precision"));
                } else {
                    fail(origin, "output." + ok, "unknown field");
                }
            }
        } else {
            fail(origin, key, "unknown field");
        }
    }
    validate_config(cfg);
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

void validate_config(const RunConfig& config) {
    if (config.table_limit < 1) throw ConfigError("table_limit must be >= 1");
    for (u64 n : config.targets)
        if (n > config.table_limit)
            throw ConfigError("target N=" + std::to_string(n) +
                              " exceeds table_limit=" + std::to_string(config.table_limit));
    if (config.output.precision < 1 || config.output.precision > 17)
        throw ConfigError("output.precision must lie in [1, 17]");
    if (config.discrepancy && config.discrepancy->q_max < 1)
        throw ConfigError("discrepancy.q_max must be >= 1");
}

std::vector<u64> expand_range(const std::string& text) {
    u64 vals[3] = {0, 0, 2};
    int part = 0;
    std::string cur;
    auto flush = [&] {
        if (cur.empty() || part >= 3) throw ConfigError("bad range '" + text + "'");
        vals[part++] = std::stoull(cur);
        cur.clear();
    };
    for (char c : text) {
        if (c == ':') {
            flush();
        } else if (c >= '0' && c <= '9') {
            cur.push_back(c);
        } else {
            throw ConfigError("bad range '" + text + "' (want from:to[:stride])");
        }
    }
    flush();
    if (part < 2) throw ConfigError("bad range '" + text + "' (want from:to[:stride])");
    if (vals[2] == 0 || vals[1] < vals[0]) throw ConfigError("bad range '" + text + "'");
    std::vector<u64> out;
    for (u64 n = vals[0]; n <= vals[1]; n += vals[2]) out.push_back(n);
    return out;
}

const char* to_string(DiscrepancyMode mode) {
    return mode == DiscrepancyMode::fixed_residue ? "fixed_residue" : "max_over_all";
}

const char* to_string(WeightKind kind) {
    switch (kind) {
        case WeightKind::psi_plain: return "psi_plain";
        case WeightKind::mu_twisted: return "mu_twisted";
        default: return "mu_twisted_log";
    }
}

const char* to_string(PsiComparator comparator) {
    return comparator == PsiComparator::linear_y ? "linear_y" : "scaled_psi";
}

bool parse_mode(const std::string& s, DiscrepancyMode& out) {
    if (s == "fixed_residue") out = DiscrepancyMode::fixed_residue;
    else if (s == "max_over_all") out = DiscrepancyMode::max_over_all;
    else return false;
    return true;
}

bool parse_kind(const std::string& s, WeightKind& out) {
    if (s == "psi_plain") out = WeightKind::psi_plain;
    else if (s == "mu_twisted") out = WeightKind::mu_twisted;
    else if (s == "mu_twisted_log") out = WeightKind::mu_twisted_log;
    else return false;
    return true;
}

bool parse_comparator(const std::string& s, PsiComparator& out) {
    if (s == "linear_y") out = PsiComparator::linear_y;
    else if (s == "scaled_psi") out = PsiComparator::scaled_psi;
    else return false;
    return true;
}

} // namespace gdlab
