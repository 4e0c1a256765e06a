#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gdlab/commands.hpp"
#include "gdlab/report_io.hpp"

using namespace gdlab;

namespace {

int run(int (*cmd)(const RunConfig&, CommandIO), const RunConfig& cfg, std::string& out,
        std::string& err) {
    std::istringstream in;
    std::ostringstream o, e;
    const int rc = cmd(cfg, CommandIO{in, o, e});
    out = o.str();
    err = e.str();
    return rc;
}

} // namespace

TEST_SUITE_BEGIN("cli_report");

TEST_CASE("config parsing round trip") {
    const std::string doc = R"({
        "table_limit": 20000,
        "targets": [4, 10, 100],
        "params": {"theta": 0.4, "A": 2.0},
        "discrepancy": {"q_max": 7, "mode": "max_over_all", "kinds": ["mu_twisted"]},
        "output": {"format": "csv", "precision": 12}
    })";
    const RunConfig cfg = parse_config(doc);
    CHECK(cfg.table_limit == 20'000);
    CHECK(cfg.targets == std::vector<u64>{4, 10, 100});
    CHECK(cfg.theta == doctest::Approx(0.4));
    CHECK(cfg.A == doctest::Approx(2.0));
    REQUIRE(cfg.discrepancy.has_value());
    CHECK(cfg.discrepancy->q_max == 7);
    CHECK(cfg.discrepancy->mode == DiscrepancyMode::max_over_all);
    CHECK(cfg.output.format == OutputFormat::csv);
    CHECK(cfg.output.precision == 12);

    const DecompParams p = cfg.params_for(100);
    CHECK(p.theta == doctest::Approx(0.4));
    CHECK(p.alpha == doctest::Approx(std::pow(100.0, 0.4)));
}

TEST_CASE("config diagnostics carry the field name") {
    CHECK_THROWS_WITH_AS(parse_config(R"({"tabel_limit": 3})", "cfg"),
                         doctest::Contains("tabel_limit"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"table_limit": 10, "targets": [40]})", "cfg"),
                         doctest::Contains("exceeds table_limit"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_config(R"({"discrepancy": {"kinds": ["nope"]}})", "cfg"),
        doctest::Contains("kinds"), ConfigError);
    CHECK_THROWS_AS(parse_config("{not json", "cfg"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"output": {"precision": 40}})", "cfg"),
                         doctest::Contains("precision"), ConfigError);
}

TEST_CASE("config file loading") {
    const std::string path = "gdlab_cfg_test.json";
    {
        std::ofstream f(path);
        f << R"({"table_limit": 4096, "targets": [6]})";
    }
    const RunConfig cfg = parse_config_file(path);
    CHECK(cfg.table_limit == 4096);
    CHECK(cfg.targets == std::vector<u64>{6});
    std::filesystem::remove(path);
    CHECK_THROWS_AS(parse_config_file("definitely_missing.json"), ConfigError);
}

TEST_CASE("range targets") {
    CHECK(expand_range("4:10:2") == std::vector<u64>{4, 6, 8, 10});
    CHECK(expand_range("5:9") == std::vector<u64>{5, 7, 9});
    CHECK_THROWS_AS(expand_range("9:5"), ConfigError);
    CHECK_THROWS_AS(expand_range("1:x"), ConfigError);

    const RunConfig cfg =
        parse_config(R"({"targets": {"from": 6, "to": 12, "stride": 3}})");
    CHECK(cfg.targets == std::vector<u64>{6, 9, 12});
}

TEST_CASE("json writer emits stable ordered documents") {
    JsonWriter w(17);
    w.begin_object();
    w.key("a").value(u64(1));
    w.key("b").begin_array();
    w.value(0.5);
    w.value("x\"y");
    w.end_array();
    w.key("c").value(true);
    w.end_object();
    CHECK(w.take() == "{\"a\":1,\"b\":[0.5,\"x\\\"y\"],\"c\":true}\n");

    CHECK(format_double(0.48045301391820139, 17) == "0.48045301391820139");
    CHECK(format_double(1.0, 17) == "1");
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("decompose command reproduces the frozen examples") {
    RunConfig cfg;
    cfg.table_limit = 10'000;
    cfg.targets = {4};
    cfg.assume_yes = true;
    std::string out, err;
    REQUIRE(run(cmd_decompose, cfg, out, err) == 0);
    CHECK(out.find("\"rtilde\":0.48045301391820139") != std::string::npos);

    cfg.targets = {7};
    REQUIRE(run(cmd_decompose, cfg, out, err) == 0);
    CHECK(out.find("\"odd_target\":true") != std::string::npos);
    CHECK(out.find("\"singular_series_used\":0") != std::string::npos);
    CHECK(err.find("odd") != std::string::npos);
}

TEST_CASE("constants command emits every series route") {
    RunConfig cfg;
    cfg.table_limit = 20'000;
    cfg.targets = {10};
    cfg.prime_cutoff = 100'000;
    cfg.assume_yes = true;
    std::string out, err;
    REQUIRE(run(cmd_constants, cfg, out, err) == 0);
    for (const char* key :
         {"\"singular_series\"", "\"squarefree_density\"", "\"density_series_partial\"",
          "\"least_nondividing_odd_prime\":3", "\"gy_sum_log\"", "\"gy_sum_plain\"",
          "\"weighted_mobius_log_sum\"", "\"mobius_double_sum\"", "\"tail_kind\":\"rigorous\""})
        CHECK(out.find(key) != std::string::npos);
}

TEST_CASE("identical configs give byte-identical output") {
    RunConfig cfg;
    cfg.table_limit = 5000;
    cfg.targets = {100, 101, 4998};
    cfg.assume_yes = true;
    std::string out1, out2, err;
    REQUIRE(run(cmd_decompose, cfg, out1, err) == 0);
    REQUIRE(run(cmd_decompose, cfg, out2, err) == 0);
    CHECK(out1 == out2);

    cfg.discrepancy = DiscrepancySettings{10, DiscrepancyMode::fixed_residue,
                                          {WeightKind::mu_twisted}, PsiComparator::linear_y};
    cfg.threads = 3;
    std::string d1, d2;
    REQUIRE(run(cmd_discrepancy, cfg, d1, err) == 0);
    cfg.threads = 1;
    REQUIRE(run(cmd_discrepancy, cfg, d2, err) == 0);
    CHECK(d1 == d2);
}

TEST_CASE("csv discrepancy output carries one profile") {
    RunConfig cfg;
    cfg.table_limit = 2000;
    cfg.targets = {100};
    cfg.assume_yes = true;
    cfg.output.format = OutputFormat::csv;
    cfg.discrepancy = DiscrepancySettings{5, DiscrepancyMode::fixed_residue,
                                          {WeightKind::mu_twisted}, PsiComparator::linear_y};
    std::string out, err;
    REQUIRE(run(cmd_discrepancy, cfg, out, err) == 0);
    CHECK(out.rfind("q,discrepancy\r\n", 0) == 0);

    cfg.targets = {100, 200};
    CHECK(run(cmd_discrepancy, cfg, out, err) == 2);
}

TEST_CASE("outputs refuse to overwrite without force") {
    const std::string path = "gdlab_out_test.json";
    {
        std::ofstream f(path);
        f << "sentinel";
    }
    RunConfig cfg;
    cfg.table_limit = 2000;
    cfg.targets = {10};
    cfg.assume_yes = true;
    cfg.output.path = path;
    std::string out, err;
    CHECK(run(cmd_decompose, cfg, out, err) == 2);
    CHECK(err.find("refusing") != std::string::npos);
    {
        std::ifstream f(path);
        std::string still;
        f >> still;
        CHECK(still == "sentinel");
    }
    cfg.force = true;
    CHECK(run(cmd_decompose, cfg, out, err) == 0);
    std::filesystem::remove(path);
}

TEST_CASE("long runs ask for confirmation") {
    RunConfig cfg;
    cfg.table_limit = 5000;
    cfg.targets = {4};
    cfg.discrepancy =
        DiscrepancySettings{5000, DiscrepancyMode::fixed_residue,
                            {WeightKind::mu_twisted}, PsiComparator::linear_y};
    // q_max * N estimate pushed over the threshold by a huge target list
    for (u64 i = 0; i < 4000; ++i) cfg.targets.push_back(4000);

    std::istringstream in("n\n");
    std::ostringstream out, err;
    const int rc = cmd_discrepancy(cfg, CommandIO{in, out, err});
    CHECK(rc == 1);
    CHECK(err.str().find("estimated operation count") != std::string::npos);
    CHECK(err.str().find("aborted") != std::string::npos);
}

TEST_SUITE_END();
