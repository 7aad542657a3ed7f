#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fpp/harness/config.hpp"
#include "fpp/harness/run.hpp"
#include "fpp/harness/verify.hpp"

using namespace fpp::harness;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("fpp_harness_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string field_of(const ExperimentConfig& c) {
    try {
        c.validate();
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "";
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("config JSON round trip") {
    ExperimentConfig c;
    c.tau = 1.3;
    c.n = 777;
    c.kind = "er";
    c.weight_law = "uniform:3";
    c.master_seed = 123456789012345ULL;
    const auto back = from_json(to_json(c));
    CHECK(to_json(back) == to_json(c));
    CHECK(from_json(nlohmann::json::object()).tau == 1.5);
}

TEST_CASE("config errors name the field") {
    CHECK_THROWS_AS(from_json({{"bogus", 1}}), ConfigError);
    try {
        from_json({{"tau", "high"}});
        FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "tau");
    }
    ExperimentConfig c;
    c.tau = 2.0;
    CHECK(field_of(c) == "tau");
    c = {};
    c.n = 1;
    CHECK(field_of(c) == "n");
    c = {};
    c.weight_law = "gamma";
    CHECK(field_of(c) == "weight_law");
    c = {};
    c.eps_n_rule = "-3";
    CHECK(field_of(c) == "eps_n_rule");
    c = {};
    c.kind = "both";
    CHECK(field_of(c) == "kind");
    c = {};
    c.p = 1.5;
    CHECK(field_of(c) == "p");
    c = {};
    c.k_remove = c.n;
    CHECK(field_of(c) == "k_remove");
    CHECK(field_of(ExperimentConfig{}).empty());
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("config hash ignores output paths only") {
    ExperimentConfig a, b;
    b.out = "elsewhere.csv";
    b.out_dir = "somewhere";
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a).size() == 16);
    b.tau = 1.6;
    CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("every subcommand writes its CSV and summary deterministically") {
    const fs::path dir = scratch("runs");
    const std::map<std::string, std::string> headers{{"degrees", "vertex_id,degree"},
                                                     {"build", "i,j,multiplicity"},
                                                     {"fpp", "replica,A1,A2,W,H,connected"},
                                                     {"pd", "draw_id,i,P_i"},
                                                     {"limit", "replica,I,J,W,H"},
                                                     {"attack", "replica,parameter,giant_size,second_size,connect_prob"}};
    for (const auto& sub : run_subcommands()) {
        ExperimentConfig c;
        c.n = 300;
        c.K = 100;
        c.replicas = 5;
        c.draws = 5;
        c.out = (dir / (sub + ".csv")).string();
        const auto first = run(c, sub);
        const std::string text = slurp(first.csv_path);
        CHECK(text.rfind(headers.at(sub) + "\n", 0) == 0);
        CHECK(fs::exists(first.summary_path));
        const auto summary = nlohmann::json::parse(slurp(first.summary_path));
        CHECK(summary["subcommand"] == sub);
        CHECK(summary["config_hash"] == config_hash(c));
        const auto second = run(c, sub);
        CHECK(slurp(second.csv_path) == text);
        for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().extension() != ".tmp");
    }
}

TEST_CASE("zero replicas give a header-only CSV") {
    const fs::path dir = scratch("empty");
    for (const std::string sub : {"fpp", "limit", "attack"}) {
        ExperimentConfig c;
        c.replicas = 0;
        c.out = (dir / (sub + ".csv")).string();
        const auto rec = run(c, sub);
        CHECK(rec.rows == 0);
        const std::string text = slurp(rec.csv_path);
        CHECK(std::count(text.begin(), text.end(), '\n') == 1);
    }
}

TEST_CASE("default output location and invalid subcommands") {
    ExperimentConfig c;
    CHECK(csv_target(c, "pd") == fs::path("runs") / ("pd-" + config_hash(c)) / "pd.csv");
    c.out = "x/y.csv";
    CHECK(csv_target(c, "pd") == fs::path("x/y.csv"));
    CHECK_THROWS(run(ExperimentConfig{}, "nonsense"));
    ExperimentConfig bad;
    bad.tau = 0.5;
    CHECK_THROWS_AS(run(bad, "pd"), ConfigError);
}

TEST_CASE("number formatting") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0 / 0.0) == "inf");
    CHECK(std::stod(format_double(0.1 + 0.2)) == 0.1 + 0.2);
}

TEST_CASE("atomic writes replace the target") {
    const fs::path dir = scratch("atomic");
    write_atomic(dir / "a.txt", "one");
    write_atomic(dir / "a.txt", "two");
    CHECK(slurp(dir / "a.txt") == "two");
    CHECK(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}) == 1);
}

TEST_CASE("verify reports failures at zero tolerance") {
    ExperimentConfig c;
    c.out_dir = scratch("verify").string();
    const auto ok = verify(c, {"oracle_equivalence"});
    REQUIRE(ok.criteria.size() == 1);
    CHECK(ok.all_passed());
    CHECK(format_line(ok.criteria[0]).rfind("PASS oracle_equivalence:", 0) == 0);
    CHECK(fs::exists(fs::path(c.out_dir) / "report.json"));

    c.tolerance_scale = 0.0;
    const auto strict = verify(c, {"oracle_equivalence"});
    CHECK_FALSE(strict.all_passed());
    CHECK(format_line(strict.criteria[0]).rfind("FAIL", 0) == 0);
    CHECK(criterion_ids().size() == 11);
    CHECK_THROWS(verify(c, {"no_such_criterion"}));
}

}
