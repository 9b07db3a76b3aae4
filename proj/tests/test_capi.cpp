#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fbs/fbs.h"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& name)
        : path(std::filesystem::temp_directory_path() / name) {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("config lifecycle and validation through the C API") {
    fbs_config* cfg = nullptr;
    REQUIRE(fbs_config_create(&cfg) == FBS_OK);
    CHECK(fbs_config_n_max(cfg) == 30);
    CHECK(fbs_config_set(cfg, "n_max", "12") == FBS_OK);
    CHECK(fbs_config_n_max(cfg) == 12);
    CHECK(fbs_config_set(cfg, "g", "-1") == FBS_ERR_INVALID_ARGUMENT);
    CHECK(std::string(fbs_last_error()) == "g must be nonnegative");
    CHECK(fbs_config_set(cfg, "nonsense", "1") == FBS_ERR_INVALID_ARGUMENT);
    fbs_config_destroy(cfg);
}

TEST_CASE("config file loading through the C API") {
    TempDir dir("fbs_capi_cfg");
    auto path = (dir.path / "run.conf").string();
    {
        std::ofstream out(path);
        out << "g = 1\ngamma = 1\nn_max = 25\n";
    }
    fbs_config* cfg = nullptr;
    REQUIRE(fbs_config_load(path.c_str(), &cfg) == FBS_OK);
    CHECK(fbs_config_n_max(cfg) == 25);
    fbs_config_destroy(cfg);

    fbs_config* missing = nullptr;
    CHECK(fbs_config_load("no_such_file.conf", &missing) == FBS_ERR_IO);
}

TEST_CASE("choose_n_max and herald probabilities through the C API") {
    int n = 0;
    REQUIRE(fbs_choose_n_max(1.0, 1e-12, &n) == FBS_OK);
    CHECK(n >= 10);
    CHECK(fbs_choose_n_max(1.0, 2.0, &n) == FBS_ERR_INVALID_ARGUMENT);

    fbs_config* cfg = nullptr;
    REQUIRE(fbs_config_create(&cfg) == FBS_OK);
    double probs[4] = {0, 0, 0, 0};
    double no_click = -1.0;
    REQUIRE(fbs_herald_probabilities(cfg, 1.0, probs, 4, &no_click) ==
            FBS_OK);
    CHECK(probs[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(probs[1] == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(probs[2] == doctest::Approx(std::exp(-1.0) / 2.0).epsilon(1e-12));
    CHECK(no_click >= 0.0);

    double big[100];
    CHECK(fbs_herald_probabilities(cfg, 1.0, big, 100, nullptr) ==
          FBS_ERR_INVALID_ARGUMENT);
    fbs_config_destroy(cfg);
}

TEST_CASE("unknown experiment name is rejected") {
    fbs_experiment* exp = nullptr;
    CHECK(fbs_experiment_create("nope", &exp) == FBS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("fig3 experiment writes the documented files") {
    TempDir dir("fbs_capi_fig3");
    fbs_experiment* exp = nullptr;
    REQUIRE(fbs_experiment_create("fig3", &exp) == FBS_OK);
    fbs_experiment_set_output_dir(exp, dir.path.c_str());
    fbs_result* res = nullptr;
    REQUIRE(fbs_experiment_run(exp, &res) == FBS_OK);
    CHECK(fbs_result_passed(res) == 1);
    CHECK(fbs_result_output_count(res) == 4);  // two CSVs, summary, manifest

    auto csv = slurp((dir.path / "fig3_lossless.csv").string());
    // header + 301 rows, grid from 0 to 3.00
    size_t lines = std::count(csv.begin(), csv.end(), '\n');
    CHECK(lines == 302);
    CHECK(csv.rfind("gt,P0,P1,P2,P3\n0,1,0,0,0\n", 0) == 0);

    std::string summary = fbs_result_summary(res);
    CHECK(summary.find("p0_p1_crossing_gt") != std::string::npos);
    CHECK(std::filesystem::exists(dir.path / "manifest.txt"));

    fbs_result_destroy(res);
    fbs_experiment_destroy(exp);
}

TEST_CASE("herald-mc reruns under the same seed are byte-identical") {
    TempDir dir_a("fbs_capi_mc_a"), dir_b("fbs_capi_mc_b");
    for (const auto* dir : {&dir_a, &dir_b}) {
        fbs_experiment* exp = nullptr;
        REQUIRE(fbs_experiment_create("herald-mc", &exp) == FBS_OK);
        fbs_experiment_set_output_dir(exp, dir->path.c_str());
        fbs_experiment_set_seed(exp, 42);
        fbs_experiment_set_override(exp, "trials", "20000");
        fbs_result* res = nullptr;
        REQUIRE(fbs_experiment_run(exp, &res) == FBS_OK);
        fbs_result_destroy(res);
        fbs_experiment_destroy(exp);
    }
    for (const char* name : {"outcomes.csv", "summary.txt", "manifest.txt"}) {
        CHECK(slurp((dir_a.path / name).string()) ==
              slurp((dir_b.path / name).string()));
    }
    CHECK(!slurp((dir_a.path / "outcomes.csv").string()).empty());
}

TEST_CASE("oracle-check fails under a deliberately coarse step") {
    TempDir dir("fbs_capi_coarse");
    fbs_experiment* exp = nullptr;
    REQUIRE(fbs_experiment_create("oracle-check", &exp) == FBS_OK);
    fbs_experiment_set_output_dir(exp, dir.path.c_str());
    fbs_experiment_set_override(exp, "dt", "0.2");
    fbs_result* res = nullptr;
    fbs_status status = fbs_experiment_run(exp, &res);
    // coarse integration must be caught, either by the in-run deviation
    // report or by the integrator's own drift detection
    CHECK(status != FBS_OK);
    if (res) CHECK(fbs_result_passed(res) == 0);
    fbs_result_destroy(res);
    fbs_experiment_destroy(exp);
}

TEST_CASE("version string is exposed") {
    CHECK(std::string(fbs_version()).find('.') != std::string::npos);
}
