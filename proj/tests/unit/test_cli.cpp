#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "potts/bounds.hpp"
#include "potts/exact.hpp"
#include "potts/io.hpp"
#include "potts/rng.hpp"

using namespace potts;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("pottsglass-test-" + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const {
        return (path / name).string();
    }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::vector<io::ResultRow> rows_from(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    return io::read_results_csv(in);
}

}  // namespace

TEST_CASE("exact command: artifact matches a direct library call") {
    TempDir dir;
    const auto out = dir.file("exact.csv");
    REQUIRE(cli::run({"exact", "--N", "1", "--kappa", "5", "--beta", "3",
                      "--samples", "100", "--seed", "17", "--out", out}) == 0);
    const auto rows = rows_from(out);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].N == 1);
    CHECK(rows[0].kappa == 5);
    CHECK(std::abs(rows[0].mean - std::log(5.0)) <= 4.0 * rows[0].std_error);

    const ModelParams params{1, 5, 3.0, 0.0};
    const auto direct = quenched_free_energy(params, 100, 17);
    CHECK(rows[0].mean == direct.mean);
    CHECK(rows[0].std_error == direct.std_error);
}

TEST_CASE("exact command: sector flags feed the restricted estimator") {
    TempDir dir;
    const auto out = dir.file("sector.csv");
    REQUIRE(cli::run({"exact", "--N", "4", "--kappa", "2", "--beta", "1",
                      "--samples", "20", "--seed", "3", "--d", "0.5,0.5",
                      "--epsilon", "0.25", "--out", out}) == 0);
    const auto rows = rows_from(out);
    REQUIRE(rows.size() == 1);
    REQUIRE(rows[0].sector.has_value());
    const ModelParams params{4, 2, 1.0, 0.0};
    const ColorProfile profile{{0.5, 0.5}, 0.25};
    const auto direct = quenched_free_energy(params, 20, 3, profile);
    CHECK(rows[0].mean == direct.mean);
}

TEST_CASE("same config and seed give byte-identical files at any threads") {
    TempDir dir;
    const auto a = dir.file("a.csv");
    const auto b = dir.file("b.csv");
    REQUIRE(cli::run({"exact", "--N", "5", "--kappa", "3", "--beta", "1.5",
                      "--samples", "40", "--seed", "9", "--threads", "1",
                      "--out", a}) == 0);
    REQUIRE(cli::run({"exact", "--N", "5", "--kappa", "3", "--beta", "1.5",
                      "--samples", "40", "--seed", "9", "--threads", "4",
                      "--out", b}) == 0);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("csv and json artifacts re-parse to the same values") {
    TempDir dir;
    const auto csv_path = dir.file("r.csv");
    const auto json_path = dir.file("r.json");
    const std::vector<std::string> base{"exact",   "--N",    "4",
                                        "--kappa", "3",      "--beta",
                                        "0.7",     "--samples", "25",
                                        "--seed",  "21"};
    auto with = [&](std::initializer_list<std::string> extra) {
        std::vector<std::string> args = base;
        args.insert(args.end(), extra);
        return args;
    };
    REQUIRE(cli::run(with({"--out", csv_path})) == 0);
    REQUIRE(cli::run(with({"--out", json_path, "--format", "json"})) == 0);
    const auto csv_rows = rows_from(csv_path);
    std::ifstream json_in(json_path);
    const auto json_rows = io::read_results_json(json_in);
    REQUIRE(csv_rows.size() == 1);
    REQUIRE(json_rows.size() == 1);
    CHECK(csv_rows[0].mean == json_rows[0].mean);
    CHECK(csv_rows[0].std_error == json_rows[0].std_error);
    CHECK(csv_rows[0].seed == json_rows[0].seed);
}

TEST_CASE("config file supplies flags, command line wins") {
    TempDir dir;
    const auto cfg = dir.file("run.cfg");
    {
        std::ofstream out(cfg);
        out << "N=1\nkappa=5\nbeta=3\nsamples=50\nseed=5\n";
    }
    const auto out_file = dir.file("cfg.csv");
    REQUIRE(cli::run({"exact", "--config", cfg, "--kappa", "7", "--out",
                      out_file}) == 0);
    const auto rows = rows_from(out_file);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].N == 1);
    CHECK(rows[0].kappa == 7);  // flag override
    CHECK(rows[0].num_samples == 50);
}

TEST_CASE("thresholds command reports 58 and 21") {
    TempDir dir;
    const auto out = dir.file("thresholds.csv");
    REQUIRE(cli::run({"thresholds", "--out", out}) == 0);
    const auto table = slurp(out);
    CHECK(table.find(",58,") != std::string::npos);

    const auto sk_out = dir.file("thresholds_sk.csv");
    REQUIRE(cli::run({"thresholds", "--constant-c", "0.5396638954015731",
                      "--out", sk_out}) == 0);
    CHECK(slurp(sk_out).find(",21,") != std::string::npos);
}

TEST_CASE("scan command: kappa = 58 true cells match the interval oracle") {
    TempDir dir;
    const auto out = dir.file("scan.csv");
    const auto summary = dir.file("scan.json");
    REQUIRE(cli::run({"scan", "--kappa", "50:70", "--beta",
                      "15:30:0.1", "--out", out, "--summary-out", summary}) ==
            0);
    std::ifstream in(out);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "kappa,beta,breaking");
    const auto window = bounds::beta_interval(58, bounds::kRsLowerSlope);
    REQUIRE(window.has_value());
    double first_true = 1e300, last_true = -1e300;
    while (std::getline(in, line)) {
        std::stringstream row(line);
        std::string kappa_text, beta_text, breaking_text;
        std::getline(row, kappa_text, ',');
        std::getline(row, beta_text, ',');
        std::getline(row, breaking_text, ',');
        if (kappa_text != "58") continue;
        const double beta = io::parse_double(beta_text);
        const bool breaking = breaking_text == "1";
        const bool inside = window->first < beta && beta < window->second;
        CHECK(breaking == inside);
        if (breaking) {
            first_true = std::min(first_true, beta);
            last_true = std::max(last_true, beta);
        }
    }
    CHECK(std::abs(first_true - 19.7) <= 1e-9);
    CHECK(std::abs(last_true - 24.0) <= 1e-9);
    CHECK(slurp(summary).find("\"min_kappa_in_range\": 58") !=
          std::string::npos);
}

TEST_CASE("ground-state command agrees with the library oracle") {
    TempDir dir;
    const auto out = dir.file("gs.csv");
    REQUIRE(cli::run({"ground-state", "--N", "8", "--kappa", "2", "--seed",
                      "33", "--method", "exact", "--out", out}) == 0);
    const auto text = slurp(out);
    const ModelParams params{8, 2, 1.0, 0.0};
    const auto disorder = DisorderSample::generate(8, 33);
    const auto [sigma, value] = exact_ground_state(params, disorder);
    CHECK(text.find(io::format_double(value)) != std::string::npos);
}

TEST_CASE("mc command round-trips disorder through the binary format") {
    TempDir dir;
    const auto saved = dir.file("disorder.bin");
    const auto first = dir.file("mc1.csv");
    const auto second = dir.file("mc2.csv");
    REQUIRE(cli::run({"mc", "--N", "6", "--kappa", "3", "--beta", "1",
                      "--seed", "11", "--rungs", "8", "--sweeps", "200",
                      "--burn-in", "50", "--save-disorder", saved, "--out",
                      first}) == 0);
    REQUIRE(cli::run({"mc", "--N", "6", "--kappa", "3", "--beta", "1",
                      "--seed", "11", "--rungs", "8", "--sweeps", "200",
                      "--burn-in", "50", "--load-disorder", saved, "--out",
                      second}) == 0);
    CHECK(slurp(first) == slurp(second));
    const auto loaded = io::load_disorder(saved);
    CHECK(loaded.seed() == 11);
    CHECK(loaded.size() == 6);
}

TEST_CASE("mc command writes a per-rung trace") {
    TempDir dir;
    const auto trace = dir.file("trace.csv");
    REQUIRE(cli::run({"mc", "--N", "5", "--kappa", "2", "--beta", "0.5",
                      "--seed", "2", "--rungs", "6", "--sweeps", "100",
                      "--burn-in", "20", "--trace-out", trace, "--out",
                      dir.file("mc.csv")}) == 0);
    std::ifstream in(trace);
    std::string header;
    REQUIRE(std::getline(in, header));
    CHECK(header ==
          "beta,mean_gauged_energy,exchange_acceptance,exchange_attempts");
    int rows = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 6);
}

TEST_CASE("POTTSGLASS_OUT_DIR provides the default artifact location") {
    TempDir dir;
    setenv("POTTSGLASS_OUT_DIR", dir.path.string().c_str(), 1);
    REQUIRE(cli::run({"thresholds"}) == 0);
    unsetenv("POTTSGLASS_OUT_DIR");
    CHECK(slurp(dir.file("thresholds.csv")).find(",58,") != std::string::npos);
}

TEST_CASE("invalid inputs are rejected with nonzero status") {
    CHECK(cli::run({"exact", "--N", "0", "--kappa", "3"}) != 0);
    CHECK(cli::run({"exact", "--N", "2", "--kappa", "1"}) != 0);
    CHECK(cli::run({"exact", "--format", "xml"}) != 0);
    CHECK(cli::run({"scan", "--kappa", "9"}) != 0);
    CHECK(cli::run({"scan", "--beta", "1:2:-0.5"}) != 0);
    CHECK(cli::run({"no-such-command"}) != 0);
    // Budget exceeded surfaces as a module error.
    CHECK(cli::run({"exact", "--N", "64", "--kappa", "4", "--samples", "1"}) !=
          0);
}

TEST_CASE("verify command runs a single fast criterion") {
    CHECK(cli::run({"verify", "--criterion", "1"}) == 0);
    CHECK(cli::run({"verify", "--criterion", "2"}) == 0);
}
