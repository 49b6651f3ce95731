#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "potts/io.hpp"

using namespace potts;
using namespace potts::io;

TEST_CASE("format_double/parse_double: exact round trip") {
    std::mt19937_64 eng(3);
    std::uniform_real_distribution<double> dist(-1e6, 1e6);
    for (int trial = 0; trial < 500; ++trial) {
        const double value = dist(eng) * std::pow(10.0, int(eng() % 40) - 20);
        CHECK(parse_double(format_double(value)) == value);
    }
    for (double value : {0.0, -0.0, 1e-300, 1e300, std::numbers::pi}) {
        CHECK(parse_double(format_double(value)) == value);
    }
    CHECK_THROWS_AS(parse_double("12.5x"), InvalidValueError);
    CHECK_THROWS_AS(parse_double(""), InvalidValueError);
}

TEST_CASE("disorder binary round trip is bit-exact") {
    const auto sample = DisorderSample::generate(17, 0xFEEDFACE);
    std::stringstream stream(std::ios::in | std::ios::out | std::ios::binary);
    save_disorder(stream, sample);
    const auto loaded = load_disorder(stream);
    CHECK(loaded.size() == sample.size());
    CHECK(loaded.seed() == sample.seed());
    REQUIRE(loaded.flat().size() == sample.flat().size());
    CHECK(std::memcmp(loaded.flat().data(), sample.flat().data(),
                      sample.flat().size() * sizeof(double)) == 0);
}

TEST_CASE("disorder load: truncated stream and absurd header rejected") {
    const auto sample = DisorderSample::generate(4, 1);
    std::stringstream stream(std::ios::in | std::ios::out | std::ios::binary);
    save_disorder(stream, sample);
    std::string bytes = stream.str();
    bytes.resize(bytes.size() - 8);
    std::istringstream truncated(bytes, std::ios::binary);
    CHECK_THROWS_AS(load_disorder(truncated), Error);

    std::istringstream garbage(std::string(16, '\xFF'), std::ios::binary);
    CHECK_THROWS_AS(load_disorder(garbage), Error);
}

TEST_CASE("disorder CSV has one row per matrix row") {
    const auto sample = DisorderSample::generate(5, 2);
    std::ostringstream out;
    write_disorder_csv(out, sample);
    int newlines = 0;
    for (char ch : out.str())
        if (ch == '\n') ++newlines;
    CHECK(newlines == 5);
}

TEST_CASE("sector text form round trips") {
    ColorProfile profile{{0.5, 0.25, 0.25}, 1e-3};
    const auto text = format_sector(profile);
    const auto parsed = parse_sector(text);
    REQUIRE(parsed.has_value());
    CHECK(parsed->d == profile.d);
    CHECK(parsed->epsilon == profile.epsilon);
    CHECK(format_sector(std::nullopt).empty());
    CHECK_FALSE(parse_sector("").has_value());
    CHECK_THROWS_AS(parse_sector("0.5|0.5"), InvalidValueError);
}

TEST_CASE("result rows: CSV and JSON round trips are exact") {
    std::vector<ResultRow> rows;
    ResultRow unrestricted;
    unrestricted.N = 8;
    unrestricted.kappa = 3;
    unrestricted.beta = 1.25;
    unrestricted.gamma = -0.125;
    unrestricted.mean = 1.234567890123456789;
    unrestricted.std_error = 0.0123456789;
    unrestricted.num_samples = 500;
    unrestricted.seed = 0xDEADBEEFCAFE;
    rows.push_back(unrestricted);

    ResultRow restricted = unrestricted;
    restricted.sector = ColorProfile{{1.0 / 3, 1.0 / 3, 1.0 / 3}, 0.05};
    restricted.mean = -0.75;
    rows.push_back(restricted);

    const auto equal_rows = [](const ResultRow& a, const ResultRow& b) {
        CHECK(a.N == b.N);
        CHECK(a.kappa == b.kappa);
        CHECK(a.beta == b.beta);
        CHECK(a.gamma == b.gamma);
        CHECK(a.mean == b.mean);
        CHECK(a.std_error == b.std_error);
        CHECK(a.num_samples == b.num_samples);
        CHECK(a.seed == b.seed);
        CHECK(a.sector.has_value() == b.sector.has_value());
        if (a.sector && b.sector) {
            CHECK(a.sector->d == b.sector->d);
            CHECK(a.sector->epsilon == b.sector->epsilon);
        }
    };

    std::stringstream csv;
    write_results_csv(csv, rows);
    const auto csv_rows = read_results_csv(csv);
    REQUIRE(csv_rows.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        equal_rows(rows[i], csv_rows[i]);

    std::stringstream json;
    write_results_json(json, rows);
    const auto json_rows = read_results_json(json);
    REQUIRE(json_rows.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        equal_rows(rows[i], json_rows[i]);
}

TEST_CASE("result CSV writes are byte-stable") {
    ResultRow row;
    row.N = 6;
    row.kappa = 3;
    row.beta = 0.1 + 0.2;  // a value with an ugly shortest representation
    row.mean = std::numbers::pi;
    std::ostringstream first, second;
    write_results_csv(first, {row});
    write_results_csv(second, {row});
    CHECK(first.str() == second.str());
}

TEST_CASE("trace CSV: header plus one line per rung") {
    std::vector<RungTrace> trace(3);
    trace[0] = {0.0, -1.5, 0.5, 10};
    trace[1] = {0.5, -0.5, 0.25, 10};
    trace[2] = {1.0, 0.5, 0.0, 0};
    std::ostringstream out;
    write_trace_csv(out, trace);
    int newlines = 0;
    for (char ch : out.str())
        if (ch == '\n') ++newlines;
    CHECK(newlines == 4);
    CHECK(out.str().rfind("beta,mean_gauged_energy,exchange_acceptance,"
                          "exchange_attempts\n", 0) == 0);
}
