#include "potts/io.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace potts::io {

namespace {

static_assert(std::endian::native == std::endian::little,
              "serialization assumes a little-endian host");

template <typename T>
void write_raw(std::ostream& out, T value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_raw(std::istream& in) {
    T value;
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw Error("unexpected end of stream");
    return value;
}

std::vector<std::string> split(const std::string& line, char delimiter) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, delimiter)) fields.push_back(field);
    if (!line.empty() && line.back() == delimiter) fields.emplace_back();
    return fields;
}

}  // namespace

std::string format_double(double value) {
    char buffer[64];
    const auto result =
        std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

double parse_double(const std::string& text) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc{} || result.ptr != end)
        throw InvalidValueError("double", "cannot parse '" + text + "'");
    return value;
}

void save_disorder(std::ostream& out, const DisorderSample& sample) {
    write_raw<std::int64_t>(out, sample.size());
    write_raw<std::uint64_t>(out, sample.seed());
    for (double g : sample.flat()) write_raw<double>(out, g);
    if (!out) throw Error("failed to write disorder stream");
}

void save_disorder(const std::string& path, const DisorderSample& sample) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    save_disorder(out, sample);
}

DisorderSample load_disorder(std::istream& in) {
    const auto n = read_raw<std::int64_t>(in);
    if (n < 1 || n > (1 << 20))
        throw InvalidValueError("N", "implausible size in disorder header");
    const auto seed = read_raw<std::uint64_t>(in);
    std::vector<double> g(static_cast<std::size_t>(n) * n);
    for (double& entry : g) entry = read_raw<double>(in);
    return DisorderSample(static_cast<int>(n), std::move(g), seed);
}

DisorderSample load_disorder(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    return load_disorder(in);
}

void write_disorder_csv(std::ostream& out, const DisorderSample& sample) {
    const int n = sample.size();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j > 0) out << ',';
            out << format_double(sample(i, j));
        }
        out << '\n';
    }
}

ResultRow make_result_row(const QuenchedEstimate& estimate,
                          const std::optional<ColorProfile>& sector,
                          std::uint64_t seed) {
    ResultRow row;
    row.N = estimate.params.N;
    row.kappa = estimate.params.kappa;
    row.beta = estimate.params.beta;
    row.gamma = estimate.params.gamma;
    row.sector = sector;
    row.mean = estimate.mean;
    row.std_error = estimate.std_error;
    row.num_samples = estimate.num_disorder_samples;
    row.seed = seed;
    return row;
}

std::string format_sector(const std::optional<ColorProfile>& sector) {
    if (!sector) return "";
    std::string text;
    for (std::size_t k = 0; k < sector->d.size(); ++k) {
        if (k > 0) text += '|';
        text += format_double(sector->d[k]);
    }
    text += '@';
    text += format_double(sector->epsilon);
    return text;
}

std::optional<ColorProfile> parse_sector(const std::string& text) {
    if (text.empty()) return std::nullopt;
    const auto at = text.find('@');
    if (at == std::string::npos)
        throw InvalidValueError("sector", "missing '@epsilon' in '" + text + "'");
    ColorProfile profile;
    for (const auto& piece : split(text.substr(0, at), '|'))
        profile.d.push_back(parse_double(piece));
    profile.epsilon = parse_double(text.substr(at + 1));
    return profile;
}

namespace {

constexpr const char* kResultsHeader =
    "N,kappa,beta,gamma,sector,mean,std_error,num_samples,seed";

}  // namespace

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << kResultsHeader << '\n';
    for (const auto& row : rows) {
        out << row.N << ',' << row.kappa << ',' << format_double(row.beta)
            << ',' << format_double(row.gamma) << ','
            << format_sector(row.sector) << ',' << format_double(row.mean)
            << ',' << format_double(row.std_error) << ',' << row.num_samples
            << ',' << row.seed << '\n';
    }
}

std::vector<ResultRow> read_results_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kResultsHeader)
        throw InvalidValueError("csv", "missing results header");
    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != 9)
            throw InvalidValueError("csv", "expected 9 fields, got " +
                                               std::to_string(fields.size()));
        ResultRow row;
        row.N = std::stoi(fields[0]);
        row.kappa = std::stoi(fields[1]);
        row.beta = parse_double(fields[2]);
        row.gamma = parse_double(fields[3]);
        row.sector = parse_sector(fields[4]);
        row.mean = parse_double(fields[5]);
        row.std_error = parse_double(fields[6]);
        row.num_samples = std::stoi(fields[7]);
        row.seed = std::stoull(fields[8]);
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

nlohmann::json row_to_json(const ResultRow& row) {
    nlohmann::json j{{"N", row.N},
                     {"kappa", row.kappa},
                     {"beta", row.beta},
                     {"gamma", row.gamma},
                     {"mean", row.mean},
                     {"std_error", row.std_error},
                     {"num_samples", row.num_samples},
                     {"seed", row.seed}};
    if (row.sector) {
        j["sector"] = {{"d", row.sector->d},
                       {"epsilon", row.sector->epsilon}};
    } else {
        j["sector"] = nullptr;
    }
    return j;
}

ResultRow row_from_json(const nlohmann::json& j) {
    ResultRow row;
    row.N = j.at("N").get<int>();
    row.kappa = j.at("kappa").get<int>();
    row.beta = j.at("beta").get<double>();
    row.gamma = j.at("gamma").get<double>();
    row.mean = j.at("mean").get<double>();
    row.std_error = j.at("std_error").get<double>();
    row.num_samples = j.at("num_samples").get<int>();
    row.seed = j.at("seed").get<std::uint64_t>();
    if (!j.at("sector").is_null()) {
        ColorProfile profile;
        profile.d = j.at("sector").at("d").get<std::vector<double>>();
        profile.epsilon = j.at("sector").at("epsilon").get<double>();
        row.sector = std::move(profile);
    }
    return row;
}

}  // namespace

void write_results_json(std::ostream& out,
                        const std::vector<ResultRow>& rows) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& row : rows) j.push_back(row_to_json(row));
    out << j.dump(2) << '\n';
}

std::vector<ResultRow> read_results_json(std::istream& in) {
    nlohmann::json j;
    in >> j;
    std::vector<ResultRow> rows;
    for (const auto& item : j) rows.push_back(row_from_json(item));
    return rows;
}

void write_trace_csv(std::ostream& out, const std::vector<RungTrace>& trace) {
    out << "beta,mean_gauged_energy,exchange_acceptance,exchange_attempts\n";
    for (const auto& rung : trace) {
        out << format_double(rung.beta) << ','
            << format_double(rung.mean_gauged_energy) << ','
            << format_double(rung.exchange_acceptance) << ','
            << rung.exchange_attempts << '\n';
    }
}

}  // namespace potts::io
