#ifndef POTTS_IO_HPP
#define POTTS_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "potts/exact.hpp"
#include "potts/mc.hpp"
#include "potts/model.hpp"

namespace potts::io {

/// Shortest decimal string that parses back to exactly this double.
std::string format_double(double value);

/// Strict full-string parse; throws InvalidValueError on garbage.
double parse_double(const std::string& text);

// ---------------------------------------------------------------------
// Disorder matrices
// ---------------------------------------------------------------------
// Flat little-endian binary layout:
//   int64  N
//   uint64 seed
//   N*N    doubles, row-major
// Round-trips bit-exactly. The CSV form is for eyeballing only.

void save_disorder(std::ostream& out, const DisorderSample& sample);
void save_disorder(const std::string& path, const DisorderSample& sample);
DisorderSample load_disorder(std::istream& in);
DisorderSample load_disorder(const std::string& path);

void write_disorder_csv(std::ostream& out, const DisorderSample& sample);

// ---------------------------------------------------------------------
// Result rows
// ---------------------------------------------------------------------

/// One estimate in the shared output schema
/// (N, kappa, beta, gamma, sector, mean, std_error, num_samples, seed).
/// `sector` is empty for unrestricted runs and "d1|...|dk@epsilon"
/// otherwise.
struct ResultRow {
    int N = 1;
    int kappa = 2;
    double beta = 0.0;
    double gamma = 0.0;
    std::optional<ColorProfile> sector;
    double mean = 0.0;
    double std_error = 0.0;
    int num_samples = 0;
    std::uint64_t seed = 0;
};

ResultRow make_result_row(const QuenchedEstimate& estimate,
                          const std::optional<ColorProfile>& sector,
                          std::uint64_t seed);

std::string format_sector(const std::optional<ColorProfile>& sector);
std::optional<ColorProfile> parse_sector(const std::string& text);

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_results_csv(std::istream& in);

void write_results_json(std::ostream& out, const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_results_json(std::istream& in);

// ---------------------------------------------------------------------
// Diagnostics
// ---------------------------------------------------------------------

/// Per-rung tempering trace: beta, mean gauged energy, exchange
/// acceptance rate, exchange attempts.
void write_trace_csv(std::ostream& out, const std::vector<RungTrace>& trace);

}  // namespace potts::io

#endif
