#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "acceptance.hpp"
#include "potts/bounds.hpp"
#include "potts/exact.hpp"
#include "potts/io.hpp"
#include "potts/mc.hpp"
#include "potts/parallel.hpp"
#include "potts/rng.hpp"

namespace potts::cli {

namespace {

struct CommonOpts {
    int N = 4;
    int kappa = 2;
    double beta = 1.0;
    double gamma = 0.0;
    int samples = 100;
    std::uint64_t seed = 1;
    std::string d_list;
    double epsilon = 0.05;
    std::uint64_t budget = kDefaultEnumerationBudget;
    unsigned threads = 1;
    std::string out;
    std::string format = "csv";
};

struct LadderOpts {
    int rungs = 32;
    int total_sweeps = 4000;
    int burn_in = 1000;
    int sweeps_per_exchange = 5;
};

std::vector<double> parse_d_list(const std::string& text) {
    std::vector<double> d;
    std::stringstream stream(text);
    std::string piece;
    while (std::getline(stream, piece, ',')) d.push_back(io::parse_double(piece));
    if (d.empty()) throw InvalidValueError("d", "empty color profile");
    return d;
}

std::optional<ColorProfile> sector_from(const CommonOpts& opts) {
    if (opts.d_list.empty()) return std::nullopt;
    ColorProfile profile{parse_d_list(opts.d_list), opts.epsilon};
    profile.validate();
    return profile;
}

std::pair<int, int> parse_int_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw InvalidValueError("kappa", "expected lo:hi, got '" + text + "'");
    const int lo = std::stoi(text.substr(0, colon));
    const int hi = std::stoi(text.substr(colon + 1));
    if (hi < lo) throw InvalidValueError("kappa", "range must satisfy lo <= hi");
    return {lo, hi};
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<std::string> pieces;
    std::stringstream stream(text);
    std::string piece;
    while (std::getline(stream, piece, ':')) pieces.push_back(piece);
    if (pieces.size() != 3)
        throw InvalidValueError("beta", "expected lo:hi:step, got '" + text + "'");
    const double lo = io::parse_double(pieces[0]);
    const double hi = io::parse_double(pieces[1]);
    const double step = io::parse_double(pieces[2]);
    if (!(step > 0.0)) throw InvalidValueError("beta", "step must be > 0");
    if (hi < lo) throw InvalidValueError("beta", "grid must satisfy lo <= hi");
    std::vector<double> grid;
    for (double value = lo; value <= hi + step * 0.5; value += step)
        grid.push_back(value);
    return grid;
}

unsigned resolve_threads(unsigned requested) {
    return requested == 0 ? default_threads() : requested;
}

std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = text.find_last_not_of(" \t\r\n");
    return text.substr(begin, end - begin + 1);
}

/// Replaces `--config <file>` with the file's flat key=value pairs,
/// inserted ahead of the explicit flags so the command line wins.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::string config_path;
    std::vector<std::string> stripped;
    stripped.reserve(args.size());
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size())
                throw Error("--config requires a file path");
            config_path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
        } else {
            stripped.push_back(args[i]);
        }
    }
    if (config_path.empty()) return stripped;
    if (stripped.empty())
        throw Error("--config requires a subcommand");

    std::ifstream in(config_path);
    if (!in) throw Error("cannot open config file '" + config_path + "'");
    std::vector<std::string> expanded;
    expanded.push_back(stripped.front());  // the subcommand
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto equals = line.find('=');
        if (equals == std::string::npos)
            throw Error("config line is not key=value: '" + line + "'");
        const std::string key = trim(line.substr(0, equals));
        const std::string value = trim(line.substr(equals + 1));
        if (key.empty())
            throw Error("config line has an empty key: '" + line + "'");
        expanded.push_back("--" + key);
        expanded.push_back(value);
    }
    expanded.insert(expanded.end(), stripped.begin() + 1, stripped.end());
    return expanded;
}

/// Output path resolution: --out wins, then $POTTSGLASS_OUT_DIR/<name>,
/// else stdout (empty path).
std::string resolve_out(const std::string& out_flag, const std::string& stem,
                        const std::string& extension) {
    if (!out_flag.empty()) return out_flag;
    if (const char* dir = std::getenv("POTTSGLASS_OUT_DIR"))
        return std::string(dir) + "/" + stem + "." + extension;
    return "";
}

void emit(const std::string& path,
          const std::function<void(std::ostream&)>& writer) {
    if (path.empty()) {
        writer(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    writer(out);
    if (!out) throw Error("failed while writing '" + path + "'");
}

void add_common_model_flags(CLI::App* sub, CommonOpts& opts,
                            bool with_sector = true) {
    sub->add_option("--N", opts.N, "system size");
    sub->add_option("--kappa", opts.kappa, "number of colors (>= 2)");
    sub->add_option("--beta", opts.beta, "inverse temperature (>= 0)");
    sub->add_option("--gamma", opts.gamma, "coupling bias (default 0)");
    sub->add_option("--seed", opts.seed, "root seed for all random streams");
    sub->add_option("--threads", opts.threads,
                    "worker threads (0 = hardware)");
    sub->add_option("--out", opts.out,
                    "artifact path (default $POTTSGLASS_OUT_DIR or stdout)");
    sub->add_option("--format", opts.format, "artifact format")
        ->check(CLI::IsMember({"csv", "json"}));
    if (with_sector) {
        sub->add_option("--d", opts.d_list,
                        "comma-separated target color proportions");
        sub->add_option("--epsilon", opts.epsilon,
                        "sector half-width around --d");
    }
    // Handled by expand_config before parsing; registered for --help only.
    static std::string config_placeholder;
    sub->add_option("--config", config_placeholder,
                    "flat key=value file mirroring flag names; "
                    "flags override the file");
}

void add_ladder_flags(CLI::App* sub, LadderOpts& opts) {
    sub->add_option("--rungs", opts.rungs, "tempering ladder rungs");
    sub->add_option("--sweeps", opts.total_sweeps, "total sweeps per chain");
    sub->add_option("--burn-in", opts.burn_in, "sweeps discarded before measuring");
    sub->add_option("--exchange-every", opts.sweeps_per_exchange,
                    "sweeps between exchange phases");
}

void write_result_rows(const CommonOpts& opts, const std::string& stem,
                       const std::vector<io::ResultRow>& rows) {
    const auto path = resolve_out(opts.out, stem, opts.format);
    emit(path, [&](std::ostream& out) {
        if (opts.format == "json")
            io::write_results_json(out, rows);
        else
            io::write_results_csv(out, rows);
    });
}

// -------------------------------------------------------------------
// Subcommands
// -------------------------------------------------------------------

int run_exact(const CommonOpts& opts) {
    ModelParams params{opts.N, opts.kappa, opts.beta, opts.gamma};
    params.validate();
    const auto sector = sector_from(opts);
    const auto estimate =
        quenched_free_energy(params, opts.samples, opts.seed, sector,
                             opts.budget, resolve_threads(opts.threads));
    std::cerr << "quenched free energy (exact enumeration): "
              << io::format_double(estimate.mean) << " +/- "
              << io::format_double(estimate.std_error) << "  (N=" << opts.N
              << " kappa=" << opts.kappa << " beta="
              << io::format_double(opts.beta) << " samples=" << opts.samples
              << ")\n";
    write_result_rows(opts, "exact",
                      {io::make_result_row(estimate, sector, opts.seed)});
    return 0;
}

int run_quenched(const CommonOpts& opts, const LadderOpts& ladder_opts) {
    ModelParams params{opts.N, opts.kappa, opts.beta, opts.gamma};
    params.validate();
    const auto ladder = LadderConfig::hybrid(
        opts.beta, ladder_opts.rungs, ladder_opts.sweeps_per_exchange,
        ladder_opts.total_sweeps, ladder_opts.burn_in);

    std::vector<double> values(opts.samples);
    parallel_for_index(
        static_cast<std::size_t>(opts.samples), resolve_threads(opts.threads),
        [&](std::size_t i) {
            const auto disorder =
                DisorderSample::generate(opts.N, derive_stream(opts.seed, {i}));
            values[i] = thermo_integrate(params, disorder, ladder,
                                         derive_stream(opts.seed, {i, 0xBCu}))
                            .free_energy;
        });
    QuenchedEstimate estimate;
    estimate.params = params;
    estimate.num_disorder_samples = opts.samples;
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= opts.samples;
    estimate.mean = mean;
    if (opts.samples > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - mean) * (v - mean);
        estimate.std_error = std::sqrt(ss / (opts.samples - 1)) /
                             std::sqrt(static_cast<double>(opts.samples));
    }
    std::cerr << "quenched free energy (thermodynamic integration): "
              << io::format_double(estimate.mean) << " +/- "
              << io::format_double(estimate.std_error) << "  (N=" << opts.N
              << " kappa=" << opts.kappa << " beta="
              << io::format_double(opts.beta) << " samples=" << opts.samples
              << ")\n";
    write_result_rows(opts, "quenched",
                      {io::make_result_row(estimate, std::nullopt, opts.seed)});
    return 0;
}

int run_mc(const CommonOpts& opts, const LadderOpts& ladder_opts,
           const std::string& trace_out, const std::string& load_disorder,
           const std::string& save_disorder) {
    ModelParams params{opts.N, opts.kappa, opts.beta, opts.gamma};
    DisorderSample disorder = load_disorder.empty()
                                  ? DisorderSample::generate(opts.N, opts.seed)
                                  : io::load_disorder(load_disorder);
    if (!load_disorder.empty()) params.N = disorder.size();
    params.validate();
    if (!save_disorder.empty()) io::save_disorder(save_disorder, disorder);

    const auto ladder = LadderConfig::hybrid(
        opts.beta, ladder_opts.rungs, ladder_opts.sweeps_per_exchange,
        ladder_opts.total_sweeps, ladder_opts.burn_in);
    const auto result =
        thermo_integrate(params, disorder, ladder,
                         derive_stream(opts.seed, {0xCu}),
                         resolve_threads(opts.threads));

    std::cerr << "per-disorder log-partition estimate: "
              << io::format_double(result.free_energy) << "  (N=" << params.N
              << " kappa=" << params.kappa << " beta="
              << io::format_double(opts.beta) << ")\n";
    if (!trace_out.empty())
        emit(trace_out,
             [&](std::ostream& out) { io::write_trace_csv(out, result.trace); });

    QuenchedEstimate estimate;
    estimate.params = params;
    estimate.num_disorder_samples = 1;
    estimate.mean = result.free_energy;
    write_result_rows(opts, "mc",
                      {io::make_result_row(estimate, std::nullopt, opts.seed)});
    return 0;
}

int run_ground_state(const CommonOpts& opts, const std::string& method,
                     int restarts, double anneal_beta, int rungs,
                     int sweeps_per_beta) {
    ModelParams params{opts.N, opts.kappa, 1.0, opts.gamma};
    params.validate();
    const auto disorder = DisorderSample::generate(opts.N, opts.seed);
    const auto sector = sector_from(opts);

    const double states = std::pow(static_cast<double>(opts.kappa), opts.N);
    std::string chosen = method;
    if (chosen == "auto")
        chosen = states <= static_cast<double>(opts.budget) ? "exact" : "anneal";

    SpinConfiguration best;
    double value = 0.0;
    bool have_config = true;
    if (chosen == "exact") {
        auto [sigma, energy_value] =
            exact_ground_state(params, disorder, sector, opts.budget);
        best = std::move(sigma);
        value = energy_value;
    } else {
        const auto schedule = LadderConfig::hybrid(anneal_beta, rungs,
                                                   sweeps_per_beta, 1, 0);
        if (sector) {
            value = estimate_sector_max(params, disorder, *sector, schedule,
                                        restarts,
                                        derive_stream(opts.seed, {0x65u}));
            have_config = false;
        } else {
            auto [sigma, energy_value] = anneal_ground_state(
                params, disorder, schedule, restarts,
                derive_stream(opts.seed, {0x65u}));
            best = std::move(sigma);
            value = energy_value;
        }
    }

    std::string colors_text;
    if (have_config) {
        for (int i = 0; i < best.size(); ++i) {
            if (i > 0) colors_text += '|';
            colors_text += std::to_string(best.color(i) + 1);  // 1-based
        }
    }
    std::cerr << "ground state (" << chosen
              << "): energy = " << io::format_double(value)
              << "  (per site " << io::format_double(value / opts.N) << ")\n";

    const auto path = resolve_out(opts.out, "ground-state", opts.format);
    emit(path, [&](std::ostream& out) {
        if (opts.format == "json") {
            nlohmann::json j{{"N", opts.N},
                             {"kappa", opts.kappa},
                             {"gamma", opts.gamma},
                             {"seed", opts.seed},
                             {"method", chosen},
                             {"energy", value},
                             {"sector", io::format_sector(sector)}};
            if (have_config) j["colors"] = colors_text;
            out << j.dump(2) << '\n';
        } else {
            out << "N,kappa,gamma,seed,method,sector,energy,colors\n"
                << opts.N << ',' << opts.kappa << ','
                << io::format_double(opts.gamma) << ',' << opts.seed << ','
                << chosen << ',' << io::format_sector(sector) << ','
                << io::format_double(value) << ',' << colors_text << '\n';
        }
    });
    return 0;
}

int run_bounds(const CommonOpts& opts, double constant_c, int gauss_samples) {
    bounds::RegionQuery query{opts.kappa, opts.beta, constant_c};
    query.validate();
    const bool breaking = bounds::symmetry_breaking_criterion(query);
    const auto window = bounds::beta_interval(opts.kappa, constant_c);
    const double lower_limit = bounds::lower_bound_limit(opts.beta);
    const double lower_n = bounds::lower_bound(opts.N, opts.beta);
    const double upper = bounds::rs_upper_bound(opts.kappa, opts.beta);
    std::optional<std::pair<double, double>> gauss;
    if (gauss_samples > 0)
        gauss = bounds::rs_gaussian_value(opts.kappa, opts.beta, gauss_samples,
                                          opts.seed);

    std::cerr << "lower bound (N=" << opts.N
              << "): " << io::format_double(lower_n)
              << ", limit slope bound: " << io::format_double(lower_limit)
              << ", RS upper bound: " << io::format_double(upper)
              << ", breaking: " << (breaking ? "yes" : "no") << "\n";

    const auto path = resolve_out(opts.out, "bounds", opts.format);
    emit(path, [&](std::ostream& out) {
        if (opts.format == "json") {
            nlohmann::json j{{"kappa", opts.kappa},
                             {"beta", opts.beta},
                             {"constant_c", constant_c},
                             {"N", opts.N},
                             {"lower_bound", lower_n},
                             {"lower_bound_limit", lower_limit},
                             {"rs_upper_bound", upper},
                             {"breaking", breaking}};
            if (window) {
                j["beta_lo"] = window->first;
                j["beta_hi"] = window->second;
            }
            if (gauss) {
                j["gauss_mean"] = gauss->first;
                j["gauss_std_error"] = gauss->second;
            }
            out << j.dump(2) << '\n';
        } else {
            out << "kappa,beta,constant_c,N,lower_bound,lower_bound_limit,"
                   "rs_upper_bound,breaking,beta_lo,beta_hi,gauss_mean,"
                   "gauss_std_error\n";
            out << opts.kappa << ',' << io::format_double(opts.beta) << ','
                << io::format_double(constant_c) << ',' << opts.N << ','
                << io::format_double(lower_n) << ','
                << io::format_double(lower_limit) << ','
                << io::format_double(upper) << ',' << (breaking ? 1 : 0)
                << ',';
            if (window)
                out << io::format_double(window->first) << ','
                    << io::format_double(window->second);
            else
                out << ',';
            out << ',';
            if (gauss)
                out << io::format_double(gauss->first) << ','
                    << io::format_double(gauss->second);
            else
                out << ',';
            out << '\n';
        }
    });
    return 0;
}

int run_thresholds(const CommonOpts& opts, double constant_c) {
    const int threshold = bounds::min_kappa_threshold(constant_c);
    const auto window = bounds::beta_interval(threshold, constant_c);
    // Fixed-schema table on stdout; this is the artifact.
    std::ostringstream table;
    table << "constant_c,min_kappa,beta_lo,beta_hi\n"
          << io::format_double(constant_c) << ',' << threshold << ',';
    if (window)
        table << io::format_double(window->first) << ','
              << io::format_double(window->second);
    else
        table << ',';
    table << '\n';

    const auto path = resolve_out(opts.out, "thresholds", opts.format);
    emit(path, [&](std::ostream& out) {
        if (opts.format == "json") {
            nlohmann::json j{{"constant_c", constant_c},
                             {"min_kappa", threshold}};
            if (window) {
                j["beta_lo"] = window->first;
                j["beta_hi"] = window->second;
            }
            out << j.dump(2) << '\n';
        } else {
            out << table.str();
        }
    });
    if (!path.empty()) std::cout << table.str();
    return 0;
}

int run_scan(const CommonOpts& opts, const std::string& kappa_range,
             const std::string& beta_grid, double constant_c,
             const std::string& summary_out) {
    const auto [kappa_lo, kappa_hi] = parse_int_range(kappa_range);
    const auto betas = parse_grid(beta_grid);
    const auto scan = bounds::region_scan(kappa_lo, kappa_hi, betas,
                                          constant_c,
                                          resolve_threads(opts.threads));

    const auto path = resolve_out(opts.out, "scan", "csv");
    emit(path, [&](std::ostream& out) {
        out << "kappa,beta,breaking\n";
        for (int kappa = kappa_lo; kappa <= kappa_hi; ++kappa)
            for (std::size_t i = 0; i < scan.betas.size(); ++i)
                out << kappa << ',' << io::format_double(scan.betas[i]) << ','
                    << (scan.at(kappa, i) ? 1 : 0) << '\n';
    });

    nlohmann::json summary{{"constant_c", constant_c},
                           {"kappa_lo", kappa_lo},
                           {"kappa_hi", kappa_hi}};
    summary["intervals"] = nlohmann::json::array();
    std::optional<int> first_breaking;
    for (int kappa = kappa_lo; kappa <= kappa_hi; ++kappa) {
        if (const auto window = bounds::beta_interval(kappa, constant_c)) {
            if (!first_breaking) first_breaking = kappa;
            summary["intervals"].push_back({{"kappa", kappa},
                                            {"beta_lo", window->first},
                                            {"beta_hi", window->second}});
        }
    }
    if (first_breaking) summary["min_kappa_in_range"] = *first_breaking;
    if (!summary_out.empty())
        emit(summary_out,
             [&](std::ostream& out) { out << summary.dump(2) << '\n'; });

    std::cerr << "scan: kappa in [" << kappa_lo << ", " << kappa_hi << "], "
              << scan.betas.size() << " beta points";
    if (first_breaking)
        std::cerr << ", first breaking kappa = " << *first_breaking;
    std::cerr << "\n";
    return 0;
}

int run_verify(int criterion, unsigned threads) {
    acceptance::Options options;
    options.threads = resolve_threads(threads);
    options.only = criterion;
    const auto results = acceptance::run(options);
    acceptance::print_report(std::cout, results);
    const bool ok = acceptance::all_passed(results);
    std::cerr << (ok ? "verification passed" : "verification FAILED") << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"pottsglass: numerical laboratory for the Potts spin glass"};
    app.require_subcommand(1);
    // Later occurrences win, so config-file values expanded ahead of the
    // explicit flags are overridden by them.
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    CommonOpts exact_opts;
    auto* exact_cmd = app.add_subcommand(
        "exact", "quenched free energy by exhaustive enumeration");
    add_common_model_flags(exact_cmd, exact_opts);
    exact_cmd->add_option("--samples", exact_opts.samples,
                          "number of disorder samples");
    exact_cmd->add_option("--budget", exact_opts.budget,
                          "max configurations per enumeration");

    CommonOpts quenched_opts;
    LadderOpts quenched_ladder;
    auto* quenched_cmd = app.add_subcommand(
        "quenched",
        "quenched free energy by parallel-tempering thermodynamic integration");
    add_common_model_flags(quenched_cmd, quenched_opts, false);
    quenched_cmd->add_option("--samples", quenched_opts.samples,
                             "number of disorder samples");
    add_ladder_flags(quenched_cmd, quenched_ladder);

    CommonOpts mc_opts;
    LadderOpts mc_ladder;
    std::string trace_out, load_disorder_path, save_disorder_path;
    auto* mc_cmd = app.add_subcommand(
        "mc", "single-disorder tempering run with per-rung trace");
    add_common_model_flags(mc_cmd, mc_opts, false);
    add_ladder_flags(mc_cmd, mc_ladder);
    mc_cmd->add_option("--trace-out", trace_out, "per-rung trace CSV path");
    mc_cmd->add_option("--load-disorder", load_disorder_path,
                       "read couplings from a binary disorder file");
    mc_cmd->add_option("--save-disorder", save_disorder_path,
                       "write the generated couplings to a binary file");

    CommonOpts gs_opts;
    std::string gs_method = "auto";
    int gs_restarts = 20;
    double gs_anneal_beta = 6.0;
    int gs_rungs = 24;
    int gs_sweeps_per_beta = 4;
    auto* gs_cmd = app.add_subcommand(
        "ground-state", "maximize the energy exactly or by annealing");
    add_common_model_flags(gs_cmd, gs_opts);
    gs_cmd->add_option("--method", gs_method, "exact, anneal, or auto")
        ->check(CLI::IsMember({"exact", "anneal", "auto"}));
    gs_cmd->add_option("--restarts", gs_restarts, "annealing restarts");
    gs_cmd->add_option("--anneal-beta", gs_anneal_beta,
                       "final inverse temperature of the schedule");
    gs_cmd->add_option("--rungs", gs_rungs, "annealing schedule rungs");
    gs_cmd->add_option("--sweeps-per-beta", gs_sweeps_per_beta,
                       "sweeps at each schedule rung");
    gs_cmd->add_option("--budget", gs_opts.budget,
                       "enumeration budget for --method exact/auto");

    CommonOpts bounds_opts;
    double bounds_c = bounds::kRsLowerSlope;
    int gauss_samples = 0;
    auto* bounds_cmd = app.add_subcommand(
        "bounds", "evaluate the analytic bounds at one (kappa, beta)");
    add_common_model_flags(bounds_cmd, bounds_opts, false);
    bounds_cmd->add_option("--constant-c", bounds_c,
                           "linear lower-bound slope");
    bounds_cmd->add_option("--samples", gauss_samples,
                           "Monte Carlo samples for the Gaussian identity "
                           "(0 = skip)");

    CommonOpts thresholds_opts;
    double thresholds_c = bounds::kRsLowerSlope;
    auto* thresholds_cmd = app.add_subcommand(
        "thresholds", "smallest kappa with a non-empty breaking interval");
    add_common_model_flags(thresholds_cmd, thresholds_opts, false);
    thresholds_cmd->add_option("--constant-c", thresholds_c,
                               "linear lower-bound slope");

    CommonOpts scan_opts;
    std::string scan_kappa = "2:80";
    std::string scan_beta = "0:40:0.5";
    double scan_c = bounds::kRsLowerSlope;
    std::string summary_out;
    auto* scan_cmd = app.add_subcommand(
        "scan", "tabulate the breaking region over a (kappa, beta) grid");
    scan_cmd->add_option("--kappa", scan_kappa, "kappa range lo:hi");
    scan_cmd->add_option("--beta", scan_beta, "beta grid lo:hi:step");
    scan_cmd->add_option("--constant-c", scan_c, "linear lower-bound slope");
    scan_cmd->add_option("--threads", scan_opts.threads,
                         "worker threads (0 = hardware)");
    scan_cmd->add_option("--out", scan_opts.out,
                         "long-format CSV path (default stdout)");
    scan_cmd->add_option("--summary-out", summary_out,
                         "JSON summary with thresholds and intervals");
    static std::string scan_config_placeholder;
    scan_cmd->add_option("--config", scan_config_placeholder,
                         "flat key=value file mirroring flag names; "
                         "flags override the file");

    int verify_criterion = 0;
    unsigned verify_threads = 1;
    auto* verify_cmd = app.add_subcommand(
        "verify", "run the acceptance suite and report per-criterion results");
    verify_cmd->add_option("--criterion", verify_criterion,
                           "run a single criterion (1-10), 0 = all");
    verify_cmd->add_option("--threads", verify_threads,
                           "worker threads (0 = hardware)");

    std::vector<std::string> raw_args;
    for (int i = 1; i < argc; ++i) raw_args.emplace_back(argv[i]);
    std::vector<std::string> expanded;
    try {
        expanded = expand_config(std::move(raw_args));
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::vector<const char*> parse_argv;
    parse_argv.reserve(expanded.size() + 1);
    parse_argv.push_back(argc > 0 ? argv[0] : "pottsglass");
    for (const auto& arg : expanded) parse_argv.push_back(arg.c_str());

    try {
        app.parse(static_cast<int>(parse_argv.size()), parse_argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (exact_cmd->parsed()) return run_exact(exact_opts);
        if (quenched_cmd->parsed())
            return run_quenched(quenched_opts, quenched_ladder);
        if (mc_cmd->parsed())
            return run_mc(mc_opts, mc_ladder, trace_out, load_disorder_path,
                          save_disorder_path);
        if (gs_cmd->parsed())
            return run_ground_state(gs_opts, gs_method, gs_restarts,
                                    gs_anneal_beta, gs_rungs,
                                    gs_sweeps_per_beta);
        if (bounds_cmd->parsed())
            return run_bounds(bounds_opts, bounds_c, gauss_samples);
        if (thresholds_cmd->parsed())
            return run_thresholds(thresholds_opts, thresholds_c);
        if (scan_cmd->parsed())
            return run_scan(scan_opts, scan_kappa, scan_beta, scan_c,
                            summary_out);
        if (verify_cmd->parsed())
            return run_verify(verify_criterion, verify_threads);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

int run(const std::vector<std::string>& args) {
    std::vector<std::string> owned;
    owned.reserve(args.size() + 1);
    owned.push_back("pottsglass");
    owned.insert(owned.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(owned.size());
    for (const auto& arg : owned) argv.push_back(arg.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace potts::cli
