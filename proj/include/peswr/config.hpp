#ifndef PESWR_CONFIG_HPP
#define PESWR_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include "peswr/core.hpp"
#include "peswr/optimizer.hpp"
#include "peswr/swr.hpp"

namespace peswr {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ExperimentKind {
    Mono,
    SwrZeroTest,
    SwrStep,
    OptimizeAlpha,
    AnalyzeSymbols,
    ConvergenceStudy,
};

enum class InitialKind { Zero, Step, CustomCsv };

/** Flat experiment configuration parsed from key=value text. Unknown
 *  keys are rejected; every field has a documented default (dump_config
 *  prints the resolved values). */
struct RunConfig {
    ExperimentKind experiment = ExperimentKind::Mono;

    // physics
    double epsilon = 1e-3;
    double reynolds = 1.0;
    double reynolds_v = 1.0;
    double froude = 1.0;
    double u0 = 1.0;
    double v0 = 0.0;
    double alpha_b = 0.0;

    // grid
    int nx = 40;
    int nz = 10;
    int nt = 40;
    double t_final = 1.3;
    double half_length = 1.5;

    // transmission / swr
    double alpha = -1.0; // < 0 means "taylor value"
    double beta = -1.0;  // < 0 means "taylor value"
    int max_iterations = 12;
    double tolerance = 0.0;
    std::string guess = "random"; // zero | random | sinusoid
    int sinusoid_periods = 1;
    double sinusoid_amplitude = 1.0;
    uint64_t seed = 1;
    int threads = 1;

    // initial condition
    std::string initial = "zero"; // zero | step | custom-csv
    double step_height = 1.0;
    double step_band_lo = -0.5;  // in units of half_length
    double step_band_hi = -0.25;
    std::string custom_csv;

    // optimizer
    double alpha_factor_min = 0.25;
    double alpha_factor_max = 4.0;
    int alpha_factor_count = 15;
    double beta_factor_min = 0.5;
    double beta_factor_max = 2.0;
    int beta_factor_count = 7;
    int trials = 3;
    int fixed_iterations = 4;
    std::string epsilon_list; // optional comma list for the ratio curve

    // symbol analysis sample point
    double symbol_s_re = 1.0;
    double symbol_s_im = 0.5;
    double symbol_eta = 0.7;
    int symbol_mode = 1;

    // convergence study
    int conv_levels = 4;

    // io
    std::string out_dir = "out";
    int snapshot_every = 0; // 0: initial and final only

    PhysicalParams physical() const;
    GridSpec grid() const;
    TransmissionParams transmission() const;
    SwrConfig swr(const PhysicalParams& p) const;
    GuessKind guess_kind() const;
    InitialKind initial_kind() const;
};

ExperimentKind experiment_from_string(const std::string& s);
std::string to_string(ExperimentKind k);

/** Strict parse: unknown, duplicate or ill-typed keys raise ConfigError
 *  naming the key and line. '#' starts a comment. */
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config(const std::string& path);

// PESWR_<KEY> environment variables override file values.
void apply_env_overrides(RunConfig& cfg);

void dump_config(std::ostream& os, const RunConfig& cfg);

// FNV-1a of the canonical dump; manifest stamp for reproducibility.
uint64_t config_hash(const RunConfig& cfg);

} // namespace peswr

#endif
